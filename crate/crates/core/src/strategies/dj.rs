//! Distributed Deutsch-Jozsa with NLBs.
//!
//! Alice negates her string, so equal inputs become diametric strings and
//! half-distance inputs become strings that agree somewhere. Each round
//! halves the strings: position `j` of the next string is a share of
//! `(a_2j ^ b_2j) & (a_2j+1 ^ b_2j+1)`, computed with two NLBs. Diametric
//! strings stay diametric and non-diametric strings stay non-diametric.
//! Once the length is at most `n` the strings are padded to `n` bits and
//! Alice undoes the negation, so the outputs agree exactly when the
//! inputs did.

use crate::bits::Bits;
use crate::engine::{Action, LocalView, NlbId, Strategy, Transcript};
use crate::error::Result;
use crate::games::{dj_len, Game};

const ALICE: usize = 0;
const BOB: usize = 1;

fn floor_log2(n: usize) -> usize {
    (usize::BITS - 1 - n.leading_zeros()) as usize
}

/// Number of halving rounds, `n - floor(lg n)`.
pub fn dj_rounds(n: usize) -> usize {
    n - floor_log2(n)
}

/// Total NLBs used, `2^(n+1) - 2^(floor(lg n)+1)`.
pub fn dj_nlb_count(n: usize) -> usize {
    (1 << (n + 1)) - (1 << (floor_log2(n) + 1))
}

/// First NLB id of halving round `r`.
fn round_base(n: usize, r: usize) -> usize {
    (0..r).map(|k| dj_len(n) >> k).sum()
}

/// Replays one party's strings as far as its NLB outputs allow. Entry `r`
/// is the string held at the start of round `r`.
fn party_strings(n: usize, alice: bool, input: u64, out: impl Fn(NlbId) -> Option<bool>) -> Vec<Bits> {
    let len = dj_len(n);
    let mut s = Bits::new(input, len);
    if alice {
        s = s.flipped();
    }
    let mut strings = vec![s];
    for r in 0..dj_rounds(n) {
        let base = round_base(n, r);
        let cur = strings[r];
        let mut next = Bits::zeros(cur.len() / 2);
        for j in 0..next.len() {
            let (Some(z0), Some(z1)) = (out(NlbId(base + 2 * j)), out(NlbId(base + 2 * j + 1))) else {
                return strings;
            };
            next.set(j, (cur.get(2 * j) & cur.get(2 * j + 1)) ^ z0 ^ z1);
        }
        strings.push(next);
    }
    strings
}

/// NLB inputs for round `r` given the party's current string.
fn round_inputs(n: usize, r: usize, alice: bool, cur: Bits) -> Vec<(NlbId, bool)> {
    let base = round_base(n, r);
    (0..cur.len() / 2)
        .flat_map(|j| {
            let (even, odd) = (cur.get(2 * j), cur.get(2 * j + 1));
            // Alice's even bit meets Bob's odd bit, and vice versa.
            let (first, second) = if alice { (even, odd) } else { (odd, even) };
            [(NlbId(base + 2 * j), first), (NlbId(base + 2 * j + 1), second)]
        })
        .collect()
}

fn final_output(n: usize, alice: bool, last: Bits) -> Bits {
    let pad = if alice {
        Bits::ones(n - last.len())
    } else {
        Bits::zeros(n - last.len())
    };
    let y = last.concat(&pad);
    if alice {
        y.flipped()
    } else {
        y
    }
}

pub fn dj_nlb(n: usize) -> Result<Strategy> {
    let game = Game::deutsch_jozsa(n)?;
    let mut b = Strategy::builder(format!("dj-nlb:{n}"), game.signature());
    for _ in 0..dj_nlb_count(n) {
        b.nlb(ALICE, BOB);
    }
    let rounds = dj_rounds(n);
    for party in [ALICE, BOB] {
        let alice = party == ALICE;
        b.program(party, move |v: &LocalView<'_>| {
            let strings = party_strings(n, alice, v.input(), |id| v.nlb_output(id));
            let r = strings.len() - 1;
            if r == rounds {
                Action::Output(final_output(n, alice, strings[r]))
            } else {
                Action::submit(round_inputs(n, r, alice, strings[r]))
            }
        });
    }
    b.build()
}

/// Reconstructs both parties' strings after every round from a finished
/// transcript of [`dj_nlb`].
pub fn dj_round_strings(n: usize, input: &[u64], transcript: &Transcript) -> Vec<(Bits, Bits)> {
    let port = |id: NlbId, p: usize| transcript.firing(id).map(|f| f.outputs[p]);
    let a = party_strings(n, true, input[ALICE], |id| port(id, 0));
    let b = party_strings(n, false, input[BOB], |id| port(id, 1));
    a.into_iter().zip(b).collect()
}
