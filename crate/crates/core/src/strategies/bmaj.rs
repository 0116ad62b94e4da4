//! Biased majority through distributed formula evaluation.
//!
//! Party `i` holds leaf `i` as a distributed bit whose other shares are 0.
//! The formula is the OR over all `(floor(n/2)+1)`-subsets of the AND of
//! their leaves. Every AND costs `n(n-1)` NLBs; ANDs at the same depth run
//! in the same round.

use std::sync::Arc;

use crate::bits::Bits;
use crate::distbit::{cross_pairs, Formula, Node};
use crate::engine::{Action, LocalView, NlbId, Strategy};
use crate::error::{Error, Result};
use crate::games::{binomial, Game};

/// Largest `n` for which [`bmaj_nlb`] builds a strategy by default.
pub const DEFAULT_MAX_BMAJ: usize = 6;

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `OR` over lexicographically ordered `(floor(n/2)+1)`-subsets `S` of
/// `AND_{i in S} x_i`.
pub fn bmaj_formula(n: usize) -> Formula {
    let mut f = Formula::new();
    let leaves: Vec<_> = (0..n).map(|i| f.leaf(i)).collect();
    let terms: Vec<_> = subsets(n, n / 2 + 1)
        .into_iter()
        .map(|s| {
            let items: Vec<_> = s.iter().map(|&i| leaves[i]).collect();
            f.and_all(&items)
        })
        .collect();
    f.or_all(&terms);
    f
}

/// Binary ANDs in [`bmaj_formula`]: `floor(n/2) * C(n, k) + C(n, k) - 1`
/// with `k = floor(n/2) + 1`.
pub fn bmaj_and_count(n: usize) -> u64 {
    let terms = binomial(n as u64, (n / 2 + 1) as u64) as u64;
    (n as u64 / 2) * terms + terms - 1
}

pub fn bmaj_nlb_count(n: usize) -> u64 {
    (n * (n - 1)) as u64 * bmaj_and_count(n)
}

pub fn bmaj_nlb(n: usize) -> Result<Strategy> {
    bmaj_nlb_with_limit(n, DEFAULT_MAX_BMAJ)
}

pub fn bmaj_nlb_with_limit(n: usize, max_n: usize) -> Result<Strategy> {
    let game = Game::bmaj(n)?;
    if n > max_n {
        return Err(Error::InvalidParameter(format!(
            "bmaj-nlb:{n} needs {} NLBs; raise the limit above {max_n} to build it",
            bmaj_nlb_count(n)
        )));
    }
    let formula = Arc::new(bmaj_formula(n));
    let mut b = Strategy::builder(format!("bmaj-nlb:{n}"), game.signature());
    let pairs = cross_pairs(n);
    for _ in 0..formula.and_count() {
        for &(i, j) in &pairs {
            b.nlb(i.min(j), i.max(j));
        }
    }
    let depth = Arc::new(formula.and_depth());
    let pairs = Arc::new(pairs);
    for party in 0..n {
        let (formula, depth, pairs) = (Arc::clone(&formula), Arc::clone(&depth), Arc::clone(&pairs));
        b.program(party, move |v: &LocalView<'_>| step(&formula, &depth, &pairs, party, v));
    }
    b.build()
}

/// Replays the party's shares from its view; `None` marks an AND whose
/// boxes have not all fired.
fn local_shares(formula: &Formula, pairs: &[(usize, usize)], party: usize, v: &LocalView<'_>) -> Vec<Option<bool>> {
    let cost = pairs.len();
    let mut shares: Vec<Option<bool>> = Vec::with_capacity(formula.nodes().len());
    let mut and_seen = 0;
    for node in formula.nodes() {
        let s = match *node {
            Node::Leaf(i) => Some(party == i && v.input_bit()),
            Node::Const(c) => Some(party == 0 && c),
            Node::Not(a) => shares[a].map(|s| s ^ (party == 0)),
            Node::And(a, b) => {
                let base = and_seen * cost;
                and_seen += 1;
                match (shares[a], shares[b]) {
                    (Some(x), Some(y)) => pairs
                        .iter()
                        .enumerate()
                        .filter(|(_, &(i, j))| i == party || j == party)
                        .try_fold(x & y, |acc, (k, _)| v.nlb_output(NlbId(base + k)).map(|z| acc ^ z)),
                    _ => None,
                }
            }
        };
        shares.push(s);
    }
    shares
}

fn step(formula: &Formula, depth: &[usize], pairs: &[(usize, usize)], party: usize, v: &LocalView<'_>) -> Action {
    let shares = local_shares(formula, pairs, party, v);
    if let Some(Some(root)) = shares.last() {
        return Action::Output(Bits::bit(*root));
    }
    let r = v.round();
    let cost = pairs.len();
    let mut inputs = Vec::new();
    let mut and_seen = 0;
    for (id, node) in formula.nodes().iter().enumerate() {
        if let Node::And(a, b) = *node {
            let base = and_seen * cost;
            and_seen += 1;
            if depth[id] != r + 1 {
                continue;
            }
            let (Some(x), Some(y)) = (shares[a], shares[b]) else {
                continue;
            };
            for (k, &(i, j)) in pairs.iter().enumerate() {
                if i == party {
                    inputs.push((NlbId(base + k), x));
                } else if j == party {
                    inputs.push((NlbId(base + k), y));
                }
            }
        }
    }
    Action::submit(inputs)
}
