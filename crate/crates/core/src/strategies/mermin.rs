//! Strategies for the three-party Mermin game and its n-party extension.
//!
//! Charlie's output never depends on anything but shared randomness, so the
//! correlation reduces to a two-party problem between Alice and Bob.

use crate::engine::{bit_output, Action, LocalView, Strategy};
use crate::error::Result;
use crate::games::Game;

const ALICE: usize = 0;
const BOB: usize = 1;
const CHARLIE: usize = 2;

/// Bob sends `x_B` to Alice, who outputs `b ^ c ^ (x_A | x_B)`; Bob and
/// Charlie output 0.
pub fn mermin_comm() -> Strategy {
    comm_strategy("mermin-comm", false)
}

/// As [`mermin_comm`], but Bob and Charlie output a shared uniform pair
/// `(b, c)` that Alice folds into her answer.
pub fn mermin_comm_sim() -> Strategy {
    comm_strategy("mermin-comm-sim", true)
}

fn split(shared: u64) -> (bool, bool) {
    (shared & 1 == 1, shared & 2 == 2)
}

fn comm_strategy(name: &str, randomized: bool) -> Strategy {
    let mut b = Strategy::builder(name, Game::Mermin.signature());
    let tell = b.channel(BOB, ALICE);
    if randomized {
        b.shared(4, "Bob and Charlie output bits (b, c)");
    }
    b.program(ALICE, move |v: &LocalView<'_>| match v.received(tell) {
        None => Action::idle(),
        Some(xb) => {
            let (bb, cc) = split(v.shared());
            bit_output(bb ^ cc ^ (v.input_bit() | xb))
        }
    });
    b.program(BOB, move |v: &LocalView<'_>| {
        if v.round() == 0 {
            Action::send(vec![(tell, v.input_bit())])
        } else {
            bit_output(split(v.shared()).0)
        }
    });
    b.program(CHARLIE, |v: &LocalView<'_>| bit_output(split(v.shared()).1));
    b.build().expect("valid construction")
}

/// Alice and Bob feed their negated inputs into one NLB and output its
/// bits; Charlie outputs 1.
pub fn mermin_nlb() -> Strategy {
    nlb_strategy("mermin-nlb", false)
}

/// As [`mermin_nlb`], with a shared bit `f` flipping both Bob's and
/// Charlie's outputs.
pub fn mermin_nlb_sim() -> Strategy {
    nlb_strategy("mermin-nlb-sim", true)
}

fn nlb_strategy(name: &str, randomized: bool) -> Strategy {
    let mut b = Strategy::builder(name, Game::Mermin.signature());
    let nlb = b.nlb(ALICE, BOB);
    if randomized {
        b.shared(2, "flip bit f");
    }
    for party in [ALICE, BOB] {
        b.program(party, move |v: &LocalView<'_>| match v.nlb_output(nlb) {
            None => Action::submit(vec![(nlb, !v.input_bit())]),
            Some(z) => bit_output(z ^ (party == BOB && v.shared() == 1)),
        });
    }
    b.program(CHARLIE, |v: &LocalView<'_>| bit_output(v.shared() != 1));
    b.build().expect("valid construction")
}

/// One NLB per pair `i < j` with `i` at port 0. Everyone feeds its input
/// bit into all of its boxes and outputs the parity of what comes back.
pub fn multi_mermin_pairwise(n: usize) -> Result<Strategy> {
    let game = Game::multi_mermin(n)?;
    let mut b = Strategy::builder(format!("multi-mermin-nlb:{n}"), game.signature());
    let mut mine = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            let id = b.nlb(i, j);
            mine[i].push(id);
            mine[j].push(id);
        }
    }
    for (party, boxes) in mine.into_iter().enumerate() {
        b.program(party, move |v: &LocalView<'_>| {
            let outs: Option<Vec<bool>> = boxes.iter().map(|&id| v.nlb_output(id)).collect();
            match outs {
                None => Action::submit(boxes.iter().map(|&id| (id, v.input_bit())).collect()),
                Some(z) => bit_output(z.into_iter().fold(false, |acc, b| acc ^ b)),
            }
        });
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{execute, Seed};

    fn run(s: &Strategy, x: [u64; 3], seed: Seed) -> Vec<bool> {
        let (out, _) = execute(s, &x, &seed).unwrap();
        out.iter().map(|y| y.get(0)).collect()
    }

    #[test]
    fn comm_examples() {
        let s = mermin_comm();
        assert_eq!(run(&s, [0, 0, 0], Seed::zero(0)), vec![false, false, false]);
        assert_eq!(run(&s, [1, 1, 0], Seed::zero(0)), vec![true, false, false]);
        assert_eq!(run(&s, [0, 1, 1], Seed::zero(0)), vec![true, false, false]);
    }

    #[test]
    fn comm_sim_folds_shared_bits() {
        let s = mermin_comm_sim();
        assert_eq!(run(&s, [1, 0, 1], Seed::new(vec![], 3)), vec![true, true, true]);
        assert_eq!(run(&s, [0, 0, 0], Seed::new(vec![], 1)), vec![true, true, false]);
    }

    #[test]
    fn nlb_examples() {
        let s = mermin_nlb();
        // x = (0,0,0): both feed 1, outputs XOR to 1, Charlie adds 1.
        assert_eq!(run(&s, [0, 0, 0], Seed::new(vec![false], 0)), vec![false, true, true]);
        assert_eq!(run(&s, [1, 1, 0], Seed::new(vec![true], 0)), vec![true, true, true]);
        let sim = mermin_nlb_sim();
        assert_eq!(
            run(&sim, [0, 0, 0], Seed::new(vec![false], 1)),
            vec![false, false, false]
        );
    }

    #[test]
    fn multi_pairwise_shape() {
        let s = multi_mermin_pairwise(4).unwrap();
        assert_eq!(s.nlbs().len(), 6);
        assert!(multi_mermin_pairwise(2).is_err());
        let (out, t) = execute(&s, &[1, 1, 0, 0], &Seed::zero(6)).unwrap();
        assert_eq!(t.nlb_uses(), 6);
        assert!(Game::MultiMermin(4).is_winning(&[1, 1, 0, 0], &out).unwrap());
    }
}
