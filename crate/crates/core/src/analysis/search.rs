//! Exhaustive search over deterministic strategies that share at most one
//! NLB, for games with one-bit inputs and outputs.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::{bit_output, Action, LocalView, PartySignature, Strategy};
use crate::error::{Error, Result};
use crate::games::Game;
use crate::limits::Limits;

/// Largest party count the search accepts.
pub const MAX_SEARCH_PARTIES: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Budget {
    #[serde(rename = "0nlb")]
    Zero,
    #[serde(rename = "1nlb")]
    OneNlb,
}

impl fmt::Display for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Budget::Zero => "0nlb",
            Budget::OneNlb => "1nlb",
        })
    }
}

impl FromStr for Budget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "0nlb" | "0" => Ok(Budget::Zero),
            "1nlb" | "1" => Ok(Budget::OneNlb),
            _ => Err(Error::Parse(format!("budget {s:?} is not 0nlb or 1nlb"))),
        }
    }
}

/// A deterministic strategy found by the search. Parties in the pairing
/// feed `nlb_input[x]` into the box and answer `output[2x + z]`; the others
/// answer `output[x]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchWitness {
    pub pairing: Option<[usize; 2]>,
    pub parties: Vec<PartyRule>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartyRule {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub nlb_input: Option<[bool; 2]>,
    pub output: Vec<bool>,
}

impl SearchWitness {
    /// Rebuilds the witness as an executable strategy.
    pub fn to_strategy(&self) -> Result<Strategy> {
        let n = self.parties.len();
        let mut b = Strategy::builder("search-witness", vec![PartySignature::bit_to_bit(); n]);
        let nlb = self.pairing.map(|[i, j]| b.nlb(i, j));
        for (p, rule) in self.parties.iter().cloned().enumerate() {
            match (rule.nlb_input, nlb) {
                (Some(feed), Some(id)) => {
                    b.program(p, move |v: &LocalView<'_>| {
                        let x = v.input() as usize;
                        match v.nlb_output(id) {
                            None => Action::submit(vec![(id, feed[x])]),
                            Some(z) => bit_output(rule.output[2 * x + z as usize]),
                        }
                    });
                }
                (None, _) => {
                    b.program(p, move |v: &LocalView<'_>| bit_output(rule.output[v.input() as usize]));
                }
                (Some(_), None) => {
                    return Err(Error::InvalidStrategy(format!(
                        "party {p} feeds an NLB that is not declared"
                    )));
                }
            }
        }
        b.build()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub game: Game,
    pub budget: Budget,
    /// Pairings examined; one (the empty one) without an NLB.
    pub pairings: usize,
    pub candidates_per_pairing: u64,
    /// Fraction of (promised input, box bit) pairs won by the best
    /// candidate; with no NLB the box bit is absent.
    pub best: Ratio<u64>,
    pub best_strategy: SearchWitness,
    pub perfect: bool,
}

impl SearchReport {
    pub fn space(&self) -> u128 {
        self.pairings as u128 * self.candidates_per_pairing as u128
    }

    /// The best strategy when it wins everywhere.
    pub fn witness(&self) -> Option<&SearchWitness> {
        self.perfect.then_some(&self.best_strategy)
    }
}

pub const DETERMINISM_NOTE: &str = "deterministic strategies suffice: a randomized strategy wins with \
probability 1 only if every deterministic strategy in its support does";

/// Best deterministic strategy with the given NLB budget, over every
/// placement of the box.
pub fn impossibility_search(game: &Game, budget: Budget, limits: &Limits) -> Result<SearchReport> {
    let n = game.parties();
    if n > MAX_SEARCH_PARTIES {
        return Err(Error::SearchUnsupported(format!(
            "{game} has {n} parties, limit is {MAX_SEARCH_PARTIES}"
        )));
    }
    if game.signature().iter().any(|s| *s != PartySignature::bit_to_bit()) {
        return Err(Error::SearchUnsupported(format!(
            "{game} does not have one-bit inputs and outputs"
        )));
    }
    let inputs = game.promised_inputs(limits)?;
    // wins[k] has bit `y` set when output pattern `y` (bit p = party p)
    // wins on input k.
    let wins: Vec<u64> = inputs
        .iter()
        .map(|x| {
            (0..1u64 << n).fold(0u64, |acc, y| {
                let out: Vec<_> = (0..n).map(|p| crate::bits::Bits::bit(y >> p & 1 == 1)).collect();
                acc | (game.relation_holds(x, &out) as u64) << y
            })
        })
        .collect();
    let xs: Vec<Vec<usize>> = inputs.iter().map(|x| x.iter().map(|&v| v as usize).collect()).collect();

    let pairings: Vec<Option<[usize; 2]>> = match budget {
        Budget::Zero => vec![None],
        Budget::OneNlb => (0..n).flat_map(|i| (i + 1..n).map(move |j| Some([i, j]))).collect(),
    };
    let per_pairing: u64 = match budget {
        Budget::Zero => 4u64.pow(n as u32),
        Budget::OneNlb => 64 * 64 * 4u64.pow(n as u32 - 2),
    };
    let space = pairings.len() as u128 * per_pairing as u128;
    if space > limits.max_search as u128 {
        return Err(Error::EnumerationLimit {
            what: format!("{budget} strategies for {game}"),
            size: space,
            limit: limits.max_search as u128,
        });
    }
    let seeds: &[bool] = match budget {
        Budget::Zero => &[false],
        Budget::OneNlb => &[false, true],
    };
    let total_runs = (inputs.len() * seeds.len()) as u64;

    // Party p's rule code: for a paired party, bits 0-1 are the box input
    // table and bits 2-5 the output table indexed by 2x+z; otherwise bits
    // 0-1 are the output table.
    let decode = |pairing: Option<[usize; 2]>, c: u64| -> Vec<u64> {
        let mut rest = c;
        (0..n)
            .map(|p| {
                let radix = if pairing.is_some_and(|pr| pr.contains(&p)) {
                    64
                } else {
                    4
                };
                let code = rest % radix;
                rest /= radix;
                code
            })
            .collect()
    };
    let score = |pairing: Option<[usize; 2]>, codes: &[u64]| -> u64 {
        let mut won = 0;
        for (x, mask) in xs.iter().zip(&wins) {
            for &r in seeds {
                let mut pattern = 0u64;
                let z = pairing.map(|[i, j]| {
                    let a = codes[i] >> x[i] & 1 == 1;
                    let b = codes[j] >> x[j] & 1 == 1;
                    (r, r ^ (a & b))
                });
                for p in 0..n {
                    let y = match (pairing, z) {
                        (Some([i, _]), Some((zi, _))) if p == i => codes[p] >> (2 + 2 * x[p] + zi as usize) & 1,
                        (Some([_, j]), Some((_, zj))) if p == j => codes[p] >> (2 + 2 * x[p] + zj as usize) & 1,
                        _ => codes[p] >> x[p] & 1,
                    };
                    pattern |= y << p;
                }
                won += mask >> pattern & 1;
            }
        }
        won
    };

    let best = pairings
        .par_iter()
        .enumerate()
        .map(|(k, &pairing)| {
            let (won, c) = (0..per_pairing)
                .map(|c| (score(pairing, &decode(pairing, c)), c))
                .fold((0, 0), |a, b| if b.0 > a.0 { b } else { a });
            (won, k, c)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold((0, 0, 0), |a, b| if b.0 > a.0 { b } else { a });
    let (won, k, c) = best;
    let pairing = pairings[k];
    let codes = decode(pairing, c);
    let parties = codes
        .iter()
        .enumerate()
        .map(|(p, &code)| {
            if pairing.is_some_and(|pr| pr.contains(&p)) {
                PartyRule {
                    nlb_input: Some([code & 1 == 1, code >> 1 & 1 == 1]),
                    output: (0..4).map(|i| code >> (2 + i) & 1 == 1).collect(),
                }
            } else {
                PartyRule {
                    nlb_input: None,
                    output: (0..2).map(|i| code >> i & 1 == 1).collect(),
                }
            }
        })
        .collect();
    Ok(SearchReport {
        game: *game,
        budget,
        pairings: pairings.len(),
        candidates_per_pairing: per_pairing,
        best: Ratio::new(won, total_runs),
        best_strategy: SearchWitness { pairing, parties },
        perfect: won == total_runs,
    })
}
