use std::collections::BTreeSet;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::bits::Bits;
use crate::engine::{Action, LocalView, Strategy};
use crate::error::{Error, Result};
use crate::games::{Game, Input};
use crate::limits::Limits;

/// One party's deterministic answer table: `(input symbol, output)`.
pub type AnswerTable = Vec<(u64, Bits)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalValue {
    pub value: Ratio<u64>,
    /// Deterministic strategy profiles searched.
    pub strategies: u128,
    /// A best profile, one table per party.
    pub best: Vec<AnswerTable>,
}

/// Evaluations below this run on the calling thread.
const PARALLEL_THRESHOLD: u64 = 1 << 14;

struct PartySpace {
    /// Admissible outputs per input symbol, in symbol order.
    symbols: Vec<(u64, Vec<Bits>)>,
    count: u64,
}

impl PartySpace {
    fn output(&self, f: u64, pos: usize) -> Bits {
        let mut f = f;
        for (i, (_, adm)) in self.symbols.iter().enumerate() {
            let k = adm.len() as u64;
            if i == pos {
                return adm[(f % k) as usize];
            }
            f /= k;
        }
        unreachable!("symbol position in range")
    }

    fn table(&self, f: u64) -> AnswerTable {
        (0..self.symbols.len())
            .map(|pos| (self.symbols[pos].0, self.output(f, pos)))
            .collect()
    }
}

/// Largest fraction of promised inputs that any deterministic strategy
/// without communication wins. Each party only ranges over locally
/// admissible answers (those that win for some promised input and some
/// answers of the others), which loses no generality. Shared randomness
/// is a convex mixture of such strategies and so cannot do better.
pub fn classical_value(game: &Game, limits: &Limits) -> Result<ClassicalValue> {
    let inputs = game.promised_inputs(limits)?;
    let n = game.parties();
    let mut admissible: Vec<std::collections::BTreeMap<u64, BTreeSet<Bits>>> = vec![Default::default(); n];
    for x in &inputs {
        for (p, adm) in admissible.iter_mut().enumerate() {
            adm.entry(x[p]).or_default();
        }
        for y in game.winning_outcomes(x, limits)? {
            for (p, adm) in admissible.iter_mut().enumerate() {
                adm.get_mut(&x[p]).expect("entry created").insert(y[p]);
            }
        }
    }
    let mut parties = Vec::with_capacity(n);
    let mut total: u128 = 1;
    for (p, adm) in admissible.into_iter().enumerate() {
        let mut count: u128 = 1;
        let mut symbols = Vec::new();
        for (s, outs) in adm {
            let mut outs: Vec<Bits> = outs.into_iter().collect();
            if outs.is_empty() {
                // Every answer loses; any fixed one represents them all.
                outs.push(Bits::zeros(game.signature()[p].output_len));
            }
            count = count.saturating_mul(outs.len() as u128);
            symbols.push((s, outs));
        }
        total = total.saturating_mul(count);
        if total > limits.max_search as u128 {
            return Err(Error::EnumerationLimit {
                what: format!("deterministic strategies for {game}"),
                size: total,
                limit: limits.max_search as u128,
            });
        }
        parties.push(PartySpace {
            symbols,
            count: count as u64,
        });
    }
    let positions: Vec<Vec<usize>> = inputs
        .iter()
        .map(|x| {
            (0..n)
                .map(|p| {
                    parties[p]
                        .symbols
                        .iter()
                        .position(|(s, _)| *s == x[p])
                        .expect("symbol seen")
                })
                .collect()
        })
        .collect();

    let total = total as u64;
    let score = |g: u64| -> u64 {
        let mut fs = Vec::with_capacity(n);
        let mut rest = g;
        for party in &parties {
            fs.push(rest % party.count);
            rest /= party.count;
        }
        let mut y = vec![Bits::EMPTY; n];
        let mut wins = 0;
        for (x, pos) in inputs.iter().zip(&positions) {
            for p in 0..n {
                y[p] = parties[p].output(fs[p], pos[p]);
            }
            wins += game.relation_holds(x, &y) as u64;
        }
        wins
    };
    // Highest score, lowest index on ties.
    let better = |a: (u64, u64), b: (u64, u64)| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a };
    let (wins, best) = if total < PARALLEL_THRESHOLD {
        (0..total).map(|g| (score(g), g)).fold((0, 0), better)
    } else {
        (0..total)
            .into_par_iter()
            .map(|g| (score(g), g))
            .reduce(|| (0, u64::MAX), better)
    };

    let mut rest = best;
    let best = parties
        .iter()
        .map(|party| {
            let f = rest % party.count;
            rest /= party.count;
            party.table(f)
        })
        .collect();
    Ok(ClassicalValue {
        value: Ratio::new(wins, inputs.len() as u64),
        strategies: total as u128,
        best,
    })
}

/// A no-resource strategy in which every party looks its input up in a
/// table. Symbols missing from a table map to the all-zero answer.
pub fn table_strategy(name: &str, game: &Game, tables: Vec<AnswerTable>) -> Result<Strategy> {
    if tables.len() != game.parties() {
        return Err(Error::InvalidParameter(format!(
            "{} tables for {} parties",
            tables.len(),
            game.parties()
        )));
    }
    let sig = game.signature();
    let mut b = Strategy::builder(name, sig.clone());
    for (p, table) in tables.into_iter().enumerate() {
        let len = sig[p].output_len;
        b.program(p, move |v: &LocalView<'_>| {
            let y = table
                .iter()
                .find(|(s, _)| *s == v.input())
                .map(|e| e.1)
                .unwrap_or(Bits::zeros(len));
            Action::Output(y)
        });
    }
    b.build()
}

/// Fraction of promised inputs a table profile wins.
pub fn table_value(game: &Game, tables: &[AnswerTable], limits: &Limits) -> Result<Ratio<u64>> {
    let inputs: Vec<Input> = game.promised_inputs(limits)?;
    let sig = game.signature();
    let wins = inputs
        .iter()
        .filter(|x| {
            let y: Vec<Bits> = x
                .iter()
                .enumerate()
                .map(|(p, s)| {
                    tables[p]
                        .iter()
                        .find(|e| e.0 == *s)
                        .map(|e| e.1)
                        .unwrap_or(Bits::zeros(sig[p].output_len))
                })
                .collect();
            game.relation_holds(x, &y)
        })
        .count();
    Ok(Ratio::new(wins as u64, inputs.len() as u64))
}
