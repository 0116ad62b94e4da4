use std::collections::BTreeMap;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::bits::Bits;
use crate::engine::{execute_with_limit, Strategy};
use crate::error::{Error, Result};
use crate::games::{Game, Input, Outcome};
use crate::limits::Limits;
use crate::strategies::check_compatible;

/// Outcome counts for one input. Probabilities are `count / denominator`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputDistribution {
    pub input: Input,
    pub counts: BTreeMap<Outcome, u64>,
}

/// Exact output distribution of a strategy on every promised input, taken
/// over the full seed space. The denominator is the seed-space size and is
/// shared by all inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactDistribution {
    pub game: Game,
    pub denominator: u64,
    pub rows: Vec<InputDistribution>,
}

impl ExactDistribution {
    pub fn row(&self, input: &[u64]) -> Option<&InputDistribution> {
        self.rows.iter().find(|r| r.input == input)
    }

    pub fn prob(&self, input: &[u64], outcome: &[Bits]) -> Ratio<u64> {
        let count = self
            .row(input)
            .and_then(|r| r.counts.get(outcome))
            .copied()
            .unwrap_or(0);
        Ratio::new(count, self.denominator)
    }

    /// Probability of winning, averaged uniformly over the promise.
    pub fn win_probability(&self) -> Ratio<u64> {
        let won: u64 = self
            .rows
            .iter()
            .map(|r| {
                r.counts
                    .iter()
                    .filter(|(y, _)| self.game.relation_holds(&r.input, y))
                    .map(|(_, c)| c)
                    .sum::<u64>()
            })
            .sum();
        Ratio::new(won, self.denominator * self.rows.len() as u64)
    }

    /// Whether every input's distribution is uniform over exactly its
    /// winning outcomes.
    pub fn is_uniform_over_winning(&self, limits: &Limits) -> Result<bool> {
        for row in &self.rows {
            let winners = self.game.winning_outcomes(&row.input, limits)?;
            if winners.len() != row.counts.len() {
                return Ok(false);
            }
            let each = Ratio::new(1, winners.len() as u64);
            for y in &winners {
                if self.prob(&row.input, y) != each {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Marginal of `party` on one input.
    pub fn marginal(&self, input: &[u64], party: usize) -> BTreeMap<Bits, u64> {
        let mut out = BTreeMap::new();
        if let Some(row) = self.row(input) {
            for (y, c) in &row.counts {
                *out.entry(y[party]).or_insert(0) += c;
            }
        }
        out
    }
}

/// Enumerates the full seed space on every promised input.
pub fn exact_distribution(strategy: &Strategy, game: &Game, limits: &Limits) -> Result<ExactDistribution> {
    check_compatible(strategy, game)?;
    let space = strategy.seed_space();
    let card = space.check_enumerable(limits)?;
    let inputs = game.promised_inputs(limits)?;
    let runs = card.saturating_mul(inputs.len() as u128);
    if runs > limits.max_search as u128 {
        return Err(Error::EnumerationLimit {
            what: format!("{} runs of {}", game, strategy.name()),
            size: runs,
            limit: limits.max_search as u128,
        });
    }
    let rows = inputs
        .into_par_iter()
        .map(|input| {
            let mut counts = BTreeMap::new();
            for i in 0..card {
                let (y, _) = execute_with_limit(strategy, &input, &space.seed(i), limits.max_rounds)?;
                *counts.entry(y).or_insert(0u64) += 1;
            }
            Ok(InputDistribution { input, counts })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExactDistribution {
        game: *game,
        denominator: card as u64,
        rows,
    })
}

/// First input pair whose marginal for some party differs although the
/// party's own input agrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignalingWitness {
    pub party: usize,
    pub inputs: [Input; 2],
}

/// `Ok(None)` when no party's marginal depends on another party's input.
pub fn no_signaling_check(strategy: &Strategy, game: &Game, limits: &Limits) -> Result<Option<SignalingWitness>> {
    if strategy.uses_communication() {
        return Err(Error::CommunicationUsed(strategy.name().to_owned()));
    }
    let dist = exact_distribution(strategy, game, limits)?;
    for party in 0..game.parties() {
        let mut first: BTreeMap<u64, (&Input, BTreeMap<Bits, u64>)> = BTreeMap::new();
        for row in &dist.rows {
            let m = dist.marginal(&row.input, party);
            match first.get(&row.input[party]) {
                None => {
                    first.insert(row.input[party], (&row.input, m));
                }
                Some((other, seen)) if *seen != m => {
                    return Ok(Some(SignalingWitness {
                        party,
                        inputs: [(*other).clone(), row.input.clone()],
                    }));
                }
                Some(_) => {}
            }
        }
    }
    Ok(None)
}
