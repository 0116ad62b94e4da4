use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{resource_count, Resources};
use crate::engine::{execute_with_limit, Seed, Strategy, Transcript};
use crate::error::{Error, Result};
use crate::games::{Game, Input, Outcome};
use crate::limits::Limits;
use crate::strategies::check_compatible;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedPolicy {
    /// Every promised input against every seed.
    Exhaustive,
    /// With an enumerable promise, `k` random seeds per promised input;
    /// otherwise `k` random promised inputs with one random seed each.
    Sample { k: usize, rng_seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub input: Input,
    pub seed: Seed,
    pub outcome: Outcome,
    pub transcript: Transcript,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub pass: bool,
    /// Runs executed.
    pub checked: u64,
    /// Runs that satisfied the relation.
    pub won: u64,
    pub counterexample: Option<Counterexample>,
    pub resources: Resources,
}

/// The `(input, seed)` grid a policy selects, in a fixed order.
pub fn policy_grid(
    strategy: &Strategy,
    game: &Game,
    policy: SeedPolicy,
    limits: &Limits,
) -> Result<Vec<(Input, Seed)>> {
    let space = strategy.seed_space();
    match policy {
        SeedPolicy::Exhaustive => {
            let card = space.check_enumerable(limits)?;
            let inputs = game.promised_inputs(limits)?;
            let runs = card.saturating_mul(inputs.len() as u128);
            if runs > limits.max_search as u128 {
                return Err(Error::EnumerationLimit {
                    what: format!("exhaustive grid for {} on {}", strategy.name(), game),
                    size: runs,
                    limit: limits.max_search as u128,
                });
            }
            Ok(inputs
                .into_iter()
                .flat_map(|x| (0..card).map(move |i| (x.clone(), space.seed(i))))
                .collect())
        }
        SeedPolicy::Sample { k, rng_seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
            match game.promised_inputs(limits) {
                Ok(inputs) => Ok(inputs
                    .into_iter()
                    .flat_map(|x| (0..k).map(|_| (x.clone(), space.sample(&mut rng))).collect::<Vec<_>>())
                    .collect()),
                Err(Error::EnumerationLimit { .. }) => {
                    let inputs = game.sample_promised(k, &mut rng);
                    Ok(inputs.into_iter().map(|x| (x, space.sample(&mut rng))).collect())
                }
                Err(e) => Err(e),
            }
        }
    }
}

/// Runs the strategy on the selected grid and checks the game relation and
/// the box relation of every transcript.
pub fn verify_winning(strategy: &Strategy, game: &Game, policy: SeedPolicy, limits: &Limits) -> Result<VerifyReport> {
    check_compatible(strategy, game)?;
    let resources = resource_count(strategy)?;
    let grid = policy_grid(strategy, game, policy, limits)?;
    let results = grid
        .par_iter()
        .map(|(x, seed)| {
            let (y, t) = execute_with_limit(strategy, x, seed, limits.max_rounds)?;
            t.check_nlb_relation().map_err(Error::InvalidStrategy)?;
            Ok((!game.is_winning(x, &y)?).then_some((y, t)))
        })
        .collect::<Result<Vec<_>>>()?;
    let won = results.iter().filter(|r| r.is_none()).count() as u64;
    let counterexample = grid.iter().zip(results).find_map(|((x, seed), loss)| {
        loss.map(|(y, t)| Counterexample {
            input: x.clone(),
            seed: seed.clone(),
            outcome: y,
            transcript: t,
        })
    });
    Ok(VerifyReport {
        pass: counterexample.is_none(),
        checked: grid.len() as u64,
        won,
        counterexample,
        resources,
    })
}
