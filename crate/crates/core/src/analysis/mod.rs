//! Exact distributions, win verification, classical values, single-NLB
//! impossibility searches and resource accounting.

mod classical;
mod distribution;
mod report;
mod search;
mod verify;

use serde::{Deserialize, Serialize};

use crate::engine::{execute, Seed, Strategy};
use crate::error::Result;

pub use classical::{classical_value, table_strategy, table_value, AnswerTable, ClassicalValue};
pub use distribution::{
    exact_distribution, no_signaling_check, ExactDistribution, InputDistribution, SignalingWitness,
};
pub use report::{CounterexampleJson, DistRow, OutcomeProb, Rational, Report, SearchSummary};
pub use search::{
    impossibility_search, Budget, PartyRule, SearchReport, SearchWitness, DETERMINISM_NOTE, MAX_SEARCH_PARTIES,
};
pub use verify::{policy_grid, verify_winning, Counterexample, SeedPolicy, VerifyReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Resources {
    pub nlb: usize,
    pub comm: usize,
}

/// NLB firings and communicated bits of a dry run on the all-zero input
/// with the all-zero seed. Every built-in strategy uses the same amount on
/// every input.
pub fn resource_count(strategy: &Strategy) -> Result<Resources> {
    let input = vec![0; strategy.parties()];
    let (_, t) = execute(strategy, &input, &Seed::zero(strategy.nlbs().len()))?;
    Ok(Resources {
        nlb: t.nlb_uses(),
        comm: t.comm_bits(),
    })
}

/// `floor(n/2 - 1) + 1`: NLBs needed so that at most one of `n` parties
/// is left without a box.
pub fn min_nlbs_bound(n: usize) -> usize {
    // floor(n/2 - 1) = floor(n/2) - 1 for n >= 2.
    n / 2
}

/// Wiring lint: a winning strategy for the n-party parity games may leave
/// at most one party unattached to every NLB. Returns the isolated
/// parties when there are two or more.
pub fn isolation_lint(strategy: &Strategy) -> std::result::Result<(), Vec<usize>> {
    let isolated = strategy.nlb_isolated_parties();
    if isolated.len() <= 1 {
        Ok(())
    } else {
        Err(isolated)
    }
}
