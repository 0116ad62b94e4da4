use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::search::Budget;
use super::{
    ClassicalValue, Counterexample, ExactDistribution, Resources, SearchReport, SearchWitness, VerifyReport,
    DETERMINISM_NOTE,
};
use crate::bits::Bits;
use crate::engine::{Seed, Transcript};
use crate::error::Result;
use crate::games::Game;
use crate::limits::Limits;

/// Exact fraction in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rational {
    pub num: u64,
    pub den: u64,
}

impl From<Ratio<u64>> for Rational {
    fn from(r: Ratio<u64>) -> Self {
        Rational {
            num: *r.numer(),
            den: *r.denom(),
        }
    }
}

impl From<Rational> for Ratio<u64> {
    fn from(r: Rational) -> Self {
        Ratio::new(r.num, r.den)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleJson {
    pub input: Value,
    pub seed: Seed,
    pub outcome: Vec<Bits>,
    pub transcript: Transcript,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeProb {
    pub outcome: Vec<Bits>,
    pub p: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistRow {
    pub input: Value,
    pub outcomes: Vec<OutcomeProb>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub budget: Budget,
    pub pairings: usize,
    pub candidates_per_pairing: u64,
    pub space: u64,
    pub perfect: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<SearchWitness>,
}

/// Machine-readable result of one command. Fields that do not apply to a
/// mode are omitted from the JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub game: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub strategy: Option<String>,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub value: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pass: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub policy: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub checked: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<CounterexampleJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub resources: Option<Resources>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub strategies: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub best: Option<Vec<Vec<(u64, Bits)>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub uniform: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub denominator: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub distribution: Option<Vec<DistRow>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub search: Option<SearchSummary>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    pub runtime_ms: u64,
}

impl Report {
    pub fn new(game: &Game, mode: &str) -> Self {
        Report {
            game: game.to_string(),
            strategy: None,
            mode: mode.to_owned(),
            value: None,
            pass: None,
            policy: None,
            checked: None,
            counterexample: None,
            resources: None,
            strategies: None,
            best: None,
            uniform: None,
            denominator: None,
            distribution: None,
            search: None,
            note: None,
            runtime_ms: 0,
        }
    }

    pub fn with_strategy(mut self, name: &str) -> Self {
        self.strategy = Some(name.to_owned());
        self
    }

    /// `value` is the fraction of checked runs won.
    pub fn verify(game: &Game, strategy: &str, policy: &str, r: &VerifyReport) -> Self {
        let mut out = Report::new(game, "verify").with_strategy(strategy);
        out.value = Some(Ratio::new(r.won, r.checked.max(1)).into());
        out.pass = Some(r.pass);
        out.policy = Some(policy.to_owned());
        out.checked = Some(r.checked);
        out.resources = Some(r.resources);
        out.counterexample = r.counterexample.as_ref().map(|c| counterexample_json(game, c));
        out
    }

    pub fn value(game: &Game, v: &ClassicalValue) -> Self {
        let mut out = Report::new(game, "value");
        out.value = Some(v.value.into());
        out.strategies = Some(v.strategies as u64);
        out.best = Some(v.best.clone());
        out
    }

    /// `value` is the exact winning probability under a uniform promised
    /// input.
    pub fn dist(game: &Game, strategy: &str, d: &ExactDistribution, limits: &Limits) -> Result<Self> {
        let mut out = Report::new(game, "dist").with_strategy(strategy);
        out.value = Some(d.win_probability().into());
        out.uniform = Some(d.is_uniform_over_winning(limits)?);
        out.denominator = Some(d.denominator);
        out.distribution = Some(
            d.rows
                .iter()
                .map(|row| DistRow {
                    input: game.input_json(&row.input),
                    outcomes: row
                        .counts
                        .iter()
                        .map(|(y, &c)| OutcomeProb {
                            outcome: y.clone(),
                            p: Ratio::new(c, d.denominator).into(),
                        })
                        .collect(),
                })
                .collect(),
        );
        Ok(out)
    }

    pub fn search(game: &Game, s: &SearchReport) -> Self {
        let mut out = Report::new(game, "search");
        out.value = Some(s.best.into());
        out.pass = Some(s.perfect);
        out.search = Some(SearchSummary {
            budget: s.budget,
            pairings: s.pairings,
            candidates_per_pairing: s.candidates_per_pairing,
            space: s.space() as u64,
            perfect: s.perfect,
            witness: s.witness().cloned(),
        });
        out.note = Some(DETERMINISM_NOTE.to_owned());
        out
    }

    pub fn resources(game: &Game, strategy: &str, r: Resources) -> Self {
        let mut out = Report::new(game, "resources").with_strategy(strategy);
        out.resources = Some(r);
        out
    }
}

fn counterexample_json(game: &Game, c: &Counterexample) -> CounterexampleJson {
    CounterexampleJson {
        input: game.input_json(&c.input),
        seed: c.seed.clone(),
        outcome: c.outcome.clone(),
        transcript: c.transcript.clone(),
    }
}
