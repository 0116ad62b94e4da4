//! Simulation and exhaustive verification of protocols that use non-local
//! boxes (NLBs) in place of entanglement.
//!
//! The [`engine`] runs party programs round by round against NLBs, shared
//! randomness and one-bit channels. [`games`] defines the promise games,
//! [`strategies`] the protocols that win them, [`distbit`] the XOR-shared
//! Boolean algebra several of those protocols are built from, and
//! [`analysis`] the exact distributions, classical values and searches.

pub mod analysis;
pub mod bits;
pub mod distbit;
pub mod engine;
pub mod error;
pub mod games;
pub mod limits;
pub mod strategies;

pub use bits::Bits;
pub use engine::{
    execute, nlb_evaluate, Action, LocalView, NlbId, PartySignature, Seed, SeedSpace, Strategy, Transcript,
};
pub use error::{Error, Result};
pub use games::{Game, Input, Outcome};
pub use limits::Limits;
pub use strategies::StrategyId;
