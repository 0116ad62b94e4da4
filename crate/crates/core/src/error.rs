use thiserror::Error;

use crate::engine::{ChannelId, NlbId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("expected {expected} inputs, got {got}")]
    InputArity { expected: usize, got: usize },

    #[error("party {party} input {symbol} outside alphabet of size {alphabet}")]
    InputOutOfRange { party: usize, symbol: u64, alphabet: u64 },

    #[error("party {party} produced {got} output bits, expected {expected}")]
    OutputArity { party: usize, expected: usize, got: usize },

    #[error("seed does not fit strategy: {0}")]
    SeedMismatch(String),

    #[error("party {party} referenced undeclared NLB {nlb}")]
    UndeclaredNlb { party: usize, nlb: NlbId },

    #[error("party {party} does not own a port of NLB {nlb}")]
    NotPortOwner { party: usize, nlb: NlbId },

    #[error("NLB {nlb} used more than once")]
    NlbReused { nlb: NlbId },

    #[error("party {party} referenced undeclared channel {channel}")]
    UndeclaredChannel { party: usize, channel: ChannelId },

    #[error("party {party} is not the sender on channel {channel}")]
    NotChannelSender { party: usize, channel: ChannelId },

    #[error("channel {channel} used more than once")]
    ChannelReused { channel: ChannelId },

    #[error("deadlock in round {round}: {detail}")]
    Deadlock { round: usize, detail: String },

    #[error("run exceeded {0} rounds")]
    RoundLimit(usize),

    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),

    #[error("{what} has {size} elements, above the enumeration limit {limit}")]
    EnumerationLimit { what: String, size: u128, limit: u128 },

    #[error("unknown game {0:?}")]
    UnknownGame(String),

    #[error("unknown strategy {0:?}")]
    UnknownStrategy(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("input {0} is outside the promise")]
    OffPromise(String),

    #[error("outcome arity mismatch: {0}")]
    OutcomeArity(String),

    #[error("strategy {strategy} does not fit game {game}: {detail}")]
    ArityMismatch {
        game: String,
        strategy: String,
        detail: String,
    },

    #[error("expected {expected} free bits, got {got}")]
    SeedCount { expected: usize, got: usize },

    #[error("malformed formula: {0}")]
    MalformedFormula(String),

    #[error("strategy {0} uses communication; the check does not apply")]
    CommunicationUsed(String),

    #[error("unsupported search: {0}")]
    SearchUnsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
