/// Desk-scale guardrails. Exceeding any of them is an explicit error, never
/// a silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Seed spaces larger than `2^max_seed_bits` are not enumerated.
    pub max_seed_bits: u32,
    /// Upper bound on strategy evaluations in classical-value and
    /// impossibility searches.
    pub max_search: u64,
    /// Largest promise set enumerated exhaustively.
    pub max_promise: u64,
    /// Largest per-input outcome space enumerated by `winning_outcomes`.
    pub max_outcomes: u64,
    /// Hard cap on rounds in one protocol run.
    pub max_rounds: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_seed_bits: 24,
            max_search: 1 << 28,
            max_promise: 1 << 12,
            max_outcomes: 1 << 16,
            max_rounds: 1 << 16,
        }
    }
}

impl Limits {
    pub fn max_seeds(&self) -> u128 {
        1u128 << self.max_seed_bits.min(120)
    }
}
