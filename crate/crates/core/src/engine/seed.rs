use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Strategy;
use crate::error::{Error, Result};
use crate::limits::Limits;

/// One point of a strategy's randomness space: a free bit per NLB plus an
/// index into the shared-randomness domain.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Seed {
    #[serde(serialize_with = "ser_bits", deserialize_with = "de_bits")]
    pub nlb_bits: Vec<bool>,
    pub shared: u64,
}

impl Seed {
    pub fn new(nlb_bits: Vec<bool>, shared: u64) -> Self {
        Seed { nlb_bits, shared }
    }

    /// All NLB bits zero, shared index zero.
    pub fn zero(nlbs: usize) -> Self {
        Seed::new(vec![false; nlbs], 0)
    }
}

fn ser_bits<S: Serializer>(bits: &[bool], s: S) -> Result<S::Ok, S::Error> {
    let text: String = bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
    s.serialize_str(&text)
}

fn de_bits<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<bool>, D::Error> {
    let text = String::deserialize(d)?;
    text.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(serde::de::Error::custom(format!("not a bit: {c:?}"))),
        })
        .collect()
}

/// Shape of a randomness space: `2^nlb_bits * shared` points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeedSpace {
    pub nlb_bits: usize,
    pub shared: u64,
}

impl SeedSpace {
    pub fn new(nlb_bits: usize, shared: u64) -> Self {
        SeedSpace { nlb_bits, shared }
    }

    /// Exact size, or `None` when it does not fit in a `u128`.
    pub fn cardinality(&self) -> Option<u128> {
        if self.nlb_bits >= 127 {
            return None;
        }
        (1u128 << self.nlb_bits).checked_mul(self.shared as u128)
    }

    pub fn check_enumerable(&self, limits: &Limits) -> Result<u128> {
        let size = self.cardinality();
        match size {
            Some(size) if size <= limits.max_seeds() => Ok(size),
            _ => Err(Error::EnumerationLimit {
                what: "seed space".into(),
                size: size.unwrap_or(u128::MAX),
                limit: limits.max_seeds(),
            }),
        }
    }

    /// The seed at `index`; NLB bits are the low-order digits.
    pub fn seed(&self, index: u128) -> Seed {
        let nlb_bits = (0..self.nlb_bits).map(|i| (index >> i) & 1 == 1).collect();
        let shared = (index >> self.nlb_bits) as u64;
        debug_assert!(shared < self.shared);
        Seed { nlb_bits, shared }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Seed {
        let nlb_bits = (0..self.nlb_bits).map(|_| rng.gen()).collect();
        Seed {
            nlb_bits,
            shared: rng.gen_range(0..self.shared),
        }
    }

    pub fn contains(&self, seed: &Seed) -> bool {
        seed.nlb_bits.len() == self.nlb_bits && seed.shared < self.shared
    }
}

/// Every seed of a space exactly once.
#[derive(Debug, Clone)]
pub struct SeedIter {
    space: SeedSpace,
    next: u128,
    end: u128,
}

impl Iterator for SeedIter {
    type Item = Seed;

    fn next(&mut self) -> Option<Seed> {
        if self.next == self.end {
            return None;
        }
        let seed = self.space.seed(self.next);
        self.next += 1;
        Some(seed)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for SeedIter {}

/// Iterates the seed space of `strategy`, failing when it is larger than
/// the configured limit so the caller can fall back to sampling.
pub fn enumerate_seeds(strategy: &Strategy, limits: &Limits) -> Result<SeedIter> {
    let space = strategy.seed_space();
    let end = space.check_enumerable(limits)?;
    Ok(SeedIter { space, next: 0, end })
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    #[test]
    fn enumerates_each_seed_once() {
        let space = SeedSpace::new(3, 5);
        let it = SeedIter {
            space,
            next: 0,
            end: space.cardinality().unwrap(),
        };
        assert_eq!(it.len(), 40);
        let seen: HashSet<Seed> = it.collect();
        assert_eq!(seen.len(), 40);
        assert!(seen.iter().all(|s| space.contains(s)));
    }

    #[test]
    fn limit_is_enforced() {
        let limits = Limits {
            max_seed_bits: 4,
            ..Limits::default()
        };
        assert!(SeedSpace::new(4, 1).check_enumerable(&limits).is_ok());
        assert!(matches!(
            SeedSpace::new(4, 2).check_enumerable(&limits),
            Err(Error::EnumerationLimit { size: 32, .. })
        ));
        assert!(SeedSpace::new(580, 1).check_enumerable(&limits).is_err());
    }

    #[test]
    fn json_schema() {
        let seed = Seed::new(vec![true, false, true], 7);
        let json = serde_json::to_string(&seed).unwrap();
        assert_eq!(json, r#"{"nlb_bits":"101","shared":7}"#);
        assert_eq!(serde_json::from_str::<Seed>(&json).unwrap(), seed);
    }
}
