//! The six games: promise sets, win relations, and target correlations.
//!
//! Inputs are one symbol per party. For bit-input games the symbol is the
//! bit; for the magic square it is a 0-based row/column index (shown
//! 1-based at the boundary); for the distributed Deutsch-Jozsa game it is
//! the packed `2^n`-bit string.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample as sample_indices;
use rand::Rng;
use serde_json::{json, Value};

use crate::bits::Bits;
use crate::engine::PartySignature;
use crate::error::{Error, Result};
use crate::limits::Limits;

pub type Input = Vec<u64>;
pub type Outcome = Vec<Bits>;

/// Largest supported Deutsch-Jozsa parameter (strings of `2^5 = 32` bits).
pub const MAX_DJ_N: usize = 5;
/// Largest party count accepted for the n-party games.
pub const MAX_PARTIES: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Game {
    Chsh,
    MagicSquare,
    Mermin,
    MultiMermin(usize),
    DeutschJozsa(usize),
    Bmaj(usize),
}

impl Game {
    pub fn multi_mermin(n: usize) -> Result<Self> {
        if !(3..=MAX_PARTIES).contains(&n) {
            return Err(Error::InvalidParameter(format!(
                "multi-mermin needs 3 <= n <= {MAX_PARTIES}, got {n}"
            )));
        }
        Ok(Game::MultiMermin(n))
    }

    pub fn deutsch_jozsa(n: usize) -> Result<Self> {
        if !(1..=MAX_DJ_N).contains(&n) {
            return Err(Error::InvalidParameter(format!(
                "dj needs 1 <= n <= {MAX_DJ_N}, got {n}"
            )));
        }
        Ok(Game::DeutschJozsa(n))
    }

    pub fn bmaj(n: usize) -> Result<Self> {
        if !(2..=MAX_PARTIES).contains(&n) {
            return Err(Error::InvalidParameter(format!(
                "bmaj needs 2 <= n <= {MAX_PARTIES}, got {n}"
            )));
        }
        Ok(Game::Bmaj(n))
    }

    pub fn id(&self) -> String {
        self.to_string()
    }

    pub fn parties(&self) -> usize {
        match *self {
            Game::Chsh | Game::MagicSquare | Game::DeutschJozsa(_) => 2,
            Game::Mermin => 3,
            Game::MultiMermin(n) | Game::Bmaj(n) => n,
        }
    }

    pub fn signature(&self) -> Vec<PartySignature> {
        let sig = match *self {
            Game::MagicSquare => PartySignature::new(3, 3),
            Game::DeutschJozsa(n) => PartySignature::new(1u64 << dj_len(n), n),
            _ => PartySignature::bit_to_bit(),
        };
        vec![sig; self.parties()]
    }

    /// Whether the target correlation is "uniform over winning
    /// outcomes" for this game.
    pub fn has_uniform_target(&self) -> bool {
        matches!(self, Game::MagicSquare | Game::Mermin | Game::MultiMermin(_))
    }

    /// Exact number of promised inputs.
    pub fn promise_size(&self) -> u128 {
        match *self {
            Game::Chsh | Game::Mermin => 4,
            Game::MagicSquare => 9,
            Game::MultiMermin(n) => 1u128 << (n - 1),
            Game::Bmaj(n) => 1u128 << n,
            Game::DeutschJozsa(n) => {
                let len = dj_len(n);
                (1u128 << len) * (1 + binomial(len as u64, len as u64 / 2))
            }
        }
    }

    pub fn is_promised(&self, input: &[u64]) -> bool {
        if input.len() != self.parties() {
            return false;
        }
        if input.iter().zip(self.signature()).any(|(&x, sig)| x >= sig.inputs) {
            return false;
        }
        match *self {
            Game::Mermin | Game::MultiMermin(_) => input.iter().sum::<u64>() % 2 == 0,
            Game::DeutschJozsa(n) => {
                let len = dj_len(n);
                let d = Bits::new(input[0], len).distance(&Bits::new(input[1], len)) as usize;
                d == 0 || d == len / 2
            }
            _ => true,
        }
    }

    /// The whole promise set, in a fixed order.
    pub fn promised_inputs(&self, limits: &Limits) -> Result<Vec<Input>> {
        let size = self.promise_size();
        if size > limits.max_promise as u128 {
            return Err(Error::EnumerationLimit {
                what: format!("promise set of {self}"),
                size,
                limit: limits.max_promise as u128,
            });
        }
        let out = match *self {
            Game::Chsh => product(&[2, 2]),
            Game::MagicSquare => product(&[3, 3]),
            Game::Mermin | Game::MultiMermin(_) | Game::Bmaj(_) => {
                let n = self.parties();
                (0..1u64 << n)
                    .map(|v| (0..n).map(|i| (v >> i) & 1).collect::<Input>())
                    .filter(|x| self.is_promised(x))
                    .collect()
            }
            Game::DeutschJozsa(n) => {
                let len = dj_len(n);
                let masks: Vec<u64> = (0..1u64 << len)
                    .filter(|m| m.count_ones() == 0 || m.count_ones() as usize == len / 2)
                    .collect();
                (0..1u64 << len)
                    .flat_map(|x| masks.iter().map(move |m| vec![x, x ^ m]))
                    .collect()
            }
        };
        debug_assert_eq!(out.len() as u128, size);
        Ok(out)
    }

    /// `count` promised inputs drawn at random. Deutsch-Jozsa pairs are equal
    /// or at distance `2^(n-1)` with probability 1/2 each; other games draw
    /// uniformly from the promise.
    pub fn sample_promised<R: Rng + ?Sized>(&self, count: usize, rng: &mut R) -> Vec<Input> {
        (0..count).map(|_| self.sample_one(rng)).collect()
    }

    fn sample_one<R: Rng + ?Sized>(&self, rng: &mut R) -> Input {
        let n = self.parties();
        match *self {
            Game::Chsh | Game::Bmaj(_) => (0..n).map(|_| rng.gen_range(0..2)).collect(),
            Game::MagicSquare => vec![rng.gen_range(0..3), rng.gen_range(0..3)],
            Game::Mermin | Game::MultiMermin(_) => {
                let mut x: Input = (0..n - 1).map(|_| rng.gen_range(0..2)).collect();
                x.push(x.iter().sum::<u64>() % 2);
                x
            }
            Game::DeutschJozsa(dn) => {
                let len = dj_len(dn);
                let x = rng.gen::<u64>() & ((1u64 << len) - 1);
                if rng.gen_bool(0.5) {
                    vec![x, x]
                } else {
                    let mask = sample_indices(rng, len, len / 2)
                        .into_iter()
                        .fold(0u64, |m, i| m | 1 << i);
                    vec![x, x ^ mask]
                }
            }
        }
    }

    fn check_outcome(&self, outcome: &[Bits]) -> Result<()> {
        if outcome.len() != self.parties() {
            return Err(Error::OutcomeArity(format!(
                "{self} expects {} outputs, got {}",
                self.parties(),
                outcome.len()
            )));
        }
        for (party, (y, sig)) in outcome.iter().zip(self.signature()).enumerate() {
            if y.len() != sig.output_len {
                return Err(Error::OutcomeArity(format!(
                    "party {party} of {self} outputs {} bits, got {}",
                    sig.output_len,
                    y.len()
                )));
            }
        }
        Ok(())
    }

    /// Whether `(input, outcome)` satisfies the game's relation. Off-promise
    /// inputs and mis-sized outcomes are errors.
    pub fn is_winning(&self, input: &[u64], outcome: &[Bits]) -> Result<bool> {
        self.check_outcome(outcome)?;
        if !self.is_promised(input) {
            return Err(Error::OffPromise(format!("{input:?} for {self}")));
        }
        Ok(self.relation_holds(input, outcome))
    }

    /// The relation itself, for callers that already validated arity and
    /// promise.
    pub fn relation_holds(&self, input: &[u64], outcome: &[Bits]) -> bool {
        match *self {
            Game::Chsh => (outcome[0].get(0) ^ outcome[1].get(0)) == (input[0] == 1 && input[1] == 1),
            Game::MagicSquare => {
                let (a, b) = (outcome[0], outcome[1]);
                let alice_ok = a.get(2) == (a.get(0) ^ a.get(1));
                let bob_ok = b.get(2) == !(b.get(0) ^ b.get(1));
                alice_ok && bob_ok && a.get(input[1] as usize) == b.get(input[0] as usize)
            }
            Game::Mermin | Game::MultiMermin(_) => {
                let target = (input.iter().sum::<u64>() / 2) % 2 == 1;
                output_parity(outcome) == target
            }
            Game::DeutschJozsa(_) => (outcome[0] == outcome[1]) == (input[0] == input[1]),
            Game::Bmaj(_) => {
                let x: Vec<bool> = input.iter().map(|&v| v == 1).collect();
                output_parity(outcome) == bmaj(&x)
            }
        }
    }

    /// Every outcome that wins on `input`.
    pub fn winning_outcomes(&self, input: &[u64], limits: &Limits) -> Result<Vec<Outcome>> {
        if !self.is_promised(input) {
            return Err(Error::OffPromise(format!("{input:?} for {self}")));
        }
        let lens: Vec<usize> = self.signature().iter().map(|s| s.output_len).collect();
        let total_bits: usize = lens.iter().sum();
        if total_bits >= 63 || (1u64 << total_bits) > limits.max_outcomes {
            return Err(Error::EnumerationLimit {
                what: format!("outcome space of {self}"),
                size: if total_bits >= 127 {
                    u128::MAX
                } else {
                    1u128 << total_bits
                },
                limit: limits.max_outcomes as u128,
            });
        }
        Ok(all_outcomes(&lens).filter(|y| self.relation_holds(input, y)).collect())
    }

    /// JSON form of an input; magic-square indices are shown 1-based.
    pub fn input_json(&self, input: &[u64]) -> Value {
        match *self {
            Game::MagicSquare => json!(input.iter().map(|x| x + 1).collect::<Vec<_>>()),
            Game::DeutschJozsa(n) => json!(input
                .iter()
                .map(|&x| Bits::new(x, dj_len(n)).to_string())
                .collect::<Vec<_>>()),
            _ => json!(input),
        }
    }

    pub fn format_input(&self, input: &[u64]) -> String {
        match self.input_json(input) {
            Value::Array(items) => {
                let parts: Vec<String> = items
                    .iter()
                    .map(|v| v.as_str().map(str::to_owned).unwrap_or_else(|| v.to_string()))
                    .collect();
                format!("({})", parts.join(","))
            }
            other => other.to_string(),
        }
    }
}

/// Length of each party's string in the Deutsch-Jozsa game.
pub fn dj_len(n: usize) -> usize {
    1 << n
}

/// Majority biased towards 0: true iff strictly more than `floor(n/2)` of
/// the bits are set.
pub fn bmaj(x: &[bool]) -> bool {
    let weight = x.iter().filter(|&&b| b).count();
    weight > x.len() / 2
}

pub fn output_parity(outcome: &[Bits]) -> bool {
    outcome.iter().fold(false, |acc, y| acc ^ y.parity())
}

pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn product(radix: &[u64]) -> Vec<Input> {
    let total: u64 = radix.iter().product();
    (0..total)
        .map(|mut idx| {
            let mut x = vec![0; radix.len()];
            for (i, &r) in radix.iter().enumerate().rev() {
                x[i] = idx % r;
                idx /= r;
            }
            x
        })
        .collect()
}

/// All outcome tuples with the given per-party lengths.
pub fn all_outcomes(lens: &[usize]) -> impl Iterator<Item = Outcome> + '_ {
    let total: usize = lens.iter().sum();
    (0..1u64 << total).map(move |mut v| {
        lens.iter()
            .map(|&len| {
                let b = Bits::new(v, len);
                v >>= len;
                b
            })
            .collect()
    })
}

impl fmt::Display for Game {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Game::Chsh => f.write_str("chsh"),
            Game::MagicSquare => f.write_str("magic-square"),
            Game::Mermin => f.write_str("mermin"),
            Game::MultiMermin(n) => write!(f, "multi-mermin:{n}"),
            Game::DeutschJozsa(n) => write!(f, "dj:{n}"),
            Game::Bmaj(n) => write!(f, "bmaj:{n}"),
        }
    }
}

impl FromStr for Game {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let param = |rest: &str| rest.parse::<usize>().map_err(|_| Error::UnknownGame(s.to_string()));
        match s.split_once(':') {
            None => match s {
                "chsh" => Ok(Game::Chsh),
                "magic-square" => Ok(Game::MagicSquare),
                "mermin" => Ok(Game::Mermin),
                _ => Err(Error::UnknownGame(s.to_string())),
            },
            Some(("multi-mermin", n)) => Game::multi_mermin(param(n)?),
            Some(("dj", n)) => Game::deutsch_jozsa(param(n)?),
            Some(("bmaj", n)) => Game::bmaj(param(n)?),
            Some(_) => Err(Error::UnknownGame(s.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;

    use super::*;

    fn b(s: &str) -> Bits {
        s.parse().unwrap()
    }

    #[test]
    fn registry_round_trips() {
        for id in ["chsh", "magic-square", "mermin", "multi-mermin:4", "dj:2", "bmaj:5"] {
            assert_eq!(id.parse::<Game>().unwrap().id(), id);
        }
        assert!("multi-mermin:2".parse::<Game>().is_err());
        assert!("dj:0".parse::<Game>().is_err());
        assert!("poker".parse::<Game>().is_err());
        assert!("bmaj:x".parse::<Game>().is_err());
    }

    #[test]
    fn mermin_promise() {
        let xs = Game::Mermin.promised_inputs(&Limits::default()).unwrap();
        assert_eq!(xs, vec![vec![0, 0, 0], vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]]);
        assert_eq!(
            Game::MultiMermin(4).promised_inputs(&Limits::default()).unwrap().len(),
            8
        );
    }

    #[test]
    fn dj_promise_by_direct_count() {
        // 4-bit pairs at Hamming distance 0 or 2, counted by brute force.
        let mut count = 0;
        for x in 0u64..16 {
            for y in 0u64..16 {
                let d = (x ^ y).count_ones();
                if d == 0 || d == 2 {
                    count += 1;
                }
            }
        }
        assert_eq!(count, 112);
        let game = Game::DeutschJozsa(2);
        let xs = game.promised_inputs(&Limits::default()).unwrap();
        assert_eq!(xs.len(), 112);
        assert_eq!(game.promise_size(), 112);
        for x in &xs {
            assert!(game.is_promised(&[x[1], x[0]]));
        }
    }

    #[test]
    fn dj_large_promise_needs_sampling() {
        let game = Game::DeutschJozsa(3);
        assert!(matches!(
            game.promised_inputs(&Limits::default()),
            Err(Error::EnumerationLimit { .. })
        ));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let xs = game.sample_promised(200, &mut rng);
        assert!(xs.iter().all(|x| game.is_promised(x)));
        let equal = xs.iter().filter(|x| x[0] == x[1]).count();
        assert!(equal > 60 && equal < 140, "{equal}");
    }

    #[test]
    fn magic_square_relation() {
        let g = Game::MagicSquare;
        assert!(g.is_winning(&[0, 0], &[b("011"), b("010")]).unwrap());
        assert!(!g.is_winning(&[2, 2], &[b("011"), b("100")]).unwrap());
        assert!(g.is_winning(&[0, 0], &[b("011")]).is_err());
        assert!(g.is_winning(&[0, 0], &[b("01"), b("010")]).is_err());
    }

    #[test]
    fn mermin_zero_input() {
        let g = Game::Mermin;
        assert!(g.is_winning(&[0, 0, 0], &[b("0"), b("0"), b("0")]).unwrap());
        assert!(matches!(
            g.is_winning(&[1, 0, 0], &[b("0"), b("0"), b("0")]),
            Err(Error::OffPromise(_))
        ));
    }

    #[test]
    fn magic_square_has_eight_winners_everywhere() {
        // Filter the 64 (Alice, Bob) candidates by hand.
        for r in 0..3usize {
            for c in 0..3usize {
                let mut count = 0;
                for a in 0u64..8 {
                    for bb in 0u64..8 {
                        let bit = |v: u64, i: usize| (v >> i) & 1 == 1;
                        let ok = bit(a, 2) == (bit(a, 0) ^ bit(a, 1))
                            && bit(bb, 2) != (bit(bb, 0) ^ bit(bb, 1))
                            && bit(a, c) == bit(bb, r);
                        count += ok as usize;
                    }
                }
                assert_eq!(count, 8);
                let w = Game::MagicSquare
                    .winning_outcomes(&[r as u64, c as u64], &Limits::default())
                    .unwrap();
                assert_eq!(w.len(), 8);
            }
        }
    }

    #[test]
    fn uniform_targets_have_input_independent_support() {
        let limits = Limits::default();
        for (game, expected) in [
            (Game::MagicSquare, 8),
            (Game::Mermin, 4),
            (Game::MultiMermin(4), 8),
            (Game::MultiMermin(5), 16),
        ] {
            for x in game.promised_inputs(&limits).unwrap() {
                assert_eq!(game.winning_outcomes(&x, &limits).unwrap().len(), expected, "{game}");
            }
        }
    }

    #[test]
    fn bmaj_examples() {
        assert!(bmaj(&[true, true]));
        assert!(bmaj(&[true, true, false]));
        assert!(!bmaj(&[true, false, false, false]));
        for a in [false, true] {
            for c in [false, true] {
                assert_eq!(bmaj(&[a, c]), a && c);
            }
        }
    }

    #[test]
    fn bmaj3_matches_mermin_on_even_inputs() {
        let limits = Limits::default();
        for x in Game::Mermin.promised_inputs(&limits).unwrap() {
            let bits: Vec<bool> = x.iter().map(|&v| v == 1).collect();
            let mermin_target = (x.iter().sum::<u64>() / 2) % 2 == 1;
            assert_eq!(bmaj(&bits), mermin_target);
        }
    }

    #[test]
    fn input_json_uses_one_based_squares() {
        assert_eq!(Game::MagicSquare.input_json(&[0, 2]), json!([1, 3]));
        assert_eq!(Game::DeutschJozsa(2).format_input(&[0b0110, 0b0110]), "(0110,0110)");
    }
}
