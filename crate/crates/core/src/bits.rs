//! Fixed-length bit strings of at most 64 bits.
//!
//! Position 0 is the first character of the textual form, so `"011"` has
//! bit 0 clear and bits 1 and 2 set.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Maximum supported length of a [`Bits`] value.
pub const MAX_BITS: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Bits {
    len: u8,
    value: u64,
}

impl Bits {
    pub const EMPTY: Bits = Bits { len: 0, value: 0 };

    /// Builds a string of `len` bits from the low bits of `value`.
    pub fn new(value: u64, len: usize) -> Self {
        assert!(len <= MAX_BITS, "bit string longer than {MAX_BITS}");
        Bits {
            len: len as u8,
            value: value & mask(len),
        }
    }

    pub fn bit(b: bool) -> Self {
        Bits::new(b as u64, 1)
    }

    pub fn zeros(len: usize) -> Self {
        Bits::new(0, len)
    }

    pub fn ones(len: usize) -> Self {
        Bits::new(u64::MAX, len)
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut out = Bits::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            out.set(i, b);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Packed value; bit `i` of the result is position `i`.
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len(), "bit index {i} out of range for length {}", self.len);
        (self.value >> i) & 1 == 1
    }

    pub fn set(&mut self, i: usize, b: bool) {
        assert!(i < self.len(), "bit index {i} out of range for length {}", self.len);
        if b {
            self.value |= 1 << i;
        } else {
            self.value &= !(1 << i);
        }
    }

    pub fn weight(&self) -> u32 {
        self.value.count_ones()
    }

    pub fn parity(&self) -> bool {
        self.weight() % 2 == 1
    }

    /// Bitwise complement, keeping the length.
    pub fn flipped(&self) -> Self {
        Bits::new(!self.value, self.len())
    }

    pub fn xor(&self, other: &Bits) -> Self {
        assert_eq!(self.len, other.len, "xor of bit strings with different lengths");
        Bits::new(self.value ^ other.value, self.len())
    }

    /// Hamming distance.
    pub fn distance(&self, other: &Bits) -> u32 {
        self.xor(other).weight()
    }

    /// Appends `extra` after the last position.
    pub fn concat(&self, extra: &Bits) -> Self {
        assert!(self.len() + extra.len() <= MAX_BITS);
        Bits::new(self.value | (extra.value << self.len), self.len() + extra.len())
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }

    /// All strings of the given length, in increasing packed order.
    pub fn all(len: usize) -> impl Iterator<Item = Bits> {
        assert!(len < MAX_BITS, "cannot enumerate 2^{len} strings");
        (0..1u64 << len).map(move |v| Bits::new(v, len))
    }
}

fn mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bits({self})")
    }
}

impl FromStr for Bits {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.len() > MAX_BITS {
            return Err(Error::Parse(format!("bit string longer than {MAX_BITS}: {s:?}")));
        }
        let mut out = Bits::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => out.set(i, true),
                _ => return Err(Error::Parse(format!("not a bit string: {s:?}"))),
            }
        }
        Ok(out)
    }
}

impl Serialize for Bits {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Bits {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
