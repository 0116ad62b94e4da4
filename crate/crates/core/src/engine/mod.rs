//! Non-local boxes, shared randomness, one-bit channels, and the
//! round-based executor that runs party programs against them.
//!
//! A run is bulk-synchronous. In every round each party that has not yet
//! produced its output is shown a [`LocalView`] and returns an [`Action`].
//! After all parties have acted, every NLB whose two ports have both been
//! supplied fires, channel bits are delivered, and the next round starts.
//! A party only ever sees its own input, the shared-randomness value, and
//! what arrived at its own NLB ports and incoming channels.

mod execute;
mod seed;
mod transcript;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::error::{Error, Result};

pub use execute::{execute, execute_with_limit, Action, LocalView};
pub use seed::{enumerate_seeds, Seed, SeedIter, SeedSpace};
pub use transcript::{ChannelSend, NlbFiring, Transcript};

/// Evaluates one non-local box.
///
/// Port 0 receives the free bit `r`; port 1 receives `r ^ (a & b)`, so the
/// outputs always XOR to `a & b` and each marginal is uniform over `r`.
pub fn nlb_evaluate(a: bool, b: bool, r: bool) -> (bool, bool) {
    (r, r ^ (a & b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NlbId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ChannelId(pub usize);

impl fmt::Display for NlbId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl fmt::Display for ChannelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NlbInstance {
    pub id: NlbId,
    /// `ports[0]` is the party at port 0, which receives the free bit.
    pub ports: [usize; 2],
}

impl NlbInstance {
    pub fn port_of(&self, party: usize) -> Option<usize> {
        self.ports.iter().position(|&p| p == party)
    }
}

/// A directed channel carrying exactly one bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Channel {
    pub id: ChannelId,
    pub from: usize,
    pub to: usize,
}

/// Input alphabet size and output length of one party.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartySignature {
    pub inputs: u64,
    pub output_len: usize,
}

impl PartySignature {
    pub const fn new(inputs: u64, output_len: usize) -> Self {
        PartySignature { inputs, output_len }
    }

    pub const fn bit_to_bit() -> Self {
        PartySignature::new(2, 1)
    }
}

/// One party's local behaviour. `step` is called once per round and must
/// be a pure function of the view it is given.
pub trait PartyProgram: Send + Sync {
    fn step(&self, view: &LocalView<'_>) -> Action;
}

impl<F> PartyProgram for F
where
    F: Fn(&LocalView<'_>) -> Action + Send + Sync,
{
    fn step(&self, view: &LocalView<'_>) -> Action {
        self(view)
    }
}

/// Finite shared-randomness domain. Parties see a uniform index in
/// `0..size` and interpret it themselves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharedDomain {
    pub size: u64,
    pub label: String,
}

impl SharedDomain {
    pub fn none() -> Self {
        SharedDomain {
            size: 1,
            label: "none".into(),
        }
    }
}

/// A complete protocol: one program per party plus its declared resources.
#[derive(Clone)]
pub struct Strategy {
    name: String,
    signature: Vec<PartySignature>,
    programs: Vec<Arc<dyn PartyProgram>>,
    nlbs: Vec<NlbInstance>,
    channels: Vec<Channel>,
    shared: SharedDomain,
}

impl fmt::Debug for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Strategy")
            .field("name", &self.name)
            .field("signature", &self.signature)
            .field("nlbs", &self.nlbs.len())
            .field("channels", &self.channels.len())
            .field("shared", &self.shared)
            .finish()
    }
}

impl Strategy {
    pub fn builder(name: impl Into<String>, signature: Vec<PartySignature>) -> StrategyBuilder {
        let parties = signature.len();
        StrategyBuilder {
            name: name.into(),
            signature,
            programs: vec![None; parties],
            nlbs: Vec::new(),
            channels: Vec::new(),
            shared: SharedDomain::none(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn parties(&self) -> usize {
        self.signature.len()
    }

    pub fn signature(&self) -> &[PartySignature] {
        &self.signature
    }

    pub fn nlbs(&self) -> &[NlbInstance] {
        &self.nlbs
    }

    pub fn channels(&self) -> &[Channel] {
        &self.channels
    }

    pub fn shared(&self) -> &SharedDomain {
        &self.shared
    }

    pub fn uses_communication(&self) -> bool {
        !self.channels.is_empty()
    }

    pub fn seed_space(&self) -> SeedSpace {
        SeedSpace::new(self.nlbs.len(), self.shared.size)
    }

    pub(crate) fn program(&self, party: usize) -> &dyn PartyProgram {
        self.programs[party].as_ref()
    }

    /// `reach[j][i]` is true when party `j` can influence party `i` through
    /// some chain of NLBs (either direction) and channels (sender to receiver).
    pub fn influence(&self) -> Vec<Vec<bool>> {
        let n = self.parties();
        let mut reach = vec![vec![false; n]; n];
        for (i, row) in reach.iter_mut().enumerate() {
            row[i] = true;
        }
        for nlb in &self.nlbs {
            reach[nlb.ports[0]][nlb.ports[1]] = true;
            reach[nlb.ports[1]][nlb.ports[0]] = true;
        }
        for ch in &self.channels {
            reach[ch.from][ch.to] = true;
        }
        for k in 0..n {
            let via = reach[k].clone();
            for row in reach.iter_mut().filter(|row| row[k]) {
                for (cell, &v) in row.iter_mut().zip(&via) {
                    *cell |= v;
                }
            }
        }
        reach
    }

    /// Parties that are not attached to any NLB.
    pub fn nlb_isolated_parties(&self) -> Vec<usize> {
        (0..self.parties())
            .filter(|&p| !self.nlbs.iter().any(|nlb| nlb.port_of(p).is_some()))
            .collect()
    }
}

pub struct StrategyBuilder {
    name: String,
    signature: Vec<PartySignature>,
    programs: Vec<Option<Arc<dyn PartyProgram>>>,
    nlbs: Vec<NlbInstance>,
    channels: Vec<Channel>,
    shared: SharedDomain,
}

impl StrategyBuilder {
    /// Declares an NLB with `port0` at port 0.
    pub fn nlb(&mut self, port0: usize, port1: usize) -> NlbId {
        let id = NlbId(self.nlbs.len());
        self.nlbs.push(NlbInstance {
            id,
            ports: [port0, port1],
        });
        id
    }

    pub fn channel(&mut self, from: usize, to: usize) -> ChannelId {
        let id = ChannelId(self.channels.len());
        self.channels.push(Channel { id, from, to });
        id
    }

    pub fn shared(&mut self, size: u64, label: impl Into<String>) -> &mut Self {
        self.shared = SharedDomain {
            size,
            label: label.into(),
        };
        self
    }

    pub fn program(&mut self, party: usize, program: impl PartyProgram + 'static) -> &mut Self {
        self.programs[party] = Some(Arc::new(program));
        self
    }

    pub fn build(self) -> Result<Strategy> {
        let n = self.signature.len();
        if n == 0 {
            return Err(Error::InvalidStrategy("no parties".into()));
        }
        for nlb in &self.nlbs {
            let [p0, p1] = nlb.ports;
            if p0 >= n || p1 >= n {
                return Err(Error::InvalidStrategy(format!("NLB {} names a missing party", nlb.id)));
            }
            if p0 == p1 {
                return Err(Error::InvalidStrategy(format!(
                    "NLB {} has both ports at party {p0}",
                    nlb.id
                )));
            }
        }
        for ch in &self.channels {
            if ch.from >= n || ch.to >= n || ch.from == ch.to {
                return Err(Error::InvalidStrategy(format!("bad endpoints on channel {}", ch.id)));
            }
        }
        if self.shared.size == 0 {
            return Err(Error::InvalidStrategy("empty shared-randomness domain".into()));
        }
        let programs = self
            .programs
            .into_iter()
            .enumerate()
            .map(|(p, prog)| prog.ok_or_else(|| Error::InvalidStrategy(format!("party {p} has no program"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Strategy {
            name: self.name,
            signature: self.signature,
            programs,
            nlbs: self.nlbs,
            channels: self.channels,
            shared: self.shared,
        })
    }
}

/// Convenience for outputs that are a single bit.
pub fn bit_output(b: bool) -> Action {
    Action::Output(Bits::bit(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nlb_examples() {
        assert_eq!(nlb_evaluate(true, true, false), (false, true));
        assert_eq!(nlb_evaluate(false, true, true), (true, true));
        assert_eq!(nlb_evaluate(true, true, true), (true, false));
    }

    #[test]
    fn nlb_xor_is_and_with_uniform_marginals() {
        for a in [false, true] {
            for b in [false, true] {
                let mut port0 = [0; 2];
                let mut port1 = [0; 2];
                for r in [false, true] {
                    let (z0, z1) = nlb_evaluate(a, b, r);
                    assert_eq!(z0 ^ z1, a & b);
                    port0[z0 as usize] += 1;
                    port1[z1 as usize] += 1;
                }
                assert_eq!(port0, [1, 1]);
                assert_eq!(port1, [1, 1]);
            }
        }
    }

    #[test]
    fn builder_rejects_self_loop_nlb() {
        let mut b = Strategy::builder("bad", vec![PartySignature::bit_to_bit(); 2]);
        b.nlb(1, 1);
        b.program(0, |_: &LocalView<'_>| bit_output(false));
        b.program(1, |_: &LocalView<'_>| bit_output(false));
        assert!(matches!(b.build(), Err(Error::InvalidStrategy(_))));
    }

    #[test]
    fn builder_requires_every_program() {
        let mut b = Strategy::builder("bad", vec![PartySignature::bit_to_bit(); 2]);
        b.program(0, |_: &LocalView<'_>| bit_output(false));
        assert!(b.build().is_err());
    }
}
