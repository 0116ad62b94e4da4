use serde::{Deserialize, Serialize};

use super::{ChannelId, NlbId};
use crate::bits::Bits;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NlbFiring {
    pub round: usize,
    pub nlb: NlbId,
    /// Parties at port 0 and port 1.
    pub parties: [usize; 2],
    pub inputs: [bool; 2],
    pub outputs: [bool; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChannelSend {
    pub round: usize,
    pub channel: ChannelId,
    pub from: usize,
    pub to: usize,
    pub bit: bool,
}

/// Ledger of one run. Firings are ordered by round, then by NLB id; sends
/// likewise by round, then channel id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub rounds: usize,
    pub nlb_firings: Vec<NlbFiring>,
    pub channel_sends: Vec<ChannelSend>,
    pub outputs: Vec<Bits>,
}

impl Transcript {
    pub fn nlb_uses(&self) -> usize {
        self.nlb_firings.len()
    }

    pub fn comm_bits(&self) -> usize {
        self.channel_sends.len()
    }

    pub fn firing(&self, nlb: NlbId) -> Option<&NlbFiring> {
        self.nlb_firings.iter().find(|f| f.nlb == nlb)
    }

    /// Checks every recorded firing against the box relation and that no
    /// box fired twice. Returns the first violation.
    pub fn check_nlb_relation(&self) -> Result<(), String> {
        let mut seen = std::collections::HashSet::new();
        for f in &self.nlb_firings {
            if !seen.insert(f.nlb) {
                return Err(format!("NLB {} fired twice", f.nlb));
            }
            if f.outputs[0] ^ f.outputs[1] != (f.inputs[0] & f.inputs[1]) {
                return Err(format!("NLB {} outputs violate the box relation", f.nlb));
            }
        }
        Ok(())
    }
}
