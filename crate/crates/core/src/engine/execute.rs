use super::{nlb_evaluate, ChannelId, ChannelSend, NlbFiring, NlbId, Seed, Strategy, Transcript};
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::limits::Limits;

/// What one party may look at during a round.
#[derive(Debug)]
pub struct LocalView<'a> {
    round: usize,
    party: usize,
    input: u64,
    shared: u64,
    nlb_outputs: &'a [Option<bool>],
    received: &'a [Option<bool>],
}

impl<'a> LocalView<'a> {
    pub fn round(&self) -> usize {
        self.round
    }

    pub fn party(&self) -> usize {
        self.party
    }

    pub fn input(&self) -> u64 {
        self.input
    }

    /// Input interpreted as a single bit.
    pub fn input_bit(&self) -> bool {
        self.input & 1 == 1
    }

    pub fn shared(&self) -> u64 {
        self.shared
    }

    /// Output delivered at this party's port of `nlb`, if it has fired.
    pub fn nlb_output(&self, nlb: NlbId) -> Option<bool> {
        self.nlb_outputs.get(nlb.0).copied().flatten()
    }

    /// Bit received on `channel`, if this party is its receiver and it has
    /// been delivered.
    pub fn received(&self, channel: ChannelId) -> Option<bool> {
        self.received.get(channel.0).copied().flatten()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Action {
    /// Resource requests for this round.
    Continue {
        nlb_inputs: Vec<(NlbId, bool)>,
        sends: Vec<(ChannelId, bool)>,
    },
    /// Final output; the party takes no further part.
    Output(Bits),
}

impl Action {
    pub fn idle() -> Self {
        Action::Continue {
            nlb_inputs: Vec::new(),
            sends: Vec::new(),
        }
    }

    pub fn submit(nlb_inputs: Vec<(NlbId, bool)>) -> Self {
        Action::Continue {
            nlb_inputs,
            sends: Vec::new(),
        }
    }

    pub fn send(sends: Vec<(ChannelId, bool)>) -> Self {
        Action::Continue {
            nlb_inputs: Vec::new(),
            sends,
        }
    }
}

/// Runs `strategy` on `input` with randomness `seed` under default limits.
pub fn execute(strategy: &Strategy, input: &[u64], seed: &Seed) -> Result<(Vec<Bits>, Transcript)> {
    execute_with_limit(strategy, input, seed, Limits::default().max_rounds)
}

pub fn execute_with_limit(
    strategy: &Strategy,
    input: &[u64],
    seed: &Seed,
    max_rounds: usize,
) -> Result<(Vec<Bits>, Transcript)> {
    let n = strategy.parties();
    if input.len() != n {
        return Err(Error::InputArity {
            expected: n,
            got: input.len(),
        });
    }
    for (party, (&symbol, sig)) in input.iter().zip(strategy.signature()).enumerate() {
        if symbol >= sig.inputs {
            return Err(Error::InputOutOfRange {
                party,
                symbol,
                alphabet: sig.inputs,
            });
        }
    }
    if !strategy.seed_space().contains(seed) {
        return Err(Error::SeedMismatch(format!(
            "{} NLB bits / shared {} against {} NLBs / domain {}",
            seed.nlb_bits.len(),
            seed.shared,
            strategy.nlbs().len(),
            strategy.shared().size
        )));
    }

    let nlbs = strategy.nlbs();
    let channels = strategy.channels();
    let mut nlb_outputs = vec![vec![None; nlbs.len()]; n];
    let mut received = vec![vec![None; channels.len()]; n];
    let mut pending: Vec<[Option<bool>; 2]> = vec![[None; 2]; nlbs.len()];
    let mut fired = vec![false; nlbs.len()];
    let mut channel_used = vec![false; channels.len()];
    let mut outputs: Vec<Option<Bits>> = vec![None; n];
    let mut firings = Vec::new();
    let mut sends = Vec::new();

    let mut round = 0;
    while outputs.iter().any(Option::is_none) {
        if round >= max_rounds {
            return Err(Error::RoundLimit(max_rounds));
        }
        let mut progress = false;
        let mut deliveries = Vec::new();

        for party in 0..n {
            if outputs[party].is_some() {
                continue;
            }
            let view = LocalView {
                round,
                party,
                input: input[party],
                shared: seed.shared,
                nlb_outputs: &nlb_outputs[party],
                received: &received[party],
            };
            match strategy.program(party).step(&view) {
                Action::Output(bits) => {
                    let expected = strategy.signature()[party].output_len;
                    if bits.len() != expected {
                        return Err(Error::OutputArity {
                            party,
                            expected,
                            got: bits.len(),
                        });
                    }
                    outputs[party] = Some(bits);
                    progress = true;
                }
                Action::Continue {
                    nlb_inputs,
                    sends: to_send,
                } => {
                    for (nlb, bit) in nlb_inputs {
                        let inst = nlbs.get(nlb.0).ok_or(Error::UndeclaredNlb { party, nlb })?;
                        let port = inst.port_of(party).ok_or(Error::NotPortOwner { party, nlb })?;
                        if fired[nlb.0] || pending[nlb.0][port].is_some() {
                            return Err(Error::NlbReused { nlb });
                        }
                        pending[nlb.0][port] = Some(bit);
                        progress = true;
                    }
                    for (channel, bit) in to_send {
                        let ch = channels
                            .get(channel.0)
                            .ok_or(Error::UndeclaredChannel { party, channel })?;
                        if ch.from != party {
                            return Err(Error::NotChannelSender { party, channel });
                        }
                        if channel_used[channel.0] {
                            return Err(Error::ChannelReused { channel });
                        }
                        channel_used[channel.0] = true;
                        deliveries.push(ChannelSend {
                            round,
                            channel,
                            from: ch.from,
                            to: ch.to,
                            bit,
                        });
                        progress = true;
                    }
                }
            }
        }

        for inst in nlbs {
            let id = inst.id.0;
            if let [Some(a), Some(b)] = pending[id] {
                if !fired[id] {
                    let (z0, z1) = nlb_evaluate(a, b, seed.nlb_bits[id]);
                    nlb_outputs[inst.ports[0]][id] = Some(z0);
                    nlb_outputs[inst.ports[1]][id] = Some(z1);
                    fired[id] = true;
                    firings.push(NlbFiring {
                        round,
                        nlb: inst.id,
                        parties: inst.ports,
                        inputs: [a, b],
                        outputs: [z0, z1],
                    });
                }
            }
        }
        deliveries.sort_by_key(|s| s.channel);
        for s in deliveries {
            received[s.to][s.channel.0] = Some(s.bit);
            sends.push(s);
        }

        if !progress {
            return Err(Error::Deadlock {
                round,
                detail: stall_detail(&pending, &fired, &outputs),
            });
        }
        round += 1;
    }

    if let Some(id) = (0..nlbs.len()).find(|&i| !fired[i] && pending[i].iter().any(Option::is_some)) {
        return Err(Error::Deadlock {
            round,
            detail: format!("NLB #{id} was supplied on one port only"),
        });
    }

    let outputs: Vec<Bits> = outputs
        .into_iter()
        .map(|o| o.expect("loop ends with all outputs"))
        .collect();
    let transcript = Transcript {
        rounds: round,
        nlb_firings: firings,
        channel_sends: sends,
        outputs: outputs.clone(),
    };
    Ok((outputs, transcript))
}

fn stall_detail(pending: &[[Option<bool>; 2]], fired: &[bool], outputs: &[Option<Bits>]) -> String {
    let waiting: Vec<usize> = (0..outputs.len()).filter(|&p| outputs[p].is_none()).collect();
    match (0..pending.len()).find(|&i| !fired[i] && pending[i].iter().any(Option::is_some)) {
        Some(id) => format!("NLB #{id} half-supplied, parties {waiting:?} made no progress"),
        None => format!("parties {waiting:?} made no progress"),
    }
}
