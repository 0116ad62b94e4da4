//! Constructors for every protocol in the registry.

mod bmaj;
mod chsh;
mod dj;
mod magic_square;
mod mermin;

use std::fmt;
use std::str::FromStr;

use crate::engine::Strategy;
use crate::error::{Error, Result};
use crate::games::Game;

pub use bmaj::{bmaj_and_count, bmaj_formula, bmaj_nlb, bmaj_nlb_count, bmaj_nlb_with_limit, DEFAULT_MAX_BMAJ};
pub use chsh::{chsh_nlb, nlb_via_comm, nlb_via_comm_eval};
pub use dj::{dj_nlb, dj_nlb_count, dj_round_strings, dj_rounds};
pub use magic_square::{
    default_quadruple, enumerate_comm_pairs, enumerate_quadruples, magic_square_comm, magic_square_comm_sim,
    magic_square_nlb, magic_square_nlb_sim, off_corner_pairs, pair_wins, reference_pair0, reference_pair1,
    wins_off_corner, CommPair, MagicSquareMatrix, MagicSquareQuadruple,
};
pub use mermin::{mermin_comm, mermin_comm_sim, mermin_nlb, mermin_nlb_sim, multi_mermin_pairwise};

/// Registry identifier of a built-in strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StrategyId {
    ChshNlb,
    MsComm,
    MsCommSim,
    MsNlb,
    MsNlbSim,
    MerminComm,
    MerminCommSim,
    MerminNlb,
    MerminNlbSim,
    MultiMerminNlb(usize),
    DjNlb(usize),
    BmajNlb(usize),
    NlbViaComm,
}

impl StrategyId {
    /// Registry patterns with a one-line description, in listing order.
    pub const REGISTRY: [(&'static str, &'static str); 13] = [
        ("chsh-nlb", "CHSH with one NLB"),
        ("ms-comm", "magic square with one bit from Alice to Bob"),
        ("ms-comm-sim", "ms-comm with a uniformly random valid strategy pair"),
        ("ms-nlb", "magic square with one NLB"),
        ("ms-nlb-sim", "ms-nlb with a uniformly random quadruple"),
        ("mermin-comm", "Mermin-GHZ with one bit from Bob to Alice"),
        ("mermin-comm-sim", "mermin-comm with uniform shared output bits"),
        ("mermin-nlb", "Mermin-GHZ with one NLB between Alice and Bob"),
        ("mermin-nlb-sim", "mermin-nlb with a shared flip bit"),
        ("multi-mermin-nlb:<n>", "n-party Mermin-GHZ with one NLB per pair"),
        ("dj-nlb:<n>", "distributed Deutsch-Jozsa by halving rounds"),
        ("bmaj-nlb:<n>", "biased majority by distributed formula evaluation"),
        ("nlb-via-comm", "one NLB from a shared bit and one bit of communication"),
    ];

    /// All fixed-arity ids plus the parameterized ones at `n`.
    pub fn examples(n: usize) -> Vec<StrategyId> {
        use StrategyId::*;
        vec![
            ChshNlb,
            MsComm,
            MsCommSim,
            MsNlb,
            MsNlbSim,
            MerminComm,
            MerminCommSim,
            MerminNlb,
            MerminNlbSim,
            MultiMerminNlb(n),
            DjNlb(n),
            BmajNlb(n),
            NlbViaComm,
        ]
    }

    pub fn build(&self) -> Result<Strategy> {
        use StrategyId::*;
        Ok(match *self {
            ChshNlb => chsh_nlb(),
            MsComm => magic_square_comm(reference_pair0(), reference_pair1())?,
            MsCommSim => magic_square_comm_sim(),
            MsNlb => magic_square_nlb(default_quadruple())?,
            MsNlbSim => magic_square_nlb_sim(),
            MerminComm => mermin_comm(),
            MerminCommSim => mermin_comm_sim(),
            MerminNlb => mermin_nlb(),
            MerminNlbSim => mermin_nlb_sim(),
            MultiMerminNlb(n) => multi_mermin_pairwise(n)?,
            DjNlb(n) => dj_nlb(n)?,
            BmajNlb(n) => bmaj_nlb(n)?,
            NlbViaComm => nlb_via_comm(),
        })
    }

    /// The game the strategy was built for.
    pub fn native_game(&self) -> Game {
        use StrategyId::*;
        match *self {
            ChshNlb | NlbViaComm => Game::Chsh,
            MsComm | MsCommSim | MsNlb | MsNlbSim => Game::MagicSquare,
            MerminComm | MerminCommSim | MerminNlb | MerminNlbSim => Game::Mermin,
            MultiMerminNlb(n) => Game::MultiMermin(n),
            DjNlb(n) => Game::DeutschJozsa(n),
            BmajNlb(n) => Game::Bmaj(n),
        }
    }

    /// Whether the strategy is claimed to win its native game with
    /// certainty. `nlb-via-comm` only reproduces a box.
    pub fn is_winning_construction(&self) -> bool {
        !matches!(self, StrategyId::NlbViaComm)
    }
}

impl fmt::Display for StrategyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use StrategyId::*;
        match *self {
            ChshNlb => write!(f, "chsh-nlb"),
            MsComm => write!(f, "ms-comm"),
            MsCommSim => write!(f, "ms-comm-sim"),
            MsNlb => write!(f, "ms-nlb"),
            MsNlbSim => write!(f, "ms-nlb-sim"),
            MerminComm => write!(f, "mermin-comm"),
            MerminCommSim => write!(f, "mermin-comm-sim"),
            MerminNlb => write!(f, "mermin-nlb"),
            MerminNlbSim => write!(f, "mermin-nlb-sim"),
            MultiMerminNlb(n) => write!(f, "multi-mermin-nlb:{n}"),
            DjNlb(n) => write!(f, "dj-nlb:{n}"),
            BmajNlb(n) => write!(f, "bmaj-nlb:{n}"),
            NlbViaComm => write!(f, "nlb-via-comm"),
        }
    }
}

impl FromStr for StrategyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use StrategyId::*;
        let unknown = || Error::UnknownStrategy(s.to_owned());
        if let Some((head, arg)) = s.split_once(':') {
            let n: usize = arg.parse().map_err(|_| unknown())?;
            return match head {
                "multi-mermin-nlb" => Game::multi_mermin(n).map(|_| MultiMerminNlb(n)),
                "dj-nlb" => Game::deutsch_jozsa(n).map(|_| DjNlb(n)),
                "bmaj-nlb" => Game::bmaj(n).map(|_| BmajNlb(n)),
                _ => Err(unknown()),
            };
        }
        Ok(match s {
            "chsh-nlb" => ChshNlb,
            "ms-comm" => MsComm,
            "ms-comm-sim" => MsCommSim,
            "ms-nlb" => MsNlb,
            "ms-nlb-sim" => MsNlbSim,
            "mermin-comm" => MerminComm,
            "mermin-comm-sim" => MerminCommSim,
            "mermin-nlb" => MerminNlb,
            "mermin-nlb-sim" => MerminNlbSim,
            "nlb-via-comm" => NlbViaComm,
            _ => return Err(unknown()),
        })
    }
}

/// Checks that `strategy` has the party count, input alphabets and output
/// lengths `game` expects.
pub fn check_compatible(strategy: &Strategy, game: &Game) -> Result<()> {
    let want = game.signature();
    let got = strategy.signature();
    let mismatch = |detail: String| Error::ArityMismatch {
        game: game.to_string(),
        strategy: strategy.name().to_owned(),
        detail,
    };
    if want.len() != got.len() {
        return Err(mismatch(format!("{} parties vs {}", got.len(), want.len())));
    }
    for (p, (w, g)) in want.iter().zip(got).enumerate() {
        if w != g {
            return Err(mismatch(format!(
                "party {p} takes {} symbols and outputs {} bits, game needs {} and {}",
                g.inputs, g.output_len, w.inputs, w.output_len
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_round_trips() {
        for id in StrategyId::examples(4) {
            let text = id.to_string();
            assert_eq!(text.parse::<StrategyId>().unwrap(), id);
            let s = id.build().unwrap();
            assert_eq!(s.name(), text);
            check_compatible(&s, &id.native_game()).unwrap();
        }
        assert_eq!(StrategyId::REGISTRY.len(), StrategyId::examples(3).len());
    }

    #[test]
    fn rejects_unknown_and_bad_parameters() {
        assert!(matches!("ms-foo".parse::<StrategyId>(), Err(Error::UnknownStrategy(_))));
        assert!("dj-nlb:x".parse::<StrategyId>().is_err());
        assert!("multi-mermin-nlb:2".parse::<StrategyId>().is_err());
    }

    #[test]
    fn arity_mismatch() {
        let s = StrategyId::MsNlb.build().unwrap();
        assert!(matches!(
            check_compatible(&s, &Game::Chsh),
            Err(Error::ArityMismatch { .. })
        ));
    }
}
