//! Magic-square strategies.
//!
//! A deterministic player strategy is a 3x3 bit matrix: Alice answers with
//! row `x_A`, Bob with column `x_B`. Alice's rows must have even parity and
//! Bob's columns odd parity, so no single matrix serves both, and every
//! classical pair fails somewhere. The strategies here patch the failing
//! corner cell `(3,3)` with either one bit of communication or one NLB.

use std::fmt;
use std::sync::Arc;

use crate::bits::Bits;
use crate::engine::{Action, LocalView, Strategy};
use crate::error::{Error, Result};
use crate::games::Game;

/// 0-based index of the corner row/column.
const CORNER: usize = 2;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MagicSquareMatrix {
    cells: [[bool; 3]; 3],
}

impl MagicSquareMatrix {
    pub fn new(cells: [[bool; 3]; 3]) -> Self {
        MagicSquareMatrix { cells }
    }

    /// Parses rows written as `"011"` strings.
    pub fn from_rows(rows: [&str; 3]) -> Result<Self> {
        let mut cells = [[false; 3]; 3];
        for (r, text) in rows.iter().enumerate() {
            let bits: Bits = text.parse()?;
            if bits.len() != 3 {
                return Err(Error::Parse(format!("row {text:?} is not 3 bits")));
            }
            for (c, cell) in cells[r].iter_mut().enumerate() {
                *cell = bits.get(c);
            }
        }
        Ok(MagicSquareMatrix { cells })
    }

    /// Matrix whose 9 cells are the low 9 bits of `v`, row-major.
    fn from_index(v: u16) -> Self {
        let mut cells = [[false; 3]; 3];
        for (i, cell) in cells.iter_mut().flatten().enumerate() {
            *cell = (v >> i) & 1 == 1;
        }
        MagicSquareMatrix { cells }
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.cells[row][col]
    }

    pub fn cells(&self) -> [[bool; 3]; 3] {
        self.cells
    }

    pub fn row(&self, r: usize) -> Bits {
        Bits::from_bools(&self.cells[r])
    }

    pub fn col(&self, c: usize) -> Bits {
        Bits::from_bools(&[self.cells[0][c], self.cells[1][c], self.cells[2][c]])
    }

    /// Every row has even parity.
    pub fn is_alice_valid(&self) -> bool {
        (0..3).all(|r| !self.row(r).parity())
    }

    /// Every column has odd parity.
    pub fn is_bob_valid(&self) -> bool {
        (0..3).all(|c| self.col(c).parity())
    }

    /// The 64 matrices with even rows.
    pub fn all_alice() -> Vec<Self> {
        (0u16..512).map(Self::from_index).filter(Self::is_alice_valid).collect()
    }

    /// The 64 matrices with odd columns.
    pub fn all_bob() -> Vec<Self> {
        (0u16..512).map(Self::from_index).filter(Self::is_bob_valid).collect()
    }
}

impl fmt::Debug for MagicSquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {} {}]", self.row(0), self.row(1), self.row(2))
    }
}

impl fmt::Display for MagicSquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..3 {
            writeln!(f, "{}", self.row(r))?;
        }
        Ok(())
    }
}

/// Whether Alice playing `a` and Bob playing `b` win on `(row, col)`.
pub fn pair_wins(a: &MagicSquareMatrix, b: &MagicSquareMatrix, row: usize, col: usize) -> bool {
    Game::MagicSquare.relation_holds(&[row as u64, col as u64], &[a.row(row), b.col(col)])
}

/// Wins on all eight inputs other than the corner `(3,3)`.
pub fn wins_off_corner(a: &MagicSquareMatrix, b: &MagicSquareMatrix) -> bool {
    (0..3)
        .flat_map(|r| (0..3).map(move |c| (r, c)))
        .filter(|&rc| rc != (CORNER, CORNER))
        .all(|(r, c)| pair_wins(a, b, r, c))
}

/// First reference strategy pair: Alice (a), Bob (b).
pub fn reference_pair0() -> (MagicSquareMatrix, MagicSquareMatrix) {
    (
        MagicSquareMatrix::from_rows(["011", "110", "011"]).unwrap(),
        MagicSquareMatrix::from_rows(["011", "110", "010"]).unwrap(),
    )
}

/// Second reference strategy pair: Alice (c), Bob (d).
pub fn reference_pair1() -> (MagicSquareMatrix, MagicSquareMatrix) {
    (
        MagicSquareMatrix::from_rows(["011", "110", "011"]).unwrap(),
        MagicSquareMatrix::from_rows(["011", "111", "011"]).unwrap(),
    )
}

/// Two strategy pairs whose corner answers are cross-coordinated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MagicSquareQuadruple {
    pub a0: MagicSquareMatrix,
    pub a1: MagicSquareMatrix,
    pub b0: MagicSquareMatrix,
    pub b1: MagicSquareMatrix,
}

impl MagicSquareQuadruple {
    pub fn is_valid(&self) -> bool {
        let valid = [self.a0, self.a1].iter().all(MagicSquareMatrix::is_alice_valid)
            && [self.b0, self.b1].iter().all(MagicSquareMatrix::is_bob_valid);
        valid
            && wins_off_corner(&self.a0, &self.b0)
            && wins_off_corner(&self.a1, &self.b1)
            && self.a0.get(CORNER, CORNER) == self.b1.get(CORNER, CORNER)
            && self.a1.get(CORNER, CORNER) == self.b0.get(CORNER, CORNER)
    }

    pub fn alice(&self, z: bool) -> &MagicSquareMatrix {
        if z {
            &self.a1
        } else {
            &self.a0
        }
    }

    pub fn bob(&self, z: bool) -> &MagicSquareMatrix {
        if z {
            &self.b1
        } else {
            &self.b0
        }
    }
}

/// All (Alice, Bob) pairs that win everywhere except the corner.
pub fn off_corner_pairs() -> Vec<(MagicSquareMatrix, MagicSquareMatrix)> {
    let bobs = MagicSquareMatrix::all_bob();
    MagicSquareMatrix::all_alice()
        .into_iter()
        .flat_map(|a| {
            bobs.iter()
                .filter(move |b| wins_off_corner(&a, b))
                .map(move |&b| (a, b))
        })
        .collect()
}

/// Every valid quadruple, ordered by `(A0, B0)` pair then `(A1, B1)` pair.
pub fn enumerate_quadruples() -> Vec<MagicSquareQuadruple> {
    let pairs = off_corner_pairs();
    let mut out = Vec::new();
    for &(a0, b0) in &pairs {
        for &(a1, b1) in &pairs {
            let q = MagicSquareQuadruple { a0, a1, b0, b1 };
            if q.is_valid() {
                out.push(q);
            }
        }
    }
    out
}

/// The quadruple used by `ms-nlb`: the first one extending reference pair 0
/// as `(A0, B0)`.
pub fn default_quadruple() -> MagicSquareQuadruple {
    let (a, b) = reference_pair0();
    enumerate_quadruples()
        .into_iter()
        .find(|q| q.a0 == a && q.b0 == b)
        .expect("reference pair 0 extends to a quadruple")
}

/// A communication strategy: Alice's matrix and Bob's two matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CommPair {
    pub alice: MagicSquareMatrix,
    pub bob0: MagicSquareMatrix,
    pub bob1: MagicSquareMatrix,
}

impl CommPair {
    /// Checks that `(alice, bob0)` wins off the corner and `(alice, bob1)`
    /// wins every input with `x_A = 3` (Bob switches whenever Alice's input
    /// is 3, whatever his own).
    pub fn check(&self) -> Result<()> {
        if !self.alice.is_alice_valid() || !self.bob0.is_bob_valid() || !self.bob1.is_bob_valid() {
            return Err(Error::InvalidStrategy("matrix violates row/column parity".into()));
        }
        if !wins_off_corner(&self.alice, &self.bob0) {
            return Err(Error::InvalidStrategy("strategy 0 loses off the corner".into()));
        }
        if !(0..3).all(|c| pair_wins(&self.alice, &self.bob1, CORNER, c)) {
            return Err(Error::InvalidStrategy("strategy 1 loses on a row-3 input".into()));
        }
        Ok(())
    }
}

/// All communication pairs satisfying [`CommPair::check`].
pub fn enumerate_comm_pairs() -> Vec<CommPair> {
    let bobs = MagicSquareMatrix::all_bob();
    let mut out = Vec::new();
    for (alice, bob0) in off_corner_pairs() {
        for &bob1 in &bobs {
            let p = CommPair { alice, bob0, bob1 };
            if p.check().is_ok() {
                out.push(p);
            }
        }
    }
    out
}

/// One bit from Alice telling Bob whether `x_A = 3`. `s0` and `s1` must
/// share Alice's matrix.
pub fn magic_square_comm(
    s0: (MagicSquareMatrix, MagicSquareMatrix),
    s1: (MagicSquareMatrix, MagicSquareMatrix),
) -> Result<Strategy> {
    if s0.0 != s1.0 {
        return Err(Error::InvalidStrategy(
            "strategies 0 and 1 must give Alice the same matrix".into(),
        ));
    }
    let pair = CommPair {
        alice: s0.0,
        bob0: s0.1,
        bob1: s1.1,
    };
    pair.check()?;
    comm_strategy("ms-comm", vec![pair])
}

/// [`magic_square_comm`] with the pair drawn uniformly from every valid one.
pub fn magic_square_comm_sim() -> Strategy {
    comm_strategy("ms-comm-sim", enumerate_comm_pairs()).expect("valid construction")
}

fn comm_strategy(name: &str, pairs: Vec<CommPair>) -> Result<Strategy> {
    let pairs = Arc::new(pairs);
    let mut b = Strategy::builder(name, Game::MagicSquare.signature());
    let tell = b.channel(0, 1);
    b.shared(pairs.len() as u64, "magic-square communication pairs");

    let ps = Arc::clone(&pairs);
    b.program(0, move |v: &LocalView<'_>| {
        if v.round() == 0 {
            Action::send(vec![(tell, v.input() as usize == CORNER)])
        } else {
            Action::Output(ps[v.shared() as usize].alice.row(v.input() as usize))
        }
    });
    let ps = pairs;
    b.program(1, move |v: &LocalView<'_>| match v.received(tell) {
        None => Action::idle(),
        Some(alice_at_corner) => {
            let p = &ps[v.shared() as usize];
            let m = if alice_at_corner { p.bob1 } else { p.bob0 };
            Action::Output(m.col(v.input() as usize))
        }
    });
    b.build()
}

/// Both players feed `[x = 3]` into one NLB and play matrix number `z`.
pub fn magic_square_nlb(q: MagicSquareQuadruple) -> Result<Strategy> {
    if !q.is_valid() {
        return Err(Error::InvalidStrategy("invalid magic-square quadruple".into()));
    }
    nlb_strategy("ms-nlb", vec![q])
}

/// [`magic_square_nlb`] with the quadruple drawn uniformly from
/// [`enumerate_quadruples`].
pub fn magic_square_nlb_sim() -> Strategy {
    nlb_strategy("ms-nlb-sim", enumerate_quadruples()).expect("valid construction")
}

fn nlb_strategy(name: &str, quads: Vec<MagicSquareQuadruple>) -> Result<Strategy> {
    let quads = Arc::new(quads);
    let mut b = Strategy::builder(name, Game::MagicSquare.signature());
    let nlb = b.nlb(0, 1);
    b.shared(quads.len() as u64, "magic-square quadruples");
    for party in 0..2 {
        let qs = Arc::clone(&quads);
        b.program(party, move |v: &LocalView<'_>| {
            let x = v.input() as usize;
            match v.nlb_output(nlb) {
                None => Action::submit(vec![(nlb, x == CORNER)]),
                Some(z) => {
                    let q = &qs[v.shared() as usize];
                    Action::Output(if party == 0 { q.alice(z).row(x) } else { q.bob(z).col(x) })
                }
            }
        });
    }
    b.build()
}
