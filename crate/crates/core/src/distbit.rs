//! XOR-shared bits across `n` parties and their NLB-assisted Boolean
//! algebra.
//!
//! A distributed bit is held as one share per party; its value is the XOR
//! of all shares. Negation flips party 0's share. The AND of two shared
//! bits expands into `n` local products `x_i & y_i` plus `n(n-1)` cross
//! products `x_i & y_j`, each cross product computed by one box between
//! parties `i` and `j`.

use crate::engine::nlb_evaluate;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DistributedBit {
    shares: Vec<bool>,
}

impl DistributedBit {
    pub fn from_shares(shares: Vec<bool>) -> Self {
        assert!(!shares.is_empty(), "a distributed bit needs at least one party");
        DistributedBit { shares }
    }

    /// Bit owned by `owner`: its share is `value`, every other share 0.
    pub fn init(owner: usize, value: bool, parties: usize) -> Self {
        assert!(owner < parties, "owner {owner} out of range for {parties} parties");
        let mut shares = vec![false; parties];
        shares[owner] = value;
        DistributedBit { shares }
    }

    pub fn shares(&self) -> &[bool] {
        &self.shares
    }

    pub fn parties(&self) -> usize {
        self.shares.len()
    }

    /// Plaintext value. Only test oracles and harness code look at this;
    /// party programs never see other parties' shares.
    pub fn reveal(&self) -> bool {
        self.shares.iter().fold(false, |acc, &s| acc ^ s)
    }

    pub fn not(&self) -> Self {
        let mut shares = self.shares.clone();
        shares[0] ^= true;
        DistributedBit { shares }
    }
}

/// Hands out free bits to boxes in order and counts firings.
#[derive(Debug)]
pub struct NlbTape<'a> {
    seeds: &'a [bool],
    fired: usize,
}

impl<'a> NlbTape<'a> {
    pub fn new(seeds: &'a [bool]) -> Self {
        NlbTape { seeds, fired: 0 }
    }

    pub fn fire(&mut self, a: bool, b: bool) -> (bool, bool) {
        let r = self.seeds[self.fired];
        self.fired += 1;
        nlb_evaluate(a, b, r)
    }

    pub fn fired(&self) -> usize {
        self.fired
    }
}

/// Ordered pairs `(i, j)`, `i != j`, in lexicographic order. Pair `k` of
/// this list is the `k`-th box of a distributed AND.
pub fn cross_pairs(parties: usize) -> Vec<(usize, usize)> {
    (0..parties)
        .flat_map(|i| (0..parties).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect()
}

/// Boxes consumed by one distributed AND.
pub fn and_cost(parties: usize) -> usize {
    parties * (parties - 1)
}

/// Distributed `f(a1, a2, b1, b2) = (a1 ^ b1) & (a2 ^ b2)` between Alice and
/// Bob with two boxes: Alice keeps `a1 & a2` and feeds `a1` then `a2` into
/// port 0 of the two boxes while Bob feeds `b2` then `b1`.
pub fn gadget_f(a1: bool, a2: bool, b1: bool, b2: bool, seeds: [bool; 2]) -> (bool, bool) {
    let (alice_2, bob_2) = nlb_evaluate(a1, b2, seeds[0]);
    let (alice_3, bob_3) = nlb_evaluate(a2, b1, seeds[1]);
    let a = (a1 & a2) ^ alice_2 ^ alice_3;
    let b = (b1 & b2) ^ bob_2 ^ bob_3;
    (a, b)
}

/// Inputs each box of a distributed AND receives: for pair `(i, j)` party
/// `i` supplies `x_i` and party `j` supplies `y_j`; the lower-numbered
/// party sits at port 0. Returns `(port0 party, port1 party, port0 input,
/// port1 input)`.
pub fn cross_box(pair: (usize, usize), x: &[bool], y: &[bool]) -> (usize, usize, bool, bool) {
    let (i, j) = pair;
    if i < j {
        (i, j, x[i], y[j])
    } else {
        (j, i, y[j], x[i])
    }
}

/// Distributed AND of `x` and `y`, consuming `n(n-1)` free bits.
pub fn dist_and(x: &DistributedBit, y: &DistributedBit, seeds: &[bool]) -> Result<DistributedBit> {
    if x.parties() != y.parties() {
        return Err(Error::InvalidParameter(format!(
            "AND of bits shared among {} and {} parties",
            x.parties(),
            y.parties()
        )));
    }
    let expected = and_cost(x.parties());
    if seeds.len() != expected {
        return Err(Error::SeedCount {
            expected,
            got: seeds.len(),
        });
    }
    Ok(and_on_tape(x, y, &mut NlbTape::new(seeds)))
}

fn and_on_tape(x: &DistributedBit, y: &DistributedBit, tape: &mut NlbTape<'_>) -> DistributedBit {
    let mut shares: Vec<bool> = x.shares.iter().zip(&y.shares).map(|(a, b)| a & b).collect();
    for pair in cross_pairs(x.parties()) {
        let (p0, p1, a, b) = cross_box(pair, &x.shares, &y.shares);
        let (z0, z1) = tape.fire(a, b);
        shares[p0] ^= z0;
        shares[p1] ^= z1;
    }
    DistributedBit { shares }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Node {
    Leaf(usize),
    Const(bool),
    Not(usize),
    And(usize, usize),
}

/// Boolean formula over NOT and binary AND, stored as an arena in which
/// every node refers only to earlier nodes. OR is rewritten with De Morgan
/// when it is added, so evaluation never sees it.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Formula {
    nodes: Vec<Node>,
}

pub type NodeId = usize;

impl Formula {
    pub fn new() -> Self {
        Formula::default()
    }

    /// Wraps raw nodes; the last node is the root.
    pub fn from_nodes(nodes: Vec<Node>) -> Result<Self> {
        let f = Formula { nodes };
        f.validate()?;
        Ok(f)
    }

    fn push(&mut self, node: Node) -> NodeId {
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    pub fn leaf(&mut self, index: usize) -> NodeId {
        self.push(Node::Leaf(index))
    }

    pub fn constant(&mut self, value: bool) -> NodeId {
        self.push(Node::Const(value))
    }

    pub fn not(&mut self, a: NodeId) -> NodeId {
        self.push(Node::Not(a))
    }

    pub fn and(&mut self, a: NodeId, b: NodeId) -> NodeId {
        self.push(Node::And(a, b))
    }

    /// `a | b` as `!(!a & !b)`.
    pub fn or(&mut self, a: NodeId, b: NodeId) -> NodeId {
        let na = self.not(a);
        let nb = self.not(b);
        let both = self.and(na, nb);
        self.not(both)
    }

    /// Left fold of [`Formula::and`].
    pub fn and_all(&mut self, items: &[NodeId]) -> NodeId {
        let (&first, rest) = items.split_first().expect("empty conjunction");
        rest.iter().fold(first, |acc, &x| self.and(acc, x))
    }

    /// Left fold of [`Formula::or`].
    pub fn or_all(&mut self, items: &[NodeId]) -> NodeId {
        let (&first, rest) = items.split_first().expect("empty disjunction");
        rest.iter().fold(first, |acc, &x| self.or(acc, x))
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn root(&self) -> Option<NodeId> {
        self.nodes.len().checked_sub(1)
    }

    pub fn and_count(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n, Node::And(..))).count()
    }

    /// One more than the largest leaf index.
    pub fn arity(&self) -> usize {
        self.nodes
            .iter()
            .filter_map(|n| match n {
                Node::Leaf(i) => Some(i + 1),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn validate(&self) -> Result<()> {
        if self.nodes.is_empty() {
            return Err(Error::MalformedFormula("no nodes".into()));
        }
        for (id, node) in self.nodes.iter().enumerate() {
            let children: &[usize] = match node {
                Node::Not(a) => &[*a],
                Node::And(a, b) => &[*a, *b],
                _ => &[],
            };
            if let Some(bad) = children.iter().find(|&&c| c >= id) {
                return Err(Error::MalformedFormula(format!("node {id} refers forward to {bad}")));
            }
        }
        Ok(())
    }

    /// Index of each AND node among the AND nodes, in arena order.
    pub fn and_index(&self) -> Vec<Option<usize>> {
        let mut next = 0;
        self.nodes
            .iter()
            .map(|n| match n {
                Node::And(..) => {
                    next += 1;
                    Some(next - 1)
                }
                _ => None,
            })
            .collect()
    }

    /// Number of sequential AND layers below each node. An AND node at
    /// depth `d` can be computed once all nodes of depth `< d` are.
    pub fn and_depth(&self) -> Vec<usize> {
        let mut depth = vec![0; self.nodes.len()];
        for (id, node) in self.nodes.iter().enumerate() {
            depth[id] = match *node {
                Node::Leaf(_) | Node::Const(_) => 0,
                Node::Not(a) => depth[a],
                Node::And(a, b) => depth[a].max(depth[b]) + 1,
            };
        }
        depth
    }
}

/// Evaluates `formula` on distributed leaves. Boxes are used in AND-node
/// order, `n(n-1)` per node, so `seeds.len()` must equal
/// `n(n-1) * formula.and_count()`. Returns the result and the number of
/// boxes fired.
pub fn dist_eval(formula: &Formula, leaves: &[DistributedBit], seeds: &[bool]) -> Result<(DistributedBit, usize)> {
    formula.validate()?;
    if leaves.len() < formula.arity() {
        return Err(Error::InvalidParameter(format!(
            "formula reads {} leaves, {} supplied",
            formula.arity(),
            leaves.len()
        )));
    }
    let parties = match leaves.first() {
        Some(l) => l.parties(),
        None => {
            return Err(Error::InvalidParameter("no leaves supplied".into()));
        }
    };
    if leaves.iter().any(|l| l.parties() != parties) {
        return Err(Error::InvalidParameter(
            "leaves shared among different party counts".into(),
        ));
    }
    let expected = and_cost(parties) * formula.and_count();
    if seeds.len() != expected {
        return Err(Error::SeedCount {
            expected,
            got: seeds.len(),
        });
    }

    let mut tape = NlbTape::new(seeds);
    let mut values: Vec<DistributedBit> = Vec::with_capacity(formula.nodes.len());
    for node in &formula.nodes {
        let v = match *node {
            Node::Leaf(i) => leaves[i].clone(),
            Node::Const(b) => DistributedBit::init(0, b, parties),
            Node::Not(a) => values[a].not(),
            Node::And(a, b) => and_on_tape(&values[a], &values[b], &mut tape),
        };
        values.push(v);
    }
    let root = values.pop().expect("validated non-empty");
    Ok((root, tape.fired()))
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    #[test]
    fn init_examples() {
        assert_eq!(DistributedBit::init(0, true, 3).shares(), &[true, false, false]);
        assert_eq!(DistributedBit::init(2, false, 3).shares(), &[false, false, false]);
        assert_eq!(DistributedBit::init(1, true, 2).shares(), &[false, true]);
    }

    #[test]
    fn not_examples() {
        let x = DistributedBit::from_shares(vec![true, false, false]);
        assert_eq!(x.not().shares(), &[false, false, false]);
        let y = DistributedBit::from_shares(vec![false, false]);
        assert_eq!(y.not().shares(), &[true, false]);
        assert_eq!(x.not().not(), x);
    }

    #[test]
    fn gadget_examples() {
        // A1 = 1, NLB(1, 0) and NLB(1, 0) with r = 0 give Alice 0, 0 and
        // Bob 0, 0.
        assert_eq!(gadget_f(true, true, false, false, [false, false]), (true, false));
        for seeds in [[false, false], [false, true], [true, false], [true, true]] {
            let (a, b) = gadget_f(false, false, false, false, seeds);
            assert!(!(a ^ b));
        }
        let (a, b) = gadget_f(true, false, false, false, [true, true]);
        assert!(!(a ^ b));
    }

    #[test]
    fn gadget_contract_exhaustive() {
        for v in 0u8..16 {
            let [a1, a2, b1, b2] = [0, 1, 2, 3].map(|i| (v >> i) & 1 == 1);
            for s in 0u8..4 {
                let seeds = [s & 1 == 1, s & 2 == 2];
                let (a, b) = gadget_f(a1, a2, b1, b2, seeds);
                assert_eq!(a ^ b, (a1 ^ b1) & (a2 ^ b2));
                let via_and = dist_and(
                    &DistributedBit::from_shares(vec![a1, b1]),
                    &DistributedBit::from_shares(vec![a2, b2]),
                    &seeds,
                )
                .unwrap();
                assert_eq!(via_and.shares(), &[a, b]);
            }
        }
    }

    #[test]
    fn and_examples() {
        let one = DistributedBit::from_shares(vec![true, false]);
        let also_one = DistributedBit::from_shares(vec![false, true]);
        for s in 0u8..4 {
            let seeds = [s & 1 == 1, s & 2 == 2];
            assert!(dist_and(&one, &also_one, &seeds).unwrap().reveal());
        }
        let zero = DistributedBit::from_shares(vec![true, true, false]);
        let any = DistributedBit::from_shares(vec![true, false, false]);
        assert!(!dist_and(&zero, &any, &[true; 6]).unwrap().reveal());
    }

    #[test]
    fn and_rejects_wrong_seed_count() {
        let x = DistributedBit::init(0, true, 3);
        assert_eq!(
            dist_and(&x, &x, &[false; 5]),
            Err(Error::SeedCount { expected: 6, got: 5 })
        );
    }

    #[test]
    fn and_fires_n_times_n_minus_one() {
        let mut f = Formula::new();
        let a = f.leaf(0);
        let b = f.leaf(1);
        f.and(a, b);
        let leaves = [DistributedBit::init(0, true, 4), DistributedBit::init(1, true, 4)];
        let (out, fired) = dist_eval(&f, &leaves, &[false; 12]).unwrap();
        assert_eq!(fired, 12);
        assert!(out.reveal());
    }

    #[test]
    fn eval_examples() {
        let mut f = Formula::new();
        let a = f.leaf(0);
        let b = f.leaf(1);
        let ab = f.and(a, b);
        f.not(ab);
        let leaves = [DistributedBit::init(0, true, 2), DistributedBit::init(1, true, 2)];
        let (out, fired) = dist_eval(&f, &leaves, &[true, false]).unwrap();
        assert!(!out.reveal());
        assert_eq!(fired, 2);

        let mut id = Formula::new();
        id.leaf(0);
        let (out, fired) = dist_eval(&id, &leaves, &[]).unwrap();
        assert_eq!(out, leaves[0]);
        assert_eq!(fired, 0);
    }

    #[test]
    fn malformed_formula_is_rejected() {
        assert!(matches!(
            Formula::from_nodes(vec![Node::Leaf(0), Node::And(0, 2), Node::Leaf(1)]),
            Err(Error::MalformedFormula(_))
        ));
        assert!(Formula::from_nodes(vec![]).is_err());
        let f = Formula::from_nodes(vec![Node::Leaf(3)]).unwrap();
        assert!(dist_eval(&f, &[DistributedBit::init(0, true, 2)], &[]).is_err());
    }

    #[test]
    fn or_costs_one_and() {
        let mut f = Formula::new();
        let a = f.leaf(0);
        let b = f.leaf(1);
        f.or(a, b);
        assert_eq!(f.and_count(), 1);
        for (x, y) in [(false, false), (false, true), (true, false), (true, true)] {
            let leaves = [DistributedBit::init(0, x, 3), DistributedBit::init(2, y, 3)];
            let (out, _) = dist_eval(&f, &leaves, &[true; 6]).unwrap();
            assert_eq!(out.reveal(), x | y);
        }
    }

    /// Exhaustive share invariant for n = 2, 3 on every formula with at most
    /// two AND nodes over two leaves, built from a small grammar.
    #[test]
    fn share_invariant_exhaustive_small() {
        type Plain = fn(bool, bool) -> bool;
        type Shape = (fn(&mut Formula), Plain);
        let shapes: Vec<Shape> = vec![
            (
                |f| {
                    let a = f.leaf(0);
                    let b = f.leaf(1);
                    f.and(a, b);
                },
                |x, y| x & y,
            ),
            (
                |f| {
                    let a = f.leaf(0);
                    let b = f.leaf(1);
                    let na = f.not(a);
                    f.and(na, b);
                },
                |x, y| !x & y,
            ),
            (
                |f| {
                    let a = f.leaf(0);
                    let b = f.leaf(1);
                    f.or(a, b);
                },
                |x, y| x | y,
            ),
            (
                |f| {
                    let a = f.leaf(0);
                    let b = f.leaf(1);
                    let ab = f.and(a, b);
                    f.and(ab, a);
                },
                |x, y| x & y,
            ),
            (
                |f| {
                    let a = f.leaf(0);
                    let b = f.leaf(1);
                    let o = f.or(a, b);
                    let nb = f.not(b);
                    f.and(o, nb);
                },
                |x, y| x & !y,
            ),
        ];
        for n in [2usize, 3] {
            for (build, plain) in &shapes {
                let mut f = Formula::new();
                build(&mut f);
                let seed_len = and_cost(n) * f.and_count();
                for xs in 0u32..1 << n {
                    for ys in 0u32..1 << n {
                        let x = DistributedBit::from_shares((0..n).map(|i| xs >> i & 1 == 1).collect());
                        let y = DistributedBit::from_shares((0..n).map(|i| ys >> i & 1 == 1).collect());
                        for s in 0u32..1 << seed_len {
                            let seeds: Vec<bool> = (0..seed_len).map(|i| s >> i & 1 == 1).collect();
                            let (out, fired) = dist_eval(&f, &[x.clone(), y.clone()], &seeds).unwrap();
                            assert_eq!(out.reveal(), plain(x.reveal(), y.reveal()));
                            assert_eq!(fired, seed_len);
                        }
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn and_share_invariant(
            n in 2usize..=6,
            xs in proptest::collection::vec(any::<bool>(), 6),
            ys in proptest::collection::vec(any::<bool>(), 6),
            seeds in proptest::collection::vec(any::<bool>(), 30),
        ) {
            let x = DistributedBit::from_shares(xs[..n].to_vec());
            let y = DistributedBit::from_shares(ys[..n].to_vec());
            let z = dist_and(&x, &y, &seeds[..and_cost(n)]).unwrap();
            prop_assert_eq!(z.reveal(), x.reveal() & y.reveal());
            prop_assert_eq!(x.not().reveal(), !x.reveal());
        }

        #[test]
        fn plaintext_is_seed_independent(
            n in 2usize..=5,
            xs in proptest::collection::vec(any::<bool>(), 5),
            ys in proptest::collection::vec(any::<bool>(), 5),
            seed_pairs in proptest::collection::vec(proptest::collection::vec(any::<bool>(), 20), 16),
        ) {
            let x = DistributedBit::from_shares(xs[..n].to_vec());
            let y = DistributedBit::from_shares(ys[..n].to_vec());
            let expected = x.reveal() & y.reveal();
            for seeds in &seed_pairs {
                let z = dist_and(&x, &y, &seeds[..and_cost(n)]).unwrap();
                prop_assert_eq!(z.reveal(), expected);
            }
        }
    }
}
