//! Graph and 2-tree value types shared by the rest of the crate.
//!
//! Vertices are dense indices `0..n`. A [`TwoTreeConstruction`] always builds
//! vertex `i` as the `(i + 1)`-th vertex: the base edge is `{0, 1}` and
//! attachment `k` introduces vertex `k + 2`.

use std::collections::VecDeque;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type VertexId = usize;

/// An undirected edge stored with its smaller endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    u: VertexId,
    v: VertexId,
}

impl Edge {
    /// Panics on a loop; use [`Edge::try_new`] for untrusted input.
    pub fn new(a: VertexId, b: VertexId) -> Edge {
        Edge::try_new(a, b).unwrap_or_else(|| panic!("loop edge {a}-{a}"))
    }

    pub fn try_new(a: VertexId, b: VertexId) -> Option<Edge> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some(Edge { u: a, v: b }),
            std::cmp::Ordering::Greater => Some(Edge { u: b, v: a }),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn u(&self) -> VertexId {
        self.u
    }

    pub fn v(&self) -> VertexId {
        self.v
    }

    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.u, self.v)
    }

    pub fn contains(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint that is not `x`, if `x` is an endpoint.
    pub fn other(&self, x: VertexId) -> Option<VertexId> {
        if x == self.u {
            Some(self.v)
        } else if x == self.v {
            Some(self.u)
        } else {
            None
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// Undirected simple graph on vertices `0..n` with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    adj: Vec<Vec<VertexId>>,
    m: usize,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> SimpleGraph {
        SimpleGraph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph, rejecting out-of-range endpoints and repeated edges.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<SimpleGraph>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut m = 0;
        for e in edges {
            if e.v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {e} has an endpoint outside 0..{n}"
                )));
            }
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
            m += 1;
        }
        for (x, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!("repeated edge at vertex {x}")));
            }
        }
        Ok(SimpleGraph { adj, m })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, x: VertexId) -> &[VertexId] {
        &self.adj[x]
    }

    pub fn degree(&self, x: VertexId) -> usize {
        self.adj[x].len()
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        e.v < self.n() && self.adj[e.u].binary_search(&e.v).is_ok()
    }

    pub fn is_adjacent(&self, a: VertexId, b: VertexId) -> bool {
        Edge::try_new(a, b).is_some_and(|e| self.has_edge(e))
    }

    /// All edges in canonical (lexicographic) order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().enumerate().flat_map(|(x, list)| {
            list.iter()
                .filter(move |&&y| y > x)
                .map(move |&y| Edge { u: x, v: y })
        })
    }

    pub fn edge_vec(&self) -> Vec<Edge> {
        self.edges().collect()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    queue.push_back(y);
                }
            }
        }
        count == n
    }

    /// Subgraph induced by `keep`, relabeled so that `keep[i]` becomes vertex `i`.
    pub fn induced(&self, keep: &[VertexId]) -> SimpleGraph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &x) in keep.iter().enumerate() {
            index[x] = i;
        }
        let edges = self
            .edges()
            .filter(|e| index[e.u] != usize::MAX && index[e.v] != usize::MAX)
            .map(|e| Edge::new(index[e.u], index[e.v]));
        SimpleGraph::from_edges(keep.len(), edges).expect("induced subgraph of a simple graph")
    }

    pub fn without_edge(&self, e: Edge) -> SimpleGraph {
        SimpleGraph::from_edges(self.n(), self.edges().filter(|&f| f != e))
            .expect("subgraph of a simple graph")
    }

    /// Applies `map` to every vertex; `map` must be a permutation of `0..n`.
    pub fn relabeled(&self, map: &[VertexId]) -> SimpleGraph {
        SimpleGraph::from_edges(
            self.n(),
            self.edges().map(|e| Edge::new(map[e.u], map[e.v])),
        )
        .expect("relabeling by a permutation")
    }
}

/// Union-find over `0..n` with path halving.
#[derive(Clone, Debug)]
pub(crate) struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// True iff `edges` is a set of n-1 edges of `g` that connects all n vertices.
///
/// Returns [`Error::ForeignEdge`] for an edge outside `g`.
pub fn is_spanning_tree(g: &SimpleGraph, edges: &[Edge]) -> Result<bool> {
    if let Some(&e) = edges.iter().find(|&&e| !g.has_edge(e)) {
        return Err(Error::ForeignEdge(e));
    }
    let n = g.n();
    if n == 0 || edges.len() != n - 1 {
        return Ok(false);
    }
    let mut sets = DisjointSets::new(n);
    Ok(edges.iter().all(|e| sets.union(e.u, e.v)))
}

/// A validated spanning tree, edges kept in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpanningTree {
    edges: Vec<Edge>,
}

impl SpanningTree {
    pub fn new(host: &SimpleGraph, mut edges: Vec<Edge>) -> Result<SpanningTree> {
        edges.sort_unstable();
        if !is_spanning_tree(host, &edges)? {
            return Err(Error::InvalidTree(format!(
                "{} edges do not span {} vertices acyclically",
                edges.len(),
                host.n()
            )));
        }
        Ok(SpanningTree { edges })
    }

    /// Caller guarantees validity; edges are sorted here.
    pub(crate) fn from_trusted(mut edges: Vec<Edge>) -> SpanningTree {
        edges.sort_unstable();
        SpanningTree { edges }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn into_edges(self) -> Vec<Edge> {
        self.edges
    }
}

impl fmt::Display for SpanningTree {
    /// `u-v` pairs in canonical order, space separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// One step of a construction: `vertex` joins both endpoints of `attach`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Attachment {
    pub vertex: VertexId,
    pub attach: Edge,
}

/// A 2-tree given by its build order: base edge `{0, 1}`, then vertex
/// `k + 2` attached to the edge `attachments[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoTreeConstruction {
    attachments: Vec<Edge>,
}

impl TwoTreeConstruction {
    /// The two-vertex construction (a single edge).
    pub fn base() -> TwoTreeConstruction {
        TwoTreeConstruction {
            attachments: Vec::new(),
        }
    }

    /// Validates that each attach edge exists when its vertex is added.
    pub fn new(attachments: Vec<Edge>) -> Result<TwoTreeConstruction> {
        let n = attachments.len() + 2;
        let mut present = vec![Vec::<VertexId>::new(); n];
        present[1].push(0);
        for (k, e) in attachments.iter().enumerate() {
            let vertex = k + 2;
            if e.v >= vertex || !present[e.v].contains(&e.u) {
                return Err(Error::InvalidConstruction(format!(
                    "vertex {vertex} attaches to {e}, which is not an edge of the first {vertex} vertices"
                )));
            }
            present[vertex].extend([e.u, e.v]);
        }
        Ok(TwoTreeConstruction { attachments })
    }

    /// Accepts explicit `(vertex, attach)` pairs; vertices must be 2, 3, ... in order.
    pub fn from_attachments(steps: &[Attachment]) -> Result<TwoTreeConstruction> {
        for (k, a) in steps.iter().enumerate() {
            if a.vertex != k + 2 {
                return Err(Error::InvalidConstruction(format!(
                    "step {k} introduces vertex {} but vertex {} was expected",
                    a.vertex,
                    k + 2
                )));
            }
        }
        TwoTreeConstruction::new(steps.iter().map(|a| a.attach).collect())
    }

    pub(crate) fn from_trusted(attachments: Vec<Edge>) -> TwoTreeConstruction {
        debug_assert!(TwoTreeConstruction::new(attachments.clone()).is_ok());
        TwoTreeConstruction { attachments }
    }

    pub fn n(&self) -> usize {
        self.attachments.len() + 2
    }

    pub fn base_edge(&self) -> Edge {
        Edge::new(0, 1)
    }

    /// Attach edge of `vertex` (which must be at least 2).
    pub fn attach_of(&self, vertex: VertexId) -> Edge {
        self.attachments[vertex - 2]
    }

    pub fn attach_edges(&self) -> &[Edge] {
        &self.attachments
    }

    pub fn attachments(&self) -> impl Iterator<Item = Attachment> + '_ {
        self.attachments
            .iter()
            .enumerate()
            .map(|(k, &attach)| Attachment {
                vertex: k + 2,
                attach,
            })
    }

    /// The first `i` constructed vertices as a construction of their own.
    pub fn truncated(&self, i: usize) -> Result<TwoTreeConstruction> {
        if i < 2 || i > self.n() {
            return Err(Error::out_of_range(
                "i",
                i,
                &format!("2 <= i <= {}", self.n()),
            ));
        }
        Ok(TwoTreeConstruction {
            attachments: self.attachments[..i - 2].to_vec(),
        })
    }
}

/// Builds the graph of a construction: n vertices, 2n - 3 edges.
pub fn realize(c: &TwoTreeConstruction) -> SimpleGraph {
    let edges = std::iter::once(c.base_edge()).chain(c.attachments().flat_map(|a| {
        [
            Edge::new(a.attach.u, a.vertex),
            Edge::new(a.attach.v, a.vertex),
        ]
    }));
    SimpleGraph::from_edges(c.n(), edges).expect("validated construction realizes a simple graph")
}

/// The subgraph induced by the first `i` constructed vertices.
pub fn prefix_graph(c: &TwoTreeConstruction, i: usize) -> Result<SimpleGraph> {
    Ok(realize(&c.truncated(i)?))
}

/// Exact nonnegative spanning-tree count.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BigCount(BigUint);

impl BigCount {
    pub fn zero() -> BigCount {
        BigCount(BigUint::zero())
    }

    pub fn one() -> BigCount {
        BigCount(BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn pow2(k: u32) -> BigCount {
        BigCount(BigUint::one() << k)
    }

    pub fn pow(base: u32, k: u32) -> BigCount {
        BigCount(BigUint::from(base).pow(k))
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::INFINITY)
    }

    /// `self - rhs`, or `None` if that would be negative.
    pub fn checked_sub(&self, rhs: &BigCount) -> Option<BigCount> {
        (self.0 >= rhs.0).then(|| BigCount(&self.0 - &rhs.0))
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount(v)
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for BigCount {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        s.parse::<BigUint>().map(BigCount)
    }
}

impl Serialize for BigCount {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_str_radix(10))
    }
}

impl<'de> Deserialize<'de> for BigCount {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Add for BigCount {
    type Output = BigCount;
    fn add(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a BigCount> for &'a BigCount {
    type Output = BigCount;
    fn add(self, rhs: &BigCount) -> BigCount {
        BigCount(&self.0 + &rhs.0)
    }
}

impl AddAssign<&BigCount> for BigCount {
    fn add_assign(&mut self, rhs: &BigCount) {
        self.0 += &rhs.0;
    }
}

impl Sub for BigCount {
    type Output = BigCount;
    /// Panics on underflow, like unsigned subtraction.
    fn sub(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 - rhs.0)
    }
}

impl Mul for BigCount {
    type Output = BigCount;
    fn mul(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a BigCount> for &'a BigCount {
    type Output = BigCount;
    fn mul(self, rhs: &BigCount) -> BigCount {
        BigCount(&self.0 * &rhs.0)
    }
}

impl Mul<u64> for &BigCount {
    type Output = BigCount;
    fn mul(self, rhs: u64) -> BigCount {
        BigCount(&self.0 * rhs)
    }
}

impl Sum for BigCount {
    fn sum<I: Iterator<Item = BigCount>>(iter: I) -> BigCount {
        iter.fold(BigCount::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn book4() -> TwoTreeConstruction {
        TwoTreeConstruction::new(vec![Edge::new(0, 1), Edge::new(0, 1)]).unwrap()
    }

    #[test]
    fn edge_is_canonical() {
        assert_eq!(Edge::new(3, 1), Edge::new(1, 3));
        assert_eq!(Edge::new(3, 1).endpoints(), (1, 3));
        assert!(Edge::try_new(2, 2).is_none());
        assert_eq!(Edge::new(4, 2).other(4), Some(2));
        assert_eq!(Edge::new(4, 2).other(0), None);
    }

    #[test]
    fn graph_rejects_repeats_and_range() {
        assert!(SimpleGraph::from_edges(3, [Edge::new(0, 1), Edge::new(1, 0)]).is_err());
        assert!(SimpleGraph::from_edges(2, [Edge::new(0, 2)]).is_err());
    }

    #[test]
    fn realize_small_cases() {
        let k2 = realize(&TwoTreeConstruction::base());
        assert_eq!((k2.n(), k2.m()), (2, 1));

        let k3 = realize(&TwoTreeConstruction::new(vec![Edge::new(0, 1)]).unwrap());
        assert_eq!((k3.n(), k3.m()), (3, 3));
        assert!(k3.has_edge(Edge::new(0, 2)) && k3.has_edge(Edge::new(1, 2)));

        let b4 = realize(&book4());
        assert_eq!((b4.n(), b4.m()), (4, 5));
        assert_eq!(b4.degree(0), 3);
        assert_eq!(b4.degree(3), 2);
    }

    #[test]
    fn construction_rejects_missing_attach_edge() {
        // {0,2} does not exist yet when vertex 2 is added.
        let err = TwoTreeConstruction::new(vec![Edge::new(0, 2)]).unwrap_err();
        assert!(matches!(err, Error::InvalidConstruction(_)));
        // {2,3} is not an edge after vertices 2 and 3 both attach to {0,1}.
        let err = TwoTreeConstruction::new(vec![Edge::new(0, 1), Edge::new(0, 1), Edge::new(2, 3)])
            .unwrap_err();
        assert!(matches!(err, Error::InvalidConstruction(_)));
    }

    #[test]
    fn from_attachments_checks_vertex_order() {
        let ok = [Attachment {
            vertex: 2,
            attach: Edge::new(0, 1),
        }];
        assert!(TwoTreeConstruction::from_attachments(&ok).is_ok());
        let bad = [Attachment {
            vertex: 3,
            attach: Edge::new(0, 1),
        }];
        assert!(TwoTreeConstruction::from_attachments(&bad).is_err());
    }

    #[test]
    fn prefix_graph_bounds_and_identity() {
        let c = TwoTreeConstruction::new(vec![Edge::new(0, 1); 3]).unwrap();
        assert_eq!(
            prefix_graph(&c, 2).unwrap().edge_vec(),
            vec![Edge::new(0, 1)]
        );
        assert_eq!(prefix_graph(&c, 5).unwrap(), realize(&c));
        let k3 = prefix_graph(&c, 3).unwrap();
        assert_eq!(
            k3.edge_vec(),
            vec![Edge::new(0, 1), Edge::new(0, 2), Edge::new(1, 2)]
        );
        assert!(matches!(prefix_graph(&c, 1), Err(Error::OutOfRange { .. })));
        assert!(matches!(prefix_graph(&c, 6), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn spanning_tree_checks() {
        let k3 = realize(&TwoTreeConstruction::new(vec![Edge::new(0, 1)]).unwrap());
        assert!(is_spanning_tree(&k3, &[Edge::new(0, 1), Edge::new(1, 2)]).unwrap());
        assert!(
            !is_spanning_tree(&k3, &[Edge::new(0, 1), Edge::new(1, 2), Edge::new(0, 2)]).unwrap()
        );
        assert!(!is_spanning_tree(&k3, &[Edge::new(0, 1), Edge::new(0, 1)]).unwrap());

        let b4 = realize(&book4());
        assert!(
            is_spanning_tree(&b4, &[Edge::new(0, 1), Edge::new(0, 2), Edge::new(0, 3)]).unwrap()
        );
        assert_eq!(
            is_spanning_tree(&b4, &[Edge::new(2, 3), Edge::new(0, 2), Edge::new(0, 3)]),
            Err(Error::ForeignEdge(Edge::new(2, 3)))
        );
        assert!(SpanningTree::new(&b4, vec![Edge::new(0, 1), Edge::new(0, 2)]).is_err());
    }

    #[test]
    fn induced_relabels() {
        let b4 = realize(&book4());
        let h = b4.induced(&[0, 1, 3]);
        assert_eq!(
            h.edge_vec(),
            vec![Edge::new(0, 1), Edge::new(0, 2), Edge::new(1, 2)]
        );
    }

    #[test]
    fn bigcount_serializes_as_decimal_string() {
        let c = BigCount::pow2(70);
        assert_eq!(c.to_string(), "1180591620717411303424");
        let back: BigCount = c.to_string().parse().unwrap();
        assert_eq!(back, c);
        assert_eq!(c.checked_sub(&BigCount::pow2(71)), None);
    }
}
