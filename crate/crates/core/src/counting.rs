//! Exact spanning-tree counts.
//!
//! Closed forms and recurrences are cross-checked against two independent
//! oracles: a Matrix-Tree cofactor computed with fraction-free (Bareiss)
//! elimination, and a brute-force scan over edge subsets.

use itertools::Itertools;
use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{prefix_graph, BigCount, DisjointSets, Edge, SimpleGraph, TwoTreeConstruction};
use crate::recognition::recognize;

/// Largest edge count [`brute_force_count`] accepts.
pub const BRUTE_FORCE_MAX_EDGES: usize = 25;

/// Fibonacci index, extended one step backwards so that `F(-1) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FibIndex(i64);

impl FibIndex {
    pub fn new(k: i64) -> Result<FibIndex> {
        if k < -1 {
            return Err(Error::out_of_range("k", k, "k >= -1"));
        }
        Ok(FibIndex(k))
    }

    pub fn get(self) -> i64 {
        self.0
    }
}

impl From<u32> for FibIndex {
    fn from(k: u32) -> Self {
        FibIndex(k as i64)
    }
}

pub fn fibonacci(k: FibIndex) -> BigCount {
    if k.0 == -1 {
        return BigCount::one();
    }
    let (mut a, mut b) = (BigCount::zero(), BigCount::one());
    for _ in 0..k.0 {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// Shorthand for indices the caller knows are at least -1.
pub(crate) fn fib(k: i64) -> BigCount {
    fibonacci(FibIndex::new(k).expect("fibonacci index >= -1"))
}

/// `n * 2^(n-3)`, the count for the book; `count_book(2) = 1`.
pub fn count_book(n: usize) -> Result<BigCount> {
    match n {
        0 | 1 => Err(Error::out_of_range("n", n, "n >= 2")),
        2 => Ok(BigCount::one()),
        _ => Ok(&BigCount::pow2((n - 3) as u32) * n as u64),
    }
}

/// `F(2n - 2)`, the count shared by every 2-tree with two simplicial vertices.
pub fn count_two_simplicial(n: usize) -> Result<BigCount> {
    if n < 2 {
        return Err(Error::out_of_range("n", n, "n >= 2"));
    }
    Ok(fib(2 * n as i64 - 2))
}

/// State of a chain grown from a host 2-tree: `t = T(G_p)`, `s = T(G_p; e_p)`,
/// seeded with `alpha = T(host)` and `beta = T(host; e_0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainState {
    pub alpha: BigCount,
    pub beta: BigCount,
    pub p: usize,
    pub t: BigCount,
    pub s: BigCount,
}

impl ChainState {
    pub fn seed(alpha: BigCount, beta: BigCount) -> Result<ChainState> {
        if beta > alpha {
            return Err(Error::InvalidArgument(format!(
                "beta = {beta} exceeds alpha = {alpha}"
            )));
        }
        Ok(ChainState {
            t: alpha.clone(),
            s: beta.clone(),
            alpha,
            beta,
            p: 0,
        })
    }

    /// `t = F(2p+1) alpha + F(2p) beta` and `s = F(2p) alpha + F(2p-1) beta`.
    pub fn closed_form(&self) -> (BigCount, BigCount) {
        let p = self.p as i64;
        let t = &fib(2 * p + 1) * &self.alpha + &fib(2 * p) * &self.beta;
        let s = &fib(2 * p) * &self.alpha + &fib(2 * p - 1) * &self.beta;
        (t, s)
    }

    pub fn satisfies_closed_form(&self) -> bool {
        let (t, s) = self.closed_form();
        t == self.t && s == self.s && self.beta <= self.alpha
    }
}

/// One chain extension: `t' = 2t + s`, `s' = t + s`.
pub fn chain_step(state: &ChainState) -> ChainState {
    let t = &(&state.t + &state.t) + &state.s;
    let s = &state.t + &state.s;
    ChainState {
        alpha: state.alpha.clone(),
        beta: state.beta.clone(),
        p: state.p + 1,
        t,
        s,
    }
}

/// Spanning-tree counts of a chain `G_p` restricted to three distinguished edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainEdgeCounts {
    /// `T(G_p; e_0) = F(2p+1) beta`
    pub e0: BigCount,
    /// `T(G_p; e') = F(2p-1) alpha + F(2p) beta`
    pub eprime: BigCount,
    /// `T(G_p; e_p) = F(2p) alpha + F(2p-1) beta`
    pub ep: BigCount,
}

pub fn chain_edge_counts(alpha: &BigCount, beta: &BigCount, p: usize) -> Result<ChainEdgeCounts> {
    if p < 1 {
        return Err(Error::out_of_range("p", p, "p >= 1"));
    }
    if beta > alpha {
        return Err(Error::InvalidArgument(format!(
            "beta = {beta} exceeds alpha = {alpha}"
        )));
    }
    let p = p as i64;
    Ok(ChainEdgeCounts {
        e0: &fib(2 * p + 1) * beta,
        eprime: &fib(2 * p - 1) * alpha + &fib(2 * p) * beta,
        ep: &fib(2 * p) * alpha + &fib(2 * p - 1) * beta,
    })
}

/// Spanning trees of a multigraph on `n` vertices; loops are ignored and
/// repeated pairs count with multiplicity.
pub fn kirchhoff_multigraph(n: usize, edges: &[(usize, usize)]) -> BigCount {
    if n <= 1 {
        return BigCount::one();
    }
    let size = n - 1;
    let mut lap = vec![vec![BigInt::zero(); size]; size];
    for &(a, b) in edges {
        if a == b {
            continue;
        }
        // row/column n-1 is the deleted cofactor
        if a < size {
            lap[a][a] += 1;
        }
        if b < size {
            lap[b][b] += 1;
        }
        if a < size && b < size {
            lap[a][b] -= 1;
            lap[b][a] -= 1;
        }
    }
    let det = bareiss_determinant(lap);
    BigCount::from(det.magnitude().clone())
}

/// Determinant by fraction-free Gaussian elimination; every division is exact.
pub(crate) fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let size = a.len();
    if size == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..size {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..size).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[size - 1][size - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Matrix-Tree count of spanning trees; 0 for a disconnected graph.
pub fn kirchhoff_count(g: &SimpleGraph) -> BigCount {
    let edges: Vec<(usize, usize)> = g.edges().map(|e| e.endpoints()).collect();
    kirchhoff_multigraph(g.n(), &edges)
}

/// A request for `T(G; S)`: the number of spanning trees of `graph` that
/// contain every edge of `required`.
#[derive(Clone, Debug)]
pub struct EdgeCountQuery<'a> {
    graph: &'a SimpleGraph,
    required: Vec<Edge>,
}

impl<'a> EdgeCountQuery<'a> {
    /// Fails with [`Error::ForeignEdge`] or [`Error::CyclicRequirement`].
    pub fn new(graph: &'a SimpleGraph, required: &[Edge]) -> Result<EdgeCountQuery<'a>> {
        if let Some(&e) = required.iter().find(|&&e| !graph.has_edge(e)) {
            return Err(Error::ForeignEdge(e));
        }
        let mut required = required.to_vec();
        required.sort_unstable();
        required.dedup();
        let mut sets = DisjointSets::new(graph.n());
        if !required.iter().all(|e| sets.union(e.u(), e.v())) {
            return Err(Error::CyclicRequirement);
        }
        Ok(EdgeCountQuery { graph, required })
    }

    pub fn graph(&self) -> &SimpleGraph {
        self.graph
    }

    pub fn required(&self) -> &[Edge] {
        &self.required
    }
}

/// `T(G; S)` by contracting `S` and taking the Matrix-Tree count of the
/// resulting multigraph.
pub fn count_containing(q: &EdgeCountQuery<'_>) -> BigCount {
    let g = q.graph;
    let mut sets = DisjointSets::new(g.n());
    for e in &q.required {
        sets.union(e.u(), e.v());
    }
    let mut class = vec![usize::MAX; g.n()];
    let mut k = 0;
    for x in 0..g.n() {
        let r = sets.find(x);
        if class[r] == usize::MAX {
            class[r] = k;
            k += 1;
        }
        class[x] = class[r];
    }
    let edges: Vec<(usize, usize)> = g
        .edges()
        .filter(|e| q.required.binary_search(e).is_err())
        .map(|e| (class[e.u()], class[e.v()]))
        .collect();
    kirchhoff_multigraph(k, &edges)
}

/// `T(G; S)`, treating a cyclic `S` as contained in no tree.
pub fn count_containing_or_zero(g: &SimpleGraph, required: &[Edge]) -> Result<BigCount> {
    match EdgeCountQuery::new(g, required) {
        Ok(q) => Ok(count_containing(&q)),
        Err(Error::CyclicRequirement) => Ok(BigCount::zero()),
        Err(e) => Err(e),
    }
}

/// Counts `(n-1)`-edge subsets that form spanning trees. Guarded at
/// [`BRUTE_FORCE_MAX_EDGES`] edges.
pub fn brute_force_count(g: &SimpleGraph) -> Result<BigCount> {
    if g.m() > BRUTE_FORCE_MAX_EDGES {
        return Err(Error::TooLarge {
            what: format!("brute force over {} edges", g.m()),
            limit: format!("{BRUTE_FORCE_MAX_EDGES} edges"),
        });
    }
    let n = g.n();
    if n <= 1 {
        return Ok(BigCount::one());
    }
    let edges = g.edge_vec();
    let count = edges
        .iter()
        .combinations(n - 1)
        .filter(|subset| {
            let mut sets = DisjointSets::new(n);
            subset.iter().all(|e| sets.union(e.u(), e.v()))
        })
        .count();
    Ok(BigCount::from(count as u64))
}

/// `T(G)` by the step identity `T(G_i) = 2 T(G_{i-1}) + T(G_{i-1}; attach_i)`.
pub fn count_via_construction(c: &TwoTreeConstruction) -> BigCount {
    let mut total = BigCount::one();
    for a in c.attachments() {
        let prefix = prefix_graph(c, a.vertex).expect("prefix of a valid construction");
        let q = EdgeCountQuery::new(&prefix, &[a.attach]).expect("attach edge lies in its prefix");
        total = &(&total + &total) + &count_containing(&q);
    }
    total
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsCheck {
    pub count: BigCount,
    pub lower: BigCount,
    pub upper: BigCount,
    pub lower_ok: bool,
    pub upper_ok: bool,
}

/// Checks `2^(n-2) <= T(G) <= 3^(n-2)` for a 2-tree.
pub fn verify_bounds(g: &SimpleGraph) -> Result<BoundsCheck> {
    recognize(g)?;
    let k = (g.n() - 2) as u32;
    let count = kirchhoff_count(g);
    let lower = BigCount::pow2(k);
    let upper = BigCount::pow(3, k);
    Ok(BoundsCheck {
        lower_ok: lower <= count,
        upper_ok: count <= upper,
        count,
        lower,
        upper,
    })
}

/// Exact integer ratio `num / den` rounded to `f64`, for asymptotic sanity checks.
pub fn ratio(num: &BigCount, den: &BigCount) -> f64 {
    let scale = BigInt::from(10u64).pow(18);
    let n = BigInt::from_biguint(Sign::Plus, num.as_biguint().clone()) * &scale;
    let d = BigInt::from_biguint(Sign::Plus, den.as_biguint().clone());
    let q = n / d;
    let whole = &q / &scale;
    let frac = &q % &scale;
    let to_f = |x: &BigInt| x.abs().to_string().parse::<f64>().unwrap_or(f64::INFINITY);
    to_f(&whole) + to_f(&frac) / 1e18
}
