//! Named 2-tree families, seeded random 2-trees, and the exhaustive corpus of
//! small labeled 2-trees.
//!
//! Randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64(seed)`; [`Seed::stream`] selects an independent ChaCha
//! stream for the same seed. Every random choice is one `gen_range` draw over
//! a half-open integer range, so a seed fully determines the output.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{realize, Edge, SimpleGraph, TwoTreeConstruction};

/// Largest `n` accepted by [`all_labeled_two_trees`]; (2*9 - 5)!! = 135135.
pub const EXHAUSTIVE_MAX_N: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Seed(pub u64);

impl Seed {
    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }

    /// An independent stream for the same seed.
    pub fn stream(self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.0);
        rng.set_stream(stream);
        rng
    }
}

fn require_n(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::out_of_range("n", n, &format!("n >= {min}")));
    }
    Ok(())
}

/// Every added vertex attaches to the base edge `{0, 1}`.
pub fn book(n: usize) -> Result<TwoTreeConstruction> {
    require_n(n, 2)?;
    Ok(TwoTreeConstruction::from_trusted(vec![
        Edge::new(0, 1);
        n - 2
    ]))
}

/// Square of the path `0 - 1 - ... - (n-1)`.
pub fn path_square(n: usize) -> Result<TwoTreeConstruction> {
    require_n(n, 2)?;
    Ok(TwoTreeConstruction::from_trusted(
        (2..n).map(|i| Edge::new(i - 2, i - 1)).collect(),
    ))
}

/// Path `1 - 2 - ... - (n-1)` plus apex `0` adjacent to every path vertex.
pub fn fan(n: usize) -> Result<TwoTreeConstruction> {
    require_n(n, 2)?;
    Ok(TwoTreeConstruction::from_trusted(
        (2..n).map(|i| Edge::new(0, i - 1)).collect(),
    ))
}

/// Chain from a single edge: each new vertex attaches to one of the two edges
/// its predecessor brought in, chosen by a fair coin.
pub fn random_chain(n: usize, seed: Seed) -> Result<TwoTreeConstruction> {
    require_n(n, 3)?;
    let mut rng = seed.rng();
    let mut attachments = vec![Edge::new(0, 1)];
    for v in 3..n {
        let prev = attachments[v - 3];
        let other = if rng.gen_range(0..2) == 0 {
            prev.u()
        } else {
            prev.v()
        };
        attachments.push(Edge::new(other, v - 1));
    }
    Ok(TwoTreeConstruction::from_trusted(attachments))
}

/// Each new vertex attaches to a uniformly chosen existing edge. Uniform over
/// construction sequences, not over isomorphism classes.
pub fn random_two_tree(n: usize, seed: Seed) -> Result<TwoTreeConstruction> {
    require_n(n, 2)?;
    Ok(random_two_tree_with(n, &mut seed.rng()))
}

pub fn random_two_tree_with<R: Rng>(n: usize, rng: &mut R) -> TwoTreeConstruction {
    let mut edges = Vec::with_capacity(2 * n);
    edges.push(Edge::new(0, 1));
    let mut attachments = Vec::with_capacity(n.saturating_sub(2));
    for v in 2..n {
        let e = edges[rng.gen_range(0..edges.len())];
        attachments.push(e);
        edges.push(Edge::new(e.u(), v));
        edges.push(Edge::new(e.v(), v));
    }
    TwoTreeConstruction::from_trusted(attachments)
}

/// A host 2-tree extended by a chain `w_1, ..., w_p`: `w_1` attaches to
/// `e_0`, and each later `w_i` attaches to the edge `e_{i-1}` at `w_{i-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainGraph {
    pub graph: SimpleGraph,
    /// Number of host vertices; the chain vertices are `host_n..host_n + p`.
    pub host_n: usize,
    /// `edges[i]` is `e_i`; `edges[p]` is the chosen edge at `w_p`.
    pub edges: Vec<Edge>,
    /// The edge at `w_1` other than `e_1`.
    pub e_prime: Edge,
}

impl ChainGraph {
    pub fn p(&self) -> usize {
        self.edges.len() - 1
    }

    pub fn e0(&self) -> Edge {
        self.edges[0]
    }

    pub fn ep(&self) -> Edge {
        self.edges[self.p()]
    }
}

/// Grows a chain on `host` starting at `e0`. `sides[i - 1]` picks which of the
/// two edges at `w_i` becomes `e_i`: `false` keeps the smaller endpoint of
/// `e_{i-1}`, `true` the larger.
pub fn chain_graph(host: &SimpleGraph, e0: Edge, sides: &[bool]) -> Result<ChainGraph> {
    if !host.has_edge(e0) {
        return Err(Error::ForeignEdge(e0));
    }
    if sides.is_empty() {
        return Err(Error::out_of_range("p", 0, "p >= 1"));
    }
    let host_n = host.n();
    let n = host_n + sides.len();
    let mut all: Vec<Edge> = host.edge_vec();
    let mut edges = vec![e0];
    for (i, &side) in sides.iter().enumerate() {
        let w = host_n + i;
        let prev = edges[i];
        all.push(Edge::new(prev.u(), w));
        all.push(Edge::new(prev.v(), w));
        let keep = if side { prev.v() } else { prev.u() };
        edges.push(Edge::new(keep, w));
    }
    let e1 = edges[1];
    let w1 = host_n;
    let kept = e1.other(w1).expect("e_1 is incident to w_1");
    let e_prime = Edge::new(e0.other(kept).expect("kept endpoint lies on e_0"), w1);
    Ok(ChainGraph {
        graph: SimpleGraph::from_edges(n, all)?,
        host_n,
        edges,
        e_prime,
    })
}

/// [`chain_graph`] with `e0` and the sides drawn from `rng`.
pub fn random_chain_graph<R: Rng>(host: &SimpleGraph, p: usize, rng: &mut R) -> Result<ChainGraph> {
    let host_edges = host.edge_vec();
    if host_edges.is_empty() {
        return Err(Error::InvalidGraph("host has no edges".into()));
    }
    let e0 = host_edges[rng.gen_range(0..host_edges.len())];
    let sides: Vec<bool> = (0..p).map(|_| rng.gen_range(0..2) == 1).collect();
    chain_graph(host, e0, &sides)
}

fn check_exhaustive(n: usize) -> Result<()> {
    if n > EXHAUSTIVE_MAX_N {
        return Err(Error::TooLarge {
            what: format!("exhaustive 2-tree corpus for n = {n}"),
            limit: format!("n <= {EXHAUSTIVE_MAX_N}"),
        });
    }
    require_n(n, 3)
}

/// Every attach-edge sequence on `n` vertices, in lexicographic order of the
/// per-step edge choice (edges indexed in creation order).
pub fn all_labeled_constructions(n: usize) -> Result<Vec<TwoTreeConstruction>> {
    check_exhaustive(n)?;
    let mut out = Vec::new();
    let mut edges = vec![Edge::new(0, 1)];
    let mut attachments = Vec::with_capacity(n - 2);
    fn go(
        n: usize,
        edges: &mut Vec<Edge>,
        attachments: &mut Vec<Edge>,
        out: &mut Vec<TwoTreeConstruction>,
    ) {
        let v = attachments.len() + 2;
        if v == n {
            out.push(TwoTreeConstruction::from_trusted(attachments.clone()));
            return;
        }
        for k in 0..edges.len() {
            let e = edges[k];
            attachments.push(e);
            edges.push(Edge::new(e.u(), v));
            edges.push(Edge::new(e.v(), v));
            go(n, edges, attachments, out);
            edges.truncate(edges.len() - 2);
            attachments.pop();
        }
    }
    go(n, &mut edges, &mut attachments, &mut out);
    Ok(out)
}

/// All labeled 2-trees on `0..n` built from base `{0, 1}` in identity order,
/// deduplicated by edge set.
pub fn all_labeled_two_trees(n: usize) -> Result<Vec<SimpleGraph>> {
    let mut seen = HashSet::new();
    Ok(all_labeled_constructions(n)?
        .iter()
        .map(realize)
        .filter(|g| seen.insert(g.edge_vec()))
        .collect())
}
