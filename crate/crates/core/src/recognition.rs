//! 2-tree recognition, simplicial vertices, and the structural tests used by
//! the extremal surgeries.

use std::collections::BTreeSet;

use crate::error::{Error, NotTwoTreeReason, Result};
use crate::graph::{Edge, SimpleGraph, TwoTreeConstruction, VertexId};

/// An elimination order `(v_n, ..., v_1)`: `order[0]` is deleted first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoSimplicialOrdering {
    pub order: Vec<VertexId>,
}

impl TwoSimplicialOrdering {
    /// Checks that every vertex except the last two has degree exactly 2 when
    /// deleted and that its two remaining neighbors are adjacent.
    pub fn is_valid_for(&self, g: &SimpleGraph) -> bool {
        let n = g.n();
        let mut seen = vec![false; n];
        if self.order.len() != n
            || self
                .order
                .iter()
                .any(|&x| x >= n || std::mem::replace(&mut seen[x], true))
        {
            return false;
        }
        let mut alive = vec![true; n];
        for &x in &self.order[..n.saturating_sub(2)] {
            let live: Vec<VertexId> = g
                .neighbors(x)
                .iter()
                .copied()
                .filter(|&y| alive[y])
                .collect();
            if live.len() != 2 || !g.is_adjacent(live[0], live[1]) {
                return false;
            }
            alive[x] = false;
        }
        n < 2 || g.is_adjacent(self.order[n - 2], self.order[n - 1])
    }

    /// True iff consecutive vertices of the order are adjacent in `g`.
    pub fn is_path_in(&self, g: &SimpleGraph) -> bool {
        self.order.windows(2).all(|w| g.is_adjacent(w[0], w[1]))
    }
}

/// Result of recognizing a 2-tree with arbitrary vertex labels.
///
/// `construction` uses build-order labels; `labels[k]` is the input vertex
/// that construction vertex `k` stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recognized {
    pub construction: TwoTreeConstruction,
    pub labels: Vec<VertexId>,
}

impl Recognized {
    pub fn to_input_edge(&self, e: Edge) -> Edge {
        Edge::new(self.labels[e.u()], self.labels[e.v()])
    }

    /// The deletion order that was used, as a 2-simplicial ordering of the input graph.
    pub fn ordering(&self) -> TwoSimplicialOrdering {
        TwoSimplicialOrdering {
            order: self.labels.iter().rev().copied().collect(),
        }
    }

    /// The realized construction mapped back to input labels.
    pub fn realize_input(&self) -> SimpleGraph {
        let g = crate::graph::realize(&self.construction);
        SimpleGraph::from_edges(g.n(), g.edges().map(|e| self.to_input_edge(e)))
            .expect("labels form a permutation")
    }
}

/// Decides whether `g` is a 2-tree by repeatedly deleting the smallest-index
/// degree-2 vertex whose neighbors are adjacent.
pub fn recognize(g: &SimpleGraph) -> Result<Recognized> {
    let n = g.n();
    if n < 2 || g.m() != 2 * n - 3 {
        return Err(Error::NotTwoTree(NotTwoTreeReason::WrongEdgeCount));
    }
    if !g.is_connected() {
        return Err(Error::NotTwoTree(NotTwoTreeReason::Disconnected));
    }

    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|x| g.degree(x)).collect();
    let mut candidates: BTreeSet<VertexId> = (0..n).filter(|&x| degree[x] == 2).collect();
    // (deleted vertex, its two live neighbors at deletion)
    let mut deletions: Vec<(VertexId, Edge)> = Vec::with_capacity(n - 2);

    let live_pair = |alive: &[bool], x: VertexId| -> (VertexId, VertexId) {
        let mut it = g.neighbors(x).iter().copied().filter(|&y| alive[y]);
        (it.next().unwrap(), it.next().unwrap())
    };

    while deletions.len() < n - 2 {
        let pick = candidates.iter().copied().find(|&x| {
            let (a, b) = live_pair(&alive, x);
            g.is_adjacent(a, b)
        });
        let Some(x) = pick else {
            let reason = if candidates.is_empty() {
                NotTwoTreeReason::NoDegree2Simplicial
            } else {
                NotTwoTreeReason::NonAdjacentNeighbors
            };
            return Err(Error::NotTwoTree(reason));
        };
        let (a, b) = live_pair(&alive, x);
        alive[x] = false;
        candidates.remove(&x);
        for y in [a, b] {
            degree[y] -= 1;
            match degree[y] {
                2 => {
                    candidates.insert(y);
                }
                _ => {
                    candidates.remove(&y);
                }
            }
        }
        deletions.push((x, Edge::new(a, b)));
    }

    let mut rest = (0..n).filter(|&x| alive[x]);
    let (r0, r1) = (rest.next().unwrap(), rest.next().unwrap());
    if !g.is_adjacent(r0, r1) {
        return Err(Error::NotTwoTree(NotTwoTreeReason::Disconnected));
    }

    let mut labels = vec![r0, r1];
    let mut index = vec![usize::MAX; n];
    index[r0] = 0;
    index[r1] = 1;
    let mut attachments = Vec::with_capacity(n - 2);
    for &(x, nb) in deletions.iter().rev() {
        index[x] = labels.len();
        labels.push(x);
        attachments.push(Edge::new(index[nb.u()], index[nb.v()]));
    }
    Ok(Recognized {
        construction: TwoTreeConstruction::from_trusted(attachments),
        labels,
    })
}

pub fn is_two_tree(g: &SimpleGraph) -> bool {
    recognize(g).is_ok()
}

fn require_two_tree(g: &SimpleGraph, min_n: usize) -> Result<()> {
    recognize(g)?;
    if g.n() < min_n {
        return Err(Error::out_of_range("n", g.n(), &format!("n >= {min_n}")));
    }
    Ok(())
}

/// Degree-2 vertices of a 2-tree with at least three vertices, ascending.
pub fn simplicial_vertices(g: &SimpleGraph) -> Result<Vec<VertexId>> {
    require_two_tree(g, 3)?;
    Ok(degree_two(g))
}

pub(crate) fn degree_two(g: &SimpleGraph) -> Vec<VertexId> {
    (0..g.n()).filter(|&x| g.degree(x) == 2).collect()
}

pub(crate) fn neighborhood(g: &SimpleGraph, x: VertexId) -> Edge {
    let nb = g.neighbors(x);
    debug_assert_eq!(nb.len(), 2);
    Edge::new(nb[0], nb[1])
}

/// True iff every simplicial vertex has the same neighborhood `{x, y}` and
/// every other vertex outside `{x, y}` is simplicial.
pub fn is_book(g: &SimpleGraph) -> Result<bool> {
    require_two_tree(g, 3)?;
    Ok(is_book_unchecked(g))
}

pub(crate) fn is_book_unchecked(g: &SimpleGraph) -> bool {
    if g.n() == 3 {
        return true;
    }
    let simp = degree_two(g);
    let spine = neighborhood(g, simp[0]);
    simp.len() == g.n() - 2 && simp.iter().all(|&s| neighborhood(g, s) == spine)
}

/// For a 2-tree with exactly two simplicial vertices, an elimination order
/// that walks a Hamiltonian path, starting at the smaller simplicial vertex.
pub fn path_ordering_if_two_simplicial(g: &SimpleGraph) -> Result<Option<TwoSimplicialOrdering>> {
    require_two_tree(g, 2)?;
    if g.n() == 2 {
        return Ok(Some(TwoSimplicialOrdering { order: vec![0, 1] }));
    }
    let simp = degree_two(g);
    if simp.len() != 2 {
        return Ok(None);
    }
    Ok(Some(TwoSimplicialOrdering {
        order: path_order_between(g, simp[0], simp[1]),
    }))
}

/// Elimination order of a two-simplicial 2-tree that deletes `start` first,
/// keeps `end` until last, and always deletes the smallest eligible vertex
/// other than `end`.
pub(crate) fn path_order_between(g: &SimpleGraph, start: VertexId, end: VertexId) -> Vec<VertexId> {
    let n = g.n();
    let mut alive = vec![true; n];
    alive[start] = false;
    let mut order = Vec::with_capacity(n);
    order.push(start);
    while order.len() + 1 < n {
        let remaining = n - order.len();
        let next = (0..n)
            .find(|&x| {
                alive[x] && x != end && {
                    let d = g.neighbors(x).iter().filter(|&&y| alive[y]).count();
                    d == 2 || remaining <= 2
                }
            })
            .expect("a 2-tree with two simplicial vertices always has one besides `end`");
        alive[next] = false;
        order.push(next);
    }
    order.push(end);
    order
}
