//! The two count-changing surgeries on 2-trees and the corpus survey that
//! checks which 2-trees are extremal.
//!
//! [`improve_min`] takes two simplicial vertices with different neighborhoods
//! and re-homes both onto one of those neighborhoods; one of the two results
//! has strictly fewer spanning trees. [`improve_max`] peels the graph down to
//! a two-simplicial core, finds the crucial edge where a hanging piece is
//! attached, and moves that piece onto an edge at the end of the core; the
//! result has strictly more spanning trees.

use std::collections::{BTreeMap, VecDeque};

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::counting::{
    count_book, count_containing_or_zero, count_two_simplicial, kirchhoff_count,
};
use crate::error::{Error, Result};
use crate::generators::{all_labeled_two_trees, random_two_tree_with};
use crate::graph::{realize, BigCount, DisjointSets, Edge, SimpleGraph, VertexId};
use crate::recognition::{
    degree_two, is_book_unchecked, neighborhood, path_order_between, recognize,
};

/// Largest `n` for [`survey_extremal`].
pub const SURVEY_MAX_N: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Winner {
    G1,
    G2,
}

/// Quantities of one book-ward split.
///
/// `h` is `G - {v1, v2}` relabeled so that `h_labels[i]` is its vertex `i` in
/// `G`; `e1`, `e2` are the neighborhoods of `v1`, `v2` in `G` labels.
#[derive(Clone, Debug)]
pub struct SplitReport {
    pub v1: VertexId,
    pub v2: VertexId,
    pub e1: Edge,
    pub e2: Edge,
    pub graph_h: SimpleGraph,
    pub h_labels: Vec<VertexId>,
    pub t_h: BigCount,
    pub beta1: BigCount,
    pub beta2: BigCount,
    pub gamma: BigCount,
    pub t_g: BigCount,
    pub g1: SimpleGraph,
    pub g2: SimpleGraph,
    pub t_g1: BigCount,
    pub t_g2: BigCount,
    pub winner: Winner,
}

impl SplitReport {
    pub fn winner_graph(&self) -> &SimpleGraph {
        match self.winner {
            Winner::G1 => &self.g1,
            Winner::G2 => &self.g2,
        }
    }

    pub fn winner_count(&self) -> &BigCount {
        match self.winner {
            Winner::G1 => &self.t_g1,
            Winner::G2 => &self.t_g2,
        }
    }

    /// `T(G) = 4T(H) + 2b1 + 2b2 + g`, `T(G_i) = 4T(H) + 4b_i`, `g >= 1`,
    /// `T(G1) + T(G2) < 2T(G)`.
    pub fn identities_hold(&self) -> bool {
        let four_h = &self.t_h * 4;
        let t_g = &(&(&four_h + &(&self.beta1 * 2)) + &(&self.beta2 * 2)) + &self.gamma;
        let t_g1 = &four_h + &(&self.beta1 * 4);
        let t_g2 = &four_h + &(&self.beta2 * 4);
        t_g == self.t_g
            && t_g1 == self.t_g1
            && t_g2 == self.t_g2
            && !self.gamma.is_zero()
            && &self.t_g1 + &self.t_g2 < &self.t_g * 2
    }
}

fn require_two_tree_n(g: &SimpleGraph, min_n: usize) -> Result<()> {
    recognize(g)?;
    if g.n() < min_n {
        return Err(Error::out_of_range("n", g.n(), &format!("n >= {min_n}")));
    }
    Ok(())
}

/// `g` with the two edges at degree-2 vertex `x` replaced by edges to `target`.
fn rehome(g: &SimpleGraph, x: VertexId, target: Edge) -> SimpleGraph {
    let kept = g.edges().filter(|e| !e.contains(x));
    let added = [Edge::new(x, target.u()), Edge::new(x, target.v())];
    SimpleGraph::from_edges(g.n(), kept.chain(added)).expect("re-homed 2-tree stays simple")
}

/// One split step towards the book.
///
/// Uses the lexicographically smallest pair of simplicial vertices whose
/// neighborhoods differ. The winner is the result with fewer trees, `G1` on a tie.
pub fn improve_min(g: &SimpleGraph) -> Result<SplitReport> {
    require_two_tree_n(g, 5)?;
    if is_book_unchecked(g) {
        return Err(Error::IsBook);
    }
    let simp = degree_two(g);
    let (v1, v2) = simp
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| simp[i + 1..].iter().map(move |&b| (a, b)))
        .find(|&(a, b)| neighborhood(g, a) != neighborhood(g, b))
        .expect("a non-book 2-tree has two simplicial vertices with different neighborhoods");
    let (e1, e2) = (neighborhood(g, v1), neighborhood(g, v2));

    let h_labels: Vec<VertexId> = (0..g.n()).filter(|&x| x != v1 && x != v2).collect();
    let mut local = vec![usize::MAX; g.n()];
    for (i, &x) in h_labels.iter().enumerate() {
        local[x] = i;
    }
    let to_h = |e: Edge| Edge::new(local[e.u()], local[e.v()]);
    let graph_h = g.induced(&h_labels);

    let t_h = kirchhoff_count(&graph_h);
    let beta1 = count_containing_or_zero(&graph_h, &[to_h(e1)])?;
    let beta2 = count_containing_or_zero(&graph_h, &[to_h(e2)])?;
    let gamma = count_containing_or_zero(&graph_h, &[to_h(e1), to_h(e2)])?;

    let g1 = rehome(g, v2, e1);
    let g2 = rehome(g, v1, e2);
    let (t_g, t_g1, t_g2) = (
        kirchhoff_count(g),
        kirchhoff_count(&g1),
        kirchhoff_count(&g2),
    );
    let winner = if t_g2 < t_g1 { Winner::G2 } else { Winner::G1 };

    Ok(SplitReport {
        v1,
        v2,
        e1,
        e2,
        graph_h,
        h_labels,
        t_h,
        beta1,
        beta2,
        gamma,
        t_g,
        g1,
        g2,
        t_g1,
        t_g2,
        winner,
    })
}

/// Applies [`improve_min`] until a book is reached; returns every step taken.
pub fn descend_to_book(g: &SimpleGraph) -> Result<Vec<SplitReport>> {
    let mut steps = Vec::new();
    let mut current = g.clone();
    loop {
        match improve_min(&current) {
            Ok(report) => {
                current = report.winner_graph().clone();
                steps.push(report);
            }
            Err(Error::IsBook) => return Ok(steps),
            Err(e) => return Err(e),
        }
    }
}

/// Which chain edge the crucial edge turned out to be.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CrucialRole {
    /// The edge the first chain vertex attaches to.
    E0,
    /// The other edge at the first chain vertex.
    EPrime,
}

/// Record of one reattachment step towards a two-simplicial 2-tree.
///
/// The core `H'` is listed as `core_order` = `(v_q, ..., v_1)`; the chain
/// vertices `w_1..w_p` are its first `p` entries read backwards.
#[derive(Clone, Debug)]
pub struct SurgeryReport {
    pub v: VertexId,
    pub v_prime: VertexId,
    pub core_order: Vec<VertexId>,
    pub crucial_edge: Edge,
    pub role: CrucialRole,
    pub p: usize,
    /// `w_1, ..., w_p`; `w_p = v`.
    pub chain: Vec<VertexId>,
    pub e0: Edge,
    /// Edge at `v` that `J` is moved onto.
    pub ep: Edge,
    /// Vertices of `J` other than the crucial edge's endpoints.
    pub j_vertices: Vec<VertexId>,
    /// `J` as a graph on all `n` labels (vertices outside `J` isolated).
    pub subtree_j: SimpleGraph,
    pub alpha: BigCount,
    pub beta: BigCount,
    /// `T(G_p; e_p)` and `T(G_p; e)` on the chain graph `G_p = G - (J - e)`.
    pub t_gp_ep: BigCount,
    pub t_gp_e: BigCount,
    pub g_prime: SimpleGraph,
    pub t_g: BigCount,
    pub t_gprime: BigCount,
}

impl SurgeryReport {
    pub fn improves(&self) -> bool {
        self.t_gprime > self.t_g
    }
}

/// Core of `g` after repeatedly deleting the smallest simplicial vertex
/// outside `{v, v_prime}`, as an ascending vertex list.
fn peel_to_core(g: &SimpleGraph, v: VertexId, v_prime: VertexId) -> Vec<VertexId> {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|x| g.degree(x)).collect();
    loop {
        let next = (0..n).find(|&x| alive[x] && x != v && x != v_prime && degree[x] == 2);
        let Some(x) = next else { break };
        alive[x] = false;
        for &y in g.neighbors(x) {
            if alive[y] {
                degree[y] -= 1;
            }
        }
    }
    (0..n).filter(|&x| alive[x]).collect()
}

/// Connected components of `g` restricted to vertices with `inside[x] == false`.
fn outside_components(g: &SimpleGraph, inside: &[bool]) -> Vec<Vec<VertexId>> {
    let n = g.n();
    let mut seen = inside.to_vec();
    let mut comps = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in g.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    comp.push(y);
                    queue.push_back(y);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

fn internal(msg: String) -> Error {
    Error::InvalidArgument(format!("surgery invariant violated: {msg}"))
}

/// One reattachment step that strictly increases the spanning-tree count of
/// a 2-tree with more than two simplicial vertices.
///
/// `v`, `v'` are the two smallest simplicial vertices; peeling deletes the
/// smallest eligible simplicial vertex first; `e_p` is the edge from `v` to
/// its smaller neighbor; the crucial edge's smaller endpoint is mapped onto
/// `e_p`'s smaller endpoint.
pub fn improve_max(g: &SimpleGraph) -> Result<SurgeryReport> {
    recognize(g)?;
    let n = g.n();
    let simp = degree_two(g);
    if n >= 4 && simp.len() == 2 {
        return Err(Error::AlreadyTwoSimplicial);
    }
    if n < 5 {
        return Err(Error::out_of_range("n", n, "n >= 5"));
    }
    let (v, v_prime) = (simp[0], simp[1]);

    let core = peel_to_core(g, v, v_prime);
    let core_graph = g.induced(&core);
    let mut local = vec![usize::MAX; n];
    for (i, &x) in core.iter().enumerate() {
        local[x] = i;
    }
    if degree_two(&core_graph).len() != 2 {
        return Err(internal(
            "peeled core does not have exactly two simplicial vertices".into(),
        ));
    }
    let core_order: Vec<VertexId> = path_order_between(&core_graph, local[v], local[v_prime])
        .into_iter()
        .map(|i| core[i])
        .collect();
    let q = core_order.len();
    // index[x] = i for x = v_i; v_q = v, v_1 = v'
    let mut index = vec![0usize; n];
    for (k, &x) in core_order.iter().enumerate() {
        index[x] = q - k;
    }
    let vertex_at = |i: usize| core_order[q - i];
    // neighbors of v_i among v_{i-1}, ..., v_1
    let lower_edge = |i: usize| -> Option<Edge> {
        let x = vertex_at(i);
        let lower: Vec<VertexId> = g
            .neighbors(x)
            .iter()
            .copied()
            .filter(|&y| index[y] != 0 && index[y] < i)
            .collect();
        (lower.len() == 2).then(|| Edge::new(lower[0], lower[1]))
    };

    let mut in_core = vec![false; n];
    for &x in &core {
        in_core[x] = true;
    }
    let mut hanging: BTreeMap<Edge, Vec<VertexId>> = BTreeMap::new();
    for comp in outside_components(g, &in_core) {
        let mut touch: Vec<VertexId> = comp
            .iter()
            .flat_map(|&x| g.neighbors(x).iter().copied())
            .filter(|&y| in_core[y])
            .collect();
        touch.sort_unstable();
        touch.dedup();
        if touch.len() != 2 || !g.is_adjacent(touch[0], touch[1]) {
            return Err(internal(format!("hanging piece attaches to {touch:?}")));
        }
        hanging
            .entry(Edge::new(touch[0], touch[1]))
            .or_default()
            .extend(comp);
    }
    if hanging.is_empty() {
        return Err(internal("no hanging piece".into()));
    }

    // An edge {v_a, v_b} (a > b) qualifies at index a, and at every c whose
    // lower neighbors are exactly {v_a, v_b}.
    let qualifying = |e: Edge| -> Vec<(usize, bool)> {
        let hi = index[e.u()].max(index[e.v()]);
        let mut out = vec![(hi, true)];
        out.extend(
            (3..=q)
                .filter(|&c| lower_edge(c) == Some(e))
                .map(|c| (c, false)),
        );
        out
    };
    let j_star = hanging
        .keys()
        .flat_map(|&e| qualifying(e))
        .map(|(j, _)| j)
        .max()
        .expect("at least one hanging edge");
    let mut candidates: Vec<(bool, Edge)> = hanging
        .keys()
        .flat_map(|&e| {
            qualifying(e)
                .into_iter()
                .filter(|&(j, _)| j == j_star)
                .map(move |(_, incident)| (incident, e))
        })
        .collect();
    // incident-to-v_{j*} first, then canonical edge order
    candidates.sort_by_key(|&(incident, e)| (!incident, e));
    let crucial = candidates[0].1;

    let p = q - j_star + 1;
    let chain: Vec<VertexId> = (1..=p).map(|i| vertex_at(j_star - 1 + i)).collect();
    let e0 = lower_edge(j_star).ok_or_else(|| internal(format!("v_{j_star} has no lower edge")))?;
    let role = if crucial == e0 {
        CrucialRole::E0
    } else {
        CrucialRole::EPrime
    };
    let nv = g.neighbors(v);
    let ep = Edge::new(v, nv[0].min(nv[1]));

    let j_vertices = hanging[&crucial].clone();
    let mut in_j = vec![false; n];
    for &x in &j_vertices {
        in_j[x] = true;
    }
    let j_edges: Vec<Edge> = g.edges().filter(|e| in_j[e.u()] || in_j[e.v()]).collect();
    let subtree_j = SimpleGraph::from_edges(n, j_edges.iter().copied().chain([crucial]))
        .expect("subgraph of a simple graph");

    let gp_vertices: Vec<VertexId> = (0..n).filter(|&x| !in_j[x]).collect();
    let gp = g.induced(&gp_vertices);
    let mut gp_local = vec![usize::MAX; n];
    for (i, &x) in gp_vertices.iter().enumerate() {
        gp_local[x] = i;
    }
    let to_gp = |e: Edge| Edge::new(gp_local[e.u()], gp_local[e.v()]);
    let t_gp_ep = count_containing_or_zero(&gp, &[to_gp(ep)])?;
    let t_gp_e = count_containing_or_zero(&gp, &[to_gp(crucial)])?;

    let mut in_chain = vec![false; n];
    for &w in &chain {
        in_chain[w] = true;
    }
    let host_vertices: Vec<VertexId> = gp_vertices
        .iter()
        .copied()
        .filter(|&x| !in_chain[x])
        .collect();
    let host = g.induced(&host_vertices);
    let mut host_local = vec![usize::MAX; n];
    for (i, &x) in host_vertices.iter().enumerate() {
        host_local[x] = i;
    }
    let alpha = kirchhoff_count(&host);
    let beta =
        count_containing_or_zero(&host, &[Edge::new(host_local[e0.u()], host_local[e0.v()])])?;

    let remap = |x: VertexId| -> VertexId {
        if x == crucial.u() {
            ep.u()
        } else if x == crucial.v() {
            ep.v()
        } else {
            x
        }
    };
    let moved = j_edges
        .iter()
        .map(|e| Edge::new(remap(e.u()), remap(e.v())));
    let kept = g.edges().filter(|e| !in_j[e.u()] && !in_j[e.v()]);
    let g_prime = SimpleGraph::from_edges(n, kept.chain(moved))
        .map_err(|e| internal(format!("reattached graph is not simple: {e}")))?;
    recognize(&g_prime).map_err(|e| internal(format!("reattached graph is not a 2-tree: {e}")))?;

    Ok(SurgeryReport {
        v,
        v_prime,
        core_order,
        crucial_edge: crucial,
        role,
        p,
        chain,
        e0,
        ep,
        j_vertices,
        subtree_j,
        alpha,
        beta,
        t_gp_ep,
        t_gp_e,
        t_g: kirchhoff_count(g),
        t_gprime: kirchhoff_count(&g_prime),
        g_prime,
    })
}

/// Applies [`improve_max`] until the graph has exactly two simplicial vertices.
pub fn ascend_to_two_simplicial(g: &SimpleGraph) -> Result<Vec<SurgeryReport>> {
    let mut steps = Vec::new();
    let mut current = g.clone();
    loop {
        match improve_max(&current) {
            Ok(report) => {
                current = report.g_prime.clone();
                steps.push(report);
            }
            Err(Error::AlreadyTwoSimplicial) => return Ok(steps),
            Err(e) => return Err(e),
        }
    }
}

fn support(g: &SimpleGraph) -> Vec<VertexId> {
    (0..g.n()).filter(|&x| g.degree(x) > 0).collect()
}

/// Checks the four counting identities obtained by splitting on a simplicial
/// vertex `v` of `j` outside the shared edge, for both `e = N_J(v)` outside
/// and inside the required set.
///
/// `h` and `j` live on the same label set `0..n`; each one's vertex set is its
/// non-isolated vertices. They must overlap in exactly the endpoints of
/// `shared` and together cover every label. `s` must be an acyclic subset of
/// `E(J - v)`.
pub fn glue_identity_check(
    h: &SimpleGraph,
    j: &SimpleGraph,
    shared: Edge,
    s: &[Edge],
) -> Result<bool> {
    if h.n() != j.n() {
        return Err(Error::BadGlue(format!(
            "label sets differ: {} vs {}",
            h.n(),
            j.n()
        )));
    }
    let n = h.n();
    if !h.has_edge(shared) || !j.has_edge(shared) {
        return Err(Error::BadGlue(format!("both pieces must contain {shared}")));
    }
    let (vh, vj) = (support(h), support(j));
    let overlap: Vec<VertexId> = vh.iter().copied().filter(|x| vj.contains(x)).collect();
    if overlap != [shared.u(), shared.v()] {
        return Err(Error::BadGlue(format!(
            "pieces overlap in {overlap:?}, not exactly {shared}"
        )));
    }
    if vh.len() + vj.len() - 2 != n {
        return Err(Error::BadGlue("pieces do not cover every label".into()));
    }
    recognize(&h.induced(&vh))?;
    let j_local = j.induced(&vj);
    recognize(&j_local)?;
    if vj.len() < 3 {
        return Err(Error::BadGlue(
            "j needs a vertex outside the shared edge".into(),
        ));
    }

    let v = glue_split_vertex(j, shared).ok_or_else(|| {
        Error::BadGlue("j has no simplicial vertex outside the shared edge".into())
    })?;
    let (w, z) = (j.neighbors(v)[0], j.neighbors(v)[1]);
    let e = Edge::new(w, z);
    let (vw, vz) = (Edge::new(v, w), Edge::new(v, z));

    let glued = SimpleGraph::from_edges(n, h.edges().chain(j.edges().filter(|&f| f != shared)))
        .map_err(|err| Error::BadGlue(err.to_string()))?;
    let keep: Vec<VertexId> = (0..n).filter(|&x| x != v).collect();
    let glued_minus = glued.induced(&keep);
    let shift = |f: Edge| {
        Edge::new(
            f.u() - usize::from(f.u() > v),
            f.v() - usize::from(f.v() > v),
        )
    };

    if let Some(&f) = s.iter().find(|f| f.contains(v) || !j.has_edge(**f)) {
        return Err(Error::ForeignEdge(f));
    }
    crate::counting::EdgeCountQuery::new(&glued, s)?;

    let count = |g: &SimpleGraph, set: &[Edge]| count_containing_or_zero(g, set);
    let with = |base: &[Edge], extra: &[Edge]| -> Vec<Edge> {
        let mut out = base.to_vec();
        out.extend_from_slice(extra);
        out.sort_unstable();
        out.dedup();
        out
    };
    let shifted = |set: &[Edge]| -> Vec<Edge> { set.iter().map(|&f| shift(f)).collect() };

    // e not required
    let s0: Vec<Edge> = s.iter().copied().filter(|&f| f != e).collect();
    let t = count(&glued_minus, &shifted(&s0))?;
    let sv = count(&glued_minus, &shifted(&with(&s0, &[e])))?;
    let t_plus_s = &t + &sv;
    let mut ok = count(&glued, &s0)? == &(&t + &t) + &sv
        && count(&glued, &with(&s0, &[vw]))? == t_plus_s
        && count(&glued, &with(&s0, &[vz]))? == t_plus_s
        && count(&glued, &with(&s0, &[vw, vz]))? == sv;

    // e required, when that keeps the set acyclic
    let s1 = with(&s0, &[e]);
    if crate::counting::EdgeCountQuery::new(&glued, &s1).is_ok() {
        let sv = count(&glued_minus, &shifted(&s1))?;
        ok &= count(&glued, &s1)? == &sv + &sv
            && count(&glued, &with(&s1, &[vw]))? == sv
            && count(&glued, &with(&s1, &[vz]))? == sv
            && count(&glued, &with(&s1, &[vw, vz]))?.is_zero();
    }
    Ok(ok)
}

/// The vertex of `j` that [`glue_identity_check`] splits on: its smallest
/// degree-2 vertex off the shared edge.
pub fn glue_split_vertex(j: &SimpleGraph, shared: Edge) -> Option<VertexId> {
    (0..j.n()).find(|&x| j.degree(x) == 2 && !shared.contains(x))
}

/// Inputs for one [`glue_identity_check`] call.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueInstance {
    pub h: SimpleGraph,
    pub j: SimpleGraph,
    pub shared: Edge,
    pub s: Vec<Edge>,
}

/// Random `h` (2..=max_side vertices) and `j` (3..=max_side vertices) glued
/// along a random edge of each, with a random acyclic `s` inside `J - v`.
pub fn random_glue_instance<R: Rng>(rng: &mut R, max_side: usize) -> Result<GlueInstance> {
    if max_side < 3 {
        return Err(Error::out_of_range("max_side", max_side, "max_side >= 3"));
    }
    let a = rng.gen_range(2..=max_side);
    let b = rng.gen_range(3..=max_side);
    let h_local = realize(&random_two_tree_with(a, rng));
    let j_local = realize(&random_two_tree_with(b, rng));
    let h_edges = h_local.edge_vec();
    let j_edges = j_local.edge_vec();
    let shared = h_edges[rng.gen_range(0..h_edges.len())];
    let j_shared = j_edges[rng.gen_range(0..j_edges.len())];
    let n = a + b - 2;
    let mut map = vec![usize::MAX; b];
    map[j_shared.u()] = shared.u();
    map[j_shared.v()] = shared.v();
    for (next, slot) in (a..).zip(map.iter_mut().filter(|x| **x == usize::MAX)) {
        *slot = next;
    }
    let h = SimpleGraph::from_edges(n, h_edges)?;
    let j = SimpleGraph::from_edges(n, j_edges.iter().map(|e| Edge::new(map[e.u()], map[e.v()])))?;
    let v = glue_split_vertex(&j, shared)
        .expect("a 2-tree with 3+ vertices has a simplicial vertex off any edge");
    let mut forest = DisjointSets::new(n);
    let mut s = Vec::new();
    for e in j.edges().filter(|e| !e.contains(v)) {
        if rng.gen_range(0..2) == 1 && forest.union(e.u(), e.v()) {
            s.push(e);
        }
    }
    Ok(GlueInstance { h, j, shared, s })
}

/// Extremal summary over every labeled 2-tree on `n` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremalSummary {
    pub n: usize,
    pub corpus_size: usize,
    pub min: BigCount,
    pub max: BigCount,
    pub min_attainers: usize,
    pub max_attainers: usize,
    pub min_attainers_all_books: bool,
    pub max_attainers_all_two_simplicial: bool,
    /// Every book attains `min` and every two-simplicial graph attains `max`.
    pub classes_attain_extremes: bool,
    pub min_matches_book_formula: bool,
    pub max_matches_fibonacci_formula: bool,
}

impl ExtremalSummary {
    pub fn passes(&self) -> bool {
        self.min_attainers_all_books
            && self.max_attainers_all_two_simplicial
            && self.classes_attain_extremes
            && self.min_matches_book_formula
            && self.max_matches_fibonacci_formula
    }
}

pub fn survey_extremal(n: usize) -> Result<ExtremalSummary> {
    if n > SURVEY_MAX_N {
        return Err(Error::TooLarge {
            what: format!("extremal survey for n = {n}"),
            limit: format!("n <= {SURVEY_MAX_N}"),
        });
    }
    if n < 4 {
        return Err(Error::out_of_range("n", n, "4 <= n <= 8"));
    }
    let corpus = all_labeled_two_trees(n)?;
    // (count, is book, has two simplicial vertices), in corpus order
    let rows: Vec<(BigCount, bool, bool)> = corpus
        .par_iter()
        .map(|g| {
            (
                kirchhoff_count(g),
                is_book_unchecked(g),
                degree_two(g).len() == 2,
            )
        })
        .collect();
    let min = rows.iter().map(|r| &r.0).min().cloned().unwrap_or_default();
    let max = rows.iter().map(|r| &r.0).max().cloned().unwrap_or_default();
    let at_min: Vec<_> = rows.iter().filter(|r| r.0 == min).collect();
    let at_max: Vec<_> = rows.iter().filter(|r| r.0 == max).collect();
    let classes_attain_extremes = rows
        .iter()
        .all(|(c, book, two)| (!book || *c == min) && (!two || *c == max));
    Ok(ExtremalSummary {
        n,
        corpus_size: corpus.len(),
        min_attainers: at_min.len(),
        max_attainers: at_max.len(),
        min_attainers_all_books: at_min.iter().all(|r| r.1),
        max_attainers_all_two_simplicial: at_max.iter().all(|r| r.2),
        classes_attain_extremes,
        min_matches_book_formula: min == count_book(n)?,
        max_matches_fibonacci_formula: max == count_two_simplicial(n)?,
        min,
        max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::brute_force_count;
    use crate::generators::{book, fan, path_square};

    fn bc(v: u64) -> BigCount {
        BigCount::from(v)
    }

    #[test]
    fn split_on_path_square_5() {
        let g = realize(&path_square(5).unwrap());
        let r = improve_min(&g).unwrap();
        assert_eq!((r.v1, r.v2), (0, 4));
        assert_eq!(r.graph_h.m(), 3);
        assert_eq!(
            (r.beta1.clone(), r.beta2.clone(), r.gamma.clone()),
            (bc(2), bc(2), bc(1))
        );
        assert_eq!(r.t_g, bc(21));
        assert_eq!((r.t_g1.clone(), r.t_g2.clone()), (bc(20), bc(20)));
        assert_eq!(r.winner, Winner::G1);
        assert!(r.identities_hold());
        // brute force on the explicit graphs
        assert_eq!(brute_force_count(&g).unwrap(), bc(21));
        assert_eq!(brute_force_count(&r.g1).unwrap(), bc(20));
        assert_eq!(brute_force_count(&r.g2).unwrap(), bc(20));
        assert!(is_book_unchecked(&r.g1));
    }

    #[test]
    fn split_on_fan_6() {
        let g = realize(&fan(6).unwrap());
        let r = improve_min(&g).unwrap();
        assert!(r.winner_count() < &bc(55));
        assert!(r.identities_hold());
    }

    #[test]
    fn split_preconditions() {
        assert_eq!(
            improve_min(&realize(&book(6).unwrap())).unwrap_err(),
            Error::IsBook
        );
        assert!(matches!(
            improve_min(&realize(&path_square(4).unwrap())),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn descent_reaches_book() {
        let g = realize(&path_square(8).unwrap());
        let steps = descend_to_book(&g).unwrap();
        assert!(!steps.is_empty());
        let last = steps.last().unwrap().winner_graph();
        assert!(is_book_unchecked(last));
        assert_eq!(kirchhoff_count(last), count_book(8).unwrap());
    }

    #[test]
    fn surgery_on_book_5() {
        let g = realize(&book(5).unwrap());
        let r = improve_max(&g).unwrap();
        assert_eq!(r.t_g, bc(20));
        assert_eq!(r.t_gprime, bc(21));
        assert!(r.t_gp_ep > r.t_gp_e);
        assert_eq!(degree_two(&r.g_prime).len(), 2);
    }

    #[test]
    fn surgery_preconditions() {
        assert_eq!(
            improve_max(&realize(&path_square(7).unwrap())).unwrap_err(),
            Error::AlreadyTwoSimplicial
        );
        assert!(matches!(
            improve_max(&realize(&book(3).unwrap())),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn ascent_reaches_fibonacci_count() {
        let g = realize(&book(8).unwrap());
        let steps = ascend_to_two_simplicial(&g).unwrap();
        assert!(steps.iter().all(SurgeryReport::improves));
        assert_eq!(
            &steps.last().unwrap().t_gprime,
            &count_two_simplicial(8).unwrap()
        );
    }

    fn glue(
        h_edges: &[(usize, usize)],
        j_edges: &[(usize, usize)],
        n: usize,
    ) -> (SimpleGraph, SimpleGraph) {
        let mk = |es: &[(usize, usize)]| {
            SimpleGraph::from_edges(n, es.iter().map(|&(a, b)| Edge::new(a, b))).unwrap()
        };
        (mk(h_edges), mk(j_edges))
    }

    #[test]
    fn glue_two_triangles() {
        let (h, j) = glue(&[(0, 1), (0, 2), (1, 2)], &[(0, 1), (0, 3), (1, 3)], 4);
        assert!(glue_identity_check(&h, &j, Edge::new(0, 1), &[]).unwrap());
    }

    #[test]
    fn glue_book_and_path_square() {
        // h = book(4) on {0,1,2,3} with spine {0,1}; j = path_square(4) on {0,1,4,5}
        let (h, j) = glue(
            &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)],
            &[(0, 1), (0, 4), (1, 4), (1, 5), (4, 5)],
            6,
        );
        // J' = j minus its simplicial vertex 5; required edge {0,4} lies in J'
        assert!(glue_identity_check(&h, &j, Edge::new(0, 1), &[Edge::new(0, 4)]).unwrap());
        assert!(glue_identity_check(&h, &j, Edge::new(0, 1), &[Edge::new(1, 4)]).unwrap());
    }

    #[test]
    fn glue_rejects_cycles_and_bad_overlap() {
        let (h, j) = glue(
            &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)],
            &[(0, 1), (0, 4), (1, 4), (1, 5), (4, 5)],
            6,
        );
        let cyc = [Edge::new(0, 1), Edge::new(0, 4), Edge::new(1, 4)];
        assert_eq!(
            glue_identity_check(&h, &j, Edge::new(0, 1), &cyc).unwrap_err(),
            Error::CyclicRequirement
        );
        let (h2, j2) = glue(
            &[(0, 1), (0, 2), (1, 2)],
            &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)],
            4,
        );
        assert!(matches!(
            glue_identity_check(&h2, &j2, Edge::new(0, 1), &[]),
            Err(Error::BadGlue(_))
        ));
    }

    #[test]
    fn random_glue_instances_pass() {
        let mut rng = crate::generators::Seed(3).rng();
        for _ in 0..30 {
            let g = random_glue_instance(&mut rng, 6).unwrap();
            assert!(glue_identity_check(&g.h, &g.j, g.shared, &g.s).unwrap());
        }
    }

    #[test]
    fn survey_small() {
        let s4 = survey_extremal(4).unwrap();
        assert_eq!((s4.min.clone(), s4.max.clone()), (bc(8), bc(8)));
        assert_eq!(s4.corpus_size, 3);
        assert!(s4.passes());

        let s5 = survey_extremal(5).unwrap();
        assert_eq!((s5.min.clone(), s5.max.clone()), (bc(20), bc(21)));
        assert!(s5.passes());

        assert!(matches!(survey_extremal(9), Err(Error::TooLarge { .. })));
        assert!(survey_extremal(3).is_err());
    }
}
