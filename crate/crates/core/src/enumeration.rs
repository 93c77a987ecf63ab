//! Repetition-free listing of all spanning trees of a 2-tree.
//!
//! Vertex `v` (attached to `{x, y}`, `x < y`) extends a spanning tree `T` of
//! the previous prefix graph in two or three ways: add `vx`, add `vy`, or, when
//! `xy` is in `T`, replace `xy` by both `vx` and `vy`. Every spanning tree of
//! the full graph arises from exactly one sequence of such choices.
//!
//! [`TreeCursor`] walks that choice tree depth first with in-place apply/undo,
//! using O(n) memory. [`faithful_list`] materializes the whole list level by
//! level and exists to cross-check the cursor.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{
    is_spanning_tree, Edge, SimpleGraph, SpanningTree, TwoTreeConstruction, VertexId,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtensionChoice {
    /// Add the edge from the new vertex to the smaller attach endpoint.
    UseVX,
    /// Add the edge from the new vertex to the larger attach endpoint.
    UseVY,
    /// Replace the attach edge by both edges to the new vertex.
    SplitXY,
}

impl ExtensionChoice {
    pub const ALL: [ExtensionChoice; 3] = [Self::UseVX, Self::UseVY, Self::SplitXY];

    fn index(self) -> usize {
        self as usize
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EnumerationMode {
    #[default]
    Streaming,
    FaithfulList,
}

/// Extends a spanning tree of the prefix graph `prefix` by the next vertex
/// `v` attached to `attach`: two trees when `attach` is not in `t`, three
/// when it is.
pub fn extend_tree(
    prefix: &SimpleGraph,
    t: &SpanningTree,
    v: VertexId,
    attach: Edge,
) -> Result<Vec<SpanningTree>> {
    if v != prefix.n() {
        return Err(Error::InvalidArgument(format!(
            "new vertex must be {}, got {v}",
            prefix.n()
        )));
    }
    if !prefix.has_edge(attach) {
        return Err(Error::ForeignEdge(attach));
    }
    match is_spanning_tree(prefix, t.edges()) {
        Ok(true) => {}
        Ok(false) | Err(_) => {
            return Err(Error::InvalidTree(format!(
                "not a spanning tree of the {}-vertex prefix",
                prefix.n()
            )))
        }
    }
    Ok(extend_unchecked(t, v, attach))
}

fn extend_unchecked(t: &SpanningTree, v: VertexId, attach: Edge) -> Vec<SpanningTree> {
    let (x, y) = attach.endpoints();
    let (vx, vy) = (Edge::new(x, v), Edge::new(y, v));
    let with = |extra: &[Edge], drop: Option<Edge>| {
        let mut edges: Vec<Edge> = t
            .edges()
            .iter()
            .copied()
            .filter(|&e| Some(e) != drop)
            .collect();
        edges.extend_from_slice(extra);
        SpanningTree::from_trusted(edges)
    };
    let mut out = vec![with(&[vx], None), with(&[vy], None)];
    if t.contains(attach) {
        out.push(with(&[vx, vy], Some(attach)));
    }
    out
}

/// Edge ids: `0` is the base edge; vertex `v` owns `2(v-2)+1` (to its smaller
/// attach endpoint) and `2(v-2)+2` (to the larger one).
#[derive(Clone, Debug)]
struct EdgeTable {
    edges: Vec<Edge>,
    /// id of the attach edge of vertex `k + 2`
    attach_id: Vec<usize>,
}

impl EdgeTable {
    fn new(c: &TwoTreeConstruction) -> EdgeTable {
        let mut edges = Vec::with_capacity(2 * c.n() - 3);
        let mut ids = HashMap::with_capacity(2 * c.n());
        edges.push(c.base_edge());
        ids.insert(c.base_edge(), 0);
        let mut attach_id = Vec::with_capacity(c.n() - 2);
        for a in c.attachments() {
            attach_id.push(ids[&a.attach]);
            for end in [a.attach.u(), a.attach.v()] {
                let e = Edge::new(end, a.vertex);
                ids.insert(e, edges.len());
                edges.push(e);
            }
        }
        EdgeTable { edges, attach_id }
    }

    fn vx(level: usize) -> usize {
        2 * level + 1
    }

    fn vy(level: usize) -> usize {
        2 * level + 2
    }
}

/// Depth-first cursor over all spanning trees of a construction.
///
/// Trees come out in lexicographic order of their choice vectors, with
/// `UseVX < UseVY < SplitXY` at every level and the earliest-added vertex as
/// the most significant position.
#[derive(Clone, Debug)]
pub struct TreeCursor {
    table: EdgeTable,
    in_tree: Vec<bool>,
    /// applied choice per level; `choices.len()` is the current depth
    choices: Vec<ExtensionChoice>,
    levels: usize,
    started: bool,
    exhausted: bool,
}

impl TreeCursor {
    pub fn new(c: &TwoTreeConstruction) -> TreeCursor {
        let table = EdgeTable::new(c);
        let mut in_tree = vec![false; table.edges.len()];
        in_tree[0] = true;
        TreeCursor {
            table,
            in_tree,
            choices: Vec::with_capacity(c.n() - 2),
            levels: c.n() - 2,
            started: false,
            exhausted: false,
        }
    }

    fn legal(&self, level: usize, choice: ExtensionChoice) -> bool {
        choice != ExtensionChoice::SplitXY || self.in_tree[self.table.attach_id[level]]
    }

    fn apply(&mut self, choice: ExtensionChoice) {
        let level = self.choices.len();
        match choice {
            ExtensionChoice::UseVX => self.in_tree[EdgeTable::vx(level)] = true,
            ExtensionChoice::UseVY => self.in_tree[EdgeTable::vy(level)] = true,
            ExtensionChoice::SplitXY => {
                self.in_tree[self.table.attach_id[level]] = false;
                self.in_tree[EdgeTable::vx(level)] = true;
                self.in_tree[EdgeTable::vy(level)] = true;
            }
        }
        self.choices.push(choice);
    }

    fn undo(&mut self) -> ExtensionChoice {
        let choice = self.choices.pop().expect("undo below depth 0");
        let level = self.choices.len();
        match choice {
            ExtensionChoice::UseVX => self.in_tree[EdgeTable::vx(level)] = false,
            ExtensionChoice::UseVY => self.in_tree[EdgeTable::vy(level)] = false,
            ExtensionChoice::SplitXY => {
                self.in_tree[self.table.attach_id[level]] = true;
                self.in_tree[EdgeTable::vx(level)] = false;
                self.in_tree[EdgeTable::vy(level)] = false;
            }
        }
        choice
    }

    fn descend(&mut self) {
        // UseVX is always legal
        while self.choices.len() < self.levels {
            self.apply(ExtensionChoice::UseVX);
        }
    }

    /// Moves to the next spanning tree; false once every tree has been visited.
    pub fn advance(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        if !self.started {
            self.started = true;
            self.descend();
            return true;
        }
        while !self.choices.is_empty() {
            let level = self.choices.len() - 1;
            let last = self.undo();
            let next = ExtensionChoice::ALL[last.index() + 1..]
                .iter()
                .copied()
                .find(|&c| self.legal(level, c));
            if let Some(c) = next {
                self.apply(c);
                self.descend();
                return true;
            }
        }
        self.exhausted = true;
        false
    }

    /// Choice vector of the current tree.
    pub fn choices(&self) -> &[ExtensionChoice] {
        &self.choices
    }

    /// Edges of the current tree in edge-id order (not canonical order).
    pub fn current_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.in_tree
            .iter()
            .zip(&self.table.edges)
            .filter(|(&on, _)| on)
            .map(|(_, &e)| e)
    }

    pub fn current_tree(&self) -> SpanningTree {
        SpanningTree::from_trusted(self.current_edges().collect())
    }
}

impl Iterator for TreeCursor {
    type Item = SpanningTree;

    fn next(&mut self) -> Option<SpanningTree> {
        self.advance().then(|| self.current_tree())
    }
}

/// Builds the full list level by level, each parent's children appended in
/// the order add-vx, add-vy, split.
pub fn faithful_list(c: &TwoTreeConstruction) -> Vec<SpanningTree> {
    let mut list = vec![SpanningTree::from_trusted(vec![c.base_edge()])];
    for a in c.attachments() {
        list = list
            .iter()
            .flat_map(|t| extend_unchecked(t, a.vertex, a.attach))
            .collect();
    }
    list
}

pub enum TreeStream {
    Streaming(TreeCursor),
    Listed(std::vec::IntoIter<SpanningTree>),
}

impl Iterator for TreeStream {
    type Item = SpanningTree;

    fn next(&mut self) -> Option<SpanningTree> {
        match self {
            TreeStream::Streaming(c) => c.next(),
            TreeStream::Listed(it) => it.next(),
        }
    }
}

/// Every spanning tree of `realize(c)`, each exactly once.
pub fn enumerate_all(c: &TwoTreeConstruction, mode: EnumerationMode) -> TreeStream {
    match mode {
        EnumerationMode::Streaming => TreeStream::Streaming(TreeCursor::new(c)),
        EnumerationMode::FaithfulList => TreeStream::Listed(faithful_list(c).into_iter()),
    }
}

/// Number of trees the cursor visits, without materializing any of them.
pub fn count_by_enumeration(c: &TwoTreeConstruction) -> u64 {
    let mut cursor = TreeCursor::new(c);
    let mut count = 0;
    while cursor.advance() {
        count += 1;
    }
    count
}

/// The tree reached by applying `choices` in construction order.
pub fn choice_vector_decode(
    c: &TwoTreeConstruction,
    choices: &[ExtensionChoice],
) -> Result<SpanningTree> {
    if choices.len() != c.n() - 2 {
        return Err(Error::InvalidArgument(format!(
            "expected {} choices, got {}",
            c.n() - 2,
            choices.len()
        )));
    }
    let mut cursor = TreeCursor::new(c);
    for (level, &choice) in choices.iter().enumerate() {
        if !cursor.legal(level, choice) {
            return Err(Error::IllegalSplit {
                vertex: level + 2,
                attach: c.attach_of(level + 2),
            });
        }
        cursor.apply(choice);
    }
    Ok(cursor.current_tree())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{prefix_graph, realize};
    use std::collections::HashSet;
    use ExtensionChoice::*;

    fn e(a: usize, b: usize) -> Edge {
        Edge::new(a, b)
    }

    fn book(n: usize) -> TwoTreeConstruction {
        TwoTreeConstruction::new(vec![e(0, 1); n - 2]).unwrap()
    }

    #[test]
    fn extend_from_k2() {
        let k2 = realize(&TwoTreeConstruction::base());
        let t = SpanningTree::new(&k2, vec![e(0, 1)]).unwrap();
        let trees = extend_tree(&k2, &t, 2, e(0, 1)).unwrap();
        let got: Vec<Vec<Edge>> = trees.iter().map(|t| t.edges().to_vec()).collect();
        assert_eq!(
            got,
            vec![
                vec![e(0, 1), e(0, 2)],
                vec![e(0, 1), e(1, 2)],
                vec![e(0, 2), e(1, 2)]
            ]
        );
    }

    #[test]
    fn extend_without_attach_edge_gives_two() {
        let c = book(4);
        let k3 = prefix_graph(&c, 3).unwrap();
        let t = SpanningTree::new(&k3, vec![e(0, 2), e(1, 2)]).unwrap();
        assert_eq!(extend_tree(&k3, &t, 3, e(0, 1)).unwrap().len(), 2);
    }

    #[test]
    fn extend_rejects_bad_input() {
        let c = book(4);
        let k3 = prefix_graph(&c, 3).unwrap();
        let t = SpanningTree::new(&k3, vec![e(0, 2), e(1, 2)]).unwrap();
        assert!(extend_tree(&k3, &t, 4, e(0, 1)).is_err());
        let k2 = realize(&TwoTreeConstruction::base());
        let wrong_host = SpanningTree::new(&k2, vec![e(0, 1)]).unwrap();
        assert!(matches!(
            extend_tree(&k3, &wrong_host, 3, e(0, 1)),
            Err(Error::InvalidTree(_))
        ));
    }

    #[test]
    fn book4_extends_to_eight() {
        let c = book(4);
        let k3 = prefix_graph(&c, 3).unwrap();
        let total: usize = faithful_list(&c.truncated(3).unwrap())
            .iter()
            .map(|t| extend_tree(&k3, t, 3, e(0, 1)).unwrap().len())
            .sum();
        assert_eq!(total, 8);
    }

    #[test]
    fn small_enumerations() {
        let k2 = TwoTreeConstruction::base();
        let trees: Vec<_> = enumerate_all(&k2, EnumerationMode::Streaming).collect();
        assert_eq!(trees.len(), 1);
        assert_eq!(trees[0].edges(), &[e(0, 1)]);

        let k3 = book(3);
        let trees: Vec<_> = enumerate_all(&k3, EnumerationMode::Streaming).collect();
        assert_eq!(trees.len(), 3);

        let b6 = book(6);
        let g = realize(&b6);
        let trees: Vec<_> = enumerate_all(&b6, EnumerationMode::Streaming).collect();
        assert_eq!(trees.len(), 48);
        let distinct: HashSet<_> = trees.iter().cloned().collect();
        assert_eq!(distinct.len(), 48);
        assert!(trees
            .iter()
            .all(|t| is_spanning_tree(&g, t.edges()).unwrap()));
    }

    #[test]
    fn streaming_order_is_lexicographic_in_choices() {
        let c = book(4);
        let mut cursor = TreeCursor::new(&c);
        let mut seen = Vec::new();
        while cursor.advance() {
            seen.push(cursor.choices().to_vec());
        }
        assert_eq!(
            seen,
            vec![
                vec![UseVX, UseVX],
                vec![UseVX, UseVY],
                vec![UseVX, SplitXY],
                vec![UseVY, UseVX],
                vec![UseVY, UseVY],
                vec![UseVY, SplitXY],
                vec![SplitXY, UseVX],
                vec![SplitXY, UseVY],
            ]
        );
        assert!(!cursor.advance());
    }

    #[test]
    fn modes_agree() {
        let c =
            TwoTreeConstruction::new(vec![e(0, 1), e(1, 2), e(0, 2), e(2, 3), e(1, 3)]).unwrap();
        let mut a: Vec<_> = enumerate_all(&c, EnumerationMode::Streaming).collect();
        let mut b: Vec<_> = enumerate_all(&c, EnumerationMode::FaithfulList).collect();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        assert_eq!(count_by_enumeration(&c), a.len() as u64);
    }

    #[test]
    fn decode_examples() {
        let b4 = book(4);
        let star = choice_vector_decode(&b4, &[UseVX, UseVX]).unwrap();
        assert_eq!(star.edges(), &[e(0, 1), e(0, 2), e(0, 3)]);
        assert!(is_spanning_tree(&realize(&b4), star.edges()).unwrap());

        let k2 = TwoTreeConstruction::base();
        assert_eq!(choice_vector_decode(&k2, &[]).unwrap().edges(), &[e(0, 1)]);

        let k3 = book(3);
        assert_eq!(
            choice_vector_decode(&k3, &[SplitXY]).unwrap().edges(),
            &[e(0, 2), e(1, 2)]
        );

        assert_eq!(
            choice_vector_decode(&b4, &[SplitXY, SplitXY]).unwrap_err(),
            Error::IllegalSplit {
                vertex: 3,
                attach: e(0, 1)
            }
        );
        assert!(choice_vector_decode(&b4, &[UseVX]).is_err());
    }

    #[test]
    fn decode_matches_cursor() {
        let c = TwoTreeConstruction::new(vec![e(0, 1), e(0, 2), e(2, 3)]).unwrap();
        let mut cursor = TreeCursor::new(&c);
        while cursor.advance() {
            let decoded = choice_vector_decode(&c, cursor.choices()).unwrap();
            assert_eq!(decoded, cursor.current_tree());
        }
    }
}
