//! Small independent oracles shared by the integration tests. Nothing here
//! calls into the library's counting code.
#![allow(dead_code)]

use twotree::{Edge, SimpleGraph};

pub fn fib(k: i64) -> u128 {
    // F_{-1} = 1, F_0 = 0
    let (mut a, mut b) = (1u128, 0u128);
    for _ in -1..k {
        let next = a + b;
        a = b;
        b = next;
    }
    a
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// True when `edges` is a spanning tree of a graph on `n` vertices.
pub fn is_tree_on(n: usize, edges: &[Edge]) -> bool {
    if n == 0 || edges.len() != n - 1 {
        return false;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    for e in edges {
        let (a, b) = (find(&mut parent, e.u()), find(&mut parent, e.v()));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

pub fn is_forest_on(n: usize, edges: &[Edge]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    for e in edges {
        let (a, b) = (find(&mut parent, e.u()), find(&mut parent, e.v()));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

/// Number of spanning trees of `g` that contain every edge of `required`,
/// by checking every (n-1)-subset of edges. Only for small graphs.
pub fn brute_count_containing(g: &SimpleGraph, required: &[Edge]) -> u128 {
    let edges = g.edge_vec();
    let m = edges.len();
    assert!(m <= 24, "oracle limited to 24 edges");
    let n = g.n();
    let mut must = 0u32;
    for r in required {
        let i = edges
            .iter()
            .position(|e| e == r)
            .expect("required edge in graph");
        must |= 1 << i;
    }
    let mut count = 0u128;
    let mut chosen = Vec::with_capacity(n);
    for mask in 0u32..(1u32 << m) {
        if mask.count_ones() as usize != n - 1 || mask & must != must {
            continue;
        }
        chosen.clear();
        chosen.extend((0..m).filter(|i| mask >> i & 1 == 1).map(|i| edges[i]));
        if is_tree_on(n, &chosen) {
            count += 1;
        }
    }
    count
}

pub fn brute_count(g: &SimpleGraph) -> u128 {
    brute_count_containing(g, &[])
}
