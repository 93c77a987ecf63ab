//! Plain-text graph formats.
//!
//! Edge list: a header line `n m`, then `m` lines `u v` with `u < v < n`.
//! Construction: a header line `n`, then `n - 2` lines `v x y` (vertex `v`
//! attached to edge `{x, y}`) in build order.
//!
//! Writers emit ASCII with LF line endings. Readers tolerate surrounding
//! whitespace and skip blank lines and lines starting with `#`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Attachment, Edge, SimpleGraph, TwoTreeConstruction};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_fields<const K: usize>(line: usize, text: &str) -> Result<[usize; K]> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != K {
        return Err(Error::Parse {
            line,
            msg: format!("expected {K} fields, found {}", fields.len()),
        });
    }
    let mut out = [0usize; K];
    for (slot, f) in out.iter_mut().zip(fields) {
        *slot = f.parse().map_err(|_| Error::Parse {
            line,
            msg: format!("`{f}` is not a nonnegative integer"),
        })?;
    }
    Ok(out)
}

pub fn write_edge_list(g: &SimpleGraph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for e in g.edges() {
        let _ = writeln!(out, "{} {}", e.u(), e.v());
    }
    out
}

/// Parses the edge-list format; edges must be written with `u < v`.
pub fn parse_edge_list(text: &str) -> Result<SimpleGraph> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing `n m` header".into(),
    })?;
    let [n, m] = parse_fields::<2>(hl, header)?;
    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        let [u, v] = parse_fields::<2>(line, l)?;
        if u >= v || v >= n {
            return Err(Error::Parse {
                line,
                msg: format!("edge `{u} {v}` must satisfy u < v < {n}"),
            });
        }
        edges.push(Edge::new(u, v));
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: hl,
            msg: format!("header declares {m} edges but {} were given", edges.len()),
        });
    }
    SimpleGraph::from_edges(n, edges)
}

pub fn write_construction(c: &TwoTreeConstruction) -> String {
    let mut out = format!("{}\n", c.n());
    for a in c.attachments() {
        let _ = writeln!(out, "{} {} {}", a.vertex, a.attach.u(), a.attach.v());
    }
    out
}

pub fn parse_construction(text: &str) -> Result<TwoTreeConstruction> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing `n` header".into(),
    })?;
    let [n] = parse_fields::<1>(hl, header)?;
    if n < 2 {
        return Err(Error::out_of_range("n", n, "n >= 2"));
    }
    let mut steps = Vec::with_capacity(n - 2);
    for (line, l) in lines {
        let [v, x, y] = parse_fields::<3>(line, l)?;
        let attach = Edge::try_new(x, y).ok_or(Error::Parse {
            line,
            msg: format!("attach edge `{x} {y}` is a loop"),
        })?;
        steps.push(Attachment { vertex: v, attach });
    }
    if steps.len() != n - 2 {
        return Err(Error::Parse {
            line: hl,
            msg: format!("expected {} attachment lines, found {}", n - 2, steps.len()),
        });
    }
    TwoTreeConstruction::from_attachments(&steps)
}

/// Header line of the tree-stream format.
pub fn tree_stream_header(n: usize, expected: Option<&dyn std::fmt::Display>) -> String {
    match expected {
        Some(t) => format!("# n={n} expected={t}"),
        None => format!("# n={n} expected=unknown"),
    }
}
