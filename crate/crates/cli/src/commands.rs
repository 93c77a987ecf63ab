use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde_json::json;

use twotree::counting::{
    brute_force_count, count_book, count_two_simplicial, count_via_construction, kirchhoff_count,
};
use twotree::enumeration::{enumerate_all, EnumerationMode};
use twotree::extremal::{improve_max, improve_min, survey_extremal, Winner};
use twotree::format::{tree_stream_header, write_construction, write_edge_list};
use twotree::recognition::{
    is_book, path_ordering_if_two_simplicial, recognize, simplicial_vertices,
};
use twotree::{BigCount, Edge, SimpleGraph, TwoTreeConstruction};

use crate::args::{Direction, Family, GraphFormat, InputArgs, Method, Mode};
use crate::input::{family_construction, load};
use crate::report::{Check, Failure, Inputs, Outcome};

fn write_to(out: Option<&Path>, text: &str, outcome: &mut Outcome) -> Result<(), Failure> {
    match out {
        Some(path) => {
            std::fs::write(path, text)
                .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
            outcome.put("out", path.display().to_string());
        }
        None => outcome.text.push_str(text),
    }
    Ok(())
}

pub fn gen(
    family: Family,
    n: usize,
    seed: u64,
    format: GraphFormat,
    out: Option<&Path>,
) -> Result<Outcome, Failure> {
    let c = family_construction(family, n, seed)?;
    let text = match format {
        GraphFormat::Edges => write_edge_list(&twotree::realize(&c)),
        GraphFormat::Construction => write_construction(&c),
    };
    let mut outcome = Outcome {
        inputs: Inputs {
            n: Some(n),
            seed: family.is_seeded().then_some(seed),
            family: Some(family.name().to_string()),
            file: None,
        },
        ..Outcome::default()
    };
    outcome.put("format", format_name(format));
    outcome.put("edges", 2 * n - 3);
    write_to(out, &text, &mut outcome)?;
    Ok(outcome)
}

fn format_name(format: GraphFormat) -> &'static str {
    match format {
        GraphFormat::Edges => "edges",
        GraphFormat::Construction => "construction",
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn order(args: &InputArgs) -> Result<Outcome, Failure> {
    let loaded = load(args)?;
    let g = &loaded.graph;
    let rec = recognize(g)?;
    let ordering = rec.ordering().order;
    let path = path_ordering_if_two_simplicial(g)?.map(|o| o.order);
    let mut outcome = Outcome {
        inputs: loaded.inputs,
        ..Outcome::default()
    };
    outcome.line(format!("ordering {}", join(&ordering)));
    if let Some(p) = &path {
        outcome.line(format!("path {}", join(p)));
    }
    outcome.put("ordering", &ordering);
    outcome.put("two_simplicial_path", &path);
    if g.n() >= 3 {
        outcome.put("simplicial_vertices", simplicial_vertices(g)?);
        outcome.put("is_book", is_book(g)?);
    }
    Ok(outcome)
}

fn construction_for(
    g: &SimpleGraph,
    given: Option<&TwoTreeConstruction>,
) -> Result<TwoTreeConstruction, Failure> {
    match given {
        Some(c) => Ok(c.clone()),
        None => Ok(recognize(g)?.construction),
    }
}

fn closed_form(g: &SimpleGraph) -> Result<BigCount, Failure> {
    recognize(g)?;
    let n = g.n();
    if n <= 3 || is_book(g)? {
        return Ok(count_book(n)?);
    }
    if simplicial_vertices(g)?.len() == 2 {
        return Ok(count_two_simplicial(n)?);
    }
    Err(Failure::usage(
        "closed-form counting applies only to books and 2-trees with exactly two simplicial vertices",
    ))
}

/// Compares two independently computed counts.
pub fn cross_check(first: (&str, &BigCount), second: (&str, &BigCount)) -> Result<(), Failure> {
    if first.1 == second.1 {
        Ok(())
    } else {
        Err(Failure::mismatch(format!(
            "{} gives {} but {} gives {}",
            first.0, first.1, second.0, second.1
        )))
    }
}

pub fn count(args: &InputArgs, method: Method) -> Result<Outcome, Failure> {
    let loaded = load(args)?;
    let g = &loaded.graph;
    let (name, value) = match method {
        Method::Kirchhoff => ("kirchhoff", kirchhoff_count(g)),
        Method::Brute => ("brute", brute_force_count(g)?),
        Method::ClosedForm => ("closed-form", closed_form(g)?),
        Method::Recurrence => {
            let c = construction_for(g, loaded.construction.as_ref())?;
            ("recurrence", count_via_construction(&c))
        }
        Method::Auto => {
            let c = construction_for(g, loaded.construction.as_ref())?;
            let k = kirchhoff_count(g);
            let r = count_via_construction(&c);
            cross_check(("kirchhoff", &k), ("recurrence", &r))?;
            ("auto", k)
        }
    };
    let mut outcome = Outcome {
        inputs: loaded.inputs,
        ..Outcome::default()
    };
    outcome.line(value.to_string());
    outcome.put("method", name);
    outcome.put("count", &value);
    Ok(outcome)
}

fn tree_line(edges: &mut [Edge]) -> String {
    edges.sort_unstable();
    edges
        .iter()
        .map(Edge::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn enumerate(
    args: &InputArgs,
    out: Option<&Path>,
    limit: Option<u64>,
    mode: Mode,
    json: bool,
) -> Result<Outcome, Failure> {
    if json && out.is_none() {
        return Err(Failure::usage("--json needs --out for the tree stream"));
    }
    let loaded = load(args)?;
    let g = &loaded.graph;
    // trees come out in construction labels; map them back to input labels
    let (c, labels): (TwoTreeConstruction, Vec<usize>) = match &loaded.construction {
        Some(c) => (c.clone(), (0..g.n()).collect()),
        None => {
            let rec = recognize(g)?;
            (rec.construction, rec.labels)
        }
    };
    let expected = kirchhoff_count(g);
    let mode = match mode {
        Mode::Streaming => EnumerationMode::Streaming,
        Mode::Faithful => EnumerationMode::FaithfulList,
    };

    let sink: Box<dyn Write> = match out {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut sink = BufWriter::new(sink);
    let mut emitted = 0u64;
    let mut truncated = false;
    let mut closed = false;
    let mut edges = Vec::with_capacity(g.n());
    let written = (|| -> io::Result<()> {
        writeln!(sink, "{}", tree_stream_header(g.n(), Some(&expected)))?;
        for tree in enumerate_all(&c, mode) {
            if limit.is_some_and(|l| emitted >= l) {
                truncated = true;
                break;
            }
            edges.clear();
            edges.extend(
                tree.edges()
                    .iter()
                    .map(|e| Edge::new(labels[e.u()], labels[e.v()])),
            );
            writeln!(sink, "{}", tree_line(&mut edges))?;
            emitted += 1;
        }
        sink.flush()
    })();
    match written {
        // reader went away (e.g. `| head`): stop quietly
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => closed = true,
        other => other?,
    }

    let mut outcome = Outcome {
        inputs: loaded.inputs,
        ..Outcome::default()
    };
    outcome.put("emitted", emitted);
    outcome.put("expected", &expected);
    outcome.put("truncated", truncated || closed);
    if let Some(path) = out {
        outcome.put("out", path.display().to_string());
    }
    if truncated {
        eprintln!("stopped after {emitted} of {expected} trees (--limit)");
    } else if closed {
        eprintln!("output closed after {emitted} of {expected} trees");
    } else {
        cross_check(
            ("enumeration", &BigCount::from(emitted)),
            ("kirchhoff", &expected),
        )?;
    }
    Ok(outcome)
}

pub fn survey(n_min: usize, n_max: usize) -> Result<Outcome, Failure> {
    if n_min > n_max {
        return Err(Failure::usage(format!(
            "--n-min {n_min} exceeds --n-max {n_max}"
        )));
    }
    let mut outcome = Outcome::default();
    let mut summaries = Vec::new();
    for n in n_min..=n_max {
        let s = survey_extremal(n)?;
        outcome.line(format!(
            "n={} corpus={} min={} max={} min_attainers_all_books={} max_attainers_all_two_simplicial={}",
            s.n, s.corpus_size, s.min, s.max, s.min_attainers_all_books, s.max_attainers_all_two_simplicial
        ));
        outcome.checks.push(Check::new(
            format!("extremal n={n}"),
            s.passes(),
            format!(
                "min {} only at books, max {} only at two-simplicial 2-trees",
                s.min, s.max
            ),
        ));
        summaries.push(s);
    }
    outcome.put("summaries", &summaries);
    Ok(outcome)
}

pub fn improve(
    direction: Direction,
    args: &InputArgs,
    format: GraphFormat,
    out: Option<&Path>,
) -> Result<Outcome, Failure> {
    let loaded = load(args)?;
    let g = &loaded.graph;
    let mut outcome = Outcome {
        inputs: loaded.inputs,
        ..Outcome::default()
    };
    let (result, before, after) = match direction {
        Direction::Min => {
            let r = improve_min(g)?;
            outcome.put("direction", "min");
            outcome.put(
                "details",
                json!({
                    "v1": r.v1, "v2": r.v2,
                    "e1": r.e1.to_string(), "e2": r.e2.to_string(),
                    "t_h": r.t_h, "beta1": r.beta1, "beta2": r.beta2, "gamma": r.gamma,
                    "t_g1": r.t_g1, "t_g2": r.t_g2,
                    "winner": match r.winner { Winner::G1 => "G1", Winner::G2 => "G2" },
                }),
            );
            outcome.checks.push(Check::new(
                "split identities",
                r.identities_hold(),
                "T(G) = 4T(H) + 2b1 + 2b2 + g, T(Gi) = 4T(H) + 4bi",
            ));
            (
                r.winner_graph().clone(),
                r.t_g.clone(),
                r.winner_count().clone(),
            )
        }
        Direction::Max => {
            let r = improve_max(g)?;
            outcome.put("direction", "max");
            outcome.put(
                "details",
                json!({
                    "crucial_edge": r.crucial_edge.to_string(),
                    "p": r.p,
                    "e0": r.e0.to_string(),
                    "ep": r.ep.to_string(),
                    "moved_vertices": r.j_vertices,
                    "alpha": r.alpha, "beta": r.beta,
                }),
            );
            (r.g_prime.clone(), r.t_g.clone(), r.t_gprime.clone())
        }
    };
    let improved = match direction {
        Direction::Min => after < before,
        Direction::Max => after > before,
    };
    outcome.checks.push(Check::new(
        "count moves in the requested direction",
        improved,
        format!("{before} -> {after}"),
    ));
    outcome.put("t_before", &before);
    outcome.put("t_after", &after);
    let text = match format {
        GraphFormat::Edges => write_edge_list(&result),
        GraphFormat::Construction => {
            let rec = recognize(&result)?;
            if rec.labels.iter().enumerate().any(|(i, &x)| i != x) {
                eprintln!("note: construction output uses build-order labels");
            }
            write_construction(&rec.construction)
        }
    };
    write_to(out, &text, &mut outcome)?;
    eprintln!("spanning trees: {before} -> {after}");
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::EXIT_MISMATCH;

    #[test]
    fn cross_check_reports_mismatch() {
        let a = BigCount::from(5u64);
        let b = BigCount::from(6u64);
        assert!(cross_check(("x", &a), ("y", &a)).is_ok());
        let f = cross_check(("x", &a), ("y", &b)).unwrap_err();
        assert_eq!(f.code, EXIT_MISMATCH);
        assert!(f.message.contains("x gives 5 but y gives 6"));
    }
}
