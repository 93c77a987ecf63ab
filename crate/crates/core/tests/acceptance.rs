//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. All comparisons are exact except the
//! timing bounds in criterion 9.

mod common;

use std::collections::HashSet;
use std::io::{BufWriter, Write};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;
use rayon::prelude::*;

use common::{brute_count, fib, is_forest_on, is_tree_on};
use twotree::counting::{
    brute_force_count, count_book, count_containing_or_zero, count_two_simplicial,
    count_via_construction, kirchhoff_count, verify_bounds,
};
use twotree::enumeration::{enumerate_all, EnumerationMode, TreeCursor};
use twotree::extremal::{glue_identity_check, improve_max, improve_min, survey_extremal};
use twotree::generators::{
    all_labeled_two_trees, book, fan, path_square, random_chain, random_chain_graph,
    random_two_tree, random_two_tree_with, Seed,
};
use twotree::recognition::recognize;
use twotree::{realize, BigCount, Edge, Error, SimpleGraph};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn big(x: u128) -> BigCount {
    BigCount::from(num_bigint::BigUint::from(x))
}

fn enumeration_completeness() -> Outcome {
    let start = Instant::now();
    let mut graphs = 0usize;
    let mut trees = 0u64;
    let mut failures = Vec::new();
    for n in 3..=8 {
        let corpus = all_labeled_two_trees(n).unwrap();
        let bad: Vec<(usize, u64)> = corpus
            .par_iter()
            .enumerate()
            .filter_map(|(idx, g)| {
                let rec = recognize(g).ok()?;
                let c = &rec.construction;
                let host = realize(c);
                let mut seen = HashSet::new();
                let mut all_valid = true;
                for t in enumerate_all(c, EnumerationMode::Streaming) {
                    all_valid &=
                        t.edges().iter().all(|&e| host.has_edge(e)) && is_tree_on(n, t.edges());
                    seen.insert(t.into_edges());
                }
                let emitted = seen.len() as u64;
                let oracle = brute_count(g);
                let ok = all_valid
                    && BigCount::from(emitted) == kirchhoff_count(g)
                    && kirchhoff_count(g) == brute_force_count(g).unwrap()
                    && u128::from(emitted) == oracle;
                (!ok).then_some((idx, emitted))
            })
            .collect();
        let total: u64 = corpus.iter().map(|g| brute_count(g) as u64).sum();
        trees += total;
        graphs += corpus.len();
        failures.extend(bad.into_iter().map(|(i, _)| (n, i)));
    }
    let elapsed = start.elapsed();
    let in_time = elapsed <= Duration::from_secs(300);
    Outcome {
        pass: failures.is_empty() && in_time,
        detail: format!(
            "{graphs} graphs, {trees} trees, {} mismatches, {:.1}s (limit 300s)",
            failures.len(),
            elapsed.as_secs_f64()
        ),
    }
}

fn book_count() -> Outcome {
    let mut bad = Vec::new();
    for n in 3..=20usize {
        let expected = big(n as u128 * (1u128 << (n - 3)));
        let c = book(n).unwrap();
        let ok = count_book(n).unwrap() == expected
            && kirchhoff_count(&realize(&c)) == expected
            && count_via_construction(&c) == expected;
        if !ok {
            bad.push(n);
        }
    }
    let n20 = count_book(20).unwrap();
    Outcome {
        pass: bad.is_empty() && n20 == big(2_621_440),
        detail: format!("n = 3..20, T(B_20) = {n20}, failing n: {bad:?}"),
    }
}

fn two_simplicial_count() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for n in 4..=16usize {
        let expected = big(fib(2 * n as i64 - 2));
        let mut graphs = vec![
            ("path_square", realize(&path_square(n).unwrap())),
            ("fan", realize(&fan(n).unwrap())),
        ];
        for seed in 0..100u64 {
            graphs.push(("chain", realize(&random_chain(n, Seed(seed)).unwrap())));
        }
        for (name, g) in &graphs {
            checked += 1;
            if kirchhoff_count(g) != expected || count_two_simplicial(n).unwrap() != expected {
                bad.push(format!("{name}({n})"));
            }
        }
    }
    let top = kirchhoff_count(&realize(&path_square(16).unwrap()));
    Outcome {
        pass: bad.is_empty() && top == big(832_040),
        detail: format!("{checked} graphs, T(path_square(16)) = {top}, failures: {bad:?}"),
    }
}

fn bounds() -> Outcome {
    let mut bad = Vec::new();
    for seed in 0..1000u64 {
        let n = 3 + (seed % 14) as usize;
        let g = realize(&random_two_tree(n, Seed(seed)).unwrap());
        let t = kirchhoff_count(&g);
        let lo = big(1u128 << (n - 2));
        let hi = big(3u128.pow((n - 2) as u32));
        let report = verify_bounds(&g).unwrap();
        if !(lo <= t && t <= hi && report.lower_ok && report.upper_ok) {
            bad.push(seed);
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!("1000 random 2-trees with 3 <= n <= 16, failing seeds: {bad:?}"),
    }
}

fn extremality() -> Outcome {
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut pass = true;
    for n in 4..=8usize {
        let s = survey_extremal(n).unwrap();
        let min_ok = s.min == big(n as u128 * (1u128 << (n - 3)));
        let max_ok = s.max == big(fib(2 * n as i64 - 2));
        let ok =
            min_ok && max_ok && s.min_attainers_all_books && s.max_attainers_all_two_simplicial;
        pass &= ok;
        lines.push(format!(
            "n={n}: min {} max {}{}",
            s.min,
            s.max,
            if ok { "" } else { " (bad)" }
        ));
    }
    let elapsed = start.elapsed();
    pass &= elapsed <= Duration::from_secs(600);
    Outcome {
        pass,
        detail: format!(
            "{}; {:.1}s (limit 600s)",
            lines.join(", "),
            elapsed.as_secs_f64()
        ),
    }
}

fn chain_formulas() -> Outcome {
    let mut formula_failures = Vec::new();
    let mut strict_e0_failures = Vec::new();
    let mut strict_eprime_failures = Vec::new();
    for seed in 0..50u64 {
        let mut rng = Seed(seed).stream(6);
        let host_n = rng.gen_range(3..=7);
        let host = realize(&random_two_tree_with(host_n, &mut rng));
        let full = random_chain_graph(&host, 5, &mut rng).unwrap();
        let alpha = brute_count(&host);
        let beta = common::brute_count_containing(&host, &[full.e0()]);
        for p in 1..=5usize {
            let keep: Vec<usize> = (0..host_n + p).collect();
            let gp = full.graph.induced(&keep);
            let ep = full.edges[p];
            let (e0, e_prime) = (full.e0(), full.e_prime);
            let p_ = p as i64;
            let t_p = fib(2 * p_ + 1) * alpha + fib(2 * p_) * beta;
            let s_p = fib(2 * p_) * alpha + fib(2 * p_ - 1) * beta;
            let at_e0 = fib(2 * p_ + 1) * beta;
            let at_eprime = fib(2 * p_ - 1) * alpha + fib(2 * p_) * beta;

            let got_t = kirchhoff_count(&gp);
            let got_ep = count_containing_or_zero(&gp, &[ep]).unwrap();
            let got_e0 = count_containing_or_zero(&gp, &[e0]).unwrap();
            let got_eprime = count_containing_or_zero(&gp, &[e_prime]).unwrap();
            if got_t != big(t_p)
                || got_ep != big(s_p)
                || got_e0 != big(at_e0)
                || got_eprime != big(at_eprime)
            {
                formula_failures.push((seed, p));
            }
            if got_ep <= got_e0 {
                strict_e0_failures.push((seed, p));
            }
            if got_ep <= got_eprime {
                strict_eprime_failures.push((seed, p));
            }
        }
    }
    let p_values = |v: &[(u64, usize)]| -> Vec<usize> {
        let mut ps: Vec<usize> = v.iter().map(|&(_, p)| p).collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    };
    Outcome {
        pass: formula_failures.is_empty()
            && strict_e0_failures.is_empty()
            && strict_eprime_failures.is_empty(),
        detail: format!(
            "250 cases; formula mismatches {}; e_p <= e_0 in {}; e_p <= e' in {} (at p = {:?})",
            formula_failures.len(),
            strict_e0_failures.len(),
            strict_eprime_failures.len(),
            p_values(&strict_eprime_failures)
        ),
    }
}

fn surgery_direction() -> Outcome {
    let mut min_steps = 0usize;
    let mut max_steps = 0usize;
    let mut bad = 0usize;
    for n in 5..=8usize {
        let corpus = all_labeled_two_trees(n).unwrap();
        let results: Vec<(usize, usize, usize)> = corpus
            .par_iter()
            .map(|g| {
                let t = kirchhoff_count(g);
                let (mut mins, mut maxes, mut bad) = (0, 0, 0);
                match improve_min(g) {
                    Ok(r) => {
                        mins += 1;
                        let two_g = &r.t_g * 2;
                        let rhs = &(&r.t_g1 + &r.t_g2) + &(&r.gamma * 2);
                        let ok = r.t_g == t
                            && two_g == rhs
                            && !r.gamma.is_zero()
                            && r.identities_hold()
                            && kirchhoff_count(r.winner_graph()) < t
                            && recognize(r.winner_graph()).is_ok();
                        bad += usize::from(!ok);
                    }
                    Err(Error::IsBook) => {}
                    Err(_) => bad += 1,
                }
                match improve_max(g) {
                    Ok(r) => {
                        maxes += 1;
                        let ok = r.t_g == t
                            && kirchhoff_count(&r.g_prime) > t
                            && r.g_prime.n() == n
                            && recognize(&r.g_prime).is_ok();
                        bad += usize::from(!ok);
                    }
                    Err(Error::AlreadyTwoSimplicial) => {}
                    Err(_) => bad += 1,
                }
                (mins, maxes, bad)
            })
            .collect();
        for (a, b, c) in results {
            min_steps += a;
            max_steps += b;
            bad += c;
        }
    }
    Outcome {
        pass: bad == 0 && min_steps > 0 && max_steps > 0,
        detail: format!(
            "{min_steps} splits, {max_steps} reattachments on n = 5..8, {bad} failures"
        ),
    }
}

/// Random glue instance: `h` on labels `0..a`, `j` sharing one edge of `h`
/// and owning labels `a..a+b-2`. Returns `(h, j, shared, s)`.
fn glue_instance(seed: u64) -> (SimpleGraph, SimpleGraph, Edge, Vec<Edge>) {
    let mut rng = Seed(seed).stream(8);
    let a = rng.gen_range(2..=7usize);
    let b = rng.gen_range(3..=7usize);
    let h_local = realize(&random_two_tree_with(a, &mut rng));
    let j_local = realize(&random_two_tree_with(b, &mut rng));
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
    let h = SimpleGraph::from_edges(n, h_edges).unwrap();
    let j = SimpleGraph::from_edges(n, j_edges.iter().map(|e| Edge::new(map[e.u()], map[e.v()])))
        .unwrap();
    // the vertex removed from J is its smallest simplicial vertex off the shared edge
    let v = (0..n)
        .find(|&x| j.degree(x) == 2 && !shared.contains(x))
        .unwrap();
    let mut s: Vec<Edge> = Vec::new();
    for e in j.edge_vec().into_iter().filter(|e| !e.contains(v)) {
        if rng.gen_range(0..2) == 1 {
            s.push(e);
            if !is_forest_on(n, &s) {
                s.pop();
            }
        }
    }
    (h, j, shared, s)
}

fn glue_identities() -> Outcome {
    let mut bad = Vec::new();
    let mut nonempty = 0;
    for seed in 0..200u64 {
        let (h, j, shared, s) = glue_instance(seed);
        nonempty += usize::from(!s.is_empty());
        if glue_identity_check(&h, &j, shared, &s) != Ok(true) {
            bad.push(seed);
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!("200 instances ({nonempty} with nonempty S), failing seeds: {bad:?}"),
    }
}

fn stream_book(n: usize) -> (Duration, u64) {
    let c = book(n).unwrap();
    let mut sink = BufWriter::new(std::io::sink());
    let start = Instant::now();
    let mut cursor = TreeCursor::new(&c);
    let mut emitted = 0u64;
    while cursor.advance() {
        for e in cursor.current_edges() {
            write!(sink, "{e} ").unwrap();
        }
        writeln!(sink).unwrap();
        emitted += 1;
    }
    sink.flush().unwrap();
    (start.elapsed(), emitted)
}

fn performance() -> Outcome {
    // warm-up, then best of three for each size
    stream_book(12);
    let best = |n| (0..3).map(|_| stream_book(n)).min_by_key(|r| r.0).unwrap();
    let (t17, c17) = best(17);
    let (t18, c18) = best(18);
    let expected = (18.0 * 589_824.0) / (17.0 * 278_528.0);
    let measured = t18.as_secs_f64() / t17.as_secs_f64();
    let ratio_ok = measured >= expected / 3.0 && measured <= expected * 3.0;
    let counts_ok = c17 == 278_528 && c18 == 589_824;
    let time_ok = t18 <= Duration::from_secs(30);
    Outcome {
        pass: ratio_ok && counts_ok && time_ok,
        detail: format!(
            "book(18): {c18} trees in {:.3}s (limit 30s); ratio {:.3} vs expected {:.3} (allowed {:.3}..{:.3})",
            t18.as_secs_f64(),
            measured,
            expected,
            expected / 3.0,
            expected * 3.0
        ),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("enumeration completeness", enumeration_completeness),
        ("book count", book_count),
        ("two-simplicial count", two_simplicial_count),
        ("bounds", bounds),
        ("extremality and uniqueness", extremality),
        ("chain formulas", chain_formulas),
        ("surgery direction", surgery_direction),
        ("glue identities", glue_identities),
        ("output-sensitive performance", performance),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let out = run();
        let verdict = if out.pass { "PASS" } else { "FAIL" };
        println!("criterion {} [{name}]: {verdict}: {}", i + 1, out.detail);
        failed += usize::from(!out.pass);
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
