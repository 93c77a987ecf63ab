use rand::Rng;

use twotree::counting::{
    brute_force_count, count_book, count_containing_or_zero, count_two_simplicial,
    count_via_construction, fibonacci, kirchhoff_count, verify_bounds, FibIndex,
};
use twotree::enumeration::count_by_enumeration;
use twotree::extremal::{
    glue_identity_check, improve_max, improve_min, random_glue_instance, survey_extremal,
};
use twotree::generators::{
    all_labeled_two_trees, book, fan, path_square, random_chain_graph, random_two_tree_with, Seed,
};
use twotree::recognition::recognize;
use twotree::{realize, BigCount, Error};

use crate::args::Suite;
use crate::report::{Check, Failure, Inputs, Outcome};

/// Tally of one named invariant over many instances.
struct Tally {
    name: String,
    total: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new(name: impl Into<String>) -> Tally {
        Tally {
            name: name.into(),
            total: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, label: impl FnOnce() -> String) {
        self.total += 1;
        if !ok {
            self.failures.push(label());
        }
    }

    fn check(self) -> Check {
        let detail = if self.failures.is_empty() {
            format!("{} cases", self.total)
        } else {
            let shown: Vec<_> = self.failures.iter().take(5).cloned().collect();
            format!(
                "{} of {} cases failed, e.g. {}",
                self.failures.len(),
                self.total,
                shown.join("; ")
            )
        };
        Check::new(self.name, self.failures.is_empty(), detail)
    }
}

fn n_max_in(n_max: Option<usize>, default: usize, lo: usize, hi: usize) -> Result<usize, Failure> {
    let n = n_max.unwrap_or(default);
    if n < lo || n > hi {
        return Err(Failure::usage(format!(
            "--n-max {n} is out of range (requires {lo} <= n-max <= {hi})"
        )));
    }
    Ok(n)
}

pub fn run(
    suite: Suite,
    n_max: Option<usize>,
    seed: u64,
    trials: usize,
) -> Result<Outcome, Failure> {
    let (name, n_max, checks) = match suite {
        Suite::Bounds => {
            let n = n_max_in(n_max, 16, 3, 60)?;
            ("bounds", n, bounds(n, seed, trials))
        }
        Suite::Extremal => {
            let n = n_max_in(n_max, 8, 4, 8)?;
            ("extremal", n, extremal(n)?)
        }
        Suite::Identities => {
            let n = n_max_in(n_max, 16, 4, 60)?;
            ("identities", n, identities(n, seed, trials)?)
        }
        Suite::Oracle => {
            let n = n_max_in(n_max, 8, 3, 8)?;
            ("oracle", n, oracle(n, seed, trials)?)
        }
    };
    let mut outcome = Outcome {
        inputs: Inputs {
            n: Some(n_max),
            seed: Some(seed),
            ..Inputs::default()
        },
        ..Outcome::default()
    };
    for c in &checks {
        let verdict = if c.passed { "PASS" } else { "FAIL" };
        outcome.line(format!("{verdict} {}: {}", c.name, c.detail));
    }
    outcome.put("suite", name);
    outcome.put("trials", trials);
    outcome.checks = checks;
    Ok(outcome)
}

fn bounds(n_max: usize, seed: u64, trials: usize) -> Vec<Check> {
    let mut lower = Tally::new("lower bound 2^(n-2)");
    let mut upper = Tally::new("upper bound 3^(n-2)");
    let mut extremes = Tally::new("book count <= T(G) <= two-simplicial count");
    for t in 0..trials {
        let mut rng = Seed(seed).stream(t as u64);
        let n = rng.gen_range(3..=n_max);
        let g = realize(&random_two_tree_with(n, &mut rng));
        let b = verify_bounds(&g).expect("generated graphs are 2-trees");
        let label = || format!("trial {t} (n = {n}, T = {})", b.count);
        lower.record(b.lower_ok, label);
        upper.record(b.upper_ok, label);
        let lo = count_book(n).expect("n >= 3");
        let hi = count_two_simplicial(n).expect("n >= 3");
        extremes.record(lo <= b.count && b.count <= hi, label);
    }
    vec![lower.check(), upper.check(), extremes.check()]
}

fn extremal(n_max: usize) -> Result<Vec<Check>, Failure> {
    let mut checks = Vec::new();
    for n in 4..=n_max {
        let s = survey_extremal(n)?;
        checks.push(Check::new(
            format!("extremes at n = {n}"),
            s.passes(),
            format!(
                "{} graphs; min {} ({} attainers, all books: {}); max {} ({} attainers, all two-simplicial: {})",
                s.corpus_size, s.min, s.min_attainers, s.min_attainers_all_books, s.max, s.max_attainers,
                s.max_attainers_all_two_simplicial
            ),
        ));
    }
    let mut down = Tally::new("split strictly lowers the count");
    let mut algebra = Tally::new("split identities");
    let mut up = Tally::new("reattachment strictly raises the count");
    for n in 5..=n_max {
        for (i, g) in all_labeled_two_trees(n)?.iter().enumerate() {
            match improve_min(g) {
                Ok(r) => {
                    down.record(r.winner_count() < &r.t_g, || format!("n = {n} #{i}"));
                    algebra.record(r.identities_hold(), || format!("n = {n} #{i}"));
                }
                Err(Error::IsBook) => {}
                Err(e) => down.record(false, || format!("n = {n} #{i}: {e}")),
            }
            match improve_max(g) {
                Ok(r) => up.record(r.improves() && recognize(&r.g_prime).is_ok(), || {
                    format!("n = {n} #{i}")
                }),
                Err(Error::AlreadyTwoSimplicial) => {}
                Err(e) => up.record(false, || format!("n = {n} #{i}: {e}")),
            }
        }
    }
    checks.extend([down.check(), algebra.check(), up.check()]);
    Ok(checks)
}

fn identities(n_max: usize, seed: u64, trials: usize) -> Result<Vec<Check>, Failure> {
    let fib = |k: i64| fibonacci(FibIndex::new(k).expect("index >= -1"));

    let mut book_form = Tally::new("book count n 2^(n-3)");
    let mut fib_form = Tally::new("two-simplicial count F(2n-2)");
    for n in 3..=n_max {
        let b = book(n)?;
        let expected = count_book(n)?;
        book_form.record(
            kirchhoff_count(&realize(&b)) == expected && count_via_construction(&b) == expected,
            || format!("n = {n}"),
        );
        if n >= 4 {
            let want = fib(2 * n as i64 - 2);
            let ok = [path_square(n)?, fan(n)?]
                .iter()
                .all(|c| kirchhoff_count(&realize(c)) == want);
            fib_form.record(ok && count_two_simplicial(n)? == want, || {
                format!("n = {n}")
            });
        }
    }

    let mut totals = Tally::new("chain totals t_p and s_p");
    let mut at_e0 = Tally::new("T(G_p; e_0) = F(2p+1) beta");
    let mut at_eprime = Tally::new("T(G_p; e') = F(2p-1) alpha + F(2p) beta");
    let mut beats_e0 = Tally::new("T(G_p; e_p) > T(G_p; e_0)");
    let mut beats_eprime = Tally::new("T(G_p; e_p) > T(G_p; e') for p >= 2");
    let mut ties_eprime = Tally::new("T(G_p; e_p) = T(G_p; e') at p = 1");
    for t in 0..trials {
        let mut rng = Seed(seed).stream(t as u64);
        let host_n = rng.gen_range(3..=7);
        let host = realize(&random_two_tree_with(host_n, &mut rng));
        let chain = random_chain_graph(&host, 5, &mut rng)?;
        let alpha = kirchhoff_count(&host);
        let beta = count_containing_or_zero(&host, &[chain.e0()])?;
        for p in 1..=5usize {
            let gp = chain.graph.induced(&(0..host_n + p).collect::<Vec<_>>());
            let q = p as i64;
            let label = || format!("trial {t}, p = {p}");
            let ep = count_containing_or_zero(&gp, &[chain.edges[p]])?;
            let e0 = count_containing_or_zero(&gp, &[chain.e0()])?;
            let eprime = count_containing_or_zero(&gp, &[chain.e_prime])?;
            let t_p = &(&fib(2 * q + 1) * &alpha) + &(&fib(2 * q) * &beta);
            let s_p = &(&fib(2 * q) * &alpha) + &(&fib(2 * q - 1) * &beta);
            totals.record(kirchhoff_count(&gp) == t_p && ep == s_p, label);
            at_e0.record(e0 == &fib(2 * q + 1) * &beta, label);
            at_eprime.record(
                eprime == &(&fib(2 * q - 1) * &alpha) + &(&fib(2 * q) * &beta),
                label,
            );
            beats_e0.record(ep > e0, label);
            if p == 1 {
                ties_eprime.record(ep == eprime, label);
            } else {
                beats_eprime.record(ep > eprime, label);
            }
        }
    }

    let mut glue = Tally::new("glue table identities");
    for t in 0..trials {
        let mut rng = Seed(seed ^ 0x9e37_79b9_7f4a_7c15).stream(t as u64);
        let g = random_glue_instance(&mut rng, 7)?;
        let ok = glue_identity_check(&g.h, &g.j, g.shared, &g.s);
        glue.record(ok == Ok(true), || format!("instance {t}: {ok:?}"));
    }

    Ok(vec![
        book_form.check(),
        fib_form.check(),
        totals.check(),
        at_e0.check(),
        at_eprime.check(),
        beats_e0.check(),
        beats_eprime.check(),
        ties_eprime.check(),
        glue.check(),
    ])
}

fn oracle(n_max: usize, seed: u64, trials: usize) -> Result<Vec<Check>, Failure> {
    let mut exhaustive = Tally::new(format!(
        "kirchhoff = brute force = enumeration on every 2-tree with n <= {n_max}"
    ));
    for n in 3..=n_max {
        for (i, g) in all_labeled_two_trees(n)?.iter().enumerate() {
            let k = kirchhoff_count(g);
            let c = recognize(g)?.construction;
            let ok = k == brute_force_count(g)? && k == BigCount::from(count_by_enumeration(&c));
            exhaustive.record(ok, || format!("n = {n} #{i}"));
        }
    }
    let mut random = Tally::new("kirchhoff = brute force on random 2-trees with n <= 10");
    for t in 0..trials {
        let mut rng = Seed(seed).stream(t as u64);
        let n = rng.gen_range(3..=10);
        let g = realize(&random_two_tree_with(n, &mut rng));
        random.record(kirchhoff_count(&g) == brute_force_count(&g)?, || {
            format!("trial {t}")
        });
    }
    Ok(vec![exhaustive.check(), random.check()])
}
