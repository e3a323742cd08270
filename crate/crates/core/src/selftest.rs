//! Randomized comparison of every solver against its exhaustive reference.
//!
//! Each suite draws `trials` instances from seeds derived from the top-level
//! seed, so a report is a pure function of `(trials, seed, options)`.

use std::fmt;

use num_bigint::BigInt;
use rand::Rng;

use crate::brute;
use crate::evencut::{
    dim_exhaustive, dim_min_cocycle, dim_random_contraction, set_min_even_cut, ContractionOptions,
    EvenCutInstance,
};
use crate::gen;
use crate::gf2::{cogirth_oracle, girth_oracle, in_row_space, Gf2Matrix, Gf2Vector, MatroidRep};
use crate::parity::Parity;
use crate::parityjoin::{join_size_bound, parity_cycle, parity_join, parity_walk};
use crate::pfaffian::{
    build_dag_with, dedupe_parallel, det_bareiss, parity_matching, parity_matching_once,
    pfaffian_dag_with, pfaffian_naive, DagRules, MatchingInstance,
};
use crate::pipeline::{cogirth_perturbed, girth_perturbed, SolverConfig};
use crate::seed::{derive_seed, rng_from_seed};

/// Significance level of the one-sided binomial tests.
pub const BINOMIAL_LEVEL: f64 = 0.01;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SelftestOptions {
    /// Evaluate Pfaffians with a corrupted rule table, to check that the
    /// Pfaffian suite notices.
    pub mutate_dag: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub trials: u64,
    pub passed: u64,
    /// Failures tolerated before the suite fails.
    pub allowed_failures: u64,
    /// Descriptions of the first few failures.
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            trials: 0,
            passed: 0,
            allowed_failures: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.trials += 1;
        if ok {
            self.passed += 1;
        } else if self.failures.len() < 5 {
            self.failures.push(detail());
        }
    }

    pub fn ok(&self) -> bool {
        self.trials - self.passed <= self.allowed_failures
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SelftestReport {
    pub suites: Vec<SuiteReport>,
}

impl SelftestReport {
    pub fn ok(&self) -> bool {
        self.suites.iter().all(SuiteReport::ok)
    }
}

impl fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.suites {
            let verdict = if s.ok() { "pass" } else { "FAIL" };
            writeln!(f, "{verdict} {} {}/{}", s.name, s.passed, s.trials)?;
            for d in &s.failures {
                writeln!(f, "  {d}")?;
            }
        }
        Ok(())
    }
}

/// Parameters of the perturbed family used by the end-to-end suites:
/// `r <= 8` rows, `n <= 12` columns, rank in `{0, 1, 2}`.
pub fn perturbed_case(seed: u64) -> (Gf2Matrix, Gf2Matrix) {
    let mut rng = rng_from_seed(seed);
    let r = rng.gen_range(2..=8);
    let n = rng.gen_range((r - 1).max(2)..=12);
    let t = rng.gen_range(0..=2usize).min(r.min(n));
    gen::perturbed(r, n, t, derive_seed(seed, 1)).expect("parameters are feasible")
}

pub fn girth_suite(trials: u64, seed: u64) -> SuiteReport {
    let mut s = SuiteReport::new("girth");
    s.allowed_failures = trials / 200;
    for i in 0..trials {
        let case = derive_seed(seed, i);
        let (a, p) = perturbed_case(case);
        let exact = girth_oracle(&MatroidRep::from_matrix(a.add(&p).expect("same shape")));
        let got = girth_perturbed(&a, &p, &SolverConfig::with_seed(case)).map(|r| r.value);
        let ok = matches!((&exact, &got), (Ok(e), Ok(g)) if e == g);
        s.record(ok, || format!("case {case}: got {got:?}, oracle {exact:?}"));
    }
    s
}

pub fn cogirth_suite(trials: u64, seed: u64) -> SuiteReport {
    let mut s = SuiteReport::new("cogirth");
    s.allowed_failures = trials / 200;
    for i in 0..trials {
        let case = derive_seed(seed, i);
        let (a, p) = perturbed_case(case);
        let sum = a.add(&p).expect("same shape");
        let exact = cogirth_oracle(&MatroidRep::from_matrix(sum.clone())).ok();
        let ok = match cogirth_perturbed(&a, &p, &SolverConfig::with_seed(case)) {
            Ok(r) => {
                let w = Gf2Vector::from_support(sum.ncols(), r.witness.iter().copied());
                let witness_ok = match r.value.value() {
                    Some(k) => r.witness.len() as u64 == k && in_row_space(&sum, &w),
                    None => r.witness.is_empty(),
                };
                witness_ok && exact == Some(r.value)
            }
            Err(_) => false,
        };
        s.record(ok, || format!("case {case}: oracle {exact:?}"));
    }
    s
}

fn skew_case(seed: u64) -> crate::pfaffian::SkewRingMatrix {
    let n = [2, 4, 6, 8, 10][(seed % 5) as usize];
    let t = (seed / 5 % 3) as u32;
    gen::skew_matrix(n, t, 0.7, 2, 5, 3, seed).expect("parameters are feasible")
}

pub fn pfaffian_suite(trials: u64, seed: u64, opts: SelftestOptions) -> SuiteReport {
    let mut s = SuiteReport::new("pfaffian");
    let rules = if opts.mutate_dag {
        DagRules::mutated()
    } else {
        DagRules::FROZEN
    };
    for i in 0..trials {
        let case = derive_seed(seed, i);
        let d = skew_case(case);
        let (fast, _) = pfaffian_dag_with(&d, rules);
        let mut ok = pfaffian_naive(&d).is_ok_and(|slow| slow == fast);
        let scalar = gen::skew_matrix(d.n(), 0, 0.8, 1, 9, 0, case).expect("feasible");
        let (pf, _) = pfaffian_dag_with(&scalar, rules);
        let pf: BigInt = pf.coefficient(Parity::ZERO, 0);
        ok &= det_bareiss(&scalar.as_integers().expect("constants")) == &pf * &pf;
        s.record(ok, || format!("case {case}: n = {}, t = {}", d.n(), d.t()));
    }
    s
}

/// Exact structural checks on the digraph for `n` in `{2, 4, 6, 8}`.
pub fn dag_suite() -> SuiteReport {
    let mut s = SuiteReport::new("dag-structure");
    for n in [2usize, 4, 6, 8] {
        let dag = build_dag_with(n, DagRules::FROZEN);
        let n3 = n * n * n;
        s.record(dag.vertex_count() == 2 * n3 + 3, || {
            format!("n = {n}: vertex count")
        });
        s.record(dag.max_in_degree() <= n, || format!("n = {n}: in-degree"));
        s.record(dag.longest_path() <= n + 1, || {
            format!("n = {n}: path length")
        });
        s.record(dag.is_acyclic(), || format!("n = {n}: cycle"));
    }
    s
}

pub fn matching_case(seed: u64) -> MatchingInstance {
    let n = 2 * (1 + seed % 5) as usize;
    let m = n + (seed / 5 % (2 * n as u64)) as usize;
    let t = (seed / 7 % 3) as u32;
    gen::matching_instance(n, m, t, 5, seed).expect("parameters are feasible")
}

pub fn matching_suite(trials: u64, seed: u64) -> SuiteReport {
    let mut s = SuiteReport::new("parity-matching");
    for i in 0..trials {
        let case = derive_seed(seed, i);
        let inst = matching_case(case);
        let exact = brute::min_parity_matching(&inst);
        let got = parity_matching(&inst, 2, 20, case);
        s.record(got == Ok(exact), || {
            format!("case {case}: got {got:?}, exact {exact}")
        });
    }
    s
}

pub fn walk_suite(trials: u64, seed: u64) -> SuiteReport {
    let mut s = SuiteReport::new("parity-walk-cycle");
    for i in 0..trials {
        let case = derive_seed(seed, i);
        let n = 1 + (case % 8) as usize;
        let m = (case / 8 % 15) as usize;
        let t = (case / 120 % 3) as u32;
        let pg = gen::parity_graph(n, m, t, case).expect("feasible");
        let mut ok = true;
        for a in Parity::all(t) {
            ok &= parity_cycle(&pg, a).ok() == brute::parity_cycle(&pg, a).ok();
            for u in 1..=n {
                for v in 1..=n {
                    ok &= parity_walk(&pg, a, u, v).ok() == Some(brute::parity_walk(&pg, a, u, v));
                }
            }
        }
        s.record(ok, || format!("case {case}"));
    }
    s
}

pub fn join_suite(trials: u64, seed: u64) -> SuiteReport {
    let mut s = SuiteReport::new("parity-join");
    for i in 0..trials {
        let case = derive_seed(seed, i);
        let k = [0, 2, 4, 6][(case % 4) as usize];
        let n = 6 + (case / 4 % 3) as usize;
        let m = 6 + (case / 12 % 11) as usize;
        let t = (case / 132 % 3) as u32;
        let (pg, terms, alpha) = gen::parity_join_instance(n, m, t, k, case).expect("feasible");
        let exact = brute::parity_join(&pg, &terms, alpha).expect("small");
        let got = parity_join(&pg, &terms, alpha, 2, 20, case);
        let bounded = exact.value().is_none_or(|v| v <= join_size_bound(t, n));
        s.record(got == Ok(exact) && bounded, || {
            format!("case {case}: got {got:?}, exact {exact}")
        });
    }
    s
}

/// Set variant against enumeration, plus the density bound
/// `(n - 2^t) k <= 4 |E|`.
pub fn evencut_set_suite(trials: u64, seed: u64) -> SuiteReport {
    let mut s = SuiteReport::new("evencut-set");
    for i in 0..trials {
        let case = derive_seed(seed, i);
        let n = 3 + (case % 8) as usize;
        let m = n - 1 + (case / 8 % (2 * n as u64)) as usize;
        let t = (case / 100 % 3) as u32;
        let inst = gen::evencut_set(n, m, t, case).expect("feasible");
        let Some((k, _)) = brute::set_even_cut(&inst).expect("small") else {
            s.record(true, String::new);
            continue;
        };
        let got = set_min_even_cut(&inst, 1, case, ContractionOptions::default());
        let density = (n as i64 - (1i64 << t)) * k as i64 <= 4 * m as i64;
        s.record(got.as_ref().is_ok_and(|r| r.size == k) && density, || {
            format!("case {case}: exact {k}, got {:?}", got.map(|r| r.size))
        });
    }
    s
}

pub fn evencut_dim_case(seed: u64) -> EvenCutInstance {
    let n = 2 + (seed % 9) as usize;
    let m = n - 1 + (seed / 9 % (2 * n as u64)) as usize;
    let t = (seed / 200 % 3) as u32;
    gen::evencut_dim(n, m, t, seed).expect("feasible")
}

/// Dimensional variant against enumeration, plus the density bound
/// `(n - 2^t) k <= 4 (|E| - loops)`.
pub fn evencut_dim_suite(trials: u64, seed: u64) -> SuiteReport {
    let mut s = SuiteReport::new("evencut-dim");
    for i in 0..trials {
        let case = derive_seed(seed, i);
        let inst = evencut_dim_case(case);
        let exact = brute::dim_cogirth(&inst).expect("small");
        let Some(k) = exact.value() else {
            s.record(true, String::new);
            continue;
        };
        let got = dim_min_cocycle(&inst, 1, case, ContractionOptions::default());
        let (n, m, l) = (
            inst.graph.n() as i64,
            inst.graph.m() as i64,
            inst.graph.loop_count() as i64,
        );
        let density = (n - (1i64 << inst.t)) * k as i64 <= 4 * (m - l);
        s.record(
            got.as_ref().is_ok_and(|r| r.size as u64 == k) && density,
            || format!("case {case}: exact {k}, got {:?}", got.map(|r| r.size)),
        );
    }
    s
}

/// Single-run success frequency of the parity matching on `inst`, tested
/// against `1 - 1/(2c)` with `c = 2`.
pub fn matching_rate(inst: &MatchingInstance, runs: u64, seed: u64) -> (u64, bool) {
    let exact = brute::min_parity_matching(inst);
    let reduced = dedupe_parallel(inst);
    let hits = (0..runs)
        .filter(|&i| {
            parity_matching_once(&reduced, 2, &mut rng_from_seed(derive_seed(seed, i))) == exact
        })
        .count() as u64;
    (
        hits,
        brute::binomial_at_least(hits, runs, 0.75, BINOMIAL_LEVEL),
    )
}

/// Single-run success frequency of dimensional random contraction on a
/// feasible connected `inst`, tested against `24 / n^4`.
pub fn contraction_rate(inst: &EvenCutInstance, runs: u64, seed: u64) -> (u64, bool) {
    let exact = dim_exhaustive(inst).expect("feasible").size;
    let opts = ContractionOptions::default();
    let hits = (0..runs)
        .filter(|&i| {
            let mut rng = rng_from_seed(derive_seed(seed, i));
            dim_random_contraction(inst, &mut rng, opts).is_ok_and(|r| r.size == exact)
        })
        .count() as u64;
    let p0 = 24.0 / (inst.graph.n() as f64).powi(4);
    (
        hits,
        brute::binomial_at_least(hits, runs, p0, BINOMIAL_LEVEL),
    )
}

/// The fixed matching instance of the rate test: a 6-cycle with two chords
/// and mixed parities.
pub fn rate_matching_instance() -> MatchingInstance {
    use crate::graph::{EdgeLabeling, MultiGraph};
    let edges = [
        (1, 2, 1, 1),
        (2, 3, 2, 0),
        (3, 4, 1, 0),
        (4, 5, 3, 1),
        (5, 6, 1, 0),
        (6, 1, 2, 1),
        (1, 4, 1, 1),
        (2, 5, 4, 0),
    ];
    let pairs: Vec<_> = edges.iter().map(|e| (e.0, e.1)).collect();
    let g = MultiGraph::from_pairs(6, &pairs).expect("valid");
    let w = EdgeLabeling::from_vec(&g, edges.iter().map(|e| e.2).collect());
    let p = EdgeLabeling::from_vec(&g, edges.iter().map(|e| Parity(e.3)).collect());
    MatchingInstance::new(g, 1, w, p, Parity(1)).expect("valid")
}

/// The fixed dimensional instance of the rate test: 12 vertices, `t = 1`.
pub fn rate_contraction_instance() -> EvenCutInstance {
    gen::evencut_dim(12, 20, 1, 12).expect("feasible")
}

pub fn rates_suite(trials: u64, seed: u64) -> SuiteReport {
    let mut s = SuiteReport::new("single-run-rates");
    let (hits, ok) = matching_rate(&rate_matching_instance(), 20 * trials, seed);
    s.record(ok, || format!("matching: {hits}/{} successes", 20 * trials));
    let (hits, ok) = contraction_rate(&rate_contraction_instance(), 100 * trials, seed);
    s.record(ok, || {
        format!("contraction: {hits}/{} successes", 100 * trials)
    });
    s
}

/// Every suite with `trials` cases each; `trials = 0` gives an empty report.
pub fn selftest(trials: u64, seed: u64, opts: SelftestOptions) -> SelftestReport {
    if trials == 0 {
        return SelftestReport::default();
    }
    let sub = |k| derive_seed(seed, k);
    SelftestReport {
        suites: vec![
            dag_suite(),
            pfaffian_suite(trials, sub(1), opts),
            matching_suite(trials, sub(2)),
            walk_suite(trials, sub(3)),
            join_suite(trials, sub(4)),
            evencut_set_suite(trials, sub(5)),
            evencut_dim_suite(trials, sub(6)),
            girth_suite(trials, sub(7)),
            cogirth_suite(trials, sub(8)),
            rates_suite(trials, sub(9)),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_trials_is_empty() {
        let r = selftest(0, 1, SelftestOptions::default());
        assert!(r.suites.is_empty());
        assert!(r.ok());
        assert_eq!(r.to_string(), "");
    }

    #[test]
    fn mutation_is_caught() {
        let good = pfaffian_suite(10, 3, SelftestOptions::default());
        assert!(good.ok(), "{:?}", good.failures);
        let bad = pfaffian_suite(10, 3, SelftestOptions { mutate_dag: true });
        assert!(!bad.ok());
    }

    #[test]
    fn dag_structure_holds() {
        assert!(dag_suite().ok());
    }
}
