//! Acceptance suite. Runs as a plain binary (no libtest harness) so that
//! every criterion prints exactly one PASS/FAIL line.
//!
//! Reference values come from independent oracles: exhaustive search over
//! colorings, enumeration of deleted edge sets, and a second LP backend.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use ecc::exact::{
    decide, decide_branching, kernelize, optimize_via_decision, xp_optimum, BranchingConfig, BruteForce,
    DecisionInstance, Objective,
};
use ecc::greedy::greedy;
use ecc::io::{format_hypergraph, read_hypergraph};
use ecc::lp::{build_lp, solve_lp, DenseSimplex, LpSolver, VarRole};
use ecc::metrics::{measure_alpha, measure_beta, run_experiment, ExperimentConfig};
use ecc::rounding::{round, round_local, RoundingParams};
use ecc::synthetic::{random_suite, PlantedOverlap, SmallInstanceBounds};
use ecc::{evaluate, EdgeColoredHypergraph, Variant, VariantKind};

const SUITE_SEED: u64 = 20_240_601;
const SUITE_SIZE: usize = 1000;
const TOL: f64 = 1e-6;
/// Large enough for every suite instance; branch and bound keeps it fast.
const ORACLE_LIMIT: u128 = 1 << 40;

/// Collects violations, keeping the first few for the report.
#[derive(Default)]
struct Violations {
    count: usize,
    examples: Vec<String>,
}

impl Violations {
    fn push(&mut self, msg: String) {
        self.count += 1;
        if self.examples.len() < 5 {
            self.examples.push(msg);
        }
    }
}

struct Shared(Mutex<Violations>);

impl Shared {
    fn new() -> Self {
        Self(Mutex::new(Violations::default()))
    }

    fn check(&self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.0.lock().unwrap().push(msg());
        }
    }

    fn into_inner(self) -> Violations {
        self.0.into_inner().unwrap()
    }
}

struct Outcome {
    pass: bool,
    detail: String,
    elapsed: Duration,
}

fn outcome(v: Violations, checks: usize, elapsed: Duration, limit: Duration) -> Outcome {
    let in_time = elapsed < limit;
    let mut detail = format!("{checks} checks, {} violations", v.count);
    if !in_time {
        detail.push_str(&format!(", over the {:.0} s limit", limit.as_secs_f64()));
    }
    for ex in v.examples {
        detail.push_str(&format!("\n      {ex}"));
    }
    Outcome {
        pass: v.count == 0 && in_time,
        detail,
        elapsed,
    }
}

/// The variants and budgets exercised on every suite instance.
fn grid() -> Vec<Variant> {
    let mut out: Vec<Variant> = (1..=3).map(|b| Variant::local(b).unwrap()).collect();
    out.extend((0..=3).map(Variant::global));
    out.extend((0..=3).map(Variant::robust));
    out
}

fn label(i: usize, v: Variant) -> String {
    format!("instance {i}, {} b={}", v.kind, v.budget)
}

/// Exact optima for one instance and variant.
struct Oracle {
    mistakes: usize,
    linear: usize,
}

fn oracle(h: &EdgeColoredHypergraph, v: Variant) -> Oracle {
    let bf = BruteForce::with_limit(ORACLE_LIMIT);
    Oracle {
        mistakes: bf
            .optimum(h, v, Objective::Mistakes)
            .expect("suite instances fit the oracle")
            .0,
        linear: bf
            .optimum(h, v, Objective::Linear)
            .expect("suite instances fit the oracle")
            .0,
    }
}

struct Suite {
    instances: Vec<EdgeColoredHypergraph>,
    /// `oracles[i][j]` for instance `i` and `grid()[j]`.
    oracles: Vec<Vec<Oracle>>,
    build_time: Duration,
}

fn build_suite() -> Suite {
    let start = Instant::now();
    let instances = random_suite(SUITE_SEED, SUITE_SIZE, SmallInstanceBounds::default());
    let oracles = instances
        .par_iter()
        .map(|h| grid().into_iter().map(|v| oracle(h, v)).collect())
        .collect();
    Suite {
        instances,
        oracles,
        build_time: start.elapsed(),
    }
}

/// Robust relaxation on the four-node instance with two edges of unique colors.
fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut v = Violations::default();
    let h = EdgeColoredHypergraph::new(4, 2, vec![(0, vec![0, 1, 2]), (1, vec![1, 2, 3])]).unwrap();
    let variant = Variant::robust(1);
    let model = build_lp(&h, variant);

    for (name, solver) in [
        ("minilp", &ecc::lp::MinilpSolver as &dyn LpSolver),
        ("dense", &DenseSimplex::default()),
    ] {
        match solver.solve(&model) {
            Ok(sol) if sol.objective.abs() <= TOL => {}
            Ok(sol) => v.push(format!("{name} LP optimum {} is not 0", sol.objective)),
            Err(e) => v.push(format!("{name} failed: {e}")),
        }
    }

    // half of each color and half a deletion on the two shared nodes
    let point = model.point(|role| match role {
        VarRole::NodeColor { node: 1 | 2, .. } | VarRole::Deletion(1 | 2) => 0.5,
        _ => 0.0,
    });
    let violation = model.max_violation(&point);
    if violation > 1e-9 || model.objective_value(&point) != 0.0 {
        v.push(format!("fractional point violates the model by {violation}"));
    }

    let bf = BruteForce::default()
        .optimum(&h, variant, Objective::Mistakes)
        .map(|r| r.0);
    if bf.as_ref().ok() != Some(&1) {
        v.push(format!("brute force optimum {bf:?}, expected 1"));
    }
    let br = optimize_via_decision(&h, variant, &BranchingConfig::default()).map(|r| r.0);
    if br.as_ref().ok() != Some(&1) {
        v.push(format!("branching optimum {br:?}, expected 1"));
    }
    let no = decide_branching(
        &DecisionInstance::new(h.clone(), variant, 0),
        &BranchingConfig::default(),
    );
    if !matches!(no, Ok(ref d) if !d.is_yes()) {
        v.push("branching accepts 0 mistakes".into());
    }
    outcome(v, 6, start.elapsed(), Duration::from_secs(1))
}

/// Rounding thresholds with their closed-form promised (alpha, beta) pairs.
fn presets(v: Variant) -> Vec<(f64, (f64, f64))> {
    let b = v.budget as f64;
    match v.kind {
        VariantKind::Local => vec![(b / (b + 1.0), (b + 1.0, 1.0)), (0.5, (2.0, 2.0 - 1.0 / b))],
        VariantKind::Global => vec![(0.5, (2.0 * b + 5.0, 2.0))],
        VariantKind::Robust => vec![(1.0 / 3.0, (6.0, 3.0)), (0.25, (4.0, 4.0))],
    }
}

fn criterion_2(suite: &Suite) -> Outcome {
    let start = Instant::now();
    let shared = Shared::new();
    let checks: usize = suite
        .instances
        .par_iter()
        .enumerate()
        .map(|(i, h)| {
            let mut checks = 0;
            for v in grid() {
                let sol = match solve_lp(&build_lp(h, v)) {
                    Ok(sol) => sol,
                    Err(e) => {
                        shared.check(false, || format!("{}: LP failed: {e}", label(i, v)));
                        continue;
                    }
                };
                for (t, (pa, pb)) in presets(v) {
                    checks += 1;
                    let out = match round(h, &sol, RoundingParams::new(v.kind, t)) {
                        Ok(out) => out,
                        Err(e) => {
                            shared.check(false, || format!("{}: rounding failed: {e}", label(i, v)));
                            continue;
                        }
                    };
                    let c = out.certificate;
                    let report = evaluate(h, &out.assignment, v.kind);
                    let alpha = measure_alpha(report.mistakes, sol.objective);
                    let beta = measure_beta(v.kind, report.budget_used, v.budget);
                    let promised_match = (c.promised_alpha - pa).abs() < 1e-9 && (c.promised_beta - pb).abs() < 1e-9;
                    let within = alpha <= pa * (1.0 + TOL) && beta <= pb * (1.0 + TOL);
                    shared.check(promised_match && within && c.holds(), || {
                        format!(
                            "{} param {t:.4}: alpha {alpha} / {pa}, beta {beta} / {pb}, certificate promises ({}, {})",
                            label(i, v),
                            c.promised_alpha,
                            c.promised_beta
                        )
                    });
                }
            }
            checks
        })
        .sum();
    outcome(shared.into_inner(), checks, start.elapsed(), Duration::from_secs(300))
}

fn criterion_3(suite: &Suite) -> Outcome {
    let start = Instant::now();
    let shared = Shared::new();
    let checks: usize = suite
        .instances
        .par_iter()
        .enumerate()
        .map(|(i, h)| {
            let r = h.rank();
            for (j, v) in grid().into_iter().enumerate() {
                let o = &suite.oracles[i][j];
                let a = greedy(h, v).assignment;
                let report = evaluate(h, &a, v.kind);
                shared.check(v.is_feasible(&a), || format!("{}: greedy infeasible", label(i, v)));
                shared.check(report.linear_penalty == o.linear, || {
                    format!(
                        "{}: greedy linear penalty {} vs optimum {}",
                        label(i, v),
                        report.linear_penalty,
                        o.linear
                    )
                });
                shared.check(report.mistakes <= r * o.mistakes, || {
                    format!(
                        "{}: greedy mistakes {} > {r} x {}",
                        label(i, v),
                        report.mistakes,
                        o.mistakes
                    )
                });
            }
            3 * grid().len()
        })
        .sum();
    outcome(
        shared.into_inner(),
        checks,
        start.elapsed() + suite.build_time,
        Duration::MAX,
    )
}

/// LP optimum <= exact optimum <= mistakes of every feasible output.
fn criterion_4(suite: &Suite) -> Outcome {
    let start = Instant::now();
    let shared = Shared::new();
    let checks: usize = suite
        .instances
        .par_iter()
        .enumerate()
        .map(|(i, h)| {
            let mut checks = 0;
            for (j, v) in grid().into_iter().enumerate() {
                let opt = suite.oracles[i][j].mistakes;
                let model = build_lp(h, v);
                let (lp, dense) = match (solve_lp(&model), DenseSimplex::default().solve(&model)) {
                    (Ok(a), Ok(b)) => (a, b),
                    (a, b) => {
                        shared.check(false, || {
                            format!("{}: LP failed: {:?} {:?}", label(i, v), a.err(), b.err())
                        });
                        continue;
                    }
                };
                checks += 1;
                shared.check((lp.objective - dense.objective).abs() <= TOL, || {
                    format!(
                        "{}: LP backends disagree, {} vs {}",
                        label(i, v),
                        lp.objective,
                        dense.objective
                    )
                });
                checks += 1;
                shared.check(lp.objective <= opt as f64 + TOL, || {
                    format!("{}: LP {} above optimum {opt}", label(i, v), lp.objective)
                });

                let xp = xp_optimum(h, v, ORACLE_LIMIT).map(|r| r.0);
                checks += 1;
                shared.check(xp.as_ref().ok() == Some(&opt), || {
                    format!("{}: edge enumeration gives {xp:?}, colorings give {opt}", label(i, v))
                });

                let mut outputs = vec![("greedy", greedy(h, v).assignment)];
                match optimize_via_decision(h, v, &BranchingConfig::default()) {
                    Ok((t, cert)) => {
                        checks += 1;
                        shared.check(t == opt, || format!("{}: branching optimum {t} vs {opt}", label(i, v)));
                        outputs.push(("exact", cert.assignment));
                    }
                    Err(e) => shared.check(false, || format!("{}: branching failed: {e}", label(i, v))),
                }
                for (t, _) in presets(v) {
                    if let Ok(out) = round(h, &lp, RoundingParams::new(v.kind, t)) {
                        outputs.push(("lp-round", out.assignment));
                    }
                }
                for (name, a) in outputs {
                    // bicriteria outputs may overspend and beat the optimum
                    if !v.is_feasible(&a) {
                        continue;
                    }
                    checks += 1;
                    let m = evaluate(h, &a, v.kind).mistakes;
                    shared.check(opt <= m, || {
                        format!("{}: {name} makes {m} < optimum {opt}", label(i, v))
                    });
                }
            }
            checks
        })
        .sum();
    outcome(shared.into_inner(), checks, start.elapsed(), Duration::MAX)
}

fn criterion_5(suite: &Suite) -> Outcome {
    let start = Instant::now();
    let shared = Shared::new();
    let cfg = BranchingConfig::default();
    let checks: usize = suite
        .instances
        .par_iter()
        .enumerate()
        .map(|(i, h)| {
            let mut checks = 0;
            for (j, v) in grid().into_iter().enumerate() {
                let opt = suite.oracles[i][j].mistakes;
                for t in 0..=4 {
                    let expected = opt <= t;
                    let inst = DecisionInstance::new(h.clone(), v, t);
                    let ctx = || format!("{} t={t}", label(i, v));
                    checks += 3;
                    match decide_branching(&inst, &cfg) {
                        Ok(d) => {
                            shared.check(d.is_yes() == expected, || {
                                format!("{}: branching says {}", ctx(), d.is_yes())
                            });
                            if let Some(cert) = &d.certificate {
                                let bad = cert.violation(h, v, t);
                                shared.check(bad.is_none(), || format!("{}: bad certificate: {bad:?}", ctx()));
                            }
                        }
                        Err(e) => shared.check(false, || format!("{}: branching failed: {e}", ctx())),
                    }
                    match decide(&inst, true, &cfg) {
                        Ok(d) => {
                            shared.check(d.is_yes() == expected, || {
                                format!("{}: kernel route says {}", ctx(), d.is_yes())
                            });
                            if let Some(cert) = &d.certificate {
                                let bad = cert.violation(h, v, t);
                                shared.check(bad.is_none(), || format!("{}: bad lifted certificate: {bad:?}", ctx()));
                            }
                        }
                        Err(e) => shared.check(false, || format!("{}: kernel route failed: {e}", ctx())),
                    }
                    let k = kernelize(&inst);
                    shared.check(!(k.exceeds_bound && expected), || {
                        format!("{}: kernel bound rejects a yes-instance", ctx())
                    });
                }
            }
            checks
        })
        .sum();
    outcome(shared.into_inner(), checks, start.elapsed(), Duration::MAX)
}

fn criterion_6(suite: &Suite) -> Outcome {
    let start = Instant::now();
    let shared = Shared::new();
    let checks: usize = suite
        .instances
        .par_iter()
        .enumerate()
        .map(|(i, h)| {
            for b in 1..=3 {
                let v = Variant::local(b).unwrap();
                let out =
                    solve_lp(&build_lp(h, v)).and_then(|sol| round_local(h, &sol, RoundingParams::single_criteria(b)));
                match out {
                    Ok(out) => {
                        let most = out.assignment.max_colors();
                        let c = out.certificate;
                        shared.check(most <= b && c.promised_beta == 1.0 && c.observed_beta <= 1.0, || {
                            format!(
                                "{}: {most} colors on a node, promised beta {}",
                                label(i, v),
                                c.promised_beta
                            )
                        });
                    }
                    Err(e) => shared.check(false, || format!("{}: {e}", label(i, v))),
                }
            }
            3
        })
        .sum();
    outcome(shared.into_inner(), checks, start.elapsed(), Duration::MAX)
}

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

/// Full budget sweeps on the bundled planted-overlap dataset.
fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut v = Violations::default();
    let mut checks = 0;

    let planted = data_dir().join("planted200.ecc");
    let h = match read_hypergraph(&planted) {
        Ok(h) => h,
        Err(e) => {
            v.push(format!("cannot read {}: {e}", planted.display()));
            return outcome(v, 1, start.elapsed(), Duration::from_secs(60));
        }
    };
    checks += 1;
    if format_hypergraph(&h) != format_hypergraph(&PlantedOverlap::default().generate()) {
        v.push("bundled dataset differs from the seeded generator".into());
    }

    for variant in ["local", "global", "robust"] {
        let path = data_dir().join(format!("sweep_{variant}.json"));
        let config = match ExperimentConfig::from_json_file(&path) {
            Ok(c) => c,
            Err(e) => {
                v.push(format!("{}: {e}", path.display()));
                continue;
            }
        };
        let (first, second) = match (run_experiment(&config), run_experiment(&config)) {
            (Ok(a), Ok(b)) => (a, b),
            (a, b) => {
                v.push(format!("{variant} sweep failed: {:?} {:?}", a.err(), b.err()));
                continue;
            }
        };
        checks += 1;
        if first.rows.is_empty() || first.summary.is_empty() {
            v.push(format!("{variant} sweep produced no rows"));
        }
        for row in &first.rows {
            checks += 1;
            let ctx = format!("{variant} {} b={} {}", row.algorithm, row.b, row.param);
            if let Some(e) = &row.error {
                v.push(format!("{ctx}: {e}"));
                continue;
            }
            let (m, s, lp) = (row.mistakes.unwrap(), row.satisfied.unwrap(), row.lp_value.unwrap());
            if s + m != h.num_edges() {
                v.push(format!("{ctx}: satisfied + mistakes != |E|"));
            }
            let bound = h.num_edges() as f64 - lp;
            if bound > TOL && (row.satisfied_pct_of_bound.unwrap() - s as f64 / bound).abs() > 1e-12 {
                v.push(format!("{ctx}: satisfied fraction disagrees with the LP bound"));
            }
            if !row.within_promise() {
                v.push(format!(
                    "{ctx}: alpha {:?} beta {:?} outside the promise",
                    row.alpha, row.beta
                ));
            }
        }
        checks += 1;
        let strip = |rows: &[ecc::metrics::ExperimentRow]| {
            rows.iter()
                .cloned()
                .map(|mut r| {
                    r.runtime_ms = None;
                    r
                })
                .collect::<Vec<_>>()
        };
        if strip(&first.rows) != strip(&second.rows) || first.summary != second.summary {
            v.push(format!("{variant} sweep is not reproducible"));
        }
        for s in &first.summary {
            let worst = first
                .rows
                .iter()
                .filter(|r| r.algorithm == s.algorithm && r.param == s.param)
                .filter_map(|r| r.alpha)
                .fold(0.0, f64::max);
            checks += 1;
            if worst != s.max_alpha {
                v.push(format!(
                    "{variant} {}: summary max alpha {} vs rows {worst}",
                    s.algorithm, s.max_alpha
                ));
            }
        }
    }
    outcome(v, checks, start.elapsed(), Duration::from_secs(60))
}

fn main() -> ExitCode {
    let names = [
        "gap instance: LP 0, exact optimum 1",
        "rounding presets within promised factors",
        "greedy optimal for linear penalty, r-approximate",
        "LP <= optimum <= feasible outputs",
        "branching and kernel agree with brute force",
        "rho = b/(b+1) never exceeds the local budget",
        "bundled planted dataset sweeps",
    ];
    let mut results = vec![criterion_1()];
    let suite = build_suite();
    let cases: Vec<&Oracle> = suite.oracles.iter().flatten().collect();
    let hard = cases.iter().filter(|o| o.mistakes > 0).count();
    println!(
        "suite: {} instances, {hard} of {} cases need mistakes, oracles in {:.2} s",
        suite.instances.len(),
        cases.len(),
        suite.build_time.as_secs_f64()
    );
    results.push(criterion_2(&suite));
    results.push(criterion_3(&suite));
    results.push(criterion_4(&suite));
    results.push(criterion_5(&suite));
    results.push(criterion_6(&suite));
    results.push(criterion_7());

    let mut failed = 0;
    for (i, (name, r)) in names.iter().zip(&results).enumerate() {
        let status = if r.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {}: {status} {name} ({:.2} s; {})",
            i + 1,
            r.elapsed.as_secs_f64(),
            r.detail
        );
        failed += usize::from(!r.pass);
    }
    println!(
        "acceptance: {} of {} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
