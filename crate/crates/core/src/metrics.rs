//! Approximation measurements and budget-sweep experiments.
//!
//! Mistakes are compared against the LP lower bound (alpha) and budget use
//! against the budget (beta). A sweep produces one CSV row per dataset,
//! budget, algorithm and rounding parameter, plus a summary holding the
//! worst alpha and beta of each algorithm across the budget grid.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{EccError, Result};
use crate::exact::{optimize_via_decision, BranchingConfig};
use crate::greedy::greedy;
use crate::io::read_hypergraph;
use crate::lp::{build_lp, solve_lp, LpSolution};
use crate::model::{evaluate, ColorAssignment, EdgeColoredHypergraph, Variant, VariantKind};
use crate::rounding::{round, RoundingParams};

/// LP values at or below this count as zero.
pub const ZERO_TOL: f64 = 1e-6;

/// Mistakes over the LP lower bound. `1` when both are zero, infinite when
/// only the bound is.
pub fn measure_alpha(mistakes: usize, lp_value: f64) -> f64 {
    if lp_value <= ZERO_TOL {
        if mistakes == 0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        mistakes as f64 / lp_value
    }
}

/// Budget use over the budget. `used` is the largest color set for local,
/// the extra colors for global and the deleted nodes for robust. A zero
/// budget gives `1` if unused and infinity otherwise.
pub fn measure_beta(_kind: VariantKind, used: usize, budget: usize) -> f64 {
    if budget == 0 {
        if used == 0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        used as f64 / budget as f64
    }
}

/// Rounds up to three decimals; infinity prints as `inf`.
pub fn format_ratio(x: f64) -> String {
    if x.is_infinite() {
        "inf".into()
    } else {
        format!("{:.3}", (x * 1000.0 - 1e-9).ceil() / 1000.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamSpec {
    Value(f64),
    /// `"single"`: `rho = b/(b+1)` for the local variant.
    Named(NamedParam),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NamedParam {
    Single,
}

impl ParamSpec {
    fn resolve(self, kind: VariantKind, b: usize) -> Result<f64> {
        match (self, kind) {
            (ParamSpec::Value(x), _) => Ok(x),
            (ParamSpec::Named(NamedParam::Single), VariantKind::Local) => Ok(b as f64 / (b as f64 + 1.0)),
            (ParamSpec::Named(NamedParam::Single), _) => Err(EccError::Config(
                "the 'single' preset only applies to the local variant".into(),
            )),
        }
    }

    fn label(self, kind: VariantKind) -> String {
        let name = match kind {
            VariantKind::Local => "rho",
            VariantKind::Global => "delta",
            VariantKind::Robust => "eps",
        };
        match self {
            ParamSpec::Value(x) => format!("{name}={}", format_param(x)),
            ParamSpec::Named(NamedParam::Single) => format!("{name}=single"),
        }
    }
}

fn format_param(x: f64) -> String {
    let s = format!("{x:.6}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Algorithm {
    #[serde(rename = "greedy")]
    Greedy,
    #[serde(rename = "lp-round")]
    LpRound,
    #[serde(rename = "exact")]
    Exact,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Greedy => "greedy",
            Algorithm::LpRound => "lp-round",
            Algorithm::Exact => "exact",
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Hypergraph files; relative paths resolve against the config file.
    pub datasets: Vec<PathBuf>,
    pub variant: VariantKind,
    pub algorithms: Vec<Algorithm>,
    /// Local: absolute budgets. Global: multiples of `|V|`. Robust:
    /// fractions of `|V|` in `[0, 1]`. Resolved budgets are rounded down.
    pub budgets: Vec<f64>,
    /// Rounding thresholds for `lp-round`; a variant default if empty.
    #[serde(default)]
    pub params: Vec<ParamSpec>,
    #[serde(default)]
    pub fill: Option<bool>,
    #[serde(default)]
    pub workers: Option<usize>,
    /// Search-tree node limit for the `exact` algorithm.
    #[serde(default = "default_exact_limit")]
    pub exact_search_limit: u64,
}

fn default_exact_limit() -> u64 {
    1_000_000
}

impl ExperimentConfig {
    pub fn from_json_file(path: &Path) -> Result<Self> {
        let mut config: Self = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        let base = path.parent().unwrap_or(Path::new("."));
        for d in &mut config.datasets {
            if d.is_relative() {
                *d = base.join(&*d);
            }
        }
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.budgets.is_empty() {
            return Err(EccError::Config("budget grid is empty".into()));
        }
        for &x in &self.budgets {
            let ok = match self.variant {
                VariantKind::Local => x >= 1.0 && x.fract() == 0.0,
                VariantKind::Global => x >= 0.0,
                VariantKind::Robust => (0.0..=1.0).contains(&x),
            };
            if !ok {
                return Err(EccError::Config(format!(
                    "budget {x} is invalid for the {} variant",
                    self.variant
                )));
            }
        }
        for p in self.rounding_params() {
            let t = p.resolve(self.variant, 1)?;
            let hi = if self.variant == VariantKind::Robust { 0.5 } else { 1.0 };
            if !(t > 0.0 && t < hi) {
                return Err(EccError::Config(format!("rounding parameter {t} is out of range")));
            }
        }
        if self.workers == Some(0) {
            return Err(EccError::Config("workers must be positive".into()));
        }
        Ok(())
    }

    fn rounding_params(&self) -> Vec<ParamSpec> {
        if !self.params.is_empty() {
            return self.params.clone();
        }
        vec![ParamSpec::Value(match self.variant {
            VariantKind::Local | VariantKind::Global => 0.5,
            VariantKind::Robust => 1.0 / 3.0,
        })]
    }

    /// Integer budgets for a hypergraph with `n` nodes, duplicates dropped.
    pub fn resolve_budgets(&self, n: usize) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for &x in &self.budgets {
            let b = match self.variant {
                VariantKind::Local => x as usize,
                VariantKind::Global | VariantKind::Robust => (x * n as f64 + 1e-9).floor() as usize,
            };
            if !out.contains(&b) {
                out.push(b);
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRow {
    pub dataset: String,
    pub variant: VariantKind,
    pub algorithm: String,
    pub b: usize,
    pub param: String,
    pub lp_value: Option<f64>,
    pub mistakes: Option<usize>,
    pub alpha: Option<f64>,
    pub budget_used: Option<usize>,
    pub beta: Option<f64>,
    pub satisfied: Option<usize>,
    pub satisfied_pct_of_bound: Option<f64>,
    pub unused_nodes: Option<usize>,
    pub runtime_ms: Option<f64>,
    pub error: Option<String>,
    /// Promised factors for `lp-round` rows.
    #[serde(skip)]
    pub promised: Option<(f64, f64)>,
}

pub const CSV_HEADER: [&str; 15] = [
    "dataset",
    "variant",
    "algorithm",
    "b",
    "param",
    "lp_value",
    "mistakes",
    "alpha",
    "budget_used",
    "beta",
    "satisfied",
    "satisfied_pct_of_bound",
    "unused_nodes",
    "runtime_ms",
    "error",
];

impl ExperimentRow {
    fn record(&self) -> Vec<String> {
        fn opt<T: ToString>(x: Option<T>) -> String {
            x.map(|v| v.to_string()).unwrap_or_default()
        }
        vec![
            self.dataset.clone(),
            self.variant.to_string(),
            self.algorithm.clone(),
            self.b.to_string(),
            self.param.clone(),
            self.lp_value.map(|x| format!("{x:.6}")).unwrap_or_default(),
            opt(self.mistakes),
            self.alpha.map(format_ratio).unwrap_or_default(),
            opt(self.budget_used),
            self.beta.map(format_ratio).unwrap_or_default(),
            opt(self.satisfied),
            self.satisfied_pct_of_bound
                .map(|x| format!("{x:.6}"))
                .unwrap_or_default(),
            opt(self.unused_nodes),
            self.runtime_ms.map(|x| format!("{x:.3}")).unwrap_or_default(),
            self.error.clone().unwrap_or_default(),
        ]
    }

    /// Whether the row's rounding guarantee holds (true for other algorithms).
    pub fn within_promise(&self) -> bool {
        match (self.promised, self.alpha, self.beta) {
            (Some((pa, pb)), Some(a), Some(b)) => {
                let tol = 1.0 + crate::rounding::RATIO_TOL;
                a <= pa * tol && b <= pb * tol
            }
            _ => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub dataset: String,
    pub variant: VariantKind,
    pub algorithm: String,
    pub param: String,
    pub max_alpha: f64,
    pub max_beta: f64,
    pub rows: usize,
    pub failures: usize,
}

#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub rows: Vec<ExperimentRow>,
    pub summary: Vec<SummaryRow>,
}

struct Job<'a> {
    name: String,
    h: &'a EdgeColoredHypergraph,
    b: usize,
}

fn dataset_name(path: &Path) -> String {
    path.file_stem()
        .map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutput> {
    config.validate()?;
    let mut graphs = Vec::with_capacity(config.datasets.len());
    for path in &config.datasets {
        graphs.push((dataset_name(path), read_hypergraph(path)?));
    }
    Ok(run_on(config, &graphs))
}

/// Runs the sweep on already loaded hypergraphs.
pub fn run_on(config: &ExperimentConfig, graphs: &[(String, EdgeColoredHypergraph)]) -> ExperimentOutput {
    let jobs: Vec<Job> = graphs
        .iter()
        .flat_map(|(name, h)| {
            config.resolve_budgets(h.num_nodes()).into_iter().map(move |b| Job {
                name: name.clone(),
                h,
                b,
            })
        })
        .collect();

    log::info!("running {} dataset/budget units", jobs.len());
    let work = || jobs.par_iter().map(|job| run_job(config, job)).collect::<Vec<_>>();
    let per_job = match config.workers {
        Some(w) => match rayon::ThreadPoolBuilder::new().num_threads(w).build() {
            Ok(pool) => pool.install(work),
            Err(_) => work(),
        },
        None => work(),
    };
    let rows: Vec<ExperimentRow> = per_job.into_iter().flatten().collect();
    let summary = summarize(&rows);
    ExperimentOutput { rows, summary }
}

fn run_job(config: &ExperimentConfig, job: &Job) -> Vec<ExperimentRow> {
    let kind = config.variant;
    let blank = |algorithm: &str, param: String| ExperimentRow {
        dataset: job.name.clone(),
        variant: kind,
        algorithm: algorithm.to_string(),
        b: job.b,
        param,
        lp_value: None,
        mistakes: None,
        alpha: None,
        budget_used: None,
        beta: None,
        satisfied: None,
        satisfied_pct_of_bound: None,
        unused_nodes: None,
        runtime_ms: None,
        error: None,
        promised: None,
    };

    let mut specs: Vec<(Algorithm, Option<ParamSpec>)> = Vec::new();
    for &alg in &config.algorithms {
        if alg == Algorithm::LpRound {
            specs.extend(config.rounding_params().into_iter().map(|p| (alg, Some(p))));
        } else {
            specs.push((alg, None));
        }
    }
    if specs.is_empty() {
        return Vec::new();
    }

    let variant = match Variant::new(kind, job.b) {
        Ok(v) => v,
        Err(e) => {
            return specs
                .iter()
                .map(|(alg, p)| ExperimentRow {
                    error: Some(e.to_string()),
                    ..blank(alg.name(), p.map(|p| p.label(kind)).unwrap_or_default())
                })
                .collect()
        }
    };

    let lp_start = Instant::now();
    let lp: Result<LpSolution> = solve_lp(&build_lp(job.h, variant));
    let lp_ms = lp_start.elapsed().as_secs_f64() * 1000.0;
    log::debug!("{} b={}: LP solved in {lp_ms:.1} ms", job.name, job.b);

    specs
        .iter()
        .map(|&(alg, param)| {
            let label = param.map(|p| p.label(kind)).unwrap_or_default();
            let mut row = blank(alg.name(), label);
            let sol = match &lp {
                Ok(sol) => sol,
                Err(e) => {
                    row.error = Some(e.to_string());
                    return row;
                }
            };
            let start = Instant::now();
            let result: Result<(ColorAssignment, Option<(f64, f64)>)> = match alg {
                Algorithm::Greedy => Ok((greedy(job.h, variant).assignment, None)),
                Algorithm::LpRound => param
                    .expect("lp-round rows carry a parameter")
                    .resolve(kind, job.b)
                    .and_then(|t| {
                        let mut params = RoundingParams::new(kind, t);
                        if let Some(fill) = config.fill {
                            params = params.with_fill(fill);
                        }
                        round(job.h, sol, params)
                    })
                    .map(|out| {
                        let c = out.certificate;
                        (out.assignment, Some((c.promised_alpha, c.promised_beta)))
                    }),
                Algorithm::Exact => {
                    let cfg = BranchingConfig {
                        max_search_nodes: config.exact_search_limit,
                        ..Default::default()
                    };
                    optimize_via_decision(job.h, variant, &cfg).map(|(_, cert)| (cert.assignment, None))
                }
            };
            let mut elapsed = start.elapsed().as_secs_f64() * 1000.0;
            if alg == Algorithm::LpRound {
                elapsed += lp_ms;
            }
            match result {
                Ok((assignment, promised)) => {
                    fill_row(&mut row, job.h, variant, sol.objective, &assignment, promised, elapsed)
                }
                Err(e) => row.error = Some(e.to_string()),
            }
            row
        })
        .collect()
}

fn fill_row(
    row: &mut ExperimentRow,
    h: &EdgeColoredHypergraph,
    variant: Variant,
    lp_value: f64,
    assignment: &ColorAssignment,
    promised: Option<(f64, f64)>,
    runtime_ms: f64,
) {
    let report = evaluate(h, assignment, variant.kind);
    let bound = h.num_edges() as f64 - lp_value;
    row.lp_value = Some(lp_value);
    row.mistakes = Some(report.mistakes);
    row.alpha = Some(measure_alpha(report.mistakes, lp_value));
    row.budget_used = Some(report.budget_used);
    row.beta = Some(measure_beta(variant.kind, report.budget_used, variant.budget));
    row.satisfied = Some(report.satisfied);
    row.satisfied_pct_of_bound = (bound > ZERO_TOL).then(|| report.satisfied as f64 / bound);
    row.unused_nodes = Some(report.unused_nodes);
    row.runtime_ms = Some(runtime_ms);
    row.promised = promised;
}

/// Worst alpha and beta per dataset, algorithm and parameter.
pub fn summarize(rows: &[ExperimentRow]) -> Vec<SummaryRow> {
    let mut out: Vec<SummaryRow> = Vec::new();
    for r in rows {
        let pos = out.iter().position(|s| {
            s.dataset == r.dataset && s.variant == r.variant && s.algorithm == r.algorithm && s.param == r.param
        });
        let idx = pos.unwrap_or_else(|| {
            out.push(SummaryRow {
                dataset: r.dataset.clone(),
                variant: r.variant,
                algorithm: r.algorithm.clone(),
                param: r.param.clone(),
                max_alpha: 0.0,
                max_beta: 0.0,
                rows: 0,
                failures: 0,
            });
            out.len() - 1
        });
        let s = &mut out[idx];
        s.rows += 1;
        if r.error.is_some() {
            s.failures += 1;
        }
        s.max_alpha = s.max_alpha.max(r.alpha.unwrap_or(0.0));
        s.max_beta = s.max_beta.max(r.beta.unwrap_or(0.0));
    }
    out
}

pub fn write_rows_csv<W: Write>(rows: &[ExperimentRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record(r.record())?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_summary_csv<W: Write>(summary: &[SummaryRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "dataset",
        "variant",
        "algorithm",
        "param",
        "max_alpha",
        "max_beta",
        "rows",
        "failures",
    ])?;
    for s in summary {
        w.write_record([
            s.dataset.clone(),
            s.variant.to_string(),
            s.algorithm.clone(),
            s.param.clone(),
            format_ratio(s.max_alpha),
            format_ratio(s.max_beta),
            s.rows.to_string(),
            s.failures.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
