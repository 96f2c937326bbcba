use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ecc::exact::{decide, optimize_via_decision, BranchingConfig, DecisionInstance};
use ecc::greedy::greedy;
use ecc::io::{ratio_value, read_hypergraph, AssignmentRecord};
use ecc::lp::{build_lp, solve_lp, write_lp_format};
use ecc::metrics::{run_experiment, write_rows_csv, write_summary_csv, ExperimentConfig};
use ecc::rounding::{round, RoundingParams};
use ecc::stats::structure_stats;
use ecc::{EccError, EdgeColoredHypergraph, Variant, VariantKind};

const EXIT_NO: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INPUT: u8 = 3;
const EXIT_GUARD: u8 = 4;
const EXIT_SOLVER: u8 = 5;

/// Budgeted edge-colored clustering of hypergraphs.
#[derive(Parser)]
#[command(name = "ecc", version)]
struct Cli {
    /// Reserved; every algorithm is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Degree and color statistics of a hypergraph.
    Stats { file: PathBuf },
    /// Compute a coloring.
    Solve(SolveArgs),
    /// Can the instance be solved with at most T mistakes? Exits 0 for yes, 1 for no.
    Decide(DecideArgs),
    /// Solve the LP relaxation and print its value.
    Lp(LpArgs),
    /// Run a budget sweep described by a JSON config.
    Experiment(ExperimentArgs),
}

#[derive(Args)]
struct VariantArgs {
    #[arg(long, value_enum)]
    variant: VariantArg,
    #[arg(long)]
    budget: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Local,
    Global,
    Robust,
}

impl From<VariantArg> for VariantKind {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Local => VariantKind::Local,
            VariantArg::Global => VariantKind::Global,
            VariantArg::Robust => VariantKind::Robust,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Greedy,
    LpRound,
    Exact,
}

#[derive(Clone, Copy, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    variant: VariantArgs,
    #[arg(long, value_enum)]
    algo: Algo,
    /// Local rounding threshold in (0, 1).
    #[arg(long, conflicts_with_all = ["delta", "eps"])]
    rho: Option<f64>,
    /// Global rounding threshold in (0, 1).
    #[arg(long, conflicts_with = "eps")]
    delta: Option<f64>,
    /// Robust rounding threshold in (0, 1/2).
    #[arg(long)]
    eps: Option<f64>,
    /// Give uncolored nodes their favorite color after rounding.
    #[arg(long, value_enum)]
    fill: Option<Switch>,
    /// Write the greedy trace as CSV.
    #[arg(long)]
    trace: Option<PathBuf>,
    file: PathBuf,
}

#[derive(Args)]
struct DecideArgs {
    #[command(flatten)]
    variant: VariantArgs,
    #[arg(long)]
    mistakes: usize,
    #[arg(long)]
    kernelize: bool,
    file: PathBuf,
}

#[derive(Args)]
struct LpArgs {
    #[command(flatten)]
    variant: VariantArgs,
    /// Write the model in CPLEX LP format.
    #[arg(long)]
    dump_lp: Option<PathBuf>,
    file: PathBuf,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long)]
    config: PathBuf,
    /// Per-row CSV output.
    #[arg(long)]
    out: PathBuf,
    /// Also write the per-algorithm worst-case summary as CSV.
    #[arg(long)]
    summary: Option<PathBuf>,
}

struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            msg: msg.into(),
        }
    }

    fn at(path: &Path, e: EccError) -> Self {
        let code = exit_code(&e);
        let msg = match e {
            // parse errors already name the file
            EccError::ParseFile { .. } => e.to_string(),
            _ => format!("{}: {e}", path.display()),
        };
        Self { code, msg }
    }
}

impl From<EccError> for Failure {
    fn from(e: EccError) -> Self {
        Self {
            code: exit_code(&e),
            msg: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self {
            code: EXIT_INPUT,
            msg: e.to_string(),
        }
    }
}

fn exit_code(e: &EccError) -> u8 {
    match e {
        EccError::InvalidParameter(_) => EXIT_USAGE,
        EccError::GuardExceeded(_) => EXIT_GUARD,
        EccError::Solver(_) => EXIT_SOLVER,
        _ => EXIT_INPUT,
    }
}

type CliResult = Result<u8, Failure>;

fn load(path: &Path) -> Result<EdgeColoredHypergraph, Failure> {
    read_hypergraph(path).map_err(|e| Failure::at(path, e))
}

fn variant(args: &VariantArgs) -> Result<Variant, Failure> {
    Variant::new(args.variant.into(), args.budget).map_err(|e| Failure::usage(e.to_string()))
}

fn print_json(value: &impl serde::Serialize) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    serde_json::to_writer_pretty(&mut out, value).map_err(EccError::from)?;
    writeln!(out)?;
    Ok(())
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path).map(BufWriter::new).map_err(|e| Failure {
        code: EXIT_INPUT,
        msg: format!("{}: {e}", path.display()),
    })
}

fn cmd_stats(file: &Path) -> CliResult {
    let h = load(file)?;
    print_json(&structure_stats(&h))?;
    Ok(0)
}

fn threshold(args: &SolveArgs, kind: VariantKind) -> Result<f64, Failure> {
    let (given, flag) = match kind {
        VariantKind::Local => (args.rho, "--rho"),
        VariantKind::Global => (args.delta, "--delta"),
        VariantKind::Robust => (args.eps, "--eps"),
    };
    let others = [args.rho, args.delta, args.eps].iter().filter(|x| x.is_some()).count();
    if others > usize::from(given.is_some()) {
        return Err(Failure::usage(format!(
            "the {kind} variant takes its rounding threshold via {flag}"
        )));
    }
    Ok(given.unwrap_or(match kind {
        VariantKind::Local | VariantKind::Global => 0.5,
        VariantKind::Robust => 1.0 / 3.0,
    }))
}

fn cmd_solve(args: &SolveArgs) -> CliResult {
    let v = variant(&args.variant)?;
    if args.algo != Algo::LpRound
        && (args.rho.is_some() || args.delta.is_some() || args.eps.is_some() || args.fill.is_some())
    {
        return Err(Failure::usage("rounding options only apply to --algo lp-round"));
    }
    if args.algo != Algo::Greedy && args.trace.is_some() {
        return Err(Failure::usage("--trace only applies to --algo greedy"));
    }
    let h = load(&args.file)?;

    let record = match args.algo {
        Algo::Greedy => {
            let out = greedy(&h, v);
            if let Some(path) = &args.trace {
                out.trace.write_csv(create(path)?)?;
            }
            AssignmentRecord::new(&h, v, &out.assignment)
                .with("algorithm", "greedy")
                .with("budget_surplus", out.trace.budget_surplus)
        }
        Algo::LpRound => {
            let t = threshold(args, v.kind)?;
            let mut params = RoundingParams::new(v.kind, t);
            if let Some(fill) = args.fill {
                params = params.with_fill(matches!(fill, Switch::On));
            }
            let sol = solve_lp(&build_lp(&h, v))?;
            let out = round(&h, &sol, params)?;
            let c = out.certificate;
            AssignmentRecord::new(&h, v, &out.assignment)
                .with("algorithm", "lp-round")
                .with("threshold", t)
                .with("lp_value", c.lp_value)
                .with("promised_alpha", ratio_value(c.promised_alpha))
                .with("observed_alpha", ratio_value(c.observed_alpha))
                .with("promised_beta", ratio_value(c.promised_beta))
                .with("observed_beta", ratio_value(c.observed_beta))
        }
        Algo::Exact => {
            let (t, cert) = optimize_via_decision(&h, v, &BranchingConfig::default())?;
            let deleted_edges: Vec<usize> = cert.deleted_edges.iter().map(|e| e + 1).collect();
            AssignmentRecord::new(&h, v, &cert.assignment)
                .with("algorithm", "exact")
                .with("optimum", t)
                .with("deleted_edges", deleted_edges)
        }
    };
    print_json(&record)?;
    Ok(0)
}

fn cmd_decide(args: &DecideArgs) -> CliResult {
    let v = variant(&args.variant)?;
    let h = load(&args.file)?;
    let inst = DecisionInstance::new(h.clone(), v, args.mistakes);
    let d = decide(&inst, args.kernelize, &BranchingConfig::default())?;
    let mut out = json!({
        "answer": if d.is_yes() { "yes" } else { "no" },
        "variant": v.kind,
        "budget": v.budget,
        "mistakes": args.mistakes,
        "kernelized": args.kernelize,
        "by_kernel_bound": d.by_kernel_bound,
        "search_nodes": d.stats.search_nodes,
        "search_depth": d.stats.max_depth,
    });
    if let Some(cert) = &d.certificate {
        let deleted: Vec<usize> = cert.deleted_edges.iter().map(|e| e + 1).collect();
        out["deleted_edges"] = json!(deleted);
        out["assignment"] =
            serde_json::to_value(AssignmentRecord::new(&h, v, &cert.assignment)).map_err(EccError::from)?;
    }
    print_json(&out)?;
    Ok(if d.is_yes() { 0 } else { EXIT_NO })
}

fn cmd_lp(args: &LpArgs) -> CliResult {
    let v = variant(&args.variant)?;
    let h = load(&args.file)?;
    let model = build_lp(&h, v);
    if let Some(path) = &args.dump_lp {
        let mut w = create(path)?;
        write_lp_format(&model, &mut w)?;
        w.flush()?;
    }
    let sol = solve_lp(&model)?;
    let out: Value = json!({
        "variant": v.kind,
        "budget": v.budget,
        "lp_value": sol.objective,
        "upper_bound_satisfied": h.num_edges() as f64 - sol.objective,
        "num_vars": model.num_vars(),
        "num_rows": model.num_rows(),
    });
    print_json(&out)?;
    Ok(0)
}

fn cmd_experiment(args: &ExperimentArgs) -> CliResult {
    let config = ExperimentConfig::from_json_file(&args.config).map_err(|e| Failure::at(&args.config, e))?;
    let output = run_experiment(&config)?;
    let failures = output.rows.iter().filter(|r| r.error.is_some()).count();
    if failures > 0 {
        log::warn!("{failures} of {} rows failed", output.rows.len());
    }
    write_rows_csv(&output.rows, create(&args.out)?)?;
    if let Some(path) = &args.summary {
        write_summary_csv(&output.summary, create(path)?)?;
    }
    let summary: Vec<Value> = output
        .summary
        .iter()
        .map(|s| {
            json!({
                "dataset": s.dataset,
                "variant": s.variant,
                "algorithm": s.algorithm,
                "param": s.param,
                "max_alpha": ratio_value(s.max_alpha),
                "max_beta": ratio_value(s.max_beta),
                "rows": s.rows,
                "failures": s.failures,
            })
        })
        .collect();
    print_json(&summary)?;
    Ok(0)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("ECC_LOG", "warn")).init();
    let cli = Cli::parse();
    if let Some(seed) = cli.seed {
        log::debug!("ignoring --seed {seed}: all algorithms are deterministic");
    }
    let result = match &cli.command {
        Command::Stats { file } => cmd_stats(file),
        Command::Solve(args) => cmd_solve(args),
        Command::Decide(args) => cmd_decide(args),
        Command::Lp(args) => cmd_lp(args),
        Command::Experiment(args) => cmd_experiment(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
