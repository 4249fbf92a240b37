//! Command-line front end: single runs, batch experiments, verification.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sta_optim::experiment::{
    compare_cells, export_results, run_experiment, ExperimentPlan, ExportFormat, PlanTermination,
};
use sta_optim::verify::{run_all_checks, VerifyOptions};
use sta_optim::{
    algorithms, benchmarks, AlgorithmConfig, PredictiveModel, RandomSource, TerminationSpec,
    Variant,
};

#[derive(Parser)]
#[command(
    name = "sta",
    about = "State transition algorithm optimizer (STA / ESTA / EXSTA)",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a single seeded optimization and report the outcome.
    Run(RunArgs),
    /// Run a multi-seed experiment grid and export summaries and curves.
    Experiment(ExperimentArgs),
    /// Check gradients, optima and operator geometry.
    Verify(VerifyArgs),
    /// List the registered benchmarks and algorithm variants.
    List,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TerminationArg {
    Designed,
    MaxFes,
    MaxStalls,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    First,
    Second,
    Hybrid,
}

impl From<ModelArg> for PredictiveModel {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::First => PredictiveModel::First,
            ModelArg::Second => PredictiveModel::Second,
            ModelArg::Hybrid => PredictiveModel::Hybrid,
        }
    }
}

#[derive(Args)]
struct RunArgs {
    /// Benchmark id (name or f-code), e.g. sphere or f1.
    #[arg(long)]
    benchmark: String,
    /// Problem dimension.
    #[arg(long)]
    dim: usize,
    /// Algorithm variant: sta, esta or exsta.
    #[arg(long)]
    algo: String,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Candidates per operator application.
    #[arg(long, default_value_t = 30)]
    se: usize,
    /// Solution accuracy of the designed termination.
    #[arg(long, default_value_t = 1e-8)]
    epsilon: f64,
    #[arg(long, value_enum, default_value_t = TerminationArg::Designed)]
    termination: TerminationArg,
    /// Evaluation cap for --termination max-fes (default 1e4·dim).
    #[arg(long)]
    max_fes: Option<u64>,
    /// Stall cap for --termination max-stalls.
    #[arg(long, default_value_t = 20)]
    max_stalls: u32,
    /// Predictive translation model.
    #[arg(long, value_enum, default_value_t = ModelArg::Hybrid)]
    model: ModelArg,
    /// Write the convergence curve (CSV) here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// TOML plan file; inline flags override nothing when given.
    #[arg(long, conflicts_with_all = ["benchmarks", "dims", "algos"])]
    plan: Option<PathBuf>,
    /// Comma-separated benchmark ids, or "all".
    #[arg(long, value_delimiter = ',')]
    benchmarks: Vec<String>,
    /// Comma-separated dimensions.
    #[arg(long, value_delimiter = ',')]
    dims: Vec<usize>,
    /// Comma-separated algorithm variants.
    #[arg(long, value_delimiter = ',')]
    algos: Vec<String>,
    #[arg(long, default_value_t = 30)]
    runs: u32,
    #[arg(long, default_value_t = 42)]
    base_seed: u64,
    #[arg(long, value_enum, default_value_t = TerminationArg::Designed)]
    termination: TerminationArg,
    /// Evaluation cap for --termination max-fes (default 1e4·dim).
    #[arg(long)]
    max_fes: Option<u64>,
    #[arg(long, default_value_t = 20)]
    max_stalls: u32,
    #[arg(long, default_value_t = 30)]
    se: usize,
    #[arg(long, default_value_t = 1e-8)]
    epsilon: f64,
    #[arg(long, value_enum, default_value_t = ModelArg::Hybrid)]
    model: ModelArg,
    #[arg(long, default_value_t = 100)]
    curve_stride: u64,
    /// Worker threads (default: all available cores).
    #[arg(long)]
    workers: Option<usize>,
    /// Output directory for summary.csv/summary.json, records.json and curves/.
    #[arg(long, default_value = "sta-results")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// Check a single benchmark instead of the whole suite.
    #[arg(long)]
    benchmark: Option<String>,
    #[arg(long, default_value_t = 20)]
    dim: usize,
    /// Random interior points per gradient check.
    #[arg(long, default_value_t = 100)]
    points: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

enum CliError {
    Usage(String),
    Runtime(String),
}

impl CliError {
    fn usage(e: impl std::fmt::Display) -> Self {
        CliError::Usage(e.to_string())
    }

    fn runtime(e: impl std::fmt::Display) -> Self {
        CliError::Runtime(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Experiment(args) => cmd_experiment(args),
        Command::Verify(args) => cmd_verify(args),
        Command::List => cmd_list(),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn resolve_termination(
    termination: TerminationArg,
    max_fes: Option<u64>,
    max_stalls: u32,
    dim: usize,
) -> TerminationSpec {
    match termination {
        TerminationArg::Designed => TerminationSpec::Designed,
        TerminationArg::MaxFes => {
            TerminationSpec::MaxFes(max_fes.unwrap_or(10_000 * dim as u64))
        }
        TerminationArg::MaxStalls => TerminationSpec::MaxStalls(max_stalls),
    }
}

fn cmd_run(args: RunArgs) -> Result<ExitCode, CliError> {
    let bench = benchmarks::make_benchmark(&args.benchmark, args.dim).map_err(CliError::usage)?;
    let variant: Variant = args.algo.parse().map_err(CliError::usage)?;
    let mut config = AlgorithmConfig::new(variant)
        .with_se(args.se)
        .with_termination(resolve_termination(
            args.termination,
            args.max_fes,
            args.max_stalls,
            args.dim,
        ));
    config.epsilon = args.epsilon;
    config.predictive_model = args.model.into();
    config.validate().map_err(CliError::usage)?;

    let mut rng = RandomSource::new(args.seed);
    let record =
        algorithms::run(bench.problem(), &config, &mut rng).map_err(CliError::runtime)?;

    println!("benchmark    {} ({}), n = {}", bench.id(), bench.spec().code, args.dim);
    println!("algorithm    {variant}");
    println!("seed         {}", args.seed);
    println!("fBest        {:.6e}", record.best_value);
    match bench.grad_norm_report(&record.best_point) {
        Ok(report) if report.flagged => {
            println!("GradNorm     {:.6e} (finite-difference substitute)", report.value)
        }
        Ok(report) => println!("GradNorm     {:.6e}", report.value),
        Err(_) => println!("GradNorm     n/a"),
    }
    println!("evaluations  {}", record.evaluations);
    println!("iterations   {}", record.iterations);
    println!("termination  {}", record.termination_reason.name());

    if let Some(path) = args.out {
        let mut text = String::from("evaluations,fbest\n");
        for point in &record.curve {
            text.push_str(&format!("{},{:e}\n", point.evaluations, point.fbest));
        }
        std::fs::write(&path, text)
            .map_err(|e| CliError::runtime(format!("writing '{}': {e}", path.display())))?;
        println!("curve        {}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_experiment(args: ExperimentArgs) -> Result<ExitCode, CliError> {
    let plan = if let Some(path) = &args.plan {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("reading '{}': {e}", path.display())))?;
        ExperimentPlan::from_toml_str(&text).map_err(CliError::usage)?
    } else {
        let mut algorithms = Vec::new();
        for name in &args.algos {
            algorithms.push(name.parse::<Variant>().map_err(CliError::usage)?);
        }
        if algorithms.is_empty() {
            algorithms.push(Variant::Esta);
        }
        let termination = match args.termination {
            TerminationArg::Designed => PlanTermination::Designed,
            TerminationArg::MaxFes => PlanTermination::MaxFes(args.max_fes),
            TerminationArg::MaxStalls => PlanTermination::MaxStalls(args.max_stalls),
        };
        ExperimentPlan {
            benchmarks: if args.benchmarks.is_empty() {
                vec!["all".to_string()]
            } else {
                args.benchmarks.clone()
            },
            dims: if args.dims.is_empty() { vec![20] } else { args.dims.clone() },
            algorithms,
            runs: args.runs,
            base_seed: args.base_seed,
            termination,
            se: args.se,
            epsilon: args.epsilon,
            predictive_model: args.model.into(),
            curve_stride: args.curve_stride,
            workers: args.workers,
            ..ExperimentPlan::default()
        }
    };
    plan.validate().map_err(CliError::usage)?;

    let results = run_experiment(&plan).map_err(CliError::runtime)?;
    let summaries = results.summaries();

    println!("{}", sta_optim::experiment::summary_csv(&summaries).trim_end());

    if plan.algorithms.len() >= 2 {
        let reference = plan.algorithms[0];
        println!();
        println!("wilcoxon rank-sum vs {reference} (reference), significance 0.05; + reference better / = / -");
        for &other in &plan.algorithms[1..] {
            match compare_cells(&results, reference, other, 0.05) {
                Ok(cmp) => println!(
                    "  {reference} vs {other}: +{} ={} -{}",
                    cmp.wins, cmp.ties, cmp.losses
                ),
                Err(e) => println!("  {reference} vs {other}: {e}"),
            }
        }
    }

    export_results(&results, ExportFormat::Csv, &args.out_dir).map_err(CliError::runtime)?;
    export_results(&results, ExportFormat::Json, &args.out_dir).map_err(CliError::runtime)?;
    println!();
    println!("results written to {}", args.out_dir.display());

    let any_complete = results.cells.iter().any(|c| !c.records.is_empty());
    let all_failed = !any_complete;
    if all_failed {
        Err(CliError::Runtime("every cell failed".to_string()))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, CliError> {
    let benches = match &args.benchmark {
        Some(id) => vec![benchmarks::make_benchmark(id, args.dim).map_err(CliError::usage)?],
        None => benchmarks::all_benchmarks(args.dim.max(2)).map_err(CliError::usage)?,
    };
    let reports = run_all_checks(
        &benches,
        VerifyOptions {
            points: args.points,
            seed: args.seed,
        },
    );
    let mut failed = Vec::new();
    for report in &reports {
        let status = if report.passed { "PASS" } else { "FAIL" };
        println!("[{status}] {} — {}", report.name, report.detail);
        if !report.passed {
            failed.push(report.name.clone());
        }
    }
    let verified = benches
        .iter()
        .filter(|b| {
            reports
                .iter()
                .filter(|r| r.name.contains(&format!("[{}]", b.id())))
                .all(|r| r.passed)
        })
        .count();
    println!("{verified}/{} benchmarks verified", benches.len());
    if failed.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        Err(CliError::Runtime(format!(
            "verification failed: {}",
            failed.join(", ")
        )))
    }
}

fn cmd_list() -> Result<ExitCode, CliError> {
    println!("benchmarks:");
    for (i, id) in benchmarks::benchmark_ids().iter().enumerate() {
        println!("  f{:<3} {id}", i + 1);
    }
    println!("algorithms:");
    for variant in [Variant::StandardSta, Variant::Esta, Variant::Exsta] {
        println!("  {variant}");
    }
    Ok(ExitCode::SUCCESS)
}
