use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use tpp_core::attacks::IndexKind;
use tpp_core::experiment::{
    load_targets, run_bench, run_evaluate, run_protect, write_atomic, write_bench_csv, BudgetSpec,
    ExperimentConfig, TargetSource,
};
use tpp_core::utility::{EigenTarget, UtilityOptions};
use tpp_core::{critical_budget, load_edge_list_path, sample_targets, Division, Method, MotifKind};

#[derive(Parser)]
#[command(
    name = "tpp",
    version,
    about = "Protect target links against motif-based link prediction"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Remove targets and greedily delete protector links.
    Protect(ProtectArgs),
    /// Score a released graph for utility loss and attack resistance.
    Evaluate(EvaluateArgs),
    /// Time selection methods, full and restricted.
    Bench(BenchArgs),
    /// Draw a uniform sample of edges to use as targets.
    SampleTargets(SampleArgs),
}

#[derive(Args)]
struct TargetArgs {
    /// File of target pairs, one per line.
    #[arg(
        long,
        conflicts_with = "sample_targets",
        required_unless_present = "sample_targets"
    )]
    targets: Option<PathBuf>,
    /// Sample this many targets per repetition instead of reading a file.
    #[arg(long, value_name = "N")]
    sample_targets: Option<usize>,
}

impl TargetArgs {
    fn source(&self) -> TargetSource {
        match (&self.targets, self.sample_targets) {
            (Some(p), _) => TargetSource::File(p.clone()),
            (None, Some(n)) => TargetSource::Sample(n),
            (None, None) => unreachable!("clap requires one target source"),
        }
    }
}

#[derive(Args)]
struct BudgetArgs {
    /// Protector budget.
    #[arg(long, conflicts_with = "k_sweep", required_unless_present = "k_sweep")]
    k: Option<usize>,
    /// Budget range `A..B`, or `A..` to run up to the critical budget.
    #[arg(long, value_name = "A..B")]
    k_sweep: Option<BudgetSpec>,
}

impl BudgetArgs {
    fn parse(&self) -> BudgetSpec {
        match (self.k, self.k_sweep) {
            (Some(k), _) => BudgetSpec::Single(k),
            (None, Some(s)) => s,
            (None, None) => unreachable!("clap requires a budget"),
        }
    }
}

#[derive(Args)]
struct ProtectArgs {
    /// Edge list of the original graph, targets included.
    #[arg(long)]
    graph: PathBuf,
    #[command(flatten)]
    targets: TargetArgs,
    #[arg(long, default_value = "triangle")]
    motif: MotifKind,
    /// sgb, ct, wt, rd or rdt.
    #[arg(long, default_value = "ct")]
    method: Method,
    /// Scan only candidate edges of live target subgraphs.
    #[arg(long)]
    restricted: bool,
    #[command(flatten)]
    budget: BudgetArgs,
    /// tbd or dbd.
    #[arg(long, default_value = "tbd")]
    division: Division,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    reps: usize,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
    /// Fill the elapsed_ms column of selection files.
    #[arg(long)]
    record_timings: bool,
}

#[derive(Args)]
struct EvaluateArgs {
    /// Edge list of the original graph.
    original: PathBuf,
    /// Edge list of the released graph.
    released: PathBuf,
    /// Target pairs.
    targets: PathBuf,
    /// Directory for utility.csv and attacks.csv.
    #[arg(long)]
    out: PathBuf,
    /// Exit with status 1 if any target keeps a common neighbor.
    #[arg(long)]
    expect_full_protection: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Use the second smallest Laplacian eigenvalue instead of the second largest.
    #[arg(long)]
    algebraic_connectivity: bool,
    #[arg(long)]
    skip_path_length: bool,
    #[arg(long)]
    skip_eigenvalue: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    graph: PathBuf,
    #[command(flatten)]
    targets: TargetArgs,
    #[arg(long, default_value = "triangle")]
    motif: MotifKind,
    /// Methods to time, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "sgb,ct,wt,rd,rdt")]
    methods: Vec<Method>,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(long, default_value = "tbd")]
    division: Division,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    reps: usize,
    /// Timing CSV to write.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Number of targets.
    #[arg(long, short)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Targets file to write.
    #[arg(long)]
    out: PathBuf,
}

fn protect(a: ProtectArgs) -> Result<ExitCode> {
    let config = ExperimentConfig {
        graph: a.graph,
        targets: a.targets.source(),
        motif: a.motif,
        method: a.method,
        restricted: a.restricted,
        division: a.division,
        budget: a.budget.parse(),
        reps: a.reps,
        seed: a.seed,
        out: a.out,
        record_timings: a.record_timings,
    };
    if a.restricted && !config.effective_restricted() {
        log::warn!("--restricted has no effect on {}", config.method);
    }
    let summary = run_protect(&config)
        .with_context(|| format!("protect run into {}", config.out.display()))?;
    let mut out = io::stdout().lock();
    for r in &summary.rows {
        writeln!(
            out,
            "rep {} k {}: similarity {} -> {} using {} deletions",
            r.rep, r.k, r.initial_similarity, r.final_similarity, r.budget_used
        )?;
    }
    Ok(ExitCode::SUCCESS)
}

fn evaluate(a: EvaluateArgs) -> Result<ExitCode> {
    let options = UtilityOptions {
        seed: a.seed,
        eigen: if a.algebraic_connectivity {
            EigenTarget::SecondSmallest
        } else {
            EigenTarget::SecondLargest
        },
        skip_path_length: a.skip_path_length,
        skip_eigenvalue: a.skip_eigenvalue,
        ..UtilityOptions::default()
    };
    let (released, eval) = run_evaluate(&a.original, &a.released, &a.targets, &options)
        .with_context(|| format!("evaluating {}", a.released.display()))?;
    fs::create_dir_all(&a.out).with_context(|| format!("creating {}", a.out.display()))?;
    write_atomic(&a.out.join("utility.csv"), |w| eval.utility.write_csv(w))?;
    write_atomic(&a.out.join("attacks.csv"), |w| {
        eval.attacks.write_csv(&released, w)
    })?;

    let mut out = io::stdout().lock();
    eval.utility.write_table(&mut out)?;
    let protected = eval.fully_protected();
    writeln!(
        out,
        "{} of {} targets without a common neighbor",
        (0..eval.attacks.targets.len())
            .filter(|&ti| eval.attacks.get(ti, IndexKind::MotifCount) == 0.0)
            .count(),
        eval.attacks.targets.len()
    )?;
    if a.expect_full_protection && !protected {
        log::error!("some targets still have a nonzero motif count");
        return Ok(ExitCode::FAILURE);
    }
    Ok(ExitCode::SUCCESS)
}

fn bench(a: BenchArgs) -> Result<ExitCode> {
    let (g, _) =
        load_edge_list_path(&a.graph).with_context(|| format!("reading {}", a.graph.display()))?;
    let targets = match a.targets.source() {
        TargetSource::File(p) => {
            load_targets(&g, &p).with_context(|| format!("reading {}", p.display()))?
        }
        TargetSource::Sample(n) => sample_targets(&g, n, a.seed)?,
    };
    let budgets: Vec<usize> = match a.budget.parse() {
        BudgetSpec::Single(k) => vec![k],
        BudgetSpec::Sweep { from, to: Some(to) } => (from..=to).collect(),
        BudgetSpec::Sweep { from, to: None } => {
            let released = g.remove_targets(&targets)?;
            (from..=critical_budget(&released, &targets, a.motif)?).collect()
        }
    };
    if a.reps == 0 {
        bail!("--reps must be at least 1");
    }
    let rows = run_bench(
        &g, &targets, a.motif, &a.methods, a.division, &budgets, a.reps, a.seed,
    )?;
    write_atomic(&a.out, |w| write_bench_csv(&rows, a.motif, a.division, w))
        .with_context(|| format!("writing {}", a.out.display()))?;
    log::info!("{} timing rows written to {}", rows.len(), a.out.display());
    Ok(ExitCode::SUCCESS)
}

fn sample(a: SampleArgs) -> Result<ExitCode> {
    let (g, _) =
        load_edge_list_path(&a.graph).with_context(|| format!("reading {}", a.graph.display()))?;
    let targets = sample_targets(&g, a.n, a.seed)?;
    let mut w = BufWriter::new(
        File::create(&a.out).with_context(|| format!("creating {}", a.out.display()))?,
    );
    targets.write(&g, &mut w)?;
    w.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Protect(a) => protect(a),
        Command::Evaluate(a) => evaluate(a),
        Command::Bench(a) => bench(a),
        Command::SampleTargets(a) => sample(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
