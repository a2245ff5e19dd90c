//! Seeded experiment orchestration behind the command-line tool: protection
//! runs and budget sweeps, evaluation of released graphs, and timing.

use std::fmt::Write as _;
use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use crate::attacks::{evaluate_protection, ProtectionTable};
use crate::budget::{dbd, tbd, Division};
use crate::error::{Error, Result};
use crate::graph::{load_edge_list_in, load_edge_list_path, sample_targets, Graph, TargetSet};
use crate::motif::{MotifKind, SubgraphIndex};
use crate::select::{
    critical_budget, ct_greedy, rd_baseline, rdt_baseline, sgb_greedy, wt_greedy, Method,
    SelectOptions, SelectionResult,
};
use crate::utility::{utility_loss_report, UlrReport, UtilityOptions};

/// Seed for repetition `rep`, derived from the master seed with SplitMix64.
pub fn derive_seed(master: u64, rep: u64) -> u64 {
    let mut z = master.wrapping_add(rep.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub const SEED_SCHEME: &str = "splitmix64(master + (rep + 1) * 0x9e3779b97f4a7c15)";

/// Budgets to run: a single value or an inclusive range. An open range ends
/// at the critical budget of each repetition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BudgetSpec {
    Single(usize),
    Sweep { from: usize, to: Option<usize> },
}

impl BudgetSpec {
    fn budgets(self, critical: impl FnOnce() -> Result<usize>) -> Result<Vec<usize>> {
        Ok(match self {
            BudgetSpec::Single(k) => vec![k],
            BudgetSpec::Sweep { from, to: Some(to) } => (from..=to).collect(),
            BudgetSpec::Sweep { from, to: None } => (from..=critical()?).collect(),
        })
    }
}

impl FromStr for BudgetSpec {
    type Err = Error;

    /// Parses `A..B` or `A..`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidValue {
            what: "budget sweep",
            value: s.to_string(),
        };
        let (a, b) = s.split_once("..").ok_or_else(bad)?;
        let from: usize = a.trim().parse().map_err(|_| bad())?;
        let to = match b.trim() {
            "" => None,
            t => {
                let to: usize = t.parse().map_err(|_| bad())?;
                if to < from {
                    return Err(bad());
                }
                Some(to)
            }
        };
        Ok(BudgetSpec::Sweep { from, to })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TargetSource {
    File(PathBuf),
    /// Sample this many edges per repetition with the repetition seed.
    Sample(usize),
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub graph: PathBuf,
    pub targets: TargetSource,
    pub motif: MotifKind,
    pub method: Method,
    pub restricted: bool,
    pub division: Division,
    pub budget: BudgetSpec,
    pub reps: usize,
    pub seed: u64,
    pub out: PathBuf,
    /// Fill the `elapsed_ms` column of selection files.
    pub record_timings: bool,
}

impl ExperimentConfig {
    /// Whether the restricted flag applies to the configured method.
    pub fn effective_restricted(&self) -> bool {
        self.method.has_restriction() && self.restricted
    }

    pub fn effective_division(&self) -> Option<Division> {
        self.method.uses_division().then_some(self.division)
    }

    fn manifest(&self) -> String {
        let mut s = String::new();
        let targets = match &self.targets {
            TargetSource::File(p) => format!("file:{}", p.display()),
            TargetSource::Sample(n) => format!("sample:{n}"),
        };
        let budget = match self.budget {
            BudgetSpec::Single(k) => k.to_string(),
            BudgetSpec::Sweep { from, to: Some(to) } => format!("{from}..{to}"),
            BudgetSpec::Sweep { from, to: None } => format!("{from}.."),
        };
        let division = self
            .effective_division()
            .map(|d| d.name())
            .unwrap_or("none");
        for (k, v) in [
            ("tool", format!("tpp-core {}", env!("CARGO_PKG_VERSION"))),
            ("graph", self.graph.display().to_string()),
            ("targets", targets),
            ("motif", self.motif.name().to_string()),
            ("method", self.method.name().to_string()),
            ("restricted", self.effective_restricted().to_string()),
            ("division", division.to_string()),
            ("budget", budget),
            ("reps", self.reps.to_string()),
            ("master_seed", self.seed.to_string()),
            ("seed_scheme", SEED_SCHEME.to_string()),
            ("record_timings", self.record_timings.to_string()),
        ] {
            let _ = writeln!(s, "{k}={v}");
        }
        s
    }
}

/// Writes `path` through a sibling temporary file and a rename.
pub fn write_atomic(path: &Path, fill: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    {
        let mut w = BufWriter::new(File::create(&tmp)?);
        fill(&mut w)?;
        w.flush()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn load_targets(g: &Graph, path: &Path) -> Result<TargetSet> {
    TargetSet::read(g, BufReader::new(File::open(path)?))
}

/// Runs one method at budget `k` on the target-free graph `released`.
/// `original` still contains the targets and feeds the degree division.
#[allow(clippy::too_many_arguments)]
pub fn run_selection(
    original: &Graph,
    released: &Graph,
    targets: &TargetSet,
    motif: MotifKind,
    method: Method,
    restricted: bool,
    division: Division,
    k: usize,
    seed: u64,
) -> Result<SelectionResult> {
    let opts = if restricted {
        SelectOptions::restricted()
    } else {
        SelectOptions::full()
    };
    let budgets = || -> Result<_> {
        Ok(match division {
            Division::Tbd => tbd(k, &SubgraphIndex::build(released, targets, motif)?),
            Division::Dbd => dbd(k, original, targets),
        })
    };
    match method {
        Method::Sgb => sgb_greedy(released, targets, motif, k, opts),
        Method::Ct => ct_greedy(released, targets, motif, &budgets()?, opts),
        Method::Wt => wt_greedy(released, targets, motif, &budgets()?, opts),
        Method::Rd => rd_baseline(released, targets, motif, k, seed),
        Method::Rdt => rdt_baseline(released, targets, motif, k, seed),
    }
}

/// One row of `sweep.csv`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub rep: usize,
    pub seed: u64,
    pub k: usize,
    pub budget_used: usize,
    pub initial_similarity: usize,
    pub final_similarity: usize,
    pub total_gain: usize,
}

#[derive(Clone, Debug)]
pub struct ProtectSummary {
    pub rows: Vec<SweepRow>,
    /// Per repetition, the output directory holding its artifacts.
    pub rep_dirs: Vec<PathBuf>,
}

pub const SWEEP_HEADER: &str =
    "motif,method,restricted,division,rep,seed,k,budget_used,initial_similarity,final_similarity,total_gain";

/// Protection run over every repetition and budget. Per repetition, the
/// selection, released graph and targets of the largest budget are written
/// to `rep<N>/`; all budgets land in `sweep.csv`.
pub fn run_protect(config: &ExperimentConfig) -> Result<ProtectSummary> {
    if config.reps == 0 {
        return Err(Error::InvalidValue {
            what: "reps",
            value: "0".into(),
        });
    }
    let (original, stats) = load_edge_list_path(&config.graph)?;
    log::info!(
        "loaded {} nodes, {} edges ({} lines dropped)",
        original.node_count(),
        original.edge_count(),
        stats.dropped()
    );
    fs::create_dir_all(&config.out)?;
    let restricted = config.effective_restricted();
    let division_name = config.effective_division().map(|d| d.name()).unwrap_or("");
    let mut rows = Vec::new();
    let mut rep_dirs = Vec::new();
    let mut sweep = String::new();
    let _ = writeln!(sweep, "{SWEEP_HEADER}");
    for rep in 0..config.reps {
        let seed = derive_seed(config.seed, rep as u64);
        let targets = match &config.targets {
            TargetSource::File(p) => load_targets(&original, p)?,
            TargetSource::Sample(n) => sample_targets(&original, *n, seed)?,
        };
        let released = original.remove_targets(&targets)?;
        let budgets = config
            .budget
            .budgets(|| critical_budget(&released, &targets, config.motif))?;
        let mut last: Option<SelectionResult> = None;
        for &k in &budgets {
            let r = run_selection(
                &original,
                &released,
                &targets,
                config.motif,
                config.method,
                restricted,
                config.division,
                k,
                seed,
            )?;
            let row = SweepRow {
                rep,
                seed,
                k,
                budget_used: r.budget_used,
                initial_similarity: r.initial_similarity(),
                final_similarity: r.final_similarity,
                total_gain: r.total_gain(),
            };
            let _ = writeln!(
                sweep,
                "{},{},{},{},{},{},{},{},{},{},{}",
                config.motif,
                config.method,
                restricted,
                division_name,
                row.rep,
                row.seed,
                row.k,
                row.budget_used,
                row.initial_similarity,
                row.final_similarity,
                row.total_gain
            );
            rows.push(row);
            last = Some(r);
        }
        let dir = config.out.join(format!("rep{rep}"));
        fs::create_dir_all(&dir)?;
        if let Some(r) = last {
            write_atomic(&dir.join("selection.csv"), |w| {
                r.write_csv(&released, w, config.record_timings)
            })?;
            let protected = r.released(&released)?;
            write_atomic(&dir.join("released.txt"), |w| protected.write_edge_list(w))?;
        }
        write_atomic(&dir.join("targets.txt"), |w| targets.write(&original, w))?;
        rep_dirs.push(dir);
    }
    write_atomic(&config.out.join("sweep.csv"), |w| {
        Ok(w.write_all(sweep.as_bytes())?)
    })?;
    write_atomic(&config.out.join("manifest.txt"), |w| {
        Ok(w.write_all(config.manifest().as_bytes())?)
    })?;
    Ok(ProtectSummary { rows, rep_dirs })
}

#[derive(Clone, Debug)]
pub struct Evaluation {
    pub utility: UlrReport,
    pub attacks: ProtectionTable,
}

impl Evaluation {
    /// Whether every target has a zero motif count, i.e. no common neighbor.
    pub fn fully_protected(&self) -> bool {
        (0..self.attacks.targets.len())
            .all(|ti| self.attacks.get(ti, crate::attacks::IndexKind::MotifCount) == 0.0)
    }
}

/// Compares a released graph with its original and scores every target
/// under every attack index. Labels in `released` must exist in `original`.
pub fn run_evaluate(
    original: &Path,
    released: &Path,
    targets: &Path,
    options: &UtilityOptions,
) -> Result<(Graph, Evaluation)> {
    let (g, _) = load_edge_list_path(original)?;
    let (h, _) = load_edge_list_in(&g, BufReader::new(File::open(released)?))?;
    let t = load_targets(&g, targets)?;
    let utility = utility_loss_report(&g, &h, options)?;
    let attacks = evaluate_protection(&h, &t)?;
    Ok((h, Evaluation { utility, attacks }))
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub method: Method,
    pub restricted: bool,
    pub k: usize,
    pub rep: usize,
    pub seconds: f64,
}

pub const BENCH_HEADER: &str = "motif,method,restricted,division,k,rep,seconds";

/// Times each method variant at each budget. One untimed warm-up run per
/// variant precedes the timed repetitions. Rows follow the order of
/// `methods`, restricted after full, then budget, then repetition.
#[allow(clippy::too_many_arguments)]
pub fn run_bench(
    original: &Graph,
    targets: &TargetSet,
    motif: MotifKind,
    methods: &[Method],
    division: Division,
    budgets: &[usize],
    reps: usize,
    seed: u64,
) -> Result<Vec<BenchRow>> {
    let released = original.remove_targets(targets)?;
    let mut rows = Vec::new();
    for &method in methods {
        let variants: &[bool] = if method.has_restriction() {
            &[false, true]
        } else {
            &[false]
        };
        for &restricted in variants {
            let run = |k: usize, rep: usize| {
                run_selection(
                    original,
                    &released,
                    targets,
                    motif,
                    method,
                    restricted,
                    division,
                    k,
                    derive_seed(seed, rep as u64),
                )
            };
            if let Some(&k) = budgets.first() {
                run(k, 0)?;
            }
            for &k in budgets {
                for rep in 0..reps {
                    let start = Instant::now();
                    run(k, rep)?;
                    rows.push(BenchRow {
                        method,
                        restricted,
                        k,
                        rep,
                        seconds: start.elapsed().as_secs_f64(),
                    });
                }
            }
        }
    }
    Ok(rows)
}

pub fn write_bench_csv<W: Write>(
    rows: &[BenchRow],
    motif: MotifKind,
    division: Division,
    mut out: W,
) -> Result<()> {
    writeln!(out, "{BENCH_HEADER}")?;
    for r in rows {
        let div = if r.method.uses_division() {
            division.name()
        } else {
            ""
        };
        writeln!(
            out,
            "{},{},{},{},{},{},{:.6}",
            motif, r.method, r.restricted, div, r.k, r.rep, r.seconds
        )?;
    }
    Ok(())
}
