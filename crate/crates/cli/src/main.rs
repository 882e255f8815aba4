mod bench;
mod report;
mod source;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Mutex;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use congkit::finite::{congruence_lattice, distinct_principal_congruences, generating_pairs, CongruenceKind};
use congkit::lowindex::{audit_graph, parallel_for_each};
use congkit::relgreens::{r_class_engines, relative_j_class_reps, relative_l_class_reps};
use congkit::{join_word_graphs, meet_word_graphs, Presentation, SearchConfig, Side, WordGraph};

use report::RunReport;
use source::MonoidOptions;

#[derive(Debug, Parser)]
#[command(name = "congkit", version, about = "Congruences of monoids through word graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SideArg {
    Right,
    Left,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Right,
    Left,
    Twosided,
}

impl From<KindArg> for CongruenceKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Right => CongruenceKind::Right,
            KindArg::Left => CongruenceKind::Left,
            KindArg::Twosided => CongruenceKind::TwoSided,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LatticeFormat {
    Json,
    Dot,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Enumerate the right or left congruences with at most n classes
    Enum {
        #[arg(short, long)]
        presentation: PathBuf,
        #[arg(short = 'n', long)]
        max_classes: usize,
        #[arg(long, value_enum, default_value = "right")]
        side: SideArg,
        /// Treat the presentation as a semigroup presentation
        #[arg(long)]
        semigroup: bool,
        /// File of `u = v` pairs every congruence must contain
        #[arg(long)]
        containing: Option<PathBuf>,
        /// Keep only congruences with exactly `max_classes` classes
        #[arg(long)]
        exact: bool,
        #[arg(long, env = "CONGKIT_THREADS", default_value_t = 1)]
        threads: usize,
        #[arg(long, conflicts_with = "out")]
        count_only: bool,
        /// Write the graphs as JSON lines here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        step_budget: Option<u64>,
        /// Deduction engine of the search
        #[arg(long, default_value = "felsch")]
        deduction: String,
        /// Re-verify every graph found with the full-scan checks
        #[arg(long)]
        audit: bool,
    },
    /// Congruence lattice of a finite monoid
    Lattice {
        #[command(flatten)]
        monoid: MonoidOptions,
        #[arg(long, value_enum, default_value = "twosided")]
        kind: KindArg,
        /// Use every pair instead of one per relative Green's class
        #[arg(long)]
        no_reduce: bool,
        /// Relative R-class engine used for the reduction
        #[arg(long, default_value = "scc")]
        engine: String,
        /// Only count the distinct non-trivial principal congruences
        #[arg(long)]
        principal_only: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: LatticeFormat,
        #[arg(long, conflicts_with = "out")]
        count_only: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Relative Green's class representatives of M x M modulo the diagonal
    Greens {
        #[command(flatten)]
        monoid: MonoidOptions,
        #[arg(long, value_enum, default_value = "right")]
        side: KindArg,
        #[arg(long, default_value = "scc")]
        engine: String,
        #[arg(long, conflicts_with = "out")]
        count_only: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Join of two congruences given as word graphs
    Join(PairArgs),
    /// Meet of two congruences given as word graphs
    Meet(PairArgs),
    /// Relabel a word graph into standard form
    Standardize {
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The presentation a finite monoid is enumerated with
    Present {
        #[command(flatten)]
        monoid: MonoidOptions,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time the searches listed in a TOML manifest, writing CSV
    Bench {
        manifest: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Skip thread counts above this
        #[arg(long)]
        max_threads: Option<usize>,
    },
}

#[derive(Debug, clap::Args)]
struct PairArgs {
    first: PathBuf,
    second: PathBuf,
    /// Check both graphs against this presentation first
    #[arg(short, long)]
    presentation: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn output(out: Option<&Path>) -> Result<Box<dyn Write + Send>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("cannot create {}", path.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn read_graph(path: &Path) -> Result<WordGraph> {
    WordGraph::from_json(&source::read(path)?).with_context(|| format!("in {}", path.display()))
}

fn read_pairs(path: &Path, p: &Presentation) -> Result<Vec<(congkit::Word, congkit::Word)>> {
    p.parse_pairs(&source::read(path)?)
        .with_context(|| format!("in {}", path.display()))
}

fn run(cli: Cli) -> Result<()> {
    let mut report = RunReport::start();
    match cli.command {
        Command::Enum {
            presentation,
            max_classes,
            side,
            semigroup,
            containing,
            exact,
            threads,
            count_only,
            out,
            step_budget,
            deduction,
            audit,
        } => {
            let p = source::presentation(&presentation)?;
            let pairs = match &containing {
                Some(path) => read_pairs(path, &p)?,
                None => Vec::new(),
            };
            let cfg = SearchConfig::new(max_classes)
                .side(match side {
                    SideArg::Right => Side::Right,
                    SideArg::Left => Side::Left,
                })
                .semigroup(semigroup)
                .containing(pairs)
                .step_budget(step_budget)
                .engine(&deduction);
            report.threads = threads.max(1);
            report.phase("parse");
            let sink = if count_only {
                None
            } else {
                Some(Mutex::new(output(out.as_deref())?))
            };
            let failure: Mutex<Option<anyhow::Error>> = Mutex::new(None);
            let kept = std::sync::atomic::AtomicU64::new(0);
            let stats = parallel_for_each(&p, &cfg, threads.max(1), |g| {
                if exact && g.node_count() != max_classes {
                    return;
                }
                if audit {
                    if let Err(e) = audit_graph(&p, &cfg, g) {
                        failure.lock().expect("lock").get_or_insert(anyhow::anyhow!("{e}"));
                        return;
                    }
                }
                kept.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if let Some(sink) = &sink {
                    let mut w = sink.lock().expect("lock");
                    if let Err(e) = writeln!(w, "{}", g.to_json()) {
                        failure.lock().expect("lock").get_or_insert(e.into());
                    }
                }
            })?;
            report.phase("search");
            if let Some(e) = failure.into_inner().expect("lock") {
                return Err(e);
            }
            let count = kept.into_inner();
            if let Some(sink) = sink {
                sink.into_inner().expect("lock").flush()?;
            } else {
                println!("{count}");
            }
            report.count("congruences", count);
            report.count("steps", stats.steps);
            report.count("steals", stats.steals);
            report.peak_depth = stats.peak_depth;
        }
        Command::Lattice {
            monoid,
            kind,
            no_reduce,
            engine,
            principal_only,
            format,
            count_only,
            out,
        } => {
            let m = monoid.load()?;
            report.phase("enumerate");
            report.count("elements", m.size());
            let kind: CongruenceKind = kind.into();
            let pairs = if no_reduce {
                generating_pairs(&m, kind, false)?
            } else {
                congkit::relgreens::reduced_generating_pairs_with(&m, kind, &engine)?
            };
            report.count("generating_pairs", pairs.len());
            report.phase("pairs");
            if principal_only {
                let principal = distinct_principal_congruences(&m, &pairs, kind);
                report.phase("principal");
                report.count("principal", principal.len());
                println!("{}", principal.len());
            } else {
                let lattice = if no_reduce {
                    congruence_lattice(&m, kind, false)?
                } else {
                    let principal = distinct_principal_congruences(&m, &pairs, kind);
                    report.count("principal", principal.len());
                    let n = m.size();
                    congkit::latticeops::lattice_from_generators(
                        principal,
                        Some(congkit::CongruencePartition::trivial(n)),
                        Some(congkit::CongruencePartition::universal(n)),
                    )?
                };
                report.phase("lattice");
                report.count("congruences", lattice.len());
                if count_only {
                    println!("{}", lattice.len());
                } else {
                    let mut w = output(out.as_deref())?;
                    match format {
                        LatticeFormat::Json => writeln!(w, "{}", lattice.to_json())?,
                        LatticeFormat::Dot => write!(w, "{}", lattice.to_dot())?,
                    }
                    w.flush()?;
                }
            }
        }
        Command::Greens {
            monoid,
            side,
            engine,
            count_only,
            out,
        } => {
            let m = monoid.load()?;
            report.phase("enumerate");
            let factory = r_class_engines().get(&engine)?;
            let (reps, r_classes, j_classes) = match side {
                KindArg::Left => {
                    let reps = relative_l_class_reps(&m, &engine)?;
                    (reps, None, None)
                }
                KindArg::Right | KindArg::Twosided => {
                    let idx = factory().r_classes(&m, false)?;
                    let j = relative_j_class_reps(&idx);
                    let (r, jn) = (idx.len(), j.len());
                    let reps = if matches!(side, KindArg::Right) {
                        idx.representatives().to_vec()
                    } else {
                        j
                    };
                    (reps, Some(r), Some(jn))
                }
            };
            report.phase("classes");
            report.count("representatives", reps.len());
            if let Some(r) = r_classes {
                report.count("r_classes", r);
            }
            if let Some(j) = j_classes {
                report.count("j_classes", j);
            }
            if count_only {
                println!("{}", reps.len());
            } else {
                let value = serde_json::json!({
                    "side": format!("{:?}", CongruenceKind::from(side)).to_lowercase(),
                    "engine": engine,
                    "elements": m.size(),
                    "classes": reps.len(),
                    "r_classes": r_classes,
                    "j_classes": j_classes,
                    "representatives": reps.iter().map(|&(x, y)| [x, y]).collect::<Vec<_>>(),
                });
                let mut w = output(out.as_deref())?;
                writeln!(w, "{value}")?;
                w.flush()?;
            }
        }
        Command::Join(args) => pair_op(args, &mut report, join_word_graphs)?,
        Command::Meet(args) => pair_op(args, &mut report, meet_word_graphs)?,
        Command::Standardize { graph, out } => {
            let g = read_graph(&graph)?.standardize()?;
            let mut w = output(out.as_deref())?;
            writeln!(w, "{}", g.to_json())?;
            w.flush()?;
            report.count("nodes", g.node_count());
        }
        Command::Present { monoid, out } => {
            let m = monoid.load()?;
            report.count("elements", m.size());
            report.count("relations", m.presentation().relations().len());
            let mut w = output(out.as_deref())?;
            write!(w, "{}", m.presentation().serialize())?;
            w.flush()?;
        }
        Command::Bench {
            manifest,
            out,
            max_threads,
        } => {
            let mut csv = csv::Writer::from_writer(output(out.as_deref())?);
            let rows = bench::run(&manifest, max_threads, |row| {
                csv.serialize(row)?;
                csv.flush()?;
                Ok(())
            })?;
            report.count("rows", rows.len());
        }
    }
    report.emit();
    Ok(())
}

fn pair_op(
    args: PairArgs,
    report: &mut RunReport,
    op: fn(&WordGraph, &WordGraph) -> congkit::Result<WordGraph>,
) -> Result<()> {
    let g0 = read_graph(&args.first)?;
    let g1 = read_graph(&args.second)?;
    if let Some(path) = &args.presentation {
        let p = source::presentation(path)?;
        for (g, file) in [(&g0, &args.first), (&g1, &args.second)] {
            if !g.is_compatible(&p)? {
                return Err(congkit::Error::input(format!(
                    "{} is not compatible with the presentation",
                    file.display()
                ))
                .into());
            }
        }
    }
    let g = op(&g0, &g1)?;
    report.count("nodes", g.node_count());
    let mut w = output(args.out.as_deref())?;
    writeln!(w, "{}", g.to_json())?;
    w.flush()?;
    Ok(())
}

/// 2 for malformed or invalid input, 3 for an exhausted budget, 1 otherwise.
fn exit_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if let Some(err) = cause.downcast_ref::<congkit::Error>() {
            return match err {
                congkit::Error::Budget(_) => 3,
                _ => 2,
            };
        }
        if cause.downcast_ref::<io::Error>().is_some() {
            return 2;
        }
    }
    1
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
