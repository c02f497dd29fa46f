use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use coflow::instances::Density;
use coflow::lp::{build_exp_lp, build_interval_lp, write_mps, DEFAULT_HORIZON_CAP};
use coflow::{completion_report, validate_schedule, Case, Rule, Verdict};
use coflow_bench::config::{parse_cases, parse_rules, Config, DEFAULT_CONFIG};
use coflow_bench::corpus::build_corpus;
use coflow_bench::grid::{ordering_with_bound, run_grid, GridSpec};
use coflow_bench::matching::run_matching;
use coflow_bench::online_cmp::run_online_report;
use coflow_bench::sweep::{run_sweep, SweepSpec};
use coflow_bench::{sidecar, write_outputs};

#[derive(Parser)]
#[command(
    name = "coflow-bench",
    version,
    about = "Coflow scheduling experiments",
    after_long_help = DEFAULT_CONFIG
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// TOML configuration; flags below override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output CSV path; the JSON sidecar goes next to it. Defaults to stdout.
    #[arg(long, short, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Corpus seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Ports per instance.
    #[arg(long, global = true)]
    m: Option<usize>,
    /// Coflows per instance.
    #[arg(long, global = true)]
    coflows: Option<usize>,
    /// Number of instances.
    #[arg(long, global = true)]
    instances: Option<usize>,
    /// mixed | sparse | dense | uniform
    #[arg(long, global = true)]
    layout: Option<String>,
    /// zero | default | upper=U
    #[arg(long, global = true)]
    releases: Option<String>,
    /// Also write per-cell wall-clock timings.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Write the configured corpus as instance CSV files.
    Gen {
        #[arg(long)]
        dir: PathBuf,
        /// One line per coflow instead of one per flow.
        #[arg(long)]
        compact: bool,
    },
    /// Every rule x case on the corpus, normalized by the anchor.
    RunGrid,
    /// Average ratio to the reference rule as inter-arrival gaps grow.
    ReleaseSweep {
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Online against offline runs of each rule, with a lower bound.
    Online,
    /// Diagonal against spread coflows with equal row and column sums.
    CostOfMatching,
    /// Check a trace (slot,input,output,coflow) against an instance.
    Validate {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        trace: PathBuf,
    },
    /// Print the interval LP (or the unit-interval LP) of an instance as MPS.
    DumpLp {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        exp: bool,
        #[arg(long, default_value_t = DEFAULT_HORIZON_CAP)]
        cap: u64,
    },
    /// Schedule one instance and write the trace CSV.
    Schedule {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value = "LP")]
        rule: String,
        #[arg(long, default_value = "c")]
        case: String,
        /// Re-order at every release (case c semantics).
        #[arg(long)]
        online: bool,
    },
}

fn load_config(common: &Common) -> Result<Config> {
    let mut cfg = match &common.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    if let Some(v) = common.threads {
        cfg.run.threads = v;
    }
    if let Some(v) = common.seed {
        cfg.corpus.seed = v;
    }
    if let Some(v) = common.m {
        cfg.corpus.m = v;
    }
    if let Some(v) = common.coflows {
        cfg.corpus.coflows = v;
    }
    if let Some(v) = common.instances {
        cfg.corpus.instances = v;
    }
    if let Some(v) = &common.layout {
        cfg.corpus.layout = v.clone();
    }
    if let Some(v) = &common.releases {
        cfg.corpus.releases = v.clone();
    }
    cfg.run.timings |= common.timings;
    Ok(cfg)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let mut cfg = load_config(&cli.common)?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.run.threads)
        .build_global()
        .context("starting worker pool")?;
    let out = cli.common.out.as_deref();
    match cli.command {
        Command::Gen { dir, compact } => {
            std::fs::create_dir_all(&dir)?;
            for e in build_corpus(&cfg.corpus)? {
                let text = if compact {
                    coflow::io::write_compact_csv(&e.instance)
                } else {
                    coflow::io::write_flow_csv(&e.instance)
                };
                let path = dir.join(format!("instance-{:03}.csv", e.index + 1));
                std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
            }
        }
        Command::RunGrid => {
            let spec = GridSpec {
                rules: parse_rules(&cfg.grid.rules)?,
                cases: parse_cases(&cfg.grid.cases)?,
                anchor: (Rule::from_str(&cfg.grid.anchor_rule)?, Case::from_str(&cfg.grid.anchor_case)?),
                lower_bound: cfg.grid.lower_bound,
            };
            let report = run_grid(&build_corpus(&cfg.corpus)?, &spec)?;
            let timings = cfg.run.timings.then(|| report.timings_csv());
            write_outputs(out, &report.to_csv(), &sidecar("run-grid", &cfg, report.summary()), timings.as_deref())?;
        }
        Command::ReleaseSweep { samples } => {
            if let Some(s) = samples {
                cfg.sweep.samples = s;
            }
            let spec = SweepSpec {
                m: cfg.corpus.m,
                coflows: cfg.corpus.coflows,
                density: Density::from_str(&cfg.sweep.density)?,
                samples: cfg.sweep.samples,
                uppers: cfg.sweep.uppers.clone(),
                rules: parse_rules(&cfg.grid.rules)?,
                reference: Rule::from_str(&cfg.sweep.reference)?,
                case: Case::from_str(&cfg.sweep.case)?,
                seed: cfg.corpus.seed,
                release_seed: cfg.corpus.release_seed,
            };
            let report = run_sweep(&spec)?;
            write_outputs(out, &report.to_csv(), &sidecar("release-sweep", &cfg, report.summary()), None)?;
        }
        Command::Online => {
            if cli.common.releases.is_none() {
                cfg.corpus.releases = cfg.online.releases.clone();
            }
            let report = run_online_report(&build_corpus(&cfg.corpus)?, &parse_rules(&cfg.online.rules)?)?;
            write_outputs(out, &report.to_csv(), &sidecar("online", &cfg, report.summary()), None)?;
        }
        Command::CostOfMatching => {
            let report = run_matching(
                &build_corpus(&cfg.corpus)?,
                &parse_rules(&cfg.matching.rules)?,
                Case::from_str(&cfg.matching.case)?,
                cfg.matching.spread_seed,
            )?;
            write_outputs(out, &report.to_csv(), &sidecar("cost-of-matching", &cfg, report.summary()), None)?;
        }
        Command::Validate { instance, trace } => {
            let inst = coflow::io::read_instance(&instance)?;
            let text = std::fs::read_to_string(&trace).with_context(|| format!("reading {}", trace.display()))?;
            let trace = coflow::io::parse_trace_csv(&text)?;
            match validate_schedule(&inst, &trace)? {
                Verdict::Ok => {
                    let rep = completion_report(&inst, &trace)?;
                    println!(
                        "ok: objective {} makespan {}",
                        coflow::io::format_rational(&rep.objective),
                        rep.makespan
                    );
                }
                Verdict::Violations(v) => {
                    for x in &v {
                        println!("{x}");
                    }
                    println!("{} violation(s)", v.len());
                    return Ok(ExitCode::from(1));
                }
            }
        }
        Command::DumpLp { instance, exp, cap } => {
            let inst = coflow::io::read_instance(&instance)?;
            let relax = if exp { build_exp_lp(&inst, cap)? } else { build_interval_lp(&inst)? };
            let name = if exp { "lp_exp" } else { "interval_lp" };
            let text = write_mps(&relax.lp, name);
            match out {
                Some(p) => std::fs::write(p, text)?,
                None => print!("{text}"),
            }
        }
        Command::Schedule {
            instance,
            rule,
            case,
            online,
        } => {
            let inst = coflow::io::read_instance(&instance)?;
            let rule = Rule::from_str(&rule)?;
            let trace = if online {
                coflow::online::run_online(&inst, rule)?
            } else {
                coflow::run_schedule(&inst, &ordering_with_bound(&inst, rule)?.0, Case::from_str(&case)?)?
            };
            let rep = completion_report(&inst, &trace)?;
            eprintln!(
                "objective {} makespan {}",
                coflow::io::format_rational(&rep.objective),
                rep.makespan
            );
            let text = coflow::io::write_trace_csv(&trace);
            match out {
                Some(p) => std::fs::write(p, text)?,
                None => print!("{text}"),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
