use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sasbt::harness::{
    replay, run_compare, run_falsify, score_archives, ExperimentConfig, ExperimentKind, HarnessError, NSGA2, NSGA2_DT,
};

#[derive(Parser)]
#[command(name = "sasbt", version, about = "Surrogate-assisted search-based testing experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Experiment config (TOML); built-in defaults when omitted.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Base seed, overrides the config.
    #[arg(long, value_name = "N")]
    seed: Option<u64>,
    /// Output directory, overrides the config.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Repetitions, overrides the config.
    #[arg(long, value_name = "N")]
    reps: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// NSGA-II against NSGAII-DT on the parking-lot simulator.
    Compare(Common),
    /// Repeated surrogate-assisted falsification trials.
    Falsify(Common),
    /// Score archive files against the reference front of their union.
    Indicators {
        #[command(flatten)]
        common: Common,
        #[arg(required = true)]
        archives: Vec<PathBuf>,
    },
    /// Recompute run summaries of a finished comparison from its archives.
    Replay(Common),
}

fn load(common: &Common, kind: Option<ExperimentKind>) -> Result<ExperimentConfig, HarnessError> {
    let mut cfg = match &common.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())))?;
            toml::from_str(&text).map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())))?
        }
        None => ExperimentConfig::default(),
    };
    if let Some(kind) = kind {
        cfg.kind = kind;
    }
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    if let Some(out) = &common.out {
        cfg.out = out.clone();
    }
    if let Some(reps) = common.reps {
        cfg.repetitions = reps;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or("-".into(), |x| format!("{x:.3}"))
}

fn run(cli: Cli) -> Result<(), HarnessError> {
    match cli.command {
        Command::Compare(common) => {
            let cfg = load(&common, Some(ExperimentKind::Compare))?;
            let report = run_compare(&cfg)?;
            let agg = &report.aggregates;
            for a in &agg.algorithms {
                println!(
                    "{:<9} distinct critical {:>6.1}  hv {:.4}  hv@{} {:.4}",
                    a.algorithm, a.median_distinct_critical, a.median_hv, agg.early_hv.evaluations, a.median_early_hv
                );
            }
            println!(
                "ratio {}/{} = {}  rank-sum p = {:.4}",
                NSGA2_DT,
                NSGA2,
                fmt_opt(agg.distinct_ratio),
                agg.rank_sum.p_value
            );
            println!("wrote {}", cfg.out.display());
        }
        Command::Falsify(common) => {
            let cfg = load(&common, Some(ExperimentKind::Falsify))?;
            let report = run_falsify(&cfg)?;
            let bytes = std::fs::read(cfg.out.join("stats.csv")).map_err(|e| HarnessError::io(&cfg.out, e))?;
            print!("{}", String::from_utf8_lossy(&bytes));
            println!("wrote {} ({} trials)", cfg.out.display(), report.surrogate.trials);
        }
        Command::Indicators { common, archives } => {
            let cfg = load(&common, None)?;
            let scored = score_archives(&archives, &cfg.compare.distinctness)?;
            let mut w = csv::Writer::from_writer(Vec::new());
            let err = |e: csv::Error| HarnessError::Runtime(e.to_string());
            w.write_record(["path", "run_id", "evaluations", "hv", "gd", "spread", "distinct_critical"]).map_err(err)?;
            for s in &scored {
                let p = &s.snapshot;
                w.write_record([
                    s.path.display().to_string(),
                    s.run_id.clone(),
                    p.evaluations.to_string(),
                    p.hv.to_string(),
                    p.gd.to_string(),
                    p.spread.to_string(),
                    p.distinct_critical.to_string(),
                ])
                .map_err(err)?;
            }
            let bytes = w.into_inner().map_err(|e| HarnessError::Runtime(e.to_string()))?;
            match &common.out {
                Some(dir) => {
                    std::fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
                    let path = dir.join("indicators.csv");
                    std::fs::write(&path, &bytes).map_err(|e| HarnessError::io(&path, e))?;
                    println!("wrote {}", path.display());
                }
                None => print!("{}", String::from_utf8_lossy(&bytes)),
            }
        }
        Command::Replay(common) => {
            let cfg = load(&common, None)?;
            let replayed = replay(&cfg.out)?;
            println!("{} runs replayed, summaries {}", replayed.runs.len(), if replayed.matches { "match" } else { "DIFFER" });
            if !replayed.matches {
                return Err(HarnessError::Runtime("replayed summaries differ from report.json".into()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
