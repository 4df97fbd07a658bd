//! Suite runner CLI: `run` executes a JSON config and writes reports,
//! `explain` renders a report file, `list-families` shows what configs may
//! reference. Exit status 0 iff every job matched its expectation.

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use sublevel::suite::{self, JobReport, SuiteConfig};

#[derive(Parser)]
#[command(name = "sublevel", version, about = "constrained-infimum verification suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a suite config and write JSON reports plus a CSV summary.
    Run {
        /// Path to the JSON suite config.
        config: PathBuf,
        /// Override the config's seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Worker thread count (defaults to the number of cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Output directory (overrides the config's out_dir; default "reports").
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the absolute tolerance.
        #[arg(long)]
        tol_abs: Option<f64>,
        /// Override the relative tolerance.
        #[arg(long)]
        tol_rel: Option<f64>,
    },
    /// Pretty-print a single job report.
    Explain {
        /// Path to a job report JSON file.
        report: PathBuf,
    },
    /// List the instance families configs can reference.
    ListFamilies,
}

fn run(
    config_path: PathBuf,
    seed: Option<u64>,
    jobs: Option<usize>,
    out: Option<PathBuf>,
    tol_abs: Option<f64>,
    tol_rel: Option<f64>,
) -> Result<bool, String> {
    if let Some(n) = jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| format!("thread pool: {e}"))?;
    }
    let text = std::fs::read_to_string(&config_path)
        .map_err(|e| format!("cannot read {}: {e}", config_path.display()))?;
    let mut config = SuiteConfig::from_json(&text).map_err(|e| e.to_string())?;
    if let Some(s) = seed {
        config.seed = s;
    }
    if let Some(t) = tol_abs {
        config.tolerances.abs = t;
    }
    if let Some(t) = tol_rel {
        config.tolerances.rel = t;
    }
    let out_dir = out
        .or_else(|| config.out_dir.clone().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("reports"));

    let outcome = suite::run_suite(&config, &out_dir).map_err(|e| e.to_string())?;
    for rep in &outcome.reports {
        let status = if rep.ok { "ok" } else { "FAILED" };
        println!("{status:>6}  {}", rep.name);
    }
    println!(
        "{} job(s), {} ok; reports in {}",
        outcome.reports.len(),
        outcome.reports.iter().filter(|r| r.ok).count(),
        out_dir.display()
    );
    Ok(outcome.all_ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { config, seed, jobs, out, tol_abs, tol_rel } => {
            run(config, seed, jobs, out, tol_abs, tol_rel)
        }
        Command::Explain { report } => std::fs::read_to_string(&report)
            .map_err(|e| format!("cannot read {}: {e}", report.display()))
            .and_then(|text| {
                serde_json::from_str::<JobReport>(&text).map_err(|e| format!("parse error: {e}"))
            })
            .map(|rep| {
                print!("{}", suite::explain(&rep));
                true
            }),
        Command::ListFamilies => {
            println!("{}", suite::list_families());
            Ok(true)
        }
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
