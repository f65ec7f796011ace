//! Exhaustive verification sweeps over unit interval orders: Escher and
//! correct-sequence counts, chromatic symmetric function coefficients, the
//! split/splice round trip, and the supporting lemma suites.

mod config;
mod report;
mod runner;
mod single;
mod suites;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};

use epos_core::escher::calibrate_convention;
use epos_core::Error;

use config::{Format, LambdaFilter, Shard, Suite, SweepConfig};
use report::{merge_reports, Report};
use runner::{run_sweep, write_report, SweepError};

#[derive(Parser)]
#[command(name = "epos", version, about = "Verification sweeps over unit interval orders")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites over every UIO of a given size.
    Sweep {
        /// Number of elements, 1..=8.
        #[arg(long)]
        n: usize,
        /// Two-part split filter: 'n,k' or 'all'.
        #[arg(long, default_value = "all")]
        lambda: String,
        /// Comma-separated suites; defaults to every suite whose size limit
        /// admits N.
        #[arg(long, value_delimiter = ',')]
        suites: Option<Vec<String>>,
        /// Worker count; the EPOS_JOBS variable applies when absent.
        #[arg(long)]
        jobs: Option<usize>,
        /// Report path; defaults to epos-report.json or epos-report.csv.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Report format: json or csv.
        #[arg(long, default_value = "json")]
        format: String,
        /// Reuse completed work from the progress journal.
        #[arg(long)]
        resume: bool,
        /// Round-robin slice 'index/count' of the UIO list.
        #[arg(long)]
        shard: Option<String>,
    },
    /// Inspect one UIO: counts, coefficient, and the split/splice trace.
    Check {
        /// Hessenberg vector, e.g. "2,3,3".
        #[arg(long = "h")]
        h: String,
        /// Partition of the element count, e.g. "2,1".
        #[arg(long)]
        lambda: String,
        /// Print the per-Escher split/splice table.
        #[arg(long)]
        trace: bool,
    },
    /// Search anchor conventions for one passing every round trip.
    Calibrate {
        /// Largest order swept during the search, 3..=8.
        #[arg(long = "max-n", default_value_t = 8)]
        max_n: usize,
    },
    /// Union shard reports into one; overlapping records must agree.
    Merge {
        /// Destination path for the merged JSON report.
        out: PathBuf,
        /// Input JSON reports.
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Sweep {
            n,
            lambda,
            suites,
            jobs,
            out,
            format,
            resume,
            shard,
        } => sweep_command(n, lambda, suites, jobs, out, format, resume, shard),
        Command::Check { h, lambda, trace } => single::run_check(&h, &lambda, trace),
        Command::Calibrate { max_n } => calibrate_command(max_n),
        Command::Merge { out, inputs } => merge_command(&out, &inputs),
    };
    std::process::exit(code);
}

#[allow(clippy::too_many_arguments)]
fn sweep_command(
    n: usize,
    lambda: String,
    suites: Option<Vec<String>>,
    jobs: Option<usize>,
    out: Option<PathBuf>,
    format: String,
    resume: bool,
    shard: Option<String>,
) -> i32 {
    let config = match build_config(n, lambda, suites, jobs, out, format, resume, shard) {
        Ok(config) => config,
        Err(msg) => {
            eprintln!("error: {}", msg);
            return 2;
        }
    };
    let started = Instant::now();
    match run_sweep(&config) {
        Ok(report) => {
            let s = &report.summary;
            eprintln!(
                "swept {} records, {} checks, {} failed ({} informational) in {:.2}s; report at {}",
                s.records,
                s.checks,
                s.failed,
                s.informational_failed,
                started.elapsed().as_secs_f64(),
                config.out_path.display()
            );
            for name in &s.failed_checks {
                eprintln!("failed: {}", name);
            }
            if s.failed > 0 {
                1
            } else {
                0
            }
        }
        Err(SweepError::Fatal(msg)) => {
            eprintln!("error: {}", msg);
            2
        }
        Err(SweepError::Interrupted(msg)) => {
            eprintln!("error: {}", msg);
            2
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn build_config(
    n: usize,
    lambda: String,
    suites: Option<Vec<String>>,
    jobs: Option<usize>,
    out: Option<PathBuf>,
    format: String,
    resume: bool,
    shard: Option<String>,
) -> Result<SweepConfig, String> {
    let lambda: LambdaFilter = lambda.parse()?;
    let suites: Vec<Suite> = match suites {
        Some(names) => names
            .iter()
            .map(|name| name.trim().parse())
            .collect::<Result<_, _>>()?,
        None => Suite::all()
            .into_iter()
            .filter(|suite| suite.max_n() >= n)
            .collect(),
    };
    let jobs = match jobs {
        Some(j) => j,
        None => match std::env::var("EPOS_JOBS") {
            Ok(value) => value
                .parse::<usize>()
                .ok()
                .filter(|&j| j >= 1)
                .ok_or_else(|| format!("EPOS_JOBS must be a positive integer, got '{}'", value))?,
            Err(_) => std::thread::available_parallelism().map_or(1, |p| p.get()),
        },
    };
    let format: Format = format.parse()?;
    let out_path = out.unwrap_or_else(|| {
        PathBuf::from(match format {
            Format::Json => "epos-report.json",
            Format::Csv => "epos-report.csv",
        })
    });
    let shard = shard.map(|s| s.parse::<Shard>()).transpose()?;
    let config = SweepConfig {
        n,
        lambda,
        suites,
        jobs,
        out_path,
        format,
        resume,
        shard,
    };
    config.validate()?;
    Ok(config)
}

fn calibrate_command(max_n: usize) -> i32 {
    match calibrate_convention(max_n) {
        Ok(calibration) => {
            for line in &calibration.log {
                println!("{}", line);
            }
            println!("calibrated: {}", calibration.convention);
            0
        }
        Err(e @ Error::CalibrationFailed(_)) => {
            eprintln!("{}", e);
            1
        }
        Err(e) => {
            eprintln!("error: {}", e);
            2
        }
    }
}

fn merge_command(out: &PathBuf, inputs: &[PathBuf]) -> i32 {
    let mut reports = Vec::new();
    for path in inputs {
        let text = match std::fs::read_to_string(path) {
            Ok(text) => text,
            Err(e) => {
                eprintln!("error: read {}: {}", path.display(), e);
                return 2;
            }
        };
        match Report::from_json(&text) {
            Ok(report) => reports.push(report),
            Err(msg) => {
                eprintln!("error: {}: {}", path.display(), msg);
                return 2;
            }
        }
    }
    match merge_reports(reports) {
        Ok(merged) => {
            if let Err(msg) = write_report(&merged, out, Format::Json) {
                eprintln!("error: {}", msg);
                return 2;
            }
            let s = &merged.summary;
            eprintln!(
                "merged {} inputs into {} records, {} checks, {} failed; report at {}",
                inputs.len(),
                s.records,
                s.checks,
                s.failed,
                out.display()
            );
            0
        }
        Err(msg) => {
            eprintln!("error: {}", msg);
            2
        }
    }
}
