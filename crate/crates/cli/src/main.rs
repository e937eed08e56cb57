use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use ramislope_cli::{emit_report, parse_job, run_job, summary, DslError, Format};
use ramislope_core::precision::PrecisionPolicy;

const EXIT_USAGE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_VALIDATION: u8 = 3;
const EXIT_TASK: u8 = 4;
const EXIT_PRECISION: u8 = 5;

const ENV_MAX_PRECISION: &str = "RAMISLOPE_MAX_PRECISION";

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Json,
    Tsv,
}

/// Ramification filtrations and nearby slopes of finite covers of
/// equal-characteristic traits.
#[derive(Debug, Parser)]
#[command(name = "ramislope", version)]
struct Cli {
    /// Job file; reads standard input when omitted or `-`.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
    /// Initial relative precision of series computations.
    #[arg(long)]
    precision: Option<i64>,
    /// Largest precision the adaptive policy may reach; overrides
    /// RAMISLOPE_MAX_PRECISION and the job file.
    #[arg(long)]
    max_precision: Option<i64>,
    /// Worker threads for sweeps (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Print a human-readable summary to stderr.
    #[arg(long)]
    summary: bool,
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("ramislope: {msg}");
    ExitCode::from(code)
}

fn read_input(path: Option<&PathBuf>) -> std::io::Result<Vec<u8>> {
    let mut buf = Vec::new();
    match path {
        Some(p) if p.as_os_str() != "-" => buf = std::fs::read(p)?,
        _ => {
            std::io::stdin().read_to_end(&mut buf)?;
        }
    }
    Ok(buf)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    if let Some(k) = cli.jobs {
        if k == 0 {
            return fail(EXIT_USAGE, "--jobs must be positive");
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            return fail(EXIT_USAGE, e);
        }
    }
    let input = match read_input(cli.input.as_ref()) {
        Ok(b) => b,
        Err(e) => return fail(EXIT_USAGE, format!("cannot read input: {e}")),
    };
    let job = match parse_job(&input) {
        Ok(j) => j,
        Err(e @ DslError::Parse { .. }) => return fail(EXIT_PARSE, e),
        Err(e @ DslError::Validation { .. }) => return fail(EXIT_VALIDATION, e),
    };

    let env_cap = match std::env::var(ENV_MAX_PRECISION) {
        Ok(v) => match v.trim().parse::<i64>() {
            Ok(n) => Some(n),
            Err(_) => {
                return fail(EXIT_VALIDATION, format!("{ENV_MAX_PRECISION}={v} is not an integer"))
            }
        },
        Err(_) => None,
    };
    let defaults = PrecisionPolicy::default();
    let initial = cli.precision.or(job.base.precision).unwrap_or(defaults.initial);
    let cap = cli
        .max_precision
        .or(env_cap)
        .or(job.base.max_precision)
        .unwrap_or(defaults.cap)
        .max(initial);
    let policy = match PrecisionPolicy::new(initial, cap) {
        Ok(p) => p,
        Err(e) => return fail(EXIT_VALIDATION, e),
    };

    let report = run_job(&job, policy);
    let format = match cli.format {
        OutputFormat::Json => Format::Json,
        OutputFormat::Tsv => Format::Tsv,
    };
    let text = match emit_report(&report, format) {
        Ok(t) => t,
        Err(e) => return fail(EXIT_TASK, format!("cannot serialize report: {e}")),
    };
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
        return fail(EXIT_USAGE, format!("cannot write report: {e}"));
    }
    if cli.summary {
        eprint!("{}", summary(&report));
    }
    if report.precision_exhausted() {
        ExitCode::from(EXIT_PRECISION)
    } else if report.failed() {
        ExitCode::from(EXIT_TASK)
    } else {
        ExitCode::SUCCESS
    }
}
