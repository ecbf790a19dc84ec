use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use frobkit::{emit, execute, load, Format, Options};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Text,
}

/// Runs the commands of a `.frk` session file and reports the results.
#[derive(Parser, Debug)]
#[command(name = "frobkit", version)]
struct Cli {
    /// Session file.
    file: PathBuf,
    /// Homological cutoff for commands without their own `--cutoff`.
    #[arg(long, env = "FROBKIT_DEFAULT_CUTOFF", default_value_t = 8)]
    cutoff: usize,
    /// Frobenius exponent for commands without their own `--e`.
    #[arg(long)]
    e: Option<u32>,
    /// Growth threshold: ratios at most 1 + delta count as polynomial.
    #[arg(long)]
    delta: Option<f64>,
    /// Exit with 3 when any result is inconclusive.
    #[arg(long)]
    strict: bool,
    /// Stop at the first failure or error.
    #[arg(long)]
    fail_fast: bool,
    /// Number of commands run in parallel.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record wall-clock milliseconds per command (makes output
    /// nondeterministic).
    #[arg(long)]
    timings: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let text = match std::fs::read_to_string(&cli.file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("frobkit: {}: {e}", cli.file.display());
            return ExitCode::from(1);
        }
    };
    let (session, world) = match load(&text) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("{}:{e}", cli.file.display());
            return ExitCode::from(1);
        }
    };
    let opts = Options {
        cutoff: cli.cutoff,
        e: cli.e,
        delta: cli.delta,
        fail_fast: cli.fail_fast,
        jobs: cli.jobs.max(1),
        timings: cli.timings,
    };
    let report = execute(&session, &world, text.as_bytes(), &opts);
    let format = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
        FormatArg::Text => Format::Text,
    };
    let bytes = emit(&report, format);
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &bytes),
        None => std::io::Write::write_all(&mut std::io::stdout().lock(), &bytes),
    };
    if let Err(e) = written {
        eprintln!("frobkit: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(report.exit_code(cli.strict) as u8)
}
