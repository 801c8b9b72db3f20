use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qcweights::cli::{self, AnalysisConfig};
use qcweights::code::DEFAULT_ENUM_LIMIT;
use qcweights::group::GroupKind;
use qcweights::Error;

#[derive(Parser)]
#[command(name = "qcw", version, about = "Weight and orbit counts for quasi-cyclic codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate a code and compare orbit counts with the closed forms.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Refuse to enumerate more codewords than this.
        #[arg(long, default_value_t = DEFAULT_ENUM_LIMIT)]
        max_enum: u64,
        /// Comma-separated subset of shift, shift-scalar, full.
        #[arg(long, value_delimiter = ',')]
        groups: Option<Vec<GroupKind>>,
        #[arg(long, default_value_t = 1)]
        omega_index: usize,
    },
    /// List the q-cyclotomic cosets modulo m.
    Cosets {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        json: bool,
    },
    /// Closed-form counts only, no enumeration.
    Bounds {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 1)]
        omega_index: usize,
    },
}

fn read_spec(path: &PathBuf) -> Result<qcweights::code::QccSpec, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    cli::parse_config(&text)
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, Error> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Internal(e.to_string()))
}

fn run(command: Command) -> Result<String, Error> {
    match command {
        Command::Analyze {
            file,
            json,
            max_enum,
            groups,
            omega_index,
        } => {
            let cfg = AnalysisConfig {
                max_enum,
                groups,
                omega_index,
            };
            let report = cli::analyze(read_spec(&file)?, &cfg)?;
            if json {
                to_json(&report)
            } else {
                Ok(cli::render_text(&report))
            }
        }
        Command::Cosets { q, m, json } => {
            let table = cli::coset_table(q, m)?;
            if json {
                to_json(&table)
            } else {
                Ok(cli::render_cosets(&table))
            }
        }
        Command::Bounds { file, json, omega_index } => {
            let cfg = AnalysisConfig {
                omega_index,
                ..AnalysisConfig::default()
            };
            let report = cli::bounds_only(read_spec(&file)?, &cfg)?;
            if json {
                to_json(&report)
            } else {
                Ok(cli::render_text(&report))
            }
        }
    }
}

fn main() -> ExitCode {
    let parsed = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(parsed.command) {
        Ok(out) => {
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            if !out.ends_with('\n') {
                let _ = stdout.write_all(b"\n");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
