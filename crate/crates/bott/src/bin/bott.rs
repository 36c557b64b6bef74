use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use bott::classify::{classify_all, classify_stream, ClassifyError, ClassifyOptions};
use bott::format::{self, encode_hex, Format, FormatError};
use bott::report;
use bott_core::decompose::decompose;
use bott_core::invariants::{betti, fingerprint, rank};
use bott_core::{bott_canon, bott_equivalent, bott_orbit, iso_canon, BottError, BottMatrix, OrbitBudget};

/// Classification engine for real Bott manifolds.
#[derive(Parser)]
#[command(name = "bott", version)]
struct Cli {
    /// Input encoding; detected per record when omitted.
    #[arg(long, global = true)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a matrix.
    Check { matrix: String },
    /// Iso-canonical form and Bott class representative.
    Canon { matrix: String },
    /// List the iso-canonical members of the Bott class.
    Orbit {
        matrix: String,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Count Bott classes of all n×n matrices, or of a stream of records.
    Classify {
        #[arg(long)]
        n: Option<usize>,
        /// File with one record per line.
        #[arg(long, conflicts_with = "n")]
        stream: Option<PathBuf>,
        #[arg(long)]
        workers: Option<usize>,
        /// Allow n = 7 and n = 8.
        #[arg(long)]
        long_run: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Invariant fingerprint.
    Invariants { matrix: String },
    /// Rational Betti numbers.
    Betti { matrix: String },
    /// Indecomposable factors.
    Decompose { matrix: String },
    /// Decide Bott equivalence.
    Iso { a: String, b: String },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {source}")]
    Record { line: usize, source: FormatError },
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Bott(#[from] BottError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

impl CliError {
    fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io { .. } => "io",
            CliError::Record { source, .. } | CliError::Format(source) => format_code(source),
            CliError::Bott(e) => bott_code(e),
            CliError::Classify(ClassifyError::Bott(e)) => bott_code(e),
            CliError::Classify(ClassifyError::OutOfRange { .. }) => "out_of_range",
            CliError::Classify(ClassifyError::LongRunRequired { .. }) => "long_run_required",
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 3,
            CliError::Classify(ClassifyError::OutOfRange { .. } | ClassifyError::LongRunRequired { .. }) => 3,
            _ if self.is_budget() => 2,
            _ => 1,
        }
    }

    fn is_budget(&self) -> bool {
        match self {
            CliError::Bott(e) => e.is_budget(),
            CliError::Format(FormatError::Bott(e)) => e.is_budget(),
            CliError::Classify(e) => e.is_budget(),
            _ => false,
        }
    }
}

fn format_code(e: &FormatError) -> &'static str {
    match e {
        FormatError::Malformed { .. } => "malformed",
        FormatError::NotAcyclic => "not_acyclic",
        FormatError::NotStrictlyUpper => "not_strictly_upper",
        FormatError::Bott(b) => bott_code(b),
    }
}

fn bott_code(e: &BottError) -> &'static str {
    match e {
        BottError::NotBott => "not_acyclic",
        BottError::OrbitBudgetExceeded { .. } => "orbit_budget_exceeded",
        BottError::KernelTooLarge { .. } => "kernel_too_large",
        BottError::TooManyLevels { .. } => "too_many_levels",
        BottError::TooLarge { .. } => "too_large",
        BottError::SizeMismatch { .. } | BottError::DimensionMismatch { .. } => "size_mismatch",
        BottError::PreconditionViolated(_) => "precondition_violated",
        BottError::EmptyInput => "empty_input",
        _ => "invalid_input",
    }
}

fn read_arg(arg: &str) -> Result<String, CliError> {
    match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_string(),
            source,
        }),
        None => Ok(arg.to_string()),
    }
}

fn matrix(arg: &str, format: Option<Format>) -> Result<BottMatrix, CliError> {
    Ok(format::parse(&read_arg(arg)?, format)?)
}

fn budget() -> Result<OrbitBudget, CliError> {
    match std::env::var("BOTT_ORBIT_BUDGET") {
        Ok(v) => v
            .trim()
            .parse()
            .map(OrbitBudget::new)
            .map_err(|_| CliError::Usage(format!("BOTT_ORBIT_BUDGET must be a non-negative integer, got `{v}`"))),
        Err(_) => Ok(OrbitBudget::default()),
    }
}

/// Records of a stream file: one per line, skipping blank lines, `#`
/// comments and a `>>digraph6<<` header.
fn stream_records(path: &PathBuf, format: Option<Format>) -> Result<Vec<BottMatrix>, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    text.lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.trim().trim_start_matches(">>digraph6<<")))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'))
        .map(|(line, rec)| format::parse(rec, format).map_err(|source| CliError::Record { line, source }))
        .collect()
}

fn run(cli: Cli) -> Result<String, CliError> {
    let fmt = cli.format;
    let budget = budget()?;
    match cli.command {
        Command::Check { matrix: m } => {
            let a = matrix(&m, fmt)?;
            Ok(json!({"bott": true, "n": a.n(), "strictly_upper": a.is_strictly_upper()}).to_string())
        }
        Command::Canon { matrix: m } => {
            let a = matrix(&m, fmt)?;
            let iso = iso_canon(&a).matrix;
            let class = bott_canon(&a, budget)?;
            Ok(json!({
                "iso": encode_hex(&iso)?,
                "canon": encode_hex(&class.canonical)?,
                "orbit_size": class.orbit_size,
            })
            .to_string())
        }
        Command::Orbit { matrix: m, limit } => {
            let a = matrix(&m, fmt)?;
            let orbit = bott_orbit(&a, budget)?;
            let members = report::hex_list(orbit.members().take(limit.unwrap_or(usize::MAX)))?;
            Ok(json!({"size": orbit.len(), "members": members}).to_string())
        }
        Command::Classify {
            n,
            stream,
            workers,
            long_run,
            csv,
        } => {
            let summary = match (n, stream) {
                (Some(n), None) => {
                    let mut options = ClassifyOptions {
                        long_run,
                        budget,
                        ..ClassifyOptions::default()
                    };
                    if let Some(w) = workers {
                        options.workers = w;
                    }
                    classify_all(n, options)?
                }
                (None, Some(path)) => classify_stream(stream_records(&path, fmt)?, budget)?,
                _ => return Err(CliError::Usage("classify needs exactly one of --n or --stream".into())),
            };
            Ok(if csv {
                report::summary_csv(&summary)?
            } else {
                report::summary_json(&summary)?
            })
        }
        Command::Invariants { matrix: m } => {
            let a = matrix(&m, fmt)?;
            Ok(report::fingerprint_json(a.n(), &fingerprint(&a)?))
        }
        Command::Betti { matrix: m } => {
            let a = matrix(&m, fmt)?;
            Ok(json!({"rank": rank(&a), "betti": betti(&a)?}).to_string())
        }
        Command::Decompose { matrix: m } => {
            let a = matrix(&m, fmt)?;
            Ok(report::decomposition_json(&decompose(&a, budget)?)?)
        }
        Command::Iso { a, b } => {
            let (a, b) = (matrix(&a, fmt)?, matrix(&b, fmt)?);
            Ok(json!({"equivalent": bott_equivalent(&a, &b, budget)?}).to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.exit_code() == 0 => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = e.render().to_string();
            let first = message.lines().next().unwrap_or("").trim_start_matches("error: ");
            eprintln!("{}", json!({"code": "usage", "message": first}));
            return ExitCode::from(3);
        }
    };
    match run(cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            let newline = if out.ends_with('\n') { "" } else { "\n" };
            match write!(stdout, "{out}{newline}").and_then(|_| stdout.flush()) {
                Err(e) if e.kind() != io::ErrorKind::BrokenPipe => {
                    eprintln!("{}", json!({"code": "io", "message": e.to_string()}));
                    ExitCode::from(3)
                }
                _ => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("{}", json!({"code": e.code(), "message": e.to_string()}));
            ExitCode::from(e.exit_code())
        }
    }
}
