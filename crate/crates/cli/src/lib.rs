//! Command-line front end for tableau generation and proving.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use tabgen_core::emit::{emit, EmitFormat};
use tabgen_core::fuzz::{run_fuzz, FuzzConfig};
use tabgen_core::{
    build_calculus, oracle_entails, parse_logic_spec, parse_sequent, search_separators, Calculus,
    LogicSpec, ProofResult, Prover, ProverConfig, SearchOutcome, Verdict,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INVALID: u8 = 1;
pub const EXIT_ERROR: u8 = 2;
pub const EXIT_MISMATCH: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "tabgen",
    version,
    about = "Tableau calculi for finite-valued logics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Theory,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Generate the calculus of a logic.
    Gen {
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the document here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Prove a sequent with the generated tableau system.
    Prove {
        spec: PathBuf,
        sequent: String,
        /// Print every expansion and closure.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        max_countermodels: Option<usize>,
    },
    /// Decide a sequent by truth tables alone.
    Check { spec: PathBuf, sequent: String },
    /// Compare prover and truth tables on random sequents.
    Fuzz {
        spec: PathBuf,
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        atoms: usize,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Search for separating formulas.
    Separators {
        spec: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_depth: usize,
    },
}

type Outcome = Result<u8, String>;

/// Runs one command line, writing results to `out` and diagnostics to `err`.
/// Returns the process exit status.
pub fn run_cli<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                if !text.contains("Usage:") {
                    let _ = writeln!(err, "\n{}", Cli::command().render_usage());
                }
                EXIT_ERROR
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
    }
}

fn load(path: &Path) -> Result<LogicSpec, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_logic_spec(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn calculus(spec: &LogicSpec) -> Result<Calculus, String> {
    build_calculus(spec).map_err(|e| e.to_string())
}

fn io(e: std::io::Error) -> String {
    e.to_string()
}

fn dispatch(command: CliCommand, out: &mut dyn Write) -> Outcome {
    match command {
        CliCommand::Gen {
            spec,
            format,
            out: target,
        } => {
            let spec = load(&spec)?;
            let calc = calculus(&spec)?;
            let format = match format {
                Format::Text => EmitFormat::Text,
                Format::Theory => EmitFormat::Theory,
            };
            let doc = emit(&calc, format);
            match target {
                Some(path) => {
                    fs::write(&path, doc).map_err(|e| format!("{}: {e}", path.display()))?
                }
                None => out.write_all(doc.as_bytes()).map_err(io)?,
            }
            Ok(EXIT_OK)
        }
        CliCommand::Prove {
            spec,
            sequent,
            trace,
            max_countermodels,
        } => {
            let spec = load(&spec)?;
            let calc = calculus(&spec)?;
            let s = parse_sequent(&sequent, &spec).map_err(|e| e.to_string())?;
            let config = ProverConfig {
                trace,
                max_countermodels,
                ..ProverConfig::default()
            };
            let result = Prover::with_config(&calc, config)
                .prove(&s)
                .map_err(|e| e.to_string())?;
            for line in &result.tableau().trace {
                writeln!(out, "{line}").map_err(io)?;
            }
            match &result {
                ProofResult::Closed(_) => {
                    writeln!(out, "CLOSED").map_err(io)?;
                    Ok(EXIT_OK)
                }
                ProofResult::Open { countermodels, .. } => {
                    writeln!(out, "OPEN").map_err(io)?;
                    for v in countermodels {
                        writeln!(out, "countermodel {}", v.display(&spec)).map_err(io)?;
                    }
                    Ok(EXIT_INVALID)
                }
            }
        }
        CliCommand::Check { spec, sequent } => {
            let spec = load(&spec)?;
            let s = parse_sequent(&sequent, &spec).map_err(|e| e.to_string())?;
            match oracle_entails(&spec, &s) {
                Verdict::Valid => {
                    writeln!(out, "VALID").map_err(io)?;
                    Ok(EXIT_OK)
                }
                Verdict::Invalid(witnesses) => {
                    writeln!(out, "INVALID").map_err(io)?;
                    for v in &witnesses {
                        writeln!(out, "witness {}", v.display(&spec)).map_err(io)?;
                    }
                    Ok(EXIT_INVALID)
                }
            }
        }
        CliCommand::Fuzz {
            spec,
            count,
            atoms,
            depth,
            seed,
        } => {
            let spec = load(&spec)?;
            let calc = calculus(&spec)?;
            let config = FuzzConfig {
                count,
                atoms,
                depth,
                seed,
                ..FuzzConfig::default()
            };
            let report = run_fuzz(&calc, &config).map_err(|e| e.to_string())?;
            writeln!(out, "{}/{} agree", report.agree, report.total).map_err(io)?;
            match report.first_mismatch {
                None => Ok(EXIT_OK),
                Some(m) => {
                    writeln!(out, "first mismatch: case {} `{}`", m.case, m.sequent).map_err(io)?;
                    let oracle = match &m.oracle {
                        Verdict::Valid => "valid".to_string(),
                        Verdict::Invalid(ws) => format!("{} witness(es)", ws.len()),
                    };
                    let prover = if m.prover_closed {
                        "closed".to_string()
                    } else {
                        format!("open with {} countermodel(s)", m.countermodels.len())
                    };
                    writeln!(out, "  oracle: {oracle}, prover: {prover}").map_err(io)?;
                    Ok(EXIT_MISMATCH)
                }
            }
        }
        CliCommand::Separators { spec, max_depth } => {
            let spec = load(&spec)?;
            match search_separators(&spec, max_depth) {
                SearchOutcome::Found(seps) => {
                    if seps.is_empty() {
                        writeln!(out, "no separators needed").map_err(io)?;
                    }
                    for s in &seps {
                        writeln!(out, "t{}: {}", s.index, s.body).map_err(io)?;
                    }
                    Ok(EXIT_OK)
                }
                SearchOutcome::NotFound => {
                    writeln!(out, "NOT FOUND up to depth {max_depth}").map_err(io)?;
                    Ok(EXIT_INVALID)
                }
            }
        }
    }
}
