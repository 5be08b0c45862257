use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sctptp::checker::check_proof;
use sctptp::coq::{emit_prelude, export_coq, CoqError};
use sctptp::elaborator::{eliminate_level2, ElabError};
use sctptp::syntax::{parse_derivation, print_derivation};
use sctptp::Derivation;

#[derive(Parser)]
#[command(name = "sctptp", version, about = "Check, elaborate and export SC-TPTP derivations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a derivation.
    Check {
        input: String,
        /// Highest rule level accepted.
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
        level: u8,
        /// Print `STEP`/`RESULT` lines instead of prose.
        #[arg(long)]
        porcelain: bool,
    },
    /// Replace level-2 steps by level-1 steps.
    Elab {
        input: String,
        #[arg(short)]
        o: Option<PathBuf>,
        #[arg(long)]
        porcelain: bool,
    },
    /// Export a level-1 derivation as a Coq script.
    Coq {
        input: String,
        /// Output directory.
        #[arg(short, default_value = ".")]
        o: PathBuf,
        /// Also write SCTPTP.v.
        #[arg(long)]
        emit_prelude: bool,
        /// Theorem name; defaults to the input file stem.
        #[arg(long)]
        name: Option<String>,
    },
    /// Print a derivation in canonical form.
    Fmt {
        input: String,
        #[arg(short)]
        o: Option<PathBuf>,
    },
}

enum Failure {
    Invalid(String),
    Operational(String),
}

const OK: u8 = 0;
const INVALID: u8 = 1;
const OPERATIONAL: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::from(OK),
        Err(Failure::Invalid(msg)) => {
            if !msg.is_empty() {
                eprintln!("{msg}");
            }
            ExitCode::from(INVALID)
        }
        Err(Failure::Operational(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(OPERATIONAL)
        }
    }
}

fn read_input(input: &str) -> Result<String, Failure> {
    if input == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::Operational(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(input).map_err(|e| Failure::Operational(format!("{input}: {e}")))
    }
}

fn load(input: &str) -> Result<Derivation, Failure> {
    let src = read_input(input)?;
    parse_derivation(&src).map_err(|e| Failure::Operational(format!("{input}: {e}")))
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Operational(format!("{}: {e}", p.display()))),
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| Failure::Operational(format!("stdout: {e}"))),
    }
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Check { input, level, porcelain } => {
            let d = load(&input)?;
            let report = check_proof(&d, level);
            print!("{}", if porcelain { report.machine() } else { report.human() });
            if report.is_valid() {
                Ok(())
            } else {
                Err(Failure::Invalid(String::new()))
            }
        }
        Command::Elab { input, o, porcelain } => {
            let d = load(&input)?;
            let res = eliminate_level2(&d).map_err(|e| match e {
                ElabError::InvalidInput(_) => {
                    let report = check_proof(&d, 2);
                    Failure::Invalid(if porcelain { report.machine() } else { report.human() })
                }
                other => Failure::Operational(other.to_string()),
            })?;
            write_output(o.as_deref(), &print_derivation(&res.derivation))?;
            let s = res.stats;
            eprintln!(
                "{} steps -> {} steps ({} congruence, {} subst-multi unfolded)",
                s.steps_before, s.steps_after, s.congruence_unfolded, s.subst_multi_unfolded
            );
            Ok(())
        }
        Command::Coq { input, o, emit_prelude: prelude, name } => {
            let d = load(&input)?;
            let name = name.unwrap_or_else(|| {
                Path::new(&input)
                    .file_stem()
                    .and_then(|s| s.to_str())
                    .filter(|s| *s != "-")
                    .unwrap_or("proof")
                    .to_string()
            });
            let script = export_coq(&d, &name).map_err(|e| match e {
                CoqError::CheckFailed(_) | CoqError::UnsupportedStep { .. } => Failure::Invalid(e.to_string()),
                _ => Failure::Operational(e.to_string()),
            })?;
            std::fs::create_dir_all(&o).map_err(|e| Failure::Operational(format!("{}: {e}", o.display())))?;
            write_output(Some(&o.join(format!("{}.v", sctptp::coq::ident(&name)))), &script.to_string())?;
            if prelude {
                write_output(Some(&o.join("SCTPTP.v")), emit_prelude())?;
            }
            Ok(())
        }
        Command::Fmt { input, o } => {
            let d = load(&input)?;
            write_output(o.as_deref(), &print_derivation(&d))
        }
    }
}
