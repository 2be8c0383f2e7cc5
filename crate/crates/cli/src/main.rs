mod commands;
mod job;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::job::{Command, JobSpec};

#[derive(Parser, Debug)]
#[command(name = "otkit", version, about = "Exact Oeljeklaus–Toma data: fields, unit lattices, LCK checks, converse")]
struct Cli {
    /// Starting precision in bits.
    #[arg(long, global = true, default_value_t = 64)]
    precision: u32,
    /// Precision cap in bits; defaults to $OTKIT_PRECISION_CAP or 4096.
    #[arg(long, global = true)]
    precision_cap: Option<u32>,
    /// Write the JSON report here and print a one-line summary.
    #[arg(long, short, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OnOff {
    On,
    Off,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Signature, root enclosures and discriminant of a field spec.
    FieldInspect { input: PathBuf },
    /// Unit, total-positivity and norm checks on a unit-group spec.
    UnitsVerify { input: PathBuf },
    /// Admissibility certificate of a unit group.
    Admissible { input: PathBuf },
    /// Matrix C, LCK flag and forward lattice of a unit group.
    BuildOt {
        input: PathBuf,
        /// Branch offsets as JSON, t rows of s integers.
        #[arg(long)]
        branch: Option<String>,
    },
    /// Integrability, LCK and Vaisman checks on a Lie-algebra or OT-like spec.
    VerifyLck { input: PathBuf },
    /// Normalization of a meta-abelian LCK algebra.
    Normalize {
        input: PathBuf,
        /// JSON file with the ideal as a list of rational vectors.
        #[arg(long)]
        ideal: Option<PathBuf>,
    },
    /// Field, units and C recovered from a commuting matrix family.
    Converse {
        input: PathBuf,
        /// Exponent bound for the simplicity-witness search.
        #[arg(long, default_value_t = 5)]
        bound: i64,
    },
    /// LCK and pluriclosed conditions, and the rank-bound probe.
    Metrics {
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        bound: i64,
        #[arg(long, value_enum, default_value = "a1")]
        branch: job::Branch,
        #[arg(long, value_enum, default_value = "on")]
        pairing_search: OnOff,
    },
    /// Eigen-data of a hyperbolic SL(2, Z) matrix and its Sol³ lattice.
    Sol3Demo {
        /// JSON file holding a 2×2 integer matrix; defaults to [[2,1],[1,1]].
        input: Option<PathBuf>,
    },
    /// Run a job file.
    Run { job: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cap = cli.precision_cap.or_else(job::env_cap).unwrap_or(exactnum::DEFAULT_PRECISION_CAP);
    let job = match cli.command {
        Sub::Run { job } => match JobSpec::load(&job) {
            Ok(j) => j,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
        },
        sub => {
            let (command, input, bound, branch, pairing_search, ideal, offsets) = match sub {
                Sub::FieldInspect { input } => (Command::FieldInspect, Some(input), None, None, None, None, None),
                Sub::UnitsVerify { input } => (Command::UnitsVerify, Some(input), None, None, None, None, None),
                Sub::Admissible { input } => (Command::Admissible, Some(input), None, None, None, None, None),
                Sub::BuildOt { input, branch } => (Command::BuildOt, Some(input), None, None, None, None, branch),
                Sub::VerifyLck { input } => (Command::VerifyLck, Some(input), None, None, None, None, None),
                Sub::Normalize { input, ideal } => (Command::Normalize, Some(input), None, None, None, ideal, None),
                Sub::Converse { input, bound } => (Command::Converse, Some(input), Some(bound), None, None, None, None),
                Sub::Metrics { input, bound, branch, pairing_search } => (
                    Command::Metrics,
                    Some(input),
                    Some(bound),
                    Some(branch),
                    Some(matches!(pairing_search, OnOff::On)),
                    None,
                    None,
                ),
                Sub::Sol3Demo { input } => (Command::Sol3Demo, input, None, None, None, None, None),
                Sub::Run { .. } => unreachable!(),
            };
            let branch_offsets = match offsets.map(|s| serde_json::from_str(&s)).transpose() {
                Ok(o) => o,
                Err(e) => {
                    eprintln!("error: --branch: {e}");
                    return ExitCode::from(1);
                }
            };
            JobSpec {
                schema: job::SCHEMA.to_string(),
                command,
                input,
                precision: Some(cli.precision),
                precision_cap: cli.precision_cap,
                bound,
                branch,
                pairing_search,
                ideal,
                branch_offsets,
                output: None,
            }
        }
    };
    let out = cli.out.clone().or_else(|| job.output.clone());
    let outcome = commands::run(&job, cap);
    let code = outcome.exit_code();
    let json = outcome.to_json();
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &json) {
                eprintln!("error: writing {}: {e}", path.display());
                return ExitCode::from(1);
            }
            println!("{}", outcome.summary());
        }
        None => {
            eprintln!("{}", outcome.summary());
            println!("{json}");
        }
    }
    ExitCode::from(code)
}
