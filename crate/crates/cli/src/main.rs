mod commands;
mod source;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use monostab::MsfError;
use serde::Serialize;

use crate::source::SourceArgs;

#[derive(Parser, Debug)]
#[command(
    name = "monostab",
    version,
    about = "Analyze and simulate monomial stabilizer states"
)]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct RunConfig {
    /// Largest orbit explored before an analysis is declared inconclusive.
    #[arg(long, global = true, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub orbit_cap: u64,
    /// Largest dimension the dense oracle will materialize.
    #[arg(long, global = true, default_value_t = 4096, value_parser = clap::value_parser!(u64).range(1..))]
    pub dense_cap: u64,
    /// Largest group the oracle will enumerate.
    #[arg(long, global = true, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub group_cap: u64,
    /// Seed for every random choice; echoed in all output.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    #[serde(skip)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Indented JSON.
    Human,
    /// Compact JSON with sorted keys; byte-stable for identical input.
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit a built-in family as an operator-spec file plus its expected analysis.
    Family {
        /// Family name.
        name: String,
        #[command(flatten)]
        params: source::FamilyParams,
    },
    /// Partition into orbits, test each for support and report the orbit basis.
    Analyze {
        #[command(flatten)]
        source: SourceArgs,
        /// Comma-separated seed vectors; the whole basis when omitted.
        #[arg(long)]
        seeds: Option<String>,
        /// Include every amplitude of every basis state.
        #[arg(long)]
        amplitudes: bool,
    },
    /// List the amplitudes of the orbit state through a representative.
    State {
        #[command(flatten)]
        source: SourceArgs,
        /// Orbit representative; defaults to the family's expected one.
        #[arg(long)]
        rep: Option<String>,
    },
    /// Draw basis vectors from an orbit state's Born distribution.
    Sample {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        rep: Option<String>,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, value_enum, default_value_t = commands::SampleMethod::Exact)]
        method: commands::SampleMethod,
        /// Walk length for the random-word sampler.
        #[arg(long, default_value_t = 64)]
        word_len: usize,
    },
    /// Estimate a Pauli expectation value by sampling.
    Expect {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        rep: Option<String>,
        /// Pauli operator: a full string such as `-XZI` or sparse factors such as `Z1` or `X1Z3`.
        #[arg(long)]
        pauli: String,
        #[arg(long, default_value_t = 0.05)]
        epsilon: f64,
        #[arg(long, default_value_t = 1e-3)]
        delta: f64,
        /// Also compute the exact value by summing over the orbit.
        #[arg(long)]
        exact: bool,
    },
    /// Check the orbit basis against a dense eigenspace computation.
    Oracle {
        #[command(flatten)]
        source: SourceArgs,
        /// Also enumerate the group and check the averaged projector.
        #[arg(long)]
        projector: bool,
    },
    /// Satisfiability reductions.
    Cnf {
        #[command(subcommand)]
        action: CnfAction,
    },
}

#[derive(Subcommand, Debug)]
enum CnfAction {
    /// Emit the clause generators of a DIMACS file as an operator-spec file.
    Reduce { file: PathBuf },
    /// Count and list satisfying assignments by exhaustive support tests.
    Solve {
        file: PathBuf,
        /// Largest number of assignments to enumerate.
        #[arg(long, default_value_t = 1 << 20)]
        cap: u64,
        /// Require exactly one satisfying assignment.
        #[arg(long)]
        unique: bool,
    },
}

/// A failure tagged with the stage that raised it.
pub struct Failure {
    pub stage: &'static str,
    pub error: MsfError,
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self.error {
            ref e if e.is_refusal() => 1,
            MsfError::NotSupported(_) => 1,
            _ => 2,
        }
    }
}

pub trait Stage<T> {
    fn stage(self, stage: &'static str) -> Result<T, Failure>;
}

impl<T> Stage<T> for monostab::Result<T> {
    fn stage(self, stage: &'static str) -> Result<T, Failure> {
        self.map_err(|error| Failure { stage, error })
    }
}

/// Report envelope shared by every subcommand.
#[derive(Serialize)]
struct Envelope<'a> {
    command: &'static str,
    config: &'a RunConfig,
    result: serde_json::Value,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = cli.config.clone();
    let (name, outcome) = commands::run(cli.command, &config);
    match outcome {
        Ok(outcome) => {
            let env = Envelope {
                command: name,
                config: &config,
                result: outcome.result,
            };
            let text = match config.format {
                Format::Json => monostab::op::format::canonical_json(&env),
                Format::Human => monostab::op::format::canonical_json_pretty(&env),
            };
            match text {
                Ok(t) => println!("{t}"),
                Err(e) => {
                    eprintln!("error [output]: {e}");
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(outcome.code)
        }
        Err(f) => {
            eprintln!("error [{}] (seed {}): {}", f.stage, config.seed, f.error);
            ExitCode::from(f.exit_code())
        }
    }
}
