//! Argument parsing and the five subcommands.

mod commands;
mod reproduce;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use seqlab::decomp::GapMode;
use seqlab::output::Format;
use seqlab::Error;

pub use commands::run;

#[derive(Debug, Parser)]
#[command(name = "seqlab", version, about = "Sequence-space norms, gap tables and witness constructions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Directory for tables and the run record; tables go to stdout without it.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, default_value = "csv", value_parser = parse_format)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a norm.
    Norm(Target),
    /// Gap table `‖x‖ - sup ‖P x‖` against a reference sequence.
    Gap(GapArgs),
    /// Check the decomposition inequality on every subset of the support.
    Star(StarArgs),
    /// Re-run one of the witness constructions.
    Reproduce(ReproduceArgs),
    /// `λ_n = ‖e_1 + .. + e_n‖`.
    Lambda(LambdaArgs),
}

/// Engine and vector, given positionally or by flag.
#[derive(Debug, Args)]
pub struct Target {
    #[arg(value_name = "ENGINE")]
    pub engine_pos: Option<String>,
    #[arg(value_name = "VECTOR")]
    pub vector_pos: Option<PathBuf>,
    #[arg(long = "engine", conflicts_with = "engine_pos")]
    pub engine: Option<String>,
    #[arg(long = "vector", conflicts_with = "vector_pos")]
    pub vector: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GapArgs {
    #[command(flatten)]
    pub target: Target,
    /// `harmonic`, `geometric8`, `dyadic`, or a file with one value per line.
    #[arg(long, default_value = "harmonic")]
    pub a: String,
    /// Window length; defaults to the support size.
    #[arg(long)]
    pub n_max: Option<usize>,
    /// `subset`, `prefix` or `summing-prefix`.
    #[arg(long, default_value = "subset", value_parser = parse_mode)]
    pub mode: GapMode,
}

#[derive(Debug, Args)]
pub struct StarArgs {
    #[command(flatten)]
    pub target: Target,
    #[arg(long, value_enum, default_value = "auto")]
    pub cert: CertSource,
    /// Norming functional for the summable certificate, in vector format.
    #[arg(long)]
    pub functional: Option<PathBuf>,
    /// Multiplies `c(x)` before checking.
    #[arg(long, default_value_t = 1.0)]
    pub c_scale: f64,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    #[arg(value_parser = reproduce::EXAMPLES)]
    pub example: String,
    #[arg(long)]
    pub a: Option<String>,
    /// Number of blocks.
    #[arg(long = "K")]
    pub k: Option<usize>,
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long)]
    pub m_max: Option<usize>,
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
    /// Window the block positions are chosen from.
    #[arg(long)]
    pub window: Option<usize>,
    /// Number of random instances.
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long)]
    pub max_support: Option<usize>,
    /// Exponent sequence id (ex2.3).
    #[arg(long)]
    pub p: Option<String>,
    /// Orlicz function id (prop3.6).
    #[arg(long)]
    pub orlicz: Option<String>,
}

#[derive(Debug, Args)]
pub struct LambdaArgs {
    #[arg(value_name = "ENGINE")]
    pub engine_pos: Option<String>,
    #[arg(long = "engine", conflicts_with = "engine_pos")]
    pub engine: Option<String>,
    #[arg(long, default_value_t = 200)]
    pub n_max: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CertSource {
    /// Summable for `c0` (attaining coordinate functional) or with
    /// `--functional`; Orlicz for Luxemburg engines.
    Auto,
    Summable,
    Orlicz,
}

fn parse_mode(s: &str) -> Result<GapMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

/// 0 pass, 1 failed inequality, 2 bad engine or flags, 3 unreadable input,
/// 4 size limit, 5 precondition.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::UnknownEngine(_)
        | Error::FlagsUnmet { .. }
        | Error::InvalidOrlicz(_)
        | Error::InvalidExponents(_)
        | Error::InvalidBlocks(_) => 2,
        Error::Parse { .. }
        | Error::Io(_)
        | Error::InvalidIndex(_)
        | Error::DuplicateIndex(_)
        | Error::NonFinite { .. } => 3,
        Error::SupportTooLarge { .. } => 4,
        _ => 5,
    }
}
