//! Command-line arguments.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "rml",
    version,
    about = "Seeded experiments on Gabidulin and higher-order MRD codes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Monte-Carlo: random Gabidulin codes attaining every generic kernel pattern of order ≤ ℓ.
    GkpMc(CommonArgs),
    /// Compare GKP(ℓ+1), MRD(ℓ+1) and dual LD-MRD(≤ℓ) on random codes.
    Equivalence(CommonArgs),
    /// LD-MRD(≤ℓ) of random Gabidulin codes, decided through the dual.
    LdMrd(LdMrdArgs),
    /// Scan M_S determinants against the subspace condition.
    MsScan(MsScanArgs),
    /// Dual basis and dual code of a Gabidulin code.
    Dual(CommonArgs),
    /// Actual versus generic intersection dimensions of pushed-forward subspaces.
    Intersection(CommonArgs),
    /// Encode a message with a code from a file.
    Encode(EncodeArgs),
    /// Minimum rank distance of a code from a file.
    MinDistance(CommonArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Sampled,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct CommonArgs {
    /// Characteristic.
    #[arg(long, default_value_t = 2)]
    pub p: u32,
    /// Base field degree over F_p (q = p^e).
    #[arg(long, default_value_t = 1)]
    pub e: usize,
    /// Extension degree over F_q.
    #[arg(long, default_value_t = 28)]
    pub m: usize,
    /// Code length.
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Code dimension.
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Order ℓ.
    #[arg(long, default_value_t = 2)]
    pub ell: usize,
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
    pub mode: Mode,
    /// Tuples drawn per check in sampled mode.
    #[arg(long, default_value_t = 1000)]
    pub samples: u64,
    /// Code file (JSON); overrides the field and code parameters.
    #[arg(long)]
    pub code: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct LdMrdArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: CommonArgs,
    /// Also run the brute-force check and compare (small fields only).
    #[arg(long)]
    pub brute: bool,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct MsScanArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: CommonArgs,
    /// Largest number of parts in a scanned spec.
    #[arg(long, default_value_t = 3)]
    pub max_parts: usize,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct EncodeArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: CommonArgs,
    /// Message as a JSON array of elements (each an array of residues).
    #[arg(long)]
    pub message: String,
}
