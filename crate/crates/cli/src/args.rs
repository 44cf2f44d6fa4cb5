use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "polarwd",
    version,
    about = "Exact weight distributions of pre-transformed polar codes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the exact weight distribution.
    Wd(WdArgs),
    /// Report expanded information set sizes.
    Expand(ExpandArgs),
    /// Brute-force weight distribution by full enumeration.
    Oracle(OracleArgs),
    /// Check the kernel identities.
    Selftest(SelftestArgs),
    /// Regenerate the expansion-size tables.
    Bench {
        #[command(subcommand)]
        table: BenchTable,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Identity,
    Pac,
    Pc,
    Crc,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct CodeArgs {
    /// log2 of the block length.
    #[arg(long)]
    pub n: u32,
    /// Number of non-frozen positions (CRC bits included).
    #[arg(long)]
    pub k: Option<usize>,
    /// Reliability sequence file (0-based indices, least reliable first).
    #[arg(long)]
    pub seq: Option<PathBuf>,
    /// Explicit frozen positions, 1-based, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub frozen: Option<Vec<usize>>,
    #[arg(long, value_enum, default_value_t = Kind::Identity)]
    pub pretransform: Kind,
    /// PAC memory as a bit string, first coefficient first.
    #[arg(long)]
    pub memory: Option<String>,
    /// Parity-check back-offsets.
    #[arg(long, value_delimiter = ',')]
    pub taps: Option<Vec<usize>>,
    /// Parity positions; all frozen positions by default.
    #[arg(long, value_delimiter = ',')]
    pub parity_positions: Option<Vec<usize>>,
    /// CRC polynomial bit string, highest degree first.
    #[arg(long)]
    pub crc_poly: Option<String>,
    #[arg(long, default_value_t = 0.5)]
    pub density: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct WdArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[command(flatten)]
    pub out: OutputArgs,
    /// Replace T by the equivalent transform with the fewest expanded bits.
    #[arg(long)]
    pub optimize: bool,
    /// Worker threads; 0 picks one per core.
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    #[arg(long)]
    pub no_cache: bool,
    #[arg(long, default_value_t = 30)]
    pub lambda_limit: usize,
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[command(flatten)]
    pub out: OutputArgs,
    #[arg(long)]
    pub optimize: bool,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    #[command(flatten)]
    pub out: OutputArgs,
    #[arg(long, default_value_t = 24)]
    pub oracle_max_k: usize,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(0..=10))]
    pub max_n: u32,
    /// Random index pairs per level above 6.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Debug, Subcommand)]
pub enum BenchTable {
    /// PC-polar codes, N = 128, taps 3,5,6.
    Table1 {
        #[arg(long)]
        seq: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        parity_positions: Option<Vec<usize>>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Reduction ratios over random pre-transformations.
    Table2 {
        #[arg(long)]
        seq: Option<PathBuf>,
        #[arg(long, default_value_t = 7)]
        n: u32,
        #[arg(long, value_delimiter = ',')]
        ks: Option<Vec<usize>>,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// PAC codes, N = 128, memory 10101011.
    Table3 {
        #[arg(long)]
        seq: Option<PathBuf>,
        #[command(flatten)]
        out: OutputArgs,
    },
}
