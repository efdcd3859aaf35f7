use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug, Clone)]
#[command(name = "monodromy", version, about = "Exact verification suites for the monodromy algebra of closed-string observables")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Space-time dimension D.
    #[arg(long, global = true)]
    pub dim: Option<usize>,
    /// Metric signature such as "+---" (defaults to Lorentzian of the given dimension).
    #[arg(long, global = true)]
    pub metric: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads; 0 uses all cores.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    /// Directory for cached basis tables.
    #[arg(long, global = true, env = "MONODROMY_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Maximum number of monomials per weight sector.
    #[arg(long, global = true, default_value_t = monodromy_core::sector::DEFAULT_BUDGET)]
    pub budget: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Quotient dimensions per rank with the necklace cross-check.
    Basis {
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
    },
    /// Run one verification check.
    Verify {
        #[arg(value_enum)]
        check: Check,
        /// Rank, order or weight cutoff; each check has its own default.
        #[arg(long)]
        cutoff: Option<usize>,
        /// Random pairs for pi-intertwine.
        #[arg(long, default_value_t = 120)]
        pairs: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Kernel of the classical or quantum derivation on one weight sector.
    Kernel {
        #[arg(long)]
        weight: usize,
        #[arg(long, conflicts_with = "quantum")]
        classical: bool,
        #[arg(long)]
        quantum: bool,
        /// Include the kernel basis elements in the report.
        #[arg(long)]
        show_basis: bool,
    },
    /// Classical-vs-quantum graded kernel comparison for weights 1..=max-weight.
    Correspond {
        #[arg(long, default_value_t = 4)]
        max_weight: usize,
    },
    /// Generation of the e-free kernel by brackets of low-rank seeds.
    Quadgen {
        #[arg(long, default_value_t = 6)]
        max_rank: usize,
        #[arg(long)]
        no_exceptionals: bool,
    },
    /// Classical kernel dimensions by weight and degree (exploratory).
    Counts {
        #[arg(long, default_value_t = 6)]
        max_weight: usize,
        #[arg(long, default_value_t = 3)]
        max_degree: i32,
    },
    /// The full default suite.
    Suite {
        /// Highest weight of the correspondence sweep.
        #[arg(long, default_value_t = 5)]
        max_weight: usize,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    Jacobi,
    DeltaWelldef,
    DeltaLeibniz,
    Z2,
    PiIntertwine,
    CliffordGrades,
    PrBrackets,
    BCommute,
    DeltaLogphi,
}

impl Check {
    pub fn default_cutoff(self) -> usize {
        match self {
            Check::Jacobi => 7,
            Check::DeltaWelldef => 6,
            Check::DeltaLeibniz => 8,
            Check::Z2 => 6,
            Check::PiIntertwine => 6,
            Check::CliffordGrades => 8,
            Check::PrBrackets => 8,
            Check::BCommute => 10,
            Check::DeltaLogphi => 6,
        }
    }

    pub fn minimum_cutoff(self) -> usize {
        match self {
            Check::Jacobi => 3,
            Check::DeltaWelldef | Check::DeltaLeibniz | Check::PiIntertwine => 2,
            Check::Z2 => 3,
            Check::CliffordGrades | Check::DeltaLogphi => 1,
            Check::PrBrackets => 2,
            Check::BCommute => 4,
        }
    }
}
