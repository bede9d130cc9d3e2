use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Property checks, extensions and counterexample searches for ordered
/// vector spaces with an order unit.
#[derive(Debug, Parser)]
#[command(name = "ordunit", version)]
pub struct Cli {
    /// Space descriptor (JSON); defaults to the ℝ² orthant with unit (1, 1).
    #[arg(long, global = true, value_name = "FILE")]
    pub space: Option<PathBuf>,

    /// Functional descriptor (JSON).
    #[arg(long, global = true, value_name = "FILE")]
    pub functional: Option<PathBuf>,

    /// Operator descriptor (JSON).
    #[arg(long, global = true, value_name = "FILE")]
    pub operator: Option<PathBuf>,

    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, global = true, default_value_t = ordunit::sampling::DEFAULT_SAMPLES)]
    pub samples: usize,

    /// Tolerance override; each command has its own default.
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the property checkers on a functional or an operator.
    Check {
        /// Comparable pairs `[[x, y], ...]` checked before the sampled ones.
        #[arg(long, value_name = "FILE")]
        pairs: Option<PathBuf>,
        /// Also require f(unit) = 1.
        #[arg(long)]
        normed: bool,
    },
    /// Order norm of one or more points.
    Norm {
        /// Comma-separated coordinates, e.g. `3,-4`.
        #[arg(long = "point", required = true, allow_hyphen_values = true)]
        points: Vec<String>,
    },
    /// Extend a partial functional point by point.
    Extend {
        /// Partial functional (JSON); defaults to the unit line only.
        #[arg(long, value_name = "FILE")]
        partial: Option<PathBuf>,
        /// Unit value used when no partial functional is given.
        #[arg(long, default_value_t = 1.0)]
        unit_value: f64,
        #[arg(long = "target", required = true, allow_hyphen_values = true)]
        targets: Vec<String>,
        /// lower, upper, midpoint or given:P
        #[arg(long, default_value = "midpoint")]
        rule: String,
    },
    /// Search for preimages around a point to test relative openness.
    Openness {
        /// Base point x0 (defaults to the origin).
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
        #[arg(long, default_value_t = 0.25)]
        epsilon: f64,
        #[arg(long, default_value_t = 0.25)]
        delta: f64,
        /// Objective evaluations per target.
        #[arg(long, default_value_t = 1000)]
        budget: usize,
        #[arg(long, default_value_t = 64)]
        targets: usize,
    },
    /// Extract a convergent subsequence from a capacity sequence.
    Compact {
        /// `{"n": k, "sequence": [capacity, ...]}`
        #[arg(long, value_name = "FILE")]
        capacities: PathBuf,
        #[arg(long, default_value_t = 2)]
        min_length: usize,
        #[arg(long, default_value_t = ordunit::dual::DEFAULT_TRUNCATION)]
        truncation: usize,
    },
    /// Reproduce the built-in example gallery.
    Gallery,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Check { .. } => "check",
            Self::Norm { .. } => "norm",
            Self::Extend { .. } => "extend",
            Self::Openness { .. } => "openness",
            Self::Compact { .. } => "compact",
            Self::Gallery => "gallery",
        }
    }
}
