use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "twotree",
    version,
    about = "Spanning trees of 2-trees: generate, recognize, count, enumerate, verify"
)]
pub struct Cli {
    /// Print a machine-readable JSON report on stdout.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a 2-tree from a named family.
    Gen {
        #[arg(value_enum)]
        family: Family,
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = GraphFormat::Edges)]
        format: GraphFormat,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a 2-simplicial ordering, plus the path ordering when the graph has
    /// exactly two simplicial vertices.
    Order(InputArgs),
    /// Count spanning trees exactly.
    Count {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Stream every spanning tree, one per line.
    Enumerate {
        #[command(flatten)]
        input: InputArgs,
        /// Tree-stream destination; stdout when omitted (required with --json).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Stop after this many trees. Unlimited by default.
        #[arg(long)]
        limit: Option<u64>,
        #[arg(long, value_enum, default_value_t = Mode::Streaming)]
        mode: Mode,
    },
    /// Run an invariant suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Minimum and maximum spanning-tree counts over all small labeled 2-trees.
    Survey {
        #[arg(long, default_value_t = 4)]
        n_min: usize,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
    },
    /// Apply one count-lowering (min) or count-raising (max) surgery.
    Improve {
        #[arg(value_enum)]
        direction: Direction,
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = GraphFormat::Edges)]
        format: GraphFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A graph read from a file (edge list or construction, detected from the
/// header) or generated from a family.
#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    #[arg(long = "in", value_name = "FILE", conflicts_with = "family")]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, requires = "n")]
    pub family: Option<Family>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Book,
    PathSquare,
    Fan,
    Chain,
    Random,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Book => "book",
            Family::PathSquare => "path-square",
            Family::Fan => "fan",
            Family::Chain => "chain",
            Family::Random => "random",
        }
    }

    pub fn is_seeded(self) -> bool {
        matches!(self, Family::Chain | Family::Random)
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Edges,
    Construction,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Kirchhoff determinant cross-checked against the construction recurrence.
    Auto,
    Kirchhoff,
    Recurrence,
    ClosedForm,
    Brute,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Streaming,
    Faithful,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Bounds,
    Extremal,
    Identities,
    Oracle,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Min,
    Max,
}
