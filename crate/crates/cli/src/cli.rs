use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "rigcensus", version, about = "Rigidity, congruence and distance censuses for finite point sets")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Cap on worker threads; output does not depend on it.
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,

    /// Largest number of tuples a census may enumerate.
    #[arg(long, global = true, value_name = "N", default_value_t = rigcensus::census::DEFAULT_BUDGET)]
    pub budget: u64,

    #[arg(long, global = true, value_name = "N", default_value_t = 1)]
    pub seed: u64,

    /// Skip tuples with repeated points.
    #[arg(long, global = true)]
    pub no_degenerate: bool,

    #[arg(long, global = true, value_enum, default_value_t = GroupArg::O)]
    pub group: GroupArg,

    /// Dump every fiber (value and multiplicity).
    #[arg(long, global = true)]
    pub fibers: bool,

    /// Omit timestamps and runtimes so output is byte-reproducible.
    #[arg(long, global = true)]
    pub no_meta: bool,

    /// Congruence: also admit tuples that are non-singular after reordering.
    #[arg(long, global = true)]
    pub any_order: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GroupArg {
    #[value(name = "O")]
    O,
    #[value(name = "SO")]
    SO,
}

impl From<GroupArg> for rigcensus::Group {
    fn from(g: GroupArg) -> Self {
        match g {
            GroupArg::O => rigcensus::Group::O,
            GroupArg::SO => rigcensus::Group::SO,
        }
    }
}

/// Where a point set comes from.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct PointSource {
    /// Point file: one comma-separated point per line.
    #[arg(long, value_name = "FILE")]
    pub points: Option<PathBuf>,

    /// The lattice {0..S}^2.
    #[arg(long, value_name = "S")]
    pub lattice: Option<u32>,

    /// N seeded random points of [-bound, bound]^2.
    #[arg(long, value_name = "N")]
    pub random: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generic rigidity of a graph, and its rank data at an optional tuple.
    Rigidity {
        #[arg(long, value_name = "FILE")]
        graph: PathBuf,
        #[arg(long, short = 'd', default_value_t = 2)]
        dim: usize,
        /// Tuple file, one point per vertex in vertex order.
        #[arg(long, value_name = "FILE")]
        tuple: Option<PathBuf>,
    },
    /// Distinct graph-distance vectors over all tuples of the point set.
    Census {
        #[arg(long, value_name = "FILE")]
        graph: PathBuf,
        #[command(flatten)]
        source: PointSource,
        #[arg(long, default_value_t = 1000)]
        bound: u64,
    },
    /// Congruence classes of non-singular (k+1)-tuples.
    Congruence {
        #[command(flatten)]
        source: PointSource,
        #[arg(long, short = 'k')]
        k: usize,
        #[arg(long, default_value_t = 1000)]
        bound: u64,
    },
    /// Greedy extraction of maximally rich pins.
    Pins {
        #[command(flatten)]
        source: PointSource,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 1000)]
        bound: u64,
    },
    /// Distance energy and the Cauchy–Schwarz check.
    Energy {
        #[command(flatten)]
        source: PointSource,
        #[arg(long, default_value_t = 1000)]
        bound: u64,
    },
    /// Run a census over growing sets and fit the log-log exponent.
    Sweep {
        #[arg(long, value_enum)]
        experiment: ExperimentArg,
        /// Graph file for graph-distances.
        #[arg(long, value_name = "FILE")]
        graph: Option<PathBuf>,
        /// Comma-separated sizes: lattice sides or point counts.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, short = 'k', default_value_t = 2)]
        k: usize,
        #[arg(long, value_enum, default_value_t = SetsArg::Lattice)]
        sets: SetsArg,
        #[arg(long, default_value_t = 1000)]
        bound: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExperimentArg {
    PairDistances,
    GraphDistances,
    Congruence,
    Energy,
}

impl From<ExperimentArg> for rigcensus::sweep::Experiment {
    fn from(e: ExperimentArg) -> Self {
        use rigcensus::sweep::Experiment;
        match e {
            ExperimentArg::PairDistances => Experiment::PairDistances,
            ExperimentArg::GraphDistances => Experiment::GraphDistances,
            ExperimentArg::Congruence => Experiment::Congruence,
            ExperimentArg::Energy => Experiment::Energy,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SetsArg {
    Lattice,
    Random,
}
