use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "geodetic", version, about = "Geodetic graphs, their circuits, and the rewriting systems of geodetic groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Write the report (or, for commands that build a graph, ball or
    /// rewriting system, that artifact) to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Worker threads for parallel steps; results do not depend on it.
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a graph family: complete N, cycle N, petersen, tree B D,
    /// psi M, hypercube D.
    Gen {
        family: String,
        params: Vec<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Decide whether every pair of vertices has a unique geodesic.
    CheckGeodetic {
        graph: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Enumerate isometrically embedded circuits. With --max-len the
    /// exhaustive search is used, which also accepts non-geodetic graphs.
    Iecs {
        graph: PathBuf,
        #[arg(long)]
        max_len: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Tree distortion certificate for one root, or every root.
    TreeQi {
        graph: PathBuf,
        #[arg(long)]
        root: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Lift a geodesic, given as its vertex sequence, into the spanning tree.
    Lift {
        graph: PathBuf,
        #[arg(long)]
        root: String,
        #[arg(required = true, num_args = 1..)]
        path: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Busemann trace of a ray prefix at a vertex.
    Busemann {
        graph: PathBuf,
        ray: PathBuf,
        x: String,
        /// Truncate the ray to this many steps.
        #[arg(long)]
        horizon: Option<usize>,
        #[arg(long, default_value_t = geodetic::boundary::DEFAULT_WINDOW)]
        window: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Rebase a ray prefix at --root.
    Rebase {
        graph: PathBuf,
        ray: PathBuf,
        #[arg(long)]
        root: String,
        #[arg(long)]
        horizon: Option<usize>,
        #[arg(long, default_value_t = geodetic::boundary::DEFAULT_WINDOW)]
        window: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Glue a path of --horizon edges at each attach vertex.
    RayExtend {
        graph: PathBuf,
        #[arg(required = true, num_args = 1..)]
        attach: Vec<String>,
        #[arg(long)]
        horizon: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Search for the deepest onion prefix.
    Onion {
        graph: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_depth: usize,
        /// Restrict the central edge to these pairs; repeatable.
        #[arg(long, num_args = 2, value_names = ["U", "V"], action = clap::ArgAction::Append)]
        central: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Labelled ball of the Cayley graph of a free product.
    CayleyBall {
        spec: PathBuf,
        #[arg(long)]
        radius: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Extract the rewriting system read off the IECs through the identity.
    RwsExtract {
        spec: PathBuf,
        #[arg(long)]
        radius: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Critical-pair confluence check.
    RwsCheck {
        rws: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Leftmost-first normal form of a word (tokens separated by spaces).
    Normalize {
        rws: PathBuf,
        word: String,
        #[command(flatten)]
        common: Common,
    },
    /// Decide equality of two words with a confluent system.
    Wp {
        rws: PathBuf,
        left: String,
        right: String,
        #[command(flatten)]
        common: Common,
    },
    /// Ball, geodeticity, IECs, extraction, confluence and cross-validation.
    Pipeline {
        spec: PathBuf,
        #[arg(long)]
        radius: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Longest sampled word; defaults to 12.
        #[arg(long)]
        max_len: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Gen { common, .. }
            | Command::CheckGeodetic { common, .. }
            | Command::Iecs { common, .. }
            | Command::TreeQi { common, .. }
            | Command::Lift { common, .. }
            | Command::Busemann { common, .. }
            | Command::Rebase { common, .. }
            | Command::RayExtend { common, .. }
            | Command::Onion { common, .. }
            | Command::CayleyBall { common, .. }
            | Command::RwsExtract { common, .. }
            | Command::RwsCheck { common, .. }
            | Command::Normalize { common, .. }
            | Command::Wp { common, .. }
            | Command::Pipeline { common, .. } => common,
        }
    }
}
