//! `ultragraph`: command-line checks for spaces generated by labeled graphs.
//!
//! Exit codes: 0 affirmative, 1 valid but negative, 2 input error,
//! 3 internal self-check failure.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "ultragraph",
    version,
    about = "Pseudoultrametrics generated by vertex-labeled graphs"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the distance matrix of a labeled graph.
    Dist {
        /// Graph file, or `-` for stdin.
        graph: PathBuf,
        /// Also evaluate every distance by path enumeration and compare.
        #[arg(long)]
        oracle: bool,
        /// Vertex cap for path enumeration.
        #[arg(long, default_value_t = ultragraph::metric::DEFAULT_ORACLE_CAP)]
        cap_paths: usize,
    },
    /// Classify the generated space and run the GH checks.
    Check { graph: PathBuf },
    /// Emit the graph with a labeling that generates a GH-space.
    Label {
        graph: PathBuf,
        /// Root of the breadth-first spanning tree (default: first vertex).
        #[arg(long)]
        root: Option<String>,
    },
    /// Collapse zero-distance classes to obtain an ultrametric.
    Quotient { graph: PathBuf },
    /// Decide whether an edge weighting extends to a pseudoultrametric.
    Realizable {
        /// Weighted graph file (`e <id> <id> <weight>`).
        graph: PathBuf,
        /// Also check every cycle and compare.
        #[arg(long)]
        oracle: bool,
        /// Vertex cap for cycle enumeration.
        #[arg(long, default_value_t = ultragraph::graph::DEFAULT_CYCLE_CAP)]
        cap_cycles: usize,
    },
    /// Print the canonical dendrogram string of each space.
    Canon {
        #[arg(required = true)]
        graphs: Vec<PathBuf>,
    },
    /// Decide whether two generated spaces are isometric.
    Isometric { first: PathBuf, second: PathBuf },
    /// Search labeled trees for GH-spaces with equal distance sets that are not isometric.
    Explore {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        /// Comma-separated positive rationals.
        #[arg(long, default_value = "1,2,3,4")]
        labels: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Draw random labelings instead of enumerating all of them.
        #[arg(long)]
        sampled: bool,
        /// Labelings per tree in sampled mode.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Skip labelings equivalent under tree automorphisms.
        #[arg(long)]
        symmetry_reduction: bool,
        /// Write each counterexample pair as graph files into this directory.
        #[arg(long)]
        emit_dir: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(outcome) => ExitCode::from(outcome as u8),
        Err(failure) => {
            eprintln!("ultragraph: {}", failure.message);
            ExitCode::from(failure.code as u8)
        }
    }
}
