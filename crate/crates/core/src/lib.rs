//! Pseudoultrametrics generated by finite vertex-labeled graphs.
//!
//! A connected graph `G` with a non-negative labeling `l` generates
//! `d_l(x, y) = min over x–y paths P of max { l(v) : v in P }`. This crate
//! computes that space exactly (labels are big rationals), classifies it
//! (ultrametric or only pseudoultrametric, GH-space or not), constructs
//! labelings that generate GH-spaces, decides isometry of finite ultrametric
//! spaces through canonical dendrograms, and searches labeled trees for
//! GH-spaces that share a distance set without being isometric.

pub mod dendrogram;
pub mod error;
pub mod explorer;
pub mod gh;
pub mod graph;
pub mod metric;
pub mod rational;
pub mod union_find;

pub use dendrogram::{are_isometric, canonical_form, dendrogram, Dendrogram};
pub use error::{Error, ParseError, ParseErrorKind, Result};

pub use explorer::{search_conjecture, ConjectureReport, LabelingMode, SearchConfig};
pub use gh::{
    check_edge_bound, check_gomory_hu, distance_set, gh_labeling, gh_report, is_gh, is_gh_complete,
    level_labeling, tree_gh_report, DistanceSet, EdgeBound, GhReport, TreeEquivalences,
};
pub use graph::{Cycle, Graph, LabeledGraph, Path, WeightedGraph};
pub use metric::{
    classify_metric, distance_matrix, distance_oracle, rho_w, DistanceMatrix, MetricClass,
};
pub use rational::Rational;
