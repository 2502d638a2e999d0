//! Distance sets, GH-spaces and labelings that generate them.
//!
//! A finite ultrametric space `X` always has `|D(X)| <= |X|`; it is a
//! GH-space when equality holds. For a connected labeled graph the distance
//! set also satisfies `|D| <= |E| + 1`, with equality possible only on trees.

use std::collections::HashSet;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, LabeledGraph};
use crate::metric::{
    classify_metric, degenerate_edge, distance_matrix, edge_weights, require_ultrametric,
    zero_quotient, DistanceMatrix, MetricClass,
};
use crate::rational::{self, from_int, Rational};

/// The values a (pseudo)ultrametric takes, sorted ascending; always starts at 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DistanceSet(#[serde(with = "rational::vec_as_strings")] Vec<Rational>);

impl DistanceSet {
    pub fn from_values<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Self {
        let mut all: Vec<Rational> = values.into_iter().cloned().collect();
        all.push(Rational::zero());
        all.sort();
        all.dedup();
        Self(all)
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, value: &Rational) -> bool {
        self.0.binary_search(value).is_ok()
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(rational::render).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

pub fn distance_set(dm: &DistanceMatrix) -> DistanceSet {
    DistanceSet::from_values(dm.off_diagonal())
}

/// `|D(X)| <= |X|` on an ultrametric space. Always true; a `false` means
/// the distance computation is broken.
pub fn check_gomory_hu(dm: &DistanceMatrix) -> Result<bool> {
    require_ultrametric(dm)?;
    Ok(distance_set(dm).len() <= dm.len())
}

/// `|D(X)| = |X|` on an ultrametric space.
pub fn is_gh(dm: &DistanceMatrix) -> Result<bool> {
    require_ultrametric(dm)?;
    Ok(distance_set(dm).len() == dm.len())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EdgeBound {
    pub distance_count: usize,
    pub edge_count: usize,
    /// `|D| <= |E| + 1`
    pub holds: bool,
    /// `|D| = |E| + 1`, attainable only on trees
    pub equality: bool,
}

pub fn check_edge_bound(g: &LabeledGraph, dm: &DistanceMatrix) -> Result<EdgeBound> {
    g.graph().require_connected()?;
    if dm.vertices() != g.graph().vertices() {
        return Err(Error::InvalidMatrix(
            "matrix does not belong to this graph".into(),
        ));
    }
    let distance_count = distance_set(dm).len();
    let edge_count = g.graph().edge_count();
    Ok(EdgeBound {
        distance_count,
        edge_count,
        holds: distance_count <= edge_count + 1,
        equality: distance_count == edge_count + 1,
    })
}

/// The four conditions on a non-degenerate labeled tree, each evaluated on
/// its own: GH membership, injective edge weights, `|D| = |E| + 1`, and
/// `2|D| = 2 + sum of degrees`. They coincide; the report does not assume it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeEquivalences {
    pub gh: bool,
    pub injective_weights: bool,
    pub edge_count_equality: bool,
    pub degree_sum_equality: bool,
}

impl TreeEquivalences {
    pub fn as_array(&self) -> [bool; 4] {
        [
            self.gh,
            self.injective_weights,
            self.edge_count_equality,
            self.degree_sum_equality,
        ]
    }

    pub fn all_agree(&self) -> bool {
        let a = self.as_array();
        a.iter().all(|&b| b == a[0])
    }
}

pub fn tree_gh_report(t: &LabeledGraph) -> Result<TreeEquivalences> {
    let graph = t.graph();
    graph.require_tree()?;
    if graph.vertex_count() < 2 {
        return Err(Error::InvalidGraph(
            "the tree conditions need at least two vertices".into(),
        ));
    }
    if let Some((a, b)) = degenerate_edge(t) {
        return Err(Error::DegenerateLabeling(
            graph.name(a).into(),
            graph.name(b).into(),
        ));
    }
    let dm = distance_matrix(t)?;
    let d = distance_set(&dm).len();
    let weights = edge_weights(t);
    let distinct: HashSet<&Rational> = weights.weights().iter().collect();
    let degree_sum: usize = (0..graph.vertex_count()).map(|v| graph.degree(v)).sum();
    Ok(TreeEquivalences {
        gh: is_gh(&dm)?,
        injective_weights: distinct.len() == weights.weights().len(),
        edge_count_equality: d == graph.edge_count() + 1,
        degree_sum_equality: 2 * d == 2 + degree_sum,
    })
}

/// GH membership of the complete graph labeled by `labels`, decided by
/// building the space. Labels need at most one zero.
///
/// Note: the GH spaces here are exactly those whose sorted labels
/// `a1 <= a2 <= ... <= an` have `a2 < a3 < ... < an`. Counting distinct
/// labels is not enough: `{1, 2, 2}` has `n - 1` distinct values and
/// `D = {0, 2}`.
pub fn is_gh_complete(labels: &[Rational]) -> Result<bool> {
    if labels.is_empty() {
        return Err(Error::InvalidGraph(
            "a graph needs at least one vertex".into(),
        ));
    }
    if labels.iter().filter(|l| l.is_zero()).count() >= 2 {
        return Err(Error::DegenerateLabeling(
            "two zero labels".into(),
            "complete graph".into(),
        ));
    }
    let n = labels.len();
    let edges = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let g = LabeledGraph::new(Graph::numbered(n, edges)?, labels.to_vec())?;
    is_gh(&distance_matrix(&g)?)
}

/// Labels `1, 2, 3, ...` assigned by (level below `root`, declaration
/// order). Injective and strictly increasing with level, so the generated
/// space is GH and `d(x, y) = max(l(x), l(y))` for distinct points.
pub fn level_labeling(t: &Graph, root: &str) -> Result<Vec<Rational>> {
    let r = t.require_vertex(root)?;
    let levels = t.root_levels(r)?;
    let mut order: Vec<usize> = (0..t.vertex_count()).collect();
    order.sort_by_key(|&v| (levels[v], v));
    let mut labels = vec![Rational::zero(); t.vertex_count()];
    for (rank, v) in order.into_iter().enumerate() {
        labels[v] = from_int(rank as i64 + 1);
    }
    Ok(labels)
}

/// A labeling of a connected graph generating a GH-space: the level
/// labeling of its breadth-first spanning tree from the first vertex.
pub fn gh_labeling(g: &Graph) -> Result<Vec<Rational>> {
    gh_labeling_from(g, g.name(0))
}

/// As [`gh_labeling`], with the spanning tree grown from `root`.
pub fn gh_labeling_from(g: &Graph, root: &str) -> Result<Vec<Rational>> {
    let r = g.require_vertex(root)?;
    let tree = g.with_edge_subset(&g.spanning_tree_edges_from(r)?);
    level_labeling(&tree, root)
}

/// Everything known about the space generated by one labeled graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GhReport {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub classification: MetricClass,
    pub distance_set: DistanceSet,
    /// Absent unless the space is ultrametric.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gh: Option<bool>,
    /// Checked on the zero-distance quotient when the space is degenerate.
    pub gomory_hu_holds: bool,
    pub edge_bound_holds: bool,
    /// Present for non-degenerate trees with at least two vertices.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tree_equivalences: Option<TreeEquivalences>,
}

impl GhReport {
    /// True unless an always-true identity failed.
    pub fn self_checks_pass(&self) -> bool {
        self.gomory_hu_holds
            && self.edge_bound_holds
            && self.tree_equivalences.is_none_or(|t| t.all_agree())
    }
}

pub fn gh_report(g: &LabeledGraph) -> Result<GhReport> {
    let dm = distance_matrix(g)?;
    let classification = classify_metric(&dm)?;
    let quotient = zero_quotient(&dm)?;
    let bound = check_edge_bound(g, &dm)?;
    let ultrametric = classification == MetricClass::Ultrametric;
    let tree_equivalences =
        if ultrametric && g.graph().vertex_count() >= 2 && g.graph().is_tree()? {
            Some(tree_gh_report(g)?)
        } else {
            None
        };
    Ok(GhReport {
        vertex_count: g.graph().vertex_count(),
        edge_count: g.graph().edge_count(),
        classification,
        distance_set: distance_set(&dm),
        gh: if ultrametric { Some(is_gh(&dm)?) } else { None },
        gomory_hu_holds: check_gomory_hu(&quotient.matrix)?,
        edge_bound_holds: bound.holds,
        tree_equivalences,
    })
}
