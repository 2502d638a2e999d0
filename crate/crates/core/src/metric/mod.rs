//! The pseudoultrametric `d_l` of a labeled graph and the minimax distance
//! `rho_w` of a weighted graph.
//!
//! Both are computed by one sorted-edge sweep: edges are taken in
//! ascending weight order (ties in declaration order) and every pair of
//! vertices first joined by a union at weight `w` gets distance `w`. For
//! labels, edge `{u, v}` weighs `max(l(u), l(v))`, and the max label on a
//! path equals the max such weight along it, so the two notions coincide.

mod matrix;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{enumerate_cycles, for_each_simple_path, Graph, LabeledGraph, WeightedGraph};
use crate::rational::Rational;
use crate::union_find::DisjointSets;

pub use matrix::DistanceMatrix;

/// Vertex cap for path-enumeration distances.
pub const DEFAULT_ORACLE_CAP: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MetricClass {
    #[serde(rename = "ultrametric")]
    Ultrametric,
    #[serde(rename = "pseudoultrametric-only")]
    PseudoultrametricOnly,
}

impl MetricClass {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Ultrametric => "ultrametric",
            Self::PseudoultrametricOnly => "pseudoultrametric-only",
        }
    }
}

/// `w({u, v}) = max(l(u), l(v))` for every edge.
pub fn edge_weights(g: &LabeledGraph) -> WeightedGraph {
    let weights = g
        .graph()
        .edges()
        .iter()
        .map(|&(a, b)| g.label(a).max(g.label(b)).clone())
        .collect();
    WeightedGraph::new(g.graph().clone(), weights).expect("max of non-negative labels")
}

/// Minimax distances as indices into the sorted distinct weights, shifted
/// by one so that `0` marks the diagonal.
struct RankSweep {
    levels: Vec<Rational>,
    ranks: Vec<usize>,
}

impl RankSweep {
    fn run(graph: &Graph, weights: &[Rational]) -> Self {
        let n = graph.vertex_count();
        let mut order: Vec<usize> = (0..graph.edge_count()).collect();
        order.sort_by(|&a, &b| weights[a].cmp(&weights[b]));
        let mut levels: Vec<Rational> = Vec::new();
        let mut ranks = vec![0; n * n];
        let mut sets = DisjointSets::new(n);
        let mut joined = 1;
        for e in order {
            if joined == n {
                break;
            }
            if levels.last() != Some(&weights[e]) {
                levels.push(weights[e].clone());
            }
            let (a, b) = graph.edges()[e];
            let (ra, rb) = (sets.find(a), sets.find(b));
            if ra == rb {
                continue;
            }
            for &x in sets.members(ra) {
                for &y in sets.members(rb) {
                    ranks[x * n + y] = levels.len();
                    ranks[y * n + x] = levels.len();
                }
            }
            sets.union_roots(ra, rb);
            joined += 1;
        }
        Self { levels, ranks }
    }

    fn value(&self, rank: usize) -> Rational {
        if rank == 0 {
            Rational::zero()
        } else {
            self.levels[rank - 1].clone()
        }
    }

    fn matrix(&self, graph: &Graph) -> DistanceMatrix {
        let n = graph.vertex_count();
        let mut dm = DistanceMatrix::filled(graph.vertices().to_vec(), Rational::zero());
        for x in 0..n {
            for y in x + 1..n {
                dm.set_pair(x, y, self.value(self.ranks[x * n + y]));
            }
        }
        dm
    }
}

fn minimax_sweep(graph: &Graph, weights: &[Rational]) -> DistanceMatrix {
    RankSweep::run(graph, weights).matrix(graph)
}

/// `d_l` for a connected labeled graph.
pub fn distance_matrix(g: &LabeledGraph) -> Result<DistanceMatrix> {
    g.graph().require_connected()?;
    Ok(minimax_sweep(g.graph(), edge_weights(g).weights()))
}

/// Minimax edge-weight distance `rho_w` for a connected weighted graph.
pub fn rho_w(wg: &WeightedGraph) -> Result<DistanceMatrix> {
    wg.graph().require_connected()?;
    Ok(minimax_sweep(wg.graph(), wg.weights()))
}

/// `d_l(x, y)` evaluated literally: the minimum over every simple x–y path
/// of the largest label on it.
pub fn distance_oracle(g: &LabeledGraph, x: &str, y: &str, cap: usize) -> Result<Rational> {
    let graph = g.graph();
    if graph.vertex_count() > cap {
        return Err(Error::CapExceeded {
            what: "path oracle vertex",
            value: graph.vertex_count(),
            cap,
        });
    }
    graph.require_connected()?;
    let xi = graph.require_vertex(x)?;
    let yi = graph.require_vertex(y)?;
    if xi == yi {
        return Err(Error::SameVertex(x.to_string()));
    }
    Ok(path_minimax(g, xi, yi))
}

fn path_minimax(g: &LabeledGraph, x: usize, y: usize) -> Rational {
    let mut best: Option<Rational> = None;
    for_each_simple_path(g.graph(), x, y, |path| {
        let top = path
            .iter()
            .map(|&v| g.label(v))
            .max()
            .expect("paths are non-empty");
        if best.as_ref().is_none_or(|b| top < b) {
            best = Some(top.clone());
        }
    });
    best.expect("connected graph has a path")
}

/// The full matrix by path enumeration; exponential, capped.
pub fn oracle_matrix(g: &LabeledGraph, cap: usize) -> Result<DistanceMatrix> {
    let graph = g.graph();
    if graph.vertex_count() > cap {
        return Err(Error::CapExceeded {
            what: "path oracle vertex",
            value: graph.vertex_count(),
            cap,
        });
    }
    graph.require_connected()?;
    let mut dm = DistanceMatrix::filled(graph.vertices().to_vec(), Rational::zero());
    for x in 0..graph.vertex_count() {
        for y in x + 1..graph.vertex_count() {
            dm.set_pair(x, y, path_minimax(g, x, y));
        }
    }
    Ok(dm)
}

/// Distance across an edge: `max(l(a), l(b))`.
pub fn adjacent_distance(g: &LabeledGraph, a: &str, b: &str) -> Result<Rational> {
    let graph = g.graph();
    let (ai, bi) = (graph.require_vertex(a)?, graph.require_vertex(b)?);
    if !graph.has_edge(ai, bi) {
        return Err(Error::UnknownEdge(a.to_string(), b.to_string()));
    }
    graph.require_connected()?;
    Ok(g.label(ai).max(g.label(bi)).clone())
}

/// First edge (declaration order) whose endpoints are both labeled zero.
pub fn degenerate_edge(g: &LabeledGraph) -> Option<(usize, usize)> {
    g.graph()
        .edges()
        .iter()
        .copied()
        .find(|&(a, b)| g.label(a).is_zero() && g.label(b).is_zero())
}

/// Every edge has an endpoint with a positive label.
pub fn is_nondegenerate(g: &LabeledGraph) -> bool {
    degenerate_edge(g).is_none()
}

/// Ultrametric iff every off-diagonal entry is positive. Rejects matrices
/// that are not pseudoultrametrics at all.
pub fn classify_metric(dm: &DistanceMatrix) -> Result<MetricClass> {
    dm.validate()?;
    Ok(if dm.off_diagonal().all(|d| d.is_positive()) {
        MetricClass::Ultrametric
    } else {
        MetricClass::PseudoultrametricOnly
    })
}

/// Errors with the first zero-distance pair unless `dm` is ultrametric.
pub fn require_ultrametric(dm: &DistanceMatrix) -> Result<()> {
    dm.validate()?;
    let n = dm.len();
    for i in 0..n {
        for j in i + 1..n {
            if dm.get(i, j).is_zero() {
                return Err(Error::NotUltrametric(
                    dm.vertices()[i].clone(),
                    dm.vertices()[j].clone(),
                ));
            }
        }
    }
    Ok(())
}

/// Classes of the relation `d = 0` and the ultrametric on one
/// representative per class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    /// Earliest member of each class, in vertex order.
    pub representatives: Vec<String>,
    pub classes: Vec<Vec<String>>,
    pub matrix: DistanceMatrix,
}

impl Quotient {
    pub fn is_identity(&self) -> bool {
        self.classes.iter().all(|c| c.len() == 1)
    }
}

pub fn zero_quotient(dm: &DistanceMatrix) -> Result<Quotient> {
    dm.validate()?;
    let n = dm.len();
    let mut class_of: Vec<Option<usize>> = vec![None; n];
    let mut reps = Vec::new();
    let mut classes: Vec<Vec<String>> = Vec::new();
    for i in 0..n {
        if class_of[i].is_some() {
            continue;
        }
        let c = reps.len();
        reps.push(i);
        let mut members = Vec::new();
        for (j, slot) in class_of.iter_mut().enumerate().skip(i) {
            if slot.is_none() && dm.get(i, j).is_zero() {
                *slot = Some(c);
                members.push(dm.vertices()[j].clone());
            }
        }
        classes.push(members);
    }
    Ok(Quotient {
        representatives: reps.iter().map(|&i| dm.vertices()[i].clone()).collect(),
        classes,
        matrix: dm.restrict(&reps),
    })
}

/// Outcome of the edge-realizability check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Realizability {
    Realizable,
    /// `rho` is the minimax distance between the endpoints, below `weight`.
    NotRealizable {
        edge: (String, String),
        rho: Rational,
        weight: Rational,
    },
}

impl Realizability {
    pub fn is_realizable(&self) -> bool {
        matches!(self, Self::Realizable)
    }
}

/// A weighting extends to a pseudoultrametric iff `rho_w(e) = w(e)` on
/// every edge. Reports the first edge (declaration order) where it drops.
pub fn is_weight_realizable(wg: &WeightedGraph) -> Result<Realizability> {
    let graph = wg.graph();
    graph.require_connected()?;
    let sweep = RankSweep::run(graph, wg.weights());
    let n = graph.vertex_count();
    for (i, &(a, b)) in graph.edges().iter().enumerate() {
        let rank = sweep.ranks[a * n + b];
        if sweep.levels[rank - 1] < *wg.weight(i) {
            return Ok(Realizability::NotRealizable {
                edge: (graph.name(a).to_string(), graph.name(b).to_string()),
                rho: sweep.value(rank),
                weight: wg.weight(i).clone(),
            });
        }
    }
    Ok(Realizability::Realizable)
}

/// The cycle form of realizability: every cycle attains its maximum weight
/// on at least two edges. Exponential; capped by vertex count.
pub fn satisfies_cycle_criterion(wg: &WeightedGraph, cap: usize) -> Result<bool> {
    let graph = wg.graph();
    let weight_of =
        |a: usize, b: usize| wg.weight(graph.edge_index(a, b).expect("cycle edges exist"));
    for cycle in enumerate_cycles(graph, cap)? {
        let weights: Vec<&Rational> = cycle.edges().map(|(a, b)| weight_of(a, b)).collect();
        let top = *weights.iter().max().expect("cycles have edges");
        if weights.iter().filter(|w| **w == top).count() < 2 {
            return Ok(false);
        }
    }
    Ok(true)
}
