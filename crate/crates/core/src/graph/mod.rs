//! Finite simple undirected graphs with vertex labels or edge weights.
//!
//! Vertices are opaque string identifiers. Their declaration order is the
//! only order used for tie-breaking anywhere in the crate; identifiers are
//! never collated.

mod enumerate;
mod parse;

use std::collections::{HashMap, HashSet, VecDeque};

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::rational::Rational;

pub use enumerate::{
    enumerate_cycles, enumerate_simple_paths, enumerate_trees, for_each_simple_path, prufer_decode,
    DEFAULT_CYCLE_CAP, DEFAULT_TREE_CAP,
};
pub use parse::{parse_graph, parse_weighted_graph, write_graph, write_weighted_graph};

/// Vertex set and edge set, without labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<(usize, usize)>,
    // neighbours sorted by declaration index
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from vertex ids and index pairs.
    pub fn new(vertices: Vec<String>, edges: Vec<(usize, usize)>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidGraph(
                "a graph needs at least one vertex".into(),
            ));
        }
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex {v}")));
            }
        }
        let mut adjacency = vec![Vec::new(); vertices.len()];
        let mut seen = HashSet::with_capacity(edges.len());
        for &(a, b) in &edges {
            if a >= vertices.len() || b >= vertices.len() {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) refers to a missing vertex"
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at {}", vertices[a])));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge {} {}",
                    vertices[a], vertices[b]
                )));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self {
            vertices,
            index,
            edges,
            adjacency,
        })
    }

    /// Builds a graph from named edges over the given vertex ids.
    pub fn from_names(vertices: &[&str], edges: &[(&str, &str)]) -> Result<Self> {
        let names: Vec<String> = vertices.iter().map(|v| v.to_string()).collect();
        let lookup: HashMap<&str, usize> =
            vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let edges = edges
            .iter()
            .map(|(a, b)| {
                let ia = *lookup
                    .get(a)
                    .ok_or_else(|| Error::UnknownVertex(a.to_string()))?;
                let ib = *lookup
                    .get(b)
                    .ok_or_else(|| Error::UnknownVertex(b.to_string()))?;
                Ok((ia, ib))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(names, edges)
    }

    /// Graph on vertices named `1..=n`.
    pub fn numbered(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        Self::new((1..=n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn require_vertex(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// Edges in declaration order, with their declared orientation.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Position of edge `{a, b}` in declaration order.
    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.edges
            .iter()
            .position(|&(u, v)| (u, v) == (a, b) || (u, v) == (b, a))
    }

    /// `2|E| == sum of degrees`. Always true; kept as a self-check.
    pub fn degree_sum_identity(&self) -> bool {
        let sum: usize = (0..self.vertex_count()).map(|v| self.degree(v)).sum();
        sum == 2 * self.edge_count()
    }

    /// `Some((first vertex, first unreachable vertex))` when disconnected.
    pub fn disconnection_witness(&self) -> Option<(usize, usize)> {
        let reached = self.bfs_order(0);
        if reached.len() == self.vertex_count() {
            return None;
        }
        let mut seen = vec![false; self.vertex_count()];
        for &v in &reached {
            seen[v] = true;
        }
        let missing = seen
            .iter()
            .position(|s| !s)
            .expect("some vertex is unreachable");
        Some((0, missing))
    }

    pub fn is_connected(&self) -> bool {
        self.disconnection_witness().is_none()
    }

    pub fn require_connected(&self) -> Result<()> {
        match self.disconnection_witness() {
            None => Ok(()),
            Some((a, b)) => Err(Error::Disconnected(
                self.vertices[a].clone(),
                self.vertices[b].clone(),
            )),
        }
    }

    /// A connected graph is a tree iff `|V| = 1 + |E|`.
    pub fn is_tree(&self) -> Result<bool> {
        self.require_connected()?;
        Ok(self.vertex_count() == 1 + self.edge_count())
    }

    pub fn require_tree(&self) -> Result<()> {
        if self.is_tree()? {
            Ok(())
        } else {
            Err(Error::NotATree {
                vertices: self.vertex_count(),
                edges: self.edge_count(),
            })
        }
    }

    fn bfs_order(&self, root: usize) -> Vec<usize> {
        let mut seen = vec![false; self.vertex_count()];
        let mut order = Vec::with_capacity(self.vertex_count());
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &u in &self.adjacency[v] {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        order
    }

    /// Edge indices of the breadth-first spanning tree from `root`, in
    /// declaration order. Neighbours are scanned in vertex declaration order.
    pub fn spanning_tree_edges_from(&self, root: usize) -> Result<Vec<usize>> {
        self.require_connected()?;
        let mut seen = vec![false; self.vertex_count()];
        let mut tree = HashSet::new();
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(v) = queue.pop_front() {
            for &u in &self.adjacency[v] {
                if !seen[u] {
                    seen[u] = true;
                    tree.insert((v.min(u), v.max(u)));
                    queue.push_back(u);
                }
            }
        }
        Ok((0..self.edge_count())
            .filter(|&i| {
                let (a, b) = self.edges[i];
                tree.contains(&(a.min(b), a.max(b)))
            })
            .collect())
    }

    /// Subgraph on the same vertices keeping only the listed edges.
    pub fn with_edge_subset(&self, edge_indices: &[usize]) -> Graph {
        let edges = edge_indices.iter().map(|&i| self.edges[i]).collect();
        Graph::new(self.vertices.clone(), edges).expect("subset of a valid edge set")
    }

    /// Edge count of the unique root–v path, for every vertex of a tree.
    pub fn root_levels(&self, root: usize) -> Result<Vec<usize>> {
        self.require_tree()?;
        let mut level = vec![usize::MAX; self.vertex_count()];
        level[root] = 0;
        for v in self.bfs_order(root) {
            for &u in &self.adjacency[v] {
                if level[u] == usize::MAX {
                    level[u] = level[v] + 1;
                }
            }
        }
        Ok(level)
    }
}

/// A graph with a non-negative exact label on every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    graph: Graph,
    labels: Vec<Rational>,
}

impl LabeledGraph {
    pub fn new(graph: Graph, labels: Vec<Rational>) -> Result<Self> {
        if labels.len() != graph.vertex_count() {
            return Err(Error::InvalidGraph(format!(
                "{} labels for {} vertices",
                labels.len(),
                graph.vertex_count()
            )));
        }
        if let Some(i) = labels.iter().position(|l| l.is_negative()) {
            return Err(Error::InvalidGraph(format!(
                "negative label on {}",
                graph.name(i)
            )));
        }
        Ok(Self { graph, labels })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn labels(&self) -> &[Rational] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &Rational {
        &self.labels[v]
    }

    /// Same graph, new labeling.
    pub fn relabeled(&self, labels: Vec<Rational>) -> Result<Self> {
        Self::new(self.graph.clone(), labels)
    }

    pub fn is_connected(&self) -> bool {
        self.graph.is_connected()
    }

    pub fn is_tree(&self) -> Result<bool> {
        self.graph.is_tree()
    }

    pub fn degree_sum_identity(&self) -> bool {
        self.graph.degree_sum_identity()
    }

    /// Breadth-first spanning tree from the first declared vertex, labels kept.
    pub fn spanning_tree(&self) -> Result<LabeledGraph> {
        self.spanning_tree_from(0)
    }

    pub fn spanning_tree_from(&self, root: usize) -> Result<LabeledGraph> {
        let kept = self.graph.spanning_tree_edges_from(root)?;
        Ok(Self {
            graph: self.graph.with_edge_subset(&kept),
            labels: self.labels.clone(),
        })
    }

    /// Levels below `root` keyed by vertex index.
    pub fn root_levels(&self, root: &str) -> Result<Vec<usize>> {
        let r = self.graph.require_vertex(root)?;
        self.graph.root_levels(r)
    }
}

/// A graph with a non-negative exact weight on every edge, indexed like
/// [`Graph::edges`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    graph: Graph,
    weights: Vec<Rational>,
}

impl WeightedGraph {
    pub fn new(graph: Graph, weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != graph.edge_count() {
            return Err(Error::InvalidGraph(format!(
                "{} weights for {} edges",
                weights.len(),
                graph.edge_count()
            )));
        }
        if let Some(i) = weights.iter().position(|w| w.is_negative()) {
            let (a, b) = graph.edges()[i];
            return Err(Error::InvalidGraph(format!(
                "negative weight on {} {}",
                graph.name(a),
                graph.name(b)
            )));
        }
        Ok(Self { graph, weights })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, edge: usize) -> &Rational {
        &self.weights[edge]
    }
}

/// A simple path `v0 … vk`, `k ≥ 1`, stored as vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path(Vec<usize>);

impl Path {
    /// Checks distinctness and adjacency of consecutive vertices.
    pub fn new(graph: &Graph, vertices: Vec<usize>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::InvalidGraph("a path has at least one edge".into()));
        }
        let mut seen = HashSet::new();
        if !vertices
            .iter()
            .all(|v| *v < graph.vertex_count() && seen.insert(*v))
        {
            return Err(Error::InvalidGraph("path vertices must be distinct".into()));
        }
        if !vertices.windows(2).all(|w| graph.has_edge(w[0], w[1])) {
            return Err(Error::InvalidGraph(
                "consecutive path vertices must be adjacent".into(),
            ));
        }
        Ok(Self(vertices))
    }

    pub(crate) fn from_trusted(vertices: Vec<usize>) -> Self {
        Self(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn names<'g>(&self, graph: &'g Graph) -> Vec<&'g str> {
        self.0.iter().map(|&v| graph.name(v)).collect()
    }
}

/// A cycle `v1 … vn`, `n ≥ 3`, in cyclic order. Enumeration reports each
/// cycle starting at its smallest vertex index, with `v2 < vn`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle(Vec<usize>);

impl Cycle {
    pub fn new(graph: &Graph, vertices: Vec<usize>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidGraph(
                "a cycle has at least three vertices".into(),
            ));
        }
        let mut seen = HashSet::new();
        if !vertices
            .iter()
            .all(|v| *v < graph.vertex_count() && seen.insert(*v))
        {
            return Err(Error::InvalidGraph(
                "cycle vertices must be distinct".into(),
            ));
        }
        let n = vertices.len();
        if !(0..n).all(|i| graph.has_edge(vertices[i], vertices[(i + 1) % n])) {
            return Err(Error::InvalidGraph(
                "cyclically consecutive vertices must be adjacent".into(),
            ));
        }
        Ok(Self(vertices))
    }

    pub(crate) fn from_trusted(vertices: Vec<usize>) -> Self {
        Self(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    /// Edges as `(min, max)` index pairs, in cyclic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.0.len();
        (0..n).map(move |i| {
            let (a, b) = (self.0[i], self.0[(i + 1) % n]);
            (a.min(b), a.max(b))
        })
    }
}
