//! Ball hierarchies of finite ultrametric spaces and a naming-free
//! canonical string for them. Two finite ultrametric spaces are isometric
//! exactly when their canonical strings agree.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::metric::{require_ultrametric, DistanceMatrix};
use crate::rational::{self, Rational};
use crate::union_find::DisjointSets;

/// Leaf marker in canonical strings (U+00B7).
pub const LEAF: &str = "·";

/// Rooted tree whose leaves are points and whose internal nodes carry the
/// distance at which their children merge. Internal nodes have at least two
/// children and are strictly higher than every internal node below them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Dendrogram {
    Leaf {
        leaf: String,
    },
    Node {
        #[serde(with = "rational::as_string")]
        height: Rational,
        children: Vec<Dendrogram>,
    },
}

impl Dendrogram {
    /// Point ids in left-to-right order.
    pub fn leaves(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Self::Leaf { leaf } => out.push(leaf),
            Self::Node { children, .. } => children.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    pub fn height(&self) -> Option<&Rational> {
        match self {
            Self::Leaf { .. } => None,
            Self::Node { height, .. } => Some(height),
        }
    }

    pub fn internal_count(&self) -> usize {
        match self {
            Self::Leaf { .. } => 0,
            Self::Node { children, .. } => {
                1 + children.iter().map(Self::internal_count).sum::<usize>()
            }
        }
    }

    fn contains(&self, id: &str) -> bool {
        match self {
            Self::Leaf { leaf } => leaf == id,
            Self::Node { children, .. } => children.iter().any(|c| c.contains(id)),
        }
    }

    /// Height of the lowest common ancestor of two leaves; `None` if either
    /// is missing or they are the same leaf.
    pub fn lca_height(&self, a: &str, b: &str) -> Option<&Rational> {
        let Self::Node { height, children } = self else {
            return None;
        };
        if !self.contains(a) || !self.contains(b) || a == b {
            return None;
        }
        for child in children {
            if child.contains(a) && child.contains(b) {
                return child.lca_height(a, b);
            }
        }
        Some(height)
    }

    /// Every internal node has two or more children and sits strictly above
    /// its internal descendants.
    pub fn is_well_formed(&self) -> bool {
        match self {
            Self::Leaf { .. } => true,
            Self::Node { height, children } => {
                children.len() >= 2
                    && children
                        .iter()
                        .all(|c| c.height().is_none_or(|h| h < height) && c.is_well_formed())
            }
        }
    }
}

/// Single-linkage merge of the points at each distinct distance, smallest
/// first. Points joined at the same threshold collapse into one node.
pub fn dendrogram(dm: &DistanceMatrix) -> Result<Dendrogram> {
    require_ultrametric(dm)?;
    let n = dm.len();
    let mut by_height: BTreeMap<&Rational, Vec<(usize, usize)>> = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            by_height.entry(dm.get(i, j)).or_default().push((i, j));
        }
    }

    let mut nodes: Vec<Option<Dendrogram>> = dm
        .vertices()
        .iter()
        .map(|v| Some(Dendrogram::Leaf { leaf: v.clone() }))
        .collect();
    let mut sets = DisjointSets::new(n);
    for (height, pairs) in by_height {
        let mut merged: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let before: Vec<usize> = (0..n).map(|i| sets.find(i)).collect();
        for &(i, j) in &pairs {
            sets.union(i, j);
        }
        let mut old_roots: Vec<usize> = pairs
            .iter()
            .flat_map(|&(i, j)| [before[i], before[j]])
            .collect();
        old_roots.sort_unstable();
        old_roots.dedup();
        for old in old_roots {
            merged.entry(sets.find(old)).or_default().push(old);
        }
        for (root, parts) in merged {
            let children = parts
                .iter()
                .map(|&p| nodes[p].take().expect("each cluster is merged once"))
                .collect();
            nodes[root] = Some(Dendrogram::Node {
                height: height.clone(),
                children,
            });
        }
    }
    let root = sets.find(0);
    Ok(nodes[root].take().expect("all points end in one cluster"))
}

/// Leaf is `·`; a node is `(` height, then its children's strings sorted
/// byte-wise and concatenated, then `)`. Heights are lowest-terms `p/q`.
pub fn canonical_form(d: &Dendrogram) -> String {
    match d {
        Dendrogram::Leaf { .. } => LEAF.to_string(),
        Dendrogram::Node { height, children } => {
            let mut parts: Vec<String> = children.iter().map(canonical_form).collect();
            parts.sort();
            format!("({}{})", rational::render(height), parts.concat())
        }
    }
}

pub fn are_isometric(a: &DistanceMatrix, b: &DistanceMatrix) -> Result<bool> {
    require_ultrametric(a)?;
    require_ultrametric(b)?;
    if a.len() != b.len() {
        return Ok(false);
    }
    Ok(canonical_form(&dendrogram(a)?) == canonical_form(&dendrogram(b)?))
}
