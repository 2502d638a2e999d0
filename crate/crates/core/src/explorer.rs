//! Exhaustive search over small labeled trees for GH-spaces that share a
//! distance set but are not isometric.
//!
//! Every tree on `n` vertices (Prüfer order) is paired with labelings drawn
//! from a finite universe of positive rationals. GH-spaces are bucketed by
//! distance set and, inside a bucket, grouped by canonical dendrogram. A
//! bucket holding two canonical forms is a counterexample. Nothing is
//! claimed about labels outside the universe.

use std::collections::{BTreeMap, HashSet};

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dendrogram::{are_isometric, canonical_form, dendrogram};
use crate::error::{Error, Result};
use crate::gh::{distance_set, is_gh, tree_gh_report, DistanceSet};
use crate::graph::{enumerate_trees, parse_graph, write_graph, Graph, LabeledGraph};
use crate::metric::{degenerate_edge, distance_matrix, oracle_matrix, DEFAULT_ORACLE_CAP};
use crate::rational::{self, Rational};

/// Largest tree size accepted in exhaustive mode.
pub const EXHAUSTIVE_VERTEX_CAP: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LabelingMode {
    /// Every assignment of universe values to vertices.
    Exhaustive,
    /// `samples_per_tree` seeded random assignments per tree.
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_vertices: usize,
    pub universe: Vec<Rational>,
    pub mode: LabelingMode,
    pub samples_per_tree: usize,
    pub seed: u64,
    /// Worker threads; output does not depend on it.
    pub jobs: usize,
    /// Skip labelings that an automorphism of the tree maps to a
    /// lexicographically smaller one.
    pub symmetry_reduction: bool,
}

impl SearchConfig {
    pub fn new(max_vertices: usize, universe: Vec<Rational>) -> Self {
        Self {
            max_vertices,
            universe,
            mode: LabelingMode::Exhaustive,
            samples_per_tree: 200,
            seed: 0,
            jobs: 1,
            symmetry_reduction: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.max_vertices < 2 {
            return bad(format!(
                "max vertex count must be at least 2, got {}",
                self.max_vertices
            ));
        }
        if self.universe.is_empty() {
            return bad("label universe is empty".into());
        }
        if let Some(v) = self.universe.iter().find(|v| !v.is_positive()) {
            return bad(format!(
                "label universe values must be positive, got {}",
                rational::render(v)
            ));
        }
        if self.universe.iter().collect::<HashSet<_>>().len() != self.universe.len() {
            return bad("label universe has repeated values".into());
        }
        if self.mode == LabelingMode::Exhaustive && self.max_vertices > EXHAUSTIVE_VERTEX_CAP {
            return Err(Error::CapExceeded {
                what: "exhaustive search vertex",
                value: self.max_vertices,
                cap: EXHAUSTIVE_VERTEX_CAP,
            });
        }
        if self.mode == LabelingMode::Sampled && self.samples_per_tree == 0 {
            return bad("sampled mode needs at least one sample per tree".into());
        }
        if self.jobs == 0 {
            return bad("jobs must be at least 1".into());
        }
        Ok(())
    }
}

/// One labeled tree of a counterexample pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceWitness {
    /// The tree in the line-based graph format.
    pub graph: String,
    pub canonical_form: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub distance_set: DistanceSet,
    pub first: SpaceWitness,
    pub second: SpaceWitness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelReport {
    pub vertices: usize,
    pub trees_examined: u64,
    pub labelings_examined: u64,
    pub gh_spaces: u64,
    pub distance_sets: u64,
    /// Unordered pairs of GH-spaces sharing a distance set.
    pub pairs_tested: u64,
    pub isometry_classes: u64,
    pub counterexamples: Vec<Counterexample>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub max_vertices: usize,
    #[serde(with = "rational::vec_as_strings")]
    pub universe: Vec<Rational>,
    pub mode: LabelingMode,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub samples_per_tree: Option<usize>,
    pub seed: u64,
    pub symmetry_reduction: bool,
    pub levels: Vec<LevelReport>,
    pub counterexample_count: u64,
    /// Trees whose four GH conditions disagreed. Always zero.
    pub equivalence_violations: u64,
    /// No canonical form was seen under two distance sets.
    pub isometry_implies_equal_distance_sets: bool,
}

impl ConjectureReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn counterexamples(&self) -> impl Iterator<Item = &Counterexample> {
        self.levels.iter().flat_map(|l| l.counterexamples.iter())
    }
}

struct ClassEntry {
    count: u64,
    /// Tree index and labeling of the first space seen in this class.
    first: (usize, Vec<Rational>),
}

#[derive(Default)]
struct Shard {
    labelings: u64,
    gh_spaces: u64,
    violations: u64,
    buckets: BTreeMap<DistanceSet, BTreeMap<String, ClassEntry>>,
}

impl Shard {
    /// Folds a later shard in; earlier entries keep their representative.
    fn absorb(&mut self, other: Shard) {
        self.labelings += other.labelings;
        self.gh_spaces += other.gh_spaces;
        self.violations += other.violations;
        for (ds, classes) in other.buckets {
            let bucket = self.buckets.entry(ds).or_default();
            for (canon, entry) in classes {
                match bucket.get_mut(&canon) {
                    Some(existing) => existing.count += entry.count,
                    None => {
                        bucket.insert(canon, entry);
                    }
                }
            }
        }
    }
}

pub fn search_conjecture(cfg: &SearchConfig) -> Result<ConjectureReport> {
    search_conjecture_with_progress(cfg, |_| {})
}

/// As [`search_conjecture`], calling `progress` after each tree size.
pub fn search_conjecture_with_progress(
    cfg: &SearchConfig,
    progress: impl Fn(&LevelReport),
) -> Result<ConjectureReport> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::InvalidConfig(e.to_string()))?;

    let mut levels = Vec::new();
    let mut violations = 0;
    let mut canon_home: BTreeMap<String, DistanceSet> = BTreeMap::new();
    let mut consistent = true;
    for n in 2..=cfg.max_vertices {
        let trees = enumerate_trees(n, cfg.max_vertices)?;
        let shards: Vec<Shard> = pool.install(|| {
            trees
                .par_iter()
                .enumerate()
                .map(|(idx, tree)| examine_tree(cfg, n, idx, tree))
                .collect::<Result<Vec<_>>>()
        })?;
        let mut total = Shard::default();
        for shard in shards {
            total.absorb(shard);
        }
        violations += total.violations;

        let mut pairs_tested = 0u64;
        let mut classes = 0u64;
        let mut counterexamples = Vec::new();
        for (ds, bucket) in &total.buckets {
            let k: u64 = bucket.values().map(|e| e.count).sum();
            pairs_tested += k * (k - 1) / 2;
            classes += bucket.len() as u64;
            for canon in bucket.keys() {
                if let Some(previous) = canon_home.insert(canon.clone(), ds.clone()) {
                    consistent &= &previous == ds;
                }
            }
            let entries: Vec<(&String, &ClassEntry)> = bucket.iter().collect();
            for (i, (canon_a, a)) in entries.iter().enumerate() {
                for (canon_b, b) in &entries[i + 1..] {
                    counterexamples.push(Counterexample {
                        distance_set: ds.clone(),
                        first: witness(&trees[a.first.0], &a.first.1, canon_a)?,
                        second: witness(&trees[b.first.0], &b.first.1, canon_b)?,
                    });
                }
            }
        }
        let level = LevelReport {
            vertices: n,
            trees_examined: trees.len() as u64,
            labelings_examined: total.labelings,
            gh_spaces: total.gh_spaces,
            distance_sets: total.buckets.len() as u64,
            pairs_tested,
            isometry_classes: classes,
            counterexamples,
        };
        progress(&level);
        levels.push(level);
    }
    let counterexample_count = levels.iter().map(|l| l.counterexamples.len() as u64).sum();
    Ok(ConjectureReport {
        max_vertices: cfg.max_vertices,
        universe: cfg.universe.clone(),
        mode: cfg.mode,
        samples_per_tree: (cfg.mode == LabelingMode::Sampled).then_some(cfg.samples_per_tree),
        seed: cfg.seed,
        symmetry_reduction: cfg.symmetry_reduction,
        levels,
        counterexample_count,
        equivalence_violations: violations,
        isometry_implies_equal_distance_sets: consistent,
    })
}

fn witness(tree: &Graph, labels: &[Rational], canon: &str) -> Result<SpaceWitness> {
    let g = LabeledGraph::new(tree.clone(), labels.to_vec())?;
    Ok(SpaceWitness {
        graph: write_graph(&g),
        canonical_form: canon.to_string(),
    })
}

fn examine_tree(cfg: &SearchConfig, n: usize, tree_index: usize, tree: &Graph) -> Result<Shard> {
    let automorphisms = if cfg.symmetry_reduction {
        automorphisms(tree)
    } else {
        Vec::new()
    };
    let mut shard = Shard::default();
    let mut visit = |digits: &[usize]| -> Result<()> {
        if !automorphisms.is_empty() && !is_orbit_minimum(digits, &automorphisms) {
            return Ok(());
        }
        shard.labelings += 1;
        let labels: Vec<Rational> = digits.iter().map(|&d| cfg.universe[d].clone()).collect();
        let g = LabeledGraph::new(tree.clone(), labels)?;
        if degenerate_edge(&g).is_some() {
            return Ok(());
        }
        let report = tree_gh_report(&g)?;
        if !report.all_agree() {
            shard.violations += 1;
        }
        if !report.gh {
            return Ok(());
        }
        shard.gh_spaces += 1;
        let dm = distance_matrix(&g)?;
        let canon = canonical_form(&dendrogram(&dm)?);
        let bucket = shard.buckets.entry(distance_set(&dm)).or_default();
        match bucket.get_mut(&canon) {
            Some(entry) => entry.count += 1,
            None => {
                let labels = g.labels().to_vec();
                bucket.insert(
                    canon,
                    ClassEntry {
                        count: 1,
                        first: (tree_index, labels),
                    },
                );
            }
        }
        Ok(())
    };

    let base = cfg.universe.len();
    match cfg.mode {
        LabelingMode::Exhaustive => {
            let mut digits = vec![0usize; n];
            loop {
                visit(&digits)?;
                if !increment(&mut digits, base) {
                    break;
                }
            }
        }
        LabelingMode::Sampled => {
            let mut rng =
                ChaCha8Rng::seed_from_u64(mix_seed(cfg.seed, n as u64, tree_index as u64));
            let mut digits = vec![0usize; n];
            for _ in 0..cfg.samples_per_tree {
                for d in digits.iter_mut() {
                    *d = rng.random_range(0..base);
                }
                visit(&digits)?;
            }
        }
    }
    Ok(shard)
}

/// Odometer step, last digit fastest. False after the final state.
fn increment(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

fn mix_seed(seed: u64, n: u64, tree: u64) -> u64 {
    // splitmix64 finalizer over the combined key
    let mut z =
        seed ^ n.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ tree.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// All vertex permutations preserving the edge set, identity excluded.
fn automorphisms(tree: &Graph) -> Vec<Vec<usize>> {
    let n = tree.vertex_count();
    permutations(n)
        .into_iter()
        .filter(|p| p.iter().enumerate().any(|(i, &v)| i != v))
        .filter(|p| tree.edges().iter().all(|&(a, b)| tree.has_edge(p[a], p[b])))
        .collect()
}

fn is_orbit_minimum(digits: &[usize], automorphisms: &[Vec<usize>]) -> bool {
    automorphisms.iter().all(|p| {
        let image = p.iter().map(|&v| digits[v]);
        image.cmp(digits.iter().copied()) != std::cmp::Ordering::Less
    })
}

/// All permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (0..n).collect();
    let mut out = vec![current.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..n)
            .rev()
            .find(|&j| current[j] > current[i - 1])
            .expect("pivot has a successor");
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(current.clone());
    }
}

/// Rebuilds a counterexample from its graph files and checks it with the
/// path-enumeration distances: both trees non-degenerate and GH, equal
/// distance sets, the stored canonical forms, and no isometry.
pub fn verify_counterexample(c: &Counterexample) -> std::result::Result<(), String> {
    let mut matrices = Vec::new();
    for w in [&c.first, &c.second] {
        let g = parse_graph(&w.graph).map_err(|e| e.to_string())?;
        if !g.graph().is_tree().map_err(|e| e.to_string())? {
            return Err("witness is not a tree".into());
        }
        if degenerate_edge(&g).is_some() {
            return Err("witness labeling is degenerate".into());
        }
        let dm = oracle_matrix(&g, DEFAULT_ORACLE_CAP).map_err(|e| e.to_string())?;
        if !is_gh(&dm).map_err(|e| e.to_string())? {
            return Err("witness is not a GH-space".into());
        }
        if distance_set(&dm) != c.distance_set {
            return Err("witness distance set differs from the recorded one".into());
        }
        let canon = canonical_form(&dendrogram(&dm).map_err(|e| e.to_string())?);
        if canon != w.canonical_form {
            return Err(format!(
                "canonical form {canon} differs from recorded {}",
                w.canonical_form
            ));
        }
        matrices.push(dm);
    }
    if are_isometric(&matrices[0], &matrices[1]).map_err(|e| e.to_string())? {
        return Err("witnesses are isometric".into());
    }
    Ok(())
}

/// Groups spaces by exact distance set. Inputs must be GH-spaces.
pub fn bucket_by_distance_set<T>(
    spaces: &[(T, crate::metric::DistanceMatrix)],
) -> Result<BTreeMap<DistanceSet, Vec<&(T, crate::metric::DistanceMatrix)>>> {
    let mut buckets: BTreeMap<DistanceSet, Vec<_>> = BTreeMap::new();
    for entry in spaces {
        if !is_gh(&entry.1)? {
            return Err(Error::InvalidConfig("bucketing expects GH-spaces".into()));
        }
        buckets
            .entry(distance_set(&entry.1))
            .or_default()
            .push(entry);
    }
    Ok(buckets)
}
