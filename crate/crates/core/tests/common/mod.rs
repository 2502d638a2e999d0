//! Brute-force references shared by the integration tests. None of these
//! call into the code they are used to check.

#![allow(dead_code)]

use std::collections::VecDeque;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use ultragraph::rational::{from_int, ratio};
use ultragraph::{DistanceMatrix, Graph, LabeledGraph, Rational};

/// Every connected graph on `n` numbered vertices, one per edge subset of K_n.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    let all: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << all.len()) {
        let edges: Vec<(usize, usize)> = all
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        if connected(n, &edges) {
            out.push(Graph::numbered(n, edges).unwrap());
        }
    }
    out
}

pub fn connected_graphs_up_to(n: usize) -> Vec<Graph> {
    (1..=n).flat_map(connected_graphs).collect()
}

pub fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &(a, b) in edges {
            for (x, y) in [(a, b), (b, a)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Labeled trees on `n` vertices, found as connected edge subsets of size n - 1.
pub fn count_trees_by_subsets(n: usize) -> usize {
    connected_graphs(n)
        .iter()
        .filter(|g| g.edge_count() + 1 == n)
        .count()
}

/// `d(x, y)` as the least threshold `t` such that `x` and `y` are joined
/// inside the vertices labeled at most `t`.
pub fn threshold_distances(g: &LabeledGraph) -> Vec<Vec<Rational>> {
    let graph = g.graph();
    let n = graph.vertex_count();
    let mut thresholds: Vec<Rational> = g.labels().to_vec();
    thresholds.sort();
    thresholds.dedup();
    let mut d = vec![vec![Rational::zero(); n]; n];
    for (x, row) in d.iter_mut().enumerate() {
        for (y, entry) in row.iter_mut().enumerate() {
            if x == y {
                continue;
            }
            *entry = thresholds
                .iter()
                .find(|t| {
                    let allowed: Vec<bool> = g.labels().iter().map(|l| l <= *t).collect();
                    allowed[x] && reachable(graph, x, y, &allowed)
                })
                .expect("connected graph")
                .clone();
        }
    }
    d
}

fn reachable(graph: &Graph, x: usize, y: usize, allowed: &[bool]) -> bool {
    let mut seen = vec![false; graph.vertex_count()];
    let mut stack = vec![x];
    seen[x] = true;
    while let Some(v) = stack.pop() {
        if v == y {
            return true;
        }
        for &(a, b) in graph.edges() {
            let next = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if allowed[next] && !seen[next] {
                seen[next] = true;
                stack.push(next);
            }
        }
    }
    false
}

/// Cycle criterion by brute force: every cyclic ordering of every vertex
/// subset of size at least 3 that closes up in the graph must reach its
/// maximum weight twice.
pub fn cycles_attain_max_twice(graph: &Graph, weight: impl Fn(usize, usize) -> Rational) -> bool {
    let n = graph.vertex_count();
    for mask in 0u32..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
        if subset.len() < 3 {
            continue;
        }
        for order in permutations(&subset[1..]) {
            let mut cycle = vec![subset[0]];
            cycle.extend(order);
            let closes =
                (0..cycle.len()).all(|i| graph.has_edge(cycle[i], cycle[(i + 1) % cycle.len()]));
            if !closes {
                continue;
            }
            let ws: Vec<Rational> = (0..cycle.len())
                .map(|i| weight(cycle[i], cycle[(i + 1) % cycle.len()]))
                .collect();
            let top = ws.iter().max().unwrap();
            if ws.iter().filter(|w| *w == top).count() < 2 {
                return false;
            }
        }
    }
    true
}

pub fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Isometry by trying every bijection.
pub fn isometric_by_bijection(a: &DistanceMatrix, b: &DistanceMatrix) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    let idx: Vec<usize> = (0..n).collect();
    permutations(&idx)
        .into_iter()
        .any(|p| (0..n).all(|i| (0..i).all(|j| a.get(i, j) == b.get(p[i], p[j]))))
}

/// Strong triangle inequality and positivity off the diagonal.
pub fn is_ultrametric(d: &DistanceMatrix) -> bool {
    let n = d.len();
    (0..n).all(|i| {
        (0..n).all(|j| {
            (i == j) == d.get(i, j).is_zero()
                && d.get(i, j) == d.get(j, i)
                && (0..n).all(|k| d.get(i, j) <= d.get(i, k).max(d.get(k, j)))
        })
    })
}

/// Random ultrametric on `n` points built by merging clusters at
/// non-decreasing heights drawn from `1..=levels`; equal heights give
/// multi-way merges.
pub fn random_ultrametric(rng: &mut impl Rng, n: usize, levels: i64) -> DistanceMatrix {
    let mut clusters: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    let mut d = vec![vec![Rational::zero(); n]; n];
    let mut height = 0;
    while clusters.len() > 1 {
        height = rng.random_range(height + 1..=levels.max(height + 1));
        clusters.shuffle(rng);
        let a = clusters.pop().unwrap();
        let b = clusters.pop().unwrap();
        for &x in &a {
            for &y in &b {
                d[x][y] = from_int(height);
                d[y][x] = from_int(height);
            }
        }
        let mut merged = a;
        merged.extend(b);
        clusters.push(merged);
        // sometimes keep merging at the same height
        if rng.random_bool(0.3) {
            height -= 1;
        }
    }
    DistanceMatrix::new((0..n).map(|i| format!("p{i}")).collect(), d).unwrap()
}

/// The same space with points reordered by `perm` (new point `i` is old `perm[i]`).
pub fn permuted(d: &DistanceMatrix, perm: &[usize]) -> DistanceMatrix {
    let names = perm.iter().map(|&p| d.vertices()[p].clone()).collect();
    let rows = perm
        .iter()
        .map(|&i| perm.iter().map(|&j| d.get(i, j).clone()).collect())
        .collect();
    DistanceMatrix::new(names, rows).unwrap()
}

pub fn label_pool() -> Vec<Rational> {
    vec![
        from_int(0),
        ratio(1, 2),
        from_int(1),
        from_int(2),
        from_int(3),
    ]
}

pub fn random_labels(rng: &mut impl Rng, n: usize, pool: &[Rational]) -> Vec<Rational> {
    (0..n)
        .map(|_| pool[rng.random_range(0..pool.len())].clone())
        .collect()
}

pub fn has_degenerate_edge(g: &LabeledGraph) -> bool {
    g.graph()
        .edges()
        .iter()
        .any(|&(a, b)| g.label(a).is_zero() && g.label(b).is_zero())
}

pub fn matrix_rows(d: &DistanceMatrix) -> Vec<Vec<Rational>> {
    (0..d.len()).map(|i| d.row(i).to_vec()).collect()
}

/// Every simple x–y path, by depth-first search over the edge list.
pub fn simple_paths(graph: &Graph, x: usize, y: usize) -> Vec<Vec<usize>> {
    fn walk(graph: &Graph, y: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let v = *path.last().unwrap();
        if v == y {
            out.push(path.clone());
            return;
        }
        for &(a, b) in graph.edges() {
            let next = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if !path.contains(&next) {
                path.push(next);
                walk(graph, y, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(graph, y, &mut vec![x], &mut out);
    out
}

/// Cycles as (sorted vertex set, sorted edge set), found by trying every
/// cyclic order of every vertex subset.
pub fn cycle_signatures(graph: &Graph) -> Vec<(Vec<usize>, Vec<(usize, usize)>)> {
    let n = graph.vertex_count();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
        if subset.len() < 3 {
            continue;
        }
        for order in permutations(&subset[1..]) {
            if order[0] > *order.last().unwrap() {
                continue;
            }
            let mut cycle = vec![subset[0]];
            cycle.extend(order);
            let k = cycle.len();
            if (0..k).all(|i| graph.has_edge(cycle[i], cycle[(i + 1) % k])) {
                let mut edges: Vec<(usize, usize)> = (0..k)
                    .map(|i| {
                        (
                            cycle[i].min(cycle[(i + 1) % k]),
                            cycle[i].max(cycle[(i + 1) % k]),
                        )
                    })
                    .collect();
                edges.sort_unstable();
                out.push((subset.clone(), edges));
            }
        }
    }
    out.sort();
    out
}
