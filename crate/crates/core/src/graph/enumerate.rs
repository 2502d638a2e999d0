//! Exhaustive enumerators for paths, cycles and labeled trees. These are
//! exponential and guarded by caps; they back the brute-force checks and
//! the tree explorer.

use crate::error::{Error, Result};
use crate::graph::{Cycle, Graph, Path};

pub const DEFAULT_CYCLE_CAP: usize = 10;
pub const DEFAULT_TREE_CAP: usize = 8;

/// Calls `visit` on every simple path from `x` to `y` in lexicographic
/// order of vertex indices.
pub fn for_each_simple_path(graph: &Graph, x: usize, y: usize, mut visit: impl FnMut(&[usize])) {
    let mut on_path = vec![false; graph.vertex_count()];
    let mut stack = vec![x];
    on_path[x] = true;
    extend(graph, y, &mut stack, &mut on_path, &mut visit);
}

fn extend(
    graph: &Graph,
    target: usize,
    stack: &mut Vec<usize>,
    on_path: &mut [bool],
    visit: &mut impl FnMut(&[usize]),
) {
    let last = *stack.last().expect("path is never empty");
    for &next in graph.neighbors(last) {
        if on_path[next] {
            continue;
        }
        stack.push(next);
        if next == target {
            visit(stack);
        } else {
            on_path[next] = true;
            extend(graph, target, stack, on_path, visit);
            on_path[next] = false;
        }
        stack.pop();
    }
}

/// Every simple path joining `x` and `y`, each exactly once.
pub fn enumerate_simple_paths(graph: &Graph, x: &str, y: &str) -> Result<Vec<Path>> {
    let xi = graph.require_vertex(x)?;
    let yi = graph.require_vertex(y)?;
    if xi == yi {
        return Err(Error::SameVertex(x.to_string()));
    }
    let mut paths = Vec::new();
    for_each_simple_path(graph, xi, yi, |p| {
        paths.push(Path::from_trusted(p.to_vec()))
    });
    Ok(paths)
}

/// Every cycle subgraph exactly once, up to rotation and reflection.
pub fn enumerate_cycles(graph: &Graph, cap: usize) -> Result<Vec<Cycle>> {
    if graph.vertex_count() > cap {
        return Err(Error::CapExceeded {
            what: "cycle enumeration vertex",
            value: graph.vertex_count(),
            cap,
        });
    }
    let mut cycles = Vec::new();
    let mut on_path = vec![false; graph.vertex_count()];
    for start in 0..graph.vertex_count() {
        // the cycle's smallest vertex is `start`; all others are larger
        let mut stack = vec![start];
        on_path[start] = true;
        grow_cycle(graph, start, &mut stack, &mut on_path, &mut cycles);
        on_path[start] = false;
    }
    Ok(cycles)
}

fn grow_cycle(
    graph: &Graph,
    start: usize,
    stack: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Cycle>,
) {
    let last = *stack.last().expect("non-empty");
    for &next in graph.neighbors(last) {
        if next == start && stack.len() >= 3 && stack[1] < last {
            out.push(Cycle::from_trusted(stack.clone()));
        }
        if next <= start || on_path[next] {
            continue;
        }
        on_path[next] = true;
        stack.push(next);
        grow_cycle(graph, start, stack, on_path, out);
        stack.pop();
        on_path[next] = false;
    }
}

/// Decodes a Prüfer sequence over `0..n` into the edges of a labeled tree,
/// each edge as `(min, max)`.
pub fn prufer_decode(sequence: &[usize], n: usize) -> Vec<(usize, usize)> {
    assert_eq!(
        sequence.len() + 2,
        n,
        "a Prüfer sequence for n vertices has length n - 2"
    );
    let mut degree = vec![1usize; n];
    for &x in sequence {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in sequence {
        let leaf = (0..n)
            .find(|&v| degree[v] == 1)
            .expect("a tree always has a leaf");
        edges.push((leaf.min(x), leaf.max(x)));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// All `n^(n-2)` labeled trees on vertices `1..=n`, in lexicographic order
/// of their Prüfer sequences.
pub fn enumerate_trees(n: usize, cap: usize) -> Result<Vec<Graph>> {
    if n == 0 {
        return Err(Error::InvalidConfig(
            "trees need at least one vertex".into(),
        ));
    }
    if n > cap {
        return Err(Error::CapExceeded {
            what: "tree enumeration vertex",
            value: n,
            cap,
        });
    }
    if n == 1 {
        return Ok(vec![Graph::numbered(1, vec![])?]);
    }
    let len = n - 2;
    let total = n.pow(len as u32);
    let mut trees = Vec::with_capacity(total);
    let mut sequence = vec![0usize; len];
    for _ in 0..total {
        trees.push(Graph::numbered(n, prufer_decode(&sequence, n))?);
        // odometer increment, last position fastest
        for slot in sequence.iter_mut().rev() {
            *slot += 1;
            if *slot < n {
                break;
            }
            *slot = 0;
        }
    }
    Ok(trees)
}
