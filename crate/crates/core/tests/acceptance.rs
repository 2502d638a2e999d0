//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any failure.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use ultragraph::explorer::verify_counterexample;
use ultragraph::graph::{enumerate_cycles, enumerate_trees, parse_graph, DEFAULT_TREE_CAP};
use ultragraph::metric::{
    edge_weights, is_weight_realizable, oracle_matrix, satisfies_cycle_criterion, zero_quotient,
    DEFAULT_ORACLE_CAP,
};
use ultragraph::rational::{from_int, ratio};
use ultragraph::{
    are_isometric, canonical_form, check_edge_bound, check_gomory_hu, classify_metric, dendrogram,
    distance_matrix, distance_set, gh_labeling, is_gh, is_gh_complete, level_labeling,
    search_conjecture, tree_gh_report, Graph, LabeledGraph, MetricClass, Rational, SearchConfig,
    WeightedGraph,
};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Corpus {
    instances: Vec<LabeledGraph>,
}

fn corpus() -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let pool = common::label_pool();
    let instances = common::connected_graphs_up_to(6)
        .into_iter()
        .map(|g| {
            let labels = common::random_labels(&mut rng, g.vertex_count(), &pool);
            LabeledGraph::new(g, labels).unwrap()
        })
        .collect();
    Corpus { instances }
}

fn oracle_equivalence(c: &Corpus) -> Outcome {
    ensure(c.instances.len() >= 10_000, || {
        format!("corpus has only {} instances", c.instances.len())
    })?;
    for g in &c.instances {
        let fast = distance_matrix(g).map_err(|e| e.to_string())?;
        let paths = oracle_matrix(g, DEFAULT_ORACLE_CAP).map_err(|e| e.to_string())?;
        let thresholds = common::threshold_distances(g);
        ensure(fast == paths, || {
            format!("path oracle differs on {:?}", g.graph().edges())
        })?;
        ensure(common::matrix_rows(&fast) == thresholds, || {
            format!("threshold oracle differs on {:?}", g.graph().edges())
        })?;
    }
    Ok(format!(
        "{} instances, exact agreement with two oracles",
        c.instances.len()
    ))
}

fn gomory_hu(c: &Corpus) -> Outcome {
    let mut ultrametric = 0;
    for g in &c.instances {
        let dm = distance_matrix(g).unwrap();
        if classify_metric(&dm).unwrap() == MetricClass::Ultrametric {
            ultrametric += 1;
            ensure(check_gomory_hu(&dm).unwrap(), || {
                format!("|D| > |X| on {:?}", g.graph().edges())
            })?;
            ensure(distance_set(&dm).len() <= dm.len(), || {
                "direct count disagrees".into()
            })?;
        }
    }
    Ok(format!("{ultrametric} ultrametric instances, 0 violations"))
}

fn edge_bound(c: &Corpus) -> Outcome {
    let (mut trees, mut strict, mut degenerate) = (0, 0, 0);
    for g in &c.instances {
        let dm = distance_matrix(g).unwrap();
        let bound = check_edge_bound(g, &dm).unwrap();
        let d = distance_set(&dm).len();
        let e = g.graph().edge_count();
        let is_tree = g.graph().edge_count() + 1 == g.graph().vertex_count();
        if common::has_degenerate_edge(g) {
            degenerate += 1;
        }
        ensure(bound.holds && d <= e + 1, || {
            format!("bound fails on {:?}", g.graph().edges())
        })?;
        ensure(bound.equality == (d == e + 1), || {
            "equality flag wrong".into()
        })?;
        if d == e + 1 {
            ensure(is_tree, || {
                format!("equality on a non-tree {:?}", g.graph().edges())
            })?;
        }
        if is_tree {
            trees += 1;
        } else {
            ensure(d < e + 1, || "non-strict on a non-tree".into())?;
            strict += 1;
        }
    }
    Ok(format!(
        "{} instances ({degenerate} degenerate); {trees} trees, {strict} non-trees all strict",
        c.instances.len()
    ))
}

fn all_labelings(n: usize, universe: &[Rational]) -> Vec<Vec<Rational>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<Rational>| {
                universe.iter().map(move |u| {
                    let mut next = prefix.clone();
                    next.push(u.clone());
                    next
                })
            })
            .collect();
    }
    out
}

fn tree_equivalence() -> Outcome {
    let expected = [1usize, 1, 3, 16, 125, 1296];
    let universe: Vec<Rational> = (1..=6).map(from_int).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut instances, mut gh_count) = (0u64, 0u64);
    for n in 1..=6 {
        let trees = enumerate_trees(n, DEFAULT_TREE_CAP).map_err(|e| e.to_string())?;
        ensure(trees.len() == expected[n - 1], || {
            format!("{} trees on {n} vertices", trees.len())
        })?;
        if n <= 5 {
            ensure(trees.len() == common::count_trees_by_subsets(n), || {
                "Prüfer count differs from subset count".into()
            })?;
        }
        if n < 2 {
            continue;
        }
        for t in trees {
            let labelings = if n <= 4 {
                all_labelings(n, &universe)
            } else {
                (0..200)
                    .map(|_| common::random_labels(&mut rng, n, &universe))
                    .collect()
            };
            for labels in labelings {
                let lg = LabeledGraph::new(t.clone(), labels).unwrap();
                let r = tree_gh_report(&lg).map_err(|e| e.to_string())?;
                ensure(r.all_agree(), || {
                    format!(
                        "conditions disagree: {r:?} on {:?} {:?}",
                        t.edges(),
                        lg.labels()
                    )
                })?;
                instances += 1;
                gh_count += r.gh as u64;
            }
        }
    }
    Ok(format!(
        "{instances} labeled trees, {gh_count} GH, four conditions agree everywhere"
    ))
}

fn max_labels_off_diagonal(g: &LabeledGraph) -> bool {
    let dm = distance_matrix(g).unwrap();
    let n = dm.len();
    (0..n).all(|i| (0..n).all(|j| i == j || *dm.get(i, j) == g.label(i).max(g.label(j)).clone()))
}

fn constructive_gh(c: &Corpus) -> Outcome {
    let mut trees_checked = 0;
    for n in 1..=6 {
        for t in enumerate_trees(n, DEFAULT_TREE_CAP).unwrap() {
            for root in t.vertices() {
                let lg = LabeledGraph::new(t.clone(), level_labeling(&t, root).unwrap()).unwrap();
                ensure(is_gh(&distance_matrix(&lg).unwrap()).unwrap(), || {
                    format!("level labeling not GH on {:?}", t.edges())
                })?;
                ensure(max_labels_off_diagonal(&lg), || {
                    "d(x,y) != max(l(x),l(y))".into()
                })?;
                trees_checked += 1;
            }
        }
    }
    for inst in &c.instances {
        let g = inst.graph();
        let labeled = LabeledGraph::new(g.clone(), gh_labeling(g).unwrap()).unwrap();
        let dm = distance_matrix(&labeled).unwrap();
        ensure(is_gh(&dm).unwrap(), || {
            format!("gh_labeling not GH on {:?}", g.edges())
        })?;
        let tree = labeled.spanning_tree().unwrap();
        ensure(distance_matrix(&tree).unwrap() == dm, || {
            "spanning tree generates a different space".into()
        })?;
        ensure(max_labels_off_diagonal(&tree), || {
            "tree distances are not label maxima".into()
        })?;
    }
    Ok(format!(
        "{trees_checked} rooted trees, {} graphs",
        c.instances.len()
    ))
}

fn random_weight(rng: &mut impl Rng, ties: &[Rational]) -> Rational {
    if rng.random_bool(0.7) {
        ties[rng.random_range(0..ties.len())].clone()
    } else {
        ratio(rng.random_range(0..20), rng.random_range(1..6))
    }
}

fn realizability(c: &Corpus) -> Outcome {
    let ties = [from_int(1), from_int(2), from_int(3)];
    let graphs: Vec<&Graph> = c.instances.iter().map(|g| g.graph()).collect();
    let tallies = graphs
        .par_iter()
        .enumerate()
        .map(|(k, &g)| -> Result<(u64, u64), String> {
            let mut rng = ChaCha8Rng::seed_from_u64(6_000_000 + k as u64);
            let cycles: Vec<Vec<usize>> = enumerate_cycles(g, 10)
                .unwrap()
                .iter()
                .map(|c| {
                    c.edges()
                        .map(|(a, b)| g.edge_index(a, b).unwrap())
                        .collect()
                })
                .collect();
            let (mut yes, mut no) = (0, 0);
            for round in 0..1000 {
                let w = (0..g.edge_count())
                    .map(|_| random_weight(&mut rng, &ties))
                    .collect();
                let wg = WeightedGraph::new(g.clone(), w).unwrap();
                let fast = is_weight_realizable(&wg).unwrap().is_realizable();
                let cycles = cycles.iter().all(|c| {
                    let top = c.iter().map(|&e| wg.weight(e)).max().unwrap();
                    c.iter().filter(|&&e| wg.weight(e) == top).count() >= 2
                });
                ensure(fast == cycles, || {
                    format!(
                        "edge check {fast}, cycles {cycles} on {:?} {:?}",
                        g.edges(),
                        wg.weights()
                    )
                })?;
                if round < 5 {
                    ensure(satisfies_cycle_criterion(&wg, 10).unwrap() == fast, || {
                        "library cycle check disagrees".into()
                    })?;
                    let brute = common::cycles_attain_max_twice(g, |a, b| {
                        wg.weight(g.edge_index(a, b).unwrap()).clone()
                    });
                    ensure(brute == fast, || {
                        format!(
                            "brute force disagrees on {:?} {:?}",
                            g.edges(),
                            wg.weights()
                        )
                    })?;
                }
                if fast {
                    yes += 1
                } else {
                    no += 1
                }
            }
            Ok((yes, no))
        })
        .collect::<Result<Vec<_>, String>>()?;
    let (yes, no) = tallies
        .iter()
        .fold((0, 0), |acc, t| (acc.0 + t.0, acc.1 + t.1));
    for inst in &c.instances {
        let wg = edge_weights(inst);
        ensure(is_weight_realizable(&wg).unwrap().is_realizable(), || {
            format!(
                "label-induced weights rejected on {:?}",
                inst.graph().edges()
            )
        })?;
    }
    Ok(format!(
        "{} graphs x 1000 weightings ({yes} realizable, {no} not), edge check = cycle enumeration, brute force on 5 per graph",
        graphs.len()
    ))
}

fn isometry() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let spaces: Vec<_> = (0..500)
        .map(|_| {
            let n = rng.random_range(1..=6);
            common::random_ultrametric(&mut rng, n, 4)
        })
        .collect();
    let forms: Vec<String> = spaces
        .iter()
        .map(|d| canonical_form(&dendrogram(d).unwrap()))
        .collect();
    let mut isometric_pairs = 0;
    for i in 0..spaces.len() {
        for j in i + 1..spaces.len() {
            let fast = are_isometric(&spaces[i], &spaces[j]).unwrap();
            let brute = common::isometric_by_bijection(&spaces[i], &spaces[j]);
            ensure(fast == brute, || {
                format!(
                    "verdict {fast} vs brute {brute} for {} and {}",
                    forms[i], forms[j]
                )
            })?;
            isometric_pairs += fast as u32;
        }
    }
    for (d, form) in spaces.iter().zip(&forms) {
        let mut perm: Vec<usize> = (0..d.len()).collect();
        for _ in 0..20 {
            perm.shuffle(&mut rng);
            let p = common::permuted(d, &perm);
            ensure(canonical_form(&dendrogram(&p).unwrap()) == *form, || {
                format!("form of {form} changes under {perm:?}")
            })?;
        }
    }
    let pairs = spaces.len() * (spaces.len() - 1) / 2;
    Ok(format!(
        "{pairs} pairs ({isometric_pairs} isometric), 10000 permutations"
    ))
}

fn quotient(c: &Corpus) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let pool = [from_int(0), from_int(1), from_int(2), ratio(5, 2)];
    let graphs: Vec<&Graph> = c
        .instances
        .iter()
        .map(|g| g.graph())
        .filter(|g| g.edge_count() > 0)
        .collect();
    let mut done = 0;
    let mut collapsed = 0;
    while done < 1000 {
        let g = graphs[rng.random_range(0..graphs.len())];
        let lg = LabeledGraph::new(
            g.clone(),
            common::random_labels(&mut rng, g.vertex_count(), &pool),
        )
        .unwrap();
        if !common::has_degenerate_edge(&lg) {
            continue;
        }
        let dm = distance_matrix(&lg).unwrap();
        ensure(
            classify_metric(&dm).unwrap() == MetricClass::PseudoultrametricOnly,
            || "degenerate labeling classified ultrametric".into(),
        )?;
        let q = zero_quotient(&dm).unwrap();
        ensure(common::is_ultrametric(&q.matrix), || {
            format!(
                "quotient not ultrametric on {:?} {:?}",
                g.edges(),
                lg.labels()
            )
        })?;
        ensure(distance_set(&q.matrix) == distance_set(&dm), || {
            "distance set changed".into()
        })?;
        collapsed += dm.len() - q.matrix.len();
        done += 1;
    }
    Ok(format!(
        "{done} degenerate instances, {collapsed} points collapsed in total"
    ))
}

fn explorer() -> Outcome {
    let small = search_conjecture(&SearchConfig::new(3, (1..=3).map(from_int).collect()))
        .map_err(|e| e.to_string())?;
    ensure(small.counterexample_count == 0, || {
        format!("{} counterexamples at n <= 3", small.counterexample_count)
    })?;
    let universe: Vec<Rational> = (1..=4).map(from_int).collect();
    let mut outputs = Vec::new();
    for jobs in [1, 8, 1, 8] {
        let mut cfg = SearchConfig::new(4, universe.clone());
        cfg.jobs = jobs;
        outputs.push(search_conjecture(&cfg).map_err(|e| e.to_string())?);
    }
    let json = outputs[0].to_json();
    ensure(outputs.iter().all(|r| r.to_json() == json), || {
        "output depends on parallelism width or run".into()
    })?;
    let report = &outputs[0];
    ensure(report.equivalence_violations == 0, || {
        "tree conditions disagreed during search".into()
    })?;
    for c in report.counterexamples() {
        verify_counterexample(c)?;
        let a = oracle_matrix(&parse_graph(&c.first.graph).unwrap(), DEFAULT_ORACLE_CAP).unwrap();
        let b = oracle_matrix(&parse_graph(&c.second.graph).unwrap(), DEFAULT_ORACLE_CAP).unwrap();
        ensure(!common::isometric_by_bijection(&a, &b), || {
            "reported pair is isometric".into()
        })?;
    }
    let gh: u64 = report.levels.iter().map(|l| l.gh_spaces).sum();
    Ok(format!(
        "n<=3: 0 counterexamples; n<=4: {gh} GH-spaces, {} counterexamples, identical at widths 1 and 8",
        report.counterexample_count
    ))
}

fn complete_graph_case() -> Outcome {
    let labels = vec![from_int(1), from_int(2), from_int(2)];
    let g = Graph::numbered(3, vec![(0, 1), (0, 2), (1, 2)]).unwrap();
    let dm = distance_matrix(&LabeledGraph::new(g, labels.clone()).unwrap()).unwrap();
    let d = distance_set(&dm);
    ensure(
        d.len() == 2 && d.values() == [Rational::zero(), from_int(2)],
        || format!("D = {}", d.render()),
    )?;
    ensure(d.len() < labels.len(), || "|D| not below |V|".into())?;
    ensure(!is_gh_complete(&labels).unwrap(), || {
        "{1,2,2} reported GH".into()
    })?;
    Ok(format!(
        "K3 labeled 1,2,2: D = {}, |D| = 2 < 3 = |V|",
        d.render()
    ))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let c = corpus();
    let criteria: Vec<Criterion> = vec![
        ("oracle equivalence", Box::new(|| oracle_equivalence(&c))),
        ("Gomory-Hu inequality", Box::new(|| gomory_hu(&c))),
        ("edge bound", Box::new(|| edge_bound(&c))),
        ("four-way tree equivalence", Box::new(tree_equivalence)),
        (
            "constructive GH labelings",
            Box::new(|| constructive_gh(&c)),
        ),
        ("realizability equivalence", Box::new(|| realizability(&c))),
        ("isometry soundness", Box::new(isometry)),
        ("zero-distance quotient", Box::new(|| quotient(&c))),
        ("conjecture explorer", Box::new(explorer)),
        ("complete graph {1,2,2}", Box::new(complete_graph_case)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{:.1?}]", i + 1, t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{:.1?}]", i + 1, t.elapsed());
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.1?}",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
