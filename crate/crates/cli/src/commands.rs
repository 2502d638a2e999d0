use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read};
use std::path::Path;

use serde_json::json;
use ultragraph::error::Error;
use ultragraph::explorer::{
    search_conjecture_with_progress, verify_counterexample, LabelingMode, SearchConfig,
};
use ultragraph::gh::{distance_set, gh_labeling_from, gh_report, GhReport};
use ultragraph::graph::{
    parse_graph, parse_weighted_graph, write_graph, LabeledGraph, WeightedGraph,
};
use ultragraph::metric::{
    distance_matrix, is_weight_realizable, oracle_matrix, satisfies_cycle_criterion, zero_quotient,
    Realizability,
};
use ultragraph::rational::{parse_list, render};
use ultragraph::{are_isometric, canonical_form, dendrogram, DistanceMatrix};

use crate::{Cli, Command, Format};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Affirmative = 0,
    Negative = 1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Code {
    Input = 2,
    SelfCheck = 3,
}

#[derive(Debug)]
pub struct Failure {
    pub code: Code,
    pub message: String,
}

fn input(message: impl Into<String>) -> Failure {
    Failure {
        code: Code::Input,
        message: message.into(),
    }
}

fn self_check(message: impl Into<String>) -> Failure {
    Failure {
        code: Code::SelfCheck,
        message: message.into(),
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotUltrametric(..) => input(format!(
                "{e}; run `ultragraph quotient` to collapse it first"
            )),
            _ => input(e.to_string()),
        }
    }
}

type CmdResult = Result<Outcome, Failure>;

pub fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Dist {
            graph,
            oracle,
            cap_paths,
        } => dist(cli.format, graph, *oracle, *cap_paths),
        Command::Check { graph } => check(cli.format, graph),
        Command::Label { graph, root } => label(graph, root.as_deref()),
        Command::Quotient { graph } => quotient(cli.format, graph),
        Command::Realizable {
            graph,
            oracle,
            cap_cycles,
        } => realizable(cli.format, graph, *oracle, *cap_cycles),
        Command::Canon { graphs } => canon(cli.format, graphs),
        Command::Isometric { first, second } => isometric(cli.format, first, second),
        Command::Explore {
            max_n,
            labels,
            seed,
            jobs,
            sampled,
            samples,
            symmetry_reduction,
            emit_dir,
        } => {
            let universe = parse_list(labels).map_err(|k| input(format!("--labels: {k}")))?;
            let cfg = SearchConfig {
                max_vertices: *max_n,
                universe,
                mode: if *sampled {
                    LabelingMode::Sampled
                } else {
                    LabelingMode::Exhaustive
                },
                samples_per_tree: *samples,
                seed: *seed,
                jobs: *jobs,
                symmetry_reduction: *symmetry_reduction,
            };
            explore(&cfg, emit_dir.as_deref())
        }
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| input(format!("stdin: {e}")))?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<LabeledGraph, Failure> {
    let text = read_text(path)?;
    parse_graph(&text).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn load_weighted(path: &Path) -> Result<WeightedGraph, Failure> {
    let text = read_text(path)?;
    parse_weighted_graph(&text).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn no_csv(format: Format, command: &str) -> Result<(), Failure> {
    if format == Format::Csv {
        return Err(input(format!(
            "{command} has no csv output; use text or json"
        )));
    }
    Ok(())
}

fn print_matrix(format: Format, dm: &DistanceMatrix) {
    match format {
        Format::Text => print!("{}", dm.to_text()),
        Format::Json => println!("{}", dm.to_json()),
        Format::Csv => print!("{}", dm.to_csv()),
    }
}

fn dist(format: Format, path: &Path, oracle: bool, cap: usize) -> CmdResult {
    let g = load(path)?;
    let dm = distance_matrix(&g)?;
    if oracle {
        let brute = oracle_matrix(&g, cap)?;
        if let Some((i, j)) = first_difference(&dm, &brute) {
            return Err(self_check(format!(
                "oracle mismatch at ({}, {}): sweep gives {}, path enumeration gives {}",
                dm.vertices()[i],
                dm.vertices()[j],
                render(dm.get(i, j)),
                render(brute.get(i, j))
            )));
        }
    }
    print_matrix(format, &dm);
    Ok(Outcome::Affirmative)
}

fn first_difference(a: &DistanceMatrix, b: &DistanceMatrix) -> Option<(usize, usize)> {
    (0..a.len())
        .flat_map(|i| (0..a.len()).map(move |j| (i, j)))
        .find(|&(i, j)| a.get(i, j) != b.get(i, j))
}

fn check(format: Format, path: &Path) -> CmdResult {
    no_csv(format, "check")?;
    let g = load(path)?;
    let report = gh_report(&g)?;
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        ),
        _ => print!("{}", report_text(&report)),
    }
    if !report.self_checks_pass() {
        return Err(self_check(
            "an always-true identity failed; see the report above",
        ));
    }
    Ok(if report.gh == Some(true) {
        Outcome::Affirmative
    } else {
        Outcome::Negative
    })
}

fn report_text(r: &GhReport) -> String {
    let mut out = String::new();
    writeln!(out, "vertices: {}", r.vertex_count).unwrap();
    writeln!(out, "edges: {}", r.edge_count).unwrap();
    writeln!(out, "classification: {}", r.classification.as_str()).unwrap();
    writeln!(
        out,
        "distance set: {} ({} values)",
        r.distance_set.render(),
        r.distance_set.len()
    )
    .unwrap();
    if let Some(gh) = r.gh {
        writeln!(out, "gh: {gh}").unwrap();
    }
    writeln!(out, "gomory-hu inequality: {}", r.gomory_hu_holds).unwrap();
    writeln!(out, "edge bound |D| <= |E| + 1: {}", r.edge_bound_holds).unwrap();
    if let Some(t) = r.tree_equivalences {
        writeln!(
            out,
            "tree conditions: gh={} injective-weights={} |D|=|E|+1:{} 2|D|=2+deg-sum:{}",
            t.gh, t.injective_weights, t.edge_count_equality, t.degree_sum_equality
        )
        .unwrap();
    }
    out
}

fn label(path: &Path, root: Option<&str>) -> CmdResult {
    let g = load(path)?;
    let graph = g.graph();
    let root = root.unwrap_or_else(|| graph.name(0));
    let labels = gh_labeling_from(graph, root)?;
    let labeled = g.relabeled(labels)?;
    print!("{}", write_graph(&labeled));
    Ok(Outcome::Affirmative)
}

fn quotient(format: Format, path: &Path) -> CmdResult {
    let g = load(path)?;
    let dm = distance_matrix(&g)?;
    let q = zero_quotient(&dm)?;
    let before = distance_set(&dm);
    let after = distance_set(&q.matrix);
    if before != after {
        return Err(self_check(format!(
            "quotient changed the distance set from {} to {}",
            before.render(),
            after.render()
        )));
    }
    match format {
        Format::Text => {
            if q.is_identity() {
                println!("space is already ultrametric; quotient is the identity");
            }
            println!("representatives: {}", q.representatives.join(" "));
            for class in &q.classes {
                println!("class: {}", class.join(" "));
            }
            println!("distance set: {}", after.render());
            print!("{}", q.matrix.to_text());
        }
        Format::Json => {
            let matrix: serde_json::Value =
                serde_json::from_str(&q.matrix.to_json()).expect("valid json");
            let doc = json!({
                "identity": q.is_identity(),
                "representatives": q.representatives,
                "classes": q.classes,
                "distance_set": after,
                "quotient": matrix,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializes")
            );
        }
        Format::Csv => print!("{}", q.matrix.to_csv()),
    }
    Ok(Outcome::Affirmative)
}

fn realizable(format: Format, path: &Path, oracle: bool, cap: usize) -> CmdResult {
    no_csv(format, "realizable")?;
    let wg = load_weighted(path)?;
    let verdict = is_weight_realizable(&wg)?;
    if oracle {
        let by_cycles = satisfies_cycle_criterion(&wg, cap)?;
        if by_cycles != verdict.is_realizable() {
            return Err(self_check(format!(
                "edge check says {}, cycle criterion says {by_cycles}",
                verdict.is_realizable()
            )));
        }
    }
    match (&verdict, format) {
        (Realizability::Realizable, Format::Json) => println!("{}", json!({ "realizable": true })),
        (Realizability::Realizable, _) => println!("realizable: yes"),
        (Realizability::NotRealizable { edge, rho, weight }, Format::Json) => println!(
            "{}",
            json!({
                "realizable": false,
                "witness": [edge.0, edge.1],
                "rho": render(rho),
                "weight": render(weight),
            })
        ),
        (Realizability::NotRealizable { edge, rho, weight }, _) => {
            println!("realizable: no");
            println!("witness: {} {}", edge.0, edge.1);
            println!("weight: {}", render(weight));
            println!("rho: {}", render(rho));
        }
    }
    Ok(if verdict.is_realizable() {
        Outcome::Affirmative
    } else {
        Outcome::Negative
    })
}

fn canon(format: Format, paths: &[std::path::PathBuf]) -> CmdResult {
    no_csv(format, "canon")?;
    let mut docs = Vec::new();
    for path in paths {
        let dm = distance_matrix(&load(path)?)?;
        let tree = dendrogram(&dm)?;
        let form = canonical_form(&tree);
        match format {
            Format::Json => docs.push(json!({
                "file": path.display().to_string(),
                "canonical_form": form,
                "dendrogram": tree,
            })),
            _ => println!("{form}"),
        }
    }
    if format == Format::Json {
        println!(
            "{}",
            serde_json::to_string_pretty(&docs).expect("serializes")
        );
    }
    Ok(Outcome::Affirmative)
}

fn isometric(format: Format, first: &Path, second: &Path) -> CmdResult {
    no_csv(format, "isometric")?;
    let a = distance_matrix(&load(first)?)?;
    let b = distance_matrix(&load(second)?)?;
    let verdict = are_isometric(&a, &b)?;
    match format {
        Format::Json => println!(
            "{}",
            json!({
                "isometric": verdict,
                "canonical_forms": [canonical_form(&dendrogram(&a)?), canonical_form(&dendrogram(&b)?)],
            })
        ),
        _ => println!("{verdict}"),
    }
    Ok(if verdict {
        Outcome::Affirmative
    } else {
        Outcome::Negative
    })
}

fn explore(cfg: &SearchConfig, emit_dir: Option<&Path>) -> CmdResult {
    let report = search_conjecture_with_progress(cfg, |level| {
        eprintln!(
            "n={}: {} trees, {} labelings, {} GH-spaces, {} distance sets, {} counterexamples",
            level.vertices,
            level.trees_examined,
            level.labelings_examined,
            level.gh_spaces,
            level.distance_sets,
            level.counterexamples.len()
        );
    })?;
    for (i, c) in report.counterexamples().enumerate() {
        verify_counterexample(c)
            .map_err(|e| self_check(format!("counterexample {i} does not re-verify: {e}")))?;
    }
    if report.equivalence_violations > 0 || !report.isometry_implies_equal_distance_sets {
        println!("{}", report.to_json());
        return Err(self_check(
            "tree GH conditions disagreed or an isometry class spans two distance sets",
        ));
    }
    if let Some(dir) = emit_dir {
        fs::create_dir_all(dir).map_err(|e| input(format!("{}: {e}", dir.display())))?;
        for (i, c) in report.counterexamples().enumerate() {
            for (side, w) in [("a", &c.first), ("b", &c.second)] {
                let file = dir.join(format!("counterexample-{i:04}-{side}.graph"));
                fs::write(&file, &w.graph)
                    .map_err(|e| input(format!("{}: {e}", file.display())))?;
            }
        }
    }
    println!("{}", report.to_json());
    Ok(Outcome::Affirmative)
}
