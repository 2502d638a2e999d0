//! Line-based graph documents.
//!
//! ```text
//! # comment
//! v <id> <label>        label: `2`, `1.5` or `3/2`
//! e <id> <id>           labeled variant
//! e <id> <id> <weight>  weighted variant
//! ```
//!
//! Blank lines are ignored and `v` lines fix the vertex order. In the
//! weighted variant the label on `v` lines is optional and ignored.

use std::collections::{HashMap, HashSet};
use std::fmt::Write;

use crate::error::{ParseError, ParseErrorKind};
use crate::graph::{Graph, LabeledGraph, WeightedGraph};
use crate::rational::{parse_non_negative, render, Rational};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Variant {
    Labeled,
    Weighted,
}

struct Document {
    vertices: Vec<String>,
    labels: Vec<Option<Rational>>,
    edges: Vec<(usize, usize)>,
    weights: Vec<Rational>,
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

fn read(text: &str, variant: Variant) -> Result<Document, ParseError> {
    let mut doc = Document {
        vertices: Vec::new(),
        labels: Vec::new(),
        edges: Vec::new(),
        weights: Vec::new(),
    };
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut seen_edges = HashSet::new();

    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        match fields[0] {
            "v" => {
                let ok = match variant {
                    Variant::Labeled => fields.len() == 3,
                    Variant::Weighted => fields.len() == 2 || fields.len() == 3,
                };
                if !ok {
                    let expected = if variant == Variant::Labeled {
                        "an id and a label"
                    } else {
                        "an id"
                    };
                    return Err(err(
                        line,
                        ParseErrorKind::WrongArity {
                            directive: 'v',
                            expected,
                            found: fields.len(),
                        },
                    ));
                }
                let id = fields[1];
                if index.contains_key(id) {
                    return Err(err(line, ParseErrorKind::DuplicateVertex(id.to_string())));
                }
                let label = match fields.get(2) {
                    Some(text) => Some(parse_non_negative(text).map_err(|k| err(line, k))?),
                    None => None,
                };
                index.insert(id.to_string(), doc.vertices.len());
                doc.vertices.push(id.to_string());
                doc.labels.push(label);
            }
            "e" => {
                let expected_len = if variant == Variant::Labeled { 3 } else { 4 };
                if fields.len() != expected_len {
                    let expected = if variant == Variant::Labeled {
                        "two endpoints"
                    } else {
                        "two endpoints and a weight"
                    };
                    return Err(err(
                        line,
                        ParseErrorKind::WrongArity {
                            directive: 'e',
                            expected,
                            found: fields.len(),
                        },
                    ));
                }
                let endpoint = |id: &str| {
                    index.get(id).copied().ok_or_else(|| {
                        err(line, ParseErrorKind::UndeclaredEndpoint(id.to_string()))
                    })
                };
                let a = endpoint(fields[1])?;
                let b = endpoint(fields[2])?;
                if a == b {
                    return Err(err(line, ParseErrorKind::SelfLoop(fields[1].to_string())));
                }
                if !seen_edges.insert((a.min(b), a.max(b))) {
                    return Err(err(
                        line,
                        ParseErrorKind::DuplicateEdge(fields[1].to_string(), fields[2].to_string()),
                    ));
                }
                if variant == Variant::Weighted {
                    doc.weights
                        .push(parse_non_negative(fields[3]).map_err(|k| err(line, k))?);
                }
                doc.edges.push((a, b));
            }
            other => {
                return Err(err(
                    line,
                    ParseErrorKind::UnknownDirective(other.to_string()),
                ))
            }
        }
    }
    if doc.vertices.is_empty() {
        return Err(err(text.lines().count().max(1), ParseErrorKind::Empty));
    }
    Ok(doc)
}

pub fn parse_graph(text: &str) -> Result<LabeledGraph, ParseError> {
    let doc = read(text, Variant::Labeled)?;
    let labels = doc
        .labels
        .into_iter()
        .map(|l| l.expect("labeled variant requires labels"))
        .collect();
    let graph = Graph::new(doc.vertices, doc.edges).expect("document was validated line by line");
    Ok(LabeledGraph::new(graph, labels).expect("labels are non-negative and total"))
}

pub fn parse_weighted_graph(text: &str) -> Result<WeightedGraph, ParseError> {
    let doc = read(text, Variant::Weighted)?;
    let graph = Graph::new(doc.vertices, doc.edges).expect("document was validated line by line");
    Ok(WeightedGraph::new(graph, doc.weights).expect("weights are non-negative and total"))
}

pub fn write_graph(g: &LabeledGraph) -> String {
    let graph = g.graph();
    let mut out = String::new();
    for (v, name) in graph.vertices().iter().enumerate() {
        writeln!(out, "v {name} {}", render(g.label(v))).unwrap();
    }
    for &(a, b) in graph.edges() {
        writeln!(out, "e {} {}", graph.name(a), graph.name(b)).unwrap();
    }
    out
}

pub fn write_weighted_graph(g: &WeightedGraph) -> String {
    let graph = g.graph();
    let mut out = String::new();
    for name in graph.vertices() {
        writeln!(out, "v {name}").unwrap();
    }
    for (i, &(a, b)) in graph.edges().iter().enumerate() {
        writeln!(
            out,
            "e {} {} {}",
            graph.name(a),
            graph.name(b),
            render(g.weight(i))
        )
        .unwrap();
    }
    out
}
