use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph is disconnected: no path joins {0} and {1}")]
    Disconnected(String, String),
    #[error("graph is not a tree ({vertices} vertices, {edges} edges)")]
    NotATree { vertices: usize, edges: usize },
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown edge {0} {1}")]
    UnknownEdge(String, String),
    #[error("endpoints must be distinct, got {0} twice")]
    SameVertex(String),
    #[error("{what} cap exceeded: {value} > {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },
    #[error("labeling is degenerate: edge {0} {1} has both labels zero")]
    DegenerateLabeling(String, String),
    #[error("space is not ultrametric: {0} and {1} are distinct points at distance 0")]
    NotUltrametric(String, String),
    #[error("invalid distance matrix: {0}")]
    InvalidMatrix(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnknownDirective(String),
    WrongArity {
        directive: char,
        expected: &'static str,
        found: usize,
    },
    DuplicateVertex(String),
    UndeclaredEndpoint(String),
    SelfLoop(String),
    DuplicateEdge(String, String),
    NegativeNumber(String),
    MalformedNumber(String),
    MissingLabel(String),
    Empty,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::UnknownDirective(d) => write!(f, "unknown directive {d:?}"),
            Self::WrongArity {
                directive,
                expected,
                found,
            } => {
                write!(
                    f,
                    "'{directive}' line expects {expected}, found {found} fields"
                )
            }
            Self::DuplicateVertex(v) => write!(f, "duplicate vertex {v}"),
            Self::UndeclaredEndpoint(v) => write!(f, "undeclared endpoint {v}"),
            Self::SelfLoop(v) => write!(f, "self-loop at {v}"),
            Self::DuplicateEdge(a, b) => write!(f, "duplicate edge {a} {b}"),
            Self::NegativeNumber(s) => write!(f, "negative value {s}"),
            Self::MalformedNumber(s) => write!(f, "malformed number {s:?}"),
            Self::MissingLabel(v) => write!(f, "vertex {v} has no label"),
            Self::Empty => write!(f, "document declares no vertices"),
        }
    }
}
