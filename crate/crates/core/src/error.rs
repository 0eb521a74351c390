use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate edge ({u}, {v}){}", at_line(*.line))]
    DuplicateEdge {
        u: usize,
        v: usize,
        line: Option<usize>,
    },

    #[error("loop edge at vertex {v}{}", at_line(*.line))]
    LoopEdge { v: usize, line: Option<usize> },

    #[error("vertex {v} out of range for a graph on {n} vertices{}", at_line(*.line))]
    VertexOutOfRange {
        v: usize,
        n: usize,
        line: Option<usize>,
    },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("vertex set must be nonempty")]
    EmptySet,

    #[error("graph has {n} vertices, above the path-enumeration cap of {cap}")]
    SizeCapExceeded { n: usize, cap: usize },

    #[error("weight {weight} at vertex {vertex} is below its degree {degree}")]
    WeightBelowDegree {
        vertex: usize,
        weight: i64,
        degree: usize,
    },

    #[error("matrix is not square: {0} x {1}")]
    NotSquare(usize, usize),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("matrix is not symmetric: entry ({0}, {1}) differs from its transpose")]
    NotSymmetric(usize, usize),

    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("edge ({0}, {1}) is not a bridge")]
    NotBridge(usize, usize),

    #[error("graph is not a tree")]
    NotATree,

    #[error("graph is not unicyclic")]
    NotUnicyclic,

    #[error("vertex {vertex} does not lie in the tree hanging at cycle vertex {root}")]
    VertexNotInClaimedTrees { vertex: usize, root: usize },

    #[error("i/o error: {0}")]
    Io(String),
}

fn at_line(line: Option<usize>) -> String {
    match line {
        Some(l) => format!(" at line {l}"),
        None => String::new(),
    }
}

pub type Result<T> = std::result::Result<T, Error>;
