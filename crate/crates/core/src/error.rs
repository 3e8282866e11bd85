use thiserror::Error;

/// Errors produced while building graphs, parsing inputs, or driving the dynamics.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("vertex {v} out of range for graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),

    #[error("graph is disconnected: vertex {unreached} is not reachable from vertex 0")]
    Disconnected { unreached: usize },

    #[error("edge {{{0}, {1}}} joins two boundary vertices")]
    BoundaryEdge(usize, usize),

    #[error("interior vertex {0} has no neighbors")]
    IsolatedVertex(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("exponent p = {0} rejected: the update is only defined for p > 1")]
    InvalidExponent(f64),

    #[error("profile has {got} values but the graph has {expected} vertices")]
    DimensionMismatch { got: usize, expected: usize },

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    #[error("preset `{preset}` does not apply to graph family `{family}`")]
    PresetMismatch { preset: String, family: String },

    #[error("unsupported mode: {0}")]
    UnsupportedMode(String),
}

pub type Result<T> = std::result::Result<T, Error>;
