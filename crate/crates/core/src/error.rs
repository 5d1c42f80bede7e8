use thiserror::Error;

/// Errors produced by the inference, graph, connectivity and simulation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("sequence is empty")]
    EmptySequence,

    #[error("sequence is not strictly increasing at index {index}: {prev} >= {next}")]
    NotStrictlyIncreasing { index: usize, prev: f64, next: f64 },

    #[error("sequence is not sorted at index {index}: {prev} > {next}")]
    NotSorted { index: usize, prev: f64, next: f64 },

    #[error("non-finite value {value} at index {index}")]
    NonFinite { index: usize, value: f64 },

    #[error("sequence lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("binomial coefficient C({n}, {k}) is undefined for k > n")]
    BinomialDomain { n: u64, k: u64 },

    #[error("brute-force enumeration supports q <= {max}, got q = {q}")]
    EnumerationCapacity { q: usize, max: usize },

    #[error("graph must have at least 2 nodes, got {0}")]
    TooFewNodes(usize),

    #[error("invalid edge ({i}, {j}): {reason}")]
    InvalidEdge { i: usize, j: usize, reason: String },

    #[error("matrix is not square: {rows} rows, {cols} columns")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric at ({i}, {j}): {a} vs {b}")]
    NotSymmetric { i: usize, j: usize, a: f64, b: f64 },

    #[error("non-finite matrix entry {value} at ({i}, {j})")]
    NonFiniteEntry { i: usize, j: usize, value: f64 },

    #[error("label count {labels} does not match dimension {dim}")]
    LabelCount { labels: usize, dim: usize },

    #[error("node labels differ at index {index}: `{left}` vs `{right}`")]
    LabelMismatch { index: usize, left: String, right: String },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("column {column} has zero variance")]
    ZeroVariance { column: usize },

    #[error("vector is constant; correlation is undefined")]
    ConstantVector,

    #[error("invalid configuration at {pointer}: {message}")]
    Config { pointer: String, message: String },

    #[error("cohort needs at least {min} pairs, got {got}")]
    CohortTooSmall { got: usize, min: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
