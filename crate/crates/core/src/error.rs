//! Error type shared by every module of the crate.

use thiserror::Error;

/// All failure modes surfaced by this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// The graph has no path between some pair of vertices (or no edges at
    /// all), so distance-based matrices are undefined.
    #[error("graph is disconnected: {0}")]
    Disconnected(String),

    /// An edge deletion was requested for a vertex pair that is not an edge.
    #[error("no edge between vertices {u} and {v}")]
    NoSuchEdge { u: usize, v: usize },

    /// A matrix expected to be symmetric is not (entries compared bitwise).
    #[error("matrix is not symmetric")]
    NotSymmetric,

    /// A row-major layout does not describe a square matrix.
    #[error("matrix is not square: {rows} rows but a row of length {cols}")]
    NotSquare { rows: usize, cols: usize },

    /// The iterative eigensolver did not reach its convergence threshold.
    #[error("eigensolver failed to converge within {0} sweeps")]
    NoConvergence(usize),

    /// A block specification violates one of its admissibility conditions
    /// (constant nonnegative row sums, zero trace, nonzero coupling, k >= 2).
    #[error("invalid block specification: {0}")]
    InvalidBlockSpec(String),

    /// A vertex partition is empty, has a zero part, or is out of range for
    /// the requested family.
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    /// An operation was called outside its documented hypothesis.
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    /// A quantity that is guaranteed by construction failed a runtime check;
    /// indicates a bug rather than bad input.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    /// Malformed textual input (partition strings, edge lists, enum names).
    #[error("parse error: {0}")]
    Parse(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
