//! Error type shared by all analysis modules.

use thiserror::Error;

/// Errors surfaced by construction, linear algebra, search and quadrature.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// A matrix or vector entry is NaN or infinite.
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    /// Dimension mismatch or an empty/non-square matrix where one is required.
    #[error("bad dimensions: {0}")]
    BadDimensions(String),

    /// Intermediate values of the matrix exponential left the representable range.
    #[error("overflow in matrix exponential (t = {t})")]
    Overflow { t: f64 },

    /// The shifted matrix is numerically singular: the requested point is on
    /// (or indistinguishable from) the spectrum.
    #[error("spectrum hit at lambda = {re} + {im}i (condition estimate {cond:.3e})")]
    SpectrumHit { re: f64, im: f64, cond: f64 },

    /// The eigenvalue iteration did not converge.
    #[error("eigenvalue iteration failed to converge (active block {block})")]
    EigSolveFailure { block: usize },

    /// No finite upper bracket for the resolvent supremum was found: the
    /// supremum is numerically unbounded and the boundedness hypothesis fails.
    #[error("no finite resolvent-supremum bracket after {doublings} doublings")]
    BracketFailure { doublings: usize },

    /// The semigroup norm never fell below one within the search budget.
    #[error("no horizon with ||T(t)|| < 1 found up to t = {t_max}")]
    NoHorizon { t_max: f64 },

    /// An envelope fit was requested on a trajectory that does not decay.
    #[error("trajectory does not decay: final norm {last_norm} >= 1")]
    NotDecaying { last_norm: f64 },

    /// Adaptive quadrature could not certify its tail or tolerance.
    #[error("quadrature failure: {0}")]
    QuadratureFailure(String),

    /// Matrix Market parse failure with position information.
    #[error("parse error at line {line}, column {col}: {msg}")]
    ParseError { line: usize, col: usize, msg: String },

    /// The parsed matrix is not square.
    #[error("matrix is not square: {rows} x {cols}")]
    NotSquare { rows: usize, cols: usize },

    /// Matrix Market field not supported (pattern matrices carry no values).
    #[error("unsupported matrix market field: {0}")]
    UnsupportedField(String),

    /// Unknown built-in generator name.
    #[error("unknown builtin generator: {0}")]
    UnknownName(String),

    /// Invalid parameters for a built-in generator.
    #[error("bad builtin parameters: {0}")]
    BadParams(String),

    /// Underlying I/O failure (path and message).
    #[error("io error on {path}: {msg}")]
    Io { path: String, msg: String },
}

/// Crate-wide result alias.
pub type Result<V> = std::result::Result<V, Error>;
