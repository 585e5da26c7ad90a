use thiserror::Error;

/// Errors surfaced by the validating constructors and numeric operations.
///
/// Numeric payloads are carried as `f64` regardless of the crate's scalar
/// parameter so the messages stay uniform.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix dimensions {rows}x{cols} outside the supported 1..=8 range")]
    DimensionRange { rows: usize, cols: usize },

    #[error("entry count {len} does not match a {rows}x{cols} matrix")]
    ShapeMismatch { rows: usize, cols: usize, len: usize },

    #[error("non-finite entry at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },

    #[error("dimension mismatch: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: max deviation {deviation:e} exceeds tolerance {tolerance:e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("not a density matrix: {reason}")]
    InvalidDensity { reason: String },

    #[error("invalid Kraus set: {reason}")]
    InvalidKraus { reason: String },

    #[error("Kraus set is not trace preserving: residual {residual:e} exceeds tolerance {tolerance:e}")]
    NotTracePreserving { residual: f64, tolerance: f64 },

    #[error("channel acts on dimension {dim}, expected a qubit channel")]
    NotQubit { dim: usize },

    #[error("invalid prior probability {p1}: must lie in [0, 1]")]
    InvalidPrior { p1: f64 },

    #[error("invalid Pauli distribution: {reason}")]
    InvalidPauli { reason: String },

    #[error("invalid probe operator: {reason}")]
    InvalidProbe { reason: String },

    #[error("closed-form domain violation: radicand {radicand:e} is below the -{floor:e} floor")]
    FormulaDomain { radicand: f64, floor: f64 },

    #[error("channels belong to the same family ({family}); the cross-family report does not apply")]
    SameFamily { family: String },

    #[error("channel '{label}' was not built from a coherence-breaking family spec")]
    NotCbc { label: String },

    #[error("objective returned a non-finite value at {point:?}")]
    NonFiniteObjective { point: Vec<f64> },

    #[error("invalid optimizer configuration: {reason}")]
    InvalidConfig { reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
