use thiserror::Error;

pub type Result<T> = std::result::Result<T, FuzzError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FuzzError {
    #[error("value {0} is outside the unit interval [0, 1]")]
    OutOfUnitRange(f64),

    #[error("entry ({row}, {col}) = {value} is not a membership degree in [0, 1]")]
    InvalidEntry { row: usize, col: usize, value: f64 },

    #[error("relation must be square, got {rows} rows and {cols} columns")]
    NotSquare { rows: usize, cols: usize },

    #[error("NaN is not a membership degree")]
    NotANumber,

    #[error("empty argument list")]
    EmptyArguments,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("arity mismatch: expected {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error(
        "implication {name} violates the ordering property at ({x}, {y}): I = {value}; \
         transitivity degrees need I(x, y) = 1 exactly when x <= y"
    )]
    LacksOrderingProperty {
        name: String,
        x: f64,
        y: f64,
        value: f64,
    },

    #[error("family mismatch: {0}")]
    FamilyMismatch(String),

    #[error("unsupported (t-norm, implication) pair for a scaled witness: {0}")]
    UnsupportedWitnessPair(String),

    #[error("universe of size {n} exceeds the search limit {max}; use transitive_witness instead")]
    TooLarge { n: usize, max: usize },

    #[error("relation is not symmetric: R({x},{y}) = {forward} but R({y},{x}) = {backward}")]
    NotSymmetric {
        x: usize,
        y: usize,
        forward: f64,
        backward: f64,
    },

    #[error("invalid feature table: {0}")]
    InvalidFeatures(String),

    #[error("postcondition failed: {0}")]
    Postcondition(String),
}
