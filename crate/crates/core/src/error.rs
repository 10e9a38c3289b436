use thiserror::Error;

use crate::exactmath::ParseRationalError;

#[derive(Debug, Error)]
pub enum HomkitError {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix of size {dim} is singular")]
    SingularMatrix { dim: usize },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("hom-Lie algebra is not regular (twist is not invertible or axioms fail)")]
    NotRegular,
    #[error("cochain is not compatible with the twists: {0}")]
    NotHomCochain(String),
    #[error("data does not define a representation: {0}")]
    NotARepresentation(String),
    #[error("subspace is not a Dirac structure: {0}")]
    NotDirac(String),
    #[error("bilinear map has no twist attached")]
    MissingTwist,
    #[error(transparent)]
    Rational(#[from] ParseRationalError),
    #[error("parse error at {position}: {message}")]
    Parse { position: String, message: String },
}

pub type Result<T> = std::result::Result<T, HomkitError>;
