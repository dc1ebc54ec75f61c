//! Crate-wide error type.
//!
//! Every failure carries a stable kebab-case name (see [`Error::name`]) so
//! front ends can report machine-readable verdicts without string matching
//! on human-oriented messages.

use thiserror::Error;

/// Errors produced by validation and numerical routines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("shape: {0}")]
    Shape(String),
    #[error("not-hermitian: {0}")]
    NotHermitian(String),
    #[error("no-convergence: {0}")]
    NoConvergence(String),
    #[error("invalid-p: {0}")]
    InvalidP(String),
    #[error("not-psd: {0}")]
    NotPsd(String),
    #[error("empty: {0}")]
    Empty(String),
    #[error("not-projector: {0}")]
    NotProjector(String),
    #[error("not-j-positive: {0}")]
    NotJPositive(String),
    #[error("not-j-selfadjoint: {0}")]
    NotJSelfadjoint(String),
    #[error("trace-violation: {0}")]
    TraceViolation(String),
    #[error("not-normalized: {0}")]
    NotNormalized(String),
    #[error("bad-weights: {0}")]
    BadWeights(String),
    #[error("symmetry-mismatch: {0}")]
    SymmetryMismatch(String),
    #[error("not-unitary: {0}")]
    NotUnitary(String),
    #[error("not-an-automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("not-completely-jpositive: {0}")]
    NotCompletelyJPositive(String),
    #[error("mixed-symmetry: {0}")]
    MixedSymmetry(String),
    #[error("not-a-representation: {0}")]
    NotARepresentation(String),
    #[error("outside-ball: {0}")]
    OutsideBall(String),
    #[error("not-bloch: {0}")]
    NotBloch(String),
    #[error("degenerate-spectrum: {0}")]
    DegenerateSpectrum(String),
    #[error("not-j-unitary: {0}")]
    NotJUnitary(String),
    #[error("invalid-j-density: {0}")]
    InvalidJDensity(String),
    #[error("invalid-step: {0}")]
    InvalidStep(String),
    #[error("out-of-range: {0}")]
    OutOfRange(String),
}

impl Error {
    /// Stable identifier for the failure kind.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Shape(_) => "shape",
            Error::NotHermitian(_) => "not-hermitian",
            Error::NoConvergence(_) => "no-convergence",
            Error::InvalidP(_) => "invalid-p",
            Error::NotPsd(_) => "not-psd",
            Error::Empty(_) => "empty",
            Error::NotProjector(_) => "not-projector",
            Error::NotJPositive(_) => "not-j-positive",
            Error::NotJSelfadjoint(_) => "not-j-selfadjoint",
            Error::TraceViolation(_) => "trace-violation",
            Error::NotNormalized(_) => "not-normalized",
            Error::BadWeights(_) => "bad-weights",
            Error::SymmetryMismatch(_) => "symmetry-mismatch",
            Error::NotUnitary(_) => "not-unitary",
            Error::NotAnAutomorphism(_) => "not-an-automorphism",
            Error::NotCompletelyJPositive(_) => "not-completely-jpositive",
            Error::MixedSymmetry(_) => "mixed-symmetry",
            Error::NotARepresentation(_) => "not-a-representation",
            Error::OutsideBall(_) => "outside-ball",
            Error::NotBloch(_) => "not-bloch",
            Error::DegenerateSpectrum(_) => "degenerate-spectrum",
            Error::NotJUnitary(_) => "not-j-unitary",
            Error::InvalidJDensity(_) => "invalid-j-density",
            Error::InvalidStep(_) => "invalid-step",
            Error::OutOfRange(_) => "out-of-range",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
