use num_complex::Complex64;
use thiserror::Error;

use crate::dsl::ParseError;
use crate::grassmann::GeneratorId;

/// Errors raised by the algebra, state, and analysis layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("mode index {0} outside 1..={max}", max = crate::grassmann::MAX_MODES)]
    InvalidMode(u32),

    #[error("measure lists {0} more than once")]
    RepeatedMeasureFactor(GeneratorId),

    #[error("exp_nilpotent needs a zero body, found {0}")]
    NonzeroBody(Complex64),

    #[error("qubit count mismatch: {left} vs {right}")]
    QubitCountMismatch { left: usize, right: usize },

    #[error("slot {slot} out of range for a {qubits}-qubit state")]
    SlotOutOfRange { slot: usize, qubits: usize },

    #[error("integration left Grassmann content of degree {degree} on ket {ket}; the measure does not cover the integrand")]
    ResidualGrassmann { ket: String, degree: usize },

    #[error("expected a {expected}-qubit state, found {found} qubits")]
    WrongQubitCount { expected: usize, found: usize },

    #[error("qubit count {0} unsupported (allowed {1})")]
    UnsupportedQubitCount(usize, &'static str),

    #[error("state has zero norm")]
    ZeroState,

    #[error("invalid bipartition: {0}")]
    InvalidPartition(String),

    #[error("superposition is degenerate (normalization {0:.3e})")]
    DegenerateSuperposition(f64),

    #[error("the four-term coherent state vanishes identically")]
    VanishingState,

    #[error("maximality conditions need a nonzero base amplitude")]
    ZeroAlpha,

    #[error("document has no `{0}` section")]
    MissingSection(&'static str),

    #[error("cannot evaluate document: {0}")]
    Evaluation(String),

    #[error("no corpus case matches `{0}`")]
    NoCaseMatches(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
