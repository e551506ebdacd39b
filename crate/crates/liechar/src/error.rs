//! Error type shared by the whole crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported algebra: {0}")]
    UnsupportedAlgebra(String),

    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i32>),

    #[error("Laurent division is not exact")]
    NonExactDivision,

    #[error("polynomial is not invariant under the Weyl group")]
    NotWeylInvariant,

    #[error("rewrite did not terminate after {0} steps (invariant violation)")]
    NonTermination(usize),

    #[error("negative multiplicity {mult} at weight {weight:?} while decomposing")]
    NegativeMultiplicity { weight: Vec<i32>, mult: String },

    #[error("half-integer coefficient while building a_{j},{k} (normalization bug)")]
    HalfIntegerCoefficient { j: usize, k: usize },

    #[error("resonant denominator: eigenvalues coincide at {m:?} and {lower:?}")]
    ResonantDenominator { m: Vec<i32>, lower: Vec<i32> },

    #[error("non-integer coefficient {value} at z^{expo:?} in character of {m:?}")]
    NonIntegerCoefficient {
        m: Vec<i32>,
        expo: Vec<i32>,
        value: String,
    },

    #[error("dimension numerator does not terminate inside the degree box")]
    DegreeOverflow,

    #[error("inconsistent system: residual {residual} at t^{expo:?} while solving the numerator")]
    InconsistentSystem { expo: Vec<i32>, residual: String },

    #[error("numerator solve exceeds the full-box cap ({0} unknowns); aborting")]
    SolveTooLarge(usize),

    #[error("invalid direction {0:?}: expected a 0/1 vector with at least one 1")]
    InvalidDirection(Vec<i32>),

    #[error("malformed JSON payload: {0}")]
    Json(String),

    #[error("schema version mismatch: found {found}, expected {expected}")]
    SchemaVersion { found: u32, expected: u32 },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
