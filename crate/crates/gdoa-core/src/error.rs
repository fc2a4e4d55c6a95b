//! Error type shared by all modules.

use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Rejected at construction or request validation.
    InvalidParameter(String),
    /// A negative base raised to a non-integer power.
    ComplexResult { base: f64, exponent: f64 },
    /// Recurrence-only structure function evaluated off the integer lattice.
    NonLatticeArgument { x: f64 },
    /// |F| exceeded the overflow threshold during recurrence evaluation.
    DivergenceGuard { magnitude: f64 },
    /// A user-supplied evaluator reported failure.
    EvaluationFailure(String),
    /// Some |λₙ| fell between zero_tol and 10·zero_tol; the zero/nonzero
    /// decision is tolerance-sensitive and is not guessed.
    AmbiguousZero { n: i64, value: f64 },
    /// Operation applied to a classification of the wrong class.
    WrongClass { expected: &'static str, got: &'static str },
    /// The two FD Casimir evaluations disagree.
    InconsistentCasimir { c_low: f64, c_high: f64 },
    /// Classifier and matrix builder disagree about positivity.
    NegativeLambdaUnderRoot { n: i64, value: f64 },
    /// Exact-arithmetic path hit a non-rational quantity.
    NonRationalStep(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::ComplexResult { base, exponent } => {
                write!(f, "complex result: {base}^{exponent} is not real")
            }
            Error::NonLatticeArgument { x } => {
                write!(f, "structure function defined only on the integer lattice, got x = {x}")
            }
            Error::DivergenceGuard { magnitude } => {
                write!(f, "recurrence diverged: |F| reached {magnitude:e}")
            }
            Error::EvaluationFailure(msg) => write!(f, "evaluation failure: {msg}"),
            Error::AmbiguousZero { n, value } => {
                write!(f, "ambiguous zero: |lambda_{n}| = {value:e} lies in the tolerance band")
            }
            Error::WrongClass { expected, got } => {
                write!(f, "wrong class: expected {expected}, got {got}")
            }
            Error::InconsistentCasimir { c_low, c_high } => {
                write!(f, "inconsistent Casimir evaluations: {c_low} vs {c_high}")
            }
            Error::NegativeLambdaUnderRoot { n, value } => {
                write!(f, "negative lambda_{n} = {value} under square root")
            }
            Error::NonRationalStep(msg) => write!(f, "non-rational step: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

impl Error {
    /// Stable machine-readable code, used by the CLI error objects.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::ComplexResult { .. } => "ComplexResult",
            Error::NonLatticeArgument { .. } => "NonLatticeArgument",
            Error::DivergenceGuard { .. } => "DivergenceGuard",
            Error::EvaluationFailure(_) => "EvaluationFailure",
            Error::AmbiguousZero { .. } => "AmbiguousZero",
            Error::WrongClass { .. } => "WrongClass",
            Error::InconsistentCasimir { .. } => "InconsistentCasimir",
            Error::NegativeLambdaUnderRoot { .. } => "NegativeLambdaUnderRoot",
            Error::NonRationalStep(_) => "NonRationalStep",
        }
    }
}
