use std::fmt;

use thiserror::Error;

use crate::types::{SpectrumMode, Violation};

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Named existence conditions for a pair of spectra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Condition {
    /// a) interlacing with the boundary ordering.
    #[serde(rename = "a")]
    Interlacing,
    /// b) finiteness of `Δ`.
    #[serde(rename = "b")]
    DeltaFinite,
    /// c) finiteness of the moments.
    #[serde(rename = "c")]
    Moments,
    /// d) density of polynomials.
    #[serde(rename = "d")]
    Density,
    /// Positivity of all `τ_n`.
    #[serde(rename = "tau")]
    TauPositive,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::Interlacing => "a) interlacing",
            Condition::DeltaFinite => "b) finite Δ",
            Condition::Moments => "c) finite moments",
            Condition::Density => "d) density of polynomials",
            Condition::TauPositive => "τ positivity",
        })
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Jacobi matrix: {}", join(.0))]
    InvalidMatrix(Vec<Violation>),
    #[error("invalid spectra: {}", join(.0))]
    InvalidSpectra(Vec<Violation>),
    #[error("invalid spectral measure: {}", join(.0))]
    InvalidMeasure(Vec<Violation>),
    #[error("matrix dimension {n} is too small for this operation")]
    DimensionTooSmall { n: usize },
    #[error("bisection for eigenvalue {index} did not converge")]
    ConvergenceFailure { index: usize },
    #[error("evaluation point lies within {distance:e} of a pole")]
    PoleProximity { distance: f64 },
    #[error("division by zero: {0}")]
    DivisionByZero(&'static str),
    #[error("operation requires {expected} spectra, got {found}")]
    WrongMode {
        expected: SpectrumMode,
        found: SpectrumMode,
    },
    #[error("condition a) indeterminate: gap {gap:e} between spectral points is below ε_sep = {threshold:e}")]
    IndeterminateInterlacing { gap: f64, threshold: f64 },
    #[error("condition {condition} violated: {detail}")]
    ConditionFailed { condition: Condition, detail: String },
    #[error("τ_{index} is not positive ({value:e}); spectra ordering is inconsistent")]
    NonPositiveTau { index: usize, value: f64 },
    #[error("weights sum to {sum}, not 1")]
    NormalizationFailure { sum: f64 },
    #[error("ill-conditioned asymptotic fit: {0}")]
    IllConditionedFit(String),
    #[error("round-trip spectral residual {residual:e} exceeds tolerance {tol:e}")]
    SpectrumMismatch { residual: f64, tol: f64 },
    #[error("recurrence breakdown at step {index}: b² = {value:e}")]
    BreakdownBelowTolerance { index: usize, value: f64 },
    #[error("moment recursion blew up at step {step} (magnitude {magnitude:e})")]
    NumericalBlowup { step: usize, magnitude: f64 },
    #[error("depth {depth} outside 1..={max}")]
    DepthOutOfRange { depth: usize, max: usize },
    #[error("index {index} outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("rank-one recovery needs h₁")]
    MissingBoundaryParam,
    #[error("Dirichlet–Neumann recovery takes no boundary parameter")]
    UnexpectedBoundaryParam,
}

impl Error {
    /// The existence condition this error is about, if any.
    pub fn condition(&self) -> Option<Condition> {
        match self {
            Error::IndeterminateInterlacing { .. } => Some(Condition::Interlacing),
            Error::ConditionFailed { condition, .. } => Some(*condition),
            Error::NonPositiveTau { .. } => Some(Condition::TauPositive),
            _ => None,
        }
    }
}

fn join(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}
