//! Domain types shared by every module. Types are immutable once built and
//! every constructor rejects data that violates its invariants; the
//! [`Validate`] trait reports the same checks on unvalidated data.

mod matrix;
mod measure;
mod mfunction;
mod spectra;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use matrix::{JacobiMatrix, MatrixData};
pub use measure::{AtomData, MeasureData, SpectralMeasure};
pub use mfunction::{MFunctionProduct, ProductKind};
pub use spectra::{InterlacedSpectra, SpectraData, SpectrumMode};

/// Report-only invariant checking. An empty list means valid.
pub trait Validate {
    fn validate(&self) -> Vec<Violation>;
}

/// A single violated invariant. Indices are 1-based.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    EmptyMatrix,
    DimensionMismatch { n: usize, q_len: usize, b_len: usize },
    NonFinite { field: &'static str, index: usize },
    NonPositiveOffDiagonal { index: usize, value: f64 },
    EmptySpectrum,
    SpectraLength { mode: SpectrumMode, lambdas: usize, mus: usize },
    GapBelowSeparation { gap: f64, threshold: f64 },
    NotInterlaced(String),
    EmptyMeasure,
    NonPositiveWeight { index: usize, value: f64 },
    DuplicateAtom { location: f64 },
    WeightSum { sum: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyMatrix => write!(f, "matrix has dimension 0"),
            Violation::DimensionMismatch { n, q_len, b_len } => {
                write!(f, "n = {n} needs n diagonal and n−1 off-diagonal entries, got {q_len} and {b_len}")
            }
            Violation::NonFinite { field, index } => write!(f, "{field}_{index} not finite"),
            Violation::NonPositiveOffDiagonal { index, .. } => write!(f, "b_{index} not positive"),
            Violation::EmptySpectrum => write!(f, "lambdas is empty"),
            Violation::SpectraLength { mode, lambdas, mus } => {
                let want = mode.mus_len(*lambdas);
                write!(f, "{mode} mode with {lambdas} lambdas needs {want} mus, got {mus}")
            }
            Violation::GapBelowSeparation { gap, threshold } => {
                write!(f, "gap {gap:e} between spectral points below ε_sep = {threshold:e}")
            }
            Violation::NotInterlaced(detail) => write!(f, "not interlaced: {detail}"),
            Violation::EmptyMeasure => write!(f, "measure has no atoms"),
            Violation::NonPositiveWeight { index, .. } => write!(f, "w_{index} not positive"),
            Violation::DuplicateAtom { location } => write!(f, "duplicate atom at {location}"),
            Violation::WeightSum { sum } => write!(f, "weights sum {sum} ≠ 1"),
        }
    }
}

/// Boundary condition at the origin: a finite coupling `h` or the
/// Neumann-type `h = +∞` (first row and column removed).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryParam<T> {
    Finite(T),
    NeumannInfinity,
}

impl<T: Copy> BoundaryParam<T> {
    pub fn finite(&self) -> Option<T> {
        match self {
            BoundaryParam::Finite(h) => Some(*h),
            BoundaryParam::NeumannInfinity => None,
        }
    }
}

/// Output of two-spectra recovery.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "T: crate::Scalar + Serialize",
    deserialize = "T: crate::Scalar + Deserialize<'de>"
))]
pub struct ReconstructionResult<T> {
    pub matrix: JacobiMatrix<T>,
    /// `h₂` in rank-one mode; `None` in Dirichlet–Neumann mode.
    pub recovered_param: Option<BoundaryParam<T>>,
    /// `Δ = Σ(μ_k − λ_k) = h₂ − h₁`; `None` in Dirichlet–Neumann mode.
    pub delta: Option<T>,
    /// Named residuals of the round-trip checks.
    pub diagnostics: BTreeMap<String, T>,
}
