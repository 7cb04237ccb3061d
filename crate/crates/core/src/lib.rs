//! Two-spectra inverse problem for finite Jacobi matrices.
//!
//! Given the spectra of a Jacobi matrix under two boundary conditions at the
//! first site, either two rank-one couplings `J_h = J − h e₁e₁ᵀ` with
//! `h₁ < h₂` or the pair `J` / `J_∞` (first row and column removed), the
//! [`inverse`] module rebuilds the matrix and the missing coupling and
//! checks whether a pair of point sets can be such spectra at all. The
//! [`forward`] module computes spectra, orthogonal polynomials, normalizing
//! constants and Weyl m-functions, and is the oracle the inverse maps are
//! tested against.
//!
//! All algorithms are generic over [`Scalar`] (`f32`, `f64`); the `*64`
//! aliases below fix the usual double-precision case.

pub mod error;
pub mod forward;
pub mod generate;
pub mod inverse;
pub mod json;
pub mod reconstruct;
pub mod scalar;
pub mod types;

pub use error::{Condition, Error, Result};
pub use scalar::Scalar;
pub use types::{
    BoundaryParam, InterlacedSpectra, JacobiMatrix, MFunctionProduct, ReconstructionResult, SpectraData,
    SpectralMeasure, SpectrumMode, Validate, Violation,
};

pub type JacobiMatrix64 = JacobiMatrix<f64>;
pub type InterlacedSpectra64 = InterlacedSpectra<f64>;
pub type SpectralMeasure64 = SpectralMeasure<f64>;
pub type MFunctionProduct64 = MFunctionProduct<f64>;
pub type ReconstructionResult64 = ReconstructionResult<f64>;
pub type BoundaryParam64 = BoundaryParam<f64>;

pub type JacobiMatrix32 = JacobiMatrix<f32>;
pub type InterlacedSpectra32 = InterlacedSpectra<f32>;
pub type SpectralMeasure32 = SpectralMeasure<f32>;
