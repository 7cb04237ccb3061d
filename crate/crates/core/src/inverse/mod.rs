//! Inverse maps: from two interlaced spectra (and `h₁` for rank-one
//! couplings) to the spectral measure, the Jacobi matrix and the missing
//! boundary parameter.
//!
//! In rank-one mode `λ = σ(J_{h₂})` and `μ = σ(J_{h₁})` with `h₁ < h₂`;
//! raising the coupling lowers every eigenvalue, so `λ_k < μ_k`. Callers
//! holding spectra for `h₂ < h₁` swap the lists and the roles of `h₁, h₂`.

mod conditions;
mod mfrak;
mod tau;

use std::collections::BTreeMap;

pub use conditions::{check_conditions, ConditionReport, Verdict, MOMENT_ROWS};
pub use mfrak::{fit_radius, mfrak_fit, mfrak_product, mfrak_samples};
pub use tau::{build_measure, delta, tau_dirichlet_neumann, tau_rank_one};

use crate::error::{Error, Result};
use crate::forward::{eigenvalues, perturb, truncate_first};
use crate::reconstruct::stieltjes_lanczos;
use crate::scalar::{compensated_sum, Scalar};
use crate::types::{BoundaryParam, InterlacedSpectra, JacobiMatrix, ReconstructionResult, SpectrumMode};

pub const DIAG_LAMBDA_RESIDUAL: &str = "lambda_residual";
pub const DIAG_MU_RESIDUAL: &str = "mu_residual";
pub const DIAG_WEIGHT_SUM_ERROR: &str = "weight_sum_error";
pub const DIAG_FIT_H2_DEVIATION: &str = "fit_h2_deviation";
pub const DIAG_TOL_SPEC: &str = "tol_spec";

/// `tol_spec = TOL_SPEC_REL · (1 + spread)`.
pub fn spectral_tolerance<T: Scalar>(s: &InterlacedSpectra<T>) -> T {
    T::lit(T::TOL_SPEC_REL) * (T::one() + s.spread())
}

/// [`recover_scaled`] with the default tolerance.
pub fn recover<T: Scalar>(s: &InterlacedSpectra<T>, h1: Option<T>) -> Result<ReconstructionResult<T>> {
    recover_scaled(s, h1, T::one())
}

/// Rebuilds the Jacobi matrix whose spectra under the boundary pair of
/// `s.mode()` are `s`, and verifies it by recomputing both spectra.
///
/// Rank-one (`h1` required): `h₂ = h₁ + Δ`, the measure of `J_{h₂}` comes
/// from the τ products, the Stieltjes procedure yields `J_{h₂}`, and `q_1`
/// is shifted back by `h₂`. Dirichlet–Neumann (`h1` must be `None`): the
/// measure of `J` itself comes from the residues of `m`.
///
/// Fails with [`Error::SpectrumMismatch`] when a recomputed spectrum
/// differs from the input by more than `tol_scale · tol_spec`.
pub fn recover_scaled<T: Scalar>(
    s: &InterlacedSpectra<T>,
    h1: Option<T>,
    tol_scale: T,
) -> Result<ReconstructionResult<T>> {
    let tol = spectral_tolerance(s) * tol_scale;
    let mut diagnostics = BTreeMap::new();
    diagnostics.insert(DIAG_TOL_SPEC.to_string(), tol);
    match (s.mode(), h1) {
        (SpectrumMode::RankOne, None) => Err(Error::MissingBoundaryParam),
        (SpectrumMode::DirichletNeumann, Some(_)) => Err(Error::UnexpectedBoundaryParam),
        (SpectrumMode::RankOne, Some(h1)) => {
            let d = delta(s)?;
            let h2 = h1 + d;
            let taus = tau_rank_one(s, d)?;
            let rho = build_measure(s.lambdas(), &taus)?;
            diagnostics.insert(DIAG_WEIGHT_SUM_ERROR.into(), weight_sum_error(rho.weights()));
            let j_h2 = stieltjes_lanczos(&rho)?;
            let j = perturb(&j_h2, -h2);

            let lam_res = max_deviation(&eigenvalues(&perturb(&j, h2))?, s.lambdas());
            let mu_res = max_deviation(&eigenvalues(&perturb(&j, h1))?, s.mus());
            diagnostics.insert(DIAG_LAMBDA_RESIDUAL.into(), lam_res);
            diagnostics.insert(DIAG_MU_RESIDUAL.into(), mu_res);
            if let Ok(fit_h2) = fitted_h2(s, h1) {
                diagnostics.insert(DIAG_FIT_H2_DEVIATION.into(), (fit_h2 - h2).abs());
            }
            check_residual(lam_res.max(mu_res), tol)?;
            Ok(ReconstructionResult {
                matrix: j,
                recovered_param: Some(BoundaryParam::Finite(h2)),
                delta: Some(d),
                diagnostics,
            })
        }
        (SpectrumMode::DirichletNeumann, None) => {
            let taus = tau_dirichlet_neumann(s)?;
            let rho = build_measure(s.lambdas(), &taus)?;
            diagnostics.insert(DIAG_WEIGHT_SUM_ERROR.into(), weight_sum_error(rho.weights()));
            let j = stieltjes_lanczos(&rho)?;
            let lam_res = max_deviation(&eigenvalues(&j)?, s.lambdas());
            let mu_res = if j.n() > 1 {
                max_deviation(&eigenvalues(&truncate_first(&j)?)?, s.mus())
            } else {
                T::zero()
            };
            diagnostics.insert(DIAG_LAMBDA_RESIDUAL.into(), lam_res);
            diagnostics.insert(DIAG_MU_RESIDUAL.into(), mu_res);
            check_residual(lam_res.max(mu_res), tol)?;
            Ok(ReconstructionResult {
                matrix: j,
                recovered_param: None,
                delta: None,
                diagnostics,
            })
        }
    }
}

/// `h₂` from the `ζ⁻¹` coefficient of the asymptotic fit of `𝔪`, independent
/// of [`delta`].
pub fn fitted_h2<T: Scalar>(s: &InterlacedSpectra<T>, h1: T) -> Result<T> {
    let p = mfrak_product(s);
    let samples = mfrak_samples(&p, fit_radius(s), 8)?;
    let (h1_minus_h2, _) = mfrak_fit(&samples)?;
    Ok(h1 - h1_minus_h2)
}

/// Recovers `J` from rank-one spectra when `q_1` is known instead of `h₁`:
/// the fit gives `h₁ − h₂` and `q₁ − h₂`, hence `h₂` and `h₁`.
pub fn recover_from_q1<T: Scalar>(s: &InterlacedSpectra<T>, q1: T) -> Result<(JacobiMatrix<T>, T, T)> {
    let p = mfrak_product(s);
    let samples = mfrak_samples(&p, fit_radius(s), 8)?;
    let (h1_minus_h2, q1_minus_h2) = mfrak_fit(&samples)?;
    let h2 = q1 - q1_minus_h2;
    let h1 = h2 + h1_minus_h2;
    let r = recover(s, Some(h1))?;
    Ok((r.matrix, h1, h2))
}

fn weight_sum_error<T: Scalar>(w: &[T]) -> T {
    (compensated_sum(w.iter().copied()) - T::one()).abs()
}

fn max_deviation<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .map(|(x, y)| (*x - *y).abs())
        .fold(T::zero(), T::max)
}

fn check_residual<T: Scalar>(residual: T, tol: T) -> Result<()> {
    if !(residual <= tol) {
        return Err(Error::SpectrumMismatch {
            residual: residual.as_f64(),
            tol: tol.as_f64(),
        });
    }
    Ok(())
}
