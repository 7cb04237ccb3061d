use crate::error::{Error, Result};
use crate::scalar::{compensated_sum, Scalar};
use crate::types::{InterlacedSpectra, SpectralMeasure, SpectrumMode};

/// Product of `(z_k − x)/(p_k − x)` kept as `(Σ ln|·|, sign)`.
///
/// Each factor is formed as `1 + (z_k − p_k)/(p_k − x)` so that factors far
/// from `x` stay accurate near one.
#[derive(Debug, Clone, Copy)]
struct LogProduct<T> {
    log_abs: T,
    negative: bool,
}

impl<T: Scalar> LogProduct<T> {
    fn one() -> Self {
        Self {
            log_abs: T::zero(),
            negative: false,
        }
    }

    fn times_value(mut self, v: T) -> Self {
        self.log_abs = self.log_abs + v.abs().ln();
        self.negative ^= v < T::zero();
        self
    }

    fn times_ratio(mut self, zero: T, pole: T, x: T) -> Self {
        let t = (zero - pole) / (pole - x);
        if t > -T::one() {
            self.log_abs = self.log_abs + t.ln_1p();
        } else {
            self.log_abs = self.log_abs + (T::one() + t).abs().ln();
            self.negative = !self.negative;
        }
        self
    }

    fn into_positive(self, index: usize) -> Result<T> {
        let v = self.log_abs.exp();
        if self.negative || !(v > T::zero()) || !v.is_finite() {
            let signed = if self.negative { -v } else { v };
            return Err(Error::NonPositiveTau {
                index,
                value: signed.as_f64(),
            });
        }
        Ok(v)
    }
}

fn require_mode<T: Scalar>(s: &InterlacedSpectra<T>, mode: SpectrumMode) -> Result<()> {
    if s.mode() != mode {
        return Err(Error::WrongMode {
            expected: mode,
            found: s.mode(),
        });
    }
    Ok(())
}

/// `Δ = Σ (μ_k − λ_k)`, which equals `h₂ − h₁`.
pub fn delta<T: Scalar>(s: &InterlacedSpectra<T>) -> Result<T> {
    require_mode(s, SpectrumMode::RankOne)?;
    Ok(compensated_sum(
        s.mus().iter().zip(s.lambdas()).map(|(&m, &l)| m - l),
    ))
}

/// Reciprocal weights for rank-one spectra:
/// `τ_n⁻¹ = (μ_n − λ_n)/Δ · Π_{k≠n} (μ_k − λ_n)/(λ_k − λ_n)`.
pub fn tau_rank_one<T: Scalar>(s: &InterlacedSpectra<T>, delta: T) -> Result<Vec<T>> {
    require_mode(s, SpectrumMode::RankOne)?;
    let (lambdas, mus) = (s.lambdas(), s.mus());
    (0..lambdas.len())
        .map(|n| {
            let x = lambdas[n];
            let mut p = LogProduct::one()
                .times_value(mus[n] - x)
                .times_value(delta.recip());
            for k in (0..lambdas.len()).filter(|&k| k != n) {
                p = p.times_ratio(mus[k], lambdas[k], x);
            }
            // τ = 1/p
            let mut inv = p;
            inv.log_abs = -inv.log_abs;
            inv.into_positive(n + 1)
        })
        .collect()
}

/// Reciprocal weights for Dirichlet–Neumann spectra, from the residues of
/// `m(ζ) = Π_{k<N}(μ_k − ζ)/Π_{k≤N}(λ_k − ζ)`:
/// `τ_n⁻¹ = Π_k (μ_k − λ_n) / Π_{k≠n} (λ_k − λ_n)`.
///
/// `μ_k` is paired with `λ_k` below `n` and with `λ_{k+1}` from `n` on, so
/// every factor lies in `(0, 1)` for interlaced input; a negative product
/// is reported as [`Error::NonPositiveTau`].
pub fn tau_dirichlet_neumann<T: Scalar>(s: &InterlacedSpectra<T>) -> Result<Vec<T>> {
    require_mode(s, SpectrumMode::DirichletNeumann)?;
    let (lambdas, mus) = (s.lambdas(), s.mus());
    (0..lambdas.len())
        .map(|n| {
            let x = lambdas[n];
            let mut p = LogProduct::one();
            for (k, &m) in mus.iter().enumerate() {
                let pole = if k < n { lambdas[k] } else { lambdas[k + 1] };
                p = p.times_ratio(m, pole, x);
            }
            let mut inv = p;
            inv.log_abs = -inv.log_abs;
            inv.into_positive(n + 1)
        })
        .collect()
}

/// `ρ = Σ τ_k⁻¹ δ_{λ_k}`; fails unless `|Σ τ⁻¹ − 1| ≤ TOL_NORM`.
pub fn build_measure<T: Scalar>(lambdas: &[T], taus: &[T]) -> Result<SpectralMeasure<T>> {
    if lambdas.len() != taus.len() {
        return Err(Error::LengthMismatch(format!(
            "{} locations but {} normalizing constants",
            lambdas.len(),
            taus.len()
        )));
    }
    if let Some(k) = taus.iter().position(|t| !(*t > T::zero())) {
        return Err(Error::NonPositiveTau {
            index: k + 1,
            value: taus[k].as_f64(),
        });
    }
    let weights: Vec<T> = taus.iter().map(|t| t.recip()).collect();
    let sum = compensated_sum(weights.iter().copied());
    if (sum - T::one()).abs() > T::lit(T::TOL_NORM) {
        return Err(Error::NormalizationFailure { sum: sum.as_f64() });
    }
    SpectralMeasure::new(lambdas.iter().copied().zip(weights))
}
