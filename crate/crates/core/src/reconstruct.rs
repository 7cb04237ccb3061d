//! Measure-to-matrix engines.
//!
//! [`stieltjes_lanczos`] orthonormalizes the powers of `t` in `L₂(ρ)` via
//! the discrete Stieltjes procedure (Lanczos on `diag(λ)` started from
//! `√w`), which is the primary route. [`ricatti_reconstruct`] strips
//! coefficients from the moment expansion of `m` and serves as an
//! independent cross-check on short prefixes.

use num_traits::{Float, One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{compensated_sum, Scalar};
use crate::types::{JacobiMatrix, SpectralMeasure};

/// Largest depth accepted by [`ricatti_reconstruct`]. Hankel conditioning
/// grows exponentially with depth.
pub const RICATTI_DEPTH_CAP: usize = 10;

/// Recurrence norm that came close to breakdown without crossing it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NearBreakdown {
    /// 1-based index of `b_k`.
    pub index: usize,
    pub b_squared: f64,
}

/// Jacobi matrix whose `e₁` spectral measure is `ρ`.
pub fn stieltjes_lanczos<T: Scalar>(rho: &SpectralMeasure<T>) -> Result<JacobiMatrix<T>> {
    stieltjes_lanczos_report(rho).map(|(j, _)| j)
}

/// [`stieltjes_lanczos`] plus the list of steps whose `b_k²` fell below
/// `NEAR_BREAKDOWN`.
///
/// Step k computes `q_k = ⟨t p_{k−1}, p_{k−1}⟩`, forms the residual
/// `(t − q_k)p_{k−1} − b_{k−1}p_{k−2}`, reorthogonalizes it twice against
/// every earlier `p_j`, and takes `b_k` as its norm. `b_k² ≤ BREAKDOWN`
/// means two atoms coincide numerically and is an error.
pub fn stieltjes_lanczos_report<T: Scalar>(
    rho: &SpectralMeasure<T>,
) -> Result<(JacobiMatrix<T>, Vec<NearBreakdown>)> {
    let x = rho.locations();
    let n = x.len();
    let mut v: Vec<T> = rho.weights().iter().map(|w| w.sqrt()).collect();
    let norm = v.iter().map(|a| *a * *a).sum::<T>().sqrt();
    v.iter_mut().for_each(|a| *a = *a / norm);

    let mut basis: Vec<Vec<T>> = Vec::with_capacity(n);
    let mut q = Vec::with_capacity(n);
    let mut b: Vec<T> = Vec::with_capacity(n.saturating_sub(1));
    let mut warnings = Vec::new();

    for k in 0..n {
        let a = compensated_sum(x.iter().zip(&v).map(|(&xi, &vi)| xi * vi * vi));
        q.push(a);
        if k + 1 == n {
            basis.push(v);
            break;
        }
        let mut r: Vec<T> = x.iter().zip(&v).map(|(&xi, &vi)| (xi - a) * vi).collect();
        if let (Some(prev), Some(&bp)) = (basis.last(), b.last()) {
            r.iter_mut().zip(prev).for_each(|(ri, pi)| *ri = *ri - bp * *pi);
        }
        basis.push(v);
        for _ in 0..2 {
            for u in &basis {
                let c: T = u.iter().zip(&r).map(|(a, b)| *a * *b).sum();
                r.iter_mut().zip(u).for_each(|(ri, ui)| *ri = *ri - c * *ui);
            }
        }
        let b2: T = r.iter().map(|a| *a * *a).sum();
        if b2 <= T::lit(T::BREAKDOWN) {
            return Err(Error::BreakdownBelowTolerance {
                index: k + 1,
                value: b2.as_f64(),
            });
        }
        if b2 < T::lit(T::NEAR_BREAKDOWN) {
            warnings.push(NearBreakdown {
                index: k + 1,
                b_squared: b2.as_f64(),
            });
        }
        let beta = b2.sqrt();
        b.push(beta);
        v = r.into_iter().map(|ri| ri / beta).collect();
    }
    Ok((JacobiMatrix::from_parts_unchecked(q, b), warnings))
}

/// `s_m = Σ w_k λ_k^m` for `m = 0..=m_max`.
pub fn moments<T: Scalar>(rho: &SpectralMeasure<T>, m_max: usize) -> Vec<T> {
    let mut powers: Vec<T> = rho.weights().to_vec();
    let mut out = Vec::with_capacity(m_max + 1);
    for _ in 0..=m_max {
        out.push(compensated_sum(powers.iter().copied()));
        powers
            .iter_mut()
            .zip(rho.locations())
            .for_each(|(p, &x)| *p = *p * x);
    }
    out
}

/// First `depth` rows of the Jacobi matrix of `ρ`, from the Ricatti
/// equation `b_n² m⁽ⁿ⁾(ζ) = q_n − ζ − 1/m⁽ⁿ⁻¹⁾(ζ)` read as power series in
/// `1/ζ`.
///
/// Writing `m⁽ⁿ⁻¹⁾ = −Σ_k s_k ζ^{−k−1}` with `s_0 = 1` and
/// `1/S(w) = Σ t_k w^k` for `S(w) = Σ s_k w^k`, the right-hand side is
/// `(q_n + t_1) + t_2/ζ + t_3/ζ² + …`. Decay of the left-hand side forces
/// `q_n = −t_1 = s_1`; matching the `1/ζ` term gives `b_n² = −t_2 =
/// s_2 − s_1²`, and the moments of `m⁽ⁿ⁾` are `−t_{k+2}/b_n²`.
///
/// The measure is first mapped affinely onto `[−1, 1]` around its mean and
/// the coefficients are mapped back, which keeps the moments of order one.
/// Moments and series run in `T::Wide`: the reciprocal series cancels
/// about as many digits as the Hankel matrix is ill-conditioned.
pub fn ricatti_reconstruct<T: Scalar>(rho: &SpectralMeasure<T>, depth: usize) -> Result<JacobiMatrix<T>> {
    let max = rho.len().min(RICATTI_DEPTH_CAP);
    if depth == 0 || depth > max {
        return Err(Error::DepthOutOfRange { depth, max });
    }
    let wide = |x: T| T::Wide::from(x);
    let center = rho
        .atoms()
        .fold(T::Wide::zero(), |acc, (x, w)| acc + wide(w) * wide(x));
    let scale = rho
        .locations()
        .iter()
        .fold(T::Wide::zero(), |acc, &x| acc.max((wide(x) - center).abs()));
    let scale = if scale > T::Wide::zero() { scale } else { T::Wide::one() };

    let mut s = vec![T::Wide::zero(); 2 * depth];
    for (x, w) in rho.atoms() {
        let y = (wide(x) - center) / scale;
        let mut p = wide(w);
        for sk in s.iter_mut() {
            *sk = *sk + p;
            p = p * y;
        }
    }

    let blowup = wide(T::lit(T::BLOWUP));
    let breakdown = wide(T::lit(T::BREAKDOWN));
    let mut q = Vec::with_capacity(depth);
    let mut b = Vec::with_capacity(depth - 1);
    for step in 1..=depth {
        let s0 = s[0];
        s.iter_mut().for_each(|x| *x = *x / s0);
        q.push(T::narrow(center + scale * s[1]));
        if step == depth {
            break;
        }
        // series reciprocal of S
        let len = s.len();
        let mut t = vec![T::Wide::zero(); len];
        t[0] = T::Wide::one();
        for k in 1..len {
            let acc = (1..=k).fold(T::Wide::zero(), |acc, j| acc + s[j] * t[k - j]);
            t[k] = -acc;
            if t[k].abs() > blowup {
                return Err(Error::NumericalBlowup {
                    step,
                    magnitude: T::narrow(t[k].abs()).as_f64(),
                });
            }
        }
        let b2 = -t[2];
        if b2 * scale * scale <= breakdown {
            return Err(Error::BreakdownBelowTolerance {
                index: step,
                value: T::narrow(b2 * scale * scale).as_f64(),
            });
        }
        b.push(T::narrow(scale * b2.sqrt()));
        s = t[2..].iter().map(|&tk| -tk / b2).collect();
        if let Some(big) = s.iter().map(|x| x.abs()).find(|x| *x > blowup) {
            return Err(Error::NumericalBlowup {
                step,
                magnitude: T::narrow(big).as_f64(),
            });
        }
    }
    Ok(JacobiMatrix::from_parts_unchecked(q, b))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrossValidation<T> {
    /// Number of diagonal entries compared.
    pub compared: usize,
    pub max_deviation: T,
    pub tol: T,
    pub pass: bool,
}

/// Compares `prefix` against the leading block of `full`.
pub fn cross_validate<T: Scalar>(
    full: &JacobiMatrix<T>,
    prefix: &JacobiMatrix<T>,
    tol: T,
) -> Result<CrossValidation<T>> {
    if prefix.n() > full.n() {
        return Err(Error::LengthMismatch(format!(
            "prefix of size {} longer than matrix of size {}",
            prefix.n(),
            full.n()
        )));
    }
    let dev = full.max_abs_diff(prefix);
    Ok(CrossValidation {
        compared: prefix.n(),
        max_deviation: dev,
        tol,
        pass: dev <= tol,
    })
}
