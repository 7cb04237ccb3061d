//! Forward spectral theory of a finite Jacobi matrix: spectra under
//! boundary couplings, orthogonal polynomials of both kinds, normalizing
//! constants, Weyl m-functions and their large-`ζ` behavior.
//!
//! Everything here is the oracle the inverse maps are tested against.

mod eigen;

use std::ops::{Div, Mul};

use num_complex::Complex;
use num_traits::Num;

pub use eigen::{eigenvalues, eigenvector, sturm_count};

use crate::error::{Error, Result};
use crate::scalar::{separation_floor, Scalar};
use crate::types::{JacobiMatrix, SpectralMeasure};

/// `J_h = J − h⟨·,e₁⟩e₁`: `q_1` becomes `q_1 − h`.
pub fn perturb<T: Scalar>(j: &JacobiMatrix<T>, h: T) -> JacobiMatrix<T> {
    let mut q = j.diagonal().to_vec();
    q[0] = q[0] - h;
    JacobiMatrix::from_parts_unchecked(q, j.off_diagonal().to_vec())
}

/// Matrix of `J_∞`: first row and column removed.
pub fn truncate_first<T: Scalar>(j: &JacobiMatrix<T>) -> Result<JacobiMatrix<T>> {
    if j.n() < 2 {
        return Err(Error::DimensionTooSmall { n: j.n() });
    }
    Ok(JacobiMatrix::from_parts_unchecked(
        j.diagonal()[1..].to_vec(),
        j.off_diagonal()[1..].to_vec(),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolynomialKind {
    /// `P_k`: `f_1 = 1`.
    First,
    /// `Q_k`: `f_1 = 0`, `f_2 = 1/b_1`.
    Second,
}

/// Values `[P_0(ζ), …, P_{n−1}(ζ)]` (or `Q`) at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialTable<V> {
    pub values: Vec<V>,
    pub kind: PolynomialKind,
}

/// Runs `b_{k−1}f_{k−1} + q_k f_k + b_k f_{k+1} = ζ f_k` forward from the
/// initial conditions of `kind`, for real (`V = T`) or complex
/// (`V = Complex<T>`) `ζ`.
///
/// Only `b_1..b_{n−1}` are used, so the table stops at index `n − 1`. The
/// forward recurrence is not compensated; for `|ζ|` far outside the
/// Gershgorin interval values grow roughly like `(|ζ|/min b)^k` and can
/// overflow for large `n`.
pub fn eval_polys<T, V>(j: &JacobiMatrix<T>, zeta: V, kind: PolynomialKind) -> PolynomialTable<V>
where
    T: Scalar,
    V: Copy + Num + From<T> + Mul<T, Output = V> + Div<T, Output = V>,
{
    let n = j.n();
    let q = j.diagonal();
    let b = j.off_diagonal();
    let mut values = Vec::with_capacity(n);
    let (first, second) = match kind {
        PolynomialKind::First => (V::one(), None),
        PolynomialKind::Second => (V::zero(), b.first().map(|&b1| V::one() / b1)),
    };
    values.push(first);
    let mut start = 1;
    if let Some(s) = second {
        values.push(s);
        start = 2;
    }
    for k in start..n {
        // f_{k+1} from row k (1-based), i.e. values[k] from values[k-1], values[k-2]
        let row = k - 1;
        let mut next = (zeta - V::from(q[row])) * values[row];
        if row > 0 {
            next = next - values[row - 1] * b[row - 1];
        }
        values.push(next / b[row]);
    }
    PolynomialTable { values, kind }
}

/// Spectral measure of `e₁`: atoms at the eigenvalues, weights
/// `1/α_n = 1/Σ_{k<n} P_k(λ_n)²`.
///
/// At an eigenvalue `P_k(λ_n) = z_k/z_1` for the eigenvector `z`, so the
/// weight is `z_1²/‖z‖²` with `z` from [`eigenvector`]. Running the
/// recurrence of [`eval_polys`] instead amplifies the eigenvalue error
/// whenever the eigenvector is concentrated away from the first site.
pub fn normalizing_constants<T: Scalar>(j: &JacobiMatrix<T>) -> Result<SpectralMeasure<T>> {
    let lambdas = eigenvalues(j)?;
    let atoms = lambdas.into_iter().map(|l| {
        let z = eigenvector(j, l);
        let norm2: T = z.iter().map(|&v| v * v).sum();
        (l, z[0] * z[0] / norm2)
    });
    SpectralMeasure::new(atoms)
}

/// `m(ζ) = Σ w_k/(λ_k − ζ)`.
pub fn weyl_m<T: Scalar>(rho: &SpectralMeasure<T>, zeta: Complex<T>) -> Result<Complex<T>> {
    let floor = separation_floor(rho.locations().iter().copied());
    let mut acc = Complex::new(T::zero(), T::zero());
    for (x, w) in rho.atoms() {
        let d = Complex::from(x) - zeta;
        let dist = d.norm();
        if dist < floor {
            return Err(Error::PoleProximity { distance: dist.as_f64() });
        }
        acc = acc + d.inv() * w;
    }
    Ok(acc)
}

/// `m_h = m/(1 − h·m)`.
pub fn m_transform<T: Scalar>(m: Complex<T>, h: T) -> Result<Complex<T>> {
    let hm = m * h;
    let den = Complex::new(T::one(), T::zero()) - hm;
    if den.norm() <= T::epsilon() * (T::one() + hm.norm()) {
        return Err(Error::DivisionByZero("1 − h·m vanishes: ζ is an eigenvalue of J_h"));
    }
    Ok(m / den)
}

/// `m_∞ = −((ζ − q_1) + 1/m)/b_1²`.
pub fn m_infinity<T: Scalar>(m: Complex<T>, zeta: Complex<T>, q1: T, b1: T) -> Result<Complex<T>> {
    let inv = m.inv();
    if !(inv.re.is_finite() && inv.im.is_finite()) {
        return Err(Error::DivisionByZero("m vanishes: ζ is an eigenvalue of J_∞"));
    }
    Ok(-((zeta - q1) + inv) / (b1 * b1))
}

/// Coefficients `(c1, c2, c3)` of `m_h = c1/ζ + c2/ζ² + c3/ζ³ + O(ζ⁻⁴)`:
/// `(−1, −(q_1 − h), −(b_1² + (q_1 − h)²))`. For `n = 1` the expansion holds
/// with `b_1 = 0`.
pub fn asymptotic_coeffs<T: Scalar>(j: &JacobiMatrix<T>, h: T) -> (T, T, T) {
    let s = j.diagonal()[0] - h;
    let b1 = j.off_diagonal().first().copied().unwrap_or_else(T::zero);
    (-T::one(), -s, -(b1 * b1 + s * s))
}

/// Numeric estimate of `(c1, c2, c3)` from `m` sampled at `ζ = iR` for two
/// radii `r1 < r2`.
///
/// With `ζ = iR`, `R·Im m = −c1 + c3/R² − c5/R⁴ + …` and
/// `R²·Re m = −c2 + c4/R² − c6/R⁴ + …`. `c1` and `c2` come from the
/// two-point solve of each series. For `c3` the normalization `c1 = −1`
/// frees the second equation to eliminate `c5`, which otherwise costs about
/// `c5·r1⁻²` in `c3`.
pub fn fit_asymptotic_coeffs<T: Scalar>(rho: &SpectralMeasure<T>, r1: T, r2: T) -> Result<(T, T, T)> {
    if !(r1 > T::zero() && r2 > r1) {
        return Err(Error::IllConditionedFit("radii must satisfy 0 < r1 < r2".into()));
    }
    let m1 = weyl_m(rho, Complex::new(T::zero(), r1))?;
    let m2 = weyl_m(rho, Complex::new(T::zero(), r2))?;
    let (u1, u2) = ((r1 * r1).recip(), (r2 * r2).recip());
    let (y1, y2) = (r1 * m1.im, r2 * m2.im);
    let (z1, z2) = (r1 * r1 * m1.re, r2 * r2 * m2.re);
    let c1 = -(y2 - u2 * (y1 - y2) / (u1 - u2));
    let c4 = (z1 - z2) / (u1 - u2);
    let c2 = -(z2 - c4 * u2);
    // y − 1 = c3·u − c5·u²
    let (e1, e2) = (y1 - T::one(), y2 - T::one());
    let c3 = (e1 * u2 * u2 - e2 * u1 * u1) / (u1 * u2 * (u2 - u1));
    Ok((c1, c2, c3))
}

/// `dλ_k/dh` at `h`: equals `−1/α_k(h)`, the negated k-th weight of
/// `J_h`'s spectral measure. `k` is 1-based.
pub fn eigen_sensitivity<T: Scalar>(j: &JacobiMatrix<T>, h: T, k: usize) -> Result<T> {
    if k == 0 || k > j.n() {
        return Err(Error::IndexOutOfRange { index: k, n: j.n() });
    }
    let rho = normalizing_constants(&perturb(j, h))?;
    Ok(-rho.weights()[k - 1])
}
