use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::types::{InterlacedSpectra, MFunctionProduct, ProductKind, SpectrumMode};

/// Product form determined by two spectra.
///
/// Rank-one: `𝔪(ζ) = m_{h₂}/m_{h₁} = Π (μ_k − ζ)/(λ_k − ζ)` with front
/// constant 1 (the limit at `i∞`). Dirichlet–Neumann: the Weyl function
/// `m(ζ) = K Π_{k<N}(μ_k − ζ)/Π_{k≤N}(λ_k − ζ)`, where `K` is fixed by
/// `ζ·m(ζ) → −1`; the bare ratio already behaves as
/// `(−ζ)^{N−1}/(−ζ)^N = −1/ζ`, so `K = 1`.
pub fn mfrak_product<T: Scalar>(s: &InterlacedSpectra<T>) -> MFunctionProduct<T> {
    let kind = match s.mode() {
        SpectrumMode::RankOne => ProductKind::RankOneRatio,
        SpectrumMode::DirichletNeumann => ProductKind::WeylFunction,
    };
    MFunctionProduct::new(s.mus().to_vec(), s.lambdas().to_vec(), T::one(), kind)
        .expect("interlaced spectra give ascending, disjoint zeros and poles")
}

/// Radius from which the large-`ζ` expansion of `𝔪` is sampled:
/// `100 · max(1, spread, max |point|)`.
pub fn fit_radius<T: Scalar>(s: &InterlacedSpectra<T>) -> T {
    let reach = s
        .lambdas()
        .iter()
        .chain(s.mus())
        .fold(T::one(), |acc, x| acc.max(x.abs()));
    T::lit(100.0) * reach.max(s.spread())
}

/// `count` samples of `𝔪(iR)` with `R` geometric on `[r_min, 10·r_min]`.
pub fn mfrak_samples<T: Scalar>(
    p: &MFunctionProduct<T>,
    r_min: T,
    count: usize,
) -> Result<Vec<(Complex<T>, Complex<T>)>> {
    let steps = T::from_usize_lossy(count.max(2) - 1);
    (0..count)
        .map(|k| {
            let r = r_min * T::lit(10.0).powf(T::from_usize_lossy(k) / steps);
            let z = Complex::new(T::zero(), r);
            p.eval(z).map(|v| (z, v))
        })
        .collect()
}

/// Least-squares fit of
/// `𝔪(ζ) = 1 + (h₁−h₂)ζ⁻¹ + (h₁−h₂)(q₁−h₂)ζ⁻² + a₃ζ⁻³ + a₄ζ⁻⁴`
/// over the samples, returning `(h₁ − h₂, q₁ − h₂)`.
///
/// The two trailing coefficients are fitted and discarded so they do not
/// bias the leading pair. When `h₁ − h₂` vanishes the second value is
/// undetermined and reported as 0.
pub fn mfrak_fit<T: Scalar>(samples: &[(Complex<T>, Complex<T>)]) -> Result<(T, T)> {
    const TERMS: usize = 4;
    if samples.len() < 3 {
        return Err(Error::IllConditionedFit(format!(
            "need at least 3 samples, got {}",
            samples.len()
        )));
    }
    let radii: Vec<T> = samples.iter().map(|(z, _)| z.norm()).collect();
    let r_min = radii.iter().copied().fold(T::infinity(), T::min);
    let r_max = radii.iter().copied().fold(T::zero(), T::max);
    if !(r_min > T::zero()) || r_max < T::lit(10.0) * r_min {
        return Err(Error::IllConditionedFit(format!(
            "sample radii span [{r_min}, {r_max}], less than one decade"
        )));
    }
    // Columns are (r_min/ζ)^j, so unknown j is a_j·r_min^-j.
    let terms = TERMS.min(samples.len() * 2);
    let mut rows = Vec::with_capacity(samples.len() * 2);
    let mut rhs = Vec::with_capacity(samples.len() * 2);
    for (z, v) in samples {
        let u = Complex::new(r_min, T::zero()) / z;
        let mut pw = u;
        let mut re = Vec::with_capacity(terms);
        let mut im = Vec::with_capacity(terms);
        for _ in 0..terms {
            re.push(pw.re);
            im.push(pw.im);
            pw = pw * u;
        }
        rows.push(re);
        rows.push(im);
        rhs.push(v.re - T::one());
        rhs.push(v.im);
    }
    let x = least_squares(rows, rhs);
    let a1 = x[0] * r_min;
    let a2 = x[1] * r_min * r_min;
    if a1.abs() <= T::epsilon() {
        return Ok((T::zero(), T::zero()));
    }
    Ok((a1, a2 / a1))
}

/// Dense least squares by Householder QR. `rows` is m×n with m ≥ n.
fn least_squares<T: Scalar>(mut a: Vec<Vec<T>>, mut b: Vec<T>) -> Vec<T> {
    let m = a.len();
    let n = a[0].len();
    for j in 0..n {
        let norm = (j..m).map(|i| a[i][j] * a[i][j]).sum::<T>().sqrt();
        if norm == T::zero() {
            continue;
        }
        let alpha = if a[j][j] > T::zero() { -norm } else { norm };
        let mut v: Vec<T> = (j..m).map(|i| a[i][j]).collect();
        v[0] = v[0] - alpha;
        let vnorm2: T = v.iter().map(|x| *x * *x).sum();
        if vnorm2 == T::zero() {
            continue;
        }
        for c in j..n {
            let dot: T = (j..m).map(|i| v[i - j] * a[i][c]).sum();
            let f = T::lit(2.0) * dot / vnorm2;
            for i in j..m {
                a[i][c] = a[i][c] - f * v[i - j];
            }
        }
        let dot: T = (j..m).map(|i| v[i - j] * b[i]).sum();
        let f = T::lit(2.0) * dot / vnorm2;
        for i in j..m {
            b[i] = b[i] - f * v[i - j];
        }
    }
    let mut x = vec![T::zero(); n];
    for j in (0..n).rev() {
        let s: T = ((j + 1)..n).map(|c| a[j][c] * x[c]).sum();
        x[j] = if a[j][j] == T::zero() {
            T::zero()
        } else {
            (b[j] - s) / a[j][j]
        };
    }
    x
}
