//! Eigenvalues of a Jacobi matrix by bisection on Sturm counts, and
//! eigenvectors by twisted factorization.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::types::JacobiMatrix;

const MAX_BISECTIONS: usize = 4096;

/// Number of eigenvalues strictly below `x` (the count of negative pivots
/// in the LDLᵀ factorization of `J − x`). Zero pivots are nudged to
/// `−pivmin`, as in LAPACK's `dstebz`.
pub fn sturm_count<T: Scalar>(j: &JacobiMatrix<T>, x: T, pivmin: T) -> usize {
    let q = j.diagonal();
    let b = j.off_diagonal();
    let mut count = 0;
    let mut d = q[0] - x;
    if d.abs() < pivmin {
        d = -pivmin;
    }
    if d < T::zero() {
        count += 1;
    }
    for i in 1..q.len() {
        d = (q[i] - x) - b[i - 1] * b[i - 1] / d;
        if d.abs() < pivmin {
            d = -pivmin;
        }
        if d < T::zero() {
            count += 1;
        }
    }
    count
}

/// All `n` eigenvalues in ascending order.
///
/// Each eigenvalue is bracketed from the Gershgorin interval and bisected
/// until the bracket is below `max(ε‖J‖, 2ε|λ|)` (well inside the
/// `TOL_EIG` relative accuracy target) or no representable midpoint
/// remains. The result depends only on the matrix, never on evaluation
/// order.
pub fn eigenvalues<T: Scalar>(j: &JacobiMatrix<T>) -> Result<Vec<T>> {
    let n = j.n();
    if n == 1 {
        return Ok(vec![j.diagonal()[0]]);
    }
    let norm = j.norm_inf();
    let max_b2 = j
        .off_diagonal()
        .iter()
        .fold(T::one(), |acc, &b| acc.max(b * b));
    let pivmin = T::min_positive_value() * max_b2;
    let (g_lo, g_hi) = j.gershgorin();
    let pad = T::lit(2.0) * T::epsilon() * norm + pivmin;
    let abstol = T::epsilon() * norm;
    let reltol = T::lit(2.0) * T::epsilon();

    (0..n)
        .map(|idx| {
            let mut lo = g_lo - pad;
            let mut hi = g_hi + pad;
            for _ in 0..MAX_BISECTIONS {
                let width = hi - lo;
                let tol = abstol.max(reltol * lo.abs().max(hi.abs())).max(pivmin);
                let mid = lo + (hi - lo) / T::lit(2.0);
                if width <= tol || mid <= lo || mid >= hi {
                    return Ok(lo + (hi - lo) / T::lit(2.0));
                }
                if sturm_count(j, mid, pivmin) > idx {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            Err(Error::ConvergenceFailure { index: idx + 1 })
        })
        .collect()
}

/// Eigenvector for the eigenvalue `lambda`, scaled so the entry at the
/// twist index is 1.
///
/// `J − λ` is factored from the top (`D₊`) and from the bottom (`D₋`); the
/// twist index `r` minimizes `|γ_r| = |D₊(r) + D₋(r) − (q_r − λ)|`, and the
/// vector is extended upward with `D₊` and downward with `D₋`. Each
/// direction only ever follows the decaying solution, unlike the forward
/// polynomial recurrence.
pub fn eigenvector<T: Scalar>(j: &JacobiMatrix<T>, lambda: T) -> Vec<T> {
    let n = j.n();
    if n == 1 {
        return vec![T::one()];
    }
    let q = j.diagonal();
    let b = j.off_diagonal();
    let guard = |d: T| {
        if d == T::zero() {
            T::epsilon() * T::min_positive_value().sqrt()
        } else {
            d
        }
    };
    let mut dp = vec![T::zero(); n];
    dp[0] = guard(q[0] - lambda);
    for i in 1..n {
        dp[i] = guard(q[i] - lambda - b[i - 1] * b[i - 1] / dp[i - 1]);
    }
    let mut dm = vec![T::zero(); n];
    dm[n - 1] = guard(q[n - 1] - lambda);
    for i in (0..n - 1).rev() {
        dm[i] = guard(q[i] - lambda - b[i] * b[i] / dm[i + 1]);
    }
    let r = (0..n)
        .min_by(|&a, &c| {
            let ga = (dp[a] + dm[a] - (q[a] - lambda)).abs();
            let gc = (dp[c] + dm[c] - (q[c] - lambda)).abs();
            ga.partial_cmp(&gc).unwrap_or(std::cmp::Ordering::Equal)
        })
        .unwrap_or(0);
    let mut z = vec![T::zero(); n];
    z[r] = T::one();
    for i in (0..r).rev() {
        z[i] = -b[i] * z[i + 1] / dp[i];
    }
    for i in r + 1..n {
        z[i] = -b[i - 1] * z[i - 1] / dm[i];
    }
    z
}
