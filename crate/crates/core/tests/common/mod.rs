#![allow(dead_code)]

use jts_core::JacobiMatrix;
use proptest::prelude::*;

/// Dense symmetric matrix of `J`.
pub fn dense(j: &JacobiMatrix<f64>) -> Vec<Vec<f64>> {
    let n = j.n();
    let mut a = vec![vec![0.0; n]; n];
    for i in 0..n {
        a[i][i] = j.diagonal()[i];
        if i + 1 < n {
            a[i][i + 1] = j.off_diagonal()[i];
            a[i + 1][i] = j.off_diagonal()[i];
        }
    }
    a
}

/// Cyclic Jacobi rotations on a dense symmetric matrix. Returns eigenvalues
/// ascending and the matching orthonormal eigenvectors as columns `v[i][k]`.
pub fn dense_eigen(mut a: Vec<Vec<f64>>) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut v = vec![vec![0.0; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&k| k != i).map(move |k| (i, k)))
            .map(|(i, k)| a[i][k] * a[i][k])
            .sum();
        if off < 1e-300 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[x][x].total_cmp(&a[y][y]));
    let vals = order.iter().map(|&k| a[k][k]).collect();
    let vecs = (0..n).map(|i| order.iter().map(|&k| v[i][k]).collect()).collect();
    (vals, vecs)
}

/// Jacobi matrices over the full test domain: `q ∈ [−2, 2]`, `b ∈ [0.5, 2]`.
pub fn jacobi(max_n: usize) -> impl Strategy<Value = JacobiMatrix<f64>> {
    (1..=max_n).prop_flat_map(|n| {
        (
            prop::collection::vec(-2.0..2.0f64, n),
            prop::collection::vec(0.5..2.0f64, n - 1),
        )
            .prop_map(|(q, b)| JacobiMatrix::new(q, b).unwrap())
    })
}

/// Weakly disordered matrices (`q ∈ [−0.5, 0.5]`, `b ∈ [0.8, 1.25]`,
/// `n ≤ 12`) whose eigenvectors all reach the first site, so every weight
/// stays far above rounding level.
pub fn well_conditioned() -> impl Strategy<Value = JacobiMatrix<f64>> {
    (1..=12usize).prop_flat_map(|n| {
        (
            prop::collection::vec(-0.5..0.5f64, n),
            prop::collection::vec(0.8..1.25f64, n - 1),
        )
            .prop_map(|(q, b)| JacobiMatrix::new(q, b).unwrap())
    })
}

/// Ascending coupling pair in `[−3, 3]` with `h₂ − h₁ ≥ 0.05`.
pub fn couplings() -> impl Strategy<Value = (f64, f64)> {
    (-3.0..2.95f64).prop_flat_map(|h1| (Just(h1), (h1 + 0.05)..3.0f64))
}
