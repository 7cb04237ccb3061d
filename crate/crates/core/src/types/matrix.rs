use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::types::{Validate, Violation};

/// Plain JSON image of a Jacobi matrix: `{"n":…,"q":[…],"b":[…]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixData<T> {
    pub n: usize,
    pub q: Vec<T>,
    pub b: Vec<T>,
}

impl<T: Scalar> Validate for MatrixData<T> {
    fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.n == 0 {
            out.push(Violation::EmptyMatrix);
        }
        if self.q.len() != self.n || self.b.len() + 1 != self.n.max(1) {
            out.push(Violation::DimensionMismatch {
                n: self.n,
                q_len: self.q.len(),
                b_len: self.b.len(),
            });
        }
        for (k, &x) in self.q.iter().enumerate() {
            if !x.is_finite() {
                out.push(Violation::NonFinite { field: "q", index: k + 1 });
            }
        }
        for (k, &x) in self.b.iter().enumerate() {
            if !x.is_finite() {
                out.push(Violation::NonFinite { field: "b", index: k + 1 });
            } else if x <= T::zero() {
                out.push(Violation::NonPositiveOffDiagonal {
                    index: k + 1,
                    value: x.as_f64(),
                });
            }
        }
        out
    }
}

/// Finite Jacobi matrix: real diagonal `q_1..q_n`, strictly positive
/// off-diagonal `b_1..b_{n-1}`. Indices in docs and errors are 1-based;
/// storage is 0-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixData<T>", into = "MatrixData<T>")]
#[serde(bound(serialize = "T: Scalar + Serialize", deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct JacobiMatrix<T> {
    q: Vec<T>,
    b: Vec<T>,
}

impl<T: Scalar> JacobiMatrix<T> {
    pub fn new(q: Vec<T>, b: Vec<T>) -> Result<Self> {
        MatrixData { n: q.len(), q, b }.try_into()
    }

    pub fn n(&self) -> usize {
        self.q.len()
    }

    pub fn diagonal(&self) -> &[T] {
        &self.q
    }

    pub fn off_diagonal(&self) -> &[T] {
        &self.b
    }

    /// Infinity norm (maximum absolute row sum).
    pub fn norm_inf(&self) -> T {
        let n = self.n();
        (0..n)
            .map(|i| {
                let left = if i > 0 { self.b[i - 1] } else { T::zero() };
                let right = if i + 1 < n { self.b[i] } else { T::zero() };
                self.q[i].abs() + left + right
            })
            .fold(T::zero(), T::max)
    }

    /// Gershgorin enclosure `[lo, hi]` of the spectrum.
    pub fn gershgorin(&self) -> (T, T) {
        let n = self.n();
        let mut lo = T::infinity();
        let mut hi = T::neg_infinity();
        for i in 0..n {
            let left = if i > 0 { self.b[i - 1] } else { T::zero() };
            let right = if i + 1 < n { self.b[i] } else { T::zero() };
            lo = lo.min(self.q[i] - left - right);
            hi = hi.max(self.q[i] + left + right);
        }
        (lo, hi)
    }

    /// Largest elementwise deviation from `other` over the common prefix.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let dq = self.q.iter().zip(&other.q).map(|(a, b)| (*a - *b).abs());
        let db = self.b.iter().zip(&other.b).map(|(a, b)| (*a - *b).abs());
        dq.chain(db).fold(T::zero(), T::max)
    }

    pub fn to_data(&self) -> MatrixData<T> {
        self.clone().into()
    }

    pub(crate) fn from_parts_unchecked(q: Vec<T>, b: Vec<T>) -> Self {
        debug_assert!(b.len() + 1 == q.len());
        Self { q, b }
    }
}

impl<T: Scalar> Validate for JacobiMatrix<T> {
    fn validate(&self) -> Vec<Violation> {
        self.to_data().validate()
    }
}

impl<T: Scalar> TryFrom<MatrixData<T>> for JacobiMatrix<T> {
    type Error = Error;

    fn try_from(data: MatrixData<T>) -> Result<Self> {
        let violations = data.validate();
        if !violations.is_empty() {
            return Err(Error::InvalidMatrix(violations));
        }
        Ok(Self { q: data.q, b: data.b })
    }
}

impl<T: Scalar> From<JacobiMatrix<T>> for MatrixData<T> {
    fn from(j: JacobiMatrix<T>) -> Self {
        MatrixData { n: j.q.len(), q: j.q, b: j.b }
    }
}
