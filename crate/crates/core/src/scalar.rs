//! Floating-point scalar abstraction.
//!
//! Every algorithm in this crate is written against [`Scalar`], which is
//! implemented for `f32` and `f64`. The per-type constants carry the
//! numerical tolerances; the `f64` values are the reference ones and the
//! `f32` values are scaled to single precision.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real floating-point type usable by the solver.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
    /// Relative minimal gap between any two spectral points (`ε_sep`).
    const SEP_REL: f64;
    /// Slack allowed on `Σ w = 1`.
    const TOL_NORM: f64;
    /// Relative width at which eigenvalue bisection stops.
    const TOL_EIG: f64;
    /// Relative round-trip spectral tolerance (`tol_spec`).
    const TOL_SPEC_REL: f64;
    /// Recurrence norms `b²` at or below this are a breakdown.
    const BREAKDOWN: f64;
    /// Recurrence norms `b²` below this are reported as a warning.
    const NEAR_BREAKDOWN: f64;
    /// Magnitude at which moment arithmetic is declared to have blown up.
    const BLOWUP: f64;

    /// Roughly twice the precision, for arithmetic that cancels heavily.
    type Wide: Float + From<Self>;

    #[inline]
    fn narrow(w: Self::Wide) -> Self {
        <Self as num_traits::NumCast>::from(w).unwrap_or_else(Self::nan)
    }

    /// Converts an `f64` literal into this type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable")
    }
}

impl Scalar for f64 {
    const SEP_REL: f64 = 1e-12;
    const TOL_NORM: f64 = 1e-10;
    const TOL_EIG: f64 = 1e-14;
    const TOL_SPEC_REL: f64 = 1e-8;
    const BREAKDOWN: f64 = 1e-24;
    const NEAR_BREAKDOWN: f64 = 1e-16;
    const BLOWUP: f64 = 1e15;
    type Wide = twofloat::TwoFloat;
}

impl Scalar for f32 {
    const SEP_REL: f64 = 1e-5;
    const TOL_NORM: f64 = 1e-4;
    const TOL_EIG: f64 = 1e-6;
    const TOL_SPEC_REL: f64 = 1e-3;
    const BREAKDOWN: f64 = 1e-12;
    const NEAR_BREAKDOWN: f64 = 1e-8;
    const BLOWUP: f64 = 1e7;
    type Wide = f64;
}

/// Minimal admissible separation `ε_sep = SEP_REL · max(1, spread)` for a
/// set of points.
pub fn separation_floor<T: Scalar>(points: impl IntoIterator<Item = T>) -> T {
    T::lit(T::SEP_REL) * spread(points).max(T::one())
}

/// `max − min` of a set of points (zero when empty).
pub fn spread<T: Scalar>(points: impl IntoIterator<Item = T>) -> T {
    let mut it = points.into_iter();
    let Some(first) = it.next() else {
        return T::zero();
    };
    let (lo, hi) = it.fold((first, first), |(lo, hi), x| (lo.min(x), hi.max(x)));
    hi - lo
}

/// Sum with Neumaier compensation.
pub fn compensated_sum<T: Scalar>(values: impl IntoIterator<Item = T>) -> T {
    let mut sum = T::zero();
    let mut c = T::zero();
    for x in values {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            c = c + ((sum - t) + x);
        } else {
            c = c + ((x - t) + sum);
        }
        sum = t;
    }
    sum + c
}
