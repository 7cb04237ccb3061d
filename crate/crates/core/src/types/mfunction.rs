use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{separation_floor, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProductKind {
    /// `𝔪 = m_{h₂}/m_{h₁} = Π (μ_k − ζ)/(λ_k − ζ)`, tends to 1 at infinity.
    RankOneRatio,
    /// `m = K Π_{k<N} (μ_k − ζ) / Π_{k≤N} (λ_k − ζ)`, behaves as `−1/ζ`.
    WeylFunction,
}

/// Meromorphic function in zero–pole product form
/// `front · Π (zeros_k − ζ) / Π (poles_k − ζ)`.
///
/// Evaluation pairs the k-th zero with the k-th pole so each factor stays
/// close to one far from the real axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MFunctionProduct<T> {
    zeros: Vec<T>,
    poles: Vec<T>,
    front: T,
    kind: ProductKind,
}

impl<T: Scalar> MFunctionProduct<T> {
    /// `poles` must be strictly ascending. A point listed both as a zero
    /// and as a pole cancels out of both lists.
    pub fn new(mut zeros: Vec<T>, mut poles: Vec<T>, front: T, kind: ProductKind) -> Result<Self> {
        if poles.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::LengthMismatch("poles must be strictly ascending".into()));
        }
        let mut k = 0;
        while k < zeros.len() {
            if let Some(i) = poles.iter().position(|p| *p == zeros[k]) {
                poles.remove(i);
                zeros.remove(k);
            } else {
                k += 1;
            }
        }
        Ok(Self { zeros, poles, front, kind })
    }

    pub fn zeros(&self) -> &[T] {
        &self.zeros
    }

    pub fn poles(&self) -> &[T] {
        &self.poles
    }

    pub fn front(&self) -> T {
        self.front
    }

    pub fn kind(&self) -> ProductKind {
        self.kind
    }

    /// Evaluates at `ζ`; fails within `ε_sep` of a pole.
    pub fn eval(&self, zeta: Complex<T>) -> Result<Complex<T>> {
        let floor = separation_floor(self.zeros.iter().chain(&self.poles).copied());
        let mut value = Complex::new(self.front, T::zero());
        let paired = self.zeros.len().min(self.poles.len());
        for k in 0..paired {
            let den = Complex::from(self.poles[k]) - zeta;
            check_pole(den, floor)?;
            value = value * ((Complex::from(self.zeros[k]) - zeta) / den);
        }
        for &p in &self.poles[paired..] {
            let den = Complex::from(p) - zeta;
            check_pole(den, floor)?;
            value = value / den;
        }
        for &z in &self.zeros[paired..] {
            value = value * (Complex::from(z) - zeta);
        }
        Ok(value)
    }
}

fn check_pole<T: Scalar>(den: Complex<T>, floor: T) -> Result<()> {
    let d = den.norm();
    if d < floor {
        return Err(Error::PoleProximity { distance: d.as_f64() });
    }
    Ok(())
}
