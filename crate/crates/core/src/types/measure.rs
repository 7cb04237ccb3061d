use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{compensated_sum, Scalar};
use crate::types::{Validate, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AtomData<T> {
    pub x: T,
    pub w: T,
}

/// Plain JSON image of a measure: `{"atoms":[{"x":…,"w":…},…]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureData<T> {
    pub atoms: Vec<AtomData<T>>,
}

impl<T: Scalar> Validate for MeasureData<T> {
    fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.atoms.is_empty() {
            out.push(Violation::EmptyMeasure);
            return out;
        }
        let mut finite = true;
        for (k, a) in self.atoms.iter().enumerate() {
            if !a.x.is_finite() {
                out.push(Violation::NonFinite { field: "x", index: k + 1 });
                finite = false;
            }
            if !a.w.is_finite() {
                out.push(Violation::NonFinite { field: "w", index: k + 1 });
                finite = false;
            } else if a.w <= T::zero() {
                out.push(Violation::NonPositiveWeight {
                    index: k + 1,
                    value: a.w.as_f64(),
                });
            }
        }
        if !finite {
            return out;
        }
        let mut xs: Vec<T> = self.atoms.iter().map(|a| a.x).collect();
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        if let Some(k) = xs.windows(2).position(|w| w[0] == w[1]) {
            out.push(Violation::DuplicateAtom { location: xs[k].as_f64() });
        }
        let sum = compensated_sum(self.atoms.iter().map(|a| a.w));
        if (sum - T::one()).abs() > T::lit(T::TOL_NORM) {
            out.push(Violation::WeightSum { sum: sum.as_f64() });
        }
        out
    }
}

/// Finitely supported probability measure `ρ = Σ w_k δ_{λ_k}` with
/// `w_k = 1/α_k` (the reciprocal normalizing constants). Atoms are stored in
/// strictly ascending order of location regardless of input order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MeasureData<T>", into = "MeasureData<T>")]
#[serde(bound(serialize = "T: Scalar + Serialize", deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct SpectralMeasure<T> {
    locations: Vec<T>,
    weights: Vec<T>,
}

impl<T: Scalar> SpectralMeasure<T> {
    /// Builds from `(location, weight)` pairs in any order.
    pub fn new(atoms: impl IntoIterator<Item = (T, T)>) -> Result<Self> {
        MeasureData {
            atoms: atoms.into_iter().map(|(x, w)| AtomData { x, w }).collect(),
        }
        .try_into()
    }

    pub fn locations(&self) -> &[T] {
        &self.locations
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// Normalizing constants `α_k = 1/w_k`.
    pub fn normalizing_constants(&self) -> Vec<T> {
        self.weights.iter().map(|w| w.recip()).collect()
    }

    pub fn len(&self) -> usize {
        self.locations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.locations.is_empty()
    }

    pub fn atoms(&self) -> impl Iterator<Item = (T, T)> + '_ {
        self.locations.iter().copied().zip(self.weights.iter().copied())
    }

    /// Distribution function `ρ(t) = Σ_{λ_k ≤ t} w_k` (right-continuous).
    pub fn cdf(&self, t: T) -> T {
        compensated_sum(self.atoms().take_while(|&(x, _)| x <= t).map(|(_, w)| w))
    }

    pub fn spread(&self) -> T {
        crate::scalar::spread(self.locations.iter().copied())
    }

    pub fn to_data(&self) -> MeasureData<T> {
        self.clone().into()
    }
}

impl<T: Scalar> Validate for SpectralMeasure<T> {
    fn validate(&self) -> Vec<Violation> {
        self.to_data().validate()
    }
}

impl<T: Scalar> TryFrom<MeasureData<T>> for SpectralMeasure<T> {
    type Error = Error;

    fn try_from(data: MeasureData<T>) -> Result<Self> {
        let v = data.validate();
        if !v.is_empty() {
            return Err(Error::InvalidMeasure(v));
        }
        let mut atoms: Vec<(T, T)> = data.atoms.into_iter().map(|a| (a.x, a.w)).collect();
        atoms.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let (locations, weights) = atoms.into_iter().unzip();
        Ok(Self { locations, weights })
    }
}

impl<T: Scalar> From<SpectralMeasure<T>> for MeasureData<T> {
    fn from(m: SpectralMeasure<T>) -> Self {
        MeasureData {
            atoms: m.atoms().map(|(x, w)| AtomData { x, w }).collect(),
        }
    }
}
