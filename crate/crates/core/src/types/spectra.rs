use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{separation_floor, Scalar};
use crate::types::{Validate, Violation};

/// Which pair of boundary conditions produced the two spectra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumMode {
    /// `λ = σ(J_{h₂})`, `μ = σ(J_{h₁})` with `h₁ < h₂`; both of length N.
    RankOne,
    /// `λ = σ(J)`, `μ = σ(J_∞)` (first row and column removed); `|μ| = N − 1`.
    DirichletNeumann,
}

impl SpectrumMode {
    /// Required number of `μ` for `n` values of `λ`.
    pub fn mus_len(self, n: usize) -> usize {
        match self {
            SpectrumMode::RankOne => n,
            SpectrumMode::DirichletNeumann => n.saturating_sub(1),
        }
    }
}

impl fmt::Display for SpectrumMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpectrumMode::RankOne => "rank-one",
            SpectrumMode::DirichletNeumann => "Dirichlet–Neumann",
        })
    }
}

/// Plain JSON image of a spectra pair:
/// `{"mode":"rank_one"|"dirichlet_neumann","lambdas":[…],"mus":[…]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectraData<T> {
    pub mode: SpectrumMode,
    pub lambdas: Vec<T>,
    pub mus: Vec<T>,
}

impl<T: Scalar> SpectraData<T> {
    /// Violations that make the data unusable before any ordering test:
    /// empty `λ`, wrong `μ` count, non-finite entries.
    pub fn syntax_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.lambdas.is_empty() {
            out.push(Violation::EmptySpectrum);
        }
        let want = self.mode.mus_len(self.lambdas.len());
        if self.mus.len() != want {
            out.push(Violation::SpectraLength {
                mode: self.mode,
                lambdas: self.lambdas.len(),
                mus: self.mus.len(),
            });
        }
        for (k, x) in self.lambdas.iter().enumerate() {
            if !x.is_finite() {
                out.push(Violation::NonFinite { field: "lambdas", index: k + 1 });
            }
        }
        for (k, x) in self.mus.iter().enumerate() {
            if !x.is_finite() {
                out.push(Violation::NonFinite { field: "mus", index: k + 1 });
            }
        }
        out
    }

    /// `ε_sep` for this point set.
    pub fn separation_floor(&self) -> T {
        separation_floor(self.lambdas.iter().chain(&self.mus).copied())
    }

    /// Smallest distance between two points of `λ ∪ μ`, with `+∞` for a
    /// single point.
    pub fn min_gap(&self) -> T {
        let mut all: Vec<T> = self.lambdas.iter().chain(&self.mus).copied().collect();
        all.sort_by(|a, b| a.partial_cmp(b).expect("finite spectra"));
        all.windows(2)
            .map(|w| w[1] - w[0])
            .fold(T::infinity(), T::min)
    }

    /// Describes the first break in the chain `λ_1 < μ_1 < λ_2 < μ_2 < …`
    /// (ending in `μ_N` for rank-one and in `λ_N` for Dirichlet–Neumann), or
    /// `None` when the lists interlace in that orientation.
    pub fn interlacing_failure(&self) -> Option<String> {
        let mut chain: Vec<(&'static str, usize, T)> = Vec::new();
        for (k, &l) in self.lambdas.iter().enumerate() {
            chain.push(("λ", k + 1, l));
            if let Some(&m) = self.mus.get(k) {
                chain.push(("μ", k + 1, m));
            }
        }
        chain.windows(2).find(|w| w[0].2 >= w[1].2).map(|w| {
            let (s0, i0, x0) = w[0];
            let (s1, i1, x1) = w[1];
            let rule = match self.mode {
                SpectrumMode::RankOne => "λ_k < μ_k < λ_{k+1}, μ_N > λ_N",
                SpectrumMode::DirichletNeumann => "λ_k < μ_k < λ_{k+1}",
            };
            format!("{s0}_{i0} = {x0} is not below {s1}_{i1} = {x1} (required {rule})")
        })
    }
}

impl<T: Scalar> Validate for SpectraData<T> {
    fn validate(&self) -> Vec<Violation> {
        let mut out = self.syntax_violations();
        if !out.is_empty() {
            return out;
        }
        let floor = self.separation_floor();
        let gap = self.min_gap();
        if gap < floor {
            out.push(Violation::GapBelowSeparation {
                gap: gap.as_f64(),
                threshold: floor.as_f64(),
            });
        }
        if let Some(detail) = self.interlacing_failure() {
            out.push(Violation::NotInterlaced(detail));
        }
        out
    }
}

/// Two strictly interlaced spectra. Lists are ascending and indexed 1..N
/// (resp. 1..N−1); the sign-anchored ℤ-indexing used for infinite
/// sequences reduces to this ordering for finite ones.
///
/// Rank-one orientation: `λ` is the spectrum of the larger coupling `h₂`, so
/// each `λ_k` lies strictly below its partner `μ_k`. If the couplings are
/// swapped the caller must swap the lists.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpectraData<T>", into = "SpectraData<T>")]
#[serde(bound(serialize = "T: Scalar + Serialize", deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct InterlacedSpectra<T> {
    mode: SpectrumMode,
    lambdas: Vec<T>,
    mus: Vec<T>,
}

impl<T: Scalar> InterlacedSpectra<T> {
    pub fn new(mode: SpectrumMode, lambdas: Vec<T>, mus: Vec<T>) -> Result<Self> {
        SpectraData { mode, lambdas, mus }.try_into()
    }

    pub fn mode(&self) -> SpectrumMode {
        self.mode
    }

    pub fn lambdas(&self) -> &[T] {
        &self.lambdas
    }

    pub fn mus(&self) -> &[T] {
        &self.mus
    }

    /// Number of `λ`.
    pub fn len(&self) -> usize {
        self.lambdas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambdas.is_empty()
    }

    /// `max − min` over `λ ∪ μ`.
    pub fn spread(&self) -> T {
        crate::scalar::spread(self.lambdas.iter().chain(&self.mus).copied())
    }

    pub fn to_data(&self) -> SpectraData<T> {
        self.clone().into()
    }
}

impl<T: Scalar> Validate for InterlacedSpectra<T> {
    fn validate(&self) -> Vec<Violation> {
        self.to_data().validate()
    }
}

impl<T: Scalar> TryFrom<SpectraData<T>> for InterlacedSpectra<T> {
    type Error = Error;

    fn try_from(data: SpectraData<T>) -> Result<Self> {
        let v = data.validate();
        if !v.is_empty() {
            return Err(Error::InvalidSpectra(v));
        }
        Ok(Self {
            mode: data.mode,
            lambdas: data.lambdas,
            mus: data.mus,
        })
    }
}

impl<T: Scalar> From<InterlacedSpectra<T>> for SpectraData<T> {
    fn from(s: InterlacedSpectra<T>) -> Self {
        SpectraData {
            mode: s.mode,
            lambdas: s.lambdas,
            mus: s.mus,
        }
    }
}
