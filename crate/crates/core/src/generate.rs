//! Seeded random instances for round-trip testing.
//!
//! The generator is ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64`).
//! A uniform draw on `[lo, hi)` takes one `next_u64` value `x` and returns
//! `lo + (hi − lo)·u` with `u = (x >> 11)·2⁻⁵³`. Draw order for one instance:
//! the dimension (if random), `q_1..q_n`, `b_1..b_{n−1}`, then the two
//! couplings, sorted ascending. Any implementation of ChaCha8 with the same
//! seeding reproduces the instances exactly.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::forward::{eigenvalues, perturb, truncate_first};
use crate::error::Result;
use crate::types::{InterlacedSpectra, JacobiMatrix, SpectrumMode};

/// Diagonal range `[−2, 2)`.
pub const Q_RANGE: (f64, f64) = (-2.0, 2.0);
/// Off-diagonal range `[0.5, 2)`.
pub const B_RANGE: (f64, f64) = (0.5, 2.0);
/// Coupling range `[−3, 3)`.
pub const H_RANGE: (f64, f64) = (-3.0, 3.0);

/// One generated rank-one or Dirichlet–Neumann test case.
#[derive(Debug, Clone)]
pub struct Instance {
    pub matrix: JacobiMatrix<f64>,
    /// `(h₁, h₂)` with `h₁ < h₂`; drawn for both modes so streams line up.
    pub couplings: (f64, f64),
}

impl Instance {
    /// Spectra of the instance in the given mode (`h₂`-spectrum first for
    /// rank-one).
    pub fn spectra(&self, mode: SpectrumMode) -> Result<InterlacedSpectra<f64>> {
        spectra_of(&self.matrix, mode, self.couplings)
    }
}

/// `(σ(J_{h₂}), σ(J_{h₁}))` or `(σ(J), σ(J_∞))`.
pub fn spectra_of(j: &JacobiMatrix<f64>, mode: SpectrumMode, (h1, h2): (f64, f64)) -> Result<InterlacedSpectra<f64>> {
    match mode {
        SpectrumMode::RankOne => {
            let lambdas = eigenvalues(&perturb(j, h2))?;
            let mus = eigenvalues(&perturb(j, h1))?;
            InterlacedSpectra::new(mode, lambdas, mus)
        }
        SpectrumMode::DirichletNeumann => {
            let lambdas = eigenvalues(j)?;
            let mus = if j.n() > 1 {
                eigenvalues(&truncate_first(j)?)?
            } else {
                Vec::new()
            };
            InterlacedSpectra::new(mode, lambdas, mus)
        }
    }
}

pub struct InstanceGenerator {
    rng: ChaCha8Rng,
}

impl InstanceGenerator {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Uniform on `[lo, hi)` from 53 random bits.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        let u = (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        lo + (hi - lo) * u
    }

    /// Uniform integer in `lo..=hi`.
    pub fn dimension(&mut self, lo: usize, hi: usize) -> usize {
        let span = (hi - lo + 1) as f64;
        lo + ((self.uniform(0.0, span) as usize).min(hi - lo))
    }

    pub fn matrix(&mut self, n: usize) -> JacobiMatrix<f64> {
        assert!(n >= 1);
        let q = (0..n).map(|_| self.uniform(Q_RANGE.0, Q_RANGE.1)).collect();
        let b = (1..n).map(|_| self.uniform(B_RANGE.0, B_RANGE.1)).collect();
        JacobiMatrix::new(q, b).expect("generated entries are in range")
    }

    /// Two distinct couplings, ascending.
    pub fn couplings(&mut self) -> (f64, f64) {
        loop {
            let a = self.uniform(H_RANGE.0, H_RANGE.1);
            let b = self.uniform(H_RANGE.0, H_RANGE.1);
            if a != b {
                return (a.min(b), a.max(b));
            }
        }
    }

    pub fn instance(&mut self, n: usize) -> Instance {
        let matrix = self.matrix(n);
        let couplings = self.couplings();
        Instance { matrix, couplings }
    }

    /// Instance with dimension drawn uniformly from `lo..=hi`.
    pub fn instance_in(&mut self, lo: usize, hi: usize) -> Instance {
        let n = self.dimension(lo, hi);
        self.instance(n)
    }
}
