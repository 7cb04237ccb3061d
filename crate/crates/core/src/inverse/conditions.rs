use serde::Serialize;

use crate::error::{Condition, Error, Result};
use crate::inverse::tau::{build_measure, delta, tau_dirichlet_neumann, tau_rank_one};
use crate::reconstruct::moments;
use crate::scalar::Scalar;
use crate::types::{InterlacedSpectra, SpectraData, SpectrumMode};

/// Highest `N` for which the `2N` attached moments are all computed; larger
/// inputs get the first `2·MOMENT_ROWS` moments.
pub const MOMENT_ROWS: usize = 32;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub pass: bool,
    pub detail: String,
}

impl Verdict {
    fn pass(detail: impl Into<String>) -> Self {
        Self { pass: true, detail: detail.into() }
    }

    fn fail(detail: impl Into<String>) -> Self {
        Self { pass: false, detail: detail.into() }
    }
}

/// Verdicts on the existence conditions for a pair of finite spectra.
///
/// For finitely many points b), c) and d) cannot fail once a) holds: the
/// sum defining `Δ` is finite, every moment of a finitely supported measure
/// is finite and polynomials are dense in a finite-dimensional `L₂`. They
/// are reported as such, with `Δ` (or the limit at `i∞` in
/// Dirichlet–Neumann mode) and a moment table attached.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(bound(serialize = "T: Scalar + Serialize"))]
pub struct ConditionReport<T> {
    pub mode: SpectrumMode,
    pub all_pass: bool,
    pub a_interlacing: Verdict,
    pub b_delta: Verdict,
    /// `Σ(μ_k − λ_k)` in rank-one mode, `lim_{ξ→∞} iξ·m(iξ)` in
    /// Dirichlet–Neumann mode.
    pub b_value: Option<T>,
    pub c_moments: Verdict,
    pub moments: Vec<T>,
    pub d_density: Verdict,
    pub tau_positivity: Verdict,
    pub taus: Vec<T>,
}

impl<T> ConditionReport<T> {
    /// First failing condition in the order a), b), c), d), τ.
    pub fn first_failure(&self) -> Option<(Condition, &Verdict)> {
        [
            (Condition::Interlacing, &self.a_interlacing),
            (Condition::DeltaFinite, &self.b_delta),
            (Condition::Moments, &self.c_moments),
            (Condition::Density, &self.d_density),
            (Condition::TauPositive, &self.tau_positivity),
        ]
        .into_iter()
        .find(|(_, v)| !v.pass)
    }

    /// `Err(ConditionFailed)` naming the first failing condition.
    pub fn into_result(self) -> Result<Self> {
        if let Some((condition, v)) = self.first_failure() {
            return Err(Error::ConditionFailed {
                condition,
                detail: v.detail.clone(),
            });
        }
        Ok(self)
    }
}

/// Checks whether `data` can be the spectra of some Jacobi matrix under
/// the boundary pair named by its mode.
///
/// Non-finite entries or a wrong `μ` count are syntax errors
/// ([`Error::InvalidSpectra`]); two points of `λ ∪ μ` closer than `ε_sep`
/// make a) undecidable ([`Error::IndeterminateInterlacing`]). Everything
/// else yields a report.
pub fn check_conditions<T: Scalar>(data: &SpectraData<T>) -> Result<ConditionReport<T>> {
    let syntax = data.syntax_violations();
    if !syntax.is_empty() {
        return Err(Error::InvalidSpectra(syntax));
    }
    let floor = data.separation_floor();
    let gap = data.min_gap();
    if gap < floor {
        return Err(Error::IndeterminateInterlacing {
            gap: gap.as_f64(),
            threshold: floor.as_f64(),
        });
    }
    let mode = data.mode;
    let n = data.lambdas.len();

    let finite_b = |value: Option<T>| match (mode, value) {
        (SpectrumMode::RankOne, Some(d)) => Verdict::pass(format!("Δ = Σ(μ_k − λ_k) = {d} is finite")),
        (SpectrumMode::RankOne, None) => Verdict::pass("finite sum"),
        (SpectrumMode::DirichletNeumann, _) => {
            Verdict::pass("lim iξ·m(iξ) = −1 is finite and negative")
        }
    };
    let d_density = Verdict::pass("automatic — finite support");

    if let Some(detail) = data.interlacing_failure() {
        let b_value = match mode {
            SpectrumMode::RankOne => Some(
                data.mus
                    .iter()
                    .zip(&data.lambdas)
                    .map(|(&m, &l)| m - l)
                    .sum::<T>(),
            ),
            SpectrumMode::DirichletNeumann => None,
        };
        return Ok(ConditionReport {
            mode,
            all_pass: false,
            a_interlacing: Verdict::fail(detail),
            b_delta: finite_b(b_value),
            b_value,
            c_moments: Verdict::pass("finite support; moments not tabulated without a)"),
            moments: Vec::new(),
            d_density,
            tau_positivity: Verdict::fail("not evaluated: a) fails"),
            taus: Vec::new(),
        });
    }

    let spectra = InterlacedSpectra::try_from(data.clone())?;
    let (b_value, taus) = match mode {
        SpectrumMode::RankOne => {
            let d = delta(&spectra)?;
            (Some(d), tau_rank_one(&spectra, d))
        }
        SpectrumMode::DirichletNeumann => (Some(-T::one()), tau_dirichlet_neumann(&spectra)),
    };
    let (tau_positivity, taus, moments) = match taus {
        Ok(taus) => {
            let m = build_measure(spectra.lambdas(), &taus)
                .map(|rho| moments(&rho, 2 * n.min(MOMENT_ROWS) - 1));
            match m {
                Ok(m) => (Verdict::pass(format!("all {n} τ_n > 0")), taus, m),
                Err(e) => (Verdict::fail(e.to_string()), taus, Vec::new()),
            }
        }
        Err(e) => (Verdict::fail(e.to_string()), Vec::new(), Vec::new()),
    };
    let c_moments = Verdict::pass(format!(
        "automatic — finite support; first {} moments attached",
        moments.len()
    ));
    let all_pass = tau_positivity.pass;
    Ok(ConditionReport {
        mode,
        all_pass,
        a_interlacing: Verdict::pass(match mode {
            SpectrumMode::RankOne => "λ_1 < μ_1 < λ_2 < … < λ_N < μ_N",
            SpectrumMode::DirichletNeumann => "λ_1 < μ_1 < λ_2 < … < μ_{N−1} < λ_N",
        }),
        b_delta: finite_b(b_value),
        b_value,
        c_moments,
        moments,
        d_density,
        tau_positivity,
        taus,
    })
}
