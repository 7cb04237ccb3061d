//! `jts roundtrip`: seeded instances, forward spectra, recovery, residuals.

use std::fmt::Write as _;

use rayon::prelude::*;

use jts_core::generate::{Instance, InstanceGenerator};
use jts_core::inverse::recover_scaled;
use jts_core::{Error, SpectrumMode, Violation};

use crate::commands::{csv_err, output, tol_scale};
use crate::failure::Failure;
use crate::{Mode, RoundtripArgs};

/// Tolerance on `‖J_rec − J‖_∞`.
pub const MATRIX_TOL: f64 = 1e-8;
/// Tolerance on `|h₂_rec − h₂|`.
pub const H2_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Ok,
    /// Recovered, but a residual is over tolerance.
    Over,
    /// Two spectral points closer than the separation floor.
    Indeterminate,
    Error,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Over => "over_tolerance",
            Status::Indeterminate => "indeterminate",
            Status::Error => "error",
        }
    }
}

#[derive(Debug, Clone)]
struct Trial {
    index: usize,
    n: usize,
    h1: f64,
    h2: f64,
    status: Status,
    matrix_residual: f64,
    h2_residual: f64,
    lambda_residual: f64,
    mu_residual: f64,
    message: String,
}

pub fn run(a: RoundtripArgs) -> Result<(), Failure> {
    if a.n == 0 || a.trials == 0 {
        return Err(Failure::Input("--n and --trials must be at least 1".into()));
    }
    let scale = tol_scale()?;
    let mode = match a.mode {
        Mode::RankOne => SpectrumMode::RankOne,
        Mode::Dn => SpectrumMode::DirichletNeumann,
    };
    let mut gen = InstanceGenerator::new(a.seed);
    let instances: Vec<Instance> = (0..a.trials).map(|_| gen.instance(a.n)).collect();
    let trials: Vec<Trial> = instances
        .par_iter()
        .enumerate()
        .map(|(index, inst)| trial(index, inst, mode, scale))
        .collect();

    if let Some(path) = &a.csv {
        let mut w = csv::Writer::from_writer(output(Some(path))?);
        w.write_record([
            "trial",
            "n",
            "h1",
            "h2",
            "status",
            "matrix_residual",
            "h2_residual",
            "lambda_residual",
            "mu_residual",
            "message",
        ])
        .map_err(csv_err)?;
        for t in &trials {
            let f = |v: f64| format!("{v:.6e}");
            w.write_record([
                t.index.to_string(),
                t.n.to_string(),
                f(t.h1),
                f(t.h2),
                t.status.as_str().to_string(),
                f(t.matrix_residual),
                f(t.h2_residual),
                f(t.lambda_residual),
                f(t.mu_residual),
                t.message.clone(),
            ])
            .map_err(csv_err)?;
        }
        w.flush().map_err(|e| Failure::Input(e.to_string()))?;
    }

    let count = |s: Status| trials.iter().filter(|t| t.status == s).count();
    let recovered = trials.iter().filter(|t| matches!(t.status, Status::Ok | Status::Over));
    let max_of = |f: fn(&Trial) -> f64| recovered.clone().map(f).fold(0.0, f64::max);
    let failures = a.trials - count(Status::Ok);
    let mut out = String::new();
    let _ = writeln!(out, "mode: {}", mode);
    let _ = writeln!(out, "n: {}  trials: {}  seed: {}", a.n, a.trials, a.seed);
    let _ = writeln!(out, "tolerances: matrix {:e}  h2 {:e}", MATRIX_TOL * scale, H2_TOL * scale);
    let _ = writeln!(out, "max matrix residual: {:.3e}", max_of(|t| t.matrix_residual));
    if mode == SpectrumMode::RankOne {
        let _ = writeln!(out, "max h2 residual: {:.3e}", max_of(|t| t.h2_residual));
    }
    let _ = writeln!(
        out,
        "ok: {}  over tolerance: {}  indeterminate: {}  errors: {}",
        count(Status::Ok),
        count(Status::Over),
        count(Status::Indeterminate),
        count(Status::Error)
    );
    let _ = writeln!(out, "failures: {failures}");
    print!("{out}");

    if failures > 0 {
        let first = trials.iter().find(|t| t.status != Status::Ok).expect("a failing trial");
        return Err(Failure::RoundTrip(format!(
            "{failures} of {} trials failed; first is trial {} ({}{}{})",
            a.trials,
            first.index,
            first.status.as_str(),
            if first.message.is_empty() { "" } else { ": " },
            first.message
        )));
    }
    Ok(())
}

fn trial(index: usize, inst: &Instance, mode: SpectrumMode, scale: f64) -> Trial {
    let (h1, h2) = inst.couplings;
    let mut t = Trial {
        index,
        n: inst.matrix.n(),
        h1,
        h2,
        status: Status::Error,
        matrix_residual: f64::NAN,
        h2_residual: f64::NAN,
        lambda_residual: f64::NAN,
        mu_residual: f64::NAN,
        message: String::new(),
    };
    let given = match mode {
        SpectrumMode::RankOne => Some(h1),
        SpectrumMode::DirichletNeumann => None,
    };
    let result = inst.spectra(mode).and_then(|s| recover_scaled(&s, given, scale));
    let r = match result {
        Ok(r) => r,
        Err(e) => {
            if is_indeterminate(&e) {
                t.status = Status::Indeterminate;
            }
            t.message = e.to_string();
            return t;
        }
    };
    t.matrix_residual = r.matrix.max_abs_diff(&inst.matrix);
    t.h2_residual = match (mode, r.recovered_param.and_then(|p| p.finite())) {
        (SpectrumMode::RankOne, Some(h)) => (h - h2).abs(),
        _ => 0.0,
    };
    t.lambda_residual = r.diagnostics.get("lambda_residual").copied().unwrap_or(0.0);
    t.mu_residual = r.diagnostics.get("mu_residual").copied().unwrap_or(0.0);
    t.status = if t.matrix_residual <= MATRIX_TOL * scale && t.h2_residual <= H2_TOL * scale {
        Status::Ok
    } else {
        Status::Over
    };
    t
}

/// Spectral points closer than the separation floor, either rejected by the
/// constructor or by the condition check.
fn is_indeterminate(e: &Error) -> bool {
    match e {
        Error::IndeterminateInterlacing { .. } => true,
        Error::InvalidSpectra(v) => v.iter().any(|v| matches!(v, Violation::GapBelowSeparation { .. })),
        _ => false,
    }
}
