use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::Path;

use num_complex::Complex;
use serde::de::DeserializeOwned;
use serde::Serialize;

use jts_core::forward::{asymptotic_coeffs, normalizing_constants, perturb, weyl_m};
use jts_core::generate::spectra_of;
use jts_core::inverse::{check_conditions, recover_scaled};
use jts_core::{InterlacedSpectra, JacobiMatrix, SpectraData, SpectrumMode};

use crate::failure::Failure;
use crate::{Axis, CheckArgs, ForwardArgs, InverseArgs, MtraceArgs, Spacing};

/// Environment variable scaling the spectral round-trip tolerance.
pub const TOL_OVERRIDE_VAR: &str = "JTS_TOL_OVERRIDE";

pub fn forward(a: ForwardArgs) -> Result<(), Failure> {
    let j: JacobiMatrix<f64> = read_json(&a.matrix)?;
    let spectra = match (a.dn, a.h1, a.h2) {
        (true, _, _) => spectra_of(&j, SpectrumMode::DirichletNeumann, (0.0, 0.0))?,
        (false, Some(h1), Some(h2)) => {
            if h1 == h2 {
                return Err(Failure::Input("--h1 and --h2 must differ".into()));
            }
            if h1 > h2 {
                eprintln!("jts: note: --h1 > --h2, writing the spectra for h1 = {h2}, h2 = {h1}");
            }
            spectra_of(&j, SpectrumMode::RankOne, (h1.min(h2), h1.max(h2)))?
        }
        _ => return Err(Failure::Input("either --dn or both --h1 and --h2 are required".into())),
    };
    write_json(a.output.as_deref(), &spectra)
}

pub fn inverse(a: InverseArgs) -> Result<(), Failure> {
    let data: SpectraData<f64> = read_json(&a.spectra)?;
    match (data.mode, a.dn) {
        (SpectrumMode::RankOne, true) => {
            return Err(Failure::Input("--dn given but the file holds rank_one spectra".into()))
        }
        (SpectrumMode::DirichletNeumann, false) => {
            return Err(Failure::Input("--h1 given but the file holds dirichlet_neumann spectra".into()))
        }
        _ => {}
    }
    check_conditions(&data)?.into_result()?;
    let spectra = InterlacedSpectra::try_from(data)?;
    let result = recover_scaled(&spectra, a.h1, tol_scale()?)?;
    write_json(a.output.as_deref(), &result)
}

pub fn check(a: CheckArgs) -> Result<(), Failure> {
    let data: SpectraData<f64> = read_json(&a.spectra)?;
    let report = check_conditions(&data)?;
    write_json(a.output.as_deref(), &report)?;
    report.into_result().map(|_| ()).map_err(Failure::from)
}

pub fn mtrace(a: MtraceArgs) -> Result<(), Failure> {
    let j: JacobiMatrix<f64> = read_json(&a.matrix)?;
    let Axis::Imag = a.axis;
    let xs = grid(a.from, a.to, a.points, a.spacing)?;
    let rho = normalizing_constants(&perturb(&j, a.h))?;
    let (c1, c2, c3) = asymptotic_coeffs(&j, a.h);

    let mut w = csv::Writer::from_writer(output(a.output.as_deref())?);
    w.write_record(["xi", "re_m", "im_m", "pred2", "pred3"]).map_err(csv_err)?;
    for xi in xs {
        let m = weyl_m(&rho, Complex::new(0.0, xi))?;
        // m(iξ) ≈ c1/(iξ) + c2/(iξ)² + c3/(iξ)³: the ζ⁻² term is the real
        // part, the ζ⁻¹ and ζ⁻³ terms the imaginary part.
        let pred2 = -c2 / (xi * xi);
        let pred3 = -c1 / xi + c3 / (xi * xi * xi);
        w.write_record([xi, m.re, m.im, pred2, pred3].map(|v| format!("{v:.16e}")))
            .map_err(csv_err)?;
    }
    w.flush().map_err(|e| Failure::Input(e.to_string()))
}

fn grid(from: f64, to: f64, points: usize, spacing: Spacing) -> Result<Vec<f64>, Failure> {
    if !(from.is_finite() && to.is_finite()) || points == 0 {
        return Err(Failure::Input("--from/--to must be finite and --points positive".into()));
    }
    if points == 1 {
        return Ok(vec![from]);
    }
    let step = |k: usize| k as f64 / (points - 1) as f64;
    match spacing {
        Spacing::Linear => {
            if from <= 0.0 && to >= 0.0 {
                return Err(Failure::Input("the ξ range must not contain 0".into()));
            }
            Ok((0..points).map(|k| from + (to - from) * step(k)).collect())
        }
        Spacing::Log => {
            if from <= 0.0 || to <= 0.0 {
                return Err(Failure::Input("log spacing needs a positive ξ range".into()));
            }
            let (a, b) = (from.ln(), to.ln());
            Ok((0..points).map(|k| (a + (b - a) * step(k)).exp()).collect())
        }
    }
}

/// Multiplier on the spectral tolerance from `JTS_TOL_OVERRIDE`, default 1.
pub fn tol_scale() -> Result<f64, Failure> {
    match std::env::var(TOL_OVERRIDE_VAR) {
        Err(_) => Ok(1.0),
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(x) if x.is_finite() && x > 0.0 => Ok(x),
            _ => Err(Failure::Input(format!("{TOL_OVERRIDE_VAR}={s:?} is not a positive number"))),
        },
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

pub fn output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| Failure::io(p, e))?)),
        None => Box::new(io::stdout().lock()),
    })
}

pub fn write_json<V: Serialize>(path: Option<&Path>, value: &V) -> Result<(), Failure> {
    let mut w = output(path)?;
    jts_core::json::write(&mut w, value).map_err(|e| Failure::Input(e.to_string()))?;
    writeln!(w).and_then(|_| w.flush()).map_err(|e| Failure::Input(e.to_string()))
}

pub fn csv_err(e: csv::Error) -> Failure {
    Failure::Input(e.to_string())
}
