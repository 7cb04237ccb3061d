mod common;

use common::{couplings, jacobi, well_conditioned};
use jts_core::forward::{eigenvalues, normalizing_constants, perturb, truncate_first, weyl_m};
use jts_core::generate::spectra_of;
use jts_core::inverse::{delta, recover, tau_dirichlet_neumann, tau_rank_one};
use jts_core::reconstruct::{ricatti_reconstruct, stieltjes_lanczos};
use jts_core::{Error, InterlacedSpectra, JacobiMatrix, SpectralMeasure, SpectrumMode, Validate};
use num_complex::Complex;
use proptest::prelude::*;

fn min_weight(j: &JacobiMatrix<f64>) -> f64 {
    normalizing_constants(j)
        .unwrap()
        .weights()
        .iter()
        .copied()
        .fold(1.0, f64::min)
}

fn min_gap(x: &[f64]) -> f64 {
    x.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rank_one_spectra_interlace(j in jacobi(30), (h1, h2) in couplings()) {
        let lam = eigenvalues(&perturb(&j, h2)).unwrap();
        let mu = eigenvalues(&perturb(&j, h1)).unwrap();
        let slack = 4.0 * f64::EPSILON * (j.norm_inf() + h1.abs().max(h2.abs()));
        for k in 0..j.n() {
            prop_assert!(lam[k] <= mu[k] + slack);
            if k + 1 < j.n() {
                prop_assert!(mu[k] <= lam[k + 1] + slack);
            }
        }
    }

    #[test]
    fn dirichlet_neumann_spectra_interlace(j in jacobi(30)) {
        prop_assume!(j.n() > 1);
        let lam = eigenvalues(&j).unwrap();
        let mu = eigenvalues(&truncate_first(&j).unwrap()).unwrap();
        let slack = 4.0 * f64::EPSILON * j.norm_inf();
        for k in 0..mu.len() {
            prop_assert!(lam[k] <= mu[k] + slack && mu[k] <= lam[k + 1] + slack);
        }
    }

    #[test]
    fn trace_identity(j in jacobi(30), (h1, h2) in couplings()) {
        let lam = eigenvalues(&perturb(&j, h2)).unwrap();
        let mu = eigenvalues(&perturb(&j, h1)).unwrap();
        let d: f64 = mu.iter().zip(&lam).map(|(m, l)| m - l).sum();
        prop_assert!((d - (h2 - h1)).abs() <= 1e-10 * j.norm_inf());
    }

    #[test]
    fn weights_are_normalized(j in jacobi(30)) {
        let rho = normalizing_constants(&j).unwrap();
        let sum: f64 = rho.weights().iter().sum();
        prop_assert!((sum - 1.0).abs() <= 1e-10);
        prop_assert!(rho.weights().iter().all(|&w| w > 0.0));
        prop_assert!(rho.validate().is_empty());
    }

    #[test]
    fn herglotz(j in jacobi(30), re in -6.0..6.0f64, log_im in -3.0..2.0f64, upper in any::<bool>()) {
        let im = if upper { 10f64.powf(log_im) } else { -10f64.powf(log_im) };
        let z = Complex::new(re, im);
        let m = weyl_m(&normalizing_constants(&j).unwrap(), z).unwrap();
        prop_assert!(m.im * z.im > 0.0);
    }

    #[test]
    fn residues_are_the_weights(j in well_conditioned()) {
        let rho = normalizing_constants(&j).unwrap();
        // the O(ε) term of (λ_n − ζ)m(ζ) at ζ = λ_n + iε is imaginary, so
        // the real part is off by O(ε²/gap²)
        let eps = 1e-4 * min_gap(rho.locations()).min(1.0);
        for (x, w) in rho.atoms() {
            let z = Complex::new(x, eps);
            let local = (Complex::new(x, 0.0) - z) * weyl_m(&rho, z).unwrap();
            prop_assert!((local.re - w).abs() <= 1e-8, "{} vs {}", local.re, w);
        }
    }

    #[test]
    fn rank_one_round_trip(j in well_conditioned(), (h1, h2) in couplings()) {
        let s = spectra_of(&j, SpectrumMode::RankOne, (h1, h2)).unwrap();
        let r = recover(&s, Some(h1)).unwrap();
        prop_assert!(r.matrix.max_abs_diff(&j) <= 1e-8, "{}", r.matrix.max_abs_diff(&j));
        prop_assert!((r.recovered_param.unwrap().finite().unwrap() - h2).abs() <= 1e-10);
    }

    #[test]
    fn dirichlet_neumann_round_trip(j in well_conditioned()) {
        let s = spectra_of(&j, SpectrumMode::DirichletNeumann, (0.0, 0.0)).unwrap();
        let r = recover(&s, None).unwrap();
        prop_assert!(r.matrix.max_abs_diff(&j) <= 1e-8, "{}", r.matrix.max_abs_diff(&j));
    }

    /// Over the full domain, recovery either refuses the input as
    /// indeterminate or its error is bounded by the conditioning
    /// `ε(1 + ‖J‖)/(w_min·min(Δ, 1))` of the rounded spectra.
    #[test]
    fn round_trip_within_conditioning(j in jacobi(30), (h1, h2) in couplings()) {
        let scale = f64::EPSILON * (1.0 + j.norm_inf());
        match spectra_of(&j, SpectrumMode::RankOne, (h1, h2)) {
            Err(e) => prop_assert!(matches!(e, Error::InvalidSpectra(_))),
            Ok(s) => {
                let r = recover(&s, Some(h1)).unwrap();
                let bound = 1e3 * scale / (min_weight(&perturb(&j, h2)) * (h2 - h1).min(1.0));
                prop_assert!(r.matrix.max_abs_diff(&j) <= bound.max(1e-12));
            }
        }
        match spectra_of(&j, SpectrumMode::DirichletNeumann, (h1, h2)) {
            Err(e) => prop_assert!(matches!(e, Error::InvalidSpectra(_))),
            Ok(s) => {
                let r = recover(&s, None).unwrap();
                let bound = 1e3 * scale / min_weight(&j);
                prop_assert!(r.matrix.max_abs_diff(&j) <= bound.max(1e-12));
            }
        }
    }

    #[test]
    fn tau_equals_alpha(j in well_conditioned(), (h1, h2) in couplings()) {
        let s = spectra_of(&j, SpectrumMode::RankOne, (h1, h2)).unwrap();
        let tau = tau_rank_one(&s, delta(&s).unwrap()).unwrap();
        let alpha = normalizing_constants(&perturb(&j, h2)).unwrap().normalizing_constants();
        for (t, a) in tau.iter().zip(&alpha) {
            prop_assert!((t - a).abs() <= 1e-9 * a, "{} vs {}", t, a);
        }
        let s = spectra_of(&j, SpectrumMode::DirichletNeumann, (h1, h2)).unwrap();
        let tau = tau_dirichlet_neumann(&s).unwrap();
        let alpha = normalizing_constants(&j).unwrap().normalizing_constants();
        for (t, a) in tau.iter().zip(&alpha) {
            prop_assert!((t - a).abs() <= 1e-9 * a, "{} vs {}", t, a);
        }
    }

    #[test]
    fn favard_round_trip(j in jacobi(30)) {
        let back = stieltjes_lanczos(&normalizing_constants(&j).unwrap()).unwrap();
        prop_assert!(back.max_abs_diff(&j) <= 1e-9, "{}", back.max_abs_diff(&j));
    }

    #[test]
    fn engines_agree(j in jacobi(30), depth in 1..=8usize) {
        prop_assume!(j.n() >= depth);
        let rho = normalizing_constants(&j).unwrap();
        let full = stieltjes_lanczos(&rho).unwrap();
        let prefix = ricatti_reconstruct(&rho, depth).unwrap();
        prop_assert!(full.max_abs_diff(&prefix) <= 1e-6, "{}", full.max_abs_diff(&prefix));
    }

    #[test]
    fn reconstruction_is_positive_or_errors(
        atoms in prop::collection::vec((-5.0..5.0f64, 1e-6..1.0f64), 1..25)
    ) {
        let total: f64 = atoms.iter().map(|a| a.1).sum();
        let Ok(rho) = SpectralMeasure::new(atoms.iter().map(|&(x, w)| (x, w / total))) else {
            return Ok(());
        };
        if let Ok(j) = stieltjes_lanczos(&rho) {
            prop_assert!(j.off_diagonal().iter().all(|&b| b > 0.0));
            prop_assert!(j.validate().is_empty());
        }
    }

    #[test]
    fn atom_order_is_irrelevant(j in jacobi(20), seed in any::<u64>()) {
        let rho = normalizing_constants(&j).unwrap();
        let mut atoms: Vec<(f64, f64)> = rho.atoms().collect();
        // deterministic shuffle from the seed
        let mut state = seed | 1;
        for i in (1..atoms.len()).rev() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            atoms.swap(i, (state % (i as u64 + 1)) as usize);
        }
        let shuffled = SpectralMeasure::new(atoms).unwrap();
        prop_assert_eq!(stieltjes_lanczos(&shuffled).unwrap(), stieltjes_lanczos(&rho).unwrap());
    }

    #[test]
    fn constructed_types_validate_clean(j in jacobi(30), (h1, h2) in couplings()) {
        prop_assert!(j.validate().is_empty());
        if let Ok(s) = spectra_of(&j, SpectrumMode::RankOne, (h1, h2)) {
            prop_assert!(s.validate().is_empty());
            prop_assert!(InterlacedSpectra::try_from(s.to_data()).is_ok());
        }
    }
}
