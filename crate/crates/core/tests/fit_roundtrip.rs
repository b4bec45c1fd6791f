//! Synthesize-then-fit round trips: sample a known conjugate-symmetric
//! model, fit the samples, and require the planted terms back.

use core::f64::consts::{PI, TAU};

use expseries::prony::{conjugate_symmetrize, fit, ExpTerm, ExponentialModel, FitOptions};
use expseries::{Complex64, DataPoint, TimeSeries};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Smallest pairwise distance the characteristic roots must keep. Matches
/// the conditioning assumption of the exact pipeline: closer roots make
/// the prediction system arbitrarily ill-conditioned.
const ROOT_SEPARATION: f64 = 0.1;

fn separated(z: Complex64, existing: &[Complex64]) -> bool {
    existing.iter().all(|w| (z - w).norm() >= ROOT_SEPARATION)
}

/// Random model of `terms` exponentials whose characteristic roots lie in
/// the 0.5..1.5 annulus with pairwise separation at least 0.1. Roots come
/// in conjugate pairs plus one real root when `terms` is odd, so sampled
/// ordinates are real.
fn random_model(rng: &mut ChaCha8Rng, terms: usize) -> ExponentialModel {
    'rebuild: loop {
        let mut roots: Vec<Complex64> = Vec::new();
        if terms % 2 == 1 {
            roots.push(c(rng.gen_range(0.5..1.5), 0.0));
        }
        for _ in 0..terms / 2 {
            let mut attempts = 0;
            loop {
                let radius = rng.gen_range(0.5..1.5);
                // Keep the pair off the real axis so it stays two distinct
                // roots; 2 r sin(theta) >= 0.149 separates z from its
                // conjugate for free.
                let theta = rng.gen_range(0.15..PI - 0.15);
                let z = Complex64::from_polar(radius, theta);
                if separated(z, &roots) && separated(z.conj(), &roots) {
                    roots.push(z);
                    roots.push(z.conj());
                    break;
                }
                attempts += 1;
                if attempts > 100 {
                    continue 'rebuild;
                }
            }
        }
        let mut model_terms = Vec::with_capacity(terms);
        for &z in &roots {
            if z.im == 0.0 {
                let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
                let amplitude = c(sign * rng.gen_range(0.5..2.0), 0.0);
                model_terms.push(ExpTerm::new(amplitude, z.ln()));
            } else if z.im > 0.0 {
                let amplitude =
                    Complex64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(0.0..TAU));
                model_terms.push(ExpTerm::new(amplitude, z.ln()));
                model_terms.push(ExpTerm::new(amplitude.conj(), z.ln().conj()));
            }
        }
        return ExponentialModel::new(model_terms).unwrap();
    }
}

/// Real samples of `model` at t = 1, 2, .., n.
fn sample(model: &ExponentialModel, n: usize) -> TimeSeries {
    let points = (1..=n)
        .map(|i| {
            let t = i as f64;
            DataPoint::new(t, model.evaluate(t).re)
        })
        .collect();
    TimeSeries::new("synthetic", points).unwrap()
}

/// Elementwise comparison in canonical term order, relative to the scale
/// of each planted value.
fn assert_terms_close(got: &ExponentialModel, want: &ExponentialModel, rel_tol: f64) {
    assert_eq!(got.terms().len(), want.terms().len());
    for (g, w) in got.terms().iter().zip(want.terms()) {
        let exp_err = (g.exponent - w.exponent).norm();
        assert!(
            exp_err <= rel_tol * w.exponent.norm().max(1.0),
            "exponent {} vs planted {} (error {exp_err:e})",
            g.exponent,
            w.exponent
        );
        let amp_err = (g.amplitude - w.amplitude).norm();
        assert!(
            amp_err <= rel_tol * w.amplitude.norm().max(1.0),
            "amplitude {} vs planted {} (error {amp_err:e})",
            g.amplitude,
            w.amplitude
        );
    }
}

#[test]
fn exact_fit_recovers_planted_models() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for case in 0..60 {
        let terms = rng.gen_range(1..=5);
        let planted = random_model(&mut rng, terms);
        let series = sample(&planted, 2 * terms);
        let fitted =
            fit(&series, &FitOptions::exact(terms)).unwrap_or_else(|e| panic!("case {case}: {e}"));
        assert_terms_close(&fitted, &planted, 1e-8);
    }
}

#[test]
fn least_squares_fit_recovers_planted_models() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for case in 0..20 {
        let terms = rng.gen_range(1..=5);
        let planted = random_model(&mut rng, terms);
        let extra = rng.gen_range(1..=terms + 3);
        let series = sample(&planted, 2 * terms + extra);
        let fitted = fit(&series, &FitOptions::least_squares(terms))
            .unwrap_or_else(|e| panic!("case {case}: {e}"));
        assert_terms_close(&fitted, &planted, 1e-8);
    }
}

#[test]
fn least_squares_fit_recovers_decaying_three_term_model() {
    let planted = ExponentialModel::new(vec![
        ExpTerm::new(c(2.0, 0.0), c(-0.05, 0.0)),
        ExpTerm::new(c(0.3, -0.4), c(0.02, 1.1)),
        ExpTerm::new(c(0.3, 0.4), c(0.02, -1.1)),
    ])
    .unwrap();
    let series = sample(&planted, 31);
    let fitted = fit(&series, &FitOptions::least_squares(3)).unwrap();
    assert_terms_close(&fitted, &planted, 1e-8);
}

#[test]
fn shifting_the_abscissas_rescales_only_the_amplitudes() {
    // The same ordinates fitted at t' = t + 1 must give the same
    // exponents, with each amplitude divided by the term's growth over
    // one step.
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for _ in 0..10 {
        let terms = rng.gen_range(1..=4);
        let planted = random_model(&mut rng, terms);
        let base = sample(&planted, 2 * terms);
        let shifted_points = base
            .points()
            .iter()
            .map(|p| DataPoint::new(p.t + 1.0, p.y))
            .collect();
        let shifted = TimeSeries::new("shifted", shifted_points).unwrap();

        let fit_base = fit(&base, &FitOptions::exact(terms)).unwrap();
        let fit_shifted = fit(&shifted, &FitOptions::exact(terms)).unwrap();

        for (a, b) in fit_base.terms().iter().zip(fit_shifted.terms()) {
            assert!((a.exponent - b.exponent).norm() <= 1e-8);
            let expected = a.amplitude * (-a.exponent).exp();
            let err = (b.amplitude - expected).norm();
            assert!(
                err <= 1e-8 * expected.norm(),
                "shifted amplitude {} vs expected {expected} (error {err:e})",
                b.amplitude
            );
        }
    }
}

#[test]
fn evaluation_is_independent_of_term_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let planted = random_model(&mut rng, 5);
    let mut reordered_terms = planted.terms().to_vec();
    reordered_terms.reverse();
    reordered_terms.swap(0, 2);
    let reordered = ExponentialModel::new(reordered_terms).unwrap();
    for _ in 0..100 {
        let t = rng.gen_range(-5.0..35.0);
        let a = planted.evaluate(t);
        let b = reordered.evaluate(t);
        // Canonical ordering makes the sum identical term by term, so the
        // results are equal to the bit.
        assert_eq!(a.re.to_bits(), b.re.to_bits(), "t = {t}");
        assert_eq!(a.im.to_bits(), b.im.to_bits(), "t = {t}");
    }
}

#[test]
fn symmetrization_is_a_rounding_level_adjustment() {
    // With symmetrize off the fitted terms carry rounding-sized conjugate
    // drift; snapping them must not move the model at the nodes.
    let mut rng = ChaCha8Rng::seed_from_u64(45);
    for _ in 0..10 {
        let terms = rng.gen_range(1..=5);
        let planted = random_model(&mut rng, terms);
        let series = sample(&planted, 2 * terms);
        let mut options = FitOptions::exact(terms);
        options.symmetrize = false;
        let raw = fit(&series, &options).unwrap();
        let snapped = conjugate_symmetrize(&raw).unwrap();
        let scale = series.max_abs_ordinate();
        for point in series.points() {
            let before = raw.evaluate(point.t);
            let after = snapped.evaluate(point.t);
            assert!((before - after).norm() <= 1e-6 * scale);
            assert!(after.im.abs() <= 1e-9 * scale);
        }
    }
}
