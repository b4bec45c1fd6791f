//! Polynomials and simultaneous root extraction.

use super::LinalgError;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;
use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

/// Iteration cap for the simultaneous root iteration.
const MAX_ITERATIONS: usize = 500;

/// A root has converged when its correction satisfies
/// `|step| < STEP_TOL * (1 + |z|)`.
const STEP_TOL: f64 = 1e-13;

/// Accepted roots must satisfy
/// `|p(z)| <= RESIDUAL_TOL * sum_j |c_j| * max(1, |z|)^degree`.
const RESIDUAL_TOL: f64 = 1e-10;

/// Initial guesses are rotated by this angle so they avoid falling on a
/// symmetry axis of the root set.
const GUESS_ROTATION: f64 = 0.4;

/// Complex polynomial with coefficients in ascending degree order:
/// `coeffs[k]` multiplies `z^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    /// The list must be nonempty with finite entries, and the leading (last)
    /// coefficient must be nonzero.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self, LinalgError> {
        match coeffs.last() {
            None => return Err(LinalgError::InvalidPolynomial),
            Some(lead) if lead.norm_sqr() == 0.0 => return Err(LinalgError::InvalidPolynomial),
            Some(_) => {}
        }
        if coeffs
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(LinalgError::NonFiniteEntry);
        }
        Ok(Self { coeffs })
    }

    /// Monic polynomial with exactly the given roots; an empty list gives
    /// the constant 1.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        for &root in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
            for (k, &c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= root * c;
            }
            coeffs = next;
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Horner evaluation at `z`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        horner(&self.coeffs, z)
    }
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

fn derivative(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c * k as f64)
        .collect()
}

/// All roots of `p`, multiplicities included, by Aberth-Ehrlich simultaneous
/// iteration.
///
/// Zero roots (vanishing low-order coefficients) are deflated exactly and
/// listed first; the remaining roots start on a circle of radius
/// `(|c_0| / |c_deg|)^(1/deg)` and are refined together, each step combining
/// the Newton correction with the repulsion of the other iterates. Fails
/// with [`LinalgError::NoConvergence`] when the step tolerance is not met
/// within 500 sweeps or a refined root leaves too large a residual.
pub fn roots(p: &Polynomial) -> Result<Vec<Complex64>, LinalgError> {
    if p.degree() < 1 {
        return Err(LinalgError::DegreeTooSmall);
    }

    let mut coeffs = p.coeffs.clone();
    let mut zeros = 0;
    while coeffs.len() > 1 && coeffs[0] == Complex64::new(0.0, 0.0) {
        coeffs.remove(0);
        zeros += 1;
    }
    let degree = coeffs.len() - 1;
    let mut out = vec![Complex64::new(0.0, 0.0); zeros];
    if degree == 0 {
        return Ok(out);
    }

    let deriv = derivative(&coeffs);
    let mut radius = (coeffs[0].norm() / coeffs[degree].norm()).powf(1.0 / degree as f64);
    if !radius.is_finite() || radius <= 0.0 {
        radius = 1.0;
    }
    let mut z: Vec<Complex64> = (0..degree)
        .map(|k| Complex64::from_polar(radius, TAU * k as f64 / degree as f64 + GUESS_ROTATION))
        .collect();

    let mut converged = false;
    for _ in 0..MAX_ITERATIONS {
        let mut all_converged = true;
        for i in 0..degree {
            let value = horner(&coeffs, z[i]);
            if value == Complex64::new(0.0, 0.0) {
                continue;
            }
            let newton = value / horner(&deriv, z[i]);
            let mut repulsion = Complex64::new(0.0, 0.0);
            for j in 0..degree {
                if j != i {
                    repulsion += Complex64::new(1.0, 0.0) / (z[i] - z[j]);
                }
            }
            let step = newton / (Complex64::new(1.0, 0.0) - newton * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                // Exact iterate collision or vanishing derivative; nudge off
                // the bad spot and keep sweeping.
                z[i] = z[i] * Complex64::new(1.0 + 1e-8, 1e-8) + Complex64::new(1e-8, 1e-8);
                all_converged = false;
                continue;
            }
            z[i] -= step;
            if step.norm() >= STEP_TOL * (1.0 + z[i].norm()) {
                all_converged = false;
            }
        }
        if all_converged {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(LinalgError::NoConvergence);
    }

    let coeff_scale: f64 = coeffs.iter().map(|c| c.norm()).sum();
    for &root in &z {
        let bound = RESIDUAL_TOL * coeff_scale * root.norm().max(1.0).powi(degree as i32);
        if horner(&coeffs, root).norm() > bound {
            return Err(LinalgError::NoConvergence);
        }
    }

    out.extend(z);
    Ok(out)
}
