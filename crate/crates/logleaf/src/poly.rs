//! Homogeneous polynomials with complex coefficients and univariate helpers
//! for the period oracle: line restriction, evaluation, and root finding.

use num_complex::Complex64;
use thiserror::Error;

/// Degrees beyond this make double-precision root finding unreliable.
pub const MAX_POLY_DEGREE: u64 = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomial has no nonzero terms")]
    ZeroPolynomial,
    #[error("term {0} has the wrong exponent count")]
    ExponentLength(usize),
    #[error("terms have mixed total degrees ({0} and {1})")]
    MixedDegrees(u64, u64),
    #[error("coefficient of term {0} is not finite")]
    NonFiniteCoefficient(usize),
    #[error("degree {0} exceeds the supported maximum {MAX_POLY_DEGREE}")]
    DegreeTooLarge(u64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneousPolynomial {
    num_vars: usize,
    degree: u64,
    terms: Vec<(Complex64, Vec<u32>)>,
}

impl HomogeneousPolynomial {
    pub fn new(
        num_vars: usize,
        terms: Vec<(Complex64, Vec<u32>)>,
    ) -> Result<Self, PolyError> {
        let mut kept = Vec::new();
        let mut degree: Option<u64> = None;
        for (i, (coeff, exps)) in terms.into_iter().enumerate() {
            if !coeff.re.is_finite() || !coeff.im.is_finite() {
                return Err(PolyError::NonFiniteCoefficient(i));
            }
            if exps.len() != num_vars {
                return Err(PolyError::ExponentLength(i));
            }
            let total: u64 = exps.iter().map(|&e| e as u64).sum();
            match degree {
                None => degree = Some(total),
                Some(d) if d != total => return Err(PolyError::MixedDegrees(d, total)),
                _ => {}
            }
            if coeff != Complex64::new(0.0, 0.0) {
                kept.push((coeff, exps));
            }
        }
        if kept.is_empty() {
            return Err(PolyError::ZeroPolynomial);
        }
        let degree = degree.expect("kept nonempty");
        if degree > MAX_POLY_DEGREE {
            return Err(PolyError::DegreeTooLarge(degree));
        }
        Ok(HomogeneousPolynomial {
            num_vars,
            degree,
            terms: kept,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn terms(&self) -> &[(Complex64, Vec<u32>)] {
        &self.terms
    }

    pub fn eval(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.num_vars);
        let mut acc = Complex64::new(0.0, 0.0);
        for (coeff, exps) in &self.terms {
            let mut term = *coeff;
            for (p, &e) in point.iter().zip(exps) {
                term *= p.powu(e);
            }
            acc += term;
        }
        acc
    }

    /// Coefficients (ascending in `t`) of `F(base + t * dir)`.
    pub fn restrict_to_line(&self, base: &[Complex64], dir: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(base.len(), self.num_vars);
        assert_eq!(dir.len(), self.num_vars);
        let mut acc = vec![Complex64::new(0.0, 0.0); self.degree as usize + 1];
        for (coeff, exps) in &self.terms {
            let mut term = vec![*coeff];
            for (i, &e) in exps.iter().enumerate() {
                let linear = [base[i], dir[i]];
                for _ in 0..e {
                    term = poly_mul(&term, &linear);
                }
            }
            for (a, t) in acc.iter_mut().zip(&term) {
                *a += t;
            }
        }
        acc
    }
}

pub fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn poly_eval(coeffs: &[Complex64], t: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = acc * t + c;
    }
    acc
}

pub fn poly_derivative(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * i as f64)
        .collect()
}

/// All roots of a univariate polynomial by simultaneous (Durand-Kerner)
/// iteration followed by Newton polishing. Returns `None` when the residuals
/// fail the acceptance threshold, which callers treat as "pick another line".
pub fn poly_roots(coeffs: &[Complex64]) -> Option<Vec<Complex64>> {
    let degree = coeffs.len().checked_sub(1)?;
    if degree == 0 {
        return Some(Vec::new());
    }
    let lead = coeffs[degree];
    if lead.norm() == 0.0 {
        return None;
    }
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    if degree == 1 {
        return Some(vec![-monic[0]]);
    }

    let radius = 1.0 + monic[..degree].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut roots: Vec<Complex64> = (0..degree)
        .map(|i| {
            let angle = 2.0 * std::f64::consts::PI * i as f64 / degree as f64 + 0.4;
            0.7 * radius * Complex64::new(angle.cos(), angle.sin())
        })
        .collect();

    for _ in 0..600 {
        let mut max_step = 0.0f64;
        for i in 0..degree {
            let p = poly_eval(&monic, roots[i]);
            let mut q = Complex64::new(1.0, 0.0);
            for j in 0..degree {
                if j != i {
                    q *= roots[i] - roots[j];
                }
            }
            if q.norm() < 1e-300 {
                roots[i] += Complex64::new(1e-6 * radius, 1e-6 * radius);
                max_step = f64::INFINITY;
                continue;
            }
            let step = p / q;
            roots[i] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step <= 1e-14 * (1.0 + radius) {
            break;
        }
    }

    // Newton polish against the original coefficients.
    let deriv = poly_derivative(coeffs);
    for root in roots.iter_mut() {
        for _ in 0..4 {
            let dp = poly_eval(&deriv, *root);
            if dp.norm() < 1e-300 {
                break;
            }
            *root -= poly_eval(coeffs, *root) / dp;
        }
    }

    let scale: f64 = coeffs.iter().map(|c| c.norm()).sum();
    for root in &roots {
        let growth = root.norm().max(1.0).powi(degree as i32);
        if poly_eval(coeffs, *root).norm() > 1e-9 * scale * growth {
            return None;
        }
    }
    Some(roots)
}
