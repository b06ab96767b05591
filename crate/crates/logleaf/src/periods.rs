//! Numeric cross-validation of periods: loop integrals of the logarithmic
//! form restricted to a generic line, checked against residue values, plus a
//! direct integration check on the explicit exponential cover of a
//! coordinate-hyperplane arrangement.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::foliation::FoliationSpec;
use crate::poly::{poly_derivative, poly_eval, poly_roots};
use crate::residue::ResidueTheoremOutcome;

pub const DEFAULT_SAMPLES: usize = 1024;
pub const DEFAULT_TOLERANCE: f64 = 1e-6;
const MIN_SAMPLES: usize = 64;
const LINE_ATTEMPTS: usize = 48;
const SEPARATION_FACTOR: f64 = 1e-3;
const LOOP_RADIUS_FACTOR: f64 = 0.45;

#[derive(Debug, Error, PartialEq)]
pub enum PeriodError {
    #[error("every divisor component needs a defining polynomial for the period oracle")]
    MissingPolynomials,
    #[error("the symbol basis needs numeric values for the period oracle")]
    MissingNumerics,
    #[error("no line with well-separated roots found after {attempts} attempts; the input polynomials look degenerate")]
    DegenerateLine { attempts: usize },
    #[error("a root lies within the safety margin of the integration contour")]
    RootOnContour,
    #[error("need at least {MIN_SAMPLES} quadrature samples (got {0})")]
    TooFewSamples(usize),
    #[error("meridian integral for component {component} misses 2*pi*i*residue by {abs_error:.3e} (tolerance {tolerance:.3e})")]
    MeridianMismatch {
        component: usize,
        abs_error: f64,
        tolerance: f64,
    },
    #[error("sum of meridian integrals misses the degree-weighted residue sum by {abs_error:.3e} (bound {bound:.3e})")]
    GlobalSumMismatch { abs_error: f64, bound: f64 },
    #[error("cover integral misses the closed form by {abs_error:.3e} (tolerance {tolerance:.3e})")]
    ToleranceExceeded { abs_error: f64, tolerance: f64 },
    #[error("a path needs at least two points")]
    PathTooShort,
    #[error("path point {0} has the wrong coordinate count")]
    PathPointLength(usize),
    #[error("path point {0} is not finite")]
    NonFinitePathPoint(usize),
    #[error("{0} residues do not fit an ambient of dimension {1}")]
    TooManyResidues(usize, usize),
    #[error("residue list is empty")]
    NoResidues,
    #[error("residue value {0} is not finite")]
    NonFiniteResidue(usize),
}

/// One root of a component polynomial along the chosen line.
#[derive(Clone, Debug)]
pub struct LineRoot {
    pub value: Complex64,
    pub multiplicity: usize,
    pub component: usize,
}

/// Restriction of the logarithmic data to a generic line `base + t * dir`.
#[derive(Clone, Debug)]
pub struct LineRestriction {
    pub base: Vec<Complex64>,
    pub direction: Vec<Complex64>,
    /// Univariate coefficients (ascending) of each component along the line.
    pub component_polys: Vec<Vec<Complex64>>,
    pub degrees: Vec<u64>,
    /// Numeric residue per component, when the basis has an embedding.
    pub residues: Option<Vec<Complex64>>,
    pub roots: Vec<LineRoot>,
}

#[derive(Clone, Copy, Debug)]
pub struct LoopIntegralResult {
    pub value: Complex64,
    pub expected: Complex64,
    pub abs_error: f64,
    pub samples: usize,
    pub radius: f64,
}

#[derive(Clone, Debug)]
pub struct MeridianCheck {
    pub component: usize,
    pub root: Complex64,
    pub radius: f64,
    pub value: Complex64,
    pub expected: Complex64,
    pub abs_error: f64,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct MeridianReport {
    pub meridians: Vec<MeridianCheck>,
    pub global_sum: Complex64,
    pub expected_global_sum: Complex64,
    pub global_abs_error: f64,
    pub global_bound: f64,
    pub residue_constraint: ResidueTheoremOutcome,
    pub tolerance: f64,
    pub seed: u64,
    pub samples: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct CoverCheckReport {
    pub value: Complex64,
    pub expected: Complex64,
    pub abs_error: f64,
    pub tolerance: f64,
    pub segments_per_edge: usize,
}

fn gaussian_complex<R: Rng>(rng: &mut R) -> Complex64 {
    let u1: f64 = rng.gen_range(1e-12..1.0);
    let u2: f64 = rng.gen();
    let r = (-2.0 * u1.ln()).sqrt();
    let theta = 2.0 * std::f64::consts::PI * u2;
    Complex64::new(r * theta.cos(), r * theta.sin())
}

/// Chooses a pseudo-random line (deterministic in `seed`), restricts every
/// component polynomial to it, and keeps the line only when all degrees
/// survive and the roots are pairwise well separated.
pub fn restrict_to_line(spec: &FoliationSpec, seed: u64) -> Result<LineRestriction, PeriodError> {
    let polys: Vec<_> = spec
        .components()
        .iter()
        .map(|c| c.polynomial.as_ref().ok_or(PeriodError::MissingPolynomials))
        .collect::<Result<_, _>>()?;
    let degrees = spec.degrees();
    let residues = spec.numeric_residues();
    let vars = spec.ambient().dim() + 1;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'attempt: for _ in 0..LINE_ATTEMPTS {
        let base: Vec<Complex64> = (0..vars).map(|_| gaussian_complex(&mut rng)).collect();
        let direction: Vec<Complex64> = (0..vars).map(|_| gaussian_complex(&mut rng)).collect();

        let mut component_polys = Vec::with_capacity(polys.len());
        for (poly, &degree) in polys.iter().zip(&degrees) {
            let coeffs = poly.restrict_to_line(&base, &direction);
            debug_assert_eq!(coeffs.len() as u64, degree + 1);
            let peak = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
            let lead = coeffs.last().expect("degree >= 1").norm();
            // The line hits the hyperplane at infinity of its own chart away
            // from every component exactly when the leading term survives.
            if lead <= 1e-8 * peak {
                continue 'attempt;
            }
            component_polys.push(coeffs);
        }

        let mut roots = Vec::new();
        for (j, coeffs) in component_polys.iter().enumerate() {
            match poly_roots(coeffs) {
                Some(rs) => {
                    for value in rs {
                        roots.push(LineRoot {
                            value,
                            multiplicity: 1,
                            component: j,
                        });
                    }
                }
                None => continue 'attempt,
            }
        }

        if roots.len() >= 2 {
            let mut diameter = 0.0f64;
            let mut min_dist = f64::INFINITY;
            for i in 0..roots.len() {
                for j in i + 1..roots.len() {
                    let d = (roots[i].value - roots[j].value).norm();
                    diameter = diameter.max(d);
                    min_dist = min_dist.min(d);
                }
            }
            if diameter < 1e-12 || min_dist < SEPARATION_FACTOR * diameter {
                continue 'attempt;
            }
        }

        return Ok(LineRestriction {
            base,
            direction,
            component_polys,
            degrees,
            residues,
            roots,
        });
    }
    Err(PeriodError::DegenerateLine {
        attempts: LINE_ATTEMPTS,
    })
}

/// Trapezoidal contour integral of `sum_j residue_j * f_j'(t) / f_j(t)` over
/// the circle `|t - center| = radius`, compared against `2*pi*i` times the
/// residues enclosed. Uniform trapezoid on a circle is spectrally accurate
/// for integrands analytic near the contour.
pub fn integrate_loop(
    restriction: &LineRestriction,
    center: Complex64,
    radius: f64,
    samples: usize,
) -> Result<LoopIntegralResult, PeriodError> {
    if samples < MIN_SAMPLES {
        return Err(PeriodError::TooFewSamples(samples));
    }
    let residues = restriction
        .residues
        .as_ref()
        .ok_or(PeriodError::MissingNumerics)?;

    for root in &restriction.roots {
        let dist = (root.value - center).norm();
        if dist < radius {
            continue; // enclosed
        }
        if dist - radius < 0.5 * radius {
            return Err(PeriodError::RootOnContour);
        }
    }

    let derivatives: Vec<Vec<Complex64>> = restriction
        .component_polys
        .iter()
        .map(|c| poly_derivative(c))
        .collect();

    let tau = 2.0 * std::f64::consts::PI;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..samples {
        let theta = tau * k as f64 / samples as f64;
        let e = Complex64::new(theta.cos(), theta.sin());
        let t = center + radius * e;
        let mut omega = Complex64::new(0.0, 0.0);
        for (j, coeffs) in restriction.component_polys.iter().enumerate() {
            omega += residues[j] * poly_eval(&derivatives[j], t) / poly_eval(coeffs, t);
        }
        acc += omega * Complex64::new(0.0, radius) * e;
    }
    let value = acc * (tau / samples as f64);

    let mut expected = Complex64::new(0.0, 0.0);
    for root in &restriction.roots {
        if (root.value - center).norm() < radius {
            expected += root.multiplicity as f64 * residues[root.component];
        }
    }
    expected *= Complex64::new(0.0, tau);

    Ok(LoopIntegralResult {
        value,
        expected,
        abs_error: (value - expected).norm(),
        samples,
        radius,
    })
}

/// Integrates a meridian loop around every root of every component on one
/// generic line and checks each value against `2*pi*i*residue`; also checks
/// that the values over all roots sum to `2*pi*i * sum_j d_j residue_j`.
pub fn verify_meridians(
    spec: &FoliationSpec,
    tolerance: f64,
    seed: u64,
    samples: usize,
) -> Result<MeridianReport, PeriodError> {
    let restriction = restrict_to_line(spec, seed)?;
    let residues = restriction
        .residues
        .clone()
        .ok_or(PeriodError::MissingNumerics)?;

    let mut meridians = Vec::with_capacity(restriction.roots.len());
    let mut worst: Option<(usize, f64)> = None;
    let mut global_sum = Complex64::new(0.0, 0.0);

    for (idx, root) in restriction.roots.iter().enumerate() {
        let nearest = restriction
            .roots
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != idx)
            .map(|(_, other)| (other.value - root.value).norm())
            .fold(f64::INFINITY, f64::min);
        let radius = if nearest.is_finite() {
            LOOP_RADIUS_FACTOR * nearest
        } else {
            LOOP_RADIUS_FACTOR
        };
        let result = integrate_loop(&restriction, root.value, radius, samples)?;
        let passed = result.abs_error <= tolerance;
        if !passed && worst.is_none_or(|(_, e)| result.abs_error > e) {
            worst = Some((root.component, result.abs_error));
        }
        global_sum += result.value;
        meridians.push(MeridianCheck {
            component: root.component,
            root: root.value,
            radius,
            value: result.value,
            expected: result.expected,
            abs_error: result.abs_error,
            passed,
        });
    }

    let tau = 2.0 * std::f64::consts::PI;
    let mut expected_global_sum = Complex64::new(0.0, 0.0);
    for (d, r) in restriction.degrees.iter().zip(&residues) {
        expected_global_sum += *d as f64 * r;
    }
    expected_global_sum *= Complex64::new(0.0, tau);
    let global_abs_error = (global_sum - expected_global_sum).norm();
    let global_bound = restriction.roots.len().max(1) as f64 * tolerance;

    let residue_constraint = spec
        .residue_constraint()
        .expect("spec validated at construction");

    if let Some((component, abs_error)) = worst {
        return Err(PeriodError::MeridianMismatch {
            component,
            abs_error,
            tolerance,
        });
    }
    if global_abs_error > global_bound {
        return Err(PeriodError::GlobalSumMismatch {
            abs_error: global_abs_error,
            bound: global_bound,
        });
    }

    Ok(MeridianReport {
        meridians,
        global_sum,
        expected_global_sum,
        global_abs_error,
        global_bound,
        residue_constraint,
        tolerance,
        seed,
        samples,
    })
}

/// Integrates the pulled-back form along a polyline on the exponential cover
/// of a coordinate-hyperplane arrangement complement and compares with the
/// closed form of its linear primitive.
///
/// Coordinates `x_1 ... x_k` are the exponentiated directions for components
/// `H_1 ... H_k`; `H_0` is the chart hyperplane and its residue never enters
/// the pullback. The integral is evaluated as branch-tracked logarithm
/// increments of `w_j = exp(2*pi*i*x_j)` along the pushed path, so it sees
/// only covering-map values, never the closed form it is checked against.
pub fn explicit_cover_check(
    dim: usize,
    residues: &[Complex64],
    path: &[Vec<Complex64>],
    tolerance: f64,
    segments_per_edge: usize,
) -> Result<CoverCheckReport, PeriodError> {
    if residues.is_empty() {
        return Err(PeriodError::NoResidues);
    }
    for (i, r) in residues.iter().enumerate() {
        if !r.re.is_finite() || !r.im.is_finite() {
            return Err(PeriodError::NonFiniteResidue(i));
        }
    }
    let k = residues.len() - 1;
    if k > dim {
        return Err(PeriodError::TooManyResidues(residues.len(), dim));
    }
    if path.len() < 2 {
        return Err(PeriodError::PathTooShort);
    }
    for (i, p) in path.iter().enumerate() {
        if p.len() != dim {
            return Err(PeriodError::PathPointLength(i));
        }
        if p.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(PeriodError::NonFinitePathPoint(i));
        }
    }

    let tau_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
    let mut value = Complex64::new(0.0, 0.0);
    for edge in path.windows(2) {
        let (a, b) = (&edge[0], &edge[1]);
        for j in 1..=k {
            let delta = b[j - 1] - a[j - 1];
            // keep per-step branch increments well inside (-pi, pi)
            let needed = (8.0 * delta.norm()).ceil() as usize;
            let steps = segments_per_edge.max(16).max(needed);
            let mut prev = (tau_i * a[j - 1]).exp();
            let mut acc = Complex64::new(0.0, 0.0);
            for s in 1..=steps {
                let x = a[j - 1] + (b[j - 1] - a[j - 1]) * (s as f64 / steps as f64);
                let w = (tau_i * x).exp();
                acc += (w / prev).ln();
                prev = w;
            }
            value += residues[j] * acc;
        }
    }

    let mut expected = Complex64::new(0.0, 0.0);
    let first = &path[0];
    let last = &path[path.len() - 1];
    for j in 1..=k {
        expected += residues[j] * (last[j - 1] - first[j - 1]);
    }
    expected *= tau_i;

    let abs_error = (value - expected).norm();
    if abs_error > tolerance {
        return Err(PeriodError::ToleranceExceeded {
            abs_error,
            tolerance,
        });
    }
    Ok(CoverCheckReport {
        value,
        expected,
        abs_error,
        tolerance,
        segments_per_edge,
    })
}
