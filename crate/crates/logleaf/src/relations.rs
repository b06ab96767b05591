//! Heuristic integer-relation detection for numerically known residues.
//!
//! The detector reduces the standard embedding `[I | N*Re(v) | N*Im(v)]`
//! with `N = 1/epsilon` by exact LLL and keeps the rows whose recomputed
//! residual and height pass the requested bounds. Results carry no
//! completeness guarantee and every scan is flagged heuristic; the exact
//! route for residues with known coordinates is `relation_lattice`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::lattice::Lattice;

pub const DEFAULT_HEIGHT_BOUND: u64 = 1_000_000;

/// Conservative default for double-precision inputs.
pub fn default_epsilon(values: &[Complex64]) -> f64 {
    let max = values.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
    if max > 0.0 {
        1e-10 * max
    } else {
        1e-10
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RelationError {
    #[error("value list is empty")]
    EmptyValues,
    #[error("value at index {0} is not finite")]
    NonFiniteValue(usize),
    #[error("epsilon must be positive and finite")]
    InvalidEpsilon,
    #[error("height bound must be at least 1")]
    InvalidHeightBound,
    #[error("epsilon is too small to embed these values at double precision")]
    ScaleOverflow,
}

/// One candidate relation `m` with `|sum_j m_j v_j| <= epsilon`.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationCandidate {
    pub vector: Vec<BigInt>,
    pub residual: f64,
    pub height: BigInt,
}

/// Scan result; `heuristic` is always true by construction.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationScan {
    pub candidates: Vec<RelationCandidate>,
    pub height_bound: u64,
    pub epsilon: f64,
    pub heuristic: bool,
}

/// Finds primitive, pairwise non-parallel integer vectors `m` with
/// `max|m_j| <= height_bound` and `|sum m_j v_j| <= epsilon`.
///
/// The accepted LLL rows are augmented with the canonical basis of their
/// integer span, so when the scan recovers a relation sublattice it also
/// reports that sublattice's canonical basis vectors verbatim.
pub fn numeric_relation_candidates(
    values: &[Complex64],
    height_bound: u64,
    epsilon: f64,
) -> Result<RelationScan, RelationError> {
    if values.is_empty() {
        return Err(RelationError::EmptyValues);
    }
    for (i, v) in values.iter().enumerate() {
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(RelationError::NonFiniteValue(i));
        }
    }
    if epsilon <= 0.0 || !epsilon.is_finite() {
        return Err(RelationError::InvalidEpsilon);
    }
    if height_bound < 1 {
        return Err(RelationError::InvalidHeightBound);
    }

    let n = values.len();
    let scale = 1.0 / epsilon;
    let mut rows = Vec::with_capacity(n);
    for (i, v) in values.iter().enumerate() {
        let mut row = vec![BigInt::zero(); n + 2];
        row[i] = BigInt::one();
        row[n] = scaled_round(v.re, scale)?;
        row[n + 1] = scaled_round(v.im, scale)?;
        rows.push(row);
    }

    let reduced = lll_reduce(rows);
    let mut accepted: Vec<Vec<BigInt>> = Vec::new();
    for row in &reduced {
        if let Some(m) = normalize(&row[..n]) {
            if admissible(&m, values, height_bound, epsilon) && !accepted.contains(&m) {
                accepted.push(m);
            }
        }
    }

    // Canonical basis vectors of the recovered span.
    let span = Lattice::from_generators(n, accepted.clone());
    for b in span.basis() {
        if let Some(m) = normalize(b) {
            if admissible(&m, values, height_bound, epsilon) && !accepted.contains(&m) {
                accepted.push(m);
            }
        }
    }

    let mut candidates: Vec<RelationCandidate> = accepted
        .into_iter()
        .map(|m| {
            let residual = residual_of(&m, values);
            let height = height_of(&m);
            RelationCandidate {
                vector: m,
                residual,
                height,
            }
        })
        .collect();
    candidates.sort_by(|a, b| (&a.height, &a.vector).cmp(&(&b.height, &b.vector)));

    Ok(RelationScan {
        candidates,
        height_bound,
        epsilon,
        heuristic: true,
    })
}

fn scaled_round(x: f64, scale: f64) -> Result<BigInt, RelationError> {
    let scaled = x * scale;
    if !scaled.is_finite() {
        return Err(RelationError::ScaleOverflow);
    }
    BigInt::from_f64(scaled.round()).ok_or(RelationError::ScaleOverflow)
}

/// Primitive representative with positive leading entry; `None` for zero.
fn normalize(m: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut g = BigInt::zero();
    for e in m {
        g = g.gcd(e);
    }
    if g.is_zero() {
        return None;
    }
    let mut out: Vec<BigInt> = m.iter().map(|e| e / &g).collect();
    let lead = out.iter().find(|e| !e.is_zero()).expect("nonzero");
    if lead.is_negative() {
        for e in &mut out {
            *e = -e.clone();
        }
    }
    Some(out)
}

fn height_of(m: &[BigInt]) -> BigInt {
    m.iter()
        .map(|e| BigInt::from(e.magnitude().clone()))
        .max()
        .unwrap_or_else(BigInt::zero)
}

/// Residual recomputed from the original values, independent of the
/// embedding used during reduction.
fn residual_of(m: &[BigInt], values: &[Complex64]) -> f64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (c, v) in m.iter().zip(values) {
        acc += c.to_f64().unwrap_or(f64::INFINITY) * v;
    }
    acc.norm()
}

fn admissible(m: &[BigInt], values: &[Complex64], height_bound: u64, epsilon: f64) -> bool {
    height_of(m) <= BigInt::from(height_bound) && residual_of(m, values) <= epsilon
}

/// Exact LLL reduction (delta = 99/100) of integer row vectors.
/// Rows must be linearly independent, which the relation embedding
/// guarantees through its identity block.
pub(crate) fn lll_reduce(mut basis: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let n = basis.len();
    if n <= 1 {
        return basis;
    }
    let (mut mu, mut norms) = gram_schmidt(&basis);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let delta = BigRational::new(BigInt::from(99), BigInt::from(100));

    let mut k = 1;
    while k < n {
        size_reduce(&mut basis, &mut mu, k, k - 1, &half);
        let lovasz = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms[k - 1];
        if norms[k] < lovasz {
            swap_step(&mut basis, &mut mu, &mut norms, k, n);
            k = std::cmp::max(k - 1, 1);
        } else {
            for l in (0..k.saturating_sub(1)).rev() {
                size_reduce(&mut basis, &mut mu, k, l, &half);
            }
            k += 1;
        }
    }
    basis
}

fn gram_schmidt(basis: &[Vec<BigInt>]) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let n = basis.len();
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    let mut norms = vec![BigRational::zero(); n];
    let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut v: Vec<BigRational> = basis[i]
            .iter()
            .map(|e| BigRational::from(e.clone()))
            .collect();
        for j in 0..i {
            let dot = int_rat_dot(&basis[i], &star[j]);
            let coeff = dot / &norms[j];
            for (ve, se) in v.iter_mut().zip(&star[j]) {
                *ve -= &coeff * se;
            }
            mu[i][j] = coeff;
        }
        norms[i] = v.iter().map(|e| e * e).sum();
        assert!(
            norms[i].is_positive(),
            "LLL input rows must be linearly independent"
        );
        star.push(v);
    }
    (mu, norms)
}

fn int_rat_dot(a: &[BigInt], b: &[BigRational]) -> BigRational {
    a.iter()
        .zip(b)
        .map(|(x, y)| BigRational::from(x.clone()) * y)
        .sum()
}

fn size_reduce(
    basis: &mut [Vec<BigInt>],
    mu: &mut [Vec<BigRational>],
    k: usize,
    l: usize,
    half: &BigRational,
) {
    if mu[k][l].abs() <= *half {
        return;
    }
    let q = round_rational(&mu[k][l]);
    let (head, tail) = basis.split_at_mut(k);
    for (x, y) in tail[0].iter_mut().zip(&head[l]) {
        *x -= &q * y;
    }
    let qr = BigRational::from(q);
    for i in 0..l {
        let delta = &qr * &mu[l][i];
        mu[k][i] -= delta;
    }
    mu[k][l] -= qr;
}

fn swap_step(
    basis: &mut [Vec<BigInt>],
    mu: &mut [Vec<BigRational>],
    norms: &mut [BigRational],
    k: usize,
    n: usize,
) {
    basis.swap(k, k - 1);
    for j in 0..k.saturating_sub(1) {
        let tmp = mu[k][j].clone();
        mu[k][j] = mu[k - 1][j].clone();
        mu[k - 1][j] = tmp;
    }
    let m = mu[k][k - 1].clone();
    let pivot = &norms[k] + &m * &m * &norms[k - 1];
    assert!(pivot.is_positive(), "degenerate swap in LLL");
    mu[k][k - 1] = &m * &norms[k - 1] / &pivot;
    norms[k] = &norms[k - 1] * &norms[k] / &pivot;
    norms[k - 1] = pivot;
    for i in k + 1..n {
        let t = mu[i][k].clone();
        mu[i][k] = &mu[i][k - 1] - &m * &t;
        mu[i][k - 1] = &t + &mu[k][k - 1] * &mu[i][k];
    }
}

fn round_rational(r: &BigRational) -> BigInt {
    let two = BigInt::from(2);
    (r.numer() * &two + r.denom()).div_floor(&(r.denom() * &two))
}
