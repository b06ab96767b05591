//! Smith normal form over the integers with full transform tracking.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::matrix::{div_round, IntegerMatrix};

/// Decomposition `U * A * V = S` with `U`, `V` unimodular and `S` diagonal,
/// the diagonal positive and each entry dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub s: IntegerMatrix,
    pub v: IntegerMatrix,
    pub source_rows: usize,
    pub source_cols: usize,
}

impl SmithDecomposition {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s.at(i, i).clone())
            .collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }

    /// Diagonal entries strictly greater than one, in divisibility order.
    pub fn torsion_factors(&self) -> Vec<BigInt> {
        self.diagonal()
            .into_iter()
            .filter(|d| d > &BigInt::from(1))
            .collect()
    }
}

/// Smallest-magnitude pivoting keeps intermediate growth modest at the sizes
/// this crate handles (at most a few dozen rows).
pub fn smith_normal_form(a: &IntegerMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntegerMatrix::identity(m);
    let mut v = IntegerMatrix::identity(n);

    let mut t = 0;
    while t < m.min(n) {
        match find_min_nonzero(&s, t) {
            None => break,
            Some((pi, pj)) => {
                s.swap_rows(t, pi);
                u.swap_rows(t, pi);
                s.swap_cols(t, pj);
                v.swap_cols(t, pj);
            }
        }
        loop {
            let mut dirty = false;
            for r in t + 1..m {
                if s.at(r, t).is_zero() {
                    continue;
                }
                let q = -div_round(s.at(r, t), s.at(t, t));
                s.add_scaled_row(r, t, &q);
                u.add_scaled_row(r, t, &q);
                if !s.at(r, t).is_zero() {
                    dirty = true;
                }
            }
            for c in t + 1..n {
                if s.at(t, c).is_zero() {
                    continue;
                }
                let q = -div_round(s.at(t, c), s.at(t, t));
                s.add_scaled_col(c, t, &q);
                v.add_scaled_col(c, t, &q);
                if !s.at(t, c).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                let (pi, pj) = find_min_nonzero(&s, t).expect("pivot block is nonzero");
                s.swap_rows(t, pi);
                u.swap_rows(t, pi);
                s.swap_cols(t, pj);
                v.swap_cols(t, pj);
                continue;
            }
            // Pivot row and column are clean. Fold in any entry the pivot does
            // not divide; the next round shrinks the pivot toward the gcd of
            // the whole block, which is what makes the divisor chain hold.
            match find_nondivisible(&s, t) {
                Some(i) => {
                    let one = BigInt::from(1);
                    s.add_scaled_row(t, i, &one);
                    u.add_scaled_row(t, i, &one);
                }
                None => break,
            }
        }
        t += 1;
    }

    for i in 0..m.min(n) {
        if s.at(i, i).is_negative() {
            s.negate_row(i);
            u.negate_row(i);
        }
    }

    SmithDecomposition {
        u,
        s,
        v,
        source_rows: m,
        source_cols: n,
    }
}

fn find_min_nonzero(s: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for r in t..s.rows() {
        for c in t..s.cols() {
            if s.at(r, c).is_zero() {
                continue;
            }
            match best {
                None => best = Some((r, c)),
                Some((br, bc)) => {
                    if s.at(r, c).magnitude() < s.at(br, bc).magnitude() {
                        best = Some((r, c));
                    }
                }
            }
        }
    }
    best
}

/// Row index `i > t` holding an entry not divisible by the pivot, if any.
fn find_nondivisible(s: &IntegerMatrix, t: usize) -> Option<usize> {
    let pivot = s.at(t, t);
    for r in t + 1..s.rows() {
        for c in t + 1..s.cols() {
            if !s.at(r, c).mod_floor(pivot).is_zero() {
                return Some(r);
            }
        }
    }
    None
}
