//! Row-style Hermite normal form.
//!
//! Convention: upper echelon, positive pivots, entries above each pivot
//! reduced into `[0, pivot)`, zero rows last. This form is a canonical
//! representative, so two integer row spans are equal iff their HNFs are
//! entry-wise identical.


use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::matrix::{div_round, IntegerMatrix};

/// Computes `(H, U)` with `U` unimodular and `U * A = H` in row HNF.
pub fn hermite_normal_form(a: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix) {
    let m = a.rows();
    let mut h = a.clone();
    let mut u = IntegerMatrix::identity(m);
    let mut pivot_row = 0;

    for col in 0..h.cols() {
        if pivot_row == m {
            break;
        }
        if (pivot_row..m).all(|r| h.at(r, col).is_zero()) {
            continue;
        }
        // Repeatedly move the entry of least magnitude into the pivot slot and
        // reduce everything below it; magnitudes strictly decrease, so this
        // terminates with a single nonzero entry in the column.
        loop {
            let best = (pivot_row..m)
                .filter(|&r| !h.at(r, col).is_zero())
                .min_by(|&x, &y| h.at(x, col).magnitude().cmp(h.at(y, col).magnitude()))
                .expect("nonzero entry exists");
            h.swap_rows(pivot_row, best);
            u.swap_rows(pivot_row, best);
            let mut clean = true;
            for r in pivot_row + 1..m {
                if h.at(r, col).is_zero() {
                    continue;
                }
                let q = -div_round(h.at(r, col), h.at(pivot_row, col));
                h.add_scaled_row(r, pivot_row, &q);
                u.add_scaled_row(r, pivot_row, &q);
                if !h.at(r, col).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h.at(pivot_row, col).is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        for r in 0..pivot_row {
            let q = -h.at(r, col).div_floor(h.at(pivot_row, col));
            h.add_scaled_row(r, pivot_row, &q);
            u.add_scaled_row(r, pivot_row, &q);
        }
        pivot_row += 1;
    }

    (h, u)
}

/// True iff `m` satisfies the row HNF invariants used across this crate.
pub fn is_row_hnf(m: &IntegerMatrix) -> bool {
    let mut prev_pivot: Option<usize> = None;
    let mut seen_zero_row = false;
    for r in 0..m.rows() {
        let pivot_col = (0..m.cols()).find(|&c| !m.at(r, c).is_zero());
        match pivot_col {
            None => seen_zero_row = true,
            Some(c) => {
                if seen_zero_row {
                    return false; // nonzero row after a zero row
                }
                if let Some(p) = prev_pivot {
                    if c <= p {
                        return false;
                    }
                }
                prev_pivot = Some(c);
                let pivot = m.at(r, c);
                if !pivot.is_positive() {
                    return false;
                }
                for above in 0..r {
                    let e = m.at(above, c);
                    if e.is_negative() || e >= pivot {
                        return false;
                    }
                }
            }
        }
    }
    true
}
