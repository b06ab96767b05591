//! Dense matrices over arbitrary-precision integers and rationals.
//!
//! All arithmetic is exact; there is no overflow at any magnitude. Matrices
//! are stored row-major and kept deliberately simple: the lattice layer on
//! top of this module is where the interesting algorithms live.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        IntegerMatrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        for row in &rows {
            assert_eq!(row.len(), c, "ragged rows");
        }
        IntegerMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Convenience constructor for tests and examples.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vec(&self, r: usize) -> Vec<BigInt> {
        self.row(r).to_vec()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row_vec(r)).collect()
    }

    pub fn is_zero_row(&self, r: usize) -> bool {
        self.row(r).iter().all(BigInt::is_zero)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[target] += factor * row[source]
    pub fn add_scaled_row(&mut self, target: usize, source: usize, factor: &BigInt) {
        assert_ne!(target, source);
        if factor.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let delta = factor * self.at(source, c);
            *self.at_mut(target, c) += delta;
        }
    }

    /// col[target] += factor * col[source]
    pub fn add_scaled_col(&mut self, target: usize, source: usize, factor: &BigInt) {
        assert_ne!(target, source);
        if factor.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let delta = factor * self.at(r, source);
            *self.at_mut(r, target) += delta;
        }
    }

    pub fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.at(r, c).clone();
            *self.at_mut(r, c) = v;
        }
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let delta = a * other.at(k, j);
                    *out.at_mut(i, j) += delta;
                }
            }
        }
        out
    }
}

/// Quotient of `a / b` rounded to the nearest integer (ties toward zero).
/// Keeps remainders at most |b|/2 during eliminations.
pub(crate) fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if r.magnitude() * 2u32 > *b.magnitude() {
        if r.is_negative() == b.is_negative() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Exact rational matrix; entries are always in lowest terms with positive
/// denominator (maintained by `BigRational` itself).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigRational>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        RationalMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        for row in &rows {
            assert_eq!(row.len(), c, "ragged rows");
        }
        RationalMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r * self.cols + c]
    }

    /// Scales every column by the lcm of its denominators, producing an
    /// integer matrix with the same left kernel (column scaling by nonzero
    /// rationals does not change which integer row combinations vanish).
    pub fn clear_denominators_columnwise(&self) -> IntegerMatrix {
        let mut out = IntegerMatrix::zeros(self.rows, self.cols);
        for c in 0..self.cols {
            let mut scale = BigInt::one();
            for r in 0..self.rows {
                scale = scale.lcm(self.at(r, c).denom());
            }
            for r in 0..self.rows {
                let v = self.at(r, c);
                *out.at_mut(r, c) = v.numer() * (&scale / v.denom());
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn div_round_is_nearest() {
        let cases: [(i64, i64, i64); 10] = [
            (7, 2, 3),
            (-7, 2, -3),
            (7, -2, -3),
            (-7, -2, 3),
            (5, 3, 2),
            (4, 3, 1),
            (-5, 3, -2),
            (6, 3, 2),
            (1, 5, 0),
            (-1, 5, 0),
        ];
        for (a, b, want) in cases {
            assert_eq!(
                div_round(&BigInt::from(a), &BigInt::from(b)),
                BigInt::from(want),
                "{a}/{b}"
            );
        }
    }

    #[test]
    fn matmul_identity() {
        let a = IntegerMatrix::from_i64_rows(&[&[1, 2], &[3, 4]]);
        let id = IntegerMatrix::identity(2);
        assert_eq!(a.mul(&id), a);
        assert_eq!(id.mul(&a), a);
    }

    #[test]
    fn clear_denominators_columnwise_keeps_ratios() {
        let m = RationalMatrix::from_rows(vec![
            vec![q(1, 2), q(1, 1)],
            vec![q(1, 3), q(-2, 1)],
        ]);
        let cleared = m.clear_denominators_columnwise();
        // first column scaled by 6, second by 1
        assert_eq!(cleared, IntegerMatrix::from_i64_rows(&[&[3, 1], &[2, -2]]));
    }

    #[test]
    fn empty_matrices_are_accepted() {
        let a = IntegerMatrix::zeros(0, 3);
        assert_eq!(a.rows(), 0);
        let b = IntegerMatrix::zeros(2, 0);
        assert_eq!(b.cols(), 0);
        assert!(b.is_zero_row(0));
    }
}
