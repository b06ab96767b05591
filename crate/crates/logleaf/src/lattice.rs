//! Sublattices of Z^n in canonical Hermite-form bases.
//!
//! Canonicity is the load-bearing property: two `Lattice` values describe the
//! same sublattice iff their stored bases are entry-wise identical, so lattice
//! equality is plain `==`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

use crate::group::AbelianGroupInvariants;
use crate::hermite::hermite_normal_form;
use crate::matrix::IntegerMatrix;
use crate::smith::smith_normal_form;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("sublattice basis vector {vector:?} lies outside the ambient lattice")]
    SubNotContained { vector: Vec<BigInt> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    ambient_rank: usize,
    /// Rows in canonical HNF; linearly independent, zero rows absent.
    basis: Vec<Vec<BigInt>>,
}

impl Lattice {
    /// Canonicalizes an arbitrary generating set (possibly dependent rows).
    pub fn from_generators(ambient_rank: usize, generators: Vec<Vec<BigInt>>) -> Self {
        for g in &generators {
            assert_eq!(g.len(), ambient_rank, "generator length mismatch");
        }
        let (h, _) = hermite_normal_form(&IntegerMatrix::from_rows(generators));
        let basis = (0..h.rows())
            .filter(|&r| !h.is_zero_row(r))
            .map(|r| h.row_vec(r))
            .collect();
        Lattice { ambient_rank, basis }
    }

    pub fn spanned_by(vector: Vec<BigInt>) -> Self {
        let n = vector.len();
        Self::from_generators(n, vec![vector])
    }

    pub fn full(ambient_rank: usize) -> Self {
        let id = IntegerMatrix::identity(ambient_rank);
        Lattice {
            ambient_rank,
            basis: id.to_rows(),
        }
    }

    pub fn zero(ambient_rank: usize) -> Self {
        Lattice {
            ambient_rank,
            basis: Vec::new(),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// Coordinates of `v` in this basis, when `v` belongs to the lattice.
    /// Forward substitution against the echelon pivots; exact divisions only.
    pub fn coordinates_of(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.ambient_rank, "vector length mismatch");
        let mut w = v.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        for b in &self.basis {
            let pivot_col = b.iter().position(|e| !e.is_zero()).expect("no zero rows");
            let (q, r) = w[pivot_col].div_rem(&b[pivot_col]);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= &q * bi;
                }
            }
            coords.push(q);
        }
        if w.iter().all(BigInt::is_zero) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates_of(v).is_some()
    }

    /// Invariants of the quotient `self / sub` as a finitely generated abelian
    /// group. The coordinate matrix of `sub` in this basis is integral by the
    /// containment precondition; its Smith form gives the torsion chain.
    pub fn quotient_by(&self, sub: &Lattice) -> Result<AbelianGroupInvariants, LatticeError> {
        assert_eq!(
            self.ambient_rank, sub.ambient_rank,
            "ambient rank mismatch"
        );
        let mut coord_rows = Vec::with_capacity(sub.rank());
        for b in sub.basis() {
            match self.coordinates_of(b) {
                Some(c) => coord_rows.push(c),
                None => {
                    return Err(LatticeError::SubNotContained { vector: b.clone() });
                }
            }
        }
        if coord_rows.is_empty() {
            return Ok(AbelianGroupInvariants::free(self.rank()));
        }
        let coord = IntegerMatrix::new(
            sub.rank(),
            self.rank(),
            coord_rows.into_iter().flatten().collect(),
        );
        let snf = smith_normal_form(&coord);
        // sub's basis rows are independent, so the coordinate matrix has full
        // row rank and every diagonal entry is nonzero.
        debug_assert_eq!(snf.rank(), sub.rank());
        Ok(AbelianGroupInvariants::new(
            self.rank() - sub.rank(),
            snf.torsion_factors(),
        ))
    }
}

/// The lattice `{ m : m * A = 0 }` of integer row vectors annihilating `A`.
///
/// Kernels of maps into a torsion-free group are saturated: if `c * v` lies in
/// the kernel for some `c >= 1` then so does `v`.
pub fn left_kernel(a: &IntegerMatrix) -> Lattice {
    let (h, u) = hermite_normal_form(a);
    let gens = (0..h.rows())
        .filter(|&r| h.is_zero_row(r))
        .map(|r| u.row_vec(r))
        .collect();
    Lattice::from_generators(a.rows(), gens)
}
