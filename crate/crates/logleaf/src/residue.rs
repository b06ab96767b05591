//! Residues as exact rational vectors over a declared constant basis.
//!
//! The basis symbols are asserted (not verified) to be linearly independent
//! over the rationals; every report downstream carries that assumption. With
//! independence granted, integer relations among residues reduce to the left
//! kernel of the rational coordinate matrix, which is computed exactly.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lattice::{left_kernel, Lattice};
use crate::matrix::RationalMatrix;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ResidueError {
    #[error("residue list is empty")]
    EmptyResidueList,
    #[error("residues are declared over different symbol bases")]
    MixedBases,
    #[error("degree and residue lists have different lengths")]
    LengthMismatch,
    #[error("symbol names must be unique (duplicate {0:?})")]
    DuplicateSymbol(String),
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("a residue must be nonzero (residues lie in C*)")]
    ZeroResidue,
    #[error("coordinate count does not match the symbol basis")]
    CoordinateLength,
    #[error("numeric embedding is missing a value for symbol {0:?}")]
    MissingNumericValue(String),
    #[error("numeric embedding for {0:?} is not finite")]
    NonFiniteNumericValue(String),
    #[error("numeric embedding must send \"1\" to 1")]
    UnitSymbolValue,
}

/// Ordered list of constant symbols, e.g. `["1", "sqrt2", "i"]`, with an
/// optional complex embedding used by the numeric oracle.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolBasis {
    symbols: Vec<String>,
    numeric_values: Option<BTreeMap<String, Complex64>>,
}

impl SymbolBasis {
    pub fn new(symbols: Vec<String>) -> Result<Self, ResidueError> {
        let mut seen = std::collections::BTreeSet::new();
        for s in &symbols {
            if !seen.insert(s.clone()) {
                return Err(ResidueError::DuplicateSymbol(s.clone()));
            }
        }
        Ok(SymbolBasis {
            symbols,
            numeric_values: None,
        })
    }

    pub fn with_numeric(
        symbols: Vec<String>,
        numeric_values: BTreeMap<String, Complex64>,
    ) -> Result<Self, ResidueError> {
        let basis = Self::new(symbols)?;
        for s in &basis.symbols {
            let v = numeric_values
                .get(s)
                .ok_or_else(|| ResidueError::MissingNumericValue(s.clone()))?;
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(ResidueError::NonFiniteNumericValue(s.clone()));
            }
            if s == "1" && *v != Complex64::new(1.0, 0.0) {
                return Err(ResidueError::UnitSymbolValue);
            }
        }
        for s in numeric_values.keys() {
            if !basis.symbols.iter().any(|t| t == s) {
                return Err(ResidueError::UnknownSymbol(s.clone()));
            }
        }
        Ok(SymbolBasis {
            symbols: basis.symbols,
            numeric_values: Some(numeric_values),
        })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn index_of(&self, symbol: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == symbol)
    }

    pub fn has_numeric_values(&self) -> bool {
        self.numeric_values.is_some()
    }

    pub fn numeric_values(&self) -> Option<&BTreeMap<String, Complex64>> {
        self.numeric_values.as_ref()
    }

    /// Numeric values aligned with the symbol order.
    pub fn numeric_vector(&self) -> Option<Vec<Complex64>> {
        let map = self.numeric_values.as_ref()?;
        Some(self.symbols.iter().map(|s| map[s]).collect())
    }
}

/// One residue written as rational coordinates over a shared basis.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidueVector {
    basis: Arc<SymbolBasis>,
    coords: Vec<BigRational>,
}

impl ResidueVector {
    pub fn new(basis: Arc<SymbolBasis>, coords: Vec<BigRational>) -> Result<Self, ResidueError> {
        if coords.len() != basis.len() {
            return Err(ResidueError::CoordinateLength);
        }
        if coords.iter().all(BigRational::is_zero) {
            return Err(ResidueError::ZeroResidue);
        }
        Ok(ResidueVector { basis, coords })
    }

    pub fn from_map(
        basis: Arc<SymbolBasis>,
        map: &BTreeMap<String, BigRational>,
    ) -> Result<Self, ResidueError> {
        let mut coords = vec![BigRational::zero(); basis.len()];
        for (symbol, value) in map {
            let idx = basis
                .index_of(symbol)
                .ok_or_else(|| ResidueError::UnknownSymbol(symbol.clone()))?;
            coords[idx] = value.clone();
        }
        Self::new(basis, coords)
    }

    pub fn basis(&self) -> &Arc<SymbolBasis> {
        &self.basis
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn scaled(&self, factor: &BigRational) -> Result<Self, ResidueError> {
        if factor.is_zero() {
            return Err(ResidueError::ZeroResidue);
        }
        Self::new(
            self.basis.clone(),
            self.coords.iter().map(|c| c * factor).collect(),
        )
    }

    /// Complex value under the basis embedding, when one is declared.
    pub fn numeric_value(&self) -> Option<Complex64> {
        let values = self.basis.numeric_vector()?;
        let mut acc = Complex64::new(0.0, 0.0);
        for (c, v) in self.coords.iter().zip(values) {
            acc += rational_to_f64(c) * v;
        }
        Some(acc)
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

fn shared_basis(residues: &[ResidueVector]) -> Result<&Arc<SymbolBasis>, ResidueError> {
    let first = residues.first().ok_or(ResidueError::EmptyResidueList)?;
    for r in residues.iter().skip(1) {
        if !Arc::ptr_eq(r.basis(), first.basis()) && r.basis().as_ref() != first.basis().as_ref() {
            return Err(ResidueError::MixedBases);
        }
    }
    Ok(first.basis())
}

/// The lattice `{ (m_0, ..., m_k) : sum_j m_j * residue_j = 0 }`.
///
/// Denominators are cleared column-wise before taking the exact integer
/// kernel; under the declared independence of the basis symbols every basis
/// vector of the result annihilates the residues identically.
pub fn relation_lattice(residues: &[ResidueVector]) -> Result<Lattice, ResidueError> {
    shared_basis(residues)?;
    let rows = residues.iter().map(|r| r.coords().to_vec()).collect();
    let coord = RationalMatrix::from_rows(rows);
    Ok(left_kernel(&coord.clear_denominators_columnwise()))
}

/// Exact value of `sum_j degree_j * residue_j` written over the basis.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicValue {
    pub symbols: Vec<String>,
    pub coords: Vec<BigRational>,
}

impl SymbolicValue {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(BigRational::is_zero)
    }
}

impl fmt::Display for SymbolicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (symbol, coeff) in self.symbols.iter().zip(&self.coords) {
            if coeff.is_zero() {
                continue;
            }
            let mag = coeff.abs();
            if first {
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if coeff.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if symbol == "1" {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{symbol}")?;
            } else {
                write!(f, "{mag}*{symbol}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ResidueTheoremOutcome {
    Satisfied,
    Violated { value: SymbolicValue },
}

impl ResidueTheoremOutcome {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, ResidueTheoremOutcome::Satisfied)
    }
}

/// Checks the global residue constraint `sum_j d_j * residue_j = 0` that a
/// closed logarithmic 1-form on projective space must satisfy. Evaluated
/// exactly in basis coordinates.
pub fn residue_theorem_check(
    degrees: &[u64],
    residues: &[ResidueVector],
) -> Result<ResidueTheoremOutcome, ResidueError> {
    if degrees.len() != residues.len() {
        return Err(ResidueError::LengthMismatch);
    }
    let basis = shared_basis(residues)?;
    let mut total = vec![BigRational::zero(); basis.len()];
    for (d, r) in degrees.iter().zip(residues) {
        let factor = BigRational::from(BigInt::from(*d));
        for (acc, c) in total.iter_mut().zip(r.coords()) {
            *acc += c * &factor;
        }
    }
    if total.iter().all(BigRational::is_zero) {
        Ok(ResidueTheoremOutcome::Satisfied)
    } else {
        Ok(ResidueTheoremOutcome::Violated {
            value: SymbolicValue {
                symbols: basis.symbols().to_vec(),
                coords: total,
            },
        })
    }
}
