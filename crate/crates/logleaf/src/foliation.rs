//! Foliation specifications and the topology of their generic leaves.
//!
//! Everything here reduces to exact lattice algebra. The fundamental group of
//! the complement of the polar divisor on projective space is the quotient of
//! the free abelian group on components by the degree vector; the leaf group
//! replaces the free group with the residue relation lattice. Higher homotopy
//! is reported as a comparison range, not computed.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use thiserror::Error;

use crate::group::AbelianGroupInvariants;
use crate::lattice::{Lattice, LatticeError};
use crate::poly::HomogeneousPolynomial;
use crate::residue::{
    relation_lattice, residue_theorem_check, ResidueError, ResidueTheoremOutcome, ResidueVector,
    SymbolBasis, SymbolicValue,
};

pub const MAX_COMPONENTS: usize = 64;

#[derive(Debug, Error, PartialEq)]
pub enum FoliationError {
    #[error("a foliation needs at least one divisor component")]
    NoComponents,
    #[error("at most {MAX_COMPONENTS} divisor components are supported (got {0})")]
    TooManyComponents(usize),
    #[error("ambient dimension must be at least 2 (got {0})")]
    AmbientDimensionTooSmall(usize),
    #[error("component {0} has degree 0; degrees must be at least 1")]
    ZeroDegree(usize),
    #[error("component {0} must have degree 1 on a complete-intersection ambient")]
    NonLinearOnCompleteIntersection(usize),
    #[error("component {component}: polynomial degree {found} does not match the declared degree {expected}")]
    PolynomialDegreeMismatch {
        component: usize,
        expected: u64,
        found: u64,
    },
    #[error("component {component}: polynomial uses {found} variables, expected {expected}")]
    PolynomialVariableCount {
        component: usize,
        expected: usize,
        found: usize,
    },
    #[error("defining polynomials are only supported on projective ambients")]
    PolynomialOnCompleteIntersection,
    #[error("component {0} declares its residue over a different symbol basis")]
    ForeignBasis(usize),
    #[error("this computation is only available for projective ambients")]
    UnsupportedAmbient,
    #[error("degree vector is not a residue relation: sum of degree-weighted residues is {value} (no closed logarithmic form on projective space has these residues and degrees)")]
    DegreeVectorNotInKernel { value: SymbolicValue },
    #[error("hyperplane sections need ambient dimension at least 3 (n >= 2)")]
    DimensionTooLow,
    #[error(transparent)]
    Residue(#[from] ResidueError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Ambient {
    /// Projective space of complex dimension `dim` = n + 1.
    ProjectiveSpace { dim: usize },
    /// Smooth complete intersection of the given multidegrees in a projective
    /// space of dimension `space_dim`, with `dim` = n + 1.
    CompleteIntersection {
        space_dim: usize,
        multidegrees: Vec<u64>,
        dim: usize,
    },
}

impl Ambient {
    pub fn projective(dim: usize) -> Self {
        Ambient::ProjectiveSpace { dim }
    }

    pub fn dim(&self) -> usize {
        match self {
            Ambient::ProjectiveSpace { dim } => *dim,
            Ambient::CompleteIntersection { dim, .. } => *dim,
        }
    }

    /// The `n` in `dim = n + 1`; leaves have complex dimension `n`.
    pub fn leaf_dim(&self) -> usize {
        self.dim() - 1
    }

    pub fn is_projective(&self) -> bool {
        matches!(self, Ambient::ProjectiveSpace { .. })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Component {
    pub name: String,
    pub degree: u64,
    pub residue: ResidueVector,
    pub polynomial: Option<HomogeneousPolynomial>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FoliationSpec {
    ambient: Ambient,
    basis: Arc<SymbolBasis>,
    components: Vec<Component>,
    strict: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Resonance {
    NonResonant,
    Resonant { witness: Vec<BigInt> },
}

impl Resonance {
    pub fn is_resonant(&self) -> bool {
        matches!(self, Resonance::Resonant { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomotopyStatus {
    /// The homotopy group of the leaf vanishes at this level.
    Zero,
    /// Isomorphic to the corresponding group of the divisor complement.
    IsoToComplement,
    /// Only an epimorphism from the leaf is available at the top level.
    EpiFromLeafAtN,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Headline {
    /// Leaf is (n-1)-connected.
    NMinusOneConnected,
    SimplyConnected,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConnectivityReport {
    pub pi1_leaf: Option<AbelianGroupInvariants>,
    pub resonance: Option<Resonance>,
    /// Status per homotopy level, for levels in `[2, n]`.
    pub higher: BTreeMap<usize, HomotopyStatus>,
    pub headline: Option<Headline>,
    pub assumptions: Vec<String>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HyperplaneSectionReport {
    /// The section map is an isomorphism on homotopy below this level...
    pub iso_below_level: usize,
    /// ...and an epimorphism exactly at it.
    pub epi_at_level: usize,
    pub ambient_pi1: AbelianGroupInvariants,
    pub section_pi1: AbelianGroupInvariants,
    pub pi1_equal: bool,
    /// Whether the comparison range already covers the fundamental group.
    pub pi1_match_guaranteed: bool,
}

/// Caveat for ambient dimension 2, where the leaf comparison theorem does
/// not apply and the computed group is only the abelian period-kernel value.
pub const LOW_DIMENSION_WARNING: &str = "ambient dimension 2 (n = 1) is below the range where the leaf comparison applies; the reported group is the abelian period-kernel quotient, not a certified leaf fundamental group";

pub fn standard_assumptions() -> Vec<String> {
    vec![
        "the polar divisor has simple normal crossings with smooth irreducible components".into(),
        "the polar divisor is ample".into(),
        "the leaf is a generic leaf of the foliation".into(),
        "the declared symbol basis is linearly independent over the rationals".into(),
    ]
}

impl FoliationSpec {
    pub fn new(
        ambient: Ambient,
        basis: Arc<SymbolBasis>,
        components: Vec<Component>,
        strict: bool,
    ) -> Result<Self, FoliationError> {
        if components.is_empty() {
            return Err(FoliationError::NoComponents);
        }
        if components.len() > MAX_COMPONENTS {
            return Err(FoliationError::TooManyComponents(components.len()));
        }
        if ambient.dim() < 2 {
            return Err(FoliationError::AmbientDimensionTooSmall(ambient.dim()));
        }
        for (i, comp) in components.iter().enumerate() {
            if comp.degree == 0 {
                return Err(FoliationError::ZeroDegree(i));
            }
            if comp.residue.basis().as_ref() != basis.as_ref() {
                return Err(FoliationError::ForeignBasis(i));
            }
            if !ambient.is_projective() && comp.degree != 1 {
                return Err(FoliationError::NonLinearOnCompleteIntersection(i));
            }
            if let Some(poly) = &comp.polynomial {
                if !ambient.is_projective() {
                    return Err(FoliationError::PolynomialOnCompleteIntersection);
                }
                if poly.degree() != comp.degree {
                    return Err(FoliationError::PolynomialDegreeMismatch {
                        component: i,
                        expected: comp.degree,
                        found: poly.degree(),
                    });
                }
                let expected_vars = ambient.dim() + 1;
                if poly.num_vars() != expected_vars {
                    return Err(FoliationError::PolynomialVariableCount {
                        component: i,
                        expected: expected_vars,
                        found: poly.num_vars(),
                    });
                }
            }
        }
        Ok(FoliationSpec {
            ambient,
            basis,
            components,
            strict,
        })
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn basis(&self) -> &Arc<SymbolBasis> {
        &self.basis
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn strict(&self) -> bool {
        self.strict
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.components.iter().map(|c| c.degree).collect()
    }

    pub fn degree_vector(&self) -> Vec<BigInt> {
        self.components
            .iter()
            .map(|c| BigInt::from(c.degree))
            .collect()
    }

    pub fn degree_gcd(&self) -> u64 {
        self.degrees().into_iter().fold(0, |g, d| g.gcd(&d))
    }

    /// The degree vector divided by its gcd.
    pub fn reduced_degree_vector(&self) -> Vec<BigInt> {
        let g = self.degree_gcd();
        self.components
            .iter()
            .map(|c| BigInt::from(c.degree / g))
            .collect()
    }

    pub fn residues(&self) -> Vec<ResidueVector> {
        self.components.iter().map(|c| c.residue.clone()).collect()
    }

    /// Numeric residue values, when the basis declares an embedding.
    pub fn numeric_residues(&self) -> Option<Vec<Complex64>> {
        self.components
            .iter()
            .map(|c| c.residue.numeric_value())
            .collect()
    }

    /// The integer relation lattice K of the residues.
    pub fn relation_lattice(&self) -> Result<Lattice, FoliationError> {
        Ok(relation_lattice(&self.residues())?)
    }

    /// Exact check of `sum d_j * residue_j = 0`.
    pub fn residue_constraint(&self) -> Result<ResidueTheoremOutcome, FoliationError> {
        Ok(residue_theorem_check(&self.degrees(), &self.residues())?)
    }

    /// Fundamental group of the complement of the polar divisor in projective
    /// space: `Z^{k+1} / Z(d_0, ..., d_k)`.
    pub fn complement_pi1(&self) -> Result<AbelianGroupInvariants, FoliationError> {
        if !self.ambient.is_projective() {
            return Err(FoliationError::UnsupportedAmbient);
        }
        let full = Lattice::full(self.components.len());
        Ok(full.quotient_by(&Lattice::spanned_by(self.degree_vector()))?)
    }

    fn checked_relation_lattice(&self) -> Result<Lattice, FoliationError> {
        if !self.ambient.is_projective() {
            return Err(FoliationError::UnsupportedAmbient);
        }
        let kernel = self.relation_lattice()?;
        if !kernel.contains(&self.degree_vector()) {
            match self.residue_constraint()? {
                ResidueTheoremOutcome::Violated { value } => {
                    return Err(FoliationError::DegreeVectorNotInKernel { value });
                }
                ResidueTheoremOutcome::Satisfied => {
                    unreachable!("degree vector outside kernel implies a nonzero residue sum")
                }
            }
        }
        Ok(kernel)
    }

    /// Fundamental group of a generic leaf: the relation lattice of the
    /// residues modulo the degree vector. Depends only on residues and
    /// degrees, never on the ambient dimension.
    pub fn leaf_pi1(&self) -> Result<AbelianGroupInvariants, FoliationError> {
        let kernel = self.checked_relation_lattice()?;
        Ok(kernel.quotient_by(&Lattice::spanned_by(self.degree_vector()))?)
    }

    /// Residues are non-resonant when every relation is an integer multiple
    /// of the reduced degree vector.
    pub fn resonance_classify(&self) -> Result<Resonance, FoliationError> {
        let kernel = self.checked_relation_lattice()?;
        let reduced = Lattice::spanned_by(self.reduced_degree_vector());
        for b in kernel.basis() {
            if !reduced.contains(b) {
                return Ok(Resonance::Resonant { witness: b.clone() });
            }
        }
        Ok(Resonance::NonResonant)
    }

    pub fn connectivity_report(&self) -> Result<ConnectivityReport, FoliationError> {
        let n = self.ambient.leaf_dim();
        let all_linear = self.components.iter().all(|c| c.degree == 1);
        let assumptions = standard_assumptions();
        let mut warnings = Vec::new();

        if let ResidueTheoremOutcome::Violated { value } = self.residue_constraint()? {
            warnings.push(format!(
                "sum of degree-weighted residues is {value}, not 0; no closed logarithmic form on projective space has these residues and degrees"
            ));
        }

        if !self.ambient.is_projective() {
            let mut higher = BTreeMap::new();
            for l in 2..n {
                higher.insert(l, HomotopyStatus::Zero);
            }
            warnings.push(
                "leaf fundamental group is not computed on complete-intersection ambients; only the vanishing range of higher homotopy is reported"
                    .into(),
            );
            return Ok(ConnectivityReport {
                pi1_leaf: None,
                resonance: None,
                higher,
                headline: None,
                assumptions,
                warnings,
            });
        }

        let pi1 = self.leaf_pi1()?;
        let resonance = self.resonance_classify()?;

        let mut higher = BTreeMap::new();
        if n > 1 {
            for l in 2..n {
                higher.insert(
                    l,
                    if all_linear {
                        HomotopyStatus::Zero
                    } else {
                        HomotopyStatus::IsoToComplement
                    },
                );
            }
            higher.insert(n, HomotopyStatus::EpiFromLeafAtN);
        } else {
            warnings.push(LOW_DIMENSION_WARNING.into());
        }

        let headline = if n > 1
            && all_linear
            && resonance == Resonance::NonResonant
            && self.degree_gcd() == 1
        {
            debug_assert!(pi1.is_trivial());
            Some(Headline::NMinusOneConnected)
        } else if n > 1 && pi1.is_trivial() {
            Some(Headline::SimplyConnected)
        } else {
            None
        };

        Ok(ConnectivityReport {
            pi1_leaf: Some(pi1),
            resonance: Some(resonance),
            higher,
            headline,
            assumptions,
            warnings,
        })
    }

    /// The spec restricted to a generic hyperplane: same degrees and
    /// residues, ambient dimension one lower, defining polynomials dropped.
    pub fn restrict_to_hyperplane(&self) -> Result<FoliationSpec, FoliationError> {
        if !self.ambient.is_projective() {
            return Err(FoliationError::UnsupportedAmbient);
        }
        let components = self
            .components
            .iter()
            .map(|c| Component {
                name: c.name.clone(),
                degree: c.degree,
                residue: c.residue.clone(),
                polynomial: None,
            })
            .collect();
        FoliationSpec::new(
            Ambient::projective(self.ambient.dim() - 1),
            self.basis.clone(),
            components,
            self.strict,
        )
    }

    pub fn hyperplane_section_report(&self) -> Result<HyperplaneSectionReport, FoliationError> {
        if !self.ambient.is_projective() {
            return Err(FoliationError::UnsupportedAmbient);
        }
        let n = self.ambient.leaf_dim();
        if n < 2 {
            return Err(FoliationError::DimensionTooLow);
        }
        let ambient_pi1 = self.leaf_pi1()?;
        let section_pi1 = self.restrict_to_hyperplane()?.leaf_pi1()?;
        let pi1_equal = ambient_pi1 == section_pi1;
        Ok(HyperplaneSectionReport {
            iso_below_level: n - 1,
            epi_at_level: n - 1,
            ambient_pi1,
            section_pi1,
            pi1_equal,
            pi1_match_guaranteed: n - 1 > 1,
        })
    }
}
