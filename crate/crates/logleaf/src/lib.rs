//! Topological invariants of generic leaves of logarithmic foliations on
//! projective space.
//!
//! The exact core computes Hermite and Smith normal forms, integer kernels
//! and lattice quotients over arbitrary-precision integers; on top of it,
//! residues declared over a rational symbol basis yield the integer relation
//! lattice whose quotient by the degree vector is the fundamental group of a
//! generic leaf. A numeric period oracle cross-validates residues by contour
//! integration along generic lines, and a document layer turns JSON
//! specifications into deterministic machine- or human-readable reports.

pub mod document;
pub mod foliation;
pub mod group;
pub mod hermite;
pub mod lattice;
pub mod matrix;
pub mod periods;
pub mod poly;
pub mod relations;
pub mod report;
pub mod residue;
pub mod smith;

pub use document::{parse_spec, parse_spec_str, DocumentError, ParsedSpec, SpecDocument};
pub use foliation::{
    Ambient, Component, ConnectivityReport, FoliationError, FoliationSpec, Headline,
    HomotopyStatus, HyperplaneSectionReport, Resonance,
};
pub use group::AbelianGroupInvariants;
pub use hermite::hermite_normal_form;
pub use lattice::{left_kernel, Lattice, LatticeError};
pub use matrix::{IntegerMatrix, RationalMatrix};
pub use periods::{
    explicit_cover_check, integrate_loop, restrict_to_line, verify_meridians, CoverCheckReport,
    LineRestriction, LoopIntegralResult, MeridianReport, PeriodError,
};
pub use poly::{HomogeneousPolynomial, PolyError};
pub use relations::{
    numeric_relation_candidates, RelationCandidate, RelationError, RelationScan,
};
pub use residue::{
    relation_lattice, residue_theorem_check, ResidueError, ResidueTheoremOutcome, ResidueVector,
    SymbolBasis, SymbolicValue,
};
pub use smith::{smith_normal_form, SmithDecomposition};
