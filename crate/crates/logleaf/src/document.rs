//! On-disk form of a foliation specification.
//!
//! A spec document is a single JSON object with top-level keys `ambient`,
//! `basis`, `components`, and `options`. Exact data stays exact across
//! serialization: residue coordinates are rationals written as strings
//! (`"-1/2"`) or integers, never floats. Numeric embeddings and polynomial
//! coefficients are floating and may be written as a number or an
//! `[re, im]` pair.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::foliation::{Ambient, Component, FoliationError, FoliationSpec};
use crate::poly::HomogeneousPolynomial;
use crate::residue::{ResidueError, ResidueVector, SymbolBasis};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationIssue {
    pub field: String,
    pub message: String,
}

impl std::fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DocumentError {
    #[error("malformed spec document: {0}")]
    Parse(String),
    #[error("invalid spec: {}", .issues.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid { issues: Vec<ValidationIssue> },
}

impl DocumentError {
    fn at(field: impl Into<String>, message: impl Into<String>) -> Self {
        DocumentError::Invalid {
            issues: vec![ValidationIssue {
                field: field.into(),
                message: message.into(),
            }],
        }
    }

    pub fn issues(&self) -> &[ValidationIssue] {
        match self {
            DocumentError::Parse(_) => &[],
            DocumentError::Invalid { issues } => issues,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpecDocument {
    pub ambient: AmbientDoc,
    pub basis: BasisDoc,
    pub components: Vec<ComponentDoc>,
    #[serde(default, skip_serializing_if = "OptionsDoc::is_default")]
    pub options: OptionsDoc,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum AmbientDoc {
    Projective { dim: usize },
    CompleteIntersection {
        space_dim: usize,
        multidegrees: Vec<u64>,
        dim: usize,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BasisDoc {
    pub symbols: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub numeric: Option<BTreeMap<String, NumberDoc>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComponentDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub degree: u64,
    pub residue: BTreeMap<String, RationalDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<PolynomialDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolynomialDoc {
    pub terms: Vec<TermDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermDoc {
    pub coeff: NumberDoc,
    pub exponents: Vec<u32>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct OptionsDoc {
    #[serde(default)]
    pub strict: bool,
}

impl OptionsDoc {
    fn is_default(&self) -> bool {
        *self == OptionsDoc::default()
    }
}

/// A float, or an `[re, im]` pair for complex values.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NumberDoc {
    Real(f64),
    Complex([f64; 2]),
}

impl NumberDoc {
    pub fn to_complex(self) -> Complex64 {
        match self {
            NumberDoc::Real(x) => Complex64::new(x, 0.0),
            NumberDoc::Complex([re, im]) => Complex64::new(re, im),
        }
    }

    pub fn from_complex(c: Complex64) -> Self {
        if c.im == 0.0 {
            NumberDoc::Real(c.re)
        } else {
            NumberDoc::Complex([c.re, c.im])
        }
    }
}

/// An exact rational: an integer, or a string like `"3"` or `"-1/2"`.
/// Floats are rejected so exactness survives serialization.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalDoc {
    Integer(i64),
    Text(String),
}

impl RationalDoc {
    pub fn to_rational(&self) -> Result<BigRational, String> {
        match self {
            RationalDoc::Integer(n) => Ok(BigRational::from(BigInt::from(*n))),
            RationalDoc::Text(s) => parse_rational(s)
                .ok_or_else(|| format!("expected an integer or \"p/q\" string, got {s:?}")),
        }
    }
}

/// Parses `"p"` or `"p/q"` into an exact rational. No float forms.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).ok()?;
        let d = BigInt::from_str(den.trim()).ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        BigInt::from_str(s).ok().map(BigRational::from)
    }
}

/// A parsed spec plus the non-fatal findings collected along the way.
#[derive(Clone, Debug)]
pub struct ParsedSpec {
    pub spec: FoliationSpec,
    pub warnings: Vec<String>,
}

/// Raw deserialization without validation; lets callers adjust options
/// (for example a `--strict` flag) before validating.
pub fn document_from_str(text: &str) -> Result<SpecDocument, DocumentError> {
    serde_json::from_str(text).map_err(|e| DocumentError::Parse(e.to_string()))
}

pub fn parse_spec_str(text: &str) -> Result<ParsedSpec, DocumentError> {
    validate_document(&document_from_str(text)?)
}

pub fn parse_spec(path: &std::path::Path) -> Result<ParsedSpec, DocumentError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| DocumentError::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_spec_str(&text)
}

pub fn validate_document(doc: &SpecDocument) -> Result<ParsedSpec, DocumentError> {
    let ambient = match &doc.ambient {
        AmbientDoc::Projective { dim } => Ambient::ProjectiveSpace { dim: *dim },
        AmbientDoc::CompleteIntersection {
            space_dim,
            multidegrees,
            dim,
        } => Ambient::CompleteIntersection {
            space_dim: *space_dim,
            multidegrees: multidegrees.clone(),
            dim: *dim,
        },
    };

    let basis = match &doc.basis.numeric {
        None => SymbolBasis::new(doc.basis.symbols.clone()),
        Some(map) => {
            let numeric = map
                .iter()
                .map(|(k, v)| (k.clone(), v.to_complex()))
                .collect();
            SymbolBasis::with_numeric(doc.basis.symbols.clone(), numeric)
        }
    }
    .map_err(|e| DocumentError::at("basis", e.to_string()))?;
    let basis = Arc::new(basis);

    let mut issues: Vec<ValidationIssue> = Vec::new();
    let push = |issues: &mut Vec<ValidationIssue>, field: String, message: String| {
        issues.push(ValidationIssue { field, message });
    };

    let mut components = Vec::with_capacity(doc.components.len());
    for (i, comp) in doc.components.iter().enumerate() {
        if comp.degree == 0 {
            push(
                &mut issues,
                format!("components[{i}].degree"),
                "degree must be at least 1".into(),
            );
        }
        let mut coords = BTreeMap::new();
        let mut coords_ok = true;
        for (symbol, value) in &comp.residue {
            match value.to_rational() {
                Ok(r) => {
                    coords.insert(symbol.clone(), r);
                }
                Err(m) => {
                    coords_ok = false;
                    push(&mut issues, format!("components[{i}].residue.{symbol}"), m);
                }
            }
        }
        let residue = if coords_ok {
            match ResidueVector::from_map(basis.clone(), &coords) {
                Ok(r) => Some(r),
                Err(e) => {
                    let message = match &e {
                        ResidueError::ZeroResidue => {
                            "residue coordinates are all zero; residues lie in C* and must be nonzero"
                                .to_string()
                        }
                        other => other.to_string(),
                    };
                    push(&mut issues, format!("components[{i}].residue"), message);
                    None
                }
            }
        } else {
            None
        };
        let polynomial = match &comp.polynomial {
            None => None,
            Some(p) => {
                let terms = p
                    .terms
                    .iter()
                    .map(|t| (t.coeff.to_complex(), t.exponents.clone()))
                    .collect();
                let vars = ambient.dim() + 1;
                match HomogeneousPolynomial::new(vars, terms) {
                    Ok(poly) => Some(poly),
                    Err(e) => {
                        push(
                            &mut issues,
                            format!("components[{i}].polynomial"),
                            e.to_string(),
                        );
                        None
                    }
                }
            }
        };
        if let Some(residue) = residue {
            components.push(Component {
                name: comp.name.clone().unwrap_or_else(|| format!("D{i}")),
                degree: comp.degree,
                residue,
                polynomial,
            });
        }
    }

    if !issues.is_empty() {
        return Err(DocumentError::Invalid { issues });
    }

    let strict = doc.options.strict;
    let spec = FoliationSpec::new(ambient, basis, components, strict)
        .map_err(foliation_error_to_document)?;

    let mut warnings = Vec::new();
    match spec.residue_constraint().map_err(foliation_error_to_document)? {
        crate::residue::ResidueTheoremOutcome::Satisfied => {}
        crate::residue::ResidueTheoremOutcome::Violated { value } => {
            let message = format!(
                "sum of degree-weighted residues is {value}, not 0; no closed logarithmic form on projective space has these residues and degrees"
            );
            if strict {
                push(&mut issues, "components".into(), message);
            } else {
                warnings.push(message);
            }
        }
    }
    if spec.ambient().leaf_dim() < 2 {
        let message = crate::foliation::LOW_DIMENSION_WARNING.to_string();
        if strict {
            push(&mut issues, "ambient.dim".into(), message);
        } else {
            warnings.push(message);
        }
    }
    if !issues.is_empty() {
        return Err(DocumentError::Invalid { issues });
    }

    Ok(ParsedSpec { spec, warnings })
}

fn foliation_error_to_document(e: FoliationError) -> DocumentError {
    let field = match &e {
        FoliationError::NoComponents | FoliationError::TooManyComponents(_) => {
            "components".to_string()
        }
        FoliationError::AmbientDimensionTooSmall(_) => "ambient.dim".to_string(),
        FoliationError::ZeroDegree(i) | FoliationError::NonLinearOnCompleteIntersection(i) => {
            format!("components[{i}].degree")
        }
        FoliationError::PolynomialDegreeMismatch { component, .. }
        | FoliationError::PolynomialVariableCount { component, .. } => {
            format!("components[{component}].polynomial")
        }
        FoliationError::PolynomialOnCompleteIntersection => "components".to_string(),
        FoliationError::ForeignBasis(i) => format!("components[{i}].residue"),
        _ => "spec".to_string(),
    };
    DocumentError::at(field, e.to_string())
}

/// The inverse of parsing: a document whose reparse yields an identical spec.
pub fn spec_to_document(spec: &FoliationSpec) -> SpecDocument {
    let ambient = match spec.ambient() {
        Ambient::ProjectiveSpace { dim } => AmbientDoc::Projective { dim: *dim },
        Ambient::CompleteIntersection {
            space_dim,
            multidegrees,
            dim,
        } => AmbientDoc::CompleteIntersection {
            space_dim: *space_dim,
            multidegrees: multidegrees.clone(),
            dim: *dim,
        },
    };
    let basis = spec.basis();
    let numeric = basis.numeric_values().map(|map| {
        map.iter()
            .map(|(k, v)| (k.clone(), NumberDoc::from_complex(*v)))
            .collect()
    });
    let components = spec
        .components()
        .iter()
        .map(|c| {
            let residue = basis
                .symbols()
                .iter()
                .zip(c.residue.coords())
                .filter(|(_, coord)| !coord.is_zero())
                .map(|(s, coord)| (s.clone(), RationalDoc::Text(coord.to_string())))
                .collect();
            let polynomial = c.polynomial.as_ref().map(|p| PolynomialDoc {
                terms: p
                    .terms()
                    .iter()
                    .map(|(coeff, exps)| TermDoc {
                        coeff: NumberDoc::from_complex(*coeff),
                        exponents: exps.clone(),
                    })
                    .collect(),
            });
            ComponentDoc {
                name: Some(c.name.clone()),
                degree: c.degree,
                residue,
                polynomial,
            }
        })
        .collect();
    SpecDocument {
        ambient,
        basis: BasisDoc {
            symbols: basis.symbols().to_vec(),
            numeric,
        },
        components,
        options: OptionsDoc {
            strict: spec.strict(),
        },
    }
}

pub fn document_to_string(doc: &SpecDocument) -> String {
    serde_json::to_string_pretty(doc).expect("document serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;

    const PENCIL: &str = r#"{
        "ambient": {"type": "projective", "dim": 3},
        "basis": {"symbols": ["1"]},
        "components": [
            {"name": "F0", "degree": 3, "residue": {"1": "1"}},
            {"name": "F1", "degree": 3, "residue": {"1": "-1"}}
        ]
    }"#;

    #[test]
    fn parses_minimal_pencil() {
        let parsed = parse_spec_str(PENCIL).unwrap();
        assert_eq!(parsed.spec.components().len(), 2);
        assert_eq!(parsed.spec.degrees(), vec![3, 3]);
        assert!(parsed.warnings.is_empty());
        assert!(!parsed.spec.strict());
    }

    #[test]
    fn zero_degree_is_rejected_with_field_path() {
        let text = PENCIL.replace("\"degree\": 3", "\"degree\": 0");
        let err = parse_spec_str(&text).unwrap_err();
        assert_eq!(err.issues()[0].field, "components[0].degree");
    }

    #[test]
    fn zero_residue_is_rejected_citing_cstar() {
        let text = PENCIL.replace(r#"{"1": "1"}"#, r#"{"1": "0"}"#);
        let err = parse_spec_str(&text).unwrap_err();
        let issue = &err.issues()[0];
        assert_eq!(issue.field, "components[0].residue");
        assert!(issue.message.contains("C*"), "{}", issue.message);
    }

    #[test]
    fn all_component_issues_are_collected() {
        let text = r#"{
            "ambient": {"type": "projective", "dim": 3},
            "basis": {"symbols": ["1"]},
            "components": [
                {"degree": 0, "residue": {"1": "1"}},
                {"degree": 2, "residue": {"1": "0.5"}},
                {"degree": 2, "residue": {"1": "0"}}
            ]
        }"#;
        let err = parse_spec_str(text).unwrap_err();
        let fields: Vec<&str> = err.issues().iter().map(|i| i.field.as_str()).collect();
        assert_eq!(
            fields,
            vec![
                "components[0].degree",
                "components[1].residue.1",
                "components[2].residue"
            ]
        );
    }

    #[test]
    fn malformed_json_reports_location() {
        let err = parse_spec_str("{ not json").unwrap_err();
        match err {
            DocumentError::Parse(m) => assert!(m.contains("line"), "{m}"),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn float_residues_are_rejected() {
        let text = PENCIL.replace(r#"{"1": "1"}"#, r#"{"1": "0.5"}"#);
        assert!(matches!(
            parse_spec_str(&text).unwrap_err(),
            DocumentError::Invalid { .. }
        ));
    }

    #[test]
    fn strict_mode_promotes_residue_violation() {
        let text = r#"{
            "ambient": {"type": "projective", "dim": 3},
            "basis": {"symbols": ["1"]},
            "components": [
                {"degree": 1, "residue": {"1": 1}},
                {"degree": 1, "residue": {"1": 1}},
                {"degree": 1, "residue": {"1": -1}}
            ],
            "options": {"strict": true}
        }"#;
        assert!(matches!(
            parse_spec_str(text).unwrap_err(),
            DocumentError::Invalid { .. }
        ));
        let relaxed = text.replace("\"strict\": true", "\"strict\": false");
        let parsed = parse_spec_str(&relaxed).unwrap();
        assert_eq!(parsed.warnings.len(), 1);
        assert!(parsed.warnings[0].contains("degree-weighted"));
    }

    #[test]
    fn round_trip_preserves_the_spec() {
        let text = r#"{
            "ambient": {"type": "projective", "dim": 2},
            "basis": {"symbols": ["1", "sqrt2"], "numeric": {"1": 1.0, "sqrt2": 1.4142135623730951}},
            "components": [
                {"name": "X", "degree": 1, "residue": {"1": "1"},
                 "polynomial": {"terms": [{"coeff": 1.0, "exponents": [1, 0, 0]}]}},
                {"name": "Y", "degree": 1, "residue": {"sqrt2": "1"},
                 "polynomial": {"terms": [{"coeff": 1.0, "exponents": [0, 1, 0]}]}},
                {"name": "Z", "degree": 1, "residue": {"1": "-1", "sqrt2": "-1"},
                 "polynomial": {"terms": [{"coeff": 1.0, "exponents": [0, 0, 1]}]}}
            ]
        }"#;
        let parsed = parse_spec_str(text).unwrap();
        let doc = spec_to_document(&parsed.spec);
        let reparsed = parse_spec_str(&document_to_string(&doc)).unwrap();
        assert_eq!(parsed.spec, reparsed.spec);
    }

    #[test]
    fn complete_intersection_documents_parse() {
        let text = r#"{
            "ambient": {"type": "complete-intersection", "space_dim": 6, "multidegrees": [2, 2], "dim": 4},
            "basis": {"symbols": ["1", "a"]},
            "components": [
                {"degree": 1, "residue": {"1": 1}},
                {"degree": 1, "residue": {"a": 1}},
                {"degree": 1, "residue": {"1": -1, "a": -1}}
            ]
        }"#;
        let parsed = parse_spec_str(text).unwrap();
        assert!(!parsed.spec.ambient().is_projective());
        let doc = spec_to_document(&parsed.spec);
        let reparsed = parse_spec_str(&document_to_string(&doc)).unwrap();
        assert_eq!(parsed.spec, reparsed.spec);
    }
}
