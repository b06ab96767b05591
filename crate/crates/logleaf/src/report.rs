//! Deterministic report assembly.
//!
//! Machine mode is JSON with a stable field order and no timestamps, so
//! identical input and flags produce byte-identical output. Text mode is the
//! human rendering of the same data, including pretty-printed groups like
//! `Z^2 + Z/6` (free part first, torsion ascending).

use num_complex::Complex64;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::document::DocumentError;
use crate::foliation::{
    ConnectivityReport, FoliationError, Headline, HomotopyStatus, HyperplaneSectionReport,
    Resonance,
};
use crate::group::AbelianGroupInvariants;
use crate::periods::{MeridianReport, PeriodError};
use crate::relations::RelationScan;
use crate::residue::ResidueTheoremOutcome;

/// Exit-code classes of the command-line contract.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorClass {
    Validation,
    Computation,
    Oracle,
}

impl ErrorClass {
    pub fn exit_code(self) -> u8 {
        match self {
            ErrorClass::Validation => 1,
            ErrorClass::Computation => 2,
            ErrorClass::Oracle => 3,
        }
    }
}

pub fn classify_document_error(_: &DocumentError) -> ErrorClass {
    ErrorClass::Validation
}

pub fn classify_foliation_error(_: &FoliationError) -> ErrorClass {
    ErrorClass::Computation
}

pub fn classify_period_error(e: &PeriodError) -> ErrorClass {
    match e {
        PeriodError::MissingPolynomials | PeriodError::MissingNumerics => ErrorClass::Validation,
        PeriodError::MeridianMismatch { .. }
        | PeriodError::GlobalSumMismatch { .. }
        | PeriodError::ToleranceExceeded { .. } => ErrorClass::Oracle,
        _ => ErrorClass::Computation,
    }
}

pub fn input_digest(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let mut out = String::from("sha256:");
    for byte in hasher.finalize() {
        out.push_str(&format!("{byte:02x}"));
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: String,
    pub command: String,
    pub input_digest: String,
    pub results: ReportBody,
    pub assumptions: Vec<String>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum ReportBody {
    Group(GroupBody),
    Resonance(ResonanceBody),
    Connectivity(ConnectivityBody),
    Section(SectionBody),
    Periods(PeriodsBody),
    Relations(RelationsBody),
    Full(Box<FullBody>),
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupBody {
    pub free_rank: usize,
    pub torsion: Vec<String>,
    pub pretty: String,
}

impl GroupBody {
    pub fn from_group(g: &AbelianGroupInvariants) -> Self {
        GroupBody {
            free_rank: g.free_rank(),
            torsion: g.torsion().iter().map(|t| t.to_string()).collect(),
            pretty: g.to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ResonanceBody {
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    /// Heuristic numeric cross-check, present when the basis has an
    /// embedding.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numeric_scan: Option<RelationsBody>,
}

impl ResonanceBody {
    pub fn from_resonance(r: &Resonance) -> Self {
        match r {
            Resonance::NonResonant => ResonanceBody {
                status: "non-resonant".into(),
                witness: None,
                numeric_scan: None,
            },
            Resonance::Resonant { witness } => ResonanceBody {
                status: "resonant".into(),
                witness: Some(witness.iter().map(|x| x.to_string()).collect()),
                numeric_scan: None,
            },
        }
    }

    pub fn with_numeric_scan(mut self, scan: Option<RelationsBody>) -> Self {
        self.numeric_scan = scan;
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelStatusBody {
    pub level: usize,
    pub status: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConnectivityBody {
    pub pi1_leaf: Option<GroupBody>,
    pub resonance: Option<ResonanceBody>,
    pub higher: Vec<LevelStatusBody>,
    pub headline: Option<String>,
}

pub fn headline_label(h: Headline) -> &'static str {
    match h {
        Headline::NMinusOneConnected => "(n-1)-connected",
        Headline::SimplyConnected => "simply-connected",
    }
}

fn status_label(s: HomotopyStatus) -> &'static str {
    match s {
        HomotopyStatus::Zero => "zero",
        HomotopyStatus::IsoToComplement => "iso-to-complement",
        HomotopyStatus::EpiFromLeafAtN => "epi-from-leaf",
    }
}

impl ConnectivityBody {
    pub fn from_report(r: &ConnectivityReport) -> Self {
        ConnectivityBody {
            pi1_leaf: r.pi1_leaf.as_ref().map(GroupBody::from_group),
            resonance: r.resonance.as_ref().map(ResonanceBody::from_resonance),
            higher: r
                .higher
                .iter()
                .map(|(&level, &status)| LevelStatusBody {
                    level,
                    status: status_label(status).into(),
                })
                .collect(),
            headline: r.headline.map(|h| headline_label(h).into()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SectionBody {
    pub iso_below_level: usize,
    pub epi_at_level: usize,
    pub ambient_pi1: GroupBody,
    pub section_pi1: GroupBody,
    pub pi1_equal: bool,
    pub pi1_match_guaranteed: bool,
}

impl SectionBody {
    pub fn from_report(r: &HyperplaneSectionReport) -> Self {
        SectionBody {
            iso_below_level: r.iso_below_level,
            epi_at_level: r.epi_at_level,
            ambient_pi1: GroupBody::from_group(&r.ambient_pi1),
            section_pi1: GroupBody::from_group(&r.section_pi1),
            pi1_equal: r.pi1_equal,
            pi1_match_guaranteed: r.pi1_match_guaranteed,
        }
    }
}

fn complex_pair(c: Complex64) -> [f64; 2] {
    [c.re, c.im]
}

#[derive(Clone, Debug, Serialize)]
pub struct MeridianBody {
    pub component: usize,
    pub root: [f64; 2],
    pub radius: f64,
    pub value: [f64; 2],
    pub expected: [f64; 2],
    pub abs_error: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstraintBody {
    pub satisfied: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
}

impl ConstraintBody {
    pub fn from_outcome(o: &ResidueTheoremOutcome) -> Self {
        match o {
            ResidueTheoremOutcome::Satisfied => ConstraintBody {
                satisfied: true,
                value: None,
            },
            ResidueTheoremOutcome::Violated { value } => ConstraintBody {
                satisfied: false,
                value: Some(value.to_string()),
            },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PeriodsBody {
    pub tolerance: f64,
    pub seed: u64,
    pub samples: usize,
    pub meridians: Vec<MeridianBody>,
    pub global_sum: [f64; 2],
    pub expected_global_sum: [f64; 2],
    pub global_abs_error: f64,
    pub global_bound: f64,
    pub residue_constraint: ConstraintBody,
}

impl PeriodsBody {
    pub fn from_report(r: &MeridianReport) -> Self {
        PeriodsBody {
            tolerance: r.tolerance,
            seed: r.seed,
            samples: r.samples,
            meridians: r
                .meridians
                .iter()
                .map(|m| MeridianBody {
                    component: m.component,
                    root: complex_pair(m.root),
                    radius: m.radius,
                    value: complex_pair(m.value),
                    expected: complex_pair(m.expected),
                    abs_error: m.abs_error,
                    passed: m.passed,
                })
                .collect(),
            global_sum: complex_pair(r.global_sum),
            expected_global_sum: complex_pair(r.expected_global_sum),
            global_abs_error: r.global_abs_error,
            global_bound: r.global_bound,
            residue_constraint: ConstraintBody::from_outcome(&r.residue_constraint),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationCandidateBody {
    pub vector: Vec<String>,
    pub residual: f64,
    pub height: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationsBody {
    pub heuristic: bool,
    pub height_bound: u64,
    pub epsilon: f64,
    pub candidates: Vec<RelationCandidateBody>,
}

impl RelationsBody {
    pub fn from_scan(scan: &RelationScan) -> Self {
        RelationsBody {
            heuristic: scan.heuristic,
            height_bound: scan.height_bound,
            epsilon: scan.epsilon,
            candidates: scan
                .candidates
                .iter()
                .map(|c| RelationCandidateBody {
                    vector: c.vector.iter().map(|x| x.to_string()).collect(),
                    residual: c.residual,
                    height: c.height.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FullBody {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complement_pi1: Option<GroupBody>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub leaf_pi1: Option<GroupBody>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub resonance: Option<ResonanceBody>,
    pub connectivity: ConnectivityBody,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hyperplane_section: Option<SectionBody>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub periods: Option<PeriodsBody>,
    pub skipped: Vec<String>,
}

impl Report {
    pub fn new(
        command: impl Into<String>,
        input_digest: String,
        results: ReportBody,
        assumptions: Vec<String>,
        warnings: Vec<String>,
    ) -> Self {
        let mut deduped: Vec<String> = Vec::with_capacity(warnings.len());
        for w in warnings {
            if !deduped.contains(&w) {
                deduped.push(w);
            }
        }
        Report {
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.into(),
            input_digest,
            results,
            assumptions,
            warnings: deduped,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let push = |out: &mut String, line: &str| {
            out.push_str(line);
            out.push('\n');
        };
        push(&mut out, &format!("logleaf {} — {}", self.version, self.command));
        push(&mut out, &format!("input: {}", self.input_digest));
        push(&mut out, "");
        render_body(&mut out, &self.results);
        if !self.assumptions.is_empty() {
            push(&mut out, "");
            push(&mut out, "assumptions:");
            for a in &self.assumptions {
                push(&mut out, &format!("  - {a}"));
            }
        }
        if !self.warnings.is_empty() {
            push(&mut out, "");
            push(&mut out, "warnings:");
            for w in &self.warnings {
                push(&mut out, &format!("  - {w}"));
            }
        }
        out
    }
}

fn render_body(out: &mut String, body: &ReportBody) {
    match body {
        ReportBody::Group(g) => {
            out.push_str(&format!("group: {}\n", g.pretty));
        }
        ReportBody::Resonance(r) => {
            out.push_str(&format!("resonance: {}\n", r.status));
            if let Some(w) = &r.witness {
                out.push_str(&format!("witness relation: ({})\n", w.join(", ")));
            }
        }
        ReportBody::Connectivity(c) => render_connectivity(out, c, true),
        ReportBody::Section(s) => render_section(out, s),
        ReportBody::Periods(p) => render_periods(out, p),
        ReportBody::Relations(r) => {
            out.push_str(&format!(
                "heuristic relation scan (height <= {}, epsilon = {:e}):\n",
                r.height_bound, r.epsilon
            ));
            if r.candidates.is_empty() {
                out.push_str("  no candidates found under the bounds\n");
            }
            for c in &r.candidates {
                out.push_str(&format!(
                    "  ({})  residual {:.3e}\n",
                    c.vector.join(", "),
                    c.residual
                ));
            }
        }
        ReportBody::Full(f) => {
            if let Some(g) = &f.complement_pi1 {
                out.push_str(&format!("pi1(complement) = {}\n", g.pretty));
            }
            if let Some(g) = &f.leaf_pi1 {
                out.push_str(&format!("pi1(leaf) = {}\n", g.pretty));
            }
            if let Some(r) = &f.resonance {
                out.push_str(&format!("resonance: {}\n", r.status));
            }
            let connectivity_only = ConnectivityBody {
                pi1_leaf: None,
                resonance: None,
                higher: f.connectivity.higher.clone(),
                headline: f.connectivity.headline.clone(),
            };
            render_connectivity(out, &connectivity_only, false);
            if let Some(s) = &f.hyperplane_section {
                render_section(out, s);
            }
            if let Some(p) = &f.periods {
                render_periods(out, p);
            }
            for s in &f.skipped {
                out.push_str(&format!("skipped: {s}\n"));
            }
        }
    }
}

fn render_connectivity(out: &mut String, c: &ConnectivityBody, show_missing_pi1: bool) {
    match &c.pi1_leaf {
        Some(g) => out.push_str(&format!("pi1(leaf) = {}\n", g.pretty)),
        None if show_missing_pi1 => {
            out.push_str("pi1(leaf): not computed for this ambient\n");
        }
        None => {}
    }
    if let Some(r) = &c.resonance {
        out.push_str(&format!("resonance: {}\n", r.status));
        if let Some(w) = &r.witness {
            out.push_str(&format!("witness relation: ({})\n", w.join(", ")));
        }
    }
    for level in &c.higher {
        let l = level.level;
        let line = match level.status.as_str() {
            "zero" => format!("pi_{l}(leaf) = 0"),
            "iso-to-complement" => format!("pi_{l}(leaf) = pi_{l}(complement)"),
            _ => format!("pi_{l}(leaf) surjects onto pi_{l}(complement)"),
        };
        out.push_str(&line);
        out.push('\n');
    }
    if let Some(h) = &c.headline {
        out.push_str(&format!("headline: leaf is {h}\n"));
    }
}

fn render_section(out: &mut String, s: &SectionBody) {
    out.push_str(&format!(
        "hyperplane section: isomorphism on pi_l for l < {}, epimorphism at l = {}\n",
        s.iso_below_level, s.epi_at_level
    ));
    out.push_str(&format!(
        "pi1: ambient leaf {} vs section leaf {} ({}{})\n",
        s.ambient_pi1.pretty,
        s.section_pi1.pretty,
        if s.pi1_equal { "equal" } else { "DIFFERENT" },
        if s.pi1_match_guaranteed {
            ", guaranteed in range"
        } else {
            "; outside the guaranteed range"
        },
    ));
}

fn render_periods(out: &mut String, p: &PeriodsBody) {
    out.push_str(&format!(
        "meridian checks (seed {}, {} samples, tolerance {:e}):\n",
        p.seed, p.samples, p.tolerance
    ));
    for m in &p.meridians {
        out.push_str(&format!(
            "  component {} at root {:+.4}{:+.4}i: |error| = {:.3e} {}\n",
            m.component,
            m.root[0],
            m.root[1],
            m.abs_error,
            if m.passed { "ok" } else { "FAIL" }
        ));
    }
    out.push_str(&format!(
        "global sum error: {:.3e} (bound {:.3e})\n",
        p.global_abs_error, p.global_bound
    ));
    if p.residue_constraint.satisfied {
        out.push_str("degree-weighted residue sum: 0 (constraint satisfied)\n");
    } else {
        out.push_str(&format!(
            "degree-weighted residue sum: {} (constraint violated)\n",
            p.residue_constraint.value.as_deref().unwrap_or("nonzero")
        ));
    }
}
