//! Command-line front end: parses a spec document, runs the requested
//! computation, and prints a deterministic report.
//!
//! Exit codes: 0 success, 1 validation error, 2 computation error,
//! 3 oracle tolerance failure. Reports go to stdout, diagnostics to stderr.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use logleaf::document::{document_from_str, validate_document, DocumentError, ParsedSpec};
use logleaf::foliation::standard_assumptions;
use logleaf::periods::verify_meridians;
use logleaf::report::{
    classify_document_error, classify_foliation_error, classify_period_error, input_digest,
    ConnectivityBody, ErrorClass, FullBody, GroupBody, PeriodsBody, RelationsBody, Report,
    ReportBody, ResonanceBody, SectionBody,
};
use logleaf::{FoliationError, FoliationSpec, PeriodError};

#[derive(Parser)]
#[command(name = "logleaf", version)]
#[command(about = "Topology of generic leaves of logarithmic foliations on projective space")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Turn residue-constraint violations and low dimensions into errors
    #[arg(long, global = true)]
    strict: bool,

    /// Seed for the pseudo-random generic line of the period oracle
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Quadrature samples per loop integral
    #[arg(long, global = true, default_value_t = 1024)]
    samples: usize,

    /// Absolute tolerance for period checks
    #[arg(long, global = true, default_value_t = 1e-6)]
    tolerance: f64,

    /// Height bound for numeric relation scans
    #[arg(long, global = true, default_value_t = 1_000_000)]
    height_bound: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Fundamental group of the complement of the polar divisor
    ComplementPi { input: Option<PathBuf> },
    /// Fundamental group of a generic leaf
    LeafPi { input: Option<PathBuf> },
    /// Resonance classification of the residues
    Resonance { input: Option<PathBuf> },
    /// Leaf connectivity report (fundamental group, higher homotopy, headline)
    Connectivity { input: Option<PathBuf> },
    /// Compare the leaf with its generic hyperplane section
    HyperplaneSection { input: Option<PathBuf> },
    /// Verify meridian loop integrals against residues
    VerifyPeriods { input: Option<PathBuf> },
    /// Run every computation applicable to the spec
    Full { input: Option<PathBuf> },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::ComplementPi { .. } => "complement-pi",
            Command::LeafPi { .. } => "leaf-pi",
            Command::Resonance { .. } => "resonance",
            Command::Connectivity { .. } => "connectivity",
            Command::HyperplaneSection { .. } => "hyperplane-section",
            Command::VerifyPeriods { .. } => "verify-periods",
            Command::Full { .. } => "full",
        }
    }

    fn input(&self) -> Option<&PathBuf> {
        match self {
            Command::ComplementPi { input }
            | Command::LeafPi { input }
            | Command::Resonance { input }
            | Command::Connectivity { input }
            | Command::HyperplaneSection { input }
            | Command::VerifyPeriods { input }
            | Command::Full { input } => input.as_ref(),
        }
    }
}

struct Failure {
    class: ErrorClass,
    message: String,
}

impl Failure {
    fn new(class: ErrorClass, message: impl Into<String>) -> Self {
        Failure {
            class,
            message: message.into(),
        }
    }
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Self {
        Failure::new(classify_document_error(&e), e.to_string())
    }
}

impl From<FoliationError> for Failure {
    fn from(e: FoliationError) -> Self {
        Failure::new(classify_foliation_error(&e), e.to_string())
    }
}

impl From<PeriodError> for Failure {
    fn from(e: PeriodError) -> Self {
        Failure::new(classify_period_error(&e), e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => print!("{}", report.to_text()),
            }
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.class.exit_code())
        }
    }
}

fn read_input(path: Option<&PathBuf>) -> Result<Vec<u8>, Failure> {
    let from_stdin = match path {
        None => true,
        Some(p) => p.as_os_str() == "-",
    };
    if from_stdin {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| Failure::new(ErrorClass::Validation, format!("cannot read stdin: {e}")))?;
        Ok(buf)
    } else {
        let p = path.expect("checked");
        std::fs::read(p).map_err(|e| {
            Failure::new(
                ErrorClass::Validation,
                format!("cannot read {}: {e}", p.display()),
            )
        })
    }
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let bytes = read_input(cli.command.input())?;
    let digest = input_digest(&bytes);
    let text = String::from_utf8(bytes)
        .map_err(|e| Failure::new(ErrorClass::Validation, format!("input is not UTF-8: {e}")))?;

    let mut doc = document_from_str(&text)?;
    doc.options.strict |= cli.strict;
    let ParsedSpec { spec, warnings } = validate_document(&doc)?;

    let mut warnings = warnings;
    let mut assumptions = standard_assumptions();
    let body = match &cli.command {
        Command::ComplementPi { .. } => {
            ReportBody::Group(GroupBody::from_group(&spec.complement_pi1()?))
        }
        Command::LeafPi { .. } => ReportBody::Group(GroupBody::from_group(&spec.leaf_pi1()?)),
        Command::Resonance { .. } => {
            let body = ResonanceBody::from_resonance(&spec.resonance_classify()?)
                .with_numeric_scan(numeric_scan(&spec, cli)?);
            ReportBody::Resonance(body)
        }
        Command::Connectivity { .. } => {
            let report = spec.connectivity_report()?;
            assumptions = report.assumptions.clone();
            warnings.extend(report.warnings.iter().cloned());
            ReportBody::Connectivity(ConnectivityBody::from_report(&report))
        }
        Command::HyperplaneSection { .. } => {
            ReportBody::Section(SectionBody::from_report(&spec.hyperplane_section_report()?))
        }
        Command::VerifyPeriods { .. } => {
            let report = verify_meridians(&spec, cli.tolerance, cli.seed, cli.samples)?;
            ReportBody::Periods(PeriodsBody::from_report(&report))
        }
        Command::Full { .. } => {
            let (body, extra) = full_body(&spec, cli)?;
            warnings.extend(extra);
            ReportBody::Full(Box::new(body))
        }
    };

    Ok(Report::new(
        cli.command.name(),
        digest,
        body,
        assumptions,
        warnings,
    ))
}

/// Heuristic LLL scan over the numeric residue values, when available.
fn numeric_scan(spec: &FoliationSpec, cli: &Cli) -> Result<Option<RelationsBody>, Failure> {
    let Some(values) = spec.numeric_residues() else {
        return Ok(None);
    };
    let epsilon = logleaf::relations::default_epsilon(&values);
    let scan = logleaf::numeric_relation_candidates(&values, cli.height_bound, epsilon)
        .map_err(|e| Failure::new(ErrorClass::Computation, e.to_string()))?;
    Ok(Some(RelationsBody::from_scan(&scan)))
}

fn full_body(spec: &FoliationSpec, cli: &Cli) -> Result<(FullBody, Vec<String>), Failure> {
    let mut skipped = Vec::new();
    let mut warnings = Vec::new();
    let projective = spec.ambient().is_projective();

    let (complement_pi1, leaf_pi1, resonance) = if projective {
        (
            Some(GroupBody::from_group(&spec.complement_pi1()?)),
            Some(GroupBody::from_group(&spec.leaf_pi1()?)),
            Some(
                ResonanceBody::from_resonance(&spec.resonance_classify()?)
                    .with_numeric_scan(numeric_scan(spec, cli)?),
            ),
        )
    } else {
        skipped.push("complement-pi, leaf-pi, resonance: not computed on this ambient".to_string());
        (None, None, None)
    };

    let connectivity_report = spec.connectivity_report()?;
    warnings.extend(connectivity_report.warnings.iter().cloned());
    let connectivity = ConnectivityBody::from_report(&connectivity_report);

    let hyperplane_section = if projective && spec.ambient().leaf_dim() >= 2 {
        Some(SectionBody::from_report(&spec.hyperplane_section_report()?))
    } else {
        skipped.push("hyperplane-section: needs a projective ambient with n >= 2".to_string());
        None
    };

    let has_polynomials = spec.components().iter().all(|c| c.polynomial.is_some());
    let has_numerics = spec.basis().has_numeric_values();
    let periods = if projective && has_polynomials && has_numerics {
        let report = verify_meridians(spec, cli.tolerance, cli.seed, cli.samples)?;
        Some(PeriodsBody::from_report(&report))
    } else {
        skipped.push(
            "verify-periods: needs defining polynomials and numeric basis values".to_string(),
        );
        None
    };

    Ok((
        FullBody {
            complement_pi1,
            leaf_pi1,
            resonance,
            connectivity,
            hyperplane_section,
            periods,
            skipped,
        },
        warnings,
    ))
}
