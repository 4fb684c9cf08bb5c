mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use thiserror::Error;

use tropical_floors::constructor::{build_unimodular_ssfd, check_g_admissible, Admissibility, ConstructError};
use tropical_floors::curve::{curve_from_json, curve_to_json, dual_subdivision, CurveParseError};
use tropical_floors::enumeration::{enumeration_report, severi_degree, EnumError};
use tropical_floors::moves::{verify_certificate, Engine, MoveCertificate, MoveError};
use tropical_floors::polygon::{
    interior_lattice_count, is_h_transverse, polygon_from_json, satisfies_sufficient_admissibility, LatticePolygon,
    PolygonParseError,
};
use tropical_floors::{Curve, Rational, Scalar};

#[derive(Parser)]
#[command(name = "tropfloor", version, about = "Floor decomposed tropical curves and their moves")]
struct Cli {
    /// Stretching factor as a fraction, e.g. `40` or `7/2`.
    #[arg(long, global = true)]
    lambda: Option<String>,
    /// Give up after this many candidate diagrams.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Report h-transversality, interior points and the sufficient condition.
    PolygonCheck { polygon: PathBuf },
    /// Build a unimodular ssfd curve of the given genus.
    Build {
        polygon: PathBuf,
        #[arg(long, default_value_t = 0)]
        genus: i64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Move a curve to the canonical stratum; writes the certificate.
    Canonicalize {
        curve: PathBuf,
        /// Certificate output.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Canonical curve output.
        #[arg(long)]
        curve_out: Option<PathBuf>,
    },
    /// Certificate of a path of moves from `a` to `b`.
    Connect {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a certificate independently.
    Verify { certificate: PathBuf },
    /// All ssfd strata of the polygon as a JSON report.
    Enumerate {
        polygon: PathBuf,
        #[arg(long, default_value_t = 0)]
        genus: i64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Severi degree.
    Count {
        polygon: PathBuf,
        #[arg(long, default_value_t = 0)]
        genus: i64,
    },
    /// Decide (very) admissibility.
    Admissible {
        polygon: PathBuf,
        #[arg(long, default_value_t = 0)]
        genus: i64,
    },
    /// Draw a curve as SVG.
    Render {
        curve: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Add the dual subdivision.
        #[arg(long)]
        dual: bool,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Precondition(String),
    #[error("verification failed at step {step}: {reason}")]
    Verification { step: usize, reason: String },
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Invalid(_) => 3,
            CliError::Precondition(_) => 4,
            CliError::Verification { .. } => 5,
            CliError::Internal(_) => 1,
        }
    }
}

impl From<PolygonParseError> for CliError {
    fn from(e: PolygonParseError) -> Self {
        match e {
            PolygonParseError::Json(_) => CliError::Parse(e.to_string()),
            PolygonParseError::Invalid(_) => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<CurveParseError> for CliError {
    fn from(e: CurveParseError) -> Self {
        match e {
            CurveParseError::Json(_) | CurveParseError::Rational(_) => CliError::Parse(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<MoveError> for CliError {
    fn from(e: MoveError) -> Self {
        match e {
            MoveError::GenusOutOfRange(_) | MoveError::DegreeOrGenusMismatch | MoveError::IndexOutOfRange(_) => {
                CliError::Invalid(e.to_string())
            }
            MoveError::Internal(_) => CliError::Internal(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<ConstructError> for CliError {
    fn from(e: ConstructError) -> Self {
        match e {
            ConstructError::Move(m) => m.into(),
            ConstructError::GenusOutOfRange(_) => CliError::Invalid(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<EnumError> for CliError {
    fn from(e: EnumError) -> Self {
        match e {
            EnumError::GenusOutOfRange(_) => CliError::Invalid(e.to_string()),
            EnumError::Unrealizable(_) => CliError::Internal(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn write(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Parse(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn load_polygon(path: &Path) -> Result<LatticePolygon, CliError> {
    Ok(polygon_from_json(&read(path)?)?)
}

fn load_curve(path: &Path) -> Result<Curve, CliError> {
    Ok(curve_from_json::<Rational>(&read(path)?)?)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| CliError::Internal(e.to_string()))?;
    }
    let engine = match &cli.lambda {
        Some(s) => {
            let l = Rational::parse_fraction(s).ok_or_else(|| CliError::Parse(format!("bad --lambda {s:?}")))?;
            if l <= Rational::from_i64(0) {
                return Err(CliError::Invalid("--lambda must be positive".into()));
            }
            Engine::with_lambda(l)
        }
        None => Engine::default(),
    };
    match cli.cmd {
        Cmd::PolygonCheck { polygon } => {
            let p = load_polygon(&polygon)?;
            let sufficient = satisfies_sufficient_admissibility(&p).unwrap_or(false);
            println!(
                "h-transverse: {}; interior: {}; sufficient: {}",
                yes(is_h_transverse(&p)),
                interior_lattice_count(&p),
                yes(sufficient)
            );
        }
        Cmd::Build { polygon, genus, output } => {
            let p = load_polygon(&polygon)?;
            let c = build_unimodular_ssfd(&p, genus)?;
            write(output.as_deref(), &curve_to_json(&c))?;
        }
        Cmd::Canonicalize { curve, output, curve_out } => {
            let c = load_curve(&curve)?;
            let (cert, canon) = engine.canonicalize(&c)?;
            write(output.as_deref(), &cert.to_json())?;
            if let Some(p) = curve_out {
                write(Some(&p), &curve_to_json(&canon))?;
            }
        }
        Cmd::Connect { a, b, output } => {
            let (a, b) = (load_curve(&a)?, load_curve(&b)?);
            let cert = engine.connect(&a, &b)?;
            write(output.as_deref(), &cert.to_json())?;
        }
        Cmd::Verify { certificate } => {
            let cert = MoveCertificate::from_json(&read(&certificate)?)?;
            let v = verify_certificate(&cert);
            if let Some(f) = v.failure {
                return Err(CliError::Verification { step: f.step, reason: f.reason });
            }
            println!("ok: {} steps", cert.steps.len());
        }
        Cmd::Enumerate { polygon, genus, output } => {
            let p = load_polygon(&polygon)?;
            let report = enumeration_report(&p, genus)?;
            let text = serde_json::to_string_pretty(&report).map_err(|e| CliError::Internal(e.to_string()))?;
            write(output.as_deref(), &text)?;
        }
        Cmd::Count { polygon, genus } => {
            let p = load_polygon(&polygon)?;
            println!("{}", severi_degree(&p, genus)?);
        }
        Cmd::Admissible { polygon, genus } => {
            let p = load_polygon(&polygon)?;
            match check_g_admissible(&p, genus, cli.budget)? {
                Admissibility::Yes { unimodular, .. } => {
                    println!("admissible: yes; very admissible: {}", yes(unimodular))
                }
                Admissibility::No { diagrams } => {
                    println!("admissible: no; very admissible: no; diagrams: {diagrams}")
                }
                Admissibility::Unknown => println!("admissible: unknown"),
            }
        }
        Cmd::Render { curve, output, dual } => {
            let c = load_curve(&curve)?;
            let sub = if dual {
                let p = c
                    .degree()
                    .dual_polygon()
                    .ok_or_else(|| CliError::Invalid("degree has no dual polygon".into()))?;
                Some(dual_subdivision(&c, &p).map_err(|e| CliError::Precondition(e.to_string()))?)
            } else {
                None
            };
            write(output.as_deref(), &render::render_svg(&c, sub.as_ref()))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
