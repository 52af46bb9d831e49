//! The `dgraph` command line.
//!
//! Exit codes: 0 success (or equivalent / consistent), 1 a negative verdict,
//! 2 any error, reported as one JSON object on standard error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::config::{OrientationChoice, RunConfig};
use crate::covering::{build_certificate_oriented, CoveringError, Orientation};
use crate::graph::{compare_certificates, GraphError, InvariantCertificate};
use crate::oracle::{corrupted, LevelOracle, OracleError};
use crate::poly::{escape_report, invariant_of_oriented, portrait_of, ComplexPolynomial, EscapeStatus, PolyError};
use crate::portrait::{portrait_validate, CriticalPortrait, PortraitError};
use crate::render;

#[derive(Debug, Parser)]
#[command(name = "dgraph", version, about = "Distinguishing-graph invariants of escaping polynomial dynamics")]
pub struct Cli {
    /// JSON file with default settings; flags override it
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub tol_green: Option<f64>,
    #[arg(long, global = true)]
    pub tol_angle: Option<f64>,
    #[arg(long, global = true)]
    pub max_iter: Option<usize>,
    /// Grid resolution for the oracle and renders
    #[arg(long, global = true)]
    pub res: Option<usize>,
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub orientation: Option<OrientationChoice>,
    /// Output file instead of standard output
    #[arg(short = 'o', long = "output", global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the certificate of a polynomial or portrait
    Invariant { input: PathBuf },
    /// Decide whether two inputs have equivalent certificates
    Equiv { a: PathBuf, b: PathBuf },
    /// Escape status, genericity and portrait validation
    Check { input: PathBuf },
    /// Flood-fill cross-check of the certificate
    Oracle {
        input: PathBuf,
        /// Check a deliberately corrupted certificate instead
        #[arg(long)]
        corrupt: bool,
    },
    /// Draw level curves, critical rays or band components
    Render {
        input: PathBuf,
        #[arg(value_enum)]
        what: RenderKind,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RenderKind {
    Equipotentials,
    Rays,
    Regions,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Covering(#[from] CoveringError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("orientations disagree: {0}")]
    Orientation(String),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "USAGE",
            CliError::Io(_) => "IO",
            CliError::Parse(_) | CliError::Poly(PolyError::Json(_)) | CliError::Graph(GraphError::Json(_)) => "PARSE",
            CliError::Config(_) => "CONFIG",
            CliError::Poly(PolyError::InvalidPolynomial(_)) | CliError::Graph(_) => "INVALID_INPUT",
            CliError::Covering(CoveringError::Portrait(_)) => "INVALID_INPUT",
            CliError::Poly(PolyError::GenericityViolation(..)) | CliError::Covering(CoveringError::GenericityViolation(..)) => {
                "GENERICITY"
            }
            CliError::Oracle(OracleError::ResolutionTooCoarse { .. }) => "RESOLUTION",
            CliError::Oracle(OracleError::Poly(PolyError::GenericityViolation(..))) => "GENERICITY",
            CliError::Oracle(_) => "ORACLE",
            CliError::Orientation(_) => "ORIENTATION",
            CliError::Poly(_) | CliError::Covering(_) => "COMPUTE",
        }
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Report<'a> {
            code: &'a str,
            message: String,
        }
        serde_json::to_string(&Report {
            code: self.code(),
            message: self.to_string(),
        })
        .expect("error serialization is infallible")
    }
}

impl From<PortraitError> for CliError {
    fn from(e: PortraitError) -> Self {
        match e {
            PortraitError::Json(m) => CliError::Parse(m),
            other => CliError::Covering(CoveringError::Portrait(other)),
        }
    }
}

/// A parsed input file.
#[derive(Debug, Clone)]
pub enum Input {
    Polynomial(ComplexPolynomial),
    Portrait(CriticalPortrait),
    Certificate(InvariantCertificate),
}

impl Input {
    /// Recognise the document by its top-level keys.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        let has = |k: &str| value.get(k).is_some();
        if has("coefficients") {
            Ok(Input::Polynomial(ComplexPolynomial::from_json(text)?))
        } else if has("graph") {
            Ok(Input::Certificate(InvariantCertificate::from_json(text)?))
        } else if has("criticals") {
            Ok(Input::Portrait(CriticalPortrait::from_json(text)?))
        } else {
            Err(CliError::Parse(
                "expected a polynomial, portrait or certificate document".into(),
            ))
        }
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    fn polynomial(self) -> Result<ComplexPolynomial, CliError> {
        match self {
            Input::Polynomial(p) => Ok(p),
            _ => Err(CliError::Usage("this command needs a polynomial".into())),
        }
    }
}

fn settings(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut c = match &cli.config {
        Some(path) => RunConfig::load(path).map_err(CliError::Config)?,
        None => RunConfig::default(),
    };
    if let Some(v) = cli.tol_green {
        c.tol_green = v;
    }
    if let Some(v) = cli.tol_angle {
        c.tol_angle = v;
    }
    if let Some(v) = cli.max_iter {
        c.max_iter = v;
    }
    if let Some(v) = cli.res {
        c.resolution = v;
    }
    if let Some(v) = cli.depth {
        c.depth = v;
    }
    if let Some(v) = cli.orientation {
        c.orientation = v;
    }
    if let Some(v) = &cli.output {
        c.output = Some(v.clone());
    }
    c.validate().map_err(CliError::Config)?;
    Ok(c)
}

/// Certificate of any input under the configured orientation.
pub fn certificate_of(input: Input, config: &RunConfig) -> Result<InvariantCertificate, CliError> {
    let t = config.tolerances();
    let one = |o: Orientation| -> Result<InvariantCertificate, CliError> {
        match &input {
            Input::Polynomial(p) => Ok(invariant_of_oriented(p, &t, o)?),
            Input::Portrait(p) => Ok(build_certificate_oriented(p, o)?),
            Input::Certificate(c) => Ok(c.clone()),
        }
    };
    match config.orientation {
        OrientationChoice::Ccw => one(Orientation::Ccw),
        OrientationChoice::Cw => one(Orientation::Cw),
        OrientationChoice::Both => {
            let (a, b) = (one(Orientation::Ccw)?, one(Orientation::Cw)?);
            if a != b {
                return Err(CliError::Orientation(format!("{} vs {}", a.to_json(), b.to_json())));
            }
            Ok(a)
        }
    }
}

fn emit(config: &RunConfig, out: &mut dyn Write, body: &str) -> Result<(), CliError> {
    match &config.output {
        Some(path) => std::fs::write(path, body).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => out.write_all(body.as_bytes()).map_err(|e| CliError::Io(e.to_string())),
    }
}

fn say(out: &mut dyn Write, line: &str) -> Result<(), CliError> {
    writeln!(out, "{line}").map_err(|e| CliError::Io(e.to_string()))
}

fn invariant(input: &Path, config: &RunConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    let cert = certificate_of(Input::load(input)?, config)?;
    emit(config, out, &(cert.to_json() + "\n"))?;
    Ok(0)
}

fn equiv(a: &Path, b: &Path, config: &RunConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    let ca = certificate_of(Input::load(a)?, config)?;
    let cb = certificate_of(Input::load(b)?, config)?;
    let verdict = compare_certificates(&ca, &cb)?;
    let word = if verdict.is_equivalent() { "EQUIVALENT" } else { "NOT_EQUIVALENT" };
    say(out, &format!("{word}: {verdict}"))?;
    Ok(if verdict.is_equivalent() { 0 } else { 1 })
}

fn check(input: &Path, config: &RunConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    let t = config.tolerances();
    match Input::load(input)? {
        Input::Polynomial(p) => {
            say(out, &format!("polynomial: {p}"))?;
            for (i, (c, d, status)) in escape_report(&p, &t)?.into_iter().enumerate() {
                let state = match status {
                    EscapeStatus::Escaping { green } => format!("escaping, G = {:e} (error <= {:e})", green.value, green.error_bound),
                    EscapeStatus::Bounded => "bounded".to_string(),
                };
                say(out, &format!("critical {i}: z = {c}, local degree {d}, {state}"))?;
            }
            match portrait_of(&p, &t) {
                Ok(pp) if pp.portrait.criticals.is_empty() => {
                    say(out, "genericity: ok")?;
                    say(out, "portrait: empty (no escaping critical points)")?;
                    Ok(0)
                }
                Ok(pp) => {
                    say(out, "genericity: ok")?;
                    let report = portrait_validate(&pp.portrait);
                    say(out, &format!("portrait: {report}"))?;
                    Ok(if report.is_ok() { 0 } else { 1 })
                }
                Err(PolyError::GenericityViolation(a, b, g)) => {
                    say(out, &format!("genericity: violated, {a} and {b} share the level G = {g:e}"))?;
                    Ok(1)
                }
                Err(e) => Err(e.into()),
            }
        }
        Input::Portrait(p) => {
            let report = portrait_validate(&p);
            say(out, &format!("portrait: {report}"))?;
            Ok(if report.is_ok() { 0 } else { 1 })
        }
        Input::Certificate(c) => {
            // parsing already validated it
            say(out, &format!("certificate: valid, degree {}, {} labels", c.degree, c.graph.len()))?;
            Ok(0)
        }
    }
}

fn oracle(input: &Path, corrupt: bool, config: &RunConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    let t = config.tolerances();
    let p = Input::load(input)?.polynomial()?;
    let mut cert = certificate_of(Input::Polynomial(p.clone()), config)?;
    if corrupt {
        cert = corrupted(&cert)
            .ok_or_else(|| CliError::Usage("the certificate has no label that can be corrupted".into()))?;
    }
    let oracle = LevelOracle::new(&p, &t)?;
    let survey = oracle.survey(config.depth.max(2), config.resolution)?;
    let report = oracle.consistency(&cert, &survey)?;
    say(out, &report.to_string())?;
    if let Some(path) = &config.output {
        let json = serde_json::to_string_pretty(&report).expect("report serialization is infallible");
        std::fs::write(path, json + "\n").map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(if report.is_consistent() { 0 } else { 1 })
}

fn draw(input: &Path, what: RenderKind, config: &RunConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    let t = config.tolerances();
    let p = Input::load(input)?.polynomial()?;
    let body = match what {
        RenderKind::Equipotentials => render::equipotentials_svg(&p, config.resolution, &t)?,
        RenderKind::Rays => render::rays_svg(&p, &t)?,
        RenderKind::Regions => {
            let survey = LevelOracle::new(&p, &t)?.survey(config.depth, config.resolution)?;
            let map = &survey.maps[config.depth];
            let csv = config
                .output
                .as_ref()
                .and_then(|o| o.extension())
                .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
            if csv {
                map.to_csv()
            } else {
                render::regions_svg(map)
            }
        }
    };
    emit(config, out, &body)?;
    Ok(0)
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let config = settings(cli)?;
    match &cli.command {
        Command::Invariant { input } => invariant(input, &config, out),
        Command::Equiv { a, b } => equiv(a, b, &config, out),
        Command::Check { input } => check(input, &config, out),
        Command::Oracle { input, corrupt } => oracle(input, *corrupt, &config, out),
        Command::Render { input, what } => draw(input, *what, &config, out),
    }
}

/// Parse `args`, run, report errors on `err` and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return 0;
        }
        Err(e) => {
            let _ = writeln!(err, "{}", CliError::Usage(e.to_string().trim().to_string()).to_json());
            return 2;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{}", e.to_json());
            2
        }
    }
}
