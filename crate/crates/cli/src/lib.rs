//! Scenario runner behind the `holomotion` binary.
//!
//! A scenario file is a JSON object
//!
//! ```json
//! { "kind": "extend", "payload": { "traces": [[[0, 2], [0.2, 0]]] }, "out": "reports", "svg": true }
//! ```
//!
//! where `payload` follows the schema of its kind (see the README). Every
//! subcommand of the binary builds a [`Scenario`] and goes through [`run`], so
//! `holomotion run --scenario f.json` and the direct subcommands produce the
//! same report.

mod kinds;
pub mod svg;

pub use svg::{render_svg, SvgError};

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad user input; `key` names the offending scenario key.
    #[error("{key}: {message}")]
    Input { key: String, message: String },
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("computation failed: {0}")]
    Compute(String),
    #[error(transparent)]
    Svg(#[from] SvgError),
}

impl CliError {
    pub(crate) fn input(key: impl Into<String>, message: impl fmt::Display) -> Self {
        CliError::Input { key: key.into(), message: message.to_string() }
    }

    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io { path: path.to_path_buf(), source }
    }

    /// Every error is an input-side failure as far as the exit status goes.
    pub fn exit_code(&self) -> i32 {
        1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Words,
    Monodromy,
    Counterexample,
    Geometry,
    Extend,
    Barycenter,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Words => "words",
            Kind::Monodromy => "monodromy",
            Kind::Counterexample => "counterexample",
            Kind::Geometry => "geometry",
            Kind::Extend => "extend",
            Kind::Barycenter => "barycenter",
        }
    }

    /// SVG diagrams emitted for this kind under `--svg`.
    pub fn diagrams(self) -> &'static [&'static str] {
        match self {
            Kind::Monodromy | Kind::Counterexample => &["braid"],
            Kind::Extend => &["radial", "flow"],
            _ => &[],
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub kind: Kind,
    pub payload: Value,
    /// Output directory; relative paths resolve against the scenario file.
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub svg: bool,
    /// Directory against which relative paths in the scenario resolve.
    #[serde(skip)]
    pub base: PathBuf,
}

impl Scenario {
    pub fn new(kind: Kind, payload: Value) -> Self {
        Self { kind, payload, out: None, svg: false, base: PathBuf::from(".") }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let value: Value = serde_json::from_str(text).map_err(|e| CliError::input("scenario", e))?;
        from_value_at("", &value)
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let mut s = Self::parse(&text)?;
        s.base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(s)
    }

    pub(crate) fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base.join(p)
        }
    }
}

/// Deserializes `value`, reporting failures against the dotted key path
/// below `prefix`.
pub(crate) fn from_value_at<T: DeserializeOwned>(prefix: &str, value: &Value) -> Result<T, CliError> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        let key = match (prefix.is_empty(), path == ".") {
            (true, true) => "scenario".to_string(),
            (true, false) => path,
            (false, true) => prefix.to_string(),
            (false, false) => format!("{prefix}.{path}"),
        };
        CliError::input(key, e.into_inner())
    })
}

/// Command-line overrides applied on top of a scenario.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub samples: Option<usize>,
    pub rays: Option<usize>,
    /// Replaces the primary tolerance of the scenario kind.
    pub tol: Option<f64>,
    pub out: Option<PathBuf>,
    pub svg: bool,
    /// Report `runtime_ms` as 0 so that reports are byte-reproducible.
    pub no_timing: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Certificate {
    /// `value < tol`.
    pub fn below(value: f64, tol: f64) -> Self {
        Self { pass: value < tol, value: Some(value), tol: Some(tol), detail: None }
    }

    pub fn check(pass: bool, detail: impl Into<String>) -> Self {
        Self { pass, value: None, tol: None, detail: Some(detail.into()) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub scenario: Kind,
    /// The payload after defaults and overrides were applied.
    pub inputs: Value,
    pub results: Value,
    pub certificates: BTreeMap<String, Certificate>,
    pub runtime_ms: u64,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.certificates.values().all(|c| c.pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            2
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report values are finite JSON");
        s.push('\n');
        s
    }
}

/// A CSV side table written next to the report.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: &'static str,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    /// Files written, in creation order.
    pub files: Vec<PathBuf>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        self.report.exit_code()
    }
}

/// Runs the scenario pipeline without touching the filesystem (apart from
/// reading input files referenced by the payload).
pub fn execute(scenario: &Scenario, o: &Overrides) -> Result<(Report, Vec<Table>), CliError> {
    let start = Instant::now();
    let done = kinds::execute(scenario, o)?;
    let runtime_ms = if o.no_timing { 0 } else { start.elapsed().as_millis() as u64 };
    let report = Report {
        scenario: scenario.kind,
        inputs: done.inputs,
        results: done.results,
        certificates: done.certificates,
        runtime_ms,
    };
    Ok((report, done.tables))
}

/// Executes the scenario and writes `report.json`, any CSV tables and (with
/// `svg`) the diagrams into the output directory, if one is configured.
pub fn run(scenario: &Scenario, o: &Overrides) -> Result<Outcome, CliError> {
    let out = match (&o.out, &scenario.out) {
        (Some(p), _) => Some(p.clone()),
        (None, Some(p)) => Some(scenario.resolve(p)),
        (None, None) => None,
    };
    let svg = o.svg || scenario.svg;
    if svg && out.is_none() {
        return Err(CliError::input("out", "SVG output needs an output directory"));
    }
    let (report, tables) = execute(scenario, o)?;
    let mut files = Vec::new();
    if let Some(dir) = out {
        fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
        let path = dir.join("report.json");
        fs::write(&path, report.to_json()).map_err(|e| CliError::io(&path, e))?;
        files.push(path);
        for t in &tables {
            let path = dir.join(format!("{}.csv", t.name));
            write_table(&path, t)?;
            files.push(path);
        }
        if svg {
            for kind in scenario.kind.diagrams() {
                let path = dir.join(format!("{kind}.svg"));
                fs::write(&path, render_svg(&report, kind)?).map_err(|e| CliError::io(&path, e))?;
                files.push(path);
            }
        }
    }
    Ok(Outcome { report, files })
}

/// Reads the scenario file at `path` and runs it.
pub fn run_scenario(path: &Path, o: &Overrides) -> Result<Outcome, CliError> {
    run(&Scenario::from_file(path)?, o)
}

fn write_table(path: &Path, t: &Table) -> Result<(), CliError> {
    let csv_err = |e: csv::Error| CliError::io(path, e.into());
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    w.write_record(&t.header).map_err(csv_err)?;
    for row in &t.rows {
        w.write_record(row).map_err(csv_err)?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}
