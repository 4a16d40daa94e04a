//! Matrix and potential-family file formats.
//!
//! Two on-disk formats:
//!
//! - **JSON**: `{"labels": [...], "mode": "multiplicative" | "additive",
//!   "matrix": [[...]]}`. Entries are JSON numbers; under `--exact` they may
//!   also be `"p/q"` strings. Save/load round-trips float instances
//!   bit-exactly and exact instances value-exactly.
//! - **CSV**: first row is a blank corner cell followed by the column
//!   labels; each following row is the row label followed by the row's
//!   values. CSV carries no mode field, so loading takes the mode from
//!   `--mode` (default multiplicative). Values are written in shortest
//!   round-trip decimal (never more than 17 significant digits), so a CSV
//!   round trip is also exact.
//!
//! Potential families are JSON-only: `{"labels": [...], "mode": ...,
//!   "potentials": [[...], ...]}`.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use sincov_core::entry::Entry;
use sincov_core::instance::{Instance, Mode};
use sincov_core::represent::{Potential, PotentialFamily};

use crate::error::CliError;

/// Artifact output format selected by `--format`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutFormat {
    Json,
    Csv,
}

impl FromStr for OutFormat {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "json" => Ok(OutFormat::Json),
            "csv" => Ok(OutFormat::Csv),
            other => Err(CliError::new(format!(
                "unknown format {other:?} (expected \"json\" or \"csv\")"
            ))),
        }
    }
}

impl fmt::Display for OutFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutFormat::Json => "json",
            OutFormat::Csv => "csv",
        })
    }
}

/// Entry types the CLI can read and write.
pub trait CliEntry: Entry {
    /// JSON rendering: a number for floats, a `"p/q"` string for exacts.
    fn json_value(&self) -> Value;
    /// Conversion of a JSON number.
    fn from_number(v: f64) -> Self;
    /// Conversion of a text cell (CSV field or JSON string entry).
    fn from_text(s: &str) -> Result<Self, String>;
}

impl CliEntry for f64 {
    fn json_value(&self) -> Value {
        match serde_json::Number::from_f64(*self) {
            Some(n) => Value::Number(n),
            // Unreachable for instance entries (finiteness is an instance
            // invariant) but derived report quantities pass through here too.
            None => Value::String(<f64 as Entry>::render(self)),
        }
    }

    fn from_number(v: f64) -> Self {
        v
    }

    fn from_text(s: &str) -> Result<Self, String> {
        if s.contains('/') {
            return Err(format!("rational entry {s:?} requires --exact"));
        }
        let v: f64 = s
            .parse()
            .map_err(|_| format!("cannot parse {s:?} as a number"))?;
        if !v.is_finite() {
            return Err(format!("entry {s:?} is not finite"));
        }
        Ok(v)
    }
}

impl CliEntry for BigRational {
    fn json_value(&self) -> Value {
        Value::String(<BigRational as Entry>::render(self))
    }

    fn from_number(v: f64) -> Self {
        <BigRational as Entry>::from_f64(v)
    }

    fn from_text(s: &str) -> Result<Self, String> {
        if let Some((p, q)) = s.split_once('/') {
            let p = BigInt::from_str(p.trim())
                .map_err(|_| format!("cannot parse {s:?} as a rational"))?;
            let q = BigInt::from_str(q.trim())
                .map_err(|_| format!("cannot parse {s:?} as a rational"))?;
            if q == BigInt::from(0) {
                return Err(format!("zero denominator in {s:?}"));
            }
            return Ok(BigRational::new(p, q));
        }
        if let Ok(p) = BigInt::from_str(s) {
            return Ok(BigRational::from_integer(p));
        }
        // Decimal notation: take the IEEE double it denotes, exactly.
        let v: f64 = s
            .parse()
            .map_err(|_| format!("cannot parse {s:?} as a rational"))?;
        if !v.is_finite() {
            return Err(format!("entry {s:?} is not finite"));
        }
        Ok(<BigRational as Entry>::from_f64(v))
    }
}

/// An instance loaded under one of the two arithmetic pipelines.
pub enum Loaded {
    Float(Instance<f64>),
    Exact(Instance<BigRational>),
}

/// A potential family loaded under one of the two arithmetic pipelines.
pub enum LoadedFamily {
    Float(PotentialFamily<f64>),
    Exact(PotentialFamily<BigRational>),
}

fn read_file(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::new(format!("cannot read {path}: {e}")))
}

fn extension(path: &str) -> Result<String, CliError> {
    Path::new(path)
        .extension()
        .and_then(|e| e.to_str())
        .map(|e| e.to_ascii_lowercase())
        .filter(|e| e == "json" || e == "csv")
        .ok_or_else(|| {
            CliError::new(format!(
                "unsupported input extension on {path:?} (expected .json or .csv)"
            ))
        })
}

/// Load a matrix instance from a `.json` or `.csv` file. `mode_flag` is the
/// `--mode` value: for CSV it supplies the mode (default multiplicative);
/// for JSON it must agree with the file when given. `exact` selects the
/// arithmetic pipeline.
pub fn load_instance(
    path: &str,
    mode_flag: Option<Mode>,
    exact: bool,
) -> Result<Loaded, CliError> {
    let content = read_file(path)?;
    match extension(path)?.as_str() {
        "json" => {
            if exact {
                parse_instance_json::<BigRational>(path, &content, mode_flag).map(Loaded::Exact)
            } else {
                parse_instance_json::<f64>(path, &content, mode_flag).map(Loaded::Float)
            }
        }
        _ => {
            if exact {
                parse_instance_csv::<BigRational>(path, &content, mode_flag).map(Loaded::Exact)
            } else {
                parse_instance_csv::<f64>(path, &content, mode_flag).map(Loaded::Float)
            }
        }
    }
}

fn parse_json_root<'a>(
    path: &str,
    content: &'a str,
) -> Result<serde_json::Map<String, Value>, CliError> {
    let root: Value =
        serde_json::from_str(content).map_err(|e| CliError::new(format!("{path}: {e}")))?;
    match root {
        Value::Object(map) => Ok(map),
        _ => Err(CliError::new(format!(
            "{path}: the top-level JSON value must be an object"
        ))),
    }
}

fn json_labels(path: &str, map: &serde_json::Map<String, Value>) -> Result<Vec<String>, CliError> {
    let raw = map
        .get("labels")
        .ok_or_else(|| CliError::new(format!("{path}: missing \"labels\" array")))?;
    let arr = raw
        .as_array()
        .ok_or_else(|| CliError::new(format!("{path}: \"labels\" must be an array")))?;
    arr.iter()
        .enumerate()
        .map(|(i, v)| {
            v.as_str().map(str::to_owned).ok_or_else(|| {
                CliError::new(format!("{path}: labels[{i}] must be a string"))
            })
        })
        .collect()
}

fn json_mode(
    path: &str,
    map: &serde_json::Map<String, Value>,
    mode_flag: Option<Mode>,
) -> Result<Mode, CliError> {
    let raw = map
        .get("mode")
        .and_then(Value::as_str)
        .ok_or_else(|| CliError::new(format!("{path}: missing \"mode\" string")))?;
    let mode: Mode = raw
        .parse()
        .map_err(|e| CliError::new(format!("{path}: {e}")))?;
    if let Some(flag) = mode_flag {
        if flag != mode {
            return Err(CliError::new(format!(
                "{path}: the file declares mode \"{}\" but --mode {} was given",
                mode.as_str(),
                flag.as_str()
            )));
        }
    }
    Ok(mode)
}

fn json_cell<T: CliEntry>(path: &str, i: usize, j: usize, v: &Value) -> Result<T, CliError> {
    match v {
        Value::Number(n) => {
            let f = n.as_f64().ok_or_else(|| {
                CliError::new(format!("{path}: matrix[{i}][{j}] is out of range"))
            })?;
            Ok(T::from_number(f))
        }
        Value::String(s) => {
            T::from_text(s).map_err(|m| CliError::new(format!("{path}: matrix[{i}][{j}]: {m}")))
        }
        _ => Err(CliError::new(format!(
            "{path}: matrix[{i}][{j}] must be a number or a \"p/q\" string"
        ))),
    }
}

fn parse_instance_json<T: CliEntry>(
    path: &str,
    content: &str,
    mode_flag: Option<Mode>,
) -> Result<Instance<T>, CliError> {
    let map = parse_json_root(path, content)?;
    let labels = json_labels(path, &map)?;
    let mode = json_mode(path, &map, mode_flag)?;
    let matrix = map
        .get("matrix")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::new(format!("{path}: missing \"matrix\" array")))?;
    let mut rows = Vec::with_capacity(matrix.len());
    for (i, row) in matrix.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| {
            CliError::new(format!("{path}: matrix[{i}] must be an array"))
        })?;
        let mut out = Vec::with_capacity(row.len());
        for (j, v) in row.iter().enumerate() {
            out.push(json_cell::<T>(path, i, j, v)?);
        }
        rows.push(out);
    }
    Instance::new(labels, rows, mode).map_err(|e| CliError::new(format!("{path}: {e}")))
}

fn parse_instance_csv<T: CliEntry>(
    path: &str,
    content: &str,
    mode_flag: Option<Mode>,
) -> Result<Instance<T>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(content.as_bytes());
    let mut records = Vec::new();
    for rec in reader.records() {
        records.push(rec.map_err(|e| CliError::new(format!("{path}: {e}")))?);
    }
    let Some((header, body)) = records.split_first() else {
        return Err(CliError::new(format!("{path}: empty CSV matrix")));
    };
    let line_of = |rec: &csv::StringRecord| rec.position().map(|p| p.line()).unwrap_or(0);
    if header.get(0) != Some("") {
        return Err(CliError::new(format!(
            "{path}: line {}: the first header cell must be empty",
            line_of(header)
        )));
    }
    let labels: Vec<String> = header.iter().skip(1).map(str::to_owned).collect();
    let n = labels.len();
    if n == 0 {
        return Err(CliError::new(format!(
            "{path}: the header names no columns"
        )));
    }
    if body.len() != n {
        return Err(CliError::new(format!(
            "{path}: expected {n} data rows after the header, found {}",
            body.len()
        )));
    }
    let mut rows = Vec::with_capacity(n);
    for (i, rec) in body.iter().enumerate() {
        let line = line_of(rec);
        if rec.len() != n + 1 {
            return Err(CliError::new(format!(
                "{path}: line {line}: expected {} fields, found {}",
                n + 1,
                rec.len()
            )));
        }
        let row_label = rec.get(0).unwrap_or_default();
        if row_label != labels[i] {
            return Err(CliError::new(format!(
                "{path}: line {line}: row label {row_label:?} does not match column label {:?}",
                labels[i]
            )));
        }
        let mut out = Vec::with_capacity(n);
        for j in 0..n {
            let cell = rec.get(j + 1).unwrap_or_default();
            let v = T::from_text(cell).map_err(|m| {
                CliError::new(format!("{path}: line {line}, field {}: {m}", j + 2))
            })?;
            out.push(v);
        }
        rows.push(out);
    }
    let mode = mode_flag.unwrap_or(Mode::Multiplicative);
    Instance::new(labels, rows, mode).map_err(|e| CliError::new(format!("{path}: {e}")))
}

/// JSON object for an instance (the canonical embedded representation).
pub fn instance_to_json<T: CliEntry>(inst: &Instance<T>) -> Value {
    let n = inst.n();
    let matrix: Vec<Value> = (0..n)
        .map(|i| {
            Value::Array((0..n).map(|j| inst.get(i, j).json_value()).collect())
        })
        .collect();
    json!({
        "labels": inst.labels(),
        "mode": inst.mode().as_str(),
        "matrix": matrix,
    })
}

fn instance_to_csv<T: CliEntry>(inst: &Instance<T>) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let n = inst.n();
    let mut header = vec![String::new()];
    header.extend(inst.labels().iter().cloned());
    writer.write_record(&header).expect("in-memory write");
    for i in 0..n {
        let mut row = vec![inst.labels()[i].clone()];
        row.extend((0..n).map(|j| T::render(inst.get(i, j))));
        writer.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("UTF-8 output")
}

/// Render an instance to the chosen artifact format.
pub fn render_instance<T: CliEntry>(inst: &Instance<T>, format: OutFormat) -> String {
    match format {
        OutFormat::Json => {
            let mut s = serde_json::to_string_pretty(&instance_to_json(inst))
                .expect("instance JSON serializes");
            s.push('\n');
            s
        }
        OutFormat::Csv => instance_to_csv(inst),
    }
}

/// JSON object for a potential family.
pub fn family_to_json<T: CliEntry>(family: &PotentialFamily<T>) -> Value {
    let potentials: Vec<Value> = family
        .members()
        .iter()
        .map(|p| Value::Array(p.values().iter().map(CliEntry::json_value).collect()))
        .collect();
    json!({
        "labels": family.labels(),
        "mode": family.mode().as_str(),
        "potentials": potentials,
    })
}

/// Render a potential family (JSON-only artifact).
pub fn render_family<T: CliEntry>(family: &PotentialFamily<T>) -> String {
    let mut s =
        serde_json::to_string_pretty(&family_to_json(family)).expect("family JSON serializes");
    s.push('\n');
    s
}

/// Load a potential family from a `.json` file.
pub fn load_family(path: &str, exact: bool) -> Result<LoadedFamily, CliError> {
    let content = read_file(path)?;
    if extension(path)? != "json" {
        return Err(CliError::new(format!(
            "{path}: potential families are JSON-only"
        )));
    }
    if exact {
        parse_family::<BigRational>(path, &content).map(LoadedFamily::Exact)
    } else {
        parse_family::<f64>(path, &content).map(LoadedFamily::Float)
    }
}

fn parse_family<T: CliEntry>(path: &str, content: &str) -> Result<PotentialFamily<T>, CliError> {
    let map = parse_json_root(path, content)?;
    let labels = json_labels(path, &map)?;
    let mode = json_mode(path, &map, None)?;
    let raw = map
        .get("potentials")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::new(format!("{path}: missing \"potentials\" array")))?;
    let mut members = Vec::with_capacity(raw.len());
    for (i, row) in raw.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| {
            CliError::new(format!("{path}: potentials[{i}] must be an array"))
        })?;
        let mut values = Vec::with_capacity(row.len());
        for (j, v) in row.iter().enumerate() {
            values.push(json_cell::<T>(path, i, j, v)?);
        }
        members.push(
            Potential::new(values).map_err(|e| CliError::new(format!("{path}: {e}")))?,
        );
    }
    PotentialFamily::new(labels, members, mode).map_err(|e| CliError::new(format!("{path}: {e}")))
}
