//! Frame and weight files.
//!
//! CSV frames hold one `x,y` vector per line; an optional `x,y` header line
//! and `#` comment lines are skipped. JSON frames are `{"vectors": [[x, y], ...]}`.
//! Weight files are a JSON array of nonnegative numbers.

use std::fs;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::error::FrameError;
use crate::linalg::{Frame, Scaling, Vec2};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{origin}: {location}: {message}")]
    Parse { origin: String, location: String, message: String },

    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Frame(#[from] FrameError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Io { .. } | CliError::Usage(_) => 1,
            CliError::Frame(e) => e.exit_code(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FrameFormat {
    Csv,
    Json,
}

impl FrameFormat {
    pub fn from_path(path: &Path) -> Option<Self> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "csv" => Some(FrameFormat::Csv),
            "json" => Some(FrameFormat::Json),
            _ => None,
        }
    }
}

fn parse_error(origin: &str, location: impl Into<String>, message: impl Into<String>) -> CliError {
    CliError::Parse { origin: origin.to_string(), location: location.into(), message: message.into() }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn check_vector(origin: &str, location: &str, x: f64, y: f64) -> Result<Vec2, CliError> {
    if !(x.is_finite() && y.is_finite()) {
        return Err(parse_error(origin, location, "non-finite entry"));
    }
    if x == 0.0 && y == 0.0 {
        return Err(parse_error(origin, location, "zero vector"));
    }
    Ok(Vec2::new(x, y))
}

fn finish(origin: &str, vectors: Vec<Vec2>) -> Result<Frame, CliError> {
    if vectors.len() < 2 {
        return Err(parse_error(
            origin,
            "file",
            format!("a frame needs at least 2 vectors, found {}", vectors.len()),
        ));
    }
    Ok(Frame::new(vectors)?)
}

pub fn parse_frame_csv(text: &str, origin: &str) -> Result<Frame, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());

    let mut vectors = Vec::new();
    let mut first = true;
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_error(origin, format!("line {line}"), e.to_string())
        })?;
        let location = format!("line {}", record.position().map_or(0, |p| p.line()));
        if std::mem::take(&mut first)
            && record.len() == 2
            && record[0].eq_ignore_ascii_case("x")
            && record[1].eq_ignore_ascii_case("y")
        {
            continue;
        }
        if record.len() != 2 {
            return Err(parse_error(
                origin,
                location,
                format!("expected 2 fields \"x,y\", found {}", record.len()),
            ));
        }
        let coord = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| parse_error(origin, location.clone(), format!("cannot parse {s:?} as a number")))
        };
        vectors.push(check_vector(origin, &location, coord(&record[0])?, coord(&record[1])?)?);
    }
    finish(origin, vectors)
}

#[derive(Deserialize)]
struct FrameDoc {
    vectors: Vec<Vec<f64>>,
}

pub fn parse_frame_json(text: &str, origin: &str) -> Result<Frame, CliError> {
    let doc: FrameDoc = serde_json::from_str(text).map_err(|e| {
        parse_error(origin, format!("line {} column {}", e.line(), e.column()), e.to_string())
    })?;
    let mut vectors = Vec::with_capacity(doc.vectors.len());
    for (i, entry) in doc.vectors.iter().enumerate() {
        let location = format!("vectors[{i}]");
        let [x, y] = entry.as_slice() else {
            return Err(parse_error(origin, location, format!("expected [x, y], found {} entries", entry.len())));
        };
        vectors.push(check_vector(origin, &location, *x, *y)?);
    }
    finish(origin, vectors)
}

pub fn parse_frame(text: &str, format: FrameFormat, origin: &str) -> Result<Frame, CliError> {
    match format {
        FrameFormat::Csv => parse_frame_csv(text, origin),
        FrameFormat::Json => parse_frame_json(text, origin),
    }
}

/// Reads a frame file; the format comes from `format` or else the extension.
pub fn read_frame(path: &Path, format: Option<FrameFormat>) -> Result<Frame, CliError> {
    let format = format.or_else(|| FrameFormat::from_path(path)).ok_or_else(|| {
        CliError::Usage(format!(
            "{}: cannot infer the frame format, use a .csv or .json extension or --format",
            path.display()
        ))
    })?;
    parse_frame(&read(path)?, format, &path.display().to_string())
}

pub fn parse_weights(text: &str, origin: &str) -> Result<Scaling, CliError> {
    let values: Vec<f64> = serde_json::from_str(text).map_err(|e| {
        parse_error(origin, format!("line {} column {}", e.line(), e.column()), e.to_string())
    })?;
    if let Some(i) = values.iter().position(|w| !(w.is_finite() && *w >= 0.0)) {
        return Err(parse_error(origin, format!("weights[{i}]"), "weights must be finite and nonnegative"));
    }
    Ok(Scaling::new(values)?)
}

/// Contents of a `--weights` file: either a bare weight array or a JSON
/// report from `scale`, whose weights and condition number are taken as the
/// claim to verify.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightsFile {
    pub scaling: Scaling,
    pub claimed_cond: Option<f64>,
}

pub fn parse_weights_file(text: &str, origin: &str) -> Result<WeightsFile, CliError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| {
        parse_error(origin, format!("line {} column {}", e.line(), e.column()), e.to_string())
    })?;
    if value.is_array() {
        return Ok(WeightsFile { scaling: parse_weights(text, origin)?, claimed_cond: None });
    }
    let weights = value
        .pointer("/scaling/weights")
        .filter(|w| w.is_array())
        .ok_or_else(|| parse_error(origin, "file", "expected a weight array or a report with scaling.weights"))?;
    let scaling = parse_weights(&weights.to_string(), origin)?;
    let claimed_cond = match value.pointer("/scaling/bounds/cond") {
        Some(serde_json::Value::Number(n)) => n.as_f64(),
        Some(serde_json::Value::String(s)) if s == "inf" => Some(f64::INFINITY),
        _ => None,
    };
    Ok(WeightsFile { scaling, claimed_cond })
}

pub fn read_weights_file(path: &Path) -> Result<WeightsFile, CliError> {
    parse_weights_file(&read(path)?, &path.display().to_string())
}

/// CSV with an `x,y` header; floats use the shortest representation that
/// parses back to the same bits.
pub fn write_frame_csv(frame: &Frame) -> String {
    let mut out = String::from("x,y\n");
    for v in frame.vectors() {
        out.push_str(&format!("{},{}\n", v.x, v.y));
    }
    out
}

pub fn write_frame_json(frame: &Frame) -> String {
    let vectors: Vec<[f64; 2]> = frame.vectors().iter().map(|&v| v.into()).collect();
    serde_json::json!({ "vectors": vectors }).to_string()
}
