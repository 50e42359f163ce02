//! Report rendering in JSON, CSV and plain text.
//!
//! Wall-clock figures live only under `timing`, so two runs with the same
//! inputs differ in nothing else.

use std::fmt;
use std::str::FromStr;

use fuzzrel_core::relation::FuzzyRelation;
use serde_json::{Map, Value};

use crate::ingest::format_matrix;
use crate::CliError;

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(CliError::Validation(format!(
                "unknown format '{other}'; valid options: json, csv, text"
            ))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "text",
        })
    }
}

/// `x` rounded to 12 significant digits.
pub fn sig12(x: f64) -> f64 {
    if x.is_finite() && x != 0.0 {
        format!("{x:.11e}").parse().unwrap_or(x)
    } else {
        x
    }
}

/// JSON number with 12 significant digits; infinities become strings.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        Value::from(sig12(x))
    } else if x.is_nan() {
        Value::Null
    } else if x > 0.0 {
        Value::from("inf")
    } else {
        Value::from("-inf")
    }
}

pub fn matrix_value(r: &FuzzyRelation) -> Value {
    Value::Array(
        (0..r.n())
            .map(|x| Value::Array(r.row(x).iter().map(|&v| num(v)).collect()))
            .collect(),
    )
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub command: String,
    pub fields: Map<String, Value>,
    /// Human-readable lines for `--format text`.
    pub text: Vec<String>,
    /// Header and rows for `--format csv`; defaults to `key,value` pairs.
    pub table: Option<(Vec<String>, Vec<Vec<String>>)>,
    /// Matrix payload, written as matrix CSV under `--format csv`.
    pub matrix: Option<FuzzyRelation>,
    pub timing: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            ..Default::default()
        }
    }

    pub fn field(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.insert(key.to_string(), value.into());
        self
    }

    pub fn line(&mut self, s: impl Into<String>) -> &mut Self {
        self.text.push(s.into());
        self
    }

    pub fn time(&mut self, key: &str, seconds: f64) -> &mut Self {
        self.timing.insert(key.to_string(), Value::from(seconds));
        self
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => Ok(self.render_json()),
            Format::Text => Ok(self.render_text()),
            Format::Csv => self.render_csv(),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("schema".into(), Value::from(SCHEMA_VERSION));
        obj.insert("command".into(), Value::from(self.command.clone()));
        for (k, v) in &self.fields {
            obj.insert(k.clone(), v.clone());
        }
        if let Some(m) = &self.matrix {
            obj.insert("matrix".into(), matrix_value(m));
        }
        obj.insert("timing".into(), Value::Object(self.timing.clone()));
        Value::Object(obj)
    }

    fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).unwrap_or_default();
        s.push('\n');
        s
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        for l in &self.text {
            out.push_str(l);
            out.push('\n');
        }
        if let Some(m) = &self.matrix {
            out.push_str(&format_matrix(m));
        }
        let timing: Vec<String> = self
            .timing
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        if !timing.is_empty() {
            out.push_str(&format!("timing: {}\n", timing.join(" ")));
        }
        out
    }

    fn render_csv(&self) -> Result<String, CliError> {
        if let Some(m) = &self.matrix {
            return Ok(format_matrix(m));
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| CliError::Internal(e.to_string());
        match &self.table {
            Some((header, rows)) => {
                w.write_record(header).map_err(io)?;
                for r in rows {
                    w.write_record(r).map_err(io)?;
                }
            }
            None => {
                w.write_record(["key", "value"]).map_err(io)?;
                for (k, v) in &self.fields {
                    let v = match v {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    w.write_record([k.as_str(), v.as_str()]).map_err(io)?;
                }
            }
        }
        let bytes = w
            .into_inner()
            .map_err(|e| CliError::Internal(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))
    }
}
