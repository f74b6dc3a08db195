//! JSON-lines records, summaries and CSV tables with a single float policy:
//! 17 significant digits in scientific notation, non-finite values as null.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use tempfile::NamedTempFile;

use crate::error::CliError;

pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        "null".to_owned()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Int(i64),
    Str(String),
    Nums(Vec<f64>),
    Null,
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Num(v)
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(v as i64)
    }
}

impl From<u64> for Value {
    fn from(v: u64) -> Self {
        Value::Int(v as i64)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Str(v.to_owned())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Str(v)
    }
}

impl From<Vec<f64>> for Value {
    fn from(v: Vec<f64>) -> Self {
        Value::Nums(v)
    }
}

impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(v: Option<T>) -> Self {
        v.map_or(Value::Null, Into::into)
    }
}

impl Value {
    fn write_json(&self, out: &mut String) {
        match self {
            Value::Num(v) => out.push_str(&fmt_f64(*v)),
            Value::Int(v) => write!(out, "{v}").unwrap(),
            Value::Str(s) => out.push_str(&serde_json::to_string(s).expect("strings serialize")),
            Value::Nums(vs) => {
                out.push('[');
                for (i, v) in vs.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push_str(&fmt_f64(*v));
                }
                out.push(']');
            }
            Value::Null => out.push_str("null"),
        }
    }
}

/// Outcome of one case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    /// Computed with nothing to compare against.
    Computed,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
            Status::Computed => "computed",
        }
    }

    pub fn from_check(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// One report line: ordered fields plus the comparison outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    fields: Vec<(&'static str, Value)>,
    pub status: Status,
    pub error: Option<f64>,
}

impl Record {
    pub fn new() -> Self {
        Self {
            fields: Vec::new(),
            status: Status::Computed,
            error: None,
        }
    }

    pub fn field(mut self, key: &'static str, value: impl Into<Value>) -> Self {
        self.fields.push((key, value.into()));
        self
    }

    /// Adds `value`, `oracle`, `abs_error`, `tolerance` and the status.
    pub fn compared(self, value: f64, oracle: f64, tolerance: f64) -> Self {
        let err = (value - oracle).abs();
        self.checked(value, oracle, err, tolerance)
    }

    /// Like [`Record::compared`] with a caller-defined error measure.
    pub fn checked(mut self, value: f64, oracle: f64, error: f64, tolerance: f64) -> Self {
        let ok = error <= tolerance;
        self = self
            .field("value", value)
            .field("oracle", oracle)
            .field("abs_error", error)
            .field("tolerance", tolerance);
        self.status = Status::from_check(ok);
        self.error = Some(error);
        self
    }

    pub fn failed(mut self, reason: String) -> Self {
        self.status = Status::Fail;
        self.field("reason", reason)
    }

    pub fn skipped(mut self, reason: String) -> Self {
        self.status = Status::Skipped;
        self.field("reason", reason)
    }

    pub fn to_json(&self) -> String {
        let mut out = String::from("{");
        for (key, value) in &self.fields {
            write!(out, "\"{key}\":").unwrap();
            value.write_json(&mut out);
            out.push(',');
        }
        write!(out, "\"status\":\"{}\"}}", self.status.as_str()).unwrap();
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: &'static str,
    pub seed: Option<u64>,
    pub records: Vec<Record>,
    /// Extra summary entries such as energies or discrepancies.
    pub extras: Vec<(&'static str, Value)>,
}

impl Report {
    pub fn new(command: &'static str, seed: Option<u64>) -> Self {
        Self {
            command,
            seed,
            records: Vec::new(),
            extras: Vec::new(),
        }
    }

    fn count(&self, status: Status) -> usize {
        self.records.iter().filter(|r| r.status == status).count()
    }

    pub fn failed(&self) -> usize {
        self.count(Status::Fail)
    }

    pub fn max_error(&self) -> Option<f64> {
        self.records
            .iter()
            .filter_map(|r| r.error)
            .fold(None, |acc: Option<f64>, e| Some(acc.map_or(e, |a| a.max(e))))
    }

    pub fn jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&r.to_json());
            out.push('\n');
        }
        out
    }

    pub fn summary_json(&self) -> String {
        let mut s = Record::new()
            .field("command", self.command)
            .field("seed", self.seed)
            .field("records", self.records.len())
            .field("passed", self.count(Status::Pass))
            .field("failed", self.failed())
            .field("skipped", self.count(Status::Skipped))
            .field("computed", self.count(Status::Computed))
            .field("max_error", self.max_error());
        for (k, v) in &self.extras {
            s = s.field(k, v.clone());
        }
        s.status = Status::from_check(self.failed() == 0);
        s.to_json() + "\n"
    }
}

impl Default for Record {
    fn default() -> Self {
        Self::new()
    }
}

/// A CSV table with `#`-prefixed metadata lines above the header.
pub struct Table {
    pub metadata: Vec<String>,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn render(&self) -> Result<String, CliError> {
        let mut out = String::new();
        for line in &self.metadata {
            writeln!(out, "# {line}").unwrap();
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).map_err(CliError::io)?;
        for row in &self.rows {
            w.write_record(row).map_err(CliError::io)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::io(e.into_error()))?;
        out.push_str(&String::from_utf8(bytes).expect("csv output is utf-8"));
        Ok(out)
    }
}

/// Where the outputs of one run go.
pub struct Sink {
    dir: Option<PathBuf>,
}

impl Sink {
    pub fn new(dir: Option<PathBuf>) -> Result<Self, CliError> {
        if let Some(d) = &dir {
            fs::create_dir_all(d).map_err(CliError::io)?;
        }
        Ok(Self { dir })
    }

    /// Writes `name` atomically inside the output directory, or prints
    /// the report to stdout when there is none.
    pub fn write(&self, name: &str, contents: &str) -> Result<(), CliError> {
        match &self.dir {
            Some(dir) => write_atomic(&dir.join(name), contents),
            None => {
                if name == "report.jsonl" {
                    print!("{contents}");
                }
                Ok(())
            }
        }
    }
}

pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let mut tmp = NamedTempFile::new_in(dir).map_err(CliError::io)?;
    tmp.write_all(contents.as_bytes()).map_err(CliError::io)?;
    tmp.persist(path).map_err(|e| CliError::io(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_policy() {
        assert_eq!(fmt_f64(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt_f64(-2.0), "-2.0000000000000000e0");
        assert_eq!(fmt_f64(f64::NAN), "null");
        assert_eq!(
            0.1f64.to_string().parse::<f64>().unwrap(),
            fmt_f64(0.1).parse::<f64>().unwrap()
        );
    }

    #[test]
    fn records_are_valid_json() {
        let r = Record::new()
            .field("name", "a \"quoted\" case")
            .field("xs", vec![1.0, 2.5])
            .field("missing", None::<f64>)
            .compared(1.0, 1.5, 0.1);
        let parsed: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(parsed["status"], "fail");
        assert_eq!(parsed["abs_error"], 0.5);
        assert!(parsed["missing"].is_null());
    }

    #[test]
    fn summary_tallies() {
        let mut rep = Report::new("t", Some(3));
        rep.records.push(Record::new().compared(1.0, 1.0, 0.0));
        rep.records.push(Record::new().compared(1.0, 1.25, 0.1));
        rep.records.push(Record::new().skipped("band".into()));
        let s: serde_json::Value = serde_json::from_str(&rep.summary_json()).unwrap();
        assert_eq!(s["passed"], 1);
        assert_eq!(s["failed"], 1);
        assert_eq!(s["skipped"], 1);
        assert_eq!(s["max_error"], 0.25);
    }
}
