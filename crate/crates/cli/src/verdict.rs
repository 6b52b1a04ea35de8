//! Verdict records and the three output sinks: terminal table, JSON, CSV.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::File;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Agree,
    Disagree,
    OutsideHypothesis,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Agree => "agree",
            Status::Disagree => "disagree",
            Status::OutsideHypothesis => "outside-hypothesis",
            Status::Error => "error",
        }
    }
}

/// One line of a dimension table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub series: String,
    /// A degree, or a space-separated multidegree.
    pub index: String,
    pub dimension: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub subject: String,
    pub parameters: BTreeMap<String, Value>,
    pub status: Status,
    pub summary: String,
    pub payload: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
    #[serde(skip)]
    pub table: Vec<TableRow>,
}

impl Verdict {
    pub fn new(subject: &str, parameters: BTreeMap<String, Value>) -> Self {
        Verdict {
            subject: subject.to_string(),
            parameters,
            status: Status::Agree,
            summary: String::new(),
            payload: Value::Null,
            witness: None,
            timing_ms: None,
            table: Vec::new(),
        }
    }

    /// Sets the status from a comparison; a failed one needs a witness.
    pub fn compared(mut self, agree: bool, witness: Option<Value>) -> Self {
        if agree {
            self.status = Status::Agree;
        } else {
            self.status = Status::Disagree;
            self.witness = Some(witness.unwrap_or(Value::String("values differ".into())));
        }
        self
    }

    pub fn error(subject: &str, parameters: BTreeMap<String, Value>, message: String) -> Self {
        let mut v = Verdict::new(subject, parameters);
        v.status = Status::Error;
        v.summary = message;
        v
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub version: &'static str,
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub verdicts: Vec<Verdict>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.verdicts.iter().any(|v| v.status == Status::Error) {
            1
        } else if self.verdicts.iter().any(|v| v.status == Status::Disagree) {
            2
        } else {
            0
        }
    }

    pub fn write_table(&self, out: &mut impl Write) -> std::io::Result<()> {
        for v in &self.verdicts {
            let params: Vec<String> = v.parameters.iter().map(|(k, x)| format!("{k}={}", plain(x))).collect();
            writeln!(out, "{:<18} {:<28} {}", v.status.as_str(), v.subject, params.join(" "))?;
            if !v.summary.is_empty() {
                for line in v.summary.lines() {
                    writeln!(out, "    {line}")?;
                }
            }
            if let Some(w) = &v.witness {
                writeln!(out, "    witness: {w}")?;
            }
            if let Some(t) = v.timing_ms {
                writeln!(out, "    time: {t:.3} ms")?;
            }
        }
        Ok(())
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        let mut f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
        serde_json::to_writer_pretty(&mut f, self)?;
        writeln!(f)?;
        Ok(())
    }

    /// Columns: every parameter name seen (sorted), then subject, series,
    /// index, dimension.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let keys: BTreeSet<&String> = self.verdicts.iter().flat_map(|v| v.parameters.keys()).collect();
        let mut w = csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
        let mut header: Vec<&str> = keys.iter().map(|k| k.as_str()).collect();
        header.extend(["subject", "series", "index", "dimension"]);
        w.write_record(&header)?;
        for v in &self.verdicts {
            for row in &v.table {
                let mut rec: Vec<String> = keys
                    .iter()
                    .map(|k| v.parameters.get(*k).map(plain).unwrap_or_default())
                    .collect();
                rec.extend([v.subject.clone(), row.series.clone(), row.index.clone(), row.dimension.clone()]);
                w.write_record(&rec)?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
