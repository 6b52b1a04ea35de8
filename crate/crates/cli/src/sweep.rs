//! Declarative parameter grids.
//!
//! ```toml
//! [[grid]]
//! command = "complex theorem"
//! d = "0..=8"
//! primes = ["2,3", "5"]
//!
//! [[grid]]
//! command = "incidence chars"
//! n = 3
//! d = [2, 3]
//! e = "-1..=4"
//! prime = 2
//! dims-only = true
//! ```
//!
//! Integers are fixed values, arrays are enumerated, `"lo..=hi"` strings are
//! inclusive integer ranges, other strings are passed verbatim, booleans
//! toggle flags. Rows are the cartesian product over keys in sorted order,
//! last key varying fastest.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use clap::Parser;
use flagcoh::Exec;
use serde::Deserialize;
use serde_json::Value;

use crate::args::{Cli, Command};
use crate::verdict::Verdict;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepFile {
    grid: Vec<toml::Table>,
}

/// A fully expanded row: the command words plus `--key=value` flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub command: String,
    pub flags: Vec<(String, Option<String>)>,
}

impl Row {
    pub fn argv(&self) -> Vec<String> {
        let mut v = vec!["flagcoh".to_string()];
        v.extend(self.command.split_whitespace().map(str::to_string));
        for (k, x) in &self.flags {
            match x {
                Some(x) => v.push(format!("--{k}={x}")),
                None => v.push(format!("--{k}")),
            }
        }
        v
    }

    fn parameters(&self) -> BTreeMap<String, Value> {
        self.flags
            .iter()
            .map(|(k, x)| (k.replace('-', "_"), x.clone().map_or(Value::Bool(true), Value::String)))
            .collect()
    }
}

const RESERVED: [&str; 6] = ["json", "csv", "parallel", "timing", "quiet", "config"];

fn expand_value(key: &str, v: &toml::Value) -> Result<Vec<Option<Option<String>>>> {
    // outer None: flag absent; inner None: flag without value
    Ok(match v {
        toml::Value::Integer(i) => vec![Some(Some(i.to_string()))],
        toml::Value::Boolean(true) => vec![Some(None)],
        toml::Value::Boolean(false) => vec![None],
        toml::Value::String(s) => match parse_range(s)? {
            Some((lo, hi)) => (lo..=hi).map(|i| Some(Some(i.to_string()))).collect(),
            None => vec![Some(Some(s.clone()))],
        },
        toml::Value::Array(items) => {
            let mut out = Vec::new();
            for x in items {
                match x {
                    toml::Value::Array(_) => bail!("{key}: nested arrays are not allowed"),
                    other => out.extend(expand_value(key, other)?),
                }
            }
            out
        }
        other => bail!("{key}: unsupported value {other}"),
    })
}

fn parse_range(s: &str) -> Result<Option<(i64, i64)>> {
    let Some((lo, hi)) = s.split_once("..=") else {
        return Ok(None);
    };
    let (Ok(lo), Ok(hi)) = (lo.trim().parse::<i64>(), hi.trim().parse::<i64>()) else {
        return Ok(None);
    };
    if lo > hi {
        bail!("empty range {s}");
    }
    Ok(Some((lo, hi)))
}

/// Expands one `[[grid]]` table into rows in canonical order.
pub fn expand(table: &toml::Table) -> Result<Vec<Row>> {
    let command = table
        .get("command")
        .and_then(toml::Value::as_str)
        .ok_or_else(|| anyhow!("grid entry needs a string `command`"))?
        .to_string();
    let mut axes: Vec<(String, Vec<Option<Option<String>>>)> = Vec::new();
    let sorted: BTreeMap<&String, &toml::Value> = table.iter().filter(|(k, _)| *k != "command").collect();
    for (k, v) in sorted {
        if RESERVED.contains(&k.as_str()) {
            bail!("`{k}` cannot appear in a grid entry");
        }
        let values = expand_value(k, v)?;
        if values.is_empty() {
            bail!("{k}: no values");
        }
        axes.push((k.replace('_', "-"), values));
    }
    let mut rows = vec![Row {
        command: command.clone(),
        flags: Vec::new(),
    }];
    for (k, values) in &axes {
        rows = rows
            .into_iter()
            .flat_map(|r| {
                values.iter().map(move |x| {
                    let mut r = r.clone();
                    if let Some(x) = x {
                        r.flags.push((k.clone(), x.clone()));
                    }
                    r
                })
            })
            .collect();
    }
    Ok(rows)
}

pub fn load(path: &Path) -> Result<Vec<Row>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file: SweepFile = toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let mut rows = Vec::new();
    for t in &file.grid {
        rows.extend(expand(t)?);
    }
    Ok(rows)
}

fn parse_row(row: &Row) -> Result<Command> {
    let cli = Cli::try_parse_from(row.argv()).map_err(|e| anyhow!("{}", e.render().to_string().trim()))?;
    if matches!(cli.command, Command::Sweep { .. }) {
        bail!("sweep cannot be nested");
    }
    Ok(cli.command)
}

/// Runs every row; a row that fails becomes an `error` verdict.
pub fn run_sweep(path: &Path, exec: Exec, timing: bool) -> Result<Vec<Verdict>> {
    let rows = load(path)?;
    let results = flagcoh::exec::map_ordered(exec, &rows, |row| {
        let outcome = parse_row(row).and_then(|c| crate::timed(&c, exec, timing));
        outcome.unwrap_or_else(|e| vec![Verdict::error(&row.command, row.parameters(), format!("{e:#}"))])
    });
    Ok(results.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn last_key_fastest() {
        let t: toml::Table = toml::from_str("command = \"complex theorem\"\nd = \"1..=2\"\nprimes = [\"2\", \"3\"]").unwrap();
        let rows: Vec<Vec<String>> = expand(&t).unwrap().iter().map(Row::argv).collect();
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[0][3..], ["--d=1", "--primes=2"]);
        assert_eq!(rows[1][3..], ["--d=1", "--primes=3"]);
        assert_eq!(rows[2][3..], ["--d=2", "--primes=2"]);
    }

    #[test]
    fn booleans_and_negative_ranges() {
        let t: toml::Table =
            toml::from_str("command = \"incidence chars\"\ne = \"-1..=0\"\ndims-only = [true, false]").unwrap();
        let rows = expand(&t).unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[0].argv()[3..], ["--dims-only", "--e=-1"]);
        assert_eq!(rows[1].argv()[3..], ["--dims-only", "--e=0"]);
        assert_eq!(rows[2].argv()[3..], ["--e=-1"]);
    }

    #[test]
    fn reserved_keys_rejected() {
        let t: toml::Table = toml::from_str("command = \"char nim\"\njson = \"x\"").unwrap();
        assert!(expand(&t).is_err());
    }
}
