//! Tabular run artifacts and their CSV / JSON encodings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const VERSION: &str = concat!("qmbench ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Column {
    pub name: String,
    pub integer: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    /// Columns named `"n:int"` are written as integers.
    pub fn new(name: &str, columns: &[&str]) -> Self {
        let columns = columns
            .iter()
            .map(|c| match c.strip_suffix(":int") {
                Some(n) => Column { name: n.to_string(), integer: true },
                None => Column { name: c.to_string(), integer: false },
            })
            .collect();
        Self { name: name.to_string(), columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.columns.len(), "row width mismatch in table {}", self.name);
        self.rows.push(row);
    }
}

/// Named scalar compared against a tolerance in self-check scenarios.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Report {
    pub scenario: String,
    pub version: String,
    pub anchors: Vec<String>,
    pub params: BTreeMap<String, String>,
    pub summary: BTreeMap<String, f64>,
    pub notes: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub tables: Vec<Table>,
}

impl Report {
    pub fn summary(&mut self, key: &str, value: f64) {
        self.summary.insert(key.to_string(), value);
    }

    pub fn note(&mut self, key: &str, text: impl Into<String>) {
        self.notes.insert(key.to_string(), text.into());
    }

    /// Records `value ≤ tolerance`.
    pub fn check(&mut self, name: &str, value: f64, tolerance: f64) {
        self.checks.push(Check { name: name.to_string(), value, tolerance, passed: value <= tolerance });
    }

    pub fn table(&mut self, t: Table) {
        self.tables.push(t);
    }

    pub fn failed_checks(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    /// Every number must be finite so both encodings carry it exactly.
    pub fn ensure_finite(&self) -> Result<(), CliError> {
        let bad = self
            .summary
            .iter()
            .map(|(k, v)| (k.as_str(), *v))
            .chain(self.checks.iter().map(|c| (c.name.as_str(), c.value)))
            .chain(self.tables.iter().flat_map(|t| t.rows.iter().flatten().map(move |v| (t.name.as_str(), *v))))
            .find(|(_, v)| !v.is_finite());
        match bad {
            Some((what, v)) => Err(CliError::Model(qmbench::Error::UnderResolved(format!("non-finite value {v} in {what}")))),
            None => Ok(()),
        }
    }

    pub fn encode(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Comment header, then one block per table separated by two blank
    /// lines so gnuplot can address them with `index`.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {}", self.version);
        let _ = writeln!(out, "# scenario: {}", self.scenario);
        for a in &self.anchors {
            let _ = writeln!(out, "# anchor: {a}");
        }
        for (k, v) in &self.params {
            let _ = writeln!(out, "# param {k} = {v}");
        }
        for (k, v) in &self.summary {
            let _ = writeln!(out, "# summary {k} = {}", fmt_float(*v));
        }
        for (k, v) in &self.notes {
            let _ = writeln!(out, "# note {k}: {v}");
        }
        for c in &self.checks {
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "# check {} = {} tolerance {} {verdict}", c.name, fmt_float(c.value), fmt_float(c.tolerance));
        }
        for (i, t) in self.tables.iter().enumerate() {
            if i > 0 {
                out.push_str("\n\n");
            }
            let _ = writeln!(out, "# table {}", t.name);
            let header: Vec<&str> = t.columns.iter().map(|c| c.name.as_str()).collect();
            let _ = writeln!(out, "{}", header.join(","));
            for row in &t.rows {
                let cells: Vec<String> = row
                    .iter()
                    .zip(&t.columns)
                    .map(|(v, c)| if c.integer { format!("{}", *v as i64) } else { fmt_float(*v) })
                    .collect();
                let _ = writeln!(out, "{}", cells.join(","));
            }
        }
        out
    }
}

/// 17 significant digits, enough to recover every `f64` exactly.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// Numeric content of a CSV artifact: summary scalars and table rows.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CsvContent {
    pub summary: BTreeMap<String, f64>,
    pub tables: Vec<(String, Vec<String>, Vec<Vec<f64>>)>,
}

/// Reads back what [`Report::to_csv`] writes.
pub fn parse_csv(text: &str) -> Result<CsvContent, String> {
    let mut content = CsvContent::default();
    let mut lines = text.lines().peekable();
    while let Some(line) = lines.next() {
        if let Some(rest) = line.strip_prefix("# summary ") {
            let (k, v) = rest.split_once(" = ").ok_or_else(|| format!("bad summary line `{line}`"))?;
            content.summary.insert(k.to_string(), v.parse().map_err(|e| format!("{line}: {e}"))?);
        } else if let Some(name) = line.strip_prefix("# table ") {
            let header = lines.next().ok_or("table without header")?;
            let columns = header.split(',').map(str::to_string).collect();
            let mut rows = Vec::new();
            while let Some(row) = lines.peek() {
                if row.is_empty() || row.starts_with('#') {
                    break;
                }
                let parsed: Result<Vec<f64>, _> = row.split(',').map(str::parse::<f64>).collect();
                rows.push(parsed.map_err(|e| format!("{row}: {e}"))?);
                lines.next();
            }
            content.tables.push((name.to_string(), columns, rows));
        }
    }
    Ok(content)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report { scenario: "demo".into(), version: VERSION.into(), ..Default::default() };
        r.summary("gamma", 0.1 + 0.2);
        r.check("residual", 1e-13, 1e-12);
        let mut t = Table::new("data", &["n:int", "x"]);
        t.push(vec![1.0, std::f64::consts::PI]);
        t.push(vec![-2.0, 1e-310]);
        r.table(t);
        r.table(Table::new("empty", &["y"]));
        r
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let r = sample();
        let c = parse_csv(&r.to_csv()).unwrap();
        assert_eq!(c.summary, r.summary);
        assert_eq!(c.tables.len(), 2);
        assert_eq!(c.tables[0].2, r.tables[0].rows);
        assert_eq!(c.tables[0].1, vec!["n", "x"]);
        assert!(c.tables[1].2.is_empty());
    }

    #[test]
    fn json_round_trip_is_exact() {
        let r = sample();
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn non_finite_rejected() {
        let mut r = sample();
        r.summary("bad", f64::NAN);
        assert!(r.ensure_finite().is_err());
    }

    #[test]
    fn seventeen_digits() {
        assert_eq!(fmt_float(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt_float(0.1).parse::<f64>().unwrap(), 0.1);
    }
}
