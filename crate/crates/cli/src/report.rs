//! Report values and their table, CSV and JSON renderings.

use std::fmt::Write as _;
use std::io::Write;

use serde_json::{json, Map, Value as Json};

use crate::error::{CliError, EXIT_OK, EXIT_VERDICT};
use crate::scenario::{Mode, Scenario};

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Int(u64),
    Bool(bool),
    Text(String),
    List(Vec<f64>),
    Missing,
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Num(v)
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(v as u64)
    }
}

impl From<u32> for Value {
    fn from(v: u32) -> Self {
        Value::Int(v.into())
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_string())
    }
}

impl From<Vec<f64>> for Value {
    fn from(v: Vec<f64>) -> Self {
        Value::List(v)
    }
}

impl From<Option<f64>> for Value {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Value::Missing, Value::Num)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// The command computes values but checks nothing.
    Informational,
}

impl Verdict {
    pub fn from_flag(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Informational => "none",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: &'static str,
    pub mode: Mode,
    pub scenario: Scenario,
    /// Swept parameter and its value for this row.
    pub swept: Option<(String, f64)>,
    pub fields: Vec<(&'static str, Value)>,
    pub verdict: Verdict,
}

impl Report {
    pub fn new(command: &'static str, scenario: &Scenario) -> Self {
        Report {
            command,
            mode: scenario.mode,
            scenario: scenario.clone(),
            swept: None,
            fields: Vec::new(),
            verdict: Verdict::Informational,
        }
    }

    pub fn push(&mut self, key: &'static str, value: impl Into<Value>) -> &mut Self {
        self.fields.push((key, value.into()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.iter().find(|(k, _)| *k == key).map(|(_, v)| v)
    }

    pub fn num(&self, key: &str) -> Option<f64> {
        match self.get(key) {
            Some(Value::Num(v)) => Some(*v),
            _ => None,
        }
    }

    /// Column names and cells with lists flattened to `name_1 .. name_n`.
    fn columns(&self, number: impl Fn(f64) -> String) -> Vec<(String, String)> {
        let mut cols = Vec::new();
        if let Some((name, v)) = &self.swept {
            cols.push((format!("sweep_{name}"), number(*v)));
        }
        cols.push(("command".into(), self.command.into()));
        cols.push(("mode".into(), self.mode.label().into()));
        for (key, value) in &self.fields {
            match value {
                Value::List(items) => {
                    for (i, v) in items.iter().enumerate() {
                        cols.push((format!("{key}_{}", i + 1), number(*v)));
                    }
                }
                Value::Num(v) => cols.push((key.to_string(), number(*v))),
                Value::Int(v) => cols.push((key.to_string(), v.to_string())),
                Value::Bool(v) => cols.push((key.to_string(), v.to_string())),
                Value::Text(v) => cols.push((key.to_string(), v.clone())),
                Value::Missing => cols.push((key.to_string(), String::new())),
            }
        }
        cols.push(("verdict".into(), self.verdict.label().into()));
        cols
    }

    fn to_json(&self) -> Json {
        let mut results = Map::new();
        for (key, value) in &self.fields {
            let v = match value {
                Value::Num(v) => json!(v),
                Value::Int(v) => json!(v),
                Value::Bool(v) => json!(v),
                Value::Text(v) => json!(v),
                Value::List(v) => json!(v),
                Value::Missing => Json::Null,
            };
            results.insert(key.to_string(), v);
        }
        let mut out = Map::new();
        out.insert("command".into(), json!(self.command));
        out.insert("mode".into(), json!(self.mode.label()));
        if let Some((name, v)) = &self.swept {
            out.insert("swept".into(), json!({ "param": name, "value": v }));
        }
        out.insert("scenario".into(), serde_json::to_value(&self.scenario).expect("scenario serializes"));
        out.insert("results".into(), Json::Object(results));
        out.insert("verdict".into(), json!(self.verdict.label()));
        Json::Object(out)
    }
}

/// Exit status for a batch: any failed verdict gives [`EXIT_VERDICT`].
pub fn exit_status(reports: &[Report]) -> i32 {
    if reports.iter().any(|r| r.verdict == Verdict::Fail) {
        EXIT_VERDICT
    } else {
        EXIT_OK
    }
}

/// 17 significant digits, so values round-trip through the text.
fn csv_number(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

pub fn render(reports: &[Report], format: Format) -> Result<String, CliError> {
    match format {
        Format::Table => Ok(render_table(reports)),
        Format::Csv => render_csv(reports),
        Format::Json => {
            let doc = match reports {
                [one] => one.to_json(),
                many => Json::Array(many.iter().map(Report::to_json).collect()),
            };
            Ok(serde_json::to_string_pretty(&doc).expect("report serializes") + "\n")
        }
    }
}

fn table_number(v: f64) -> String {
    if v != 0.0 && (v.abs() < 1e-4 || v.abs() >= 1e9) {
        format!("{v:e}")
    } else {
        v.to_string()
    }
}

fn render_table(reports: &[Report]) -> String {
    let mut out = String::new();
    if let [one] = reports {
        let cols = one.columns(table_number);
        let width = cols.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in cols {
            let _ = writeln!(out, "{k:<width$}  {v}");
        }
        return out;
    }
    let rows: Vec<Vec<(String, String)>> = reports.iter().map(|r| r.columns(|v| format!("{v:.10}"))).collect();
    let Some(first) = rows.first() else { return out };
    let widths: Vec<usize> = (0..first.len())
        .map(|j| rows.iter().filter_map(|r| r.get(j)).map(|c| c.1.len()).max().unwrap_or(0).max(first[j].0.len()))
        .collect();
    let line =
        |cells: Vec<&str>| cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ");
    let _ = writeln!(out, "{}", line(first.iter().map(|c| c.0.as_str()).collect()));
    for r in &rows {
        let _ = writeln!(out, "{}", line(r.iter().map(|c| c.1.as_str()).collect()));
    }
    out
}

fn render_csv(reports: &[Report]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Option<Vec<String>> = None;
    for r in reports {
        let cols = r.columns(csv_number);
        let names: Vec<String> = cols.iter().map(|c| c.0.clone()).collect();
        match &header {
            None => {
                w.write_record(&names).map_err(|e| CliError::Output(e.to_string()))?;
                header = Some(names);
            }
            Some(h) if *h != names => {
                return Err(CliError::Output("rows have different columns; cannot emit one CSV table".into()));
            }
            Some(_) => {}
        }
        w.write_record(cols.iter().map(|c| c.1.as_str())).map_err(|e| CliError::Output(e.to_string()))?;
    }
    w.flush().map_err(|e| CliError::Output(e.to_string()))?;
    let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn write_out(text: &str) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| CliError::Output(e.to_string()))
}
