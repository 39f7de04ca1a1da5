use std::fmt::Write as _;
use std::time::Duration;

use anyhow::Result;
use clap::ValueEnum;
use hypergroup_core::rational::format_significant;
use hypergroup_core::Rational;
use serde_json::{Map, Value as Json};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Csv,
    JsonLines,
}

#[derive(Clone, Debug)]
pub enum Value {
    Exact(Rational),
    /// A real number with no exact rational form.
    Approx(f64),
    Text(String),
    Int(u64),
    Bool(bool),
}

impl Value {
    pub fn text(s: impl Into<String>) -> Self {
        Value::Text(s.into())
    }

    fn plain(&self, digits: usize) -> String {
        match self {
            Value::Exact(q) => q.to_string(),
            Value::Approx(v) => format_significant(*v, digits),
            Value::Text(s) => s.clone(),
            Value::Int(n) => n.to_string(),
            Value::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Json {
        match self {
            Value::Exact(q) => Json::String(q.to_string()),
            Value::Approx(v) => Json::from(*v),
            Value::Text(s) => Json::String(s.clone()),
            Value::Int(n) => Json::from(*n),
            Value::Bool(b) => Json::Bool(*b),
        }
    }
}

impl From<Rational> for Value {
    fn from(q: Rational) -> Self {
        Value::Exact(q)
    }
}

impl From<&Rational> for Value {
    fn from(q: &Rational) -> Self {
        Value::Exact(q.clone())
    }
}

impl From<usize> for Value {
    fn from(n: usize) -> Self {
        Value::Int(n as u64)
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_string())
    }
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Column headers with a `<name>_dec` companion after every exact column.
    fn expanded_columns(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, c) in self.columns.iter().enumerate() {
            out.push(c.clone());
            if self.rows.iter().any(|r| matches!(r[i], Value::Exact(_))) {
                out.push(format!("{c}_dec"));
            }
        }
        out
    }

    fn expanded_rows(&self, digits: usize) -> Vec<Vec<(String, Json)>> {
        let exact: Vec<bool> =
            (0..self.columns.len()).map(|i| self.rows.iter().any(|r| matches!(r[i], Value::Exact(_)))).collect();
        self.rows
            .iter()
            .map(|row| {
                let mut cells = Vec::new();
                for (i, v) in row.iter().enumerate() {
                    cells.push((v.plain(digits), v.json()));
                    if exact[i] {
                        let dec = match v {
                            Value::Exact(q) => q.to_decimal(digits),
                            _ => String::new(),
                        };
                        cells.push((dec.clone(), Json::String(dec)));
                    }
                }
                cells
            })
            .collect()
    }
}

/// Everything a command prints: invocation echo, hypergroup descriptor,
/// key/value results and an optional table.
#[derive(Clone, Debug)]
pub struct Record {
    pub command: String,
    pub hypergroup: String,
    pub fields: Vec<(String, Value)>,
    pub table: Option<Table>,
    pub elapsed: Option<Duration>,
}

impl Record {
    pub fn new(command: String, hypergroup: impl Into<String>) -> Self {
        Record { command, hypergroup: hypergroup.into(), fields: Vec::new(), table: None, elapsed: None }
    }

    pub fn field(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.push((key.to_string(), value.into()));
        self
    }

    pub fn render(&self, format: Format, digits: usize) -> Result<String> {
        match format {
            Format::Human => Ok(self.human(digits)),
            Format::Csv => self.csv(digits),
            Format::JsonLines => self.json_lines(digits),
        }
    }

    fn human(&self, digits: usize) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "hypergroup: {}", self.hypergroup);
        for (k, v) in &self.fields {
            match v {
                Value::Exact(q) => {
                    let _ = writeln!(out, "{k}: {q} ({})", q.to_decimal(digits));
                }
                _ => {
                    let _ = writeln!(out, "{k}: {}", v.plain(digits));
                }
            }
        }
        if let Some(table) = &self.table {
            let header = table.expanded_columns();
            let rows: Vec<Vec<String>> =
                table.expanded_rows(digits).into_iter().map(|r| r.into_iter().map(|(s, _)| s).collect()).collect();
            let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
            for row in &rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.chars().count());
                }
            }
            let line = |cells: &[String]| {
                let padded: Vec<String> =
                    cells.iter().zip(&widths).map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
                padded.join("  ").trim_end().to_string()
            };
            let _ = writeln!(out, "{}", line(&header));
            for row in &rows {
                let _ = writeln!(out, "{}", line(row));
            }
        }
        if let Some(t) = self.elapsed {
            let _ = writeln!(out, "elapsed: {:.3}s", t.as_secs_f64());
        }
        out
    }

    fn csv(&self, digits: usize) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        match &self.table {
            Some(table) => {
                w.write_record(table.expanded_columns())?;
                for row in table.expanded_rows(digits) {
                    w.write_record(row.into_iter().map(|(s, _)| s))?;
                }
            }
            None => {
                w.write_record(["field", "value", "value_dec"])?;
                w.write_record(["hypergroup", self.hypergroup.as_str(), ""])?;
                for (k, v) in &self.fields {
                    let dec = match v {
                        Value::Exact(q) => q.to_decimal(digits),
                        _ => String::new(),
                    };
                    w.write_record([k.as_str(), &v.plain(digits), &dec])?;
                }
            }
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    fn json_lines(&self, digits: usize) -> Result<String> {
        let mut header = Map::new();
        header.insert("command".into(), Json::String(self.command.clone()));
        header.insert("hypergroup".into(), Json::String(self.hypergroup.clone()));
        for (k, v) in &self.fields {
            header.insert(k.clone(), v.json());
            if let Value::Exact(q) = v {
                header.insert(format!("{k}_dec"), Json::String(q.to_decimal(digits)));
            }
        }
        if let Some(t) = self.elapsed {
            header.insert("elapsed_s".into(), Json::from(t.as_secs_f64()));
        }
        let mut out = serde_json::to_string(&Json::Object(header))?;
        out.push('\n');
        if let Some(table) = &self.table {
            let columns = table.expanded_columns();
            for row in table.expanded_rows(digits) {
                let obj: Map<String, Json> = columns.iter().cloned().zip(row.into_iter().map(|(_, j)| j)).collect();
                out.push_str(&serde_json::to_string(&Json::Object(obj))?);
                out.push('\n');
            }
        }
        Ok(out)
    }
}
