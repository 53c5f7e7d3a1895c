//! Tables rendered as aligned text, CSV or JSON.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use anyonic_entropy::io::fmt_real;
use anyonic_entropy::{Error, Result};
use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Clone, Debug)]
pub enum Cell {
    Text(String),
    Int(i64),
    /// An entropy, rescaled by `--bits`.
    Entropy(f64),
    Real(f64),
    Flag(bool),
}

impl Cell {
    fn text(&self, bits: bool) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(i) => i.to_string(),
            Cell::Entropy(x) => format!("{:.12}", scale(*x, bits) + 0.0),
            Cell::Real(x) => format!("{:.12}", x + 0.0),
            Cell::Flag(b) => b.to_string(),
        }
    }

    fn csv(&self, bits: bool) -> String {
        match self {
            Cell::Entropy(x) => fmt_real(scale(*x, bits)),
            Cell::Real(x) => fmt_real(*x),
            other => other.text(bits),
        }
    }

    fn json(&self, bits: bool) -> Value {
        match self {
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Int(i) => Value::from(*i),
            Cell::Entropy(x) => Value::from(scale(*x, bits)),
            Cell::Real(x) => Value::from(*x),
            Cell::Flag(b) => Value::Bool(*b),
        }
    }
}

pub fn scale(x: f64, bits: bool) -> f64 {
    if bits {
        x / std::f64::consts::LN_2
    } else {
        x
    }
}

pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// A two-column `quantity, value` table.
    pub fn pairs(items: Vec<(&str, Cell)>) -> Self {
        let mut t = Table::new(&["quantity", "value"]);
        for (k, v) in items {
            t.push(vec![Cell::Text(k.to_string()), v]);
        }
        t
    }
}

pub struct Output {
    pub format: Format,
    pub out: Option<PathBuf>,
    pub bits: bool,
}

impl Output {
    pub fn write_text(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(p) => fs::write(p, text)?,
            None => io::stdout().write_all(text.as_bytes())?,
        }
        Ok(())
    }

    pub fn emit(&self, t: &Table) -> Result<()> {
        let text = match self.format {
            Format::Table => render_table(t, self.bits),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let err = |e: csv::Error| Error::Io(io::Error::other(e));
                w.write_record(&t.columns).map_err(err)?;
                for r in &t.rows {
                    w.write_record(r.iter().map(|c| c.csv(self.bits))).map_err(err)?;
                }
                String::from_utf8(w.into_inner().map_err(|e| Error::Io(io::Error::other(e.to_string())))?)
                    .expect("csv output is utf-8")
            }
            Format::Json => {
                let rows: Vec<Value> = t
                    .rows
                    .iter()
                    .map(|r| {
                        let obj: Map<String, Value> =
                            t.columns.iter().cloned().zip(r.iter().map(|c| c.json(self.bits))).collect();
                        Value::Object(obj)
                    })
                    .collect();
                let mut s = serde_json::to_string_pretty(&rows)?;
                s.push('\n');
                s
            }
        };
        self.write_text(&text)
    }
}

fn render_table(t: &Table, bits: bool) -> String {
    let cells: Vec<Vec<String>> = t.rows.iter().map(|r| r.iter().map(|c| c.text(bits)).collect()).collect();
    let mut width: Vec<usize> = t.columns.iter().map(|c| c.chars().count()).collect();
    for r in &cells {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |r: &[String]| {
        let parts: Vec<String> = r.iter().zip(&width).map(|(c, &w)| format!("{c:<w$}")).collect();
        parts.join("  ").trim_end().to_string() + "\n"
    };
    let mut s = line(&t.columns);
    s.push_str(&line(&width.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>()));
    for r in &cells {
        s.push_str(&line(r));
    }
    s
}
