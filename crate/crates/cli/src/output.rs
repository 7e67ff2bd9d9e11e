//! The output envelope and its three renderings.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

pub type Row = Map<String, Value>;

#[derive(Debug, Clone, Serialize)]
pub struct OutputEnvelope {
    pub command: String,
    pub parameters: Map<String, Value>,
    pub format: Format,
    pub rows: Vec<Row>,
    /// Column order, fixed per command; kept so an empty table still has a header.
    #[serde(skip)]
    pub columns: Vec<String>,
}

impl OutputEnvelope {
    pub fn new(command: &str, format: Format, columns: &[&str]) -> Self {
        Self {
            command: command.to_string(),
            parameters: Map::new(),
            format,
            rows: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.parameters.insert(key.to_string(), value.into());
    }

    /// Append a row; `values` must follow the column order.
    pub fn push(&mut self, values: Vec<Value>) {
        debug_assert_eq!(values.len(), self.columns.len());
        self.rows
            .push(self.columns.iter().cloned().zip(values).collect());
    }

    pub fn render(&self) -> String {
        match self.format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("envelope serializes");
                s.push('\n');
                s
            }
            Format::Csv => self.render_csv(),
            Format::Pretty => self.render_pretty(),
        }
    }

    fn cells(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|row| {
                self.columns
                    .iter()
                    .map(|c| cell(row.get(c).unwrap_or(&Value::Null)))
                    .collect()
            })
            .collect()
    }

    fn render_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("write to memory");
        for record in self.cells() {
            w.write_record(&record).expect("write to memory");
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8 cells")
    }

    fn render_pretty(&self) -> String {
        let mut out = format!("# {}", self.command);
        for (k, v) in &self.parameters {
            let _ = write!(out, "  {k}={}", cell(v));
        }
        out.push('\n');
        let cells = self.cells();
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.chars().count()).collect();
        for row in &cells {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |fields: &[String]| {
            let mut s = String::new();
            for (i, (f, w)) in fields.iter().zip(&widths).enumerate() {
                if i > 0 {
                    s.push_str("  ");
                }
                let _ = write!(s, "{f:<w$}");
            }
            s.trim_end().to_string() + "\n"
        };
        out.push_str(&line(&self.columns));
        for row in &cells {
            out.push_str(&line(row));
        }
        out
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// `f64` as JSON; non-finite values become null.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub fn opt_num(x: Option<f64>) -> Value {
    x.map_or(Value::Null, num)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(format: Format) -> OutputEnvelope {
        let mut env = OutputEnvelope::new("demo", format, &["n", "value", "note"]);
        env.param("n_max", 1);
        env.push(vec![0.into(), "1/3".into(), Value::Null]);
        env.push(vec![1.into(), "2".into(), "a, b".into()]);
        env
    }

    #[test]
    fn csv_quotes_and_blanks() {
        assert_eq!(
            sample(Format::Csv).render(),
            "n,value,note\n0,1/3,\n1,2,\"a, b\"\n"
        );
    }

    #[test]
    fn pretty_aligns_columns() {
        let text = sample(Format::Pretty).render();
        assert_eq!(
            text,
            "# demo  n_max=1\nn  value  note\n0  1/3\n1  2      a, b\n"
        );
    }

    #[test]
    fn json_roundtrips() {
        let text = sample(Format::Json).render();
        let parsed: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&parsed).unwrap() + "\n", text);
        assert_eq!(parsed["format"], "json");
        assert_eq!(parsed["rows"][0]["value"], "1/3");
    }

    #[test]
    fn empty_table_keeps_header() {
        let env = OutputEnvelope::new("demo", Format::Csv, &["n", "x"]);
        assert_eq!(env.render(), "n,x\n");
    }

    #[test]
    fn non_finite_is_null() {
        assert_eq!(num(f64::NAN), Value::Null);
        assert_eq!(opt_num(Some(0.5)), serde_json::json!(0.5));
    }
}
