use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
}

/// Rows share one fixed column list; cells are rendered from JSON values.
pub struct Document {
    pub command: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Map<String, Value>>,
    /// Replaces the row table in JSON output (certificates).
    pub payload: Option<Value>,
}

impl Document {
    pub fn table(command: String, columns: Vec<&'static str>) -> Self {
        Document { command, columns, rows: Vec::new(), payload: None }
    }

    pub fn push<T: Serialize>(&mut self, row: &T) {
        match serde_json::to_value(row).expect("rows serialize") {
            Value::Object(m) => self.rows.push(m),
            other => panic!("row is not an object: {other}"),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.json(),
            Format::Csv => self.csv(),
            Format::Md => self.markdown(),
        }
    }

    fn json(&self) -> String {
        let payload = match &self.payload {
            Some(p) => p.clone(),
            None => Value::Array(self.rows.iter().cloned().map(Value::Object).collect()),
        };
        let doc = serde_json::json!({
            "engine_version": bredonkit::ENGINE_VERSION,
            "command": self.command,
            "timestamp": chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            "payload": payload,
        });
        serde_json::to_string_pretty(&doc).expect("documents serialize") + "\n"
    }

    fn cell(&self, row: &Map<String, Value>, col: &str) -> String {
        match row.get(col) {
            None | Some(Value::Null) => String::new(),
            Some(Value::String(s)) => s.clone(),
            Some(Value::Array(a)) => a.iter().map(|v| match v {
                Value::String(s) => s.clone(),
                v => v.to_string(),
            }).collect::<Vec<_>>().join("; "),
            Some(v) => v.to_string(),
        }
    }

    fn csv(&self) -> String {
        let quote = |s: String| {
            if s.contains([',', '"', '\n']) {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s
            }
        };
        let mut out = self.columns.join(",") + "\n";
        for r in &self.rows {
            let cells: Vec<String> = self.columns.iter().map(|c| quote(self.cell(r, c))).collect();
            out += &(cells.join(",") + "\n");
        }
        out
    }

    fn markdown(&self) -> String {
        let mut out = String::new();
        writeln!(out, "| {} |", self.columns.join(" | ")).unwrap();
        writeln!(out, "|{}", "---|".repeat(self.columns.len())).unwrap();
        for r in &self.rows {
            let cells: Vec<String> = self.columns.iter().map(|c| self.cell(r, c).replace('|', "\\|")).collect();
            writeln!(out, "| {} |", cells.join(" | ")).unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_commas() {
        let mut d = Document::table("t".into(), vec!["a", "b"]);
        d.push(&serde_json::json!({"a": "x,y", "b": 3}));
        assert_eq!(d.render(Format::Csv), "a,b\n\"x,y\",3\n");
        assert!(d.render(Format::Md).contains("| x,y | 3 |"));
    }
}
