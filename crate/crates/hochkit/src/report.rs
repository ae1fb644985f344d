//! Deterministic text and JSON reports.

use serde_json::{json, Map, Value};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: &str, columns: &[&str]) -> Self {
        Table { title: title.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    fn render(&self, out: &mut String) {
        out.push_str(&format!("\n{}\n", self.title));
        if self.rows.is_empty() {
            out.push_str("  (empty)\n");
            return;
        }
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.chars().count()).collect();
        for r in &self.rows {
            for (w, cell) in widths.iter_mut().zip(r) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let padded: Vec<String> =
                cells.iter().zip(&widths).map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
            format!("  {}\n", padded.join("  ").trim_end())
        };
        out.push_str(&line(&self.columns));
        for r in &self.rows {
            out.push_str(&line(r));
        }
    }

    fn to_json(&self) -> Value {
        json!({ "title": self.title, "columns": self.columns, "rows": self.rows })
    }
}

/// A command's output: echo, summary lines, tables and a verdict.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub summary: Vec<(String, String)>,
    pub tables: Vec<Table>,
    pub passed: bool,
    /// Payload that replaces the report on standard output (the report moves to standard error).
    pub emitted: Option<String>,
}

impl Report {
    pub fn new(command: String) -> Self {
        Report { command, passed: true, ..Default::default() }
    }

    pub fn note(&mut self, key: &str, value: impl ToString) {
        self.summary.push((key.into(), value.to_string()));
    }

    /// Records a check; the report fails if any check fails.
    pub fn check(&mut self, key: &str, ok: bool) {
        self.note(key, if ok { "pass" } else { "FAIL" });
        self.passed &= ok;
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("$ {}\n", self.command);
        let width = self.summary.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
        for (k, v) in &self.summary {
            out.push_str(&format!("{k}:{} {v}\n", " ".repeat(width - k.chars().count())));
        }
        for t in &self.tables {
            t.render(&mut out);
        }
        out.push_str(&format!("\nresult: {}\n", if self.passed { "PASS" } else { "FAIL" }));
        out
    }

    pub fn render_json(&self) -> String {
        let summary: Map<String, Value> = self.summary.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
        let v = json!({
            "command": self.command,
            "summary": summary,
            "tables": self.tables.iter().map(Table::to_json).collect::<Vec<_>>(),
            "result": if self.passed { "pass" } else { "fail" },
        });
        let mut s = serde_json::to_string_pretty(&v).expect("reports serialize");
        s.push('\n');
        s
    }
}
