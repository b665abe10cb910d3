//! Report rendering. Every subcommand produces one flat, ordered list of
//! named fields; the same list renders either as `key=value` lines or as a
//! two-row CSV table. The first field is always `schema=1` so downstream
//! consumers can detect format changes.
//!
//! Values never depend on wall-clock time, thread count, or hash order, so
//! a report is byte-identical across reruns of the same invocation.

use apsum_core::exact::{format_rat, Rat};

/// An ordered list of `(name, value)` report fields.
pub struct Report {
    fields: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Report {
            fields: vec![("schema".to_string(), "1".to_string())],
        }
    }

    pub fn push(&mut self, name: impl Into<String>, value: impl Into<String>) {
        self.fields.push((name.into(), value.into()));
    }

    pub fn push_display(&mut self, name: impl Into<String>, value: impl std::fmt::Display) {
        self.push(name, value.to_string());
    }

    pub fn push_rat(&mut self, name: impl Into<String>, value: &Rat) {
        self.push(name, format_rat(value));
    }

    /// Floats are only ever derived summaries (regression slopes); six
    /// fixed decimals keep them readable and deterministic.
    pub fn push_f64(&mut self, name: impl Into<String>, value: f64) {
        self.push(name, format!("{value:.6}"));
    }

    /// Joins a sequence with `;`, the separator used for list-valued
    /// fields so that CSV cells never need quoting.
    pub fn joined<I, T>(items: I) -> String
    where
        I: IntoIterator<Item = T>,
        T: ToString,
    {
        let parts: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
        if parts.is_empty() {
            "none".to_string()
        } else {
            parts.join(";")
        }
    }

    pub fn render(&self, csv: bool) -> String {
        if csv {
            let names: Vec<&str> = self.fields.iter().map(|(n, _)| n.as_str()).collect();
            let values: Vec<String> = self
                .fields
                .iter()
                .map(|(_, v)| csv_cell(v))
                .collect();
            format!("{}\n{}", names.join(","), values.join(","))
        } else {
            let lines: Vec<String> = self
                .fields
                .iter()
                .map(|(n, v)| format!("{n}={v}"))
                .collect();
            lines.join("\n")
        }
    }
}

/// Field values avoid commas by construction; quoting is a safety net so
/// the CSV stays well-formed even if a future field carries free text.
fn csv_cell(value: &str) -> String {
    if value.contains(',') || value.contains('"') || value.contains('\n') {
        format!("\"{}\"", value.replace('"', "\"\""))
    } else {
        value.to_string()
    }
}
