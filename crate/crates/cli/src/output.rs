use std::io::Write;

use cstar_core::Complex64;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

/// Collects report lines; structured records are line-delimited JSON.
pub struct Report {
    format: Format,
    lines: Vec<String>,
}

impl Report {
    pub fn new(format: Format) -> Self {
        Self { format, lines: Vec::new() }
    }

    pub fn emit(&mut self, text: impl FnOnce() -> String, record: impl FnOnce() -> Value) {
        let line = match self.format {
            Format::Text => text(),
            Format::Structured => record().to_string(),
        };
        self.lines.push(line);
    }

    /// Writes the report; a closed pipe ends output quietly.
    pub fn print(&self) {
        let mut out = std::io::stdout().lock();
        for line in &self.lines {
            if writeln!(out, "{line}").is_err() {
                return;
            }
        }
        let _ = out.flush();
    }
}

fn real(x: f64) -> String {
    let s = format!("{x:.10}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

/// Human-readable complex number, rounded to ten decimals.
pub fn complex(z: Complex64) -> String {
    let (re, im) = (real(z.re), real(z.im));
    match (re.as_str(), im.as_str()) {
        (_, "0") => re,
        ("0", _) => format!("{im}i"),
        _ if im.starts_with('-') => format!("{re}-{}i", &im[1..]),
        _ => format!("{re}+{im}i"),
    }
}

pub fn complex_set(points: &[Complex64]) -> String {
    let parts: Vec<String> = points.iter().map(|&z| complex(z)).collect();
    format!("{{{}}}", parts.join(", "))
}

pub fn pair(z: Complex64) -> Value {
    json!([z.re, z.im])
}

pub fn pairs(points: &[Complex64]) -> Value {
    Value::Array(points.iter().map(|&z| pair(z)).collect())
}
