use std::fmt::Write as _;

use ordunit::PropertyReport;
use serde::Serialize;
use serde_json::Value;

use crate::args::Format;

/// One named verdict in a report.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub summary: String,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub details: Value,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, summary: impl Into<String>) -> Self {
        Self { name: name.into(), passed, summary: summary.into(), details: Value::Null }
    }

    pub fn with_details(mut self, details: impl Serialize) -> Self {
        self.details = serde_json::to_value(details).expect("serializable");
        self
    }

    pub fn from_property(rep: &PropertyReport) -> Self {
        let summary = format!("{} samples, worst defect {:.3e}", rep.samples, rep.worst_defect);
        let check = Self::new(rep.property.clone(), rep.passed, summary);
        match &rep.witness {
            Some(w) => check.with_details(w),
            None => check,
        }
    }
}

/// Output of one command. Exit status 0 iff every check passed.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub samples: usize,
    pub passed: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub payload: Value,
    /// Wall-clock time, shown in text output only so JSON stays reproducible.
    #[serde(skip)]
    pub elapsed_ms: f64,
}

impl Report {
    pub fn new(command: &str, seed: u64, samples: usize) -> Self {
        Self {
            command: command.into(),
            seed,
            samples,
            passed: true,
            checks: Vec::new(),
            payload: Value::Null,
            elapsed_ms: 0.0,
        }
    }

    pub fn push(&mut self, check: Check) {
        self.passed &= check.passed;
        self.checks.push(check);
    }

    pub fn set_payload(&mut self, payload: impl Serialize) {
        self.payload = serde_json::to_value(payload).expect("serializable");
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("serializable") + "\n",
            Format::Text => self.render_text(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "ordunit {} (seed {}, samples {})", self.command, self.seed, self.samples);
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "[{tag}] {}: {}", c.name, c.summary);
            if !c.details.is_null() && (!c.passed || self.command == "gallery") {
                if let Ok(w) = serde_json::from_value::<WitnessView>(c.details.clone()) {
                    let _ = writeln!(out, "       witness inputs {:?} values {:?}", w.inputs, w.values);
                    if let Some(n) = w.note {
                        let _ = writeln!(out, "       note: {n}");
                    }
                } else {
                    let _ = writeln!(out, "       {}", c.details);
                }
            }
        }
        if !self.payload.is_null() {
            let body = serde_json::to_string_pretty(&self.payload).expect("serializable");
            for line in body.lines() {
                let _ = writeln!(out, "  {line}");
            }
        }
        let verdict = if self.passed { "ok" } else { "violation" };
        let _ = writeln!(out, "result: {verdict} ({:.1} ms)", self.elapsed_ms);
        out
    }
}

#[derive(serde::Deserialize)]
struct WitnessView {
    inputs: Vec<Vec<f64>>,
    values: Vec<f64>,
    note: Option<String>,
}
