use std::fmt::Write as _;
use std::time::Duration;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::Value;

/// One pass/fail condition of a run.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    /// `"at_most"`: pass when `value <= limit`; `"above"`: pass when `value > limit`.
    pub bound: &'static str,
    pub limit: f64,
    pub pass: bool,
}

impl Check {
    pub fn at_most(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Self {
            name: name.into(),
            value,
            bound: "at_most",
            limit,
            pass: value <= limit,
        }
    }

    pub fn above(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Self {
            name: name.into(),
            value,
            bound: "above",
            limit,
            pass: value > limit,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<(String, String)>,
    pub resolution: Option<usize>,
    pub node_count: Option<usize>,
    pub checks: Vec<Check>,
    pub payload: Value,
    pub status: &'static str,
    pub exit_code: i32,
    /// Human-readable body, rendered only in text output.
    #[serde(skip)]
    pub text: Vec<String>,
    /// Wall-clock time, shown in text output only so JSON stays reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            inputs: Vec::new(),
            resolution: None,
            node_count: None,
            checks: Vec::new(),
            payload: Value::Null,
            status: "pass",
            exit_code: 0,
            text: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn finish(&mut self) {
        if self.checks.iter().all(|c| c.pass) {
            self.status = "pass";
            self.exit_code = 0;
        } else {
            self.status = "fail";
            self.exit_code = 2;
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        for (k, v) in &self.inputs {
            let _ = writeln!(out, "{k}: {v}");
        }
        if let Some(r) = self.resolution {
            let _ = writeln!(out, "resolution: {r} ({} nodes)", self.node_count.unwrap_or(0));
        }
        for l in &self.text {
            let _ = writeln!(out, "{l}");
        }
        if !self.checks.is_empty() {
            let _ = writeln!(out, "checks:");
            let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
            for c in &self.checks {
                let op = if c.bound == "at_most" { "<=" } else { ">" };
                let _ = writeln!(
                    out,
                    "  {:width$}  {}  {op} {}  {}",
                    c.name,
                    sci(c.value),
                    sci(c.limit),
                    if c.pass { "ok" } else { "FAIL" },
                );
            }
        }
        let _ = writeln!(out, "status: {} (exit {})", self.status, self.exit_code);
        let _ = writeln!(out, "elapsed: {:.3} s", self.elapsed.as_secs_f64());
        out
    }
}

/// Scientific notation with three significant digits.
pub fn sci(x: f64) -> String {
    format!("{x:.2e}")
}

pub fn complex(z: Complex64) -> String {
    let re = if z.re.abs() < 5e-13 { 0.0 } else { z.re };
    let im = if z.im.abs() < 5e-13 { 0.0 } else { z.im };
    if im == 0.0 {
        format!("{re:.6}")
    } else {
        format!("{re:.6}{im:+.6}i")
    }
}

pub fn complex_row(values: &[Complex64]) -> String {
    values.iter().map(|z| complex(*z)).collect::<Vec<_>>().join("  ")
}

pub fn real_row(values: &[f64]) -> String {
    values.iter().map(|x| format!("{x:.6}")).collect::<Vec<_>>().join("  ")
}
