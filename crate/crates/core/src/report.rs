//! Check records and scenario reports, with stable JSON and text renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::time::Duration;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::verdict::Mode;

/// Version of the JSON layout written by [`Report::to_json`].
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

/// One named check with its verdict and supporting numbers.
#[derive(Clone, Debug)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    pub mode: Mode,
    pub details: BTreeMap<String, Value>,
    pub duration: Option<Duration>,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, status: Status, mode: Mode) -> CheckRecord {
        CheckRecord { name: name.into(), status, mode, details: BTreeMap::new(), duration: None }
    }

    pub fn from_bool(name: impl Into<String>, ok: bool, mode: Mode) -> CheckRecord {
        CheckRecord::new(name, Status::from_bool(ok), mode)
    }

    /// A check that could not run, with the reason recorded.
    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> CheckRecord {
        CheckRecord::new(name, Status::Skipped, Mode::Exhaustive).with("reason", reason.into())
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> CheckRecord {
        self.details.insert(key.to_string(), value.into());
        self
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.details.insert(key.to_string(), value.into());
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    fn to_value(&self, timings: bool) -> Value {
        let mut v = json!({
            "name": self.name,
            "status": self.status,
            "mode": self.mode,
            "details": self.details,
        });
        if let (true, Some(d)) = (timings, self.duration) {
            v["duration_us"] = json!(d.as_micros() as u64);
        }
        v
    }
}

/// Counts over the checks of a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub scenario: String,
    pub seed: u64,
    pub trials: u64,
    pub depth: usize,
    pub checks: Vec<CheckRecord>,
    /// Wall time of the whole run.
    pub elapsed: Option<Duration>,
}

impl Report {
    pub fn summary(&self) -> Summary {
        let count = |s| self.checks.iter().filter(|c| c.status == s).count();
        Summary {
            total: self.checks.len(),
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            skipped: count(Status::Skipped),
        }
    }

    /// No failures and no skips.
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckRecord::passed)
    }

    /// Pretty JSON with sorted keys. Durations are left out unless
    /// `timings` is set, so equal runs give byte-identical output.
    pub fn to_json(&self, timings: bool) -> String {
        let mut v = json!({
            "schema_version": SCHEMA_VERSION,
            "tool_version": env!("CARGO_PKG_VERSION"),
            "scenario": {
                "name": self.scenario,
                "seed": self.seed,
                "trials": self.trials,
                "depth": self.depth,
            },
            "checks": self.checks.iter().map(|c| c.to_value(timings)).collect::<Vec<_>>(),
            "summary": self.summary(),
            "all_passed": self.all_passed(),
        });
        if let (true, Some(d)) = (timings, self.elapsed) {
            v["scenario"]["duration_us"] = json!(d.as_micros() as u64);
        }
        let mut s = serde_json::to_string_pretty(&v).expect("report values serialize");
        s.push('\n');
        s
    }

    /// One line per check, then a summary line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "scenario {} (seed {}, trials {}, depth {})",
            self.scenario, self.seed, self.trials, self.depth
        );
        for c in &self.checks {
            let details: Vec<String> = c.details.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let time = c.duration.map(|d| format!(" [{:.1} ms]", d.as_secs_f64() * 1e3)).unwrap_or_default();
            let _ = writeln!(
                s,
                "{:<7} {:<40} {:<10} {}{}",
                c.status.as_str(),
                c.name,
                c.mode.as_str(),
                details.join(" "),
                time
            );
        }
        let sum = self.summary();
        let _ =
            writeln!(s, "{} checks: {} passed, {} failed, {} skipped", sum.total, sum.passed, sum.failed, sum.skipped);
        s
    }

    pub fn write(&self, path: &Path, format: Format, timings: bool) -> Result<()> {
        let body = match format {
            Format::Json => self.to_json(timings),
            Format::Text => self.to_text(),
        };
        std::fs::write(path, body).map_err(|source| Error::Io { path: path.to_path_buf(), source })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut c = CheckRecord::from_bool("alpha", true, Mode::Proven).with("dim", 3).with("basis", "e12");
        c.duration = Some(Duration::from_millis(5));
        Report {
            scenario: "demo".into(),
            seed: 1,
            trials: 2,
            depth: 3,
            checks: vec![c, CheckRecord::skipped("beta", "dimension 9 above guard 6")],
            elapsed: Some(Duration::from_millis(7)),
        }
    }

    #[test]
    fn json_is_sorted_and_stable() {
        let r = sample();
        let a = r.to_json(false);
        assert_eq!(a, r.to_json(false));
        assert!(!a.contains("duration"));
        assert!(r.to_json(true).contains("duration_us"));
        let v: Value = serde_json::from_str(&a).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(v["summary"]["skipped"], 1);
        assert_eq!(v["all_passed"], false);
    }

    #[test]
    fn text_has_a_line_per_check() {
        let t = sample().to_text();
        assert!(t.lines().any(|l| l.starts_with("pass") && l.contains("alpha")));
        assert!(t.lines().any(|l| l.starts_with("skipped") && l.contains("beta")));
    }

    #[test]
    fn unwritable_path_is_reported() {
        let err = sample().write(Path::new("/nonexistent-dir/x/report.json"), Format::Json, false).unwrap_err();
        assert!(err.to_string().contains("/nonexistent-dir/x/report.json"));
    }
}
