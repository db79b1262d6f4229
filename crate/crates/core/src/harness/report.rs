//! Run reports. The machine format is one JSON object per line and carries
//! no timing, so equal seeds give byte-identical output.

use std::fmt::Write;
use std::time::Duration;

use serde::Serialize;

use super::SuiteOutput;
use crate::check::{CheckOutcome, Status};
use crate::expr::PolicyKind;
use crate::spinor::ConstraintSolution;

#[derive(Debug)]
pub struct Report {
    pub scenario: String,
    pub seed: u64,
    pub checks: Vec<CheckOutcome>,
    pub solution: Option<ConstraintSolution>,
    /// Wall time per suite, in run order.
    pub timing: Vec<(String, Duration)>,
}

#[derive(Serialize)]
struct Record<'a> {
    check: &'a str,
    status: Status,
    max_residual: f64,
    seed: u64,
    policy: Option<PolicyKind>,
    detail: &'a str,
}

impl Report {
    pub fn new(scenario: String, seed: u64) -> Self {
        Report { scenario, seed, checks: Vec::new(), solution: None, timing: Vec::new() }
    }

    pub(super) fn push_suite(&mut self, name: &str, out: SuiteOutput, elapsed: Duration) {
        self.checks.extend(out.checks);
        if out.solution.is_some() {
            self.solution = out.solution;
        }
        self.timing.push((name.to_string(), elapsed));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.check == name)
    }

    /// One JSON record per check, newline terminated.
    pub fn machine(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let rec = Record {
                check: &c.check,
                status: c.status,
                max_residual: c.max_residual,
                seed: self.seed,
                policy: c.policy,
                detail: &c.detail,
            };
            out.push_str(&serde_json::to_string(&rec).expect("serializable record"));
            out.push('\n');
        }
        out
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "scenario {} (seed {})", self.scenario, self.seed).unwrap();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skip => "skip",
            };
            let policy = match c.policy {
                Some(PolicyKind::Canonical) => "canonical",
                Some(PolicyKind::Sampled) => "sampled",
                None => "-",
            };
            write!(out, "  [{tag}] {:<40} {policy:<9} residual {:.3e}", c.check, c.max_residual).unwrap();
            if !c.detail.is_empty() {
                write!(out, "  {}", c.detail).unwrap();
            }
            out.push('\n');
        }
        if let Some(s) = &self.solution {
            out.push_str("constraint solution\n");
            for line in s.to_string().lines() {
                writeln!(out, "  {line}").unwrap();
            }
        }
        let timing: Vec<String> =
            self.timing.iter().map(|(n, d)| format!("{n} {:.1} ms", d.as_secs_f64() * 1e3)).collect();
        writeln!(out, "timing: {}", timing.join(", ")).unwrap();
        writeln!(
            out,
            "{} passed, {} failed, {} skipped",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skip)
        )
        .unwrap();
        out
    }
}
