//! Scenario-driven verification runs: a registry of named suites, scenario
//! loading, and text / line-delimited JSON reports.

mod builtin;
mod report;
mod scenario;
mod suites;

use std::time::{Duration, Instant};

use thiserror::Error;

pub use builtin::{builtin_scenario, BuiltinScenario, BUILTIN_SCENARIOS};
pub use report::Report;
pub use scenario::{default_spinor, CouplingMode, Scenario};
pub use suites::{
    BianchiSuite, CliffordSuite, ClosedFormSuite, ConstraintsSuite, CovarianceSuite, DiracSuite, GeometrySuite,
    HermiticitySuite, HodgeSuite, MassSuite,
};

use crate::check::{CheckContext, CheckOutcome};
use crate::expr::ExprError;
use crate::geometry::{Geometry, GeometryError, GeometryInvariants};
use crate::spinor::{ConstraintSolution, SpinorError};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{}{message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    Invalid { line: Option<usize>, message: String },
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Spinor(#[from] SpinorError),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

/// Suites run in stage order: algebra, then geometry, then spinor checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    Algebra,
    Geometry,
    Spinor,
}

/// What a suite sees.
pub struct SuiteInput<'a> {
    pub scenario: &'a Scenario,
    pub invariants: &'a GeometryInvariants,
    pub ctx: CheckContext,
}

impl SuiteInput<'_> {
    pub fn geometry(&self) -> &Geometry {
        &self.scenario.geometry
    }
}

#[derive(Debug, Default)]
pub struct SuiteOutput {
    pub checks: Vec<CheckOutcome>,
    pub solution: Option<ConstraintSolution>,
}

impl SuiteOutput {
    pub fn checks(checks: Vec<CheckOutcome>) -> Self {
        SuiteOutput { checks, solution: None }
    }
}

pub trait Suite: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn stage(&self) -> Stage;
    fn run(&self, input: &SuiteInput<'_>) -> Result<SuiteOutput, HarnessError>;
}

/// Suites by name, in registration order.
pub struct Registry {
    suites: Vec<Box<dyn Suite>>,
}

impl Registry {
    pub fn new() -> Self {
        Registry { suites: Vec::new() }
    }

    /// Every built-in suite.
    pub fn builtin() -> Self {
        let mut r = Registry::new();
        r.register(Box::new(CliffordSuite));
        r.register(Box::new(GeometrySuite));
        r.register(Box::new(BianchiSuite));
        r.register(Box::new(HodgeSuite));
        r.register(Box::new(DiracSuite));
        r.register(Box::new(ClosedFormSuite));
        r.register(Box::new(HermiticitySuite));
        r.register(Box::new(CovarianceSuite));
        r.register(Box::new(MassSuite));
        r.register(Box::new(ConstraintsSuite));
        r
    }

    /// Replaces any suite already registered under the same name.
    pub fn register(&mut self, suite: Box<dyn Suite>) {
        self.suites.retain(|s| s.name() != suite.name());
        self.suites.push(suite);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Suite> {
        self.suites.iter().find(|s| s.name() == name).map(|s| s.as_ref())
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Suite> {
        self.suites.iter().map(|s| s.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.suites.iter().map(|s| s.name()).collect()
    }

    /// Runs the named suites (all of them if `names` is empty) in stage
    /// order on one scenario.
    pub fn run(&self, scenario: &Scenario, names: &[String]) -> Result<Report, HarnessError> {
        let mut selected: Vec<&dyn Suite> = if names.is_empty() {
            self.iter().collect()
        } else {
            let mut v = Vec::new();
            for n in names {
                let s = self.get(n).ok_or_else(|| HarnessError::UnknownSuite(n.clone()))?;
                if !v.iter().any(|x: &&dyn Suite| x.name() == s.name()) {
                    v.push(s);
                }
            }
            v
        };
        selected.sort_by_key(|s| s.stage());

        let invariants = scenario.geometry.invariants();
        let mut report = Report::new(scenario.name.clone(), scenario.seed);
        for suite in selected {
            let input = SuiteInput {
                scenario,
                invariants: &invariants,
                ctx: CheckContext::new(scenario.chart().clone(), scenario.seed),
            };
            let start = Instant::now();
            let out = suite.run(&input)?;
            let elapsed: Duration = start.elapsed();
            report.push_suite(suite.name(), out, elapsed);
        }
        Ok(report)
    }
}

impl Default for Registry {
    fn default() -> Self {
        Registry::new()
    }
}

/// Loads a scenario from a built-in name or a file path.
pub fn load_scenario(source: &str, seed: Option<u64>) -> Result<Scenario, HarnessError> {
    let text = match builtin_scenario(source) {
        Some(b) => b.text.to_string(),
        None => {
            std::fs::read_to_string(source).map_err(|e| HarnessError::Io { path: source.to_string(), source: e })?
        }
    };
    Scenario::from_toml(&text, seed)
}
