use madirac::check::CheckOutcome;
use madirac::check::Status;
use madirac::harness::{
    load_scenario, HarnessError, Registry, Scenario, Stage, Suite, SuiteInput, SuiteOutput, BUILTIN_SCENARIOS,
};

fn scenario(text: &str) -> Result<Scenario, HarnessError> {
    Scenario::from_toml(text, None)
}

fn invalid_line(text: &str) -> (Option<usize>, String) {
    match scenario(text) {
        Err(HarnessError::Invalid { line, message }) => (line, message),
        other => panic!("expected an invalid-input error, got {other:?}"),
    }
}

#[test]
fn minimal_scenario_defaults_to_flat_zero_couplings() {
    let s = scenario("name = \"bare\"\n").unwrap();
    assert_eq!(s.seed, 0);
    assert!(s.suites.is_empty());
    assert!(s.geometry.invariants().torsion.is_zero());
}

#[test]
fn parse_errors_carry_line_numbers() {
    let (line, msg) =
        invalid_line("name = \"a\"\n[params]\nk = \"real\"\n[connection]\n\"1,2\" = [\"0\", \"q\", \"k\", \"0\"]\n");
    assert_eq!(line, Some(5));
    assert!(msg.contains('q'), "{msg}");

    let (line, _) = invalid_line("name = \"a\"\nbogus = 1\n");
    assert_eq!(line, Some(2));

    let (line, msg) = invalid_line("name = \"a\"\n\nspinor = [\"1\", \"0\"]\n");
    assert_eq!(line, Some(3));
    assert!(msg.contains("4 entries"), "{msg}");

    let (line, _) = invalid_line("name = \"a\"\nsuites = [\"clifford\", \"nope\"]\n");
    assert_eq!(line, Some(2));

    let (line, msg) = invalid_line("name = \"a\"\n[couplings]\nmode = \"constrained\"\nvalues = { A1 = \"i\" }\n");
    assert_eq!(line, Some(4));
    assert!(msg.contains("real"), "{msg}");
}

#[test]
fn singular_tetrad_reports_its_line() {
    let text = "name = \"a\"\ntetrad = [[\"1\",\"0\",\"0\",\"0\"],[\"0\",\"x - 1\",\"0\",\"0\"],[\"0\",\"0\",\"1\",\"0\"],[\"0\",\"0\",\"0\",\"1\"]]\n";
    let (line, _) = invalid_line(text);
    assert_eq!(line, Some(2));
}

#[test]
fn charge_needs_potential() {
    let (line, _) = invalid_line("name = \"a\"\ncharge = \"1\"\n");
    assert_eq!(line, Some(2));
}

#[test]
fn missing_file_is_an_io_error() {
    assert!(matches!(load_scenario("/nonexistent/file.toml", None), Err(HarnessError::Io { .. })));
}

#[test]
fn builtin_registry_is_complete() {
    let r = Registry::builtin();
    assert_eq!(r.names().len(), 10);
    for b in &BUILTIN_SCENARIOS {
        for s in b.suites() {
            assert!(r.get(&s).is_some(), "{}: {s}", b.name);
        }
        assert!(!b.description().is_empty());
    }
    assert!(matches!(
        r.run(&load_scenario("flat-cartesian", None).unwrap(), &["nope".into()]),
        Err(HarnessError::UnknownSuite(_))
    ));
}

struct Probe;

impl Suite for Probe {
    fn name(&self) -> &'static str {
        "probe"
    }
    fn description(&self) -> &'static str {
        "always fails"
    }
    fn stage(&self) -> Stage {
        Stage::Algebra
    }
    fn run(&self, input: &SuiteInput<'_>) -> Result<SuiteOutput, HarnessError> {
        Ok(SuiteOutput::checks(vec![CheckOutcome::exact("probe/seen", false, input.scenario.name.clone())]))
    }
}

#[test]
fn custom_suites_can_be_registered() {
    let mut r = Registry::builtin();
    r.register(Box::new(Probe));
    let s = load_scenario("plane-wave-flat", None).unwrap();
    let report = r.run(&s, &["hodge".into(), "probe".into()]).unwrap();
    // Algebra stage runs first regardless of request order.
    assert_eq!(report.checks[0].check, "probe/seen");
    assert!(!report.passed());
    assert_eq!(report.count(Status::Fail), 1);
}

#[test]
fn builtin_scenarios_behave_as_documented() {
    let r = Registry::builtin();
    for b in &BUILTIN_SCENARIOS {
        let s = load_scenario(b.name, None).unwrap();
        let report = r.run(&s, &s.suites).unwrap();
        let expect_pass = b.name != "riemann-cartan-torsion-line";
        assert_eq!(report.passed(), expect_pass, "{}\n{}", b.name, report.text());
    }
}

#[test]
fn torsion_line_passes_once_constrained() {
    let text = BUILTIN_SCENARIOS.iter().find(|b| b.name == "riemann-cartan-torsion-line").unwrap().text;
    let text = text.replace("mode = \"zero\"", "mode = \"constrained\"\nvalues = { B2 = \"1/2\" }");
    let s = scenario(&text).unwrap();
    let report = Registry::builtin().run(&s, &s.suites).unwrap();
    assert!(report.passed(), "{}", report.text());
}

#[test]
fn machine_reports_are_deterministic() {
    let r = Registry::builtin();
    let run = |seed| {
        let s = load_scenario("random-polynomial", Some(seed)).unwrap();
        r.run(&s, &s.suites).unwrap().machine()
    };
    let a = run(5);
    assert_eq!(a, run(5));
    assert_ne!(a, run(6));
    for line in a.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["seed"], 5);
        for key in ["check", "status", "max_residual", "policy", "detail"] {
            assert!(v.get(key).is_some(), "{key} missing in {line}");
        }
    }
}
