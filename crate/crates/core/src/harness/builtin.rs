//! Scenarios shipped with the library, looked up by name.

/// A named scenario file compiled into the binary.
pub struct BuiltinScenario {
    pub name: &'static str,
    pub text: &'static str,
}

impl BuiltinScenario {
    fn table(&self) -> toml::Table {
        self.text.parse().expect("built-in scenario is valid TOML")
    }

    pub fn description(&self) -> String {
        self.table().get("description").and_then(|v| v.as_str()).unwrap_or_default().to_string()
    }

    pub fn suites(&self) -> Vec<String> {
        self.table()
            .get("suites")
            .and_then(|v| v.as_array())
            .map(|a| a.iter().filter_map(|s| s.as_str().map(str::to_string)).collect())
            .unwrap_or_default()
    }
}

macro_rules! builtin {
    ($name:literal) => {
        BuiltinScenario { name: $name, text: include_str!(concat!("../../scenarios/", $name, ".toml")) }
    };
}

pub const BUILTIN_SCENARIOS: [BuiltinScenario; 6] = [
    builtin!("flat-cartesian"),
    builtin!("plane-wave-flat"),
    builtin!("weyl-trace"),
    builtin!("riemann-cartan-torsion-line"),
    builtin!("cosmological-tetrad"),
    builtin!("random-polynomial"),
];

pub fn builtin_scenario(name: &str) -> Option<&'static BuiltinScenario> {
    BUILTIN_SCENARIOS.iter().find(|b| b.name == name)
}
