use std::collections::BTreeMap;

use super::ExprError;

/// Reserved words of the expression grammar.
pub(crate) const RESERVED: [&str; 5] = ["i", "sin", "cos", "exp", "conj"];

/// A four-coordinate chart with a per-coordinate sample interval used by
/// randomized numeric checks.
#[derive(Clone, Debug, PartialEq)]
pub struct Chart {
    names: [String; 4],
    domain: [(f64, f64); 4],
}

impl Default for Chart {
    fn default() -> Self {
        Chart { names: ["t", "x", "y", "z"].map(String::from), domain: [(0.5, 1.5); 4] }
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Chart {
    pub fn new(names: [String; 4], domain: [(f64, f64); 4]) -> Result<Self, ExprError> {
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) || RESERVED.contains(&n.as_str()) {
                return Err(ExprError::InvalidChart(format!("bad coordinate name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(ExprError::InvalidChart(format!("duplicate coordinate `{n}`")));
            }
        }
        for (n, (lo, hi)) in names.iter().zip(domain) {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(ExprError::InvalidChart(format!("degenerate sample interval [{lo}, {hi}] for `{n}`")));
            }
        }
        Ok(Chart { names, domain })
    }

    pub fn names(&self) -> &[String; 4] {
        &self.names
    }

    pub fn domain(&self) -> &[(f64, f64); 4] {
        &self.domain
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ParamKind {
    Real,
    Complex,
}

/// Chart plus declared parameters: everything the parser may resolve.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SymbolTable {
    pub chart: Chart,
    params: BTreeMap<String, ParamKind>,
}

impl SymbolTable {
    pub fn new(chart: Chart) -> Self {
        SymbolTable { chart, params: BTreeMap::new() }
    }

    pub fn declare(&mut self, name: &str, kind: ParamKind) -> Result<(), ExprError> {
        if !is_identifier(name) || RESERVED.contains(&name) || self.chart.index_of(name).is_some() {
            return Err(ExprError::InvalidChart(format!("bad parameter name `{name}`")));
        }
        self.params.insert(name.to_string(), kind);
        Ok(())
    }

    pub fn with_param(mut self, name: &str, kind: ParamKind) -> Self {
        self.declare(name, kind).expect("valid parameter name");
        self
    }

    pub fn param_kind(&self, name: &str) -> Option<ParamKind> {
        self.params.get(name).copied()
    }

    pub fn params(&self) -> impl Iterator<Item = (&str, ParamKind)> {
        self.params.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicate_and_reserved_names() {
        let d = [(0.0, 1.0); 4];
        assert!(Chart::new(["t", "x", "x", "z"].map(String::from), d).is_err());
        assert!(Chart::new(["t", "i", "y", "z"].map(String::from), d).is_err());
        assert!(Chart::new(["t", "x", "y", "z"].map(String::from), [(1.0, 1.0); 4]).is_err());
        assert!(Chart::new(["u", "v", "w", "s"].map(String::from), d).is_ok());
    }
}
