//! Scenario files: one geometry, one coupling specification, a spinor and
//! the suites to run, written as TOML with expression strings.

use std::collections::BTreeMap;
use std::ops::Range;

use serde::Deserialize;
use toml::Spanned;

use super::HarnessError;
use crate::expr::{parse, Chart, ParamKind, ScalarExpr, SymbolTable};
use crate::forms::Form;
use crate::geometry::{random_geometry, ConnectionComponents, Geometry};
use crate::spinor::{CouplingConstants, SpinorField, COUPLING_NAMES};

type Text = Spanned<String>;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    name: String,
    #[serde(default)]
    description: String,
    seed: Option<u64>,
    suites: Option<Vec<Text>>,
    /// Built-in geometry generator; replaces `tetrad` and `connection`.
    generator: Option<Text>,
    chart: Option<ChartFile>,
    #[serde(default)]
    params: BTreeMap<String, Text>,
    tetrad: Option<Spanned<Vec<Vec<Text>>>>,
    #[serde(default)]
    connection: BTreeMap<String, Spanned<Vec<Text>>>,
    couplings: Option<CouplingFile>,
    spinor: Option<Spanned<Vec<Text>>>,
    mass: Option<Text>,
    charge: Option<Text>,
    potential: Option<Spanned<Vec<Text>>>,
    #[serde(default)]
    expect_solution: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChartFile {
    coordinates: Spanned<Vec<String>>,
    domain: Option<Spanned<Vec<[f64; 2]>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CouplingFile {
    mode: Text,
    #[serde(default)]
    values: BTreeMap<String, Text>,
}

/// How the couplings of a scenario were specified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CouplingMode {
    Zero,
    Symbolic,
    Constrained,
    Concrete,
}

/// A validated scenario, ready to run.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub description: String,
    pub seed: u64,
    pub symbols: SymbolTable,
    pub geometry: Geometry,
    pub coupling_mode: CouplingMode,
    pub couplings: CouplingConstants,
    pub spinor: SpinorField,
    pub mass: ScalarExpr,
    /// Suites named in the file; empty means every registered suite.
    pub suites: Vec<String>,
    /// Whether the spinor is expected to solve the direct equation.
    pub expect_solution: bool,
}

/// Source text plus byte-offset to line conversion.
struct Source<'a> {
    text: &'a str,
}

impl Source<'_> {
    fn line(&self, span: Range<usize>) -> usize {
        self.text[..span.start.min(self.text.len())].matches('\n').count() + 1
    }

    fn invalid<T>(&self, span: Range<usize>, message: impl Into<String>) -> Result<T, HarnessError> {
        Err(HarnessError::Invalid { line: Some(self.line(span)), message: message.into() })
    }

    fn expr(&self, t: &Text, symbols: &SymbolTable) -> Result<ScalarExpr, HarnessError> {
        parse(t.get_ref(), symbols).or_else(|e| self.invalid(t.span(), format!("`{}`: {e}", t.get_ref())))
    }

    fn four(&self, v: &Spanned<Vec<Text>>, what: &str, symbols: &SymbolTable) -> Result<[ScalarExpr; 4], HarnessError> {
        if v.get_ref().len() != 4 {
            return self.invalid(v.span(), format!("{what} needs 4 entries, found {}", v.get_ref().len()));
        }
        let parsed: Vec<ScalarExpr> = v.get_ref().iter().map(|t| self.expr(t, symbols)).collect::<Result<_, _>>()?;
        Ok(parsed.try_into().expect("length checked"))
    }
}

/// The fixture spinor used when a scenario does not give one.
pub fn default_spinor() -> SpinorField {
    let x = ScalarExpr::coord;
    let i = ScalarExpr::i();
    SpinorField::new([
        &ScalarExpr::one() + &(&x(0) * &x(1)),
        &i * &x(2),
        &(&x(3) * &x(3)) - &x(0),
        &ScalarExpr::int(2) + &(&i * &x(1)),
    ])
}

fn one_form(c: [ScalarExpr; 4]) -> Form {
    let mut f = Form::zero(1);
    for (a, v) in c.into_iter().enumerate() {
        f.add_term(1 << a, v);
    }
    f
}

impl Scenario {
    /// Parses and validates a scenario. `seed` overrides the file's seed.
    pub fn from_toml(text: &str, seed: Option<u64>) -> Result<Scenario, HarnessError> {
        let src = Source { text };
        let file: ScenarioFile = toml::from_str(text).map_err(|e| HarnessError::Invalid {
            line: e.span().map(|s| src.line(s)),
            message: e.message().to_string(),
        })?;
        let seed = seed.or(file.seed).unwrap_or(0);

        let chart = match &file.chart {
            None => Chart::default(),
            Some(c) => {
                let names: [String; 4] = c
                    .coordinates
                    .get_ref()
                    .clone()
                    .try_into()
                    .or_else(|_| src.invalid(c.coordinates.span(), "chart needs exactly 4 coordinates"))?;
                let domain = match &c.domain {
                    None => *Chart::default().domain(),
                    Some(d) => {
                        let v: [[f64; 2]; 4] = d
                            .get_ref()
                            .clone()
                            .try_into()
                            .or_else(|_| src.invalid(d.span(), "domain needs 4 intervals"))?;
                        v.map(|[lo, hi]| (lo, hi))
                    }
                };
                Chart::new(names, domain).or_else(|e| src.invalid(c.coordinates.span(), e.to_string()))?
            }
        };

        let mut symbols = SymbolTable::new(chart.clone());
        for (name, kind) in &file.params {
            let k = match kind.get_ref().as_str() {
                "real" => ParamKind::Real,
                "complex" => ParamKind::Complex,
                other => {
                    return src.invalid(kind.span(), format!("parameter kind must be real or complex, found `{other}`"))
                }
            };
            symbols.declare(name, k).or_else(|e| src.invalid(kind.span(), e.to_string()))?;
        }

        let geometry = match &file.generator {
            Some(g) => {
                if g.get_ref() != "random-polynomial" {
                    return src.invalid(g.span(), format!("unknown generator `{}`", g.get_ref()));
                }
                if file.tetrad.is_some() || !file.connection.is_empty() || file.chart.is_some() {
                    return src.invalid(g.span(), "a generator replaces chart, tetrad and connection");
                }
                random_geometry(seed).geometry
            }
            None => {
                let tetrad = match &file.tetrad {
                    None => std::array::from_fn(|a| std::array::from_fn(|m| ScalarExpr::int((a == m) as i64))),
                    Some(rows) => {
                        if rows.get_ref().len() != 4 {
                            return src.invalid(rows.span(), "tetrad needs 4 rows");
                        }
                        let mut out: [[ScalarExpr; 4]; 4] = Default::default();
                        for (a, row) in rows.get_ref().iter().enumerate() {
                            if row.len() != 4 {
                                return src.invalid(rows.span(), format!("tetrad row {a} needs 4 entries"));
                            }
                            for (m, t) in row.iter().enumerate() {
                                out[a][m] = src.expr(t, &symbols)?;
                            }
                        }
                        out
                    }
                };
                let mut conn: ConnectionComponents = Default::default();
                for (key, comps) in &file.connection {
                    let idx: Vec<usize> =
                        key.split(',').map(|s| s.trim().parse::<usize>()).collect::<Result<_, _>>().unwrap_or_default();
                    let [a, b] = idx[..] else {
                        return src.invalid(comps.span(), format!("connection key `{key}` must be \"a,b\""));
                    };
                    if a > 3 || b > 3 {
                        return src.invalid(comps.span(), format!("connection index out of range in `{key}`"));
                    }
                    conn[a][b] = src.four(comps, "connection entry", &symbols)?;
                }
                let span = file.tetrad.as_ref().map(|t| t.span()).unwrap_or(0..0);
                Geometry::new(chart.clone(), tetrad, &conn).map_err(|e| HarnessError::Invalid {
                    line: file.tetrad.as_ref().map(|_| src.line(span)),
                    message: e.to_string(),
                })?
            }
        };

        let (coupling_mode, mut couplings) = match &file.couplings {
            None => (CouplingMode::Zero, CouplingConstants::zero()),
            Some(c) => couplings(&src, c, &symbols)?,
        };
        if let Some(q) = &file.charge {
            let potential = match &file.potential {
                Some(p) => one_form(src.four(p, "potential", &symbols)?),
                None => return src.invalid(q.span(), "a charge needs a potential"),
            };
            couplings = couplings.with_charge(src.expr(q, &symbols)?, potential);
        } else if let Some(p) = &file.potential {
            return src.invalid(p.span(), "a potential needs a charge");
        }

        let spinor = match &file.spinor {
            Some(s) => SpinorField::new(src.four(s, "spinor", &symbols)?),
            None => default_spinor(),
        };
        let mass = match &file.mass {
            Some(m) => src.expr(m, &symbols)?,
            None => ScalarExpr::one(),
        };
        let suites = file.suites.unwrap_or_default();
        let registry = super::Registry::builtin();
        for s in &suites {
            if registry.get(s.get_ref()).is_none() {
                return src.invalid(s.span(), format!("unknown suite `{}`", s.get_ref()));
            }
        }

        Ok(Scenario {
            name: file.name,
            description: file.description,
            seed,
            symbols,
            geometry,
            coupling_mode,
            couplings,
            spinor,
            mass,
            suites: suites.into_iter().map(Spanned::into_inner).collect(),
            expect_solution: file.expect_solution,
        })
    }

    pub fn chart(&self) -> &Chart {
        self.geometry.chart()
    }
}

fn couplings(
    src: &Source<'_>,
    c: &CouplingFile,
    symbols: &SymbolTable,
) -> Result<(CouplingMode, CouplingConstants), HarnessError> {
    let allowed: Vec<String> = match c.mode.get_ref().as_str() {
        "zero" | "symbolic" => vec![],
        "concrete" => COUPLING_NAMES.iter().map(|s| s.to_string()).collect(),
        "constrained" => COUPLING_NAMES.iter().map(|s| s.to_uppercase()).collect(),
        other => {
            return src.invalid(
                c.mode.span(),
                format!("coupling mode must be zero, symbolic, concrete or constrained, found `{other}`"),
            )
        }
    };
    for (k, v) in &c.values {
        if !allowed.contains(k) {
            return src.invalid(v.span(), format!("`{k}` is not a coupling value for mode `{}`", c.mode.get_ref()));
        }
    }
    let value = |k: &str| -> Result<ScalarExpr, HarnessError> {
        match c.values.get(k) {
            Some(t) => {
                let e = src.expr(t, symbols)?;
                if c.mode.get_ref() == "constrained" && !e.is_real() {
                    return src.invalid(t.span(), format!("constrained parameter `{k}` must be real"));
                }
                Ok(e)
            }
            None => Ok(ScalarExpr::zero()),
        }
    };
    Ok(match c.mode.get_ref().as_str() {
        "zero" => (CouplingMode::Zero, CouplingConstants::zero()),
        "symbolic" => {
            for n in COUPLING_NAMES {
                if symbols.param_kind(n).is_some() || symbols.chart.index_of(n).is_some() {
                    return src.invalid(c.mode.span(), format!("symbolic couplings clash with the name `{n}`"));
                }
            }
            (CouplingMode::Symbolic, CouplingConstants::symbolic())
        }
        "concrete" => {
            let mut out = CouplingConstants::zero();
            for n in COUPLING_NAMES {
                out.set(n, value(n)?);
            }
            (CouplingMode::Concrete, out)
        }
        _ => {
            let a: [ScalarExpr; 4] = [value("A1")?, value("A2")?, value("A3")?, value("A4")?];
            let b: [ScalarExpr; 4] = [value("B1")?, value("B2")?, value("B3")?, value("B4")?];
            (CouplingMode::Constrained, CouplingConstants::constrained(a, b))
        }
    })
}
