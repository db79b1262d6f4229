//! Symbolic derivation of the coupling constraints under which the direct
//! and variational Dirac operators coincide.
//!
//! Both operators are evaluated on a flat coframe carrying a fully generic
//! constant connection (64 real unknowns `w_abc`) plus a constant Maxwell
//! potential (4 real unknowns `u_c`), with every coupling left symbolic.
//! The 4×4 operator matrices (one column per constant basis spinor) are then
//! matched against the channel probes `i*γ∧(C·V)ψ`, giving per-channel
//! coefficients for each operator. Equating them yields a complex-linear
//! system in the couplings and their conjugates, which is split into real
//! and imaginary parts and solved exactly.

use std::collections::BTreeMap;
use std::fmt;

use super::dirac::gamma_form;
use super::{direct_dirac_residual, variational_dirac_residual, Channel, CouplingConstants, SpinorError, SpinorField};
use crate::clifford::{gamma5, Clifford};
use crate::expr::{Atom, Chart, Cx, ScalarExpr};
use crate::forms::{hodge, wedge, Form, VOLUME};
use crate::geometry::{ConnectionComponents, Geometry, GeometryInvariants};
use crate::linalg::{invert, rref};

/// Which Clifford factor of a channel an equation constrains.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Component {
    Identity,
    Gamma5,
}

impl Component {
    pub fn label(self) -> &'static str {
        match self {
            Component::Identity => "I",
            Component::Gamma5 => "γ5",
        }
    }
}

/// `lhs = rhs`, with `lhs` twice the variational coefficient and `rhs` twice
/// the direct one (up to a common sign).
#[derive(Clone, Debug, PartialEq)]
pub struct ConstraintEquation {
    pub channel: Channel,
    pub component: Component,
    pub lhs: ScalarExpr,
    pub rhs: ScalarExpr,
}

impl ConstraintEquation {
    /// `lhs − rhs`.
    pub fn residual(&self) -> ScalarExpr {
        &self.lhs - &self.rhs
    }
}

impl fmt::Display for ConstraintEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// Solved value of the real or imaginary part of one coupling.
#[derive(Clone, Debug, PartialEq)]
pub enum PartValue {
    Fixed(Cx),
    Free(String),
    /// Affine combination of free parameters.
    Dependent(ScalarExpr),
}

impl PartValue {
    pub fn expr(&self) -> ScalarExpr {
        match self {
            PartValue::Fixed(c) => ScalarExpr::constant(c.clone()),
            PartValue::Free(n) => ScalarExpr::real_param(n),
            PartValue::Dependent(e) => e.clone(),
        }
    }
}

impl fmt::Display for PartValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartValue::Fixed(c) => write!(f, "{c}"),
            PartValue::Free(n) => write!(f, "{n} (free)"),
            PartValue::Dependent(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CouplingValue {
    pub name: String,
    pub re: PartValue,
    pub im: PartValue,
}

impl CouplingValue {
    /// `re + i·im` with free parts as real parameters.
    pub fn value(&self) -> ScalarExpr {
        &self.re.expr() + &(&ScalarExpr::i() * &self.im.expr())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstraintSolution {
    pub equations: Vec<ConstraintEquation>,
    /// `a1..a4`, `b1..b4`, then the charge `q`.
    pub values: Vec<CouplingValue>,
}

impl ConstraintSolution {
    pub fn value(&self, name: &str) -> Option<&CouplingValue> {
        self.values.iter().find(|v| v.name == name)
    }

    /// Names of the free real parameters, in coupling order.
    pub fn free_parameters(&self) -> Vec<String> {
        self.values
            .iter()
            .flat_map(|v| [&v.re, &v.im])
            .filter_map(|p| match p {
                PartValue::Free(n) => Some(n.clone()),
                _ => None,
            })
            .collect()
    }

    /// The general solution as couplings with real symbolic parameters.
    pub fn couplings(&self) -> CouplingConstants {
        let mut c = CouplingConstants::zero();
        for v in &self.values {
            if v.name == CHARGE {
                c.charge = v.value();
            } else {
                c.set(&v.name, v.value());
            }
        }
        c
    }
}

impl fmt::Display for ConstraintSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "equations (2·variational = 2·direct):")?;
        for e in &self.equations {
            writeln!(f, "  [{}/{}] {}", e.channel.label(), e.component.label(), e)?;
        }
        writeln!(f, "solution:")?;
        for v in &self.values {
            writeln!(f, "  {} = {}    (Re = {}, Im = {})", v.name, v.value(), v.re, v.im)?;
        }
        Ok(())
    }
}

const CHARGE: &str = "q";

/// The channel probes, in the order of the unknown coefficients.
const PROBES: [(Channel, Component); 9] = [
    (Channel::Q, Component::Identity),
    (Channel::Q, Component::Gamma5),
    (Channel::P, Component::Identity),
    (Channel::P, Component::Gamma5),
    (Channel::T, Component::Identity),
    (Channel::T, Component::Gamma5),
    (Channel::Coframe, Component::Identity),
    (Channel::Coframe, Component::Gamma5),
    (Channel::Potential, Component::Identity),
];

fn w_name(a: usize, b: usize, c: usize) -> String {
    format!("w{a}{b}{c}")
}

fn u_name(c: usize) -> String {
    format!("u{c}")
}

fn param_atom(e: &ScalarExpr) -> Atom {
    e.as_atom().expect("single parameter").clone()
}

/// Column `j` of the returned matrix is the `*1` coefficient of `op(e_j)`.
fn operator_matrix(op: impl Fn(&SpinorField) -> Form<super::Spinor>) -> Clifford {
    let cols: Vec<[ScalarExpr; 4]> = (0..4)
        .map(|j| {
            let mut unit: [ScalarExpr; 4] = Default::default();
            unit[j] = ScalarExpr::one();
            op(&SpinorField::new(unit)).comp_or_zero(VOLUME).0
        })
        .collect();
    Clifford::from_entries(std::array::from_fn(|r| std::array::from_fn(|s| cols[s][r].clone())))
}

fn probe_form(ch: Channel, comp: Component, inv: &GeometryInvariants, potential: &Form) -> Form<Clifford> {
    let coeff = match comp {
        Component::Identity => Clifford::identity(),
        Component::Gamma5 => gamma5(),
    };
    match ch {
        Channel::Q => inv.traces.q.times_clifford(&coeff),
        Channel::P => inv.traces.p.times_clifford(&coeff),
        Channel::T => inv.traces.t.times_clifford(&coeff),
        Channel::Coframe => gamma_form().map(|g| &coeff * g),
        Channel::Potential => potential.times_clifford(&coeff),
    }
}

struct Fit {
    probes: Vec<Clifford>,
    /// Indices of a maximal independent set of probe equations.
    selected: Vec<usize>,
    /// Inverse of the selected coefficient block.
    inverse: Vec<Vec<Cx>>,
}

/// Decomposes every entry of every probe matrix along `vars` (plus a
/// constant slot) into numeric coefficients.
fn probe_rows(probes: &[Clifford], vars: &[Atom]) -> Result<Vec<Vec<Cx>>, SpinorError> {
    let mut out = Vec::new();
    for r in 0..4 {
        for s in 0..4 {
            let parts: Vec<Vec<Cx>> = probes
                .iter()
                .map(|p| {
                    let (coeffs, rest) = p
                        .entry(r, s)
                        .affine_in(vars)
                        .ok_or_else(|| SpinorError::Inconsistent("probe not affine in the connection".into()))?;
                    coeffs
                        .iter()
                        .chain(std::iter::once(&rest))
                        .map(|e| {
                            e.as_constant()
                                .ok_or_else(|| SpinorError::Inconsistent("probe coefficient not constant".into()))
                        })
                        .collect()
                })
                .collect::<Result<_, _>>()?;
            for slot in 0..=vars.len() {
                out.push(parts.iter().map(|p| p[slot].clone()).collect());
            }
        }
    }
    Ok(out)
}

impl Fit {
    fn new(probes: Vec<Clifford>, vars: &[Atom]) -> Result<Self, SpinorError> {
        let all_rows = probe_rows(&probes, vars)?;
        let n = probes.len();
        let mut rows: Vec<Vec<Cx>> = Vec::new();
        let mut selected = Vec::new();
        for (k, row) in all_rows.iter().enumerate() {
            if row.iter().all(Cx::is_zero) {
                continue;
            }
            let mut trial = rows.clone();
            trial.push(row.clone());
            if rref(&mut trial).len() == rows.len() + 1 {
                rows.push(row.clone());
                selected.push(k);
                if rows.len() == n {
                    break;
                }
            }
        }
        if rows.len() < n {
            return Err(SpinorError::Inconsistent("channel probes are linearly dependent".into()));
        }
        let inverse = invert(&rows).expect("independent rows");
        Ok(Fit { probes, selected, inverse })
    }

    /// Channel coefficients `z` with `Σ z_k probe_k = target`, verified
    /// entry by entry.
    fn solve(&self, target: &Clifford, vars: &[Atom]) -> Result<Vec<ScalarExpr>, SpinorError> {
        let mut rhs_all = Vec::new();
        for r in 0..4 {
            for s in 0..4 {
                let (coeffs, rest) = target
                    .entry(r, s)
                    .affine_in(vars)
                    .ok_or_else(|| SpinorError::Inconsistent("operator not affine in the connection".into()))?;
                rhs_all.extend(coeffs);
                rhs_all.push(rest);
            }
        }
        let rhs: Vec<&ScalarExpr> = self.selected.iter().map(|&k| &rhs_all[k]).collect();
        let z: Vec<ScalarExpr> = self
            .inverse
            .iter()
            .map(|row| row.iter().zip(&rhs).fold(ScalarExpr::zero(), |acc, (c, r)| &acc + &r.scale(c)))
            .collect();
        let mut rebuilt = Clifford::zero();
        for (zk, p) in z.iter().zip(&self.probes) {
            rebuilt = &rebuilt + &p.scale(zk);
        }
        if &rebuilt != target {
            return Err(SpinorError::Inconsistent("operator has components outside the channel ansatz".into()));
        }
        Ok(z)
    }
}

fn generic_geometry() -> Result<(Geometry, Vec<Atom>, Form), SpinorError> {
    let mut conn: ConnectionComponents = Default::default();
    let mut vars = Vec::new();
    for (a, plane) in conn.iter_mut().enumerate() {
        for (b, row) in plane.iter_mut().enumerate() {
            for (c, slot) in row.iter_mut().enumerate() {
                *slot = ScalarExpr::real_param(&w_name(a, b, c));
                vars.push(param_atom(slot));
            }
        }
    }
    let mut potential = Form::zero(1);
    for c in 0..4 {
        let u = ScalarExpr::real_param(&u_name(c));
        vars.push(param_atom(&u));
        potential.add_term(1 << c, u);
    }
    let tetrad = std::array::from_fn(|m| std::array::from_fn(|a| ScalarExpr::int((m == a) as i64)));
    Ok((Geometry::new(Chart::default(), tetrad, &conn)?, vars, potential))
}

fn coupling_names() -> Vec<&'static str> {
    super::COUPLING_NAMES.iter().copied().chain([CHARGE]).collect()
}

fn free_name(coupling: &str) -> String {
    if coupling == CHARGE {
        CHARGE.to_string()
    } else {
        coupling.to_uppercase()
    }
}

/// Splits the equations into real ones over `(Re z, Im z)` for every
/// coupling and solves them exactly.
fn solve_real(equations: &[ConstraintEquation]) -> Result<Vec<CouplingValue>, SpinorError> {
    let names = coupling_names();
    let atoms: Vec<Atom> = names
        .iter()
        .flat_map(|n| {
            let p = ScalarExpr::complex_param(n);
            [param_atom(&p), param_atom(&p.conj())]
        })
        .collect();
    let nvar = 2 * names.len();
    let mut matrix: Vec<Vec<Cx>> = Vec::new();
    for eq in equations {
        let (coeffs, rest) = eq
            .residual()
            .affine_in(&atoms)
            .ok_or_else(|| SpinorError::Inconsistent(format!("non-linear equation {eq}")))?;
        let constant = |e: &ScalarExpr| {
            e.as_constant().ok_or_else(|| SpinorError::Inconsistent(format!("non-constant coefficient in {eq}")))
        };
        // c z + d z* = (c + d) x + i(c − d) y
        let mut row = vec![Cx::zero(); nvar + 1];
        for k in 0..names.len() {
            let c = constant(&coeffs[2 * k])?;
            let d = constant(&coeffs[2 * k + 1])?;
            row[2 * k] = &c + &d;
            row[2 * k + 1] = &Cx::i() * &(&c - &d);
        }
        row[nvar] = constant(&rest)?;
        let re: Vec<Cx> = row.iter().map(|v| Cx::from_real(v.re.clone())).collect();
        let im: Vec<Cx> = row.iter().map(|v| Cx::from_real(v.im.clone())).collect();
        matrix.push(re);
        matrix.push(im);
    }
    let pivots = rref(&mut matrix);
    if pivots.contains(&nvar) {
        return Err(SpinorError::Inconsistent("the coupling equations have no solution".into()));
    }
    let free: BTreeMap<usize, String> = (0..nvar)
        .filter(|v| !pivots.contains(v))
        .map(|v| {
            let base = free_name(names[v / 2]);
            let partner_free = !pivots.contains(&(v ^ 1));
            (v, if partner_free { format!("{base}_{}", ["re", "im"][v % 2]) } else { base })
        })
        .collect();
    let mut parts: Vec<PartValue> =
        (0..nvar).map(|v| PartValue::Free(free.get(&v).cloned().unwrap_or_default())).collect();
    for (r, &p) in pivots.iter().enumerate() {
        let mut e = ScalarExpr::constant(-&matrix[r][nvar]);
        for (v, name) in &free {
            if !matrix[r][*v].is_zero() {
                e = &e - &ScalarExpr::real_param(name).scale(&matrix[r][*v]);
            }
        }
        parts[p] = match e.as_constant() {
            Some(c) => PartValue::Fixed(c),
            None => PartValue::Dependent(e),
        };
    }
    let mut parts = parts.into_iter();
    Ok(names
        .iter()
        .map(|n| CouplingValue { name: n.to_string(), re: parts.next().unwrap(), im: parts.next().unwrap() })
        .collect())
}

/// Makes the leading real coefficient of `rhs` positive.
fn normalize(lhs: ScalarExpr, rhs: ScalarExpr) -> (ScalarExpr, ScalarExpr) {
    let negative = rhs
        .terms()
        .first()
        .map(|t| {
            let c = t.coeff.to_complex64();
            if c.re != 0.0 {
                c.re < 0.0
            } else {
                c.im < 0.0
            }
        })
        .unwrap_or(false);
    if negative {
        (-&lhs, -&rhs)
    } else {
        (lhs, rhs)
    }
}

/// Derives the constraint system and its general solution.
pub fn derive_constraints() -> Result<ConstraintSolution, SpinorError> {
    let (geom, vars, potential) = generic_geometry()?;
    let inv = geom.invariants();
    let couplings = CouplingConstants::symbolic().with_charge(ScalarExpr::complex_param(CHARGE), potential.clone());
    let zero = CouplingConstants::zero();
    let m = ScalarExpr::zero();

    let star_gamma = hodge(&gamma_form());
    let probes: Vec<Clifford> = PROBES
        .iter()
        .map(|&(ch, comp)| {
            let v = probe_form(ch, comp, &inv, &potential);
            operator_matrix(|psi| wedge(&star_gamma, &wedge(&v, &psi.form())).scaled(&ScalarExpr::i()))
        })
        .collect();
    let fit = Fit::new(probes, &vars)?;

    let spin_only = operator_matrix(|psi| direct_dirac_residual(psi, &m, &zero, &geom, &inv));
    let direct = &operator_matrix(|psi| direct_dirac_residual(psi, &m, &couplings, &geom, &inv)) - &spin_only;
    let variational = &operator_matrix(|psi| variational_dirac_residual(psi, &m, &couplings, &geom, &inv)) - &spin_only;
    let z_direct = fit.solve(&direct, &vars)?;
    let z_var = fit.solve(&variational, &vars)?;

    let two = Cx::from_int(2);
    let equations: Vec<ConstraintEquation> = PROBES
        .iter()
        .zip(z_var.iter().zip(&z_direct))
        .filter(|(_, (v, d))| v != d)
        .map(|(&(channel, component), (v, d))| {
            let (lhs, rhs) = normalize(v.scale(&two), d.scale(&two));
            ConstraintEquation { channel, component, lhs, rhs }
        })
        .collect();
    let values = solve_real(&equations)?;

    let solution = ConstraintSolution { equations, values };
    let mut subst = BTreeMap::new();
    for v in &solution.values {
        subst.insert(v.name.clone(), v.value());
    }
    for eq in &solution.equations {
        if !eq.residual().subst_params(&subst).is_zero() {
            return Err(SpinorError::Inconsistent(format!("solution does not satisfy {eq}")));
        }
    }
    Ok(solution)
}
