//! Exact symbolic scalar fields over a four-coordinate chart.
//!
//! A [`ScalarExpr`] is stored in canonical form: a sum of terms, each an exact
//! complex-rational coefficient times a monomial in *atoms*. Atoms are the
//! chart coordinates, named parameters (real, or complex together with their
//! conjugates), and the transcendental heads `sin`, `cos`, `exp` applied to a
//! canonical argument. Non-monomial denominators become a `recip` atom over a
//! monic canonical polynomial. Every constructor and arithmetic operation
//! re-establishes the canonical form, so structural equality of two
//! expressions is exact equality on the polynomial core.
//!
//! Exponentials are merged (`exp(u)·exp(v) = exp(u+v)`), coordinates and
//! parameters may carry negative integer exponents, and nothing else is
//! simplified: identities such as `sin²+cos² = 1` are left to sampled
//! equality (see [`equality`]).

mod chart;
mod coeff;
pub mod equality;
mod eval;
mod parse;
mod print;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use thiserror::Error;

pub use chart::{Chart, ParamKind, SymbolTable};
pub use coeff::Cx;
pub use equality::{expr_equal, EqualityOutcome, EqualityPolicy, PolicyKind, SampleSpec, Sampler};
pub use eval::ParamValues;
pub use parse::{parse, parse_tree, ExprTree};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExprError {
    #[error("syntax error at offset {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown symbol `{name}` at offset {pos}")]
    UnknownSymbol { name: String, pos: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("parameter `{0}` has no value")]
    UnboundParameter(String),
    #[error("evaluation overflow: non-finite value at sample point {point:?}")]
    Overflow { point: [f64; 4] },
    #[error("invalid chart: {0}")]
    InvalidChart(String),
}

/// A named parameter. Complex parameters come in conjugate pairs: the atom
/// with `conj = true` stands for the complex conjugate of the parameter.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Param {
    pub name: Arc<str>,
    pub complex: bool,
    pub conj: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Coord(u8),
    Param(Param),
    Sin(ScalarExpr),
    Cos(ScalarExpr),
    Exp(ScalarExpr),
    /// `1/P` for a monic multi-term canonical `P`.
    Recip(ScalarExpr),
}

impl Atom {
    fn conj(&self) -> Atom {
        match self {
            Atom::Coord(_) => self.clone(),
            Atom::Param(p) => {
                if p.complex {
                    Atom::Param(Param { conj: !p.conj, ..p.clone() })
                } else {
                    self.clone()
                }
            }
            Atom::Sin(u) => Atom::Sin(u.conj()),
            Atom::Cos(u) => Atom::Cos(u.conj()),
            Atom::Exp(u) => Atom::Exp(u.conj()),
            Atom::Recip(u) => Atom::Recip(u.conj()),
        }
    }

    /// Partial derivative of the atom itself.
    fn derive(&self, mu: usize) -> ScalarExpr {
        match self {
            Atom::Coord(nu) => {
                if *nu as usize == mu {
                    ScalarExpr::one()
                } else {
                    ScalarExpr::zero()
                }
            }
            Atom::Param(_) => ScalarExpr::zero(),
            Atom::Sin(u) => {
                let du = u.derive(mu);
                if du.is_zero() {
                    return du;
                }
                &ScalarExpr::cos(u.clone()) * &du
            }
            Atom::Cos(u) => {
                let du = u.derive(mu);
                if du.is_zero() {
                    return du;
                }
                -&(&ScalarExpr::sin(u.clone()) * &du)
            }
            Atom::Exp(u) => {
                let du = u.derive(mu);
                if du.is_zero() {
                    return du;
                }
                &ScalarExpr::exp(u.clone()) * &du
            }
            Atom::Recip(p) => {
                let dp = p.derive(mu);
                if dp.is_zero() {
                    return dp;
                }
                let r = ScalarExpr::atom_pow(self.clone(), 2);
                -&(&dp * &r)
            }
        }
    }

    fn is_polynomial(&self) -> bool {
        matches!(self, Atom::Coord(_) | Atom::Param(_))
    }
}

/// Product of atoms with nonzero integer exponents, sorted by atom.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(Atom, i32)>);

impl Monomial {
    pub fn factors(&self) -> &[(Atom, i32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    fn merge(a: &Monomial, b: &Monomial) -> Monomial {
        let (x, y) = (&a.0, &b.0);
        let mut out = Vec::with_capacity(x.len() + y.len());
        let (mut i, mut j) = (0, 0);
        while i < x.len() && j < y.len() {
            match x[i].0.cmp(&y[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(x[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(y[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let k = x[i].1 + y[j].1;
                    if k != 0 {
                        out.push((x[i].0.clone(), k));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&x[i..]);
        out.extend_from_slice(&y[j..]);
        Monomial(out)
    }

    fn from_factors(mut f: Vec<(Atom, i32)>) -> Monomial {
        f.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Atom, i32)> = Vec::with_capacity(f.len());
        for (a, k) in f {
            match out.last_mut() {
                Some(last) if last.0 == a => last.1 += k,
                _ => out.push((a, k)),
            }
        }
        out.retain(|(_, k)| *k != 0);
        Monomial(out)
    }

    /// True when the monomial already satisfies the canonical-form rules:
    /// at most one `exp` atom with exponent 1, `recip` atoms with positive
    /// exponents only.
    fn is_clean(&self) -> bool {
        let mut exps = 0;
        for (a, k) in &self.0 {
            match a {
                Atom::Exp(_) => {
                    exps += 1;
                    if *k != 1 || exps > 1 {
                        return false;
                    }
                }
                Atom::Recip(_) if *k < 0 => return false,
                _ => {}
            }
        }
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub mono: Monomial,
    pub coeff: Cx,
}

/// Canonical exact scalar expression. Cheap to clone.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ScalarExpr {
    terms: Arc<Vec<Term>>,
}

impl fmt::Debug for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(&Chart::default()))
    }
}

impl ScalarExpr {
    pub fn zero() -> Self {
        ScalarExpr::default()
    }

    pub fn one() -> Self {
        ScalarExpr::constant(Cx::one())
    }

    pub fn i() -> Self {
        ScalarExpr::constant(Cx::i())
    }

    pub fn int(n: i64) -> Self {
        ScalarExpr::constant(Cx::from_int(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        ScalarExpr::constant(Cx::from_ratio(num, den))
    }

    pub fn constant(c: Cx) -> Self {
        if c.is_zero() {
            return ScalarExpr::zero();
        }
        ScalarExpr::from_sorted(vec![Term { mono: Monomial::default(), coeff: c }])
    }

    pub fn coord(mu: usize) -> Self {
        assert!(mu < 4, "coordinate index out of range");
        ScalarExpr::atom_pow(Atom::Coord(mu as u8), 1)
    }

    pub fn real_param(name: &str) -> Self {
        ScalarExpr::atom_pow(Atom::Param(Param { name: name.into(), complex: false, conj: false }), 1)
    }

    pub fn complex_param(name: &str) -> Self {
        ScalarExpr::atom_pow(Atom::Param(Param { name: name.into(), complex: true, conj: false }), 1)
    }

    pub fn param(name: &str, kind: ParamKind) -> Self {
        match kind {
            ParamKind::Real => ScalarExpr::real_param(name),
            ParamKind::Complex => ScalarExpr::complex_param(name),
        }
    }

    fn atom_pow(a: Atom, k: i32) -> Self {
        ScalarExpr::from_sorted(vec![Term { mono: Monomial(vec![(a, k)]), coeff: Cx::one() }])
    }

    fn from_sorted(terms: Vec<Term>) -> Self {
        ScalarExpr { terms: Arc::new(terms) }
    }

    fn from_map(map: BTreeMap<Monomial, Cx>) -> Self {
        ScalarExpr::from_sorted(
            map.into_iter().filter(|(_, c)| !c.is_zero()).map(|(mono, coeff)| Term { mono, coeff }).collect(),
        )
    }

    /// Builds an expression from one monomial, restoring canonical form.
    fn from_monomial(mono: Monomial, coeff: Cx) -> Self {
        if coeff.is_zero() {
            return ScalarExpr::zero();
        }
        if mono.is_clean() {
            return ScalarExpr::from_sorted(vec![Term { mono, coeff }]);
        }
        let mut kept = Vec::new();
        let mut exp_arg = ScalarExpr::zero();
        let mut expand = Vec::new();
        for (a, k) in mono.0 {
            match a {
                Atom::Exp(u) => exp_arg = &exp_arg + &u.scale(&Cx::from_int(k as i64)),
                Atom::Recip(p) if k < 0 => expand.push((p, (-k) as u32)),
                other => kept.push((other, k)),
            }
        }
        if !exp_arg.is_zero() {
            kept.push((Atom::Exp(exp_arg), 1));
        }
        let mut out = ScalarExpr::from_sorted(vec![Term { mono: Monomial::from_factors(kept), coeff }]);
        for (p, k) in expand {
            out = &out * &p.pow(k as i32).expect("positive power");
        }
        out
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if the expression is a constant.
    pub fn as_constant(&self) -> Option<Cx> {
        match self.terms.len() {
            0 => Some(Cx::zero()),
            1 if self.terms[0].mono.is_one() => Some(self.terms[0].coeff.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// Polynomial (Laurent in coordinates and parameters) with no
    /// transcendental or reciprocal atoms.
    pub fn is_polynomial(&self) -> bool {
        self.terms.iter().all(|t| t.mono.0.iter().all(|(a, _)| a.is_polynomial()))
    }

    pub fn scale(&self, c: &Cx) -> Self {
        if c.is_zero() {
            return ScalarExpr::zero();
        }
        ScalarExpr::from_sorted(self.terms.iter().map(|t| Term { mono: t.mono.clone(), coeff: &t.coeff * c }).collect())
    }

    pub fn sin(u: ScalarExpr) -> Self {
        if u.is_zero() {
            return ScalarExpr::zero();
        }
        ScalarExpr::atom_pow(Atom::Sin(u), 1)
    }

    pub fn cos(u: ScalarExpr) -> Self {
        if u.is_zero() {
            return ScalarExpr::one();
        }
        ScalarExpr::atom_pow(Atom::Cos(u), 1)
    }

    pub fn exp(u: ScalarExpr) -> Self {
        if u.is_zero() {
            return ScalarExpr::one();
        }
        ScalarExpr::atom_pow(Atom::Exp(u), 1)
    }

    /// Multiplicative inverse.
    pub fn recip(&self) -> Result<Self, ExprError> {
        match self.terms.len() {
            0 => Err(ExprError::DivisionByZero),
            1 => {
                let t = &self.terms[0];
                let inv = t.coeff.inv().ok_or(ExprError::DivisionByZero)?;
                let mono = Monomial(t.mono.0.iter().map(|(a, k)| (a.clone(), -k)).collect());
                Ok(ScalarExpr::from_monomial(mono, inv))
            }
            _ => {
                let lead = self.terms[0].coeff.clone();
                let inv = lead.inv().ok_or(ExprError::DivisionByZero)?;
                let monic = self.scale(&inv);
                Ok(ScalarExpr::atom_pow(Atom::Recip(monic), 1).scale(&inv))
            }
        }
    }

    /// Integer power; negative exponents go through [`ScalarExpr::recip`].
    pub fn pow(&self, n: i32) -> Result<Self, ExprError> {
        if n < 0 {
            return self.recip()?.pow(-n);
        }
        if self.terms.len() == 1 {
            let t = &self.terms[0];
            let mono = Monomial(t.mono.0.iter().map(|(a, k)| (a.clone(), k * n)).collect());
            return Ok(ScalarExpr::from_monomial(mono, t.coeff.pow(n as u32)));
        }
        let mut acc = ScalarExpr::one();
        let mut base = self.clone();
        let mut k = n as u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Exact partial derivative with respect to coordinate `mu`.
    pub fn derive(&self, mu: usize) -> Self {
        assert!(mu < 4, "coordinate index out of range");
        let mut acc: BTreeMap<Monomial, Cx> = BTreeMap::new();
        let mut extra: Vec<ScalarExpr> = Vec::new();
        for t in self.terms.iter() {
            for (idx, (a, k)) in t.mono.0.iter().enumerate() {
                let da = a.derive(mu);
                if da.is_zero() {
                    continue;
                }
                let mut rest = t.mono.0.clone();
                if *k == 1 {
                    rest.remove(idx);
                } else {
                    rest[idx].1 -= 1;
                }
                let c = &t.coeff * &Cx::from_int(*k as i64);
                let rest = Monomial(rest);
                // Fast path: derivative of a coordinate power.
                if let (Atom::Coord(_), Some(one)) = (a, da.as_constant()) {
                    let slot = acc.entry(rest).or_insert_with(Cx::zero);
                    *slot = &*slot + &(&c * &one);
                } else {
                    extra.push(&ScalarExpr::from_monomial(rest, c) * &da);
                }
            }
        }
        let mut out = ScalarExpr::from_map(acc);
        for e in extra {
            out = &out + &e;
        }
        out
    }

    /// Complex conjugate (coordinates and real parameters are real).
    pub fn conj(&self) -> Self {
        let mut acc = ScalarExpr::zero();
        let mut map: BTreeMap<Monomial, Cx> = BTreeMap::new();
        for t in self.terms.iter() {
            let f: Vec<(Atom, i32)> = t.mono.0.iter().map(|(a, k)| (a.conj(), *k)).collect();
            let mono = Monomial::from_factors(f);
            if mono.is_clean() {
                let slot = map.entry(mono).or_insert_with(Cx::zero);
                *slot = &*slot + &t.coeff.conj();
            } else {
                acc = &acc + &ScalarExpr::from_monomial(mono, t.coeff.conj());
            }
        }
        &acc + &ScalarExpr::from_map(map)
    }

    /// Replaces parameters by expressions. The conjugate atom of a complex
    /// parameter receives the conjugate of the substituted value.
    pub fn subst_params(&self, values: &BTreeMap<String, ScalarExpr>) -> Self {
        if values.is_empty() {
            return self.clone();
        }
        let mut out = ScalarExpr::zero();
        for t in self.terms.iter() {
            let mut term = ScalarExpr::constant(t.coeff.clone());
            let mut untouched = Vec::new();
            for (a, k) in &t.mono.0 {
                let replaced = match a {
                    Atom::Param(p) => values.get(&*p.name).map(|v| if p.conj { v.conj() } else { v.clone() }),
                    Atom::Sin(u) => Some(ScalarExpr::sin(u.subst_params(values))),
                    Atom::Cos(u) => Some(ScalarExpr::cos(u.subst_params(values))),
                    Atom::Exp(u) => Some(ScalarExpr::exp(u.subst_params(values))),
                    Atom::Recip(u) => {
                        Some(u.subst_params(values).recip().unwrap_or_else(|_| ScalarExpr::atom_pow(a.clone(), 1)))
                    }
                    Atom::Coord(_) => None,
                };
                match replaced {
                    Some(v) => term = &term * &v.pow(*k).expect("substituted value is invertible"),
                    None => untouched.push((a.clone(), *k)),
                }
            }
            term = &term * &ScalarExpr::from_monomial(Monomial::from_factors(untouched), Cx::one());
            out = &out + &term;
        }
        out
    }

    /// Re-derives the canonical form from scratch. Idempotent; since every
    /// constructor already canonicalizes, this is the identity on values
    /// built through the public API.
    pub fn canonical(&self) -> Self {
        let mut out = ScalarExpr::zero();
        for t in self.terms.iter() {
            let mut term = ScalarExpr::constant(t.coeff.clone());
            for (a, k) in &t.mono.0 {
                let base = match a {
                    Atom::Sin(u) => ScalarExpr::sin(u.canonical()),
                    Atom::Cos(u) => ScalarExpr::cos(u.canonical()),
                    Atom::Exp(u) => ScalarExpr::exp(u.canonical()),
                    Atom::Recip(u) => u.canonical().recip().expect("nonzero"),
                    _ => ScalarExpr::atom_pow(a.clone(), 1),
                };
                term = &term * &base.pow(*k).expect("invertible atom");
            }
            out = &out + &term;
        }
        out
    }

    /// All parameters appearing anywhere, with their complex flag.
    pub fn params(&self) -> BTreeSet<(Arc<str>, bool)> {
        let mut out = BTreeSet::new();
        self.collect_params(&mut out);
        out
    }

    fn collect_params(&self, out: &mut BTreeSet<(Arc<str>, bool)>) {
        for t in self.terms.iter() {
            for (a, _) in &t.mono.0 {
                match a {
                    Atom::Param(p) => {
                        out.insert((p.name.clone(), p.complex));
                    }
                    Atom::Sin(u) | Atom::Cos(u) | Atom::Exp(u) | Atom::Recip(u) => u.collect_params(out),
                    Atom::Coord(_) => {}
                }
            }
        }
    }

    /// True when the expression is invariant under complex conjugation.
    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Coefficients of an expression that is affine in the given atoms:
    /// `self = Σ coeffs[k]·vars[k] + rest`, where neither the coefficients
    /// nor `rest` contain any of `vars`. `None` if not affine.
    pub fn affine_in(&self, vars: &[Atom]) -> Option<(Vec<ScalarExpr>, ScalarExpr)> {
        let mut coeffs = vec![BTreeMap::<Monomial, Cx>::new(); vars.len()];
        let mut rest = BTreeMap::<Monomial, Cx>::new();
        for t in self.terms.iter() {
            let mut hit: Option<(usize, usize)> = None;
            for (fi, (a, k)) in t.mono.0.iter().enumerate() {
                if let Some(vi) = vars.iter().position(|v| v == a) {
                    if *k != 1 || hit.is_some() {
                        return None;
                    }
                    hit = Some((vi, fi));
                } else if let Atom::Sin(u) | Atom::Cos(u) | Atom::Exp(u) | Atom::Recip(u) = a {
                    if vars.iter().any(|v| u.contains_atom(v)) {
                        return None;
                    }
                }
            }
            match hit {
                Some((vi, fi)) => {
                    let mut m = t.mono.0.clone();
                    m.remove(fi);
                    coeffs[vi].insert(Monomial(m), t.coeff.clone());
                }
                None => {
                    rest.insert(t.mono.clone(), t.coeff.clone());
                }
            }
        }
        Some((coeffs.into_iter().map(ScalarExpr::from_map).collect(), ScalarExpr::from_map(rest)))
    }

    pub fn contains_atom(&self, atom: &Atom) -> bool {
        self.terms.iter().any(|t| {
            t.mono.0.iter().any(|(a, _)| {
                a == atom
                    || matches!(a, Atom::Sin(u) | Atom::Cos(u) | Atom::Exp(u) | Atom::Recip(u) if u.contains_atom(atom))
            })
        })
    }

    /// The atom behind a single-atom expression such as `ScalarExpr::coord(1)`.
    pub fn as_atom(&self) -> Option<&Atom> {
        match self.terms.as_slice() {
            [t] if t.coeff.is_one() && t.mono.0.len() == 1 && t.mono.0[0].1 == 1 => Some(&t.mono.0[0].0),
            _ => None,
        }
    }

    /// Total number of terms including those nested inside atoms.
    pub fn size(&self) -> usize {
        self.terms
            .iter()
            .map(|t| {
                1 + t
                    .mono
                    .0
                    .iter()
                    .map(|(a, _)| match a {
                        Atom::Sin(u) | Atom::Cos(u) | Atom::Exp(u) | Atom::Recip(u) => u.size(),
                        _ => 0,
                    })
                    .sum::<usize>()
            })
            .sum()
    }
}

impl Add for &ScalarExpr {
    type Output = ScalarExpr;
    fn add(self, rhs: &ScalarExpr) -> ScalarExpr {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (x, y) = (&*self.terms, &*rhs.terms);
        let mut out = Vec::with_capacity(x.len() + y.len());
        let (mut i, mut j) = (0, 0);
        while i < x.len() && j < y.len() {
            match x[i].mono.cmp(&y[j].mono) {
                std::cmp::Ordering::Less => {
                    out.push(x[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(y[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &x[i].coeff + &y[j].coeff;
                    if !c.is_zero() {
                        out.push(Term { mono: x[i].mono.clone(), coeff: c });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&x[i..]);
        out.extend_from_slice(&y[j..]);
        ScalarExpr::from_sorted(out)
    }
}

impl Sub for &ScalarExpr {
    type Output = ScalarExpr;
    fn sub(self, rhs: &ScalarExpr) -> ScalarExpr {
        self + &(-rhs)
    }
}

impl Neg for &ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        ScalarExpr::from_sorted(self.terms.iter().map(|t| Term { mono: t.mono.clone(), coeff: -&t.coeff }).collect())
    }
}

impl Mul for &ScalarExpr {
    type Output = ScalarExpr;
    fn mul(self, rhs: &ScalarExpr) -> ScalarExpr {
        if self.is_zero() || rhs.is_zero() {
            return ScalarExpr::zero();
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        let mut acc: BTreeMap<Monomial, Cx> = BTreeMap::new();
        let mut extra: Vec<ScalarExpr> = Vec::new();
        for a in self.terms.iter() {
            for b in rhs.terms.iter() {
                let mono = Monomial::merge(&a.mono, &b.mono);
                let c = &a.coeff * &b.coeff;
                if mono.is_clean() {
                    match acc.get_mut(&mono) {
                        Some(slot) => *slot = &*slot + &c,
                        None => {
                            acc.insert(mono, c);
                        }
                    }
                } else {
                    extra.push(ScalarExpr::from_monomial(mono, c));
                }
            }
        }
        let mut out = ScalarExpr::from_map(acc);
        for e in extra {
            out = &out + &e;
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ScalarExpr {
            type Output = ScalarExpr;
            fn $m(self, rhs: ScalarExpr) -> ScalarExpr {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&ScalarExpr> for ScalarExpr {
            type Output = ScalarExpr;
            fn $m(self, rhs: &ScalarExpr) -> ScalarExpr {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        -&self
    }
}

impl From<i64> for ScalarExpr {
    fn from(n: i64) -> Self {
        ScalarExpr::int(n)
    }
}

impl From<Cx> for ScalarExpr {
    fn from(c: Cx) -> Self {
        ScalarExpr::constant(c)
    }
}
