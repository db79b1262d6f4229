//! Exterior forms expanded in an orthonormal coframe e⁰..e³.
//!
//! A p-form stores one coefficient per strictly increasing index set,
//! encoded as a 4-bit mask (bit a set means eᵃ is present). Coefficients are
//! anything implementing [`Coefficient`]: scalars, Clifford elements, column
//! or row spinors. Products of coefficients keep operand order, so
//! matrix-valued forms do not graded-commute.
//!
//! The Hodge map uses η = diag(-1,1,1,1) and the orientation
//! `*1 = e⁰∧e¹∧e²∧e³`, normalised so that `α∧*β = ⟨α,β⟩ *1`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::clifford::{eta, Clifford};
use crate::expr::{Cx, ExprError, ScalarExpr};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FormError {
    #[error("tetrad is singular: determinant vanishes identically")]
    SingularTetrad,
    #[error("tetrad is singular at sample point {point:?}")]
    SingularAt { point: [f64; 4] },
    #[error(transparent)]
    Expr(#[from] ExprError),
}

/// Coefficient ring of a form: closed under addition and scaling by
/// scalar fields.
pub trait Coefficient: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scaled(&self, s: &ScalarExpr) -> Self;
    fn map_scalars(&self, f: &mut dyn FnMut(&ScalarExpr) -> ScalarExpr) -> Self;
    fn scalars(&self) -> Vec<&ScalarExpr>;
}

/// Ordered product of coefficients, `self · rhs`.
pub trait Product<Rhs> {
    type Output: Coefficient;
    fn product(&self, rhs: &Rhs) -> Self::Output;
}

impl Coefficient for ScalarExpr {
    fn zero() -> Self {
        ScalarExpr::zero()
    }
    fn is_zero(&self) -> bool {
        ScalarExpr::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, s: &ScalarExpr) -> Self {
        self * s
    }
    fn map_scalars(&self, f: &mut dyn FnMut(&ScalarExpr) -> ScalarExpr) -> Self {
        f(self)
    }
    fn scalars(&self) -> Vec<&ScalarExpr> {
        vec![self]
    }
}

impl Coefficient for Clifford {
    fn zero() -> Self {
        Clifford::zero()
    }
    fn is_zero(&self) -> bool {
        Clifford::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, s: &ScalarExpr) -> Self {
        self.scale(s)
    }
    fn map_scalars(&self, f: &mut dyn FnMut(&ScalarExpr) -> ScalarExpr) -> Self {
        self.map(f)
    }
    fn scalars(&self) -> Vec<&ScalarExpr> {
        self.entries().iter().flatten().collect()
    }
}

impl Product<ScalarExpr> for ScalarExpr {
    type Output = ScalarExpr;
    fn product(&self, rhs: &ScalarExpr) -> ScalarExpr {
        self * rhs
    }
}

impl Product<Clifford> for ScalarExpr {
    type Output = Clifford;
    fn product(&self, rhs: &Clifford) -> Clifford {
        rhs.scale(self)
    }
}

impl Product<ScalarExpr> for Clifford {
    type Output = Clifford;
    fn product(&self, rhs: &ScalarExpr) -> Clifford {
        self.scale(rhs)
    }
}

impl Product<Clifford> for Clifford {
    type Output = Clifford;
    fn product(&self, rhs: &Clifford) -> Clifford {
        self * rhs
    }
}

/// Number of elements of `mask`.
pub fn grade(mask: u8) -> usize {
    mask.count_ones() as usize
}

/// Sign of `e^I ∧ e^J` relative to `e^{I∪J}`; zero if they overlap.
pub fn wedge_sign(i: u8, j: u8) -> i64 {
    if i & j != 0 {
        return 0;
    }
    let mut swaps = 0;
    for b in 0..4 {
        if j & (1 << b) != 0 {
            swaps += (i >> (b + 1)).count_ones();
        }
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

pub const VOLUME: u8 = 0b1111;

/// `*e^I = hodge_sign(I) · e^{I^c}`.
pub fn hodge_sign(mask: u8) -> i64 {
    let metric: i64 = if mask & 1 != 0 { -1 } else { 1 };
    metric * wedge_sign(mask, VOLUME ^ mask)
}

fn mask_indices(mask: u8) -> impl Iterator<Item = usize> {
    (0..4).filter(move |b| mask & (1 << b) != 0)
}

/// A homogeneous p-form with coefficients in `C`. Zero forms compare equal
/// regardless of degree.
#[derive(Clone)]
pub struct Form<C = ScalarExpr> {
    degree: usize,
    comps: BTreeMap<u8, C>,
}

impl<C: PartialEq> PartialEq for Form<C> {
    fn eq(&self, other: &Self) -> bool {
        self.comps == other.comps && (self.degree == other.degree || self.comps.is_empty())
    }
}

impl<C: Coefficient> fmt::Debug for Form<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form{}", self.degree)?;
        let mut m = f.debug_map();
        for (mask, c) in &self.comps {
            let label: String = mask_indices(*mask).map(|b| char::from(b'0' + b as u8)).collect();
            m.entry(&format!("e{label}"), c);
        }
        m.finish()
    }
}

impl<C: Coefficient> Form<C> {
    pub fn zero(degree: usize) -> Self {
        assert!(degree <= 4, "form degree out of range");
        Form { degree, comps: BTreeMap::new() }
    }

    /// `c · e^I`.
    pub fn monomial(mask: u8, c: C) -> Self {
        let mut f = Form::zero(grade(mask));
        f.add_term(mask, c);
        f
    }

    /// A 0-form.
    pub fn function(c: C) -> Self {
        Form::monomial(0, c)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn comp(&self, mask: u8) -> Option<&C> {
        self.comps.get(&mask)
    }

    /// Coefficient on `e^I`, zero if absent.
    pub fn comp_or_zero(&self, mask: u8) -> C {
        self.comps.get(&mask).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u8, &C)> {
        self.comps.iter().map(|(m, c)| (*m, c))
    }

    /// Adds `c · e^I` in place.
    pub fn add_term(&mut self, mask: u8, c: C) {
        assert_eq!(grade(mask), self.degree, "degree mismatch in add_term");
        if c.is_zero() {
            return;
        }
        match self.comps.get_mut(&mask) {
            Some(old) => {
                let s = old.plus(&c);
                if s.is_zero() {
                    self.comps.remove(&mask);
                } else {
                    *old = s;
                }
            }
            None => {
                self.comps.insert(mask, c);
            }
        }
    }

    pub fn plus(&self, other: &Form<C>) -> Form<C> {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
        let mut out = self.clone();
        for (m, c) in &other.comps {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn minus(&self, other: &Form<C>) -> Form<C> {
        self.plus(&other.negated())
    }

    pub fn negated(&self) -> Form<C> {
        self.map(|c| c.negated())
    }

    pub fn scaled(&self, s: &ScalarExpr) -> Form<C> {
        self.map(|c| c.scaled(s))
    }

    pub fn scaled_cx(&self, c: &Cx) -> Form<C> {
        self.scaled(&ScalarExpr::constant(c.clone()))
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map<D: Coefficient>(&self, mut f: impl FnMut(&C) -> D) -> Form<D> {
        let comps = self.comps.iter().map(|(m, c)| (*m, f(c))).filter(|(_, c)| !c.is_zero()).collect();
        Form { degree: self.degree, comps }
    }

    pub fn map_scalars(&self, mut f: impl FnMut(&ScalarExpr) -> ScalarExpr) -> Form<C> {
        self.map(|c| c.map_scalars(&mut f))
    }

    /// Entry-wise complex conjugation of the coefficients.
    pub fn conj(&self) -> Form<C> {
        self.map_scalars(ScalarExpr::conj)
    }

    pub fn scalars(&self) -> Vec<&ScalarExpr> {
        self.comps.values().flat_map(|c| c.scalars()).collect()
    }
}

impl Form<ScalarExpr> {
    /// The coframe 1-form eᵃ.
    pub fn coframe(a: usize) -> Self {
        Form::monomial(1 << a, ScalarExpr::one())
    }

    /// `e_a = η_ab e^b`.
    pub fn coframe_lower(a: usize) -> Self {
        Form::monomial(1 << a, ScalarExpr::int(eta(a, a)))
    }

    /// The volume form `*1`.
    pub fn volume() -> Self {
        Form::monomial(VOLUME, ScalarExpr::one())
    }

    /// `s · e^I` with a scalar field `s`.
    pub fn scalar_monomial(mask: u8, s: ScalarExpr) -> Self {
        Form::monomial(mask, s)
    }

    /// Promotes a scalar form to a Clifford-valued one, `f · G`.
    pub fn times_clifford(&self, g: &Clifford) -> Form<Clifford> {
        self.map(|s| g.scale(s))
    }
}

/// Graded exterior product with ordered coefficient multiplication.
pub fn wedge<A, B>(f: &Form<A>, g: &Form<B>) -> Form<A::Output>
where
    A: Coefficient + Product<B>,
    B: Coefficient,
{
    let degree = f.degree + g.degree;
    let mut out = Form { degree: degree.min(4), comps: BTreeMap::new() };
    if degree > 4 {
        return out;
    }
    for (mi, ci) in &f.comps {
        for (mj, cj) in &g.comps {
            let s = wedge_sign(*mi, *mj);
            if s == 0 {
                continue;
            }
            let p = ci.product(cj);
            let p = if s < 0 { p.negated() } else { p };
            out.add_term(mi | mj, p);
        }
    }
    out
}

/// Interior derivative ι_a along the frame vector X_a, with ι_b eᵃ = δᵃ_b.
pub fn interior<C: Coefficient>(a: usize, f: &Form<C>) -> Form<C> {
    if f.degree == 0 {
        return Form::zero(0);
    }
    let bit = 1u8 << a;
    let mut out = Form::zero(f.degree - 1);
    for (m, c) in &f.comps {
        if m & bit == 0 {
            continue;
        }
        let before = (m & (bit - 1)).count_ones();
        let c = if before.is_multiple_of(2) { c.clone() } else { c.negated() };
        out.add_term(m & !bit, c);
    }
    out
}

/// Lorentzian Hodge dual; coefficients pass through unchanged.
pub fn hodge<C: Coefficient>(f: &Form<C>) -> Form<C> {
    let mut out = Form::zero(4 - f.degree);
    for (m, c) in &f.comps {
        let c = if hodge_sign(*m) < 0 { c.negated() } else { c.clone() };
        out.add_term(VOLUME ^ m, c);
    }
    out
}

fn det3(m: &[[ScalarExpr; 4]; 4], rows: [usize; 3], cols: [usize; 3]) -> ScalarExpr {
    let e = |i: usize, j: usize| &m[rows[i]][cols[j]];
    let t1 = e(0, 0) * &(&(e(1, 1) * e(2, 2)) - &(e(1, 2) * e(2, 1)));
    let t2 = e(0, 1) * &(&(e(1, 0) * e(2, 2)) - &(e(1, 2) * e(2, 0)));
    let t3 = e(0, 2) * &(&(e(1, 0) * e(2, 1)) - &(e(1, 1) * e(2, 0)));
    &(&t1 - &t2) + &t3
}

fn others(k: usize) -> [usize; 3] {
    let mut out = [0; 3];
    let mut n = 0;
    for i in 0..4 {
        if i != k {
            out[n] = i;
            n += 1;
        }
    }
    out
}

/// `Some(c)` when `num = c·den` exactly.
fn constant_ratio(num: &ScalarExpr, den: &ScalarExpr) -> Option<Cx> {
    if num.is_zero() {
        return Some(Cx::zero());
    }
    let (n0, d0) = (num.terms().first()?, den.terms().first()?);
    if n0.mono != d0.mono {
        return None;
    }
    let c = &n0.coeff * &d0.coeff.inv()?;
    (den.scale(&c) == *num).then_some(c)
}

/// Determinant and inverse of a 4×4 symbolic matrix (adjugate over det).
pub fn invert4(m: &[[ScalarExpr; 4]; 4]) -> Result<(ScalarExpr, [[ScalarExpr; 4]; 4]), FormError> {
    let cof: [[ScalarExpr; 4]; 4] = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let d = det3(m, others(i), others(j));
            if (i + j) % 2 == 0 {
                d
            } else {
                -d
            }
        })
    });
    let det = (0..4).fold(ScalarExpr::zero(), |acc, j| &acc + &(&m[0][j] * &cof[0][j]));
    if det.is_zero() {
        return Err(FormError::SingularTetrad);
    }
    let inv_det = det.recip()?;
    let inv = std::array::from_fn(|i| {
        std::array::from_fn(|j| match constant_ratio(&cof[j][i], &det) {
            Some(c) => ScalarExpr::constant(c),
            None => &cof[j][i] * &inv_det,
        })
    });
    Ok((det, inv))
}

/// The frame data needed to differentiate coframe-expanded forms: the
/// tetrad `hᵃ_μ` (with `eᵃ = hᵃ_μ dx^μ`), its inverse, and the exterior
/// derivative of every coframe monomial.
#[derive(Clone, Debug)]
pub struct Frame {
    tetrad: [[ScalarExpr; 4]; 4],
    inverse: [[ScalarExpr; 4]; 4],
    det: ScalarExpr,
    /// `dx^I` expanded in the coframe, indexed by mask.
    coord_basis: Vec<Form>,
    /// `d(e^I)` in the coframe, indexed by mask.
    d_basis: Vec<Form>,
}

impl Frame {
    pub fn new(tetrad: [[ScalarExpr; 4]; 4]) -> Result<Frame, FormError> {
        let (det, inverse) = invert4(&tetrad)?;
        let dx: Vec<Form> = (0..4)
            .map(|mu| {
                let mut f = Form::zero(1);
                for a in 0..4 {
                    f.add_term(1 << a, inverse[mu][a].clone());
                }
                f
            })
            .collect();
        let coord_basis: Vec<Form> = (0u8..16)
            .map(|mask| mask_indices(mask).fold(Form::function(ScalarExpr::one()), |acc, mu| wedge(&acc, &dx[mu])))
            .collect();
        let mut frame = Frame { tetrad, inverse, det, coord_basis, d_basis: Vec::new() };
        // de^a = ∂_ν hᵃ_μ dx^ν∧dx^μ, then the graded Leibniz rule on monomials.
        let de: Vec<Form> = (0..4)
            .map(|a| {
                let mut coord = Form::zero(2);
                for mu in 0..4 {
                    for nu in 0..4 {
                        if nu == mu {
                            continue;
                        }
                        let c = frame.tetrad[a][mu].derive(nu);
                        let mask = (1u8 << nu) | (1u8 << mu);
                        let c = if wedge_sign(1 << nu, 1 << mu) < 0 { -c } else { c };
                        coord.add_term(mask, c);
                    }
                }
                frame.from_coordinate(&coord)
            })
            .collect();
        frame.d_basis = (0u8..16)
            .map(|mask| {
                let idx: Vec<usize> = mask_indices(mask).collect();
                let mut out = Form::zero((idx.len() + 1).min(4));
                if idx.len() >= 4 {
                    return out;
                }
                for (k, &a) in idx.iter().enumerate() {
                    let before = idx[..k].iter().fold(0u8, |m, b| m | (1 << b));
                    let after = idx[k + 1..].iter().fold(0u8, |m, b| m | (1 << b));
                    let term = wedge(
                        &wedge(&Form::monomial(before, ScalarExpr::one()), &de[a]),
                        &Form::monomial(after, ScalarExpr::one()),
                    );
                    let term = if k % 2 == 0 { term } else { term.negated() };
                    out = out.plus(&term);
                }
                out
            })
            .collect();
        Ok(frame)
    }

    /// The flat coframe `eᵃ = dxᵃ`.
    pub fn cartesian() -> Frame {
        let id = std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { ScalarExpr::one() } else { ScalarExpr::zero() })
        });
        Frame::new(id).expect("identity tetrad is invertible")
    }

    pub fn tetrad(&self) -> &[[ScalarExpr; 4]; 4] {
        &self.tetrad
    }

    /// `h^μ_a`, indexed `[μ][a]`.
    pub fn inverse(&self) -> &[[ScalarExpr; 4]; 4] {
        &self.inverse
    }

    pub fn det(&self) -> &ScalarExpr {
        &self.det
    }

    /// `deᵃ`.
    pub fn d_coframe(&self, a: usize) -> &Form {
        &self.d_basis[1 << a]
    }

    /// Frame derivative `X_a(f) = h^μ_a ∂_μ f`.
    pub fn frame_derivative(&self, a: usize, partials: &[ScalarExpr; 4]) -> ScalarExpr {
        (0..4).fold(ScalarExpr::zero(), |acc, mu| {
            if self.inverse[mu][a].is_zero() || partials[mu].is_zero() {
                acc
            } else {
                &acc + &(&self.inverse[mu][a] * &partials[mu])
            }
        })
    }

    /// Re-expands a form given in the coordinate basis dx^μ.
    pub fn from_coordinate<C: Coefficient + Product<ScalarExpr, Output = C>>(&self, f: &Form<C>) -> Form<C> {
        let mut out = Form::zero(f.degree());
        for (m, c) in f.terms() {
            out = out.plus(&self.coord_basis[m as usize].map(|s| c.product(s)));
        }
        out
    }

    /// Expresses a coframe form in the coordinate basis dx^μ.
    pub fn to_coordinate<C: Coefficient + Product<ScalarExpr, Output = C>>(&self, f: &Form<C>) -> Form<C> {
        let mut out = Form::zero(f.degree());
        for (m, c) in f.terms() {
            let ea = mask_indices(m).fold(Form::function(ScalarExpr::one()), |acc, a| {
                let mut e = Form::zero(1);
                for mu in 0..4 {
                    e.add_term(1 << mu, self.tetrad[a][mu].clone());
                }
                wedge(&acc, &e)
            });
            out = out.plus(&ea.map(|s| c.product(s)));
        }
        out
    }

    /// Exterior derivative of a coframe-expanded form.
    pub fn d<C: Coefficient>(&self, f: &Form<C>) -> Form<C> {
        let mut out = Form::zero((f.degree() + 1).min(4));
        if f.degree() >= 4 {
            return out;
        }
        for (m, c) in f.terms() {
            let partials: [C; 4] = std::array::from_fn(|mu| c.map_scalars(&mut |s| s.derive(mu)));
            for a in 0..4 {
                let bit = 1u8 << a;
                if m & bit != 0 {
                    continue;
                }
                let mut xa = C::zero();
                for (mu, p) in partials.iter().enumerate() {
                    let h = &self.inverse[mu][a];
                    if !h.is_zero() && !p.is_zero() {
                        xa = xa.plus(&p.scaled(h));
                    }
                }
                if xa.is_zero() {
                    continue;
                }
                let xa = if wedge_sign(bit, m) < 0 { xa.negated() } else { xa };
                out.add_term(bit | m, xa);
            }
            for (mm, s) in self.d_basis[m as usize].terms() {
                out.add_term(mm, c.scaled(s));
            }
        }
        out
    }
}

/// Exterior derivative, `d(f_I e^I)`.
pub fn ext_d<C: Coefficient>(f: &Form<C>, frame: &Frame) -> Form<C> {
    frame.d(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse, SymbolTable};

    fn p(s: &str) -> ScalarExpr {
        parse(s, &SymbolTable::default()).unwrap()
    }

    fn e(a: usize) -> Form {
        Form::coframe(a)
    }

    #[test]
    fn wedge_is_graded() {
        assert_eq!(wedge(&e(0), &e(1)), wedge(&e(1), &e(0)).negated());
        assert!(wedge(&e(2), &e(2)).is_zero());
        assert!(wedge(&e(0), &Form::<ScalarExpr>::zero(2)).is_zero());
    }

    #[test]
    fn hodge_of_one_is_volume() {
        assert_eq!(hodge(&Form::function(ScalarExpr::one())), Form::volume());
    }

    #[test]
    fn hodge_duality_identity() {
        for a in 0..4 {
            for b in 0..4 {
                let lhs = wedge(&hodge(&e(b)), &e(a));
                let rhs = Form::volume().scaled(&ScalarExpr::int(-eta(a, b)));
                assert_eq!(lhs, rhs, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn interior_duality_and_nilpotency() {
        for a in 0..4 {
            for b in 0..4 {
                let want = if a == b { Form::function(ScalarExpr::one()) } else { Form::zero(0) };
                assert_eq!(interior(b, &e(a)), want);
            }
        }
        assert_eq!(interior(0, &wedge(&e(0), &e(1))), e(1));
        let f = wedge(&wedge(&e(0), &e(2)), &e(3));
        assert!(interior(2, &interior(2, &f)).is_zero());
    }

    #[test]
    fn cosmological_coframe_derivative() {
        let a = p("t^2");
        let z = ScalarExpr::zero;
        let one = ScalarExpr::one;
        let frame = Frame::new([
            [one(), z(), z(), z()],
            [z(), a.clone(), z(), z()],
            [z(), z(), one(), z()],
            [z(), z(), z(), one()],
        ])
        .unwrap();
        // d(a dx) = a' dt∧dx = (a'/a) e⁰∧e¹
        let want = Form::scalar_monomial(0b11, &a.derive(0) * &a.recip().unwrap());
        assert_eq!(*frame.d_coframe(1), want);
        assert!(frame.d_coframe(0).is_zero());
    }

    #[test]
    fn non_monomial_scale_factor_agrees_numerically() {
        use crate::expr::{Chart, SampleSpec, Sampler};
        let a = p("t^2 + 1");
        let z = ScalarExpr::zero;
        let one = ScalarExpr::one;
        let frame = Frame::new([
            [one(), z(), z(), z()],
            [z(), a.clone(), z(), z()],
            [z(), z(), one(), z()],
            [z(), z(), z(), one()],
        ])
        .unwrap();
        assert_eq!(frame.inverse()[0][0], ScalarExpr::one());
        let got = frame.d_coframe(1).comp_or_zero(0b11);
        let want = &a.derive(0) * &a.recip().unwrap();
        let s = Sampler::for_exprs(SampleSpec::default(), &Chart::default(), [&got, &want]);
        assert!(s.compare(&[(&got, &want)]).unwrap().equal);
    }

    #[test]
    fn coordinate_round_trip() {
        let z = ScalarExpr::zero;
        let one = ScalarExpr::one;
        let frame = Frame::new([
            [one(), p("x"), z(), z()],
            [z(), one(), z(), z()],
            [z(), p("t*y"), one(), z()],
            [z(), z(), z(), p("2")],
        ])
        .unwrap();
        let f = wedge(&e(0), &e(2)).scaled(&p("x*z")).plus(&wedge(&e(1), &e(3)));
        assert_eq!(frame.from_coordinate(&frame.to_coordinate(&f)), f);
        let g = Form::scalar_monomial(0b0101, p("t"));
        assert!(frame.d(&frame.d(&g)).is_zero());
    }
}
