//! The generalized spinor connection and the Dirac operators built on it.
//!
//! The variational operator is obtained from the Lagrangian 4-form
//! `L = (i/2)[ψ̄ *γ∧Dψ + Dψ̄∧*γψ] + i m ψ̄ψ *1` by writing it as
//! `L = ψ̄·A + dψ̄∧B` and taking the Euler-Lagrange expression `A − dB`
//! (the total derivative `d(ψ̄B)` is what gets discarded).

use super::{CouplingConstants, RowSpinor, Spinor, SpinorField};
use crate::clifford::{gamma, gamma5, sigma, Clifford};
use crate::expr::ScalarExpr;
use crate::forms::{hodge, wedge, Coefficient, Form, Frame, VOLUME};
use crate::geometry::{Geometry, GeometryInvariants};

/// The geometric 1-forms a Clifford channel can multiply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Channel {
    Q,
    P,
    T,
    /// The coframe γ = γ_a eᵃ.
    Coframe,
    /// The Maxwell potential A.
    Potential,
}

impl Channel {
    pub fn label(self) -> &'static str {
        match self {
            Channel::Q => "Q",
            Channel::P => "P",
            Channel::T => "T",
            Channel::Coframe => "γ",
            Channel::Potential => "A",
        }
    }
}

fn i() -> ScalarExpr {
    ScalarExpr::i()
}

fn half() -> ScalarExpr {
    ScalarExpr::ratio(1, 2)
}

/// `x·I + y·γ₅`.
fn mix(x: &ScalarExpr, y: &ScalarExpr) -> Clifford {
    &Clifford::scalar(x.clone()) + &gamma5().scale(y)
}

/// `γ = γ_a eᵃ`.
pub fn gamma_form() -> Form<Clifford> {
    let mut f = Form::zero(1);
    for a in 0..4 {
        f.add_term(1 << a, gamma(a));
    }
    f
}

/// `½σ_ab ω^ab`.
fn spin_part(geom: &Geometry) -> Form<Clifford> {
    let w_up = geom.connection_upper();
    let mut out = Form::zero(1);
    for a in 0..4 {
        for b in 0..4 {
            if a != b {
                out = out.plus(&w_up.get(&[a, b]).times_clifford(&sigma(a, b).scale(&half())));
            }
        }
    }
    out
}

/// Channel coefficients of Ω beyond the spin part, for couplings `c`.
fn direct_channels(c: &CouplingConstants) -> Vec<(Channel, Clifford)> {
    vec![
        (Channel::Q, mix(&c.a[0], &c.a[1])),
        (Channel::P, mix(&c.a[2], &c.a[3])),
        (Channel::T, mix(&c.b[0], &c.b[1])),
        (Channel::Coframe, mix(&c.b[2], &-&c.b[3])),
        (Channel::Potential, Clifford::scalar(&i() * &c.charge)),
    ]
}

/// Channel coefficients of the variational operator as derived in closed
/// form: `½[(a₁−a₁*−1) + (a₂+a₂*)γ₅]` on Q, and so on.
fn closed_form_channels(c: &CouplingConstants) -> Vec<(Channel, Clifford)> {
    let one = ScalarExpr::one();
    let re2 = |z: &ScalarExpr| z + &z.conj();
    let im2 = |z: &ScalarExpr| z - &z.conj();
    let iq = &i() * &c.charge;
    vec![
        (Channel::Q, mix(&(&im2(&c.a[0]) - &one), &re2(&c.a[1])).scale(&half())),
        (Channel::P, mix(&(&im2(&c.a[2]) + &one), &re2(&c.a[3])).scale(&half())),
        (Channel::T, mix(&(&im2(&c.b[0]) - &one), &re2(&c.b[1])).scale(&half())),
        (Channel::Coframe, mix(&re2(&c.b[2]), &-&re2(&c.b[3])).scale(&half())),
        (Channel::Potential, Clifford::scalar(im2(&iq)).scale(&half())),
    ]
}

/// Channel coefficients of the predicted mismatch `variational − direct`,
/// which acts as `i*γ∧(Σ coefficient·form)ψ`. All vanish exactly on the
/// constraint surface.
pub fn mismatch_channels(c: &CouplingConstants) -> Vec<(Channel, Clifford)> {
    closed_form_channels(c).into_iter().zip(direct_channels(c)).map(|((ch, v), (_, d))| (ch, &v - &d)).collect()
}

fn channel_form(ch: Channel, c: &CouplingConstants, inv: &GeometryInvariants) -> Form {
    match ch {
        Channel::Q => inv.traces.q.clone(),
        Channel::P => inv.traces.p.clone(),
        Channel::T => inv.traces.t.clone(),
        Channel::Coframe => unreachable!("coframe channel is Clifford-valued"),
        Channel::Potential => c.potential.clone(),
    }
}

fn assemble(channels: &[(Channel, Clifford)], c: &CouplingConstants, inv: &GeometryInvariants) -> Form<Clifford> {
    let mut out = Form::zero(1);
    for (ch, coeff) in channels {
        if coeff.is_zero() {
            continue;
        }
        let term = match ch {
            Channel::Coframe => gamma_form().map(|g| coeff * g),
            _ => channel_form(*ch, c, inv).times_clifford(coeff),
        };
        out = out.plus(&term);
    }
    out
}

/// `Ω = ½σ_ab ω^ab + (a₁I+a₂γ₅)Q + (a₃I+a₄γ₅)P + (b₁I+b₂γ₅)T + (b₃I−b₄γ₅)γ + iqA`.
pub fn spinor_connection(c: &CouplingConstants, geom: &Geometry, inv: &GeometryInvariants) -> Form<Clifford> {
    spin_part(geom).plus(&assemble(&direct_channels(c), c, inv))
}

/// `γ₀Ω†γ₀`, coefficient by coefficient.
pub fn adjoint_connection(omega: &Form<Clifford>) -> Form<Clifford> {
    omega.map(Clifford::dirac_conjugate)
}

/// `Dψ = dψ + Ωψ`.
pub fn cov_d_spinor(psi: &Form<Spinor>, omega: &Form<Clifford>, frame: &Frame) -> Form<Spinor> {
    frame.d(psi).plus(&wedge(omega, psi))
}

/// `Dψ̄ = dψ̄ − ψ̄ Ω̄` with `Ω̄ = γ₀Ω†γ₀`.
pub fn cov_d_adjoint(psibar: &Form<RowSpinor>, omega_bar: &Form<Clifford>, frame: &Frame) -> Form<RowSpinor> {
    frame.d(psibar).minus(&wedge(psibar, omega_bar))
}

fn mass_term(psi: &SpinorField, m: &ScalarExpr) -> Form<Spinor> {
    Form::monomial(VOLUME, psi.components.scaled(&(&i() * m)))
}

/// Shared pieces of every operator for one (geometry, couplings) pair.
struct Setup {
    omega: Form<Clifford>,
    star_gamma: Form<Clifford>,
}

impl Setup {
    fn new(c: &CouplingConstants, geom: &Geometry, inv: &GeometryInvariants) -> Self {
        Setup { omega: spinor_connection(c, geom, inv), star_gamma: hodge(&gamma_form()) }
    }
}

/// `i*γ∧Dψ + i m ψ *1`.
pub fn direct_dirac_residual(
    psi: &SpinorField,
    m: &ScalarExpr,
    c: &CouplingConstants,
    geom: &Geometry,
    inv: &GeometryInvariants,
) -> Form<Spinor> {
    let s = Setup::new(c, geom, inv);
    let dpsi = cov_d_spinor(&psi.form(), &s.omega, geom.frame());
    wedge(&s.star_gamma, &dpsi).scaled(&i()).plus(&mass_term(psi, m))
}

/// The ψ̄-variation `A − dB` of the symmetric Lagrangian.
pub fn variational_dirac_residual(
    psi: &SpinorField,
    m: &ScalarExpr,
    c: &CouplingConstants,
    geom: &Geometry,
    inv: &GeometryInvariants,
) -> Form<Spinor> {
    let s = Setup::new(c, geom, inv);
    let frame = geom.frame();
    let ih = &i() * &half();
    let psi_f = psi.form();
    let dpsi = cov_d_spinor(&psi_f, &s.omega, frame);
    let omega_bar = adjoint_connection(&s.omega);
    let sg_psi = wedge(&s.star_gamma, &psi_f);
    // L = ψ̄·A + dψ̄∧B with B = (i/2)*γψ.
    let a = wedge(&s.star_gamma, &dpsi).minus(&wedge(&omega_bar, &sg_psi)).scaled(&ih).plus(&mass_term(psi, m));
    let b = sg_psi.scaled(&ih);
    a.minus(&frame.d(&b))
}

/// The closed-form variational operator
/// `i*γ∧{d + ½σ_ab ω^ab + ½[(a₁−a₁*−1)I + (a₂+a₂*)γ₅]Q + … }ψ + i m ψ *1`.
pub fn closed_form_residual(
    psi: &SpinorField,
    m: &ScalarExpr,
    c: &CouplingConstants,
    geom: &Geometry,
    inv: &GeometryInvariants,
) -> Form<Spinor> {
    let omega = spin_part(geom).plus(&assemble(&closed_form_channels(c), c, inv));
    let dpsi = cov_d_spinor(&psi.form(), &omega, geom.frame());
    wedge(&hodge(&gamma_form()), &dpsi).scaled(&i()).plus(&mass_term(psi, m))
}

/// The two kinetic 4-forms `ψ̄ *γ∧Dψ` and `Dψ̄∧*γψ`.
pub fn kinetic_terms(
    psi: &SpinorField,
    c: &CouplingConstants,
    geom: &Geometry,
    inv: &GeometryInvariants,
) -> (Form, Form) {
    let s = Setup::new(c, geom, inv);
    let frame = geom.frame();
    let psi_f = psi.form();
    let bar = psi.adjoint_form();
    let dpsi = cov_d_spinor(&psi_f, &s.omega, frame);
    let dbar = cov_d_adjoint(&bar, &adjoint_connection(&s.omega), frame);
    let first = wedge(&bar, &wedge(&s.star_gamma, &dpsi));
    let second = wedge(&dbar, &wedge(&s.star_gamma, &psi_f));
    (first, second)
}

fn mass_density(psi: &SpinorField, m: &ScalarExpr) -> Form {
    wedge(&psi.adjoint_form(), &mass_term(psi, m))
}

/// `(i/2)[ψ̄ *γ∧Dψ + Dψ̄∧*γψ] + i m ψ̄ψ *1`.
pub fn lagrangian_density(
    psi: &SpinorField,
    m: &ScalarExpr,
    c: &CouplingConstants,
    geom: &Geometry,
    inv: &GeometryInvariants,
) -> Form {
    let (k1, k2) = kinetic_terms(psi, c, geom, inv);
    k1.plus(&k2).scaled(&(&i() * &half())).plus(&mass_density(psi, m))
}

/// `i ψ̄ *γ∧Dψ + i m ψ̄ψ *1 + (i/2) d(ψ̄ *γ ψ)`: the one-sided density with
/// the imaginary total derivative restored. It is real exactly when the
/// direct and variational operators agree.
pub fn hermiticity_density(
    psi: &SpinorField,
    m: &ScalarExpr,
    c: &CouplingConstants,
    geom: &Geometry,
    inv: &GeometryInvariants,
) -> Form {
    let (k1, _) = kinetic_terms(psi, c, geom, inv);
    let current = wedge(&psi.adjoint_form(), &wedge(&hodge(&gamma_form()), &psi.form()));
    k1.scaled(&i()).plus(&mass_density(psi, m)).plus(&geom.frame().d(&current).scaled(&(&i() * &half())))
}

/// `i*γ∧Mψ` with `M` assembled from [`mismatch_channels`]: the predicted
/// value of `variational − direct`.
pub fn predicted_mismatch(psi: &SpinorField, c: &CouplingConstants, inv: &GeometryInvariants) -> Form<Spinor> {
    let m = assemble(&mismatch_channels(c), c, inv);
    wedge(&hodge(&gamma_form()), &wedge(&m, &psi.form())).scaled(&i())
}
