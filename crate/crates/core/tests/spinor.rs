use madirac::check::CheckContext;
use madirac::clifford::gamma;
use madirac::expr::{Cx, ScalarExpr};
use madirac::forms::{hodge, wedge, Form};
use madirac::geometry::{random_geometry, ConnectionComponents, Geometry};
use madirac::spinor::*;

fn x(mu: usize) -> ScalarExpr {
    ScalarExpr::coord(mu)
}

/// A non-constant test spinor with polynomial components.
fn sample_spinor() -> SpinorField {
    let i = ScalarExpr::i();
    SpinorField::new([
        &ScalarExpr::one() + &(&x(0) * &x(1)),
        &i * &x(2),
        &(&x(3) * &x(3)) - &x(0),
        &ScalarExpr::int(2) + &(&i * &x(1)),
    ])
}

#[test]
fn variational_operator_matches_closed_form() {
    let c = CouplingConstants::symbolic();
    let psi = sample_spinor();
    let m = ScalarExpr::real_param("m");
    for seed in 0..2 {
        let geom = random_geometry(seed).geometry;
        let inv = geom.invariants();
        let var = variational_dirac_residual(&psi, &m, &c, &geom, &inv);
        let closed = closed_form_residual(&psi, &m, &c, &geom, &inv);
        assert_eq!(var, closed, "seed {seed}");
    }
}

#[test]
fn mismatch_matches_channel_prediction() {
    let c = CouplingConstants::symbolic();
    let psi = sample_spinor();
    let m = ScalarExpr::real_param("m");
    for seed in 2..4 {
        let geom = random_geometry(seed).geometry;
        let inv = geom.invariants();
        let delta = variational_dirac_residual(&psi, &m, &c, &geom, &inv)
            .minus(&direct_dirac_residual(&psi, &m, &c, &geom, &inv));
        assert_eq!(delta, predicted_mismatch(&psi, &c, &inv), "seed {seed}");
    }
}

#[test]
fn operators_agree_on_constraint_surface() {
    let c = CouplingConstants::constrained_symbolic();
    let psi = sample_spinor();
    let m = ScalarExpr::ratio(3, 2);
    for seed in 4..6 {
        let geom = random_geometry(seed).geometry;
        let inv = geom.invariants();
        assert_eq!(
            variational_dirac_residual(&psi, &m, &c, &geom, &inv),
            direct_dirac_residual(&psi, &m, &c, &geom, &inv)
        );
    }
}

/// Metric-compatible connection with `ω¹₂ = k e²`, `ω²₁ = −k e²`.
fn torsion_line() -> Geometry {
    let k = ScalarExpr::real_param("k");
    let mut conn: ConnectionComponents = Default::default();
    conn[1][2][2] = k.clone();
    conn[2][1][2] = -&k;
    let tetrad = std::array::from_fn(|m| std::array::from_fn(|a| ScalarExpr::int((m == a) as i64)));
    Geometry::new(Default::default(), tetrad, &conn).unwrap()
}

#[test]
fn torsion_line_mismatch_is_half_torsion_trace() {
    let geom = torsion_line();
    let inv = geom.invariants();
    let k = ScalarExpr::real_param("k");
    assert!(inv.traces.q.is_zero());
    assert!(inv.traces.p.is_zero());
    assert_eq!(inv.traces.t, Form::monomial(0b0010, -&k));
    let c = CouplingConstants::zero();
    let psi = sample_spinor();
    let m = ScalarExpr::one();
    let delta =
        variational_dirac_residual(&psi, &m, &c, &geom, &inv).minus(&direct_dirac_residual(&psi, &m, &c, &geom, &inv));
    // i*γ∧(−½T)ψ written out by hand: −½T = (k/2) e¹.
    let half_k = k.scale(&Cx::from_ratio(1, 2));
    let mut gamma_f = Form::zero(1);
    for a in 0..4 {
        gamma_f.add_term(1 << a, gamma(a));
    }
    let expected =
        wedge(&hodge(&gamma_f), &Form::monomial(0b0010, psi.components.clone())).scaled(&(&ScalarExpr::i() * &half_k));
    assert!(!delta.is_zero());
    assert_eq!(delta, expected);
}

#[test]
fn derived_constraints_match_known_family() {
    let s = derive_constraints().unwrap();
    assert_eq!(s.equations.len(), 9);
    let c = s.couplings();
    let expected = CouplingConstants::constrained_symbolic();
    assert_eq!(c.a, expected.a);
    assert_eq!(c.b, expected.b);
    assert_eq!(c.charge, ScalarExpr::real_param("q"));
    assert_eq!(s.free_parameters(), ["A1", "A2", "A3", "A4", "B1", "B2", "B3", "B4", "q"]);
    // Oracle: a1 − a1* − 1 = 2a1 read off by hand.
    let a1 = ScalarExpr::complex_param("a1");
    let q_i = &(&a1 - &a1.conj()) - &ScalarExpr::one();
    assert!(s.equations.iter().any(|e| e.lhs == q_i && e.rhs == a1.scale(&Cx::from_int(2))));
}

#[test]
fn lagrangian_is_real_for_any_couplings() {
    let c = CouplingConstants::symbolic();
    let psi = sample_spinor();
    let m = ScalarExpr::real_param("m");
    let geom = random_geometry(7).geometry;
    let inv = geom.invariants();
    let l = lagrangian_density(&psi, &m, &c, &geom, &inv);
    assert_eq!(l, l.conj());
}

#[test]
fn hermiticity_density_real_exactly_on_constraint_surface() {
    let psi = sample_spinor();
    let m = ScalarExpr::one();
    let geom = random_geometry(8).geometry;
    let inv = geom.invariants();
    let on = CouplingConstants::constrained_symbolic();
    let h = hermiticity_density(&psi, &m, &on, &geom, &inv);
    assert_eq!(h, h.conj());
    let off = CouplingConstants::zero();
    let h = hermiticity_density(&psi, &m, &off, &geom, &inv);
    assert_ne!(h, h.conj());
}

#[test]
fn flat_kinetic_terms_differ_by_current_divergence() {
    let geom = Geometry::flat(Default::default());
    let inv = geom.invariants();
    let psi = sample_spinor();
    let (first, second) = kinetic_terms(&psi, &CouplingConstants::zero(), &geom, &inv);
    let current = wedge(&psi.adjoint_form(), &wedge(&hodge(&gamma_form()), &psi.form()));
    assert_eq!(second.minus(&first), geom.d(&current));
}

#[test]
fn spin_transformations_are_covariant() {
    let geom = random_geometry(9).geometry;
    let inv = geom.invariants();
    let c = CouplingConstants::constrained_symbolic();
    let omega = spinor_connection(&c, &geom, &inv);
    let psi = sample_spinor();
    let ctx = CheckContext::default();
    for (a, b, theta) in [(1, 2, &x(0) * &x(3)), (0, 1, x(2)), (0, 3, &x(1) + &x(0))] {
        let (s, s_inv) = bivector_exp(a, b, &theta);
        let out = covariance_check("cov", &omega, &s, &s_inv, &psi, geom.frame(), &ctx).unwrap();
        assert!(out.passed(), "{out:?}");
    }
}

#[test]
fn covariance_fails_without_inhomogeneous_term() {
    let geom = random_geometry(10).geometry;
    let inv = geom.invariants();
    let omega = spinor_connection(&CouplingConstants::zero(), &geom, &inv);
    let (s, s_inv) = bivector_exp(1, 2, &x(0));
    let psi = sample_spinor();
    // Conjugating alone, without S dS⁻¹, breaks covariance.
    let wrong = wedge(&wedge(&Form::function(s.clone()), &omega), &Form::function(s_inv.clone()));
    let lhs = cov_d_spinor(&wedge(&Form::function(s.clone()), &psi.form()), &wrong, geom.frame());
    let rhs = wedge(&Form::function(s.clone()), &cov_d_spinor(&psi.form(), &omega, geom.frame()));
    let out = madirac::check::compare_forms("cov", &[(lhs, rhs)], &CheckContext::default()).unwrap();
    assert!(!out.passed());
}

#[test]
fn mass_split_from_b4() {
    let mut c = CouplingConstants::zero();
    c.b[3] = ScalarExpr::ratio(1, 20);
    let split = mass_split(&Cx::one(), &c).unwrap();
    assert!((split.gap() - 0.4).abs() < 1e-12);
    let masses: Vec<_> = split.chiral.iter().map(|m| m.mass.to_complex64()).collect();
    assert!(masses.iter().all(|m| (m.re - 1.0).abs() < 1e-12 && (m.im.abs() - 0.2).abs() < 1e-12));
}
