use madirac::check::CheckContext;
use madirac::clifford::eta;
use madirac::expr::{Chart, ScalarExpr};
use madirac::forms::Form;
use madirac::geometry::{
    bianchi_check, decomposition_check, hodge_identity_check, random_geometry, ConnectionComponents, Geometry,
};
use proptest::prelude::*;

fn identity() -> [[ScalarExpr; 4]; 4] {
    std::array::from_fn(|i| std::array::from_fn(|j| ScalarExpr::int((i == j) as i64)))
}

fn one_form(c: [ScalarExpr; 4]) -> Form {
    let mut f = Form::zero(1);
    for (a, v) in c.into_iter().enumerate() {
        f.add_term(1 << a, v);
    }
    f
}

fn assert_all_canonical(seed: u64) {
    let geom = random_geometry(seed).geometry;
    let inv = geom.invariants();
    let ctx = CheckContext::new(geom.chart().clone(), seed);
    let mut checks = bianchi_check(&geom, &inv, &ctx).unwrap();
    checks.extend(hodge_identity_check(&geom, &inv, &ctx).unwrap());
    checks.extend(decomposition_check(&geom, &inv, &ctx).unwrap());
    assert!(checks.len() >= 12);
    for c in checks {
        assert!(c.passed(), "seed {seed}: {} {}", c.check, c.detail);
        assert_eq!(c.policy, Some(madirac::expr::PolicyKind::Canonical), "seed {seed}: {}", c.check);
    }
}

#[test]
fn identities_hold_on_random_geometries() {
    for seed in 0..20 {
        assert_all_canonical(seed);
    }
}

#[test]
fn random_geometries_are_reproducible_and_non_degenerate() {
    let a = random_geometry(7).geometry;
    let b = random_geometry(7).geometry;
    assert_eq!(a.frame().tetrad(), b.frame().tetrad());
    assert_eq!(a.connection(), b.connection());
    let nontrivial = (0..20).filter(|s| {
        let inv = random_geometry(*s).geometry.invariants();
        !inv.nonmetricity.is_zero() && !inv.torsion.is_zero()
    });
    assert!(nontrivial.count() >= 15);
}

fn small() -> impl Strategy<Value = i64> {
    -3i64..=3
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    // Component oracle on a flat coframe with a constant connection:
    // Q_c = Σ_a η_aa Q_aa,c,  P_b = Σ_a η_aa Q_ab,a,  T_b = Σ_a (ω^a_b,a − ω^a_a,b).
    #[test]
    fn traces_match_component_oracle(w in proptest::collection::vec(small(), 64)) {
        let at = |a: usize, b: usize, c: usize| w[16 * a + 4 * b + c];
        let conn: ConnectionComponents =
            std::array::from_fn(|a| std::array::from_fn(|b| std::array::from_fn(|c| ScalarExpr::int(at(a, b, c)))));
        let geom = Geometry::new(Chart::default(), identity(), &conn).unwrap();
        let tr = geom.traces();

        // 2·Q_ab,c, with ω_ab = η_aa ω^a_b.
        let q2 = |a: usize, b: usize, c: usize| eta(a, a) * at(a, b, c) + eta(b, b) * at(b, a, c);
        let q = std::array::from_fn(|c| ScalarExpr::ratio((0..4).map(|a| eta(a, a) * q2(a, a, c)).sum(), 2));
        let p = std::array::from_fn(|b| ScalarExpr::ratio((0..4).map(|a| eta(a, a) * q2(a, b, a)).sum(), 2));
        let t = std::array::from_fn(|b| ScalarExpr::int((0..4).map(|a| at(a, b, a) - at(a, a, b)).sum()));
        prop_assert_eq!(tr.q, one_form(q));
        prop_assert_eq!(tr.p, one_form(p));
        prop_assert_eq!(tr.t, one_form(t));
    }

    #[test]
    fn levi_civita_part_is_riemannian(seed in 0u64..200) {
        let r = random_geometry(seed).geometry.riemannian();
        let inv = r.invariants();
        prop_assert!(inv.nonmetricity.is_zero());
        prop_assert!(inv.torsion.is_zero());
    }
}

#[test]
fn weyl_connection_traces() {
    let phi = ScalarExpr::real_param("phi");
    let mut conn: ConnectionComponents = Default::default();
    for a in 0..4 {
        conn[a][a][0] = phi.clone();
    }
    let geom = Geometry::new(Chart::default(), identity(), &conn).unwrap();
    let tr = geom.traces();
    let dt = |k: i64| Form::monomial(1, &ScalarExpr::int(k) * &phi);
    assert_eq!(tr.q, dt(4));
    assert_eq!(tr.p, dt(1));
    assert_eq!(tr.t, dt(-3));
}

#[test]
fn flat_geometry_has_no_invariants() {
    let inv = Geometry::flat(Chart::default()).invariants();
    assert!(inv.nonmetricity.is_zero());
    assert!(inv.torsion.is_zero());
    assert!(inv.curvature.is_zero());
}

#[test]
fn singular_tetrad_is_rejected() {
    let mut tetrad = identity();
    // The default domain is [1/2, 3/2]⁴, so x − 1 changes sign inside it.
    tetrad[1][1] = &ScalarExpr::coord(1) - &ScalarExpr::one();
    assert!(Geometry::new(Chart::default(), tetrad, &Default::default()).is_err());
}
