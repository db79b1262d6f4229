use madirac::clifford::eta;
use madirac::expr::ScalarExpr;
use madirac::forms::{ext_d, grade, hodge, interior, wedge, Form, Frame};
use madirac::geometry::random_geometry;
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = ScalarExpr> {
    proptest::collection::vec((-3i64..=3, 0usize..4, 0usize..3), 1..3).prop_map(|terms| {
        terms.into_iter().fold(ScalarExpr::zero(), |acc, (c, x, pow)| {
            let mono = (0..pow).fold(ScalarExpr::int(c), |m, _| &m * &ScalarExpr::coord(x));
            &acc + &mono
        })
    })
}

fn form(degree: usize) -> impl Strategy<Value = Form> {
    let masks: Vec<u8> = (0u8..16).filter(|m| grade(*m) == degree).collect();
    proptest::collection::vec(coeff(), masks.len()).prop_map(move |cs| {
        let mut f = Form::zero(degree);
        for (m, c) in masks.iter().zip(cs) {
            f.add_term(*m, c);
        }
        f
    })
}

fn any_form() -> impl Strategy<Value = Form> {
    (0usize..=4).prop_flat_map(form)
}

fn frame() -> impl Strategy<Value = Frame> {
    (0u64..40).prop_map(|s| random_geometry(s).geometry.frame().clone())
}

fn sign(p: usize) -> ScalarExpr {
    ScalarExpr::int(if p.is_multiple_of(2) { 1 } else { -1 })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn wedge_is_associative(f in any_form(), g in form(1), h in any_form()) {
        prop_assume!(f.degree() + h.degree() <= 3);
        prop_assert_eq!(wedge(&wedge(&f, &g), &h), wedge(&f, &wedge(&g, &h)));
    }

    #[test]
    fn wedge_is_graded_commutative(f in any_form(), g in any_form()) {
        let s = sign(f.degree() * g.degree());
        prop_assert_eq!(wedge(&f, &g), wedge(&g, &f).scaled(&s));
    }

    #[test]
    fn d_squared_vanishes(f in form(1), fr in frame()) {
        prop_assert!(ext_d(&ext_d(&f, &fr), &fr).is_zero());
    }

    #[test]
    fn d_squared_vanishes_on_functions(c in coeff(), fr in frame()) {
        prop_assert!(ext_d(&ext_d(&Form::function(c), &fr), &fr).is_zero());
    }

    #[test]
    fn d_obeys_leibniz(f in form(1), g in form(1), fr in frame()) {
        let lhs = ext_d(&wedge(&f, &g), &fr);
        let rhs = wedge(&ext_d(&f, &fr), &g).plus(&wedge(&f, &ext_d(&g, &fr)).scaled(&sign(1)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn double_hodge_sign(f in any_form()) {
        // Lorentzian signature: ** = (−1)^{p+1} on p-forms.
        let p = f.degree();
        prop_assert_eq!(hodge(&hodge(&f)), f.scaled(&sign(p + 1)));
    }

    #[test]
    fn interior_is_an_antiderivation(f in any_form(), g in any_form(), a in 0usize..4) {
        prop_assume!(f.degree() + g.degree() <= 4 && f.degree() + g.degree() > 0);
        let lhs = interior(a, &wedge(&f, &g));
        let mut rhs = wedge(&f, &interior(a, &g)).scaled(&sign(f.degree()));
        if f.degree() > 0 {
            rhs = wedge(&interior(a, &f), &g).plus(&rhs);
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn frame_round_trips_coordinate_components(f in form(2), fr in frame()) {
        prop_assert_eq!(fr.from_coordinate(&fr.to_coordinate(&f)), f);
    }
}

#[test]
fn hodge_pairs_coframe_with_metric() {
    for a in 0..4 {
        for b in 0..4 {
            let lhs = wedge(&hodge(&Form::coframe(b)), &Form::coframe(a));
            let want = Form::volume().scaled(&ScalarExpr::int(-eta(a, b)));
            assert_eq!(lhs, want, "({a},{b})");
        }
    }
    assert_eq!(hodge(&Form::function(ScalarExpr::one())), Form::volume());
}

#[test]
fn interior_of_coframe_is_kronecker() {
    for a in 0..4 {
        for b in 0..4 {
            let i = interior(a, &Form::coframe(b));
            let want = if a == b { ScalarExpr::one() } else { ScalarExpr::zero() };
            assert_eq!(i.comp_or_zero(0), want);
        }
    }
}

#[test]
fn cartesian_d_of_coordinate_is_coframe() {
    let fr = Frame::cartesian();
    for mu in 0..4 {
        assert_eq!(ext_d(&Form::function(ScalarExpr::coord(mu)), &fr), Form::coframe(mu));
    }
}
