use madirac::expr::{parse, Chart, ParamKind, ParamValues, ScalarExpr, SymbolTable};
use num_complex::Complex64;
use proptest::prelude::*;

fn symbols() -> SymbolTable {
    SymbolTable::new(Chart::default()).with_param("k", ParamKind::Real).with_param("w", ParamKind::Complex)
}

fn leaf() -> impl Strategy<Value = ScalarExpr> {
    prop_oneof![
        (0usize..4).prop_map(ScalarExpr::coord),
        (-5i64..=5).prop_map(ScalarExpr::int),
        (-5i64..=5, 1i64..=4).prop_map(|(n, d)| ScalarExpr::ratio(n, d)),
        Just(ScalarExpr::i()),
        Just(ScalarExpr::real_param("k")),
        Just(ScalarExpr::complex_param("w")),
    ]
}

/// Random expressions in the function class: polynomials with sin/cos/exp
/// of polynomial arguments.
fn expr() -> impl Strategy<Value = ScalarExpr> {
    leaf().prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| &a + &b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| &a - &b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| &a * &b),
            inner.clone().prop_map(ScalarExpr::sin),
            inner.clone().prop_map(ScalarExpr::cos),
            inner.prop_map(|a| ScalarExpr::exp(a.scale(&madirac::expr::Cx::from_ratio(1, 4)))),
        ]
    })
}

fn params() -> ParamValues {
    let mut p = ParamValues::new();
    p.insert("k".into(), Complex64::new(0.7, 0.0));
    p.insert("w".into(), Complex64::new(-0.3, 0.4));
    p
}

const POINT: [f64; 4] = [0.8, 1.1, 0.6, 1.3];

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn print_parse_round_trip(e in expr()) {
        let syms = symbols();
        let text = e.to_text(&syms.chart);
        prop_assert_eq!(parse(&text, &syms).unwrap(), e);
    }

    #[test]
    fn arithmetic_agrees_with_evaluation(a in expr(), b in expr()) {
        let p = params();
        let (va, vb) = (a.eval(&POINT, &p).unwrap(), b.eval(&POINT, &p).unwrap());
        prop_assert!(close((&a + &b).eval(&POINT, &p).unwrap(), va + vb, 1e-9));
        prop_assert!(close((&a * &b).eval(&POINT, &p).unwrap(), va * vb, 1e-9));
        prop_assert!(close(a.conj().eval(&POINT, &p).unwrap(), va.conj(), 1e-9));
    }

    #[test]
    fn derivative_matches_central_difference(e in expr(), mu in 0usize..4) {
        let p = params();
        let h = 1e-5;
        let (mut lo, mut hi) = (POINT, POINT);
        lo[mu] -= h;
        hi[mu] += h;
        let fd = (e.eval(&hi, &p).unwrap() - e.eval(&lo, &p).unwrap()) / (2.0 * h);
        let exact = e.derive(mu).eval(&POINT, &p).unwrap();
        prop_assert!(close(exact, fd, 1e-4), "{} vs {}", exact, fd);
    }

    #[test]
    fn product_rule_is_exact(a in expr(), b in expr(), mu in 0usize..4) {
        let lhs = (&a * &b).derive(mu);
        let rhs = &(&a.derive(mu) * &b) + &(&a * &b.derive(mu));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn conjugation_is_an_involution(a in expr(), b in expr()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }

    #[test]
    fn addition_is_commutative_and_cancels(a in expr(), b in expr()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) - &b, a);
    }
}

#[test]
fn rational_function_derivative() {
    let syms = symbols();
    let e = parse("1/(1 + x^2)", &syms).unwrap();
    let d = e.derive(1);
    let want = parse("-2*x/(1 + x^2)^2", &syms).unwrap();
    let p = params();
    for x in [0.3, 0.9, 1.7] {
        let pt = [0.0, x, 0.0, 0.0];
        assert!(close(d.eval(&pt, &p).unwrap(), want.eval(&pt, &p).unwrap(), 1e-12));
    }
}
