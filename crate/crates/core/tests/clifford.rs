use madirac::clifford::{basis_decompose, eta, gamma, gamma5, sigma, verify_commutator_table, BasisElement, Clifford};
use madirac::expr::{Cx, ScalarExpr};
use nalgebra::{Matrix4, Schur};
use num_complex::Complex64;
use proptest::prelude::*;

fn numeric(c: &Clifford) -> Matrix4<Complex64> {
    Matrix4::from_fn(|i, j| c.entry(i, j).as_constant().expect("constant").to_complex64())
}

fn small_cx() -> impl Strategy<Value = Cx> {
    (-4i64..=4, -4i64..=4, 1i64..=3)
        .prop_map(|(re, im, d)| &Cx::from_ratio(re, d) + &(&Cx::i() * &Cx::from_ratio(im, d)))
}

fn matrix() -> impl Strategy<Value = Clifford> {
    proptest::collection::vec(small_cx(), 16)
        .prop_map(|v| Clifford::from_cx(std::array::from_fn(|i| std::array::from_fn(|j| v[4 * i + j].clone()))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn decomposition_round_trips(m in matrix()) {
        prop_assert_eq!(basis_decompose(&m).reconstruct(), m);
    }

    #[test]
    fn decomposition_is_linear(a in matrix(), b in matrix(), c in small_cx()) {
        let lhs = basis_decompose(&(&a + &b.scale_cx(&c)));
        let (da, db) = (basis_decompose(&a), basis_decompose(&b));
        for e in BasisElement::ALL {
            let want = da.get(e) + &db.get(e).scale(&c);
            prop_assert_eq!(lhs.get(e), &want);
        }
    }

    #[test]
    fn products_agree_with_matrix_oracle(a in matrix(), b in matrix()) {
        let got = numeric(&(&a * &b));
        let want = numeric(&a) * numeric(&b);
        prop_assert!((got - want).norm() < 1e-12);
    }

    #[test]
    fn dirac_conjugate_is_an_anti_involution(a in matrix(), b in matrix()) {
        prop_assert_eq!(a.dirac_conjugate().dirac_conjugate(), a.clone());
        // γ₀(AB)†γ₀ = −(γ₀B†γ₀)(γ₀A†γ₀) since γ₀γ₀ = −I.
        let lhs = (&a * &b).dirac_conjugate();
        let rhs = -&(&b.dirac_conjugate() * &a.dirac_conjugate());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn trace_is_cyclic(a in matrix(), b in matrix()) {
        prop_assert_eq!((&a * &b).trace(), (&b * &a).trace());
    }
}

#[test]
fn anticommutators_against_matrix_oracle() {
    for a in 0..4 {
        for b in 0..4 {
            let ga = numeric(&gamma(a));
            let gb = numeric(&gamma(b));
            let anti = ga * gb + gb * ga;
            let want = Matrix4::identity() * Complex64::new(2.0 * eta(a, b) as f64, 0.0);
            assert!((anti - want).norm() < 1e-15, "({a},{b})");
        }
    }
}

#[test]
fn gamma5_spectrum_from_schur() {
    let g5 = numeric(&gamma5());
    let eig = Schur::new(g5).eigenvalues().expect("complex schur");
    let mut im: Vec<f64> = eig.iter().map(|z| z.im).collect();
    im.sort_by(f64::total_cmp);
    assert!(eig.iter().all(|z| z.re.abs() < 1e-12));
    assert_eq!(im.iter().map(|v| v.round() as i64).collect::<Vec<_>>(), [-1, -1, 1, 1]);
    assert_eq!(&gamma5() * &gamma5(), Clifford::scalar(ScalarExpr::int(-1)));
}

#[test]
fn sigma_squares_distinguish_rotations_from_boosts() {
    for a in 0..4 {
        for b in (a + 1)..4 {
            let s = sigma(a, b);
            let k = if a == 0 { Cx::from_ratio(1, 4) } else { Cx::from_ratio(-1, 4) };
            assert_eq!(&s * &s, Clifford::scalar(ScalarExpr::constant(k)), "σ{a}{b}");
        }
    }
}

#[test]
fn commutator_table_passes_everywhere() {
    let report = verify_commutator_table();
    assert_eq!(report.checks.len(), 13);
    for c in &report.checks {
        assert!(c.passed(), "{}: {:?}", c.label, c.failures);
    }
}

#[test]
fn decomposition_of_generators_is_a_unit_vector() {
    for e in BasisElement::ALL {
        let d = basis_decompose(&e.matrix());
        for (f, c) in d.iter() {
            let want = if f == e { ScalarExpr::one() } else { ScalarExpr::zero() };
            assert_eq!(c, &want, "{} in {}", f.label(), e.label());
        }
    }
}
