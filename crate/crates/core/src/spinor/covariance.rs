//! Local spin transformations `ψ′ = Sψ`, `Ω′ = SΩS⁻¹ + S dS⁻¹`.

use super::{cov_d_spinor, Spinor, SpinorError, SpinorField};
use crate::check::{compare_forms, CheckContext, CheckOutcome};
use crate::clifford::{sigma, Clifford};
use crate::expr::{Cx, Sampler, ScalarExpr};
use crate::forms::{wedge, Form, Frame};

/// `exp(θσ_ab)` and its inverse `exp(−θσ_ab)` in closed form, using
/// `σ_ab² = κI` with κ computed from the representation. Rotations are
/// written with complex exponentials so that `S·S⁻¹` cancels canonically.
pub fn bivector_exp(a: usize, b: usize, theta: &ScalarExpr) -> (Clifford, Clifford) {
    let s = sigma(a, b);
    let kappa = (&s * &s).entry(0, 0).as_constant().expect("constant");
    let half = theta.scale(&Cx::from_ratio(1, 2));
    let build = |h: &ScalarExpr| {
        let (c, sn) = if kappa == Cx::from_ratio(-1, 4) {
            let ih = &ScalarExpr::i() * h;
            let (ep, em) = (ScalarExpr::exp(ih.clone()), ScalarExpr::exp(-&ih));
            ((&ep + &em).scale(&Cx::from_ratio(1, 2)), (&ep - &em).scale(&(&Cx::i() * &Cx::from_ratio(-1, 2))))
        } else if kappa == Cx::from_ratio(1, 4) {
            let (ep, em) = (ScalarExpr::exp(h.clone()), ScalarExpr::exp(-h));
            ((&ep + &em).scale(&Cx::from_ratio(1, 2)), (&ep - &em).scale(&Cx::from_ratio(1, 2)))
        } else {
            // σ_aa = 0
            (ScalarExpr::one(), ScalarExpr::zero())
        };
        &Clifford::scalar(c) + &s.scale(&sn.scale(&Cx::from_int(2)))
    };
    (build(&half), build(&-&half))
}

/// `SΩS⁻¹ + S dS⁻¹`.
pub fn transform_connection(omega: &Form<Clifford>, s: &Clifford, s_inv: &Clifford, frame: &Frame) -> Form<Clifford> {
    let sf = Form::function(s.clone());
    let conj = wedge(&wedge(&sf, omega), &Form::function(s_inv.clone()));
    conj.plus(&wedge(&sf, &frame.d(&Form::function(s_inv.clone()))))
}

/// Checks `D′ψ′ = S·Dψ` for the transformed pair.
pub fn covariance_check(
    name: &str,
    omega: &Form<Clifford>,
    s: &Clifford,
    s_inv: &Clifford,
    psi: &SpinorField,
    frame: &Frame,
    ctx: &CheckContext,
) -> Result<CheckOutcome, SpinorError> {
    let product = s * s_inv;
    let sampler = Sampler::for_exprs(ctx.spec, &ctx.chart, product.entries().iter().flatten());
    for (point, params) in sampler.samples() {
        for i in 0..4 {
            for j in 0..4 {
                let v = product.entry(i, j).eval(point, params)?;
                let want = if i == j { 1.0 } else { 0.0 };
                if (v.re - want).abs() > 1e-9 || v.im.abs() > 1e-9 {
                    return Err(SpinorError::SingularTransformation { point: *point });
                }
            }
        }
    }
    let omega_p = transform_connection(omega, s, s_inv, frame);
    let psi_p: Form<Spinor> = wedge(&Form::function(s.clone()), &psi.form());
    let lhs = cov_d_spinor(&psi_p, &omega_p, frame);
    let rhs = wedge(&Form::function(s.clone()), &cov_d_spinor(&psi.form(), omega, frame));
    Ok(compare_forms(name, &[(lhs, rhs)], ctx)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_pairs_multiply_to_identity_exactly() {
        let theta = &ScalarExpr::coord(1) * &ScalarExpr::coord(0);
        for (a, b) in [(1, 2), (0, 1), (2, 3), (0, 3)] {
            let (s, si) = bivector_exp(a, b, &theta);
            assert_eq!(&s * &si, Clifford::identity());
        }
    }

    #[test]
    fn rotation_matches_trigonometric_form() {
        let theta = ScalarExpr::coord(1);
        let (s, _) = bivector_exp(1, 2, &theta);
        let x = 0.7_f64;
        let sig = sigma(1, 2);
        let p = [0.5, x, 0.0, 0.0];
        let none = Default::default();
        for i in 0..4 {
            for j in 0..4 {
                let got = s.entry(i, j).eval(&p, &none).unwrap();
                let sv = sig.entry(i, j).eval(&p, &none).unwrap();
                let want = sv * 2.0 * (x / 2.0).sin() + if i == j { (x / 2.0).cos() } else { 0.0 };
                assert!((got - want).norm() < 1e-12);
            }
        }
    }
}
