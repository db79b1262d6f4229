//! The built-in verification suites.

use super::{HarnessError, Scenario, Stage, Suite, SuiteInput, SuiteOutput};
use crate::check::{compare_forms, CheckOutcome};
use crate::clifford::{basis_decompose, gamma5, verify_commutator_table, BasisElement, Clifford};
use crate::expr::{Cx, ScalarExpr};
use crate::forms::{hodge, wedge, Form};
use crate::geometry::{bianchi_check, decomposition_check, hodge_identity_check};
use crate::spinor::{
    bivector_exp, closed_form_residual, covariance_check, derive_constraints, direct_dirac_residual, gamma_form,
    hermiticity_density, kinetic_terms, lagrangian_density, mass_split, mismatch_channels, predicted_mismatch,
    spinor_connection, variational_dirac_residual, Channel,
};

pub struct CliffordSuite;

impl Suite for CliffordSuite {
    fn name(&self) -> &'static str {
        "clifford"
    }
    fn description(&self) -> &'static str {
        "anticommutators, Dirac conjugates and commutator families of the gamma matrices"
    }
    fn stage(&self) -> Stage {
        Stage::Algebra
    }
    fn run(&self, _input: &SuiteInput<'_>) -> Result<SuiteOutput, HarnessError> {
        let report = verify_commutator_table();
        let checks = report
            .checks
            .iter()
            .map(|c| {
                CheckOutcome::exact(
                    format!("clifford/{}", c.label),
                    c.passed(),
                    format!("{} index assignments, {} failures", c.cases, c.failures.len()),
                )
            })
            .collect();
        Ok(SuiteOutput::checks(checks))
    }
}

pub struct GeometrySuite;

impl Suite for GeometrySuite {
    fn name(&self) -> &'static str {
        "geometry"
    }
    fn description(&self) -> &'static str {
        "connection decomposition round trip, symmetric/antisymmetric parts, Riemannian limit"
    }
    fn stage(&self) -> Stage {
        Stage::Geometry
    }
    fn run(&self, input: &SuiteInput<'_>) -> Result<SuiteOutput, HarnessError> {
        let checks = decomposition_check(input.geometry(), input.invariants, &input.ctx)?;
        Ok(SuiteOutput::checks(checks))
    }
}

pub struct BianchiSuite;

impl Suite for BianchiSuite {
    fn name(&self) -> &'static str {
        "bianchi"
    }
    fn description(&self) -> &'static str {
        "Bianchi identities for non-metricity, torsion and curvature"
    }
    fn stage(&self) -> Stage {
        Stage::Geometry
    }
    fn run(&self, input: &SuiteInput<'_>) -> Result<SuiteOutput, HarnessError> {
        Ok(SuiteOutput::checks(bianchi_check(input.geometry(), input.invariants, &input.ctx)?))
    }
}

pub struct HodgeSuite;

impl Suite for HodgeSuite {
    fn name(&self) -> &'static str {
        "hodge"
    }
    fn description(&self) -> &'static str {
        "covariant derivatives of the Hodge duals of coframe products"
    }
    fn stage(&self) -> Stage {
        Stage::Geometry
    }
    fn run(&self, input: &SuiteInput<'_>) -> Result<SuiteOutput, HarnessError> {
        Ok(SuiteOutput::checks(hodge_identity_check(input.geometry(), input.invariants, &input.ctx)?))
    }
}

/// `i*γ∧(Σ coefficient·form)ψ` written out for the channels active in the
/// scenario geometry.
fn mismatch_text(s: &Scenario, input: &SuiteInput<'_>) -> String {
    let chart = s.chart();
    let traces = &input.invariants.traces;
    let mut parts = Vec::new();
    for (ch, coeff) in mismatch_channels(&s.couplings) {
        let active = match ch {
            Channel::Q => !traces.q.is_zero(),
            Channel::P => !traces.p.is_zero(),
            Channel::T => !traces.t.is_zero(),
            Channel::Coframe => true,
            Channel::Potential => !s.couplings.potential.is_zero(),
        };
        if !active || coeff.is_zero() {
            continue;
        }
        let d = basis_decompose(&coeff);
        let (x, y) = (d.get(BasisElement::Identity), d.get(BasisElement::Pseudoscalar));
        let c = match (x.is_zero(), y.is_zero()) {
            (false, true) => format!("({})", x.to_text(chart)),
            (true, false) => format!("({})*γ5", y.to_text(chart)),
            _ => format!("(({}) + ({})*γ5)", x.to_text(chart), y.to_text(chart)),
        };
        parts.push(format!("{c}*{}", ch.label()));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        format!("i*γ∧({})ψ", parts.join(" + "))
    }
}

pub struct DiracSuite;

impl Suite for DiracSuite {
    fn name(&self) -> &'static str {
        "dirac-consistency"
    }
    fn description(&self) -> &'static str {
        "direct versus variational Dirac operator; residual structure; optional solution check"
    }
    fn stage(&self) -> Stage {
        Stage::Spinor
    }
    fn run(&self, input: &SuiteInput<'_>) -> Result<SuiteOutput, HarnessError> {
        let s = input.scenario;
        let (geom, inv) = (input.geometry(), input.invariants);
        let direct = direct_dirac_residual(&s.spinor, &s.mass, &s.couplings, geom, inv);
        let var = variational_dirac_residual(&s.spinor, &s.mass, &s.couplings, geom, inv);
        let text = mismatch_text(s, input);
        let agreement = compare_forms("dirac/agreement", &[(var.clone(), direct.clone())], &input.ctx)?
            .with_detail(format!("variational − direct = {text}"));
        let structure = compare_forms(
            "dirac/residual-structure",
            &[(var.minus(&direct), predicted_mismatch(&s.spinor, &s.couplings, inv))],
            &input.ctx,
        )?;
        let solution = if s.expect_solution {
            compare_forms("dirac/direct-solution", &[(direct, Form::zero(4))], &input.ctx)?
        } else {
            CheckOutcome::skip("dirac/direct-solution", "scenario does not claim a solution")
        };
        Ok(SuiteOutput::checks(vec![agreement, structure, solution]))
    }
}

pub struct ClosedFormSuite;

impl Suite for ClosedFormSuite {
    fn name(&self) -> &'static str {
        "closed-form"
    }
    fn description(&self) -> &'static str {
        "mechanical variation equals the closed-form variational operator"
    }
    fn stage(&self) -> Stage {
        Stage::Spinor
    }
    fn run(&self, input: &SuiteInput<'_>) -> Result<SuiteOutput, HarnessError> {
        let s = input.scenario;
        let (geom, inv) = (input.geometry(), input.invariants);
        let var = variational_dirac_residual(&s.spinor, &s.mass, &s.couplings, geom, inv);
        let closed = closed_form_residual(&s.spinor, &s.mass, &s.couplings, geom, inv);
        Ok(SuiteOutput::checks(vec![compare_forms("closed-form/operator", &[(var, closed)], &input.ctx)?]))
    }
}

pub struct HermiticitySuite;

impl Suite for HermiticitySuite {
    fn name(&self) -> &'static str {
        "hermiticity"
    }
    fn description(&self) -> &'static str {
        "reality of the Lagrangian densities; flat kinetic terms differ by d(ψ̄*γψ)"
    }
    fn stage(&self) -> Stage {
        Stage::Spinor
    }
    fn run(&self, input: &SuiteInput<'_>) -> Result<SuiteOutput, HarnessError> {
        let s = input.scenario;
        let (geom, inv) = (input.geometry(), input.invariants);
        let l = lagrangian_density(&s.spinor, &s.mass, &s.couplings, geom, inv);
        let h = hermiticity_density(&s.spinor, &s.mass, &s.couplings, geom, inv);
        let mut checks = vec![
            compare_forms("hermiticity/symmetric-lagrangian", &[(l.clone(), l.conj())], &input.ctx)?,
            compare_forms("hermiticity/one-sided-lagrangian", &[(h.clone(), h.conj())], &input.ctx)?,
        ];
        let omega = spinor_connection(&s.couplings, geom, inv);
        checks.push(if omega.is_zero() {
            let (first, second) = kinetic_terms(&s.spinor, &s.couplings, geom, inv);
            let current = wedge(&s.spinor.adjoint_form(), &wedge(&hodge(&gamma_form()), &s.spinor.form()));
            compare_forms("hermiticity/kinetic-divergence", &[(second.minus(&first), geom.d(&current))], &input.ctx)?
        } else {
            CheckOutcome::skip("hermiticity/kinetic-divergence", "needs a vanishing spinor connection")
        });
        Ok(SuiteOutput::checks(checks))
    }
}

pub struct CovarianceSuite;

impl Suite for CovarianceSuite {
    fn name(&self) -> &'static str {
        "covariance"
    }
    fn description(&self) -> &'static str {
        "D′ψ′ = S·Dψ for constant and position-dependent spin transformations"
    }
    fn stage(&self) -> Stage {
        Stage::Spinor
    }
    fn run(&self, input: &SuiteInput<'_>) -> Result<SuiteOutput, HarnessError> {
        let s = input.scenario;
        let (geom, inv) = (input.geometry(), input.invariants);
        let omega = spinor_connection(&s.couplings, geom, inv);
        let x = ScalarExpr::coord;
        let cases = [
            ("covariance/constant-rotation", 1, 2, ScalarExpr::ratio(3, 10)),
            ("covariance/local-rotation", 1, 2, &x(0) * &x(3)),
            ("covariance/local-boost", 0, 1, x(2).scale(&Cx::from_ratio(1, 2))),
        ];
        let mut checks = Vec::new();
        for (name, a, b, theta) in cases {
            let (sm, sm_inv) = bivector_exp(a, b, &theta);
            checks.push(covariance_check(name, &omega, &sm, &sm_inv, &s.spinor, geom.frame(), &input.ctx)?);
        }
        Ok(SuiteOutput::checks(checks))
    }
}

pub struct MassSuite;

impl Suite for MassSuite {
    fn name(&self) -> &'static str {
        "mass-split"
    }
    fn description(&self) -> &'static str {
        "effective mass operator and its values on the two γ5 eigenspaces"
    }
    fn stage(&self) -> Stage {
        Stage::Spinor
    }
    fn run(&self, input: &SuiteInput<'_>) -> Result<SuiteOutput, HarnessError> {
        let s = input.scenario;
        let name = "mass/chirality";
        let Some(m) = s.mass.as_constant() else {
            return Ok(SuiteOutput::checks(vec![CheckOutcome::skip(name, "mass is not a constant")]));
        };
        let split = match mass_split(&m, &s.couplings) {
            Ok(split) => split,
            Err(e) => return Ok(SuiteOutput::checks(vec![CheckOutcome::skip(name, e.to_string())])),
        };
        // M·P = m·P on each eigenspace, P = (γ5 − λ̄I)/(λ − λ̄) the projector.
        let op = split.operator();
        let ok = split.chiral.iter().all(|cm| {
            let lam = &cm.gamma5_eigenvalue;
            let other =
                &split.chiral.iter().find(|o| &o.gamma5_eigenvalue != lam).expect("two eigenvalues").gamma5_eigenvalue;
            let denom = (lam - other).inv().expect("distinct eigenvalues");
            let p = (&gamma5() - &Clifford::scalar(ScalarExpr::constant(other.clone()))).scale_cx(&denom);
            &op * &p == p.scale_cx(&cm.mass)
        });
        let detail = split
            .chiral
            .iter()
            .map(|cm| format!("γ5 = {}: m = {}", cm.gamma5_eigenvalue, cm.mass))
            .chain([format!("gap {}", split.gap())])
            .collect::<Vec<_>>()
            .join("; ");
        Ok(SuiteOutput::checks(vec![CheckOutcome::exact(name, ok, detail)]))
    }
}

pub struct ConstraintsSuite;

impl Suite for ConstraintsSuite {
    fn name(&self) -> &'static str {
        "constraints"
    }
    fn description(&self) -> &'static str {
        "derives the coupling constraints, checks the family on this geometry and the scenario couplings against it"
    }
    fn stage(&self) -> Stage {
        Stage::Spinor
    }
    fn run(&self, input: &SuiteInput<'_>) -> Result<SuiteOutput, HarnessError> {
        let s = input.scenario;
        let (geom, inv) = (input.geometry(), input.invariants);
        let solution = derive_constraints()?;
        let mut checks = vec![CheckOutcome::exact(
            "constraints/derivation",
            true,
            format!(
                "{} equations, free parameters {}",
                solution.equations.len(),
                solution.free_parameters().join(", ")
            ),
        )];
        let family = solution.couplings();
        let family = family.clone().with_charge(family.charge.clone(), s.couplings.potential.clone());
        checks.push(compare_forms(
            "constraints/family-on-geometry",
            &[(
                variational_dirac_residual(&s.spinor, &s.mass, &family, geom, inv),
                direct_dirac_residual(&s.spinor, &s.mass, &family, geom, inv),
            )],
            &input.ctx,
        )?);
        let mut subst = std::collections::BTreeMap::new();
        for (n, v) in crate::spinor::COUPLING_NAMES.iter().zip(s.couplings.all()) {
            subst.insert(n.to_string(), v.clone());
        }
        subst.insert("q".to_string(), s.couplings.charge.clone());
        let violated: Vec<String> = solution
            .equations
            .iter()
            .filter(|e| !e.residual().subst_params(&subst).is_zero())
            .map(|e| e.to_string())
            .collect();
        let detail = if violated.is_empty() {
            "all equations hold".to_string()
        } else {
            format!("violated: {}", violated.join("; "))
        };
        checks.push(CheckOutcome::exact("constraints/scenario-couplings", violated.is_empty(), detail));
        Ok(SuiteOutput { checks, solution: Some(solution) })
    }
}
