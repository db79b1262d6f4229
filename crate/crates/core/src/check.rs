//! Outcomes of identity checks and the comparison of form-valued sides.

use serde::Serialize;

use crate::expr::{Chart, ExprError, PolicyKind, SampleSpec, Sampler, ScalarExpr};
use crate::forms::{Coefficient, Form};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

/// Result of one named check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub check: String,
    pub status: Status,
    pub policy: Option<PolicyKind>,
    pub max_residual: f64,
    pub seed: Option<u64>,
    pub detail: String,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn exact(check: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        CheckOutcome {
            check: check.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            policy: Some(PolicyKind::Canonical),
            max_residual: 0.0,
            seed: None,
            detail: detail.into(),
        }
    }

    pub fn skip(check: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckOutcome {
            check: check.into(),
            status: Status::Skip,
            policy: None,
            max_residual: 0.0,
            seed: None,
            detail: detail.into(),
        }
    }

    pub fn failed(check: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckOutcome { status: Status::Fail, ..CheckOutcome::exact(check, false, detail) }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

/// Chart and sampling settings shared by the checks of one run.
#[derive(Clone, Debug, Default)]
pub struct CheckContext {
    pub chart: Chart,
    pub spec: SampleSpec,
}

impl CheckContext {
    pub fn new(chart: Chart, seed: u64) -> Self {
        CheckContext { chart, spec: SampleSpec::with_seed(seed) }
    }
}

/// Pairs of scalar coefficients of `lhs` and `rhs`, matched component by
/// component.
pub fn paired_scalars<C: Coefficient>(lhs: &Form<C>, rhs: &Form<C>) -> Vec<(ScalarExpr, ScalarExpr)> {
    let mut masks: Vec<u8> = lhs.terms().map(|(m, _)| m).chain(rhs.terms().map(|(m, _)| m)).collect();
    masks.sort_unstable();
    masks.dedup();
    let mut out = Vec::new();
    for m in masks {
        let (a, b) = (lhs.comp_or_zero(m), rhs.comp_or_zero(m));
        for (x, y) in a.scalars().into_iter().zip(b.scalars()) {
            if x != y {
                out.push((x.clone(), y.clone()));
            }
        }
    }
    out
}

/// Compares form-valued sides: canonical (exact) when every coefficient
/// involved is polynomial, sampled otherwise. A canonical mismatch reports
/// the sampled residual of the difference as its magnitude.
pub fn compare_forms<C: Coefficient>(
    name: &str,
    pairs: &[(Form<C>, Form<C>)],
    ctx: &CheckContext,
) -> Result<CheckOutcome, ExprError> {
    let mut scalars = Vec::new();
    for (l, r) in pairs {
        scalars.extend(paired_scalars(l, r));
    }
    compare_scalars(name, &scalars, ctx)
}

pub fn compare_scalars(
    name: &str,
    scalars: &[(ScalarExpr, ScalarExpr)],
    ctx: &CheckContext,
) -> Result<CheckOutcome, ExprError> {
    let polynomial = scalars.iter().all(|(a, b)| a.is_polynomial() && b.is_polynomial());
    let refs: Vec<(&ScalarExpr, &ScalarExpr)> = scalars.iter().map(|(a, b)| (a, b)).collect();
    let sampler = || Sampler::for_exprs(ctx.spec, &ctx.chart, scalars.iter().flat_map(|(a, b)| [a, b]));
    if polynomial {
        if scalars.is_empty() {
            return Ok(CheckOutcome::exact(name, true, ""));
        }
        let residual = sampler().max_residual(&refs).unwrap_or(f64::INFINITY);
        let diff = &scalars[0].0 - &scalars[0].1;
        return Ok(CheckOutcome {
            max_residual: residual,
            seed: Some(ctx.spec.seed),
            ..CheckOutcome::exact(
                name,
                false,
                format!("{} nonzero coefficients, first {}", scalars.len(), diff.to_text(&ctx.chart)),
            )
        });
    }
    let out = sampler().compare(&refs)?;
    Ok(CheckOutcome {
        check: name.to_string(),
        status: if out.equal { Status::Pass } else { Status::Fail },
        policy: Some(PolicyKind::Sampled),
        max_residual: out.max_residual,
        seed: out.seed,
        detail: String::new(),
    })
}
