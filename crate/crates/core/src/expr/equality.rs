//! Equality of scalar expressions: exact canonical comparison, or seeded
//! numeric sampling over the chart domain and random parameter values.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{Chart, ExprError, ParamValues, ScalarExpr};

/// Sampling configuration. `points` and `assignments` are raised to the
/// floors 16 and 4.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SampleSpec {
    pub points: usize,
    pub assignments: usize,
    pub seed: u64,
    pub rel_tol: f64,
}

impl Default for SampleSpec {
    fn default() -> Self {
        SampleSpec { points: 16, assignments: 4, seed: 0x5eed, rel_tol: 1e-9 }
    }
}

impl SampleSpec {
    pub fn with_seed(seed: u64) -> Self {
        SampleSpec { seed, ..Default::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PolicyKind {
    Canonical,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EqualityPolicy {
    /// Structural equality after canonicalization.
    Canonical,
    /// Numeric comparison at sample points.
    Sampled(SampleSpec),
    /// Canonical when both sides are polynomial, sampled otherwise.
    Auto(SampleSpec),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EqualityOutcome {
    pub equal: bool,
    pub policy: PolicyKind,
    /// Largest `|a-b| / (1+|a|)` seen; 0 for a canonical match.
    pub max_residual: f64,
    pub seed: Option<u64>,
}

/// Deterministic sample grid: chart points × parameter assignments.
pub struct Sampler {
    spec: SampleSpec,
    points: Vec<[f64; 4]>,
    assignments: Vec<ParamValues>,
}

impl Sampler {
    /// Draws sample points in the chart domain and values for `params`
    /// (real parameters in [0.5, 1.5], complex ones with both parts in
    /// [-1, 1]).
    pub fn new(spec: SampleSpec, chart: &Chart, params: &BTreeSet<(Arc<str>, bool)>) -> Self {
        let spec = SampleSpec { points: spec.points.max(16), assignments: spec.assignments.max(4), ..spec };
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        let points = (0..spec.points)
            .map(|_| {
                let mut p = [0.0; 4];
                for (slot, (lo, hi)) in p.iter_mut().zip(chart.domain()) {
                    *slot = rng.random_range(*lo..*hi);
                }
                p
            })
            .collect();
        let assignments = (0..spec.assignments)
            .map(|_| {
                params
                    .iter()
                    .map(|(name, complex)| {
                        let v = if *complex {
                            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
                        } else {
                            Complex64::new(rng.random_range(0.5..1.5), 0.0)
                        };
                        (name.to_string(), v)
                    })
                    .collect()
            })
            .collect();
        Sampler { spec, points, assignments }
    }

    /// Sampler covering every parameter that appears in `exprs`.
    pub fn for_exprs<'a>(spec: SampleSpec, chart: &Chart, exprs: impl IntoIterator<Item = &'a ScalarExpr>) -> Self {
        let mut params = BTreeSet::new();
        for e in exprs {
            params.extend(e.params());
        }
        Sampler::new(spec, chart, &params)
    }

    pub fn spec(&self) -> &SampleSpec {
        &self.spec
    }

    /// Largest relative residual `|a-b| / (1+|a|)` over all samples.
    pub fn max_residual(&self, pairs: &[(&ScalarExpr, &ScalarExpr)]) -> Result<f64, ExprError> {
        let mut worst: f64 = 0.0;
        for params in &self.assignments {
            for p in &self.points {
                for (a, b) in pairs {
                    let va = a.eval(p, params)?;
                    let vb = b.eval(p, params)?;
                    worst = worst.max((va - vb).norm() / (1.0 + va.norm()));
                }
            }
        }
        Ok(worst)
    }

    /// Largest absolute value of `e` over all samples.
    pub fn max_abs(&self, exprs: &[&ScalarExpr]) -> Result<f64, ExprError> {
        let mut worst: f64 = 0.0;
        for params in &self.assignments {
            for p in &self.points {
                for e in exprs {
                    worst = worst.max(e.eval(p, params)?.norm());
                }
            }
        }
        Ok(worst)
    }

    /// Smallest absolute value of `e` over all samples.
    pub fn min_abs(&self, e: &ScalarExpr) -> Result<f64, ExprError> {
        let mut best = f64::INFINITY;
        for params in &self.assignments {
            for p in &self.points {
                best = best.min(e.eval(p, params)?.norm());
            }
        }
        Ok(best)
    }

    /// The sample points and parameter assignments, in sampling order.
    pub fn samples(&self) -> impl Iterator<Item = (&[f64; 4], &ParamValues)> {
        self.assignments.iter().flat_map(move |a| self.points.iter().map(move |p| (p, a)))
    }

    pub fn compare(&self, pairs: &[(&ScalarExpr, &ScalarExpr)]) -> Result<EqualityOutcome, ExprError> {
        let r = self.max_residual(pairs)?;
        Ok(EqualityOutcome {
            equal: r <= self.spec.rel_tol,
            policy: PolicyKind::Sampled,
            max_residual: r,
            seed: Some(self.spec.seed),
        })
    }
}

/// Compares two expressions under `policy`.
pub fn expr_equal(
    a: &ScalarExpr,
    b: &ScalarExpr,
    policy: EqualityPolicy,
    chart: &Chart,
) -> Result<EqualityOutcome, ExprError> {
    let canonical = || {
        let equal = a.canonical() == b.canonical();
        EqualityOutcome { equal, policy: PolicyKind::Canonical, max_residual: 0.0, seed: None }
    };
    match policy {
        EqualityPolicy::Canonical => Ok(canonical()),
        EqualityPolicy::Sampled(spec) => Sampler::for_exprs(spec, chart, [a, b]).compare(&[(a, b)]),
        EqualityPolicy::Auto(spec) => {
            let c = canonical();
            if c.equal || (a.is_polynomial() && b.is_polynomial()) {
                Ok(c)
            } else {
                Sampler::for_exprs(spec, chart, [a, b]).compare(&[(a, b)])
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse, SymbolTable};
    use super::*;

    fn p(s: &str) -> ScalarExpr {
        parse(s, &SymbolTable::default()).unwrap()
    }

    #[test]
    fn binomial_is_canonically_equal() {
        let out = expr_equal(&p("(x+1)^2"), &p("x^2+2*x+1"), EqualityPolicy::Canonical, &Chart::default()).unwrap();
        assert!(out.equal);
        assert_eq!(out.policy, PolicyKind::Canonical);
    }

    #[test]
    fn pythagoras_needs_sampling() {
        let (a, b) = (p("sin(x)^2 + cos(x)^2"), p("1"));
        let chart = Chart::default();
        assert!(!expr_equal(&a, &b, EqualityPolicy::Canonical, &chart).unwrap().equal);
        let out = expr_equal(&a, &b, EqualityPolicy::Sampled(SampleSpec::default()), &chart).unwrap();
        assert!(out.equal);
        assert_eq!(out.seed, Some(SampleSpec::default().seed));
        assert!(expr_equal(&a, &b, EqualityPolicy::Auto(SampleSpec::default()), &chart).unwrap().equal);
    }

    #[test]
    fn small_offsets_are_detected() {
        // |x - (x + 1e-3)| / (1 + |x|) >= 1e-3 / 2.5 on x in [0.5, 1.5], far above 1e-9.
        let out =
            expr_equal(&p("x"), &p("x + 0.001"), EqualityPolicy::Sampled(SampleSpec::default()), &Chart::default())
                .unwrap();
        assert!(!out.equal);
        assert!(out.max_residual >= 1e-3 / 2.5);
    }

    #[test]
    fn overflow_is_reported() {
        let e = p("exp(exp(exp(10*x)))");
        let err = expr_equal(
            &e,
            &e.scale(&super::super::Cx::from_int(2)),
            EqualityPolicy::Sampled(SampleSpec::default()),
            &Chart::default(),
        );
        assert!(matches!(err, Err(ExprError::Overflow { .. })));
    }

    #[test]
    fn sampling_is_reproducible() {
        let chart = Chart::default();
        let e = p("sin(t*x) - y");
        let s1 = Sampler::for_exprs(SampleSpec::with_seed(9), &chart, [&e]);
        let s2 = Sampler::for_exprs(SampleSpec::with_seed(9), &chart, [&e]);
        assert_eq!(s1.max_abs(&[&e]).unwrap(), s2.max_abs(&[&e]).unwrap());
    }
}
