//! Dirac spinors on a metric-affine background: the generalized spinor
//! connection, the direct and variational Dirac operators, the coupling
//! constraints that make them agree, and the induced mass split.

mod constraints;
mod covariance;
mod dirac;
mod mass;

use std::fmt;

use thiserror::Error;

pub use constraints::{
    derive_constraints, Component, ConstraintEquation, ConstraintSolution, CouplingValue, PartValue,
};
pub use covariance::{bivector_exp, covariance_check, transform_connection};
pub use dirac::{
    adjoint_connection, closed_form_residual, cov_d_adjoint, cov_d_spinor, direct_dirac_residual, gamma_form,
    hermiticity_density, kinetic_terms, lagrangian_density, mismatch_channels, predicted_mismatch, spinor_connection,
    variational_dirac_residual, Channel,
};
pub use mass::{mass_split, ChiralMass, MassSplit};

use crate::clifford::{gamma, Clifford};
use crate::expr::{Cx, ExprError, ScalarExpr};
use crate::forms::{Coefficient, Form, Product};
use crate::geometry::GeometryError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpinorError {
    #[error("coupling {name} must be a real constant, found {value}")]
    NonRealCoupling { name: String, value: String },
    #[error("transformation is not invertible at sample point {point:?}")]
    SingularTransformation { point: [f64; 4] },
    #[error("inconsistent constraint system: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

/// A column of four scalar fields.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Spinor(pub [ScalarExpr; 4]);

/// A row of four scalar fields (a Dirac adjoint).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RowSpinor(pub [ScalarExpr; 4]);

impl fmt::Debug for Spinor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "col{:?}", self.0)
    }
}

impl fmt::Debug for RowSpinor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "row{:?}", self.0)
    }
}

macro_rules! vector_coefficient {
    ($t:ident) => {
        impl Coefficient for $t {
            fn zero() -> Self {
                $t::default()
            }
            fn is_zero(&self) -> bool {
                self.0.iter().all(ScalarExpr::is_zero)
            }
            fn plus(&self, other: &Self) -> Self {
                $t(std::array::from_fn(|i| &self.0[i] + &other.0[i]))
            }
            fn negated(&self) -> Self {
                $t(std::array::from_fn(|i| -&self.0[i]))
            }
            fn scaled(&self, s: &ScalarExpr) -> Self {
                $t(std::array::from_fn(|i| &self.0[i] * s))
            }
            fn map_scalars(&self, f: &mut dyn FnMut(&ScalarExpr) -> ScalarExpr) -> Self {
                $t(std::array::from_fn(|i| f(&self.0[i])))
            }
            fn scalars(&self) -> Vec<&ScalarExpr> {
                self.0.iter().collect()
            }
        }

        impl Product<ScalarExpr> for $t {
            type Output = $t;
            fn product(&self, rhs: &ScalarExpr) -> $t {
                self.scaled(rhs)
            }
        }

        impl Product<$t> for ScalarExpr {
            type Output = $t;
            fn product(&self, rhs: &$t) -> $t {
                rhs.scaled(self)
            }
        }
    };
}

vector_coefficient!(Spinor);
vector_coefficient!(RowSpinor);

impl Product<Spinor> for Clifford {
    type Output = Spinor;
    fn product(&self, rhs: &Spinor) -> Spinor {
        Spinor(self.apply(&rhs.0))
    }
}

impl Product<Clifford> for RowSpinor {
    type Output = RowSpinor;
    fn product(&self, rhs: &Clifford) -> RowSpinor {
        RowSpinor(rhs.apply_row(&self.0))
    }
}

impl Product<Spinor> for RowSpinor {
    type Output = ScalarExpr;
    fn product(&self, rhs: &Spinor) -> ScalarExpr {
        (0..4).fold(ScalarExpr::zero(), |acc, i| {
            if self.0[i].is_zero() || rhs.0[i].is_zero() {
                acc
            } else {
                &acc + &(&self.0[i] * &rhs.0[i])
            }
        })
    }
}

/// A spinor field ψ given by four component expressions.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinorField {
    pub components: Spinor,
}

impl SpinorField {
    pub fn new(components: [ScalarExpr; 4]) -> Self {
        SpinorField { components: Spinor(components) }
    }

    pub fn zero() -> Self {
        SpinorField::new(Default::default())
    }

    /// ψ as a spinor-valued 0-form.
    pub fn form(&self) -> Form<Spinor> {
        Form::function(self.components.clone())
    }

    /// `ψ̄ = ψ†γ₀`.
    pub fn adjoint(&self) -> RowSpinor {
        let conj = RowSpinor(std::array::from_fn(|i| self.components.0[i].conj()));
        conj.product(&gamma(0))
    }

    pub fn adjoint_form(&self) -> Form<RowSpinor> {
        Form::function(self.adjoint())
    }

    /// Recovers ψ from a row `ψ̄` through `ψ = (ψ̄ γ₀⁻¹)†` with `γ₀⁻¹ = −γ₀`.
    pub fn from_adjoint(row: &RowSpinor) -> Self {
        let r = row.product(&gamma(0)).negated();
        SpinorField::new(std::array::from_fn(|i| r.0[i].conj()))
    }
}

/// The coupling constants of the generalized spinor connection, with an
/// optional charge `q` and Maxwell potential `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct CouplingConstants {
    pub a: [ScalarExpr; 4],
    pub b: [ScalarExpr; 4],
    pub charge: ScalarExpr,
    pub potential: Form,
}

pub const COUPLING_NAMES: [&str; 8] = ["a1", "a2", "a3", "a4", "b1", "b2", "b3", "b4"];

impl Default for CouplingConstants {
    fn default() -> Self {
        CouplingConstants::zero()
    }
}

impl CouplingConstants {
    pub fn zero() -> Self {
        CouplingConstants {
            a: Default::default(),
            b: Default::default(),
            charge: ScalarExpr::zero(),
            potential: Form::zero(1),
        }
    }

    /// Every coupling a named complex unknown `a1..b4`.
    pub fn symbolic() -> Self {
        let p = |n: &str| ScalarExpr::complex_param(n);
        CouplingConstants {
            a: [p("a1"), p("a2"), p("a3"), p("a4")],
            b: [p("b1"), p("b2"), p("b3"), p("b4")],
            ..CouplingConstants::zero()
        }
    }

    /// Concrete values in the order a1..a4, b1..b4.
    pub fn concrete(values: [Cx; 8]) -> Self {
        let v: Vec<ScalarExpr> = values.into_iter().map(ScalarExpr::constant).collect();
        CouplingConstants {
            a: [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()],
            b: [v[4].clone(), v[5].clone(), v[6].clone(), v[7].clone()],
            ..CouplingConstants::zero()
        }
    }

    /// Couplings on the constraint surface with parameters `A₁..A₄`,
    /// `B₁..B₄`: `a₁ = −½ + iA₁`, `a₂ = A₂`, `a₃ = ½ + iA₃`, `a₄ = A₄`,
    /// `b₁ = −½ + iB₁`, `b₂ = B₂`, `b₃ = B₃`, `b₄ = B₄`.
    pub fn constrained(a: [ScalarExpr; 4], b: [ScalarExpr; 4]) -> Self {
        let i = ScalarExpr::i();
        let h = ScalarExpr::ratio(1, 2);
        CouplingConstants {
            a: [&-&h + &(&i * &a[0]), a[1].clone(), &h + &(&i * &a[2]), a[3].clone()],
            b: [&-&h + &(&i * &b[0]), b[1].clone(), b[2].clone(), b[3].clone()],
            ..CouplingConstants::zero()
        }
    }

    /// The constraint family with symbolic real parameters `A1..A4`, `B1..B4`.
    pub fn constrained_symbolic() -> Self {
        let r = |n: String| ScalarExpr::real_param(&n);
        CouplingConstants::constrained(
            std::array::from_fn(|k| r(format!("A{}", k + 1))),
            std::array::from_fn(|k| r(format!("B{}", k + 1))),
        )
    }

    pub fn with_charge(mut self, q: ScalarExpr, potential: Form) -> Self {
        self.charge = q;
        self.potential = potential;
        self
    }

    /// Coupling by name (`a1`..`b4`).
    pub fn get(&self, name: &str) -> Option<&ScalarExpr> {
        let k = COUPLING_NAMES.iter().position(|n| *n == name)?;
        Some(if k < 4 { &self.a[k] } else { &self.b[k - 4] })
    }

    pub fn set(&mut self, name: &str, value: ScalarExpr) -> bool {
        match COUPLING_NAMES.iter().position(|n| *n == name) {
            Some(k) if k < 4 => self.a[k] = value,
            Some(k) => self.b[k - 4] = value,
            None => return false,
        }
        true
    }

    pub fn all(&self) -> [&ScalarExpr; 8] {
        [&self.a[0], &self.a[1], &self.a[2], &self.a[3], &self.b[0], &self.b[1], &self.b[2], &self.b[3]]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjoint_round_trip() {
        let psi = SpinorField::new([
            ScalarExpr::coord(1),
            ScalarExpr::i(),
            ScalarExpr::int(2),
            ScalarExpr::complex_param("z"),
        ]);
        assert_eq!(SpinorField::from_adjoint(&psi.adjoint()), psi);
    }

    #[test]
    fn constrained_special_point() {
        let zero: [ScalarExpr; 4] = Default::default();
        let c = CouplingConstants::constrained(zero.clone(), zero);
        assert_eq!(c.b[0], ScalarExpr::ratio(-1, 2));
        assert_eq!(c.a[2], ScalarExpr::ratio(1, 2));
        assert!(c.b[1].is_zero() && c.b[2].is_zero());
    }
}
