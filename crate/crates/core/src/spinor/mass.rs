//! Effective mass operator `M = (m − 4b₃)I − 4b₄γ₅` and its values on the
//! two γ₅ eigenspaces.

use super::{CouplingConstants, SpinorError};
use crate::clifford::{gamma5, Clifford};
use crate::expr::{Cx, ScalarExpr};

/// Mass on one γ₅ eigenspace, tagged by the γ₅ eigenvalue.
#[derive(Clone, Debug, PartialEq)]
pub struct ChiralMass {
    pub gamma5_eigenvalue: Cx,
    pub mass: Cx,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MassSplit {
    /// Coefficient of I in M.
    pub scalar: Cx,
    /// Coefficient of γ₅ in M.
    pub axial: Cx,
    /// Unordered pair of eigenspace masses.
    pub chiral: [ChiralMass; 2],
}

impl MassSplit {
    pub fn operator(&self) -> Clifford {
        &Clifford::scalar(ScalarExpr::constant(self.scalar.clone()))
            + &gamma5().scale(&ScalarExpr::constant(self.axial.clone()))
    }

    /// `|m₊ − m₋|`.
    pub fn gap(&self) -> f64 {
        (self.chiral[0].mass.to_complex64() - self.chiral[1].mass.to_complex64()).norm()
    }
}

fn real_constant(name: &str, e: &ScalarExpr) -> Result<Cx, SpinorError> {
    match e.as_constant() {
        Some(c) if c.is_real() => Ok(c),
        _ => Err(SpinorError::NonRealCoupling { name: name.into(), value: e.to_string() }),
    }
}

/// Splits the mass term for real `m`, `b₃`, `b₄`. The eigenvalues of γ₅
/// are read off from `γ₅² = s·I`, computed in the fixed representation.
pub fn mass_split(m: &Cx, c: &CouplingConstants) -> Result<MassSplit, SpinorError> {
    let m = real_constant("m", &ScalarExpr::constant(m.clone()))?;
    let b3 = real_constant("b3", &c.b[2])?;
    let b4 = real_constant("b4", &c.b[3])?;
    let g5 = gamma5();
    let square = &g5 * &g5;
    let s = square.entry(0, 0).as_constant().expect("constant generator");
    assert_eq!(square, Clifford::scalar(ScalarExpr::constant(s.clone())), "γ₅² is proportional to I");
    let root = if s == Cx::one() {
        Cx::one()
    } else if s == -&Cx::one() {
        Cx::i()
    } else {
        unreachable!("γ₅² = ±I in any representation of cl(1,3)")
    };
    let four = Cx::from_int(4);
    let scalar = &m - &(&four * &b3);
    let axial = -&(&four * &b4);
    let on = |lambda: Cx| ChiralMass { mass: &scalar + &(&axial * &lambda), gamma5_eigenvalue: lambda };
    Ok(MassSplit { chiral: [on(root.clone()), on(-&root)], scalar, axial })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn with_b(b3: Cx, b4: Cx) -> CouplingConstants {
        let mut c = CouplingConstants::zero();
        c.b[2] = ScalarExpr::constant(b3);
        c.b[3] = ScalarExpr::constant(b4);
        c
    }

    #[test]
    fn chirality_blind_without_b4() {
        let s = mass_split(&Cx::one(), &with_b(Cx::from_ratio(1, 10), Cx::zero())).unwrap();
        for cm in &s.chiral {
            assert_eq!(cm.mass, Cx::from_ratio(3, 5));
        }
        assert_eq!(s.gap(), 0.0);
    }

    #[test]
    fn complex_coupling_rejected() {
        assert!(mass_split(&Cx::one(), &with_b(Cx::i(), Cx::zero())).is_err());
    }
}
