//! Lorentz-indexed families of scalar forms such as ωᵃ_b, Q_ab, Tᵃ, Rᵃ_b.
//!
//! Each slot is declared upper or lower. A declared symmetry on the first
//! two slots is enforced on write: setting `(a,b)` also sets `(b,a)`.
//! Raising and lowering with η are explicit operations on a family; the
//! covariant derivative [`cov_d_tensor`] never moves indices.

use thiserror::Error;

use crate::clifford::eta;
use crate::expr::ScalarExpr;
use crate::forms::{wedge, Form, Frame};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variance {
    Upper,
    Lower,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symmetry {
    None,
    /// Symmetric in the first two slots.
    Symmetric,
    /// Antisymmetric in the first two slots.
    Antisymmetric,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FamilyError {
    #[error("expected slots {expected:?}, found {found:?}")]
    VarianceMismatch { expected: Vec<Variance>, found: Vec<Variance> },
    #[error("{0:?} symmetry needs two slots of equal variance")]
    BadSymmetry(Symmetry),
    #[error("diagonal component ({0},{0}) of an antisymmetric family must vanish")]
    AntisymmetricDiagonal(usize),
    #[error("component of degree {found} written into a family of degree {expected}")]
    Degree { expected: usize, found: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct IndexedFamily {
    slots: Vec<Variance>,
    symmetry: Symmetry,
    degree: usize,
    comps: Vec<Form>,
}

fn flat_index(idx: &[usize]) -> usize {
    idx.iter().fold(0, |acc, &i| acc * 4 + i)
}

fn unflatten(mut n: usize, rank: usize) -> Vec<usize> {
    let mut idx = vec![0; rank];
    for slot in idx.iter_mut().rev() {
        *slot = n % 4;
        n /= 4;
    }
    idx
}

impl IndexedFamily {
    pub fn zero(slots: &[Variance], symmetry: Symmetry, degree: usize) -> Result<Self, FamilyError> {
        if symmetry != Symmetry::None && (slots.len() < 2 || slots[0] != slots[1]) {
            return Err(FamilyError::BadSymmetry(symmetry));
        }
        Ok(IndexedFamily {
            slots: slots.to_vec(),
            symmetry,
            degree,
            comps: vec![Form::zero(degree); 4usize.pow(slots.len() as u32)],
        })
    }

    /// Builds a family from a component function. With a declared symmetry
    /// only components with `idx[0] <= idx[1]` are evaluated.
    pub fn from_fn(
        slots: &[Variance],
        symmetry: Symmetry,
        degree: usize,
        mut f: impl FnMut(&[usize]) -> Form,
    ) -> Result<Self, FamilyError> {
        let mut fam = IndexedFamily::zero(slots, symmetry, degree)?;
        for n in 0..fam.comps.len() {
            let idx = unflatten(n, slots.len());
            if symmetry != Symmetry::None && idx[0] > idx[1] {
                continue;
            }
            if symmetry == Symmetry::Antisymmetric && idx[0] == idx[1] {
                continue;
            }
            let v = f(&idx);
            fam.set(&idx, v)?;
        }
        Ok(fam)
    }

    pub fn slots(&self) -> &[Variance] {
        &self.slots
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn rank(&self) -> usize {
        self.slots.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn get(&self, idx: &[usize]) -> &Form {
        assert_eq!(idx.len(), self.slots.len(), "index rank mismatch");
        &self.comps[flat_index(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: Form) -> Result<(), FamilyError> {
        if !value.is_zero() && value.degree() != self.degree {
            return Err(FamilyError::Degree { expected: self.degree, found: value.degree() });
        }
        let value = if value.is_zero() { Form::zero(self.degree) } else { value };
        let mut swapped = idx.to_vec();
        if self.rank() >= 2 {
            swapped.swap(0, 1);
        }
        match self.symmetry {
            Symmetry::None => {}
            Symmetry::Symmetric => self.comps[flat_index(&swapped)] = value.clone(),
            Symmetry::Antisymmetric => {
                if idx[0] == idx[1] {
                    if !value.is_zero() {
                        return Err(FamilyError::AntisymmetricDiagonal(idx[0]));
                    }
                } else {
                    self.comps[flat_index(&swapped)] = value.negated();
                }
            }
        }
        self.comps[flat_index(idx)] = value;
        Ok(())
    }

    /// All index tuples with their components.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, &Form)> {
        let rank = self.rank();
        self.comps.iter().enumerate().map(move |(n, f)| (unflatten(n, rank), f))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Form::is_zero)
    }

    /// Component-wise combination; the result carries no declared symmetry
    /// unless both operands share one.
    pub fn zip_with(
        &self,
        other: &IndexedFamily,
        mut f: impl FnMut(&Form, &Form) -> Form,
    ) -> Result<IndexedFamily, FamilyError> {
        if self.slots != other.slots {
            return Err(FamilyError::VarianceMismatch { expected: self.slots.clone(), found: other.slots.clone() });
        }
        let symmetry = if self.symmetry == other.symmetry { self.symmetry } else { Symmetry::None };
        let degree = self.degree.max(other.degree);
        IndexedFamily::from_fn(&self.slots, symmetry, degree, |idx| f(self.get(idx), other.get(idx)))
    }

    pub fn minus(&self, other: &IndexedFamily) -> Result<IndexedFamily, FamilyError> {
        self.zip_with(other, |a, b| a.minus(b))
    }

    pub fn plus(&self, other: &IndexedFamily) -> Result<IndexedFamily, FamilyError> {
        self.zip_with(other, |a, b| a.plus(b))
    }

    pub fn map(&self, degree: usize, mut f: impl FnMut(&[usize], &Form) -> Form) -> IndexedFamily {
        IndexedFamily::from_fn(&self.slots, Symmetry::None, degree, |idx| f(idx, self.get(idx)))
            .expect("no symmetry declared")
    }

    /// Moves slot `k` to the opposite variance by contracting with η.
    pub fn flip(&self, k: usize) -> IndexedFamily {
        let mut slots = self.slots.clone();
        slots[k] = match slots[k] {
            Variance::Upper => Variance::Lower,
            Variance::Lower => Variance::Upper,
        };
        let mut out = IndexedFamily::zero(&slots, Symmetry::None, self.degree).expect("no symmetry");
        for (idx, f) in self.iter() {
            // η is diagonal with entries ±1, and η^ab = η_ab.
            let s = eta(idx[k], idx[k]);
            out.set(&idx, f.scaled(&ScalarExpr::int(s))).expect("degree preserved");
        }
        out.symmetry = if k >= 2 { self.symmetry } else { Symmetry::None };
        out
    }

    /// Forgets the declared symmetry (values are unchanged).
    pub fn without_symmetry(&self) -> IndexedFamily {
        IndexedFamily { symmetry: Symmetry::None, ..self.clone() }
    }
}

/// η_ab or η^ab as a family of 0-forms.
pub fn metric_family(variance: Variance) -> IndexedFamily {
    IndexedFamily::from_fn(&[variance, variance], Symmetry::Symmetric, 0, |idx| {
        Form::function(ScalarExpr::int(eta(idx[0], idx[1])))
    })
    .expect("valid")
}

/// δᵃ_b as a family of 0-forms.
pub fn kronecker() -> IndexedFamily {
    IndexedFamily::from_fn(&[Variance::Upper, Variance::Lower], Symmetry::None, 0, |idx| {
        Form::function(ScalarExpr::int((idx[0] == idx[1]) as i64))
    })
    .expect("valid")
}

/// Covariant exterior derivative with one connection term per slot:
/// `+ωᵃ_c∧F^{..c..}` for upper slots and `-ω^c_b∧F_{..c..}` for lower ones.
pub fn cov_d_tensor(f: &IndexedFamily, omega: &IndexedFamily, frame: &Frame) -> Result<IndexedFamily, FamilyError> {
    let conn_slots = [Variance::Upper, Variance::Lower];
    if omega.slots() != conn_slots {
        return Err(FamilyError::VarianceMismatch { expected: conn_slots.to_vec(), found: omega.slots().to_vec() });
    }
    let degree = (f.degree() + 1).min(4);
    IndexedFamily::from_fn(f.slots(), f.symmetry(), degree, |idx| {
        let mut out = frame.d(f.get(idx));
        let mut j = idx.to_vec();
        for (k, var) in f.slots().iter().enumerate() {
            for c in 0..4 {
                j[k] = c;
                let fc = f.get(&j);
                if fc.is_zero() {
                    continue;
                }
                let term = match var {
                    Variance::Upper => wedge(omega.get(&[idx[k], c]), fc),
                    Variance::Lower => wedge(omega.get(&[c, idx[k]]), fc).negated(),
                };
                out = out.plus(&term);
            }
            j[k] = idx[k];
        }
        out
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetry_is_enforced_on_write() {
        let mut f = IndexedFamily::zero(&[Variance::Lower, Variance::Lower], Symmetry::Antisymmetric, 1).unwrap();
        f.set(&[0, 2], Form::coframe(1)).unwrap();
        assert_eq!(*f.get(&[2, 0]), Form::coframe(1).negated());
        assert!(f.set(&[1, 1], Form::coframe(0)).is_err());
        assert!(IndexedFamily::zero(&[Variance::Upper, Variance::Lower], Symmetry::Symmetric, 1).is_err());
    }

    #[test]
    fn kronecker_is_parallel() {
        let frame = Frame::cartesian();
        let omega = IndexedFamily::from_fn(&[Variance::Upper, Variance::Lower], Symmetry::None, 1, |idx| {
            Form::coframe((idx[0] + idx[1]) % 4).scaled(&ScalarExpr::coord(idx[0]))
        })
        .unwrap();
        assert!(cov_d_tensor(&kronecker(), &omega, &frame).unwrap().is_zero());
    }

    #[test]
    fn flip_twice_is_identity() {
        let f = IndexedFamily::from_fn(&[Variance::Upper, Variance::Lower], Symmetry::None, 1, |idx| {
            Form::coframe(idx[1]).scaled(&ScalarExpr::int(idx[0] as i64 + 1))
        })
        .unwrap();
        assert_eq!(f.flip(0).flip(0), f);
        assert_eq!(*f.flip(0).get(&[0, 2]), f.get(&[0, 2]).negated());
    }
}
