//! Metric-affine geometry from a tetrad and a full connection.
//!
//! A [`Geometry`] holds the coframe `eᵃ = hᵃ_μ dx^μ` and the connection
//! 1-forms `ωᵃ_b`, stored by their coframe components `ωᵃ_{bc}`. The metric
//! is η in this frame. Everything else (non-metricity, torsion, curvature,
//! their traces and the decomposition of ω) is derived here.

mod identities;
mod random;

use thiserror::Error;

pub use identities::{bianchi_check, decomposition_check, hodge_identity_check, hodge_lower, hodge_upper};
pub use random::{random_geometry, RandomGeometry};

use crate::clifford::eta;
use crate::expr::{Chart, ExprError, SampleSpec, Sampler, ScalarExpr};
use crate::family::{cov_d_tensor, FamilyError, IndexedFamily, Symmetry, Variance};
use crate::forms::{interior, wedge, Form, FormError, Frame};

const UL: [Variance; 2] = [Variance::Upper, Variance::Lower];
const LL: [Variance; 2] = [Variance::Lower, Variance::Lower];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

/// Coframe components `ωᵃ_{bc}`, indexed `[a][b][c]`.
pub type ConnectionComponents = [[[ScalarExpr; 4]; 4]; 4];

#[derive(Clone, Debug)]
pub struct Geometry {
    chart: Chart,
    frame: Frame,
    omega: IndexedFamily,
}

/// The trace 1-forms `Q = η_ab Q^ab`, `P = (ι_a Q^ab) e_b`, `T = ι_a Tᵃ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Traces {
    pub q: Form,
    pub p: Form,
    pub t: Form,
}

#[derive(Clone, Debug)]
pub struct GeometryInvariants {
    /// `Q_ab`, symmetric.
    pub nonmetricity: IndexedFamily,
    /// `Tᵃ`.
    pub torsion: IndexedFamily,
    /// `Rᵃ_b`.
    pub curvature: IndexedFamily,
    pub traces: Traces,
    /// `ω̃_ab`, antisymmetric.
    pub levi_civita: IndexedFamily,
    /// `K_ab`, antisymmetric.
    pub contortion: IndexedFamily,
    /// `L_ab = ω_ab − ω̃_ab`.
    pub distortion: IndexedFamily,
}

fn half() -> ScalarExpr {
    ScalarExpr::ratio(1, 2)
}

fn lower(a: usize) -> ScalarExpr {
    ScalarExpr::int(eta(a, a))
}

impl Geometry {
    /// Builds a geometry, rejecting tetrads whose determinant vanishes at a
    /// sample point of the chart domain.
    pub fn new(
        chart: Chart,
        tetrad: [[ScalarExpr; 4]; 4],
        connection: &ConnectionComponents,
    ) -> Result<Self, GeometryError> {
        let frame = Frame::new(tetrad)?;
        // A real determinant that changes sign over the (connected) domain
        // vanishes somewhere in it.
        let sampler = Sampler::for_exprs(SampleSpec::default(), &chart, [frame.det()]);
        let (mut pos, mut neg) = (false, false);
        let mut nearest = (f64::INFINITY, [0.0; 4]);
        for (point, params) in sampler.samples() {
            let v = frame.det().eval(point, params)?;
            if v.norm() < nearest.0 {
                nearest = (v.norm(), *point);
            }
            if v.im.abs() <= 1e-12 * v.norm() {
                pos |= v.re > 0.0;
                neg |= v.re < 0.0;
            }
        }
        if nearest.0 < 1e-12 || (pos && neg) {
            return Err(FormError::SingularAt { point: nearest.1 }.into());
        }
        let omega = IndexedFamily::from_fn(&UL, Symmetry::None, 1, |idx| {
            let mut f = Form::zero(1);
            for c in 0..4 {
                f.add_term(1 << c, connection[idx[0]][idx[1]][c].clone());
            }
            f
        })?;
        Ok(Geometry { chart, frame, omega })
    }

    /// Same coframe, different connection ωᵃ_b.
    pub fn with_connection(&self, omega: IndexedFamily) -> Result<Self, GeometryError> {
        if omega.slots() != UL {
            return Err(FamilyError::VarianceMismatch { expected: UL.to_vec(), found: omega.slots().to_vec() }.into());
        }
        Ok(Geometry { chart: self.chart.clone(), frame: self.frame.clone(), omega: omega.without_symmetry() })
    }

    /// `eᵃ = dxᵃ` with zero connection.
    pub fn flat(chart: Chart) -> Self {
        let zero = IndexedFamily::zero(&UL, Symmetry::None, 1).expect("valid");
        Geometry { chart, frame: Frame::cartesian(), omega: zero }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// `ωᵃ_b`.
    pub fn connection(&self) -> &IndexedFamily {
        &self.omega
    }

    /// `ω_ab = η_ac ω^c_b`.
    pub fn connection_lower(&self) -> IndexedFamily {
        self.omega.flip(0)
    }

    /// `ω^ab = ωᵃ_c η^cb`.
    pub fn connection_upper(&self) -> IndexedFamily {
        self.omega.flip(1)
    }

    /// Covariant exterior derivative of an indexed family.
    pub fn cov_d(&self, f: &IndexedFamily) -> Result<IndexedFamily, GeometryError> {
        Ok(cov_d_tensor(f, &self.omega, &self.frame)?)
    }

    pub fn d(&self, f: &Form) -> Form {
        self.frame.d(f)
    }

    /// `Q_ab = ω_(ab)`.
    pub fn nonmetricity(&self) -> IndexedFamily {
        let w = self.connection_lower();
        IndexedFamily::from_fn(&LL, Symmetry::Symmetric, 1, |i| {
            w.get(&[i[0], i[1]]).plus(w.get(&[i[1], i[0]])).scaled(&half())
        })
        .expect("valid")
    }

    /// `Tᵃ = deᵃ + ωᵃ_b ∧ eᵇ`.
    pub fn torsion(&self) -> IndexedFamily {
        IndexedFamily::from_fn(&[Variance::Upper], Symmetry::None, 2, |i| {
            (0..4).fold(self.frame.d_coframe(i[0]).clone(), |acc, b| {
                acc.plus(&wedge(self.omega.get(&[i[0], b]), &Form::coframe(b)))
            })
        })
        .expect("valid")
    }

    /// `Rᵃ_b = dωᵃ_b + ωᵃ_c ∧ ω^c_b`.
    pub fn curvature(&self) -> IndexedFamily {
        IndexedFamily::from_fn(&UL, Symmetry::None, 2, |i| {
            (0..4).fold(self.d(self.omega.get(i)), |acc, c| {
                acc.plus(&wedge(self.omega.get(&[i[0], c]), self.omega.get(&[c, i[1]])))
            })
        })
        .expect("valid")
    }

    pub fn traces_of(nonmetricity: &IndexedFamily, torsion: &IndexedFamily) -> Traces {
        let q_up = nonmetricity.flip(0).flip(1);
        let mut q = Form::zero(1);
        let mut p = Form::zero(1);
        let mut t = Form::zero(1);
        for a in 0..4 {
            q = q.plus(&nonmetricity.get(&[a, a]).scaled(&lower(a)));
            t = t.plus(&interior(a, torsion.get(&[a])));
            for b in 0..4 {
                p = p.plus(&wedge(&interior(a, q_up.get(&[a, b])), &Form::coframe_lower(b)));
            }
        }
        Traces { q, p, t }
    }

    pub fn traces(&self) -> Traces {
        Geometry::traces_of(&self.nonmetricity(), &self.torsion())
    }

    /// `ω̃_ab = ½[−ι_a de_b + ι_b de_a + (ι_a ι_b de_c) eᶜ]`.
    pub fn levi_civita(&self) -> IndexedFamily {
        let de = |b: usize| self.frame.d_coframe(b).scaled(&lower(b));
        IndexedFamily::from_fn(&LL, Symmetry::Antisymmetric, 1, |i| {
            let (a, b) = (i[0], i[1]);
            let mut f = interior(b, &de(a)).minus(&interior(a, &de(b)));
            for c in 0..4 {
                f = f.plus(&wedge(&interior(a, &interior(b, &de(c))), &Form::coframe(c)));
            }
            f.scaled(&half())
        })
        .expect("valid")
    }

    /// `K_ab = ½[ι_a T_b − ι_b T_a − (ι_a ι_b T_c) eᶜ]`.
    pub fn contortion_of(torsion: &IndexedFamily) -> IndexedFamily {
        let t = torsion.flip(0);
        IndexedFamily::from_fn(&LL, Symmetry::Antisymmetric, 1, |i| {
            let (a, b) = (i[0], i[1]);
            let mut f = interior(a, t.get(&[b])).minus(&interior(b, t.get(&[a])));
            for c in 0..4 {
                f = f.minus(&wedge(&interior(a, &interior(b, t.get(&[c]))), &Form::coframe(c)));
            }
            f.scaled(&half())
        })
        .expect("valid")
    }

    /// `(ι_b Q_ac − ι_a Q_bc) eᶜ`, the antisymmetric non-metricity piece.
    pub fn disformation_antisymmetric(nonmetricity: &IndexedFamily) -> IndexedFamily {
        IndexedFamily::from_fn(&LL, Symmetry::Antisymmetric, 1, |i| {
            let (a, b) = (i[0], i[1]);
            (0..4).fold(Form::zero(1), |acc, c| {
                let s = interior(b, nonmetricity.get(&[a, c])).minus(&interior(a, nonmetricity.get(&[b, c])));
                acc.plus(&wedge(&s, &Form::coframe(c)))
            })
        })
        .expect("valid")
    }

    /// `L_ab = K_ab + (ι_b Q_ac − ι_a Q_bc) eᶜ + Q_ab`.
    pub fn distortion_of(contortion: &IndexedFamily, nonmetricity: &IndexedFamily) -> IndexedFamily {
        let dis = Geometry::disformation_antisymmetric(nonmetricity);
        IndexedFamily::from_fn(&LL, Symmetry::None, 1, |i| contortion.get(i).plus(dis.get(i)).plus(nonmetricity.get(i)))
            .expect("valid")
    }

    pub fn invariants(&self) -> GeometryInvariants {
        let nonmetricity = self.nonmetricity();
        let torsion = self.torsion();
        let contortion = Geometry::contortion_of(&torsion);
        let distortion = Geometry::distortion_of(&contortion, &nonmetricity);
        GeometryInvariants {
            traces: Geometry::traces_of(&nonmetricity, &torsion),
            curvature: self.curvature(),
            levi_civita: self.levi_civita(),
            nonmetricity,
            torsion,
            contortion,
            distortion,
        }
    }

    /// The same coframe carrying its Levi-Civita connection.
    pub fn riemannian(&self) -> Geometry {
        let lc = self.levi_civita().flip(0);
        self.with_connection(lc).expect("mixed slots")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Cx;

    fn zero_conn() -> ConnectionComponents {
        Default::default()
    }

    fn id_tetrad() -> [[ScalarExpr; 4]; 4] {
        std::array::from_fn(|i| std::array::from_fn(|j| ScalarExpr::int((i == j) as i64)))
    }

    #[test]
    fn weyl_traces() {
        let phi = ScalarExpr::coord(0);
        let mut w = zero_conn();
        for a in 0..4 {
            w[a][a][0] = phi.clone();
        }
        let g = Geometry::new(Chart::default(), id_tetrad(), &w).unwrap();
        let tr = g.traces();
        assert_eq!(tr.q, Form::scalar_monomial(1, phi.scale(&Cx::from_int(4))));
        assert_eq!(tr.p, Form::scalar_monomial(1, phi.clone()));
        assert_eq!(tr.t, Form::scalar_monomial(1, phi.scale(&Cx::from_int(-3))));
    }

    #[test]
    fn singular_tetrad_rejected() {
        let mut h = id_tetrad();
        h[1][1] = ScalarExpr::coord(1) - ScalarExpr::int(1);
        assert!(matches!(
            Geometry::new(Chart::default(), h, &zero_conn()),
            Err(GeometryError::Form(FormError::SingularAt { .. }))
        ));
        let mut h = id_tetrad();
        h[2] = h[3].clone();
        assert!(matches!(
            Geometry::new(Chart::default(), h, &zero_conn()),
            Err(GeometryError::Form(FormError::SingularTetrad))
        ));
    }

    #[test]
    fn identities_on_random_geometries() {
        let ctx = crate::check::CheckContext::default();
        for seed in 0..3 {
            let g = random_geometry(seed).geometry;
            let inv = g.invariants();
            let mut all = bianchi_check(&g, &inv, &ctx).unwrap();
            all.extend(hodge_identity_check(&g, &inv, &ctx).unwrap());
            all.extend(decomposition_check(&g, &inv, &ctx).unwrap());
            for c in all {
                assert!(c.passed(), "seed {seed}: {c:?}");
            }
        }
    }
}
