//! Identities that every metric-affine geometry satisfies: Bianchi
//! identities, covariant derivatives of the Hodge-dual coframe families,
//! and the decomposition of the connection.

use super::{Geometry, GeometryError, GeometryInvariants, LL};
use crate::check::{compare_forms, CheckContext, CheckOutcome};
use crate::expr::ScalarExpr;
use crate::family::{cov_d_tensor, kronecker, metric_family, IndexedFamily, Symmetry, Variance};
use crate::forms::{hodge, wedge, Form};

/// `*e_{a₁…a_k} = *(e_{a₁}∧…∧e_{a_k})`, a family of (4−k)-forms.
pub fn hodge_lower(rank: usize) -> IndexedFamily {
    let slots = vec![Variance::Lower; rank];
    IndexedFamily::from_fn(&slots, Symmetry::None, 4 - rank, |idx| {
        let f = idx.iter().fold(Form::function(ScalarExpr::one()), |acc, &a| wedge(&acc, &Form::coframe_lower(a)));
        hodge(&f)
    })
    .expect("valid")
}

/// `*eᵃ`.
pub fn hodge_upper() -> IndexedFamily {
    IndexedFamily::from_fn(&[Variance::Upper], Symmetry::None, 3, |idx| hodge(&Form::coframe(idx[0]))).expect("valid")
}

fn family_pairs(lhs: &IndexedFamily, rhs: &IndexedFamily) -> Vec<(Form, Form)> {
    lhs.iter().map(|(idx, f)| (f.clone(), rhs.get(&idx).clone())).collect()
}

fn zero_like(f: &IndexedFamily, degree: usize) -> IndexedFamily {
    IndexedFamily::zero(f.slots(), Symmetry::None, degree).expect("valid")
}

/// `DQ_ab = R_(ab)`, `DTᵃ = Rᵃ_b∧eᵇ`, `DRᵃ_b = 0`.
pub fn bianchi_check(
    geom: &Geometry,
    inv: &GeometryInvariants,
    ctx: &CheckContext,
) -> Result<Vec<CheckOutcome>, GeometryError> {
    let r_lower = inv.curvature.flip(0);
    let r_sym = IndexedFamily::from_fn(&LL, Symmetry::Symmetric, 2, |i| {
        r_lower.get(&[i[0], i[1]]).plus(r_lower.get(&[i[1], i[0]])).scaled(&ScalarExpr::ratio(1, 2))
    })?;
    let dq = geom.cov_d(&inv.nonmetricity)?;
    let dt = geom.cov_d(&inv.torsion)?;
    let r_e = IndexedFamily::from_fn(&[Variance::Upper], Symmetry::None, 3, |i| {
        (0..4).fold(Form::zero(3), |acc, b| acc.plus(&wedge(inv.curvature.get(&[i[0], b]), &Form::coframe(b))))
    })?;
    let dr = geom.cov_d(&inv.curvature)?;
    Ok(vec![
        compare_forms("bianchi/nonmetricity", &family_pairs(&dq, &r_sym), ctx)?,
        compare_forms("bianchi/torsion", &family_pairs(&dt, &r_e), ctx)?,
        compare_forms("bianchi/curvature", &family_pairs(&dr, &zero_like(&dr, 3)), ctx)?,
    ])
}

/// `D*e_{A} = −Q∧*e_{A} + Tᵇ∧*e_{Ab}` for ranks 1 to 4, and
/// `D*eᵃ − Q^{ab}∧*e_b = *eᵃ∧(Q + T − P)`.
pub fn hodge_identity_check(
    geom: &Geometry,
    inv: &GeometryInvariants,
    ctx: &CheckContext,
) -> Result<Vec<CheckOutcome>, GeometryError> {
    let q = &inv.traces.q;
    let mut out = Vec::new();
    let families: Vec<IndexedFamily> = (1..=4).map(hodge_lower).collect();
    for rank in 1..=4 {
        let fam = &families[rank - 1];
        let lhs = geom.cov_d(fam)?;
        let rhs = IndexedFamily::from_fn(fam.slots(), Symmetry::None, 5 - rank, |idx| {
            let mut f = wedge(q, fam.get(idx)).negated();
            if rank < 4 {
                let next = &families[rank];
                let mut j = idx.to_vec();
                j.push(0);
                for b in 0..4 {
                    j[rank] = b;
                    f = f.plus(&wedge(inv.torsion.get(&[b]), next.get(&j)));
                }
            }
            f
        })?;
        out.push(compare_forms(&format!("hodge/rank-{rank}"), &family_pairs(&lhs, &rhs), ctx)?);
    }

    let star_up = hodge_upper();
    let star_lo = &families[0];
    let q_up = inv.nonmetricity.flip(0).flip(1);
    let d_star = geom.cov_d(&star_up)?;
    let sum = q.plus(&inv.traces.t).minus(&inv.traces.p);
    let mut pairs = Vec::new();
    for a in 0..4 {
        let lhs =
            (0..4).fold(d_star.get(&[a]).clone(), |acc, b| acc.minus(&wedge(q_up.get(&[a, b]), star_lo.get(&[b]))));
        pairs.push((lhs, wedge(star_up.get(&[a]), &sum)));
    }
    out.push(compare_forms("hodge/combined", &pairs, ctx)?);
    Ok(out)
}

/// Decomposition of the connection into Levi-Civita and distortion parts,
/// and the wedge characterisations of ω̃ and K.
pub fn decomposition_check(
    geom: &Geometry,
    inv: &GeometryInvariants,
    ctx: &CheckContext,
) -> Result<Vec<CheckOutcome>, GeometryError> {
    let w = geom.connection_lower();
    let mut out = Vec::new();

    let recomposed = inv.levi_civita.without_symmetry().plus(&inv.distortion)?;
    out.push(compare_forms("decomposition/recompose", &family_pairs(&w, &recomposed), ctx)?);

    let sym = IndexedFamily::from_fn(&LL, Symmetry::None, 1, |i| {
        w.get(&[i[0], i[1]]).plus(w.get(&[i[1], i[0]])).scaled(&ScalarExpr::ratio(1, 2))
    })?;
    out.push(compare_forms(
        "decomposition/symmetric-part",
        &family_pairs(&sym, &inv.nonmetricity.without_symmetry()),
        ctx,
    )?);

    let dis = Geometry::disformation_antisymmetric(&inv.nonmetricity);
    let anti_l = IndexedFamily::from_fn(&LL, Symmetry::None, 1, |i| {
        w.get(&[i[0], i[1]]).minus(w.get(&[i[1], i[0]])).scaled(&ScalarExpr::ratio(1, 2))
    })?;
    let anti_r = IndexedFamily::from_fn(&LL, Symmetry::None, 1, |i| {
        inv.levi_civita.get(i).plus(inv.contortion.get(i)).plus(dis.get(i))
    })?;
    out.push(compare_forms("decomposition/antisymmetric-part", &family_pairs(&anti_l, &anti_r), ctx)?);

    let k_up = inv.contortion.flip(0);
    let lc_up = inv.levi_civita.flip(0);
    let mut k_pairs = Vec::new();
    let mut lc_pairs = Vec::new();
    for a in 0..4 {
        let ke = (0..4).fold(Form::zero(2), |acc, b| acc.plus(&wedge(k_up.get(&[a, b]), &Form::coframe(b))));
        k_pairs.push((ke, inv.torsion.get(&[a]).clone()));
        let le = (0..4).fold(Form::zero(2), |acc, b| acc.plus(&wedge(lc_up.get(&[a, b]), &Form::coframe(b))));
        lc_pairs.push((le, geom.frame().d_coframe(a).negated()));
    }
    out.push(compare_forms("decomposition/contortion-wedge", &k_pairs, ctx)?);
    out.push(compare_forms("decomposition/levi-civita-wedge", &lc_pairs, ctx)?);

    let riem = geom.riemannian();
    let zero2 = IndexedFamily::zero(&[Variance::Upper], Symmetry::None, 2)?;
    let zero_q = IndexedFamily::zero(&LL, Symmetry::None, 1)?;
    let mut riem_pairs = family_pairs(&riem.torsion(), &zero2);
    riem_pairs.extend(family_pairs(&riem.nonmetricity().without_symmetry(), &zero_q));
    out.push(compare_forms("decomposition/riemannian-limit", &riem_pairs, ctx)?);

    let frame = geom.frame();
    let omega = geom.connection();
    let d_eta_lo = cov_d_tensor(&metric_family(Variance::Lower), omega, frame)?;
    let d_eta_up = cov_d_tensor(&metric_family(Variance::Upper), omega, frame)?;
    let d_delta = cov_d_tensor(&kronecker(), omega, frame)?;
    let q_up = inv.nonmetricity.flip(0).flip(1);
    let mut pairs = Vec::new();
    for (idx, f) in d_eta_lo.iter() {
        pairs.push((f.clone(), inv.nonmetricity.get(&idx).scaled(&ScalarExpr::int(-2))));
        pairs.push((d_eta_up.get(&idx).clone(), q_up.get(&idx).scaled(&ScalarExpr::int(2))));
        pairs.push((d_delta.get(&idx).clone(), Form::zero(1)));
    }
    out.push(compare_forms("decomposition/metric-derivatives", &pairs, ctx)?);
    Ok(out)
}
