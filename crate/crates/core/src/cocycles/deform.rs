//! One-step filtered deformations `[,] + Φ` of a graded Lie algebra.

use crate::ceco::{massey_bracket, require_cocycle, Cochain, Module};
use crate::error::{Error, Result};
use crate::liealg::{DegreeKind, LieAlgebra};
use crate::linalg::normalize;

/// `L` with bracket `[,] + Φ`, for a cocycle `Φ` of strictly positive degree
/// with `[Φ, Φ] = 0`. Jacobi is re-verified on every basis triple and the
/// result carries the grading of `L` as a filtration.
pub fn build_filtered_deformation(l: &LieAlgebra, phi: &Cochain) -> Result<LieAlgebra> {
    if !l.is_graded() {
        return Err(Error::Precondition("filtered deformations start from a graded algebra".into()));
    }
    if phi.degree() != 2 || phi.module() != Module::Adjoint || phi.algebra_dim() != l.dim() {
        return Err(Error::Precondition("Φ must be an adjoint 2-cochain on L".into()));
    }
    if let Some(&d) = phi.degree_support(l).iter().find(|&&d| d <= 0) {
        return Err(Error::Precondition(format!("Φ has a component of degree {d} <= 0")));
    }
    require_cocycle(l, phi)?;
    let mc = massey_bracket(l, phi, phi)?;
    if let Some((t, _)) = mc.iter().next() {
        return Err(Error::Precondition(format!("[Φ, Φ] does not vanish (first tuple {t:?})")));
    }
    let (f, labels, table) = l.raw_parts();
    let dim = l.dim();
    let mut table = table.to_vec();
    for (t, v) in phi.iter() {
        let (i, j) = (t[0], t[1]);
        let mut up = table[i * dim + j].clone();
        up.extend(v.iter().copied());
        table[i * dim + j] = normalize(f, up);
        let mut down = table[j * dim + i].clone();
        down.extend(v.iter().map(|&(k, c)| (k, f.neg(c))));
        table[j * dim + i] = normalize(f, down);
    }
    LieAlgebra::new(f.clone(), labels.to_vec(), table, l.degrees().map(<[i64]>::to_vec), DegreeKind::Filtration, l.toral())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Fp;
    use crate::cocycles::{endo_doc, materialize, CocycleRecipe, Frame, SRecipe};
    use crate::commalg::{divided_partial, ground_field, make_divided_powers};
    use crate::liealg::{find_proper_ideal, make_deformed};

    #[test]
    fn phi_partial_rebuilds_the_deformed_algebra() {
        let f = Fp::new(5).unwrap();
        let a = make_divided_powers(1, &f).unwrap();
        let frame = Frame::w1_current(1, a.clone()).unwrap();
        let phi = materialize(&CocycleRecipe::PhiBig { d: endo_doc(divided_partial(&a).map()) }, &frame).unwrap();
        let out = build_filtered_deformation(&frame.l, &phi).unwrap();
        assert!(out.same_brackets(&make_deformed(&a, &divided_partial(&a)).unwrap()));
    }

    #[test]
    fn zero_deformation_is_the_identity() {
        let f = Fp::new(5).unwrap();
        let frame = Frame::w1_current(1, make_divided_powers(1, &f).unwrap()).unwrap();
        let out = build_filtered_deformation(&frame.l, &Cochain::zero(&frame.l, 2, Module::Adjoint)).unwrap();
        assert!(out.same_brackets(&frame.l));
    }

    #[test]
    fn theta_psi_deformation_of_w1_2_has_no_weight_ideal() {
        let f = Fp::new(5).unwrap();
        let frame = Frame::w1_current(2, ground_field(&f)).unwrap();
        let c = materialize(&CocycleRecipe::Theta { phi: SRecipe::PsiT { t: 1 }, u: vec![1] }, &frame).unwrap();
        let out = build_filtered_deformation(&frame.l, &c).unwrap();
        assert!(find_proper_ideal(&out, 8, 7).is_none());
    }

    #[test]
    fn negative_components_are_rejected() {
        let f = Fp::new(5).unwrap();
        let frame = Frame::w1_current(1, ground_field(&f)).unwrap();
        let phi = materialize(&CocycleRecipe::Theta { phi: SRecipe::Phi21, u: vec![1] }, &frame).unwrap();
        assert!(matches!(build_filtered_deformation(&frame.l, &phi), Err(Error::Precondition(_))));
    }
}
