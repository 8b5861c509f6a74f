//! Basic 2-cocycles of `𝔏(A, D)` lifted from `W1(1) ⊗ A`.

use serde::{Deserialize, Serialize};

use super::{endo_doc, materialize, CocycleRecipe, Frame};
use crate::ceco::{class_span_dim, cohomology_dim, Cochain, Module};
use crate::commalg::{d_invariants, der_coinvariants, der_invariants, CommAlgebra, Derivation};
use crate::error::Result;
use crate::hochschild::{harrison_h2, star_action, HarrisonH2, SymmetricBilinearMap};
use crate::linalg::{independent_modulo, sparse_from_dense, SparseMatrix, SparseVec};

/// Symmetric cocycles `F` whose class is `D`-invariant (`D ★ F` a
/// coboundary), independent modulo coboundaries.
pub fn harrison_invariant_classes(a: &CommAlgebra, h: &HarrisonH2, d: &Derivation) -> Vec<SymmetricBilinearMap> {
    let f = a.field();
    let z = &h.cocycles;
    let b = &h.coboundaries;
    let ambient = a.dim() * (a.dim() + 1) / 2 * a.dim();
    // columns: D★z_i, then the coboundaries; a kernel vector gives a combination
    // of cocycles whose D★ image is a coboundary
    let cols: Vec<Vec<u32>> = z.iter().map(|zi| star_action(a, d, zi).flatten()).chain(b.iter().map(|bi| bi.flatten())).collect();
    let rows: Vec<SparseVec> = (0..ambient)
        .map(|r| cols.iter().enumerate().filter(|(_, c)| c[r] != 0).map(|(i, c)| (i, c[r])).collect::<SparseVec>())
        .filter(|r| !r.is_empty())
        .collect();
    let ker = SparseMatrix::new(cols.len(), rows).kernel(f);
    let candidates: Vec<SymmetricBilinearMap> = ker
        .iter()
        .map(|v| {
            let mut acc = SymmetricBilinearMap::zero(a.dim());
            for &(i, c) in v {
                if i < z.len() {
                    acc = acc.add(f, &z[i].scale(f, c));
                }
            }
            acc
        })
        .collect();
    let base: Vec<SparseVec> = b.iter().map(|x| sparse_from_dense(&x.flatten())).collect();
    let cand: Vec<SparseVec> = candidates.iter().map(|x| sparse_from_dense(&x.flatten())).collect();
    independent_modulo(f, ambient, &base, &cand).into_iter().map(|i| candidates[i].clone()).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyOutcome {
    pub family: String,
    /// Dimension of the parameter space computed from `A` and `D`.
    pub parameters: usize,
    pub closed: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LiftedReport {
    pub families: Vec<FamilyOutcome>,
    /// `dim A^D + dim Der(A)_D + dim Der(A)^D + dim Har^2(A, A)^D`.
    pub expected_classes: usize,
    pub independent_classes: usize,
    pub h2_dim: usize,
    pub recipes: Vec<CocycleRecipe>,
}

impl LiftedReport {
    pub fn passed(&self) -> bool {
        self.families.iter().all(|f| f.closed && f.error.is_none())
            && self.independent_classes == self.expected_classes
            && self.h2_dim == self.expected_classes
    }
}

/// Parameters for the four lifted families: a basis of `A^D`, of `D`-invariant
/// Harrison classes, of `Der(A)^D` and of `Der(A)_D`.
pub fn lifted_recipes(a: &CommAlgebra, d: &Derivation) -> Result<Vec<(String, Vec<CocycleRecipe>)>> {
    let us = d_invariants(a, d)?;
    let h = harrison_h2(a);
    let fs = harrison_invariant_classes(a, &h, d);
    let es = der_invariants(a, d)?;
    let eps = der_coinvariants(a, d)?;
    Ok(vec![
        ("lifted_theta".into(), us.basis.iter().map(|u| CocycleRecipe::LiftedTheta { u: u.clone() }).collect()),
        ("lifted_upsilon".into(), fs.iter().map(|f| CocycleRecipe::LiftedUpsilon { f: f.flatten(), h: None }).collect()),
        ("lifted_psi".into(), es.iter().map(|e| CocycleRecipe::LiftedPsi { e: endo_doc(e.map()) }).collect()),
        ("lifted_phi".into(), eps.representatives.iter().map(|e| CocycleRecipe::LiftedPhi { e: endo_doc(e.map()) }).collect()),
    ])
}

/// Materializes every lifted family on `𝔏(A, D)`, checks each is closed, and
/// compares the number of independent classes with the four summands and
/// with the directly computed `H^2`.
pub fn lifted_family_check(a: &CommAlgebra, d: &Derivation, budget: u64) -> Result<LiftedReport> {
    let frame = Frame::deformed(a.clone(), d.clone())?;
    let groups = lifted_recipes(a, d)?;
    let mut families = Vec::new();
    let mut cochains: Vec<Cochain> = Vec::new();
    let mut recipes = Vec::new();
    let mut expected = 0;
    for (name, rs) in groups {
        expected += rs.len();
        let mut outcome = FamilyOutcome { family: name, parameters: rs.len(), closed: true, error: None };
        for r in rs {
            match materialize(&r, &frame) {
                Ok(c) => cochains.push(c),
                Err(e) => {
                    outcome.closed = false;
                    outcome.error = Some(e.to_string());
                }
            }
            recipes.push(r);
        }
        families.push(outcome);
    }
    let independent = class_span_dim(&frame.l, &cochains, budget)?;
    let h2 = cohomology_dim(&frame.l, 2, Module::Adjoint, true, budget)?.dim;
    Ok(LiftedReport { families, expected_classes: expected, independent_classes: independent, h2_dim: h2, recipes })
}
