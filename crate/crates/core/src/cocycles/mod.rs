//! Named 2-cocycle families on current algebras `S ⊗ A`, on the deformed
//! algebras `𝔏(A, D)`, and on `S ⊗ A + 1 ⊗ 𝔇` (extended by zero on `1 ⊗ 𝔇`).

mod deform;
mod lambda;
mod lifted;

pub use deform::*;
pub use lambda::*;
pub use lifted::*;

use serde::{Deserialize, Serialize};

use crate::arith::{lambda_in, n_div_p_in, Fp};
use crate::ceco::{require_cocycle, Cochain, CochainDoc, Module};
use crate::commalg::{CommAlgebra, Derivation, Endomorphism};
use crate::error::{Error, Result};
use crate::hochschild::{solve_delta, star_action, SymmetricBilinearMap};
use crate::liealg::{current_algebra, current_index, make_deformed, make_w1, semidirect_current, w1_index, LieAlgebra};
use crate::linalg::SparseVec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrameKind {
    Current,
    Deformed,
    Semidirect,
}

/// A Lie algebra built on `S ⊗ A`, remembering its factors.
#[derive(Clone, Debug)]
pub struct Frame {
    pub s: LieAlgebra,
    /// `Some(n)` when `S = W1(n)`.
    pub w1_n: Option<u32>,
    pub a: CommAlgebra,
    pub l: LieAlgebra,
    pub kind: FrameKind,
    pub deformation: Option<Derivation>,
}

impl Frame {
    pub fn current(s: LieAlgebra, w1_n: Option<u32>, a: CommAlgebra) -> Result<Self> {
        let l = current_algebra(&s, &a)?;
        Ok(Frame { s, w1_n, a, l, kind: FrameKind::Current, deformation: None })
    }

    pub fn w1_current(n: u32, a: CommAlgebra) -> Result<Self> {
        Self::current(make_w1(n, a.field())?, Some(n), a)
    }

    /// `𝔏(A, D)` on `W1(1) ⊗ A`.
    pub fn deformed(a: CommAlgebra, d: Derivation) -> Result<Self> {
        let l = make_deformed(&a, &d)?;
        Ok(Frame { s: make_w1(1, a.field())?, w1_n: Some(1), a, l, kind: FrameKind::Deformed, deformation: Some(d) })
    }

    pub fn semidirect(s: LieAlgebra, w1_n: Option<u32>, a: CommAlgebra, ds: &[Derivation]) -> Result<Self> {
        let l = semidirect_current(&s, &a, ds)?;
        Ok(Frame { s, w1_n, a, l, kind: FrameKind::Semidirect, deformation: None })
    }

    pub fn field(&self) -> &Fp {
        self.l.field()
    }

    fn n(&self) -> Result<u32> {
        self.w1_n.ok_or_else(|| Error::Precondition("family needs S = W1(n)".into()))
    }

    /// `p^n - 2`, the top index of `W1(n)`.
    fn top(&self) -> Result<i64> {
        Ok((self.field().p() as i64).pow(self.n()?) - 2)
    }

    fn d(&self) -> Result<&Derivation> {
        match (self.kind, &self.deformation) {
            (FrameKind::Deformed, Some(d)) => Ok(d),
            _ => Err(Error::Precondition("lifted families live on 𝔏(A, D)".into())),
        }
    }

    /// Builds a cochain from values on pairs of basis elements `x ⊗ b_s`,
    /// `y ⊗ b_t` of `S ⊗ A`; `g` returns `(S index, dense A vector)` terms.
    fn pair_cochain(&self, mut g: impl FnMut(usize, usize, usize, usize) -> Vec<(usize, Vec<u32>)>) -> Cochain {
        let da = self.a.dim();
        let ncur = self.s.dim() * da;
        Cochain::from_fn(&self.l, 2, Module::Adjoint, |t| {
            if t[1] >= ncur {
                return Vec::new();
            }
            let mut out: SparseVec = Vec::new();
            for (z, v) in g(t[0] / da, t[0] % da, t[1] / da, t[1] % da) {
                out.extend(v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(u, &c)| (current_index(z, u, da), c)));
            }
            out
        })
    }

    fn av(&self, s: usize) -> Vec<u32> {
        self.a.basis_vector(s)
    }

    fn lin(&self, terms: &[(u32, Vec<u32>)]) -> Vec<u32> {
        let f = self.field();
        let mut acc = vec![0; self.a.dim()];
        for (c, v) in terms {
            for (x, y) in acc.iter_mut().zip(v) {
                *x = f.add(*x, f.mul(*c, *y));
            }
        }
        acc
    }
}

/// Cochains on the factor `S = W1(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SRecipe {
    /// `φ(e_i, e_j) = N_ij/p e_{i+j-p}` for `i + j >= p - 1` on `W1(1)`.
    Phi21,
    /// `ψ_t(e_{-1}, e_{p^t - 1}) = e_{p^n - 2}` on `W1(n)`, `1 <= t <= n - 1`.
    PsiT {
        t: u32,
    },
    Custom {
        cochain: CochainDoc,
    },
}

/// The cochain `r` on `s` (which is `W1(n)` for the named families).
pub fn s_cochain(r: &SRecipe, s: &LieAlgebra, n: Option<u32>) -> Result<Cochain> {
    let f = s.field();
    let p = f.p() as i64;
    match r {
        SRecipe::Phi21 => {
            if n != Some(1) {
                return Err(Error::Precondition("the cocycle φ lives on W1(1)".into()));
            }
            let mut c = Cochain::zero(s, 2, Module::Adjoint);
            for i in -1..=p - 2 {
                for j in i + 1..=p - 2 {
                    if i + j >= p - 1 {
                        c.add_at(s, &[w1_index(i), w1_index(j)], &vec![(w1_index(i + j - p), n_div_p_in(f, i, j)?.value())]);
                    }
                }
            }
            Ok(c)
        }
        SRecipe::PsiT { t } => {
            let n = n.ok_or_else(|| Error::Precondition("ψ_t lives on W1(n)".into()))?;
            if n < 2 {
                return Err(Error::Precondition("ψ_t needs n >= 2".into()));
            }
            if *t < 1 || *t > n - 1 {
                return Err(Error::Precondition(format!("ψ_t needs 1 <= t <= n - 1, got t = {t}")));
            }
            let mut c = Cochain::zero(s, 2, Module::Adjoint);
            c.add_at(s, &[w1_index(-1), w1_index(p.pow(*t) - 1)], &vec![(w1_index(p.pow(n) - 2), 1)]);
            Ok(c)
        }
        SRecipe::Custom { cochain } => Cochain::from_doc(s, cochain),
    }
}

/// Serializable description of a 2-cochain family. Algebra elements are dense
/// coordinate vectors; endomorphisms are lists of column images; symmetric
/// maps are `SymmetricBilinearMap::flatten` vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum CocycleRecipe {
    /// `Θ_{φ,u}(x ⊗ a, y ⊗ b) = φ(x, y) ⊗ abu`.
    Theta { phi: SRecipe, u: Vec<u32> },
    /// `Υ_F(x ⊗ a, y ⊗ b) = [x, y] ⊗ F(a, b)`.
    Upsilon { f: Vec<u32> },
    /// `e_{i+j} ⊗ (C(i+j+1, j) b D(a) - C(i+j+1, i) a D(b))` on `W1(n) ⊗ A`.
    Psi { d: Vec<Vec<u32>> },
    /// `Φ_D(e_{-1} ⊗ a, e_{-1} ⊗ b) = e_{p^n-2} ⊗ (a D(b) - b D(a))`.
    PhiBig { d: Vec<Vec<u32>> },
    /// `Θ'(e_i ⊗ a, e_j ⊗ b) = e_{i+j} ⊗ (λ_ij a D(b) - λ_ji b D(a)) u` on `W1(1) ⊗ A`.
    ThetaPrime { d: Vec<Vec<u32>>, u: Vec<u32> },
    /// `Θ_{φ,u} - R_u Θ'` on `𝔏(A, D)`, `u ∈ A^D`. With the differential used
    /// here the correction enters with a minus sign.
    LiftedTheta { u: Vec<u32> },
    /// `Υ_F` plus `e_{p-2} ⊗ (b H(a) - a H(b) - F(Da, b) + F(a, Db))` on the
    /// `e_{-1}` pairs; `H` solves `δH = D ★ F` when omitted.
    LiftedUpsilon { f: Vec<u32>, h: Option<Vec<Vec<u32>>> },
    /// `Ψ_E` plus `e_{p-2} ⊗ (E(a) D(b) - E(b) D(a))` on the `e_{-1}` pairs, `E ∈ Der(A)^D`.
    LiftedPsi { e: Vec<Vec<u32>> },
    /// `Φ_E` on `𝔏(A, D)`.
    LiftedPhi { e: Vec<Vec<u32>> },
}

pub fn endo_doc(e: &Endomorphism) -> Vec<Vec<u32>> {
    e.cols.clone()
}

fn derivation_from(a: &CommAlgebra, cols: &[Vec<u32>]) -> Result<Derivation> {
    if cols.len() != a.dim() || cols.iter().any(|c| c.len() != a.dim()) {
        return Err(Error::Malformed(format!("endomorphism must be {0}x{0}", a.dim())));
    }
    Derivation::new(a, Endomorphism { cols: cols.to_vec() })
}

fn element_from(a: &CommAlgebra, u: &[u32]) -> Result<Vec<u32>> {
    if u.len() != a.dim() {
        return Err(Error::Malformed(format!("element has {} coordinates, expected {}", u.len(), a.dim())));
    }
    Ok(u.iter().map(|&x| x % a.field().p()).collect())
}

fn symmetric_from(a: &CommAlgebra, f: &[u32]) -> Result<SymmetricBilinearMap> {
    let d = a.dim();
    if f.len() != d * (d + 1) / 2 * d {
        return Err(Error::Malformed("symmetric map has the wrong length".into()));
    }
    Ok(SymmetricBilinearMap::from_flat(d, f))
}

impl CocycleRecipe {
    pub fn family(&self) -> &'static str {
        match self {
            CocycleRecipe::Theta { phi: SRecipe::Phi21, .. } => "theta_phi",
            CocycleRecipe::Theta { phi: SRecipe::PsiT { .. }, .. } => "theta_psi_t",
            CocycleRecipe::Theta { .. } => "theta",
            CocycleRecipe::Upsilon { .. } => "upsilon",
            CocycleRecipe::Psi { .. } => "psi",
            CocycleRecipe::PhiBig { .. } => "phi_big",
            CocycleRecipe::ThetaPrime { .. } => "theta_prime",
            CocycleRecipe::LiftedTheta { .. } => "lifted_theta",
            CocycleRecipe::LiftedUpsilon { .. } => "lifted_upsilon",
            CocycleRecipe::LiftedPsi { .. } => "lifted_psi",
            CocycleRecipe::LiftedPhi { .. } => "lifted_phi",
        }
    }

    /// The degree slice the cochain lands in, for graded frames.
    pub fn declared_degree(&self, frame: &Frame) -> Option<i64> {
        let p = frame.field().p() as i64;
        let n = frame.w1_n?;
        match self {
            CocycleRecipe::Theta { phi: SRecipe::Phi21, .. } => Some(-p),
            CocycleRecipe::Theta { phi: SRecipe::PsiT { t }, .. } => Some(p.pow(n) - p.pow(*t)),
            CocycleRecipe::Upsilon { .. } | CocycleRecipe::Psi { .. } | CocycleRecipe::ThetaPrime { .. } => Some(0),
            CocycleRecipe::PhiBig { .. } => Some(p.pow(n)),
            _ => None,
        }
    }
}

/// Builds the cochain without checking the cocycle condition.
pub fn materialize_unchecked(r: &CocycleRecipe, frame: &Frame) -> Result<Cochain> {
    let f = frame.field().clone();
    let a = &frame.a;
    match r {
        CocycleRecipe::Theta { phi, u } => {
            let u = element_from(a, u)?;
            let phi = s_cochain(phi, &frame.s, frame.w1_n)?;
            Ok(frame.pair_cochain(|x, s, y, t| {
                let abu = a.mul(&a.mul(&frame.av(s), &frame.av(t)), &u);
                phi.eval_basis(&frame.s, &[x, y]).into_iter().map(|(z, c)| (z, abu.iter().map(|&v| f.mul(c, v)).collect())).collect()
            }))
        }
        CocycleRecipe::Upsilon { f: fm } => {
            let fm = symmetric_from(a, fm)?;
            Ok(frame.pair_cochain(|x, s, y, t| {
                let v = fm.get(s, t);
                frame.s.bracket_basis(x, y).iter().map(|&(z, c)| (z, v.iter().map(|&w| f.mul(c, w)).collect())).collect()
            }))
        }
        CocycleRecipe::Psi { d } => {
            let d = derivation_from(a, d)?;
            let top = frame.top()?;
            Ok(frame.pair_cochain(|x, s, y, t| {
                let (i, j) = (x as i64 - 1, y as i64 - 1);
                if i + j < -1 || i + j > top {
                    return Vec::new();
                }
                let bda = a.mul(&frame.av(t), d.image_of_basis(s));
                let adb = a.mul(&frame.av(s), d.image_of_basis(t));
                let v = frame.lin(&[(f.binom(i + j + 1, j), bda), (f.neg(f.binom(i + j + 1, i)), adb)]);
                vec![(w1_index(i + j), v)]
            }))
        }
        CocycleRecipe::PhiBig { d } | CocycleRecipe::LiftedPhi { e: d } => {
            let d = derivation_from(a, d)?;
            if matches!(r, CocycleRecipe::LiftedPhi { .. }) {
                frame.d()?;
            }
            let top = frame.top()?;
            Ok(frame.pair_cochain(|x, s, y, t| {
                if x != w1_index(-1) || y != w1_index(-1) {
                    return Vec::new();
                }
                let adb = a.mul(&frame.av(s), d.image_of_basis(t));
                let bda = a.mul(&frame.av(t), d.image_of_basis(s));
                vec![(w1_index(top), frame.lin(&[(1, adb), (f.neg(1), bda)]))]
            }))
        }
        CocycleRecipe::ThetaPrime { d, u } => {
            let d = derivation_from(a, d)?;
            let u = element_from(a, u)?;
            theta_prime(frame, &d, &u)
        }
        CocycleRecipe::LiftedTheta { u } => {
            let d = frame.d()?.clone();
            let u = element_from(a, u)?;
            if d.apply(a, &u).iter().any(|&c| c != 0) {
                return Err(Error::Precondition("lifted Θ_u needs D(u) = 0".into()));
            }
            let base = materialize_unchecked(&CocycleRecipe::Theta { phi: SRecipe::Phi21, u: u.clone() }, frame)?;
            Ok(base.sub(&frame.l, &theta_prime(frame, &d, &u)?))
        }
        CocycleRecipe::LiftedUpsilon { f: fm, h } => {
            let d = frame.d()?.clone();
            let fmap = symmetric_from(a, fm)?;
            if !fmap.is_cocycle(a) {
                return Err(Error::Precondition("lifted Υ needs F to be a Hochschild cocycle".into()));
            }
            let h = match h {
                Some(cols) => {
                    if cols.len() != a.dim() || cols.iter().any(|c| c.len() != a.dim()) {
                        return Err(Error::Malformed("H has the wrong shape".into()));
                    }
                    Endomorphism { cols: cols.clone() }
                }
                None => {
                    solve_delta(a, &star_action(a, &d, &fmap)).ok_or_else(|| Error::Precondition("D ★ F is not a coboundary".into()))?
                }
            };
            let delta_h = crate::hochschild::delta_one(a, &h);
            if delta_h != star_action(a, &d, &fmap) {
                return Err(Error::Precondition("lifted Υ needs δH = D ★ F".into()));
            }
            let base = materialize_unchecked(&CocycleRecipe::Upsilon { f: fm.clone() }, frame)?;
            let line = frame.pair_cochain(|x, s, y, t| {
                if x != w1_index(-1) || y != w1_index(-1) {
                    return Vec::new();
                }
                let (va, vb) = (frame.av(s), frame.av(t));
                let terms = [
                    (1, a.mul(&vb, &h.apply(&f, &va))),
                    (f.neg(1), a.mul(&va, &h.apply(&f, &vb))),
                    (f.neg(1), fmap.apply(&f, d.image_of_basis(s), &vb)),
                    (1, fmap.apply(&f, &va, d.image_of_basis(t))),
                ];
                vec![(w1_index(f.p() as i64 - 2), frame.lin(&terms))]
            });
            Ok(base.add(&frame.l, &line))
        }
        CocycleRecipe::LiftedPsi { e } => {
            let d = frame.d()?.clone();
            let e = derivation_from(a, e)?;
            if !e.commutator(a, &d).is_zero() {
                return Err(Error::Precondition("lifted Ψ_E needs [E, D] = 0".into()));
            }
            let base = materialize_unchecked(&CocycleRecipe::Psi { d: endo_doc(e.map()) }, frame)?;
            let line = frame.pair_cochain(|x, s, y, t| {
                if x != w1_index(-1) || y != w1_index(-1) {
                    return Vec::new();
                }
                let ea_db = a.mul(e.image_of_basis(s), d.image_of_basis(t));
                let eb_da = a.mul(e.image_of_basis(t), d.image_of_basis(s));
                vec![(w1_index(f.p() as i64 - 2), frame.lin(&[(1, ea_db), (f.neg(1), eb_da)]))]
            });
            Ok(base.add(&frame.l, &line))
        }
    }
}

fn theta_prime(frame: &Frame, d: &Derivation, u: &[u32]) -> Result<Cochain> {
    if frame.w1_n != Some(1) {
        return Err(Error::Precondition("Θ' lives on W1(1) ⊗ A".into()));
    }
    let f = frame.field().clone();
    let a = &frame.a;
    let p = f.p() as i64;
    let mut lam = vec![vec![0u32; p as usize]; p as usize];
    for i in -1..=p - 2 {
        for j in -1..=p - 2 {
            lam[(i + 1) as usize][(j + 1) as usize] = lambda_in(&f, i, j)?.value();
        }
    }
    Ok(frame.pair_cochain(|x, s, y, t| {
        let (i, j) = (x as i64 - 1, y as i64 - 1);
        if !(-2 < i + j && i + j < p - 1) {
            return Vec::new();
        }
        let adb = a.mul(&a.mul(&frame.av(s), d.image_of_basis(t)), u);
        let bda = a.mul(&a.mul(&frame.av(t), d.image_of_basis(s)), u);
        let l_ij = lam[x][y];
        let l_ji = lam[y][x];
        vec![(w1_index(i + j), frame.lin(&[(l_ij, adb), (f.neg(l_ji), bda)]))]
    }))
}

/// Whether the family is closed for every admissible parameter.
fn always_closed(r: &CocycleRecipe, frame: &Frame) -> bool {
    match r {
        CocycleRecipe::Theta { phi: SRecipe::Custom { cochain }, .. } => {
            Cochain::from_doc(&frame.s, cochain).map(|c| crate::ceco::is_cocycle(&frame.s, &c)).unwrap_or(false)
        }
        CocycleRecipe::Theta { .. } => true,
        CocycleRecipe::Upsilon { f } => symmetric_from(&frame.a, f).map(|m| m.is_cocycle(&frame.a)).unwrap_or(false),
        CocycleRecipe::ThetaPrime { .. } => false,
        _ => true,
    }
}

/// Builds the cochain; for the families that are closed by construction the
/// cocycle condition is verified and a failure reports the first bad triple.
pub fn materialize(r: &CocycleRecipe, frame: &Frame) -> Result<Cochain> {
    let c = materialize_unchecked(r, frame)?;
    if always_closed(r, frame) {
        require_cocycle(&frame.l, &c)?;
    }
    Ok(c)
}

/// The families on `W1(1) ⊗ A` with one parameter per basis vector of `A`,
/// of `Har^2(A, A)` and of `Der(A)`.
pub fn current_family_recipes(a: &CommAlgebra) -> Vec<CocycleRecipe> {
    let mut out: Vec<CocycleRecipe> = (0..a.dim()).map(|s| CocycleRecipe::Theta { phi: SRecipe::Phi21, u: a.basis_vector(s) }).collect();
    out.extend(crate::hochschild::harrison_h2(a).representatives.iter().map(|f| CocycleRecipe::Upsilon { f: f.flatten() }));
    for d in crate::commalg::derivation_space(a) {
        out.push(CocycleRecipe::Psi { d: endo_doc(d.map()) });
        out.push(CocycleRecipe::PhiBig { d: endo_doc(d.map()) });
    }
    out
}

/// `Θ_{ψ_t, u}` for `1 <= t < n` and `u` in a basis of `A^∂`, then `Φ_∂`.
pub fn positive_recipes(frame: &Frame) -> Result<Vec<CocycleRecipe>> {
    let n = frame.w1_n.ok_or_else(|| Error::Precondition("positive families need S = W1(n)".into()))?;
    let d = crate::commalg::divided_partial(&frame.a);
    let us = crate::commalg::d_invariants(&frame.a, &d)?;
    let mut out = Vec::new();
    for t in 1..n {
        out.extend(us.basis.iter().map(|u| CocycleRecipe::Theta { phi: SRecipe::PsiT { t }, u: u.clone() }));
    }
    out.push(CocycleRecipe::PhiBig { d: endo_doc(d.map()) });
    Ok(out)
}
