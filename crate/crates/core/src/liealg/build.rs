use crate::arith::Fp;
use crate::commalg::{divided_partial, extend_left, make_divided_powers, tensor_product, CommAlgebra, Derivation};
use crate::error::{Error, Result};
use crate::linalg::{solve, sparse_from_dense, SparseVec};

use super::{DegreeKind, LieAlgebra};

/// Basis position of `e_i` in `W1(n)`.
#[inline]
pub fn w1_index(i: i64) -> usize {
    (i + 1) as usize
}

/// Basis position of `x ⊗ a` in `L ⊗ A`.
#[inline]
pub fn current_index(x: usize, a: usize, dim_a: usize) -> usize {
    x * dim_a + a
}

/// The Zassenhaus algebra `W1(n)`, basis `e_{-1} .. e_{p^n - 2}` with
/// `[e_i, e_j] = N_ij e_{i+j}`, graded by index, toral element `e_0`.
pub fn make_w1(n: u32, field: &Fp) -> Result<LieAlgebra> {
    if n == 0 {
        return Err(Error::Precondition("W1(n) needs n >= 1".into()));
    }
    let size = (field.p() as u64)
        .checked_pow(n)
        .filter(|&s| s <= 4096)
        .ok_or_else(|| Error::Precondition(format!("W1({n}) over F_{} is too large", field.p())))? as i64;
    let top = size - 2;
    let d = size as usize;
    let mut table = vec![Vec::new(); d * d];
    for i in -1..=top {
        for j in -1..=top {
            if -1 <= i + j && i + j <= top {
                let c = field.structure_constant(i, j);
                if c != 0 {
                    table[w1_index(i) * d + w1_index(j)] = vec![(w1_index(i + j), c)];
                }
            }
        }
    }
    let labels = (-1..=top).map(|i| format!("e{i}")).collect();
    let degrees = Some((-1..=top).collect());
    LieAlgebra::new(field.clone(), labels, table, degrees, DegreeKind::Grading, Some(w1_index(0)))
}

/// `sl(2)` on `e_{-1} = f`, `e_0 = h/2`, `e_1 = e`:
/// `[e_0, e_{±1}] = ±e_{±1}`, `[e_1, e_{-1}] = 2 e_0`.
pub fn make_sl2(field: &Fp) -> Result<LieAlgebra> {
    let entries = [(1, 2, 2, 1), (1, 0, 0, field.neg(1)), (2, 0, 1, 2)];
    LieAlgebra::from_brackets(
        field.clone(),
        vec!["e-1".into(), "e0".into(), "e1".into()],
        &entries,
        Some(vec![-1, 0, 1]),
        DegreeKind::Grading,
        Some(1),
    )
}

pub fn abelian(dim: usize, field: &Fp) -> LieAlgebra {
    let labels = (0..dim).map(|i| format!("z{i}")).collect();
    LieAlgebra::new(field.clone(), labels, vec![Vec::new(); dim * dim], None, DegreeKind::Grading, None).expect("abelian")
}

/// Three-dimensional Heisenberg algebra `[x, y] = z`.
pub fn heisenberg(field: &Fp) -> LieAlgebra {
    LieAlgebra::from_brackets(field.clone(), vec!["x".into(), "y".into(), "z".into()], &[(0, 1, 2, 1)], None, DegreeKind::Grading, None)
        .expect("heisenberg")
}

/// `L ⊗ A` with `[x ⊗ a, y ⊗ b] = [x, y] ⊗ ab`; degrees come from `L` and the
/// toral element is `t ⊗ 1`.
pub fn current_algebra(l: &LieAlgebra, a: &CommAlgebra) -> Result<LieAlgebra> {
    if l.field() != a.field() {
        return Err(Error::FieldMismatch { left: l.field().p(), right: a.field().p() });
    }
    let f = l.field();
    let (dl, da) = (l.dim(), a.dim());
    let d = dl * da;
    let mut table = vec![Vec::new(); d * d];
    for x in 0..dl {
        for y in 0..dl {
            let br = l.bracket_basis(x, y);
            if br.is_empty() {
                continue;
            }
            for s in 0..da {
                for t in 0..da {
                    let prod = a.basis_product(s, t);
                    let mut v = Vec::with_capacity(br.len() * prod.len());
                    for &(z, c) in br {
                        for &(u, e) in prod {
                            v.push((current_index(z, u, da), f.mul(c, e)));
                        }
                    }
                    table[current_index(x, s, da) * d + current_index(y, t, da)] = v;
                }
            }
        }
    }
    let mut labels = Vec::with_capacity(d);
    for lx in l.labels() {
        for la in a.labels() {
            labels.push(format!("{lx}⊗{la}"));
        }
    }
    let degrees = l.degrees().map(|g| (0..d).map(|i| g[i / da]).collect());
    let toral = l.toral().map(|t| current_index(t, a.unit(), da));
    LieAlgebra::new(f.clone(), labels, table, degrees, l.degree_kind(), toral)
}

/// `L ⊗ A + 1 ⊗ 𝔇` where `𝔇` is spanned by `ds`. The action is
/// `[x ⊗ a, 1 ⊗ d] = x ⊗ d(a)`; for Jacobi this forces
/// `[1 ⊗ d, 1 ⊗ d'] = 1 ⊗ [d', d]`. `1 ⊗ 𝔇` sits in degree 0.
pub fn semidirect_current(l: &LieAlgebra, a: &CommAlgebra, ds: &[Derivation]) -> Result<LieAlgebra> {
    let base = current_algebra(l, a)?;
    let f = l.field();
    let (dl, da, r) = (l.dim(), a.dim(), ds.len());
    let n = dl * da;
    let d = n + r;
    let flat: Vec<SparseVec> = ds.iter().map(|e| sparse_from_dense(&e.map().flatten())).collect();
    if crate::linalg::independent_modulo(f, da * da, &[], &flat).len() != r {
        return Err(Error::Precondition("derivations are linearly dependent".into()));
    }
    let mut table = vec![Vec::new(); d * d];
    for i in 0..n {
        for j in 0..n {
            table[i * d + j] = base.bracket_basis(i, j).clone();
        }
    }
    for (k, dk) in ds.iter().enumerate() {
        for x in 0..dl {
            for s in 0..da {
                let img: SparseVec =
                    sparse_from_dense(dk.image_of_basis(s)).into_iter().map(|(u, c)| (current_index(x, u, da), c)).collect();
                let i = current_index(x, s, da);
                table[(n + k) * d + i] = img.iter().map(|&(u, c)| (u, f.neg(c))).collect();
                table[i * d + n + k] = img;
            }
        }
        for (m, dm) in ds.iter().enumerate() {
            let comm = dm.commutator(a, dk);
            let coeffs = solve(f, da * da, &flat, &sparse_from_dense(&comm.map().flatten()))
                .ok_or_else(|| Error::NotClosed(format!("[d{m}, d{k}] is not in the span")))?;
            table[(n + k) * d + n + m] = coeffs.into_iter().map(|(c, v)| (n + c, v)).collect();
        }
    }
    let mut labels = base.labels().to_vec();
    labels.extend((0..r).map(|k| format!("1⊗d{k}")));
    let degrees = base.degrees().map(|g| g.iter().copied().chain(std::iter::repeat_n(0, r)).collect());
    LieAlgebra::new(f.clone(), labels, table, degrees, base.degree_kind(), base.toral())
}

/// `𝔏(A, D)`: the space `W1(1) ⊗ A` with bracket `[,] + Φ_D`,
/// `Φ_D(e_{-1} ⊗ a, e_{-1} ⊗ b) = e_{p-2} ⊗ (a D(b) - b D(a))`.
/// Degrees are recorded as a filtration.
pub fn make_deformed(a: &CommAlgebra, d: &Derivation) -> Result<LieAlgebra> {
    Derivation::new(a, d.map().clone())?;
    let f = a.field();
    let w = make_w1(1, f)?;
    let base = current_algebra(&w, a)?;
    let da = a.dim();
    let dim = base.dim();
    let top = w1_index(f.p() as i64 - 2);
    let (_, labels, table) = base.raw_parts();
    let mut table = table.to_vec();
    for s in 0..da {
        for t in 0..da {
            let as_ = a.basis_vector(s);
            let bt = a.basis_vector(t);
            let x = a.mul(&as_, d.image_of_basis(t));
            let y = a.mul(&bt, d.image_of_basis(s));
            let i = current_index(0, s, da);
            let j = current_index(0, t, da);
            let mut extra: Vec<(usize, u32)> = Vec::new();
            for u in 0..da {
                let c = f.sub(x[u], y[u]);
                if c != 0 {
                    extra.push((current_index(top, u, da), c));
                }
            }
            let entry = &mut table[i * dim + j];
            entry.extend(extra);
        }
    }
    LieAlgebra::new(f.clone(), labels.to_vec(), table, base.degrees().map(<[i64]>::to_vec), DegreeKind::Filtration, base.toral())
}

/// A linear map between Lie algebras, by column images of basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub source_dim: usize,
    pub target_dim: usize,
    pub cols: Vec<SparseVec>,
}

impl LinearMap {
    pub fn identity(dim: usize) -> Self {
        LinearMap { source_dim: dim, target_dim: dim, cols: (0..dim).map(|i| vec![(i, 1)]).collect() }
    }

    pub fn zero(source_dim: usize, target_dim: usize) -> Self {
        LinearMap { source_dim, target_dim, cols: vec![Vec::new(); source_dim] }
    }

    pub fn apply_sparse(&self, f: &Fp, v: &[(usize, u32)]) -> SparseVec {
        let mut acc = Vec::new();
        for &(i, x) in v {
            for &(k, y) in &self.cols[i] {
                acc.push((k, f.mul(x, y)));
            }
        }
        crate::linalg::normalize(f, acc)
    }
}

/// Source, target and map of the isomorphism `W1(n) ⊗ A -> 𝔏(O_1(n-1) ⊗ A, ∂ ⊗ 1)`.
#[derive(Clone, Debug)]
pub struct Kuznetsov {
    pub source: LieAlgebra,
    pub target: LieAlgebra,
    pub map: LinearMap,
}

/// The unique `(k, i)` with `m = p k + i`, `-1 <= i <= p - 2`.
pub fn kuznetsov_split(m: i64, p: u32) -> (i64, i64) {
    let p = p as i64;
    let i = (m + 1).rem_euclid(p) - 1;
    ((m - i) / p, i)
}

/// `e_{pk+i} ⊗ a -> e_i ⊗ x^k ⊗ a`. For `A = K` (dimension 1) the source is
/// `W1(n)` and the target `𝔏(O_1(n-1), ∂)`.
pub fn kuznetsov_map(n: u32, a: &CommAlgebra) -> Result<Kuznetsov> {
    if n < 2 {
        return Err(Error::Precondition("the isomorphism needs n >= 2".into()));
    }
    let f = a.field();
    let p = f.p();
    let o = make_divided_powers(n - 1, f)?;
    let trivial = a.dim() == 1;
    let (coeff, source) =
        if trivial { (o.clone(), make_w1(n, f)?) } else { (tensor_product(&o, a)?, current_algebra(&make_w1(n, f)?, a)?) };
    let partial = divided_partial(&o);
    let dcoeff = if trivial { partial } else { extend_left(&coeff, &partial, a.dim())? };
    let target = make_deformed(&coeff, &dcoeff)?;
    let da = a.dim();
    let dc = coeff.dim();
    let top = (p as i64).pow(n) - 2;
    let mut cols = Vec::with_capacity(source.dim());
    for m in -1..=top {
        let (k, i) = kuznetsov_split(m, p);
        for s in 0..da {
            let c = current_index(k as usize, s, da);
            cols.push(vec![(current_index(w1_index(i), c, dc), 1)]);
        }
    }
    let map = LinearMap { source_dim: source.dim(), target_dim: target.dim(), cols };
    Ok(Kuznetsov { source, target, map })
}
