use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::commalg::{derivation_space, CommAlgebra, Subspace};
use crate::error::{Error, Result};
use crate::linalg::{dense_from_sparse, sparse_from_dense, Echelon, SparseMatrix, SparseVec};

use super::{current_index, LieAlgebra, LinearMap};

/// Eigenvalue of `ad t` on each basis vector; errors if `ad t` is not
/// diagonal on the basis.
pub fn root_decomposition(l: &LieAlgebra, t: usize) -> Result<Vec<u32>> {
    let mut w = Vec::with_capacity(l.dim());
    for j in 0..l.dim() {
        match l.bracket_basis(t, j).as_slice() {
            [] => w.push(0),
            [(k, c)] if *k == j => w.push(*c),
            _ => return Err(Error::NotDiagonal(j)),
        }
    }
    Ok(w)
}

/// `ad x` as an endomorphism, flattened column-major (`j * dim + k`).
pub fn ad_flat(l: &LieAlgebra, x: usize) -> SparseVec {
    let d = l.dim();
    let mut v = Vec::new();
    for j in 0..d {
        for &(k, c) in l.bracket_basis(x, j) {
            v.push((j * d + k, c));
        }
    }
    v
}

pub fn center(l: &LieAlgebra) -> Subspace {
    let d = l.dim();
    // row (j, k): Σ_i z_i c^k_{ij} = 0
    let mut rows: Vec<Vec<(usize, u32)>> = vec![Vec::new(); d * d];
    for i in 0..d {
        for j in 0..d {
            for &(k, c) in l.bracket_basis(i, j) {
                rows[j * d + k].push((i, c));
            }
        }
    }
    let rows = rows.into_iter().filter(|r| !r.is_empty()).collect();
    let ker = SparseMatrix::new(d, rows).kernel(l.field());
    Subspace { ambient: d, basis: ker.iter().map(|v| dense_from_sparse(v, d)).collect() }
}

fn bracket_span(l: &LieAlgebra, u: &[SparseVec], v: &[SparseVec]) -> Vec<SparseVec> {
    let mut ech = Echelon::new(l.field().clone(), l.dim());
    for x in u {
        for y in v {
            ech.insert(&l.bracket_sparse(x, y));
            if ech.rank() == l.dim() {
                return ech.rows().to_vec();
            }
        }
    }
    ech.rows().to_vec()
}

/// Dimensions of `S, [S, S], ...` for the span `S` of `basis`, stopping once
/// the series stabilizes (the last entry repeats) or reaches 0.
pub fn derived_series_of(l: &LieAlgebra, basis: &[Vec<u32>]) -> Vec<usize> {
    let mut cur: Vec<SparseVec> = {
        let mut ech = Echelon::new(l.field().clone(), l.dim());
        for b in basis {
            ech.insert(&sparse_from_dense(b));
        }
        ech.rows().to_vec()
    };
    let mut dims = vec![cur.len()];
    while !cur.is_empty() {
        let next = bracket_span(l, &cur, &cur);
        let stable = next.len() == cur.len();
        dims.push(next.len());
        cur = next;
        if stable {
            break;
        }
    }
    dims
}

pub fn derived_series(l: &LieAlgebra) -> Vec<usize> {
    let all: Vec<Vec<u32>> = (0..l.dim()).map(|i| l.basis_vector(i)).collect();
    derived_series_of(l, &all)
}

pub fn is_solvable(l: &LieAlgebra) -> bool {
    derived_series(l).last() == Some(&0)
}

/// Closure of the span of `gens` under `ad L`.
pub fn ideal_generated_by(l: &LieAlgebra, gens: &[Vec<u32>]) -> Subspace {
    let d = l.dim();
    let mut ech = Echelon::new(l.field().clone(), d);
    let mut queue: Vec<SparseVec> = Vec::new();
    for g in gens {
        let v = sparse_from_dense(g);
        if ech.insert(&v) {
            queue.push(v);
        }
    }
    while let Some(v) = queue.pop() {
        if ech.rank() == d {
            break;
        }
        for j in 0..d {
            let w = l.bracket_sparse(&v, &[(j, 1)]);
            if !w.is_empty() && ech.insert(&w) {
                queue.push(w);
            }
        }
    }
    Subspace { ambient: d, basis: ech.rows().iter().map(|v| dense_from_sparse(v, d)).collect() }
}

pub fn is_ideal(l: &LieAlgebra, s: &Subspace) -> bool {
    let mut ech = Echelon::new(l.field().clone(), l.dim());
    let vecs: Vec<SparseVec> = s.basis.iter().map(|b| sparse_from_dense(b)).collect();
    for v in &vecs {
        ech.insert(v);
    }
    vecs.iter().all(|v| (0..l.dim()).all(|j| ech.contains(&l.bracket_sparse(v, &[(j, 1)]))))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealRoute {
    /// Generated by a basis (weight) vector.
    WeightVector(usize),
    /// Generated by the `n`-th random vector.
    Random(usize),
}

#[derive(Clone, Debug)]
pub struct ProperIdeal {
    pub ideal: Subspace,
    pub route: IdealRoute,
}

/// Searches for a proper nonzero ideal: first the ideals generated by each
/// basis vector (weight vectors when a toral element is present), then those
/// generated by `trials` seeded random vectors. A returned ideal has been
/// re-verified; `None` only means nothing was found.
pub fn find_proper_ideal(l: &LieAlgebra, trials: usize, seed: u64) -> Option<ProperIdeal> {
    let d = l.dim();
    let accept =
        |s: Subspace, route: IdealRoute| (s.dim() > 0 && s.dim() < d && is_ideal(l, &s)).then_some(ProperIdeal { ideal: s, route });
    for i in 0..d {
        if let Some(found) = accept(ideal_generated_by(l, &[l.basis_vector(i)]), IdealRoute::WeightVector(i)) {
            return Some(found);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = l.field().p();
    for t in 0..trials {
        let v: Vec<u32> = (0..d).map(|_| rng.gen_range(0..p)).collect();
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        if let Some(found) = accept(ideal_generated_by(l, &[v]), IdealRoute::Random(t)) {
            return Some(found);
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismCheck {
    pub bijective: bool,
    pub failing_pair: Option<(usize, usize)>,
}

impl MorphismCheck {
    pub fn is_isomorphism(&self) -> bool {
        self.bijective && self.failing_pair.is_none()
    }
}

/// Compares `f[x, y]` with `[f x, f y]` on all basis pairs and checks
/// bijectivity by rank.
pub fn verify_morphism(source: &LieAlgebra, target: &LieAlgebra, map: &LinearMap) -> Result<MorphismCheck> {
    if source.field() != target.field() {
        return Err(Error::FieldMismatch { left: source.field().p(), right: target.field().p() });
    }
    if map.source_dim != source.dim() || map.target_dim != target.dim() {
        return Err(Error::Malformed("map dimensions do not match the algebras".into()));
    }
    let f = source.field();
    let bijective = source.dim() == target.dim() && SparseMatrix::new(target.dim(), map.cols.clone()).rank(f) == source.dim();
    let d = source.dim();
    let mut failing_pair = None;
    'outer: for i in 0..d {
        for j in i + 1..d {
            let lhs = map.apply_sparse(f, source.bracket_basis(i, j));
            let rhs = target.bracket_sparse(&map.cols[i], &map.cols[j]);
            if lhs != rhs {
                failing_pair = Some((i, j));
                break 'outer;
            }
        }
    }
    Ok(MorphismCheck { bijective, failing_pair })
}

/// `dim (1 ⊗ Der(A)) ∩ ad(L ⊗ A)` inside `End(L ⊗ A)`.
pub fn outer_intersection_dim(l: &LieAlgebra, a: &CommAlgebra, current: &LieAlgebra) -> usize {
    let f = l.field();
    let (dl, da) = (l.dim(), a.dim());
    let d = current.dim();
    let inner: Vec<SparseVec> = (0..d).map(|x| ad_flat(current, x)).collect();
    let outer: Vec<SparseVec> = derivation_space(a)
        .iter()
        .map(|der| {
            let mut v = Vec::new();
            for x in 0..dl {
                for s in 0..da {
                    for (u, &c) in der.image_of_basis(s).iter().enumerate() {
                        if c != 0 {
                            v.push((current_index(x, s, da) * d + current_index(x, u, da), c));
                        }
                    }
                }
            }
            crate::linalg::normalize(f, v)
        })
        .collect();
    let n = d * d;
    let ri = crate::linalg::relative_rank(f, n, &[], &inner);
    let ro = crate::linalg::relative_rank(f, n, &[], &outer);
    let both: Vec<SparseVec> = inner.iter().chain(&outer).cloned().collect();
    ri + ro - crate::linalg::relative_rank(f, n, &[], &both)
}

/// A random element of `L` from a seeded generator, for property tests and
/// examples.
pub fn random_element(l: &LieAlgebra, rng: &mut impl Rng) -> Vec<u32> {
    (0..l.dim()).map(|_| rng.gen_range(0..l.field().p())).collect()
}
