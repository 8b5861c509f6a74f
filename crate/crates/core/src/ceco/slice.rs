//! Weight and degree subcomplexes, and cohomology computed on them.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{increasing_tuples, require_cocycle, sort_with_sign, Cochain, Module};
use crate::error::{Error, Result};
use crate::liealg::{root_decomposition, LieAlgebra};
use crate::linalg::{independent_modulo, normalize, solve, Echelon, SparseMatrix, SparseVec};

/// Default cap on nonzero entries per differential matrix.
pub const DEFAULT_NNZ_BUDGET: u64 = 5_000_000;

/// Restriction of the complex to one weight and/or one degree.
///
/// A coordinate `(x_1..x_n) -> e_k` lies in the slice when
/// `w(e_k) - Σ w(x_i) = weight` and `deg(e_k) - Σ deg(x_i) = degree`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SliceSpec {
    pub weight: Option<u32>,
    pub degree: Option<i64>,
}

impl SliceSpec {
    pub const FULL: SliceSpec = SliceSpec { weight: None, degree: None };

    pub fn weight(w: u32) -> Self {
        SliceSpec { weight: Some(w), degree: None }
    }

    pub fn degree(i: i64) -> Self {
        SliceSpec { weight: None, degree: Some(i) }
    }

    pub fn describe(&self) -> String {
        match (self.weight, self.degree) {
            (None, None) => "full".into(),
            (Some(w), None) => format!("weight={w}"),
            (None, Some(d)) => format!("degree={d}"),
            (Some(w), Some(d)) => format!("weight={w},degree={d}"),
        }
    }
}

type Key = (u32, i64);

/// Coordinates of `C^n` in a slice: tuples in lexicographic order, each with
/// its admissible target indices.
struct Layout {
    tuples: Vec<Vec<usize>>,
    offset: HashMap<Vec<usize>, usize>,
    total: usize,
}

pub struct ComplexSlice<'a> {
    l: &'a LieAlgebra,
    module: Module,
    spec: SliceSpec,
    weights: Option<Vec<u32>>,
    buckets: HashMap<Key, Vec<usize>>,
    pos: Vec<usize>,
}

/// Result of a cohomology computation on a slice.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub degree: usize,
    pub module: Module,
    pub spec: SliceSpec,
    pub dim: usize,
    pub cochain_dim: usize,
    pub cocycle_dim: usize,
    pub coboundary_dim: usize,
    pub representatives: Vec<Cochain>,
}

impl<'a> ComplexSlice<'a> {
    pub fn new(l: &'a LieAlgebra, module: Module, spec: SliceSpec) -> Result<Self> {
        let weights = match spec.weight {
            Some(w) => {
                if w >= l.field().p() {
                    return Err(Error::Precondition(format!("weight {w} is not reduced mod p")));
                }
                let t = l.toral().ok_or_else(|| Error::Precondition("weight slicing needs a toral element".into()))?;
                Some(root_decomposition(l, t)?)
            }
            None => None,
        };
        if spec.degree.is_some() && !l.is_graded() {
            return Err(Error::Precondition("degree slicing needs a grading".into()));
        }
        let mut s = ComplexSlice { l, module, spec, weights, buckets: HashMap::new(), pos: Vec::new() };
        let tdim = module.target_dim(l);
        s.pos = vec![0; tdim];
        for k in 0..tdim {
            let key = s.target_key(k);
            let b = s.buckets.entry(key).or_default();
            s.pos[k] = b.len();
            b.push(k);
        }
        Ok(s)
    }

    pub fn full(l: &'a LieAlgebra, module: Module) -> Self {
        Self::new(l, module, SliceSpec::FULL).expect("full slice")
    }

    pub fn algebra(&self) -> &LieAlgebra {
        self.l
    }

    pub fn module(&self) -> Module {
        self.module
    }

    pub fn spec(&self) -> SliceSpec {
        self.spec
    }

    fn target_key(&self, k: usize) -> Key {
        if self.module == Module::Trivial {
            return (0, 0);
        }
        let w = self.weights.as_ref().map_or(0, |w| w[k]);
        let d = if self.spec.degree.is_some() { self.l.degrees().unwrap()[k] } else { 0 };
        (w, d)
    }

    /// Key a target must have for a coordinate on `t` to lie in the slice.
    fn required_key(&self, t: &[usize]) -> Key {
        let w = match (&self.weights, self.spec.weight) {
            (Some(ws), Some(a)) => {
                let p = self.l.field().p() as u64;
                ((t.iter().map(|&x| ws[x] as u64).sum::<u64>() + a as u64) % p) as u32
            }
            _ => 0,
        };
        let d = match self.spec.degree {
            Some(i) => {
                let g = self.l.degrees().unwrap();
                t.iter().map(|&x| g[x]).sum::<i64>() + i
            }
            None => 0,
        };
        (w, d)
    }

    fn targets(&self, t: &[usize]) -> &[usize] {
        self.buckets.get(&self.required_key(t)).map_or(&[], Vec::as_slice)
    }

    fn layout(&self, n: usize) -> Layout {
        let mut tuples = Vec::new();
        let mut offset = HashMap::new();
        let mut total = 0;
        for t in increasing_tuples(self.l.dim(), n) {
            let m = self.targets(&t).len();
            if m > 0 {
                offset.insert(t.clone(), total);
                total += m;
                tuples.push(t);
            }
        }
        Layout { tuples, offset, total }
    }

    /// Coordinates `(tuple, target)` of `C^n` in this slice, in matrix order.
    pub fn coordinates(&self, n: usize) -> Vec<(Vec<usize>, usize)> {
        let lay = self.layout(n);
        lay.tuples.iter().flat_map(|t| self.targets(t).iter().map(move |&k| (t.clone(), k))).collect()
    }

    pub fn cochain_dim(&self, n: usize) -> usize {
        self.layout(n).total
    }

    /// `d: C^n -> C^{n+1}` restricted to the slice, rows indexed by the
    /// coordinates of `C^{n+1}`.
    fn differential(&self, n: usize, cols: &Layout, rows: &Layout, budget: u64) -> Result<SparseMatrix> {
        let f = self.l.field();
        let nnz = AtomicU64::new(0);
        let blocks: Vec<Result<Vec<SparseVec>>> = rows
            .tuples
            .par_iter()
            .map(|s| {
                let outs = self.targets(s);
                let mut acc: Vec<Vec<(usize, u32)>> = vec![Vec::new(); outs.len()];
                let n1 = n + 1;
                for i in 0..n1 {
                    for j in i + 1..n1 {
                        let sign = f.sign((i + j) as i64);
                        for &(m, b) in self.l.bracket_basis(s[i], s[j]) {
                            let mut t = Vec::with_capacity(n);
                            t.push(m);
                            t.extend((0..n1).filter(|&q| q != i && q != j).map(|q| s[q]));
                            let Some(odd) = sort_with_sign(&mut t) else { continue };
                            let Some(&off) = cols.offset.get(&t) else { continue };
                            let c = f.mul(sign, if odd { f.neg(b) } else { b });
                            for (r, &k) in self.targets(&t).iter().enumerate() {
                                acc[self.pos[k]].push((off + r, c));
                            }
                        }
                    }
                }
                if self.module == Module::Adjoint {
                    for i in 0..n1 {
                        let sign = f.sign(i as i64);
                        let rest: Vec<usize> = (0..n1).filter(|&q| q != i).map(|q| s[q]).collect();
                        let Some(&off) = cols.offset.get(&rest) else { continue };
                        for (r, &k) in self.targets(&rest).iter().enumerate() {
                            for &(m, c) in self.l.bracket_basis(s[i], k) {
                                acc[self.pos[m]].push((off + r, f.mul(sign, c)));
                            }
                        }
                    }
                }
                debug_assert!(acc.iter().enumerate().all(|(q, row)| row.is_empty() || self.pos[outs[q]] == q));
                let rows: Vec<SparseVec> = acc.into_iter().map(|r| normalize(f, r)).collect();
                let added: u64 = rows.iter().map(|r| r.len() as u64).sum();
                let size = nnz.fetch_add(added, Ordering::Relaxed) + added;
                if size > budget {
                    return Err(Error::Budget {
                        what: format!("differential C^{n} -> C^{} on slice {}", n + 1, self.spec.describe()),
                        size,
                        budget,
                        hint: "enable weight-zero reduction or restrict to a degree slice".into(),
                    });
                }
                Ok(rows)
            })
            .collect();
        let mut all = Vec::with_capacity(rows.total);
        for b in blocks {
            all.extend(b?);
        }
        Ok(SparseMatrix::new(cols.total, all))
    }

    /// Coordinates of `c` in this slice; errors if `c` has support outside it.
    pub fn to_coords(&self, c: &Cochain) -> Result<SparseVec> {
        let lay = self.layout(c.degree());
        let mut v = Vec::new();
        for (t, val) in c.iter() {
            let targets = self.targets(t);
            for &(k, x) in val {
                match lay.offset.get(t) {
                    Some(&off) if targets.contains(&k) => v.push((off + self.pos[k], x)),
                    _ => {
                        return Err(Error::Precondition(format!(
                            "cochain value on {t:?} -> {k} lies outside slice {}",
                            self.spec.describe()
                        )))
                    }
                }
            }
        }
        Ok(normalize(self.l.field(), v))
    }

    pub fn from_coords(&self, n: usize, v: &SparseVec) -> Cochain {
        let coords = self.coordinates(n);
        let mut c = Cochain::zero(self.l, n, self.module);
        let mut by_tuple: BTreeMap<&Vec<usize>, SparseVec> = BTreeMap::new();
        for &(i, x) in v {
            let (t, k) = &coords[i];
            by_tuple.entry(t).or_default().push((*k, x));
        }
        for (t, val) in by_tuple {
            c.add_at(self.l, t, &val);
        }
        c
    }

    /// `H^n` of the slice with representatives spanning a complement of the
    /// coboundaries inside the cocycles.
    pub fn cohomology(&self, n: usize, budget: u64) -> Result<Cohomology> {
        let lay_n = self.layout(n);
        let lay_up = self.layout(n + 1);
        let d_n = self.differential(n, &lay_n, &lay_up, budget)?;
        let f = self.l.field();
        let cocycles = d_n.kernel(f);
        let boundary_images: Vec<SparseVec> = if n == 0 {
            Vec::new()
        } else {
            let lay_down = self.layout(n - 1);
            self.differential(n - 1, &lay_down, &lay_n, budget)?.transpose().rows
        };
        let mut ech = Echelon::new(f.clone(), lay_n.total);
        for b in &boundary_images {
            ech.insert(b);
        }
        let coboundary_dim = ech.rank();
        let reps: Vec<Cochain> = cocycles.iter().filter(|z| ech.insert(z)).map(|z| self.from_coords(n, z)).collect();
        Ok(Cohomology {
            degree: n,
            module: self.module,
            spec: self.spec,
            dim: reps.len(),
            cochain_dim: lay_n.total,
            cocycle_dim: cocycles.len(),
            coboundary_dim,
            representatives: reps,
        })
    }

    /// Images `dω` of the basis cochains of `C^{n-1}`, in `C^n` coordinates.
    fn coboundary_images(&self, n: usize, budget: u64) -> Result<(Vec<SparseVec>, usize)> {
        let lay_n = self.layout(n);
        if n == 0 {
            return Ok((Vec::new(), lay_n.total));
        }
        let lay_down = self.layout(n - 1);
        Ok((self.differential(n - 1, &lay_down, &lay_n, budget)?.transpose().rows, lay_n.total))
    }
}

/// The weight-zero subcomplex for the algebra's toral element.
pub fn weight_zero_reduce(l: &LieAlgebra, module: Module) -> Result<ComplexSlice<'_>> {
    ComplexSlice::new(l, module, SliceSpec::weight(0))
}

/// The degree-`i` subcomplex of a graded algebra.
pub fn degree_slice(l: &LieAlgebra, module: Module, i: i64) -> Result<ComplexSlice<'_>> {
    ComplexSlice::new(l, module, SliceSpec::degree(i))
}

/// `dim H^n(L, M)`, on the weight-zero subcomplex when `weight_reduction` is set.
pub fn cohomology_dim(l: &LieAlgebra, n: usize, module: Module, weight_reduction: bool, budget: u64) -> Result<Cohomology> {
    let spec = if weight_reduction { SliceSpec::weight(0) } else { SliceSpec::FULL };
    ComplexSlice::new(l, module, spec)?.cohomology(n, budget)
}

/// The finest slice through a coordinate: weight if there is a toral element,
/// degree if the algebra is graded.
fn block_of(l: &LieAlgebra, weights: Option<&[u32]>, module: Module, t: &[usize], k: usize) -> SliceSpec {
    let p = l.field().p() as u64;
    let weight = weights.map(|w| {
        let target = if module == Module::Adjoint { w[k] as u64 } else { 0 };
        let s: u64 = t.iter().map(|&x| w[x] as u64).sum();
        ((target + p - s % p) % p) as u32
    });
    let degree = l.degrees().filter(|_| l.is_graded()).map(|g| {
        let target = if module == Module::Adjoint { g[k] } else { 0 };
        target - t.iter().map(|&x| g[x]).sum::<i64>()
    });
    SliceSpec { weight, degree }
}

/// Splits a cochain into its homogeneous components.
pub fn split_blocks(l: &LieAlgebra, c: &Cochain) -> Result<BTreeMap<SliceSpec, Cochain>> {
    let weights = l.toral().map(|t| root_decomposition(l, t)).transpose()?;
    let mut out: BTreeMap<SliceSpec, Cochain> = BTreeMap::new();
    for (t, v) in c.iter() {
        for &(k, x) in v {
            let b = block_of(l, weights.as_deref(), c.module(), t, k);
            out.entry(b).or_insert_with(|| Cochain::zero(l, c.degree(), c.module())).add_at(l, t, &vec![(k, x)]);
        }
    }
    Ok(out)
}

/// Some `ω` with `dω = c`, or `None` when `c` is not a coboundary.
pub fn coboundary_witness(l: &LieAlgebra, c: &Cochain, budget: u64) -> Result<Option<Cochain>> {
    if c.degree() == 0 {
        return Ok(if c.is_zero() { Some(c.clone()) } else { None });
    }
    let mut omega = Cochain::zero(l, c.degree() - 1, c.module());
    for (spec, part) in split_blocks(l, c)? {
        let slice = ComplexSlice::new(l, c.module(), spec)?;
        let (images, ncols) = slice.coboundary_images(c.degree(), budget)?;
        let target = slice.to_coords(&part)?;
        match solve(l.field(), ncols, &images, &target) {
            None => return Ok(None),
            Some(x) => omega = omega.add(l, &slice.from_coords(c.degree() - 1, &x)),
        }
    }
    Ok(Some(omega))
}

/// Dimension of the span of the classes of `cs` in cohomology.
pub fn class_span_dim(l: &LieAlgebra, cs: &[Cochain], budget: u64) -> Result<usize> {
    let Some(first) = cs.first() else { return Ok(0) };
    for c in cs {
        if (c.degree(), c.module()) != (first.degree(), first.module()) {
            return Err(Error::Precondition("cochains of different degree or module".into()));
        }
        require_cocycle(l, c)?;
    }
    let n = first.degree();
    let parts: Vec<BTreeMap<SliceSpec, Cochain>> = cs.iter().map(|c| split_blocks(l, c)).collect::<Result<_>>()?;
    let specs: BTreeSet<SliceSpec> = parts.iter().flat_map(|m| m.keys().copied()).collect();
    let slices: Vec<ComplexSlice> = specs.iter().map(|&s| ComplexSlice::new(l, first.module(), s)).collect::<Result<_>>()?;
    let mut offsets = Vec::with_capacity(slices.len());
    let mut total = 0;
    let mut images = Vec::new();
    for s in &slices {
        let (im, size) = s.coboundary_images(n, budget)?;
        images.extend(im.into_iter().map(|v| v.into_iter().map(|(i, x)| (i + total, x)).collect::<SparseVec>()));
        offsets.push(total);
        total += size;
    }
    let mut vectors = Vec::with_capacity(cs.len());
    for m in &parts {
        let mut v = Vec::new();
        for (q, (spec, s)) in specs.iter().zip(&slices).enumerate() {
            if let Some(part) = m.get(spec) {
                v.extend(s.to_coords(part)?.into_iter().map(|(i, x)| (i + offsets[q], x)));
            }
        }
        vectors.push(v);
    }
    Ok(independent_modulo(l.field(), total, &images, &vectors).len())
}

/// `H^2_+`: the sum of `H^2` over the strictly positive degree slices.
#[derive(Clone, Debug)]
pub struct PositivePart {
    pub dim: usize,
    pub slices: Vec<(i64, usize)>,
    pub representatives: Vec<Cochain>,
}

pub fn h2_positive(l: &LieAlgebra, weight_reduction: bool, budget: u64) -> Result<PositivePart> {
    let g = l.degrees().filter(|_| l.is_graded()).ok_or_else(|| Error::Precondition("H^2_+ needs a grading".into()))?;
    let distinct: BTreeSet<i64> = g.iter().copied().collect();
    let mut candidates = BTreeSet::new();
    for &a in &distinct {
        for &b in &distinct {
            for &k in &distinct {
                if k - a - b > 0 {
                    candidates.insert(k - a - b);
                }
            }
        }
    }
    let weight = if weight_reduction && l.toral().is_some() { Some(0) } else { None };
    let results: Vec<Result<(i64, Cohomology)>> = candidates
        .into_par_iter()
        .map(|i| ComplexSlice::new(l, Module::Adjoint, SliceSpec { weight, degree: Some(i) })?.cohomology(2, budget).map(|h| (i, h)))
        .collect();
    let mut out = PositivePart { dim: 0, slices: Vec::new(), representatives: Vec::new() };
    for r in results {
        let (i, h) = r?;
        if h.dim > 0 {
            out.dim += h.dim;
            out.slices.push((i, h.dim));
            out.representatives.extend(h.representatives);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Fp;
    use crate::ceco::{ce_differential, is_cocycle};
    use crate::liealg::{make_sl2, make_w1, w1_index};

    fn f5() -> Fp {
        Fp::new(5).unwrap()
    }

    fn phi21(w: &LieAlgebra, p: i64) -> Cochain {
        let f = w.field();
        Cochain::from_fn(w, 2, Module::Adjoint, |t| {
            let (i, j) = (t[0] as i64 - 1, t[1] as i64 - 1);
            if i + j >= p - 1 {
                vec![(w1_index(i + j - p), crate::arith::n_div_p(i, j, f.p()).unwrap().value())]
            } else {
                Vec::new()
            }
        })
    }

    #[test]
    fn w1_h2_full_and_reduced_agree() {
        let f = f5();
        let w = make_w1(1, &f).unwrap();
        let full = cohomology_dim(&w, 2, Module::Adjoint, false, DEFAULT_NNZ_BUDGET).unwrap();
        let red = cohomology_dim(&w, 2, Module::Adjoint, true, DEFAULT_NNZ_BUDGET).unwrap();
        assert_eq!((full.dim, red.dim), (1, 1));
        assert!(red.cochain_dim < full.cochain_dim);
        assert!(full.representatives.iter().all(|c| is_cocycle(&w, c)));
    }

    #[test]
    fn w1_h1_is_zero_and_h0_is_zero() {
        let f = f5();
        let w = make_w1(1, &f).unwrap();
        assert_eq!(cohomology_dim(&w, 1, Module::Adjoint, false, DEFAULT_NNZ_BUDGET).unwrap().dim, 0);
        assert_eq!(cohomology_dim(&w, 0, Module::Adjoint, false, DEFAULT_NNZ_BUDGET).unwrap().dim, 0);
    }

    #[test]
    fn nonzero_weight_and_degree_slices_vanish() {
        let f = f5();
        let w = make_w1(1, &f).unwrap();
        for a in 1..5 {
            assert_eq!(
                ComplexSlice::new(&w, Module::Adjoint, SliceSpec::weight(a)).unwrap().cohomology(2, DEFAULT_NNZ_BUDGET).unwrap().dim,
                0
            );
        }
        for i in [1, 2, -3] {
            assert_eq!(degree_slice(&w, Module::Adjoint, i).unwrap().cohomology(2, DEFAULT_NNZ_BUDGET).unwrap().dim, 0);
        }
        assert_eq!(degree_slice(&w, Module::Adjoint, -5).unwrap().cohomology(2, DEFAULT_NNZ_BUDGET).unwrap().dim, 1);
    }

    #[test]
    fn phi21_is_a_nontrivial_class_in_degree_minus_p() {
        let f = f5();
        let w = make_w1(1, &f).unwrap();
        let phi = phi21(&w, 5);
        assert!(is_cocycle(&w, &phi));
        assert_eq!(phi.degree_support(&w), vec![-5]);
        assert!(coboundary_witness(&w, &phi, DEFAULT_NNZ_BUDGET).unwrap().is_none());
        assert_eq!(class_span_dim(&w, &[phi.clone(), phi.clone()], DEFAULT_NNZ_BUDGET).unwrap(), 1);
    }

    #[test]
    fn witnesses_for_coboundaries() {
        let f = f5();
        let w = make_w1(1, &f).unwrap();
        let omega = Cochain::from_fn(&w, 1, Module::Adjoint, |t| vec![((t[0] + 1) % 5, 1 + t[0] as u32), ((t[0] + 3) % 5, 2)]);
        let c = ce_differential(&w, &omega);
        let found = coboundary_witness(&w, &c, DEFAULT_NNZ_BUDGET).unwrap().expect("coboundary");
        assert_eq!(ce_differential(&w, &found), c);
        assert_eq!(class_span_dim(&w, &[c], DEFAULT_NNZ_BUDGET).unwrap(), 0);
    }

    #[test]
    fn non_cocycles_are_rejected() {
        let f = f5();
        let w = make_w1(1, &f).unwrap();
        let c = Cochain::from_fn(&w, 2, Module::Adjoint, |t| if t == [0, 1] { vec![(0, 1)] } else { Vec::new() });
        assert!(matches!(class_span_dim(&w, &[c], DEFAULT_NNZ_BUDGET), Err(Error::NotCocycle { .. })));
    }

    #[test]
    fn budget_error_names_the_remedy() {
        let f = f5();
        let w = make_w1(1, &f).unwrap();
        let err = cohomology_dim(&w, 2, Module::Adjoint, false, 100).unwrap_err();
        assert!(err.to_string().contains("weight-zero reduction"));
    }

    #[test]
    fn sl2_and_trivial_module() {
        let f = f5();
        let s = make_sl2(&f).unwrap();
        for n in 0..3 {
            assert_eq!(cohomology_dim(&s, n, Module::Adjoint, false, DEFAULT_NNZ_BUDGET).unwrap().dim, 0);
        }
        // H^3(sl2, K) = 1 is the only nonzero trivial cohomology past degree 0
        let dims: Vec<usize> = (0..4).map(|n| cohomology_dim(&s, n, Module::Trivial, false, DEFAULT_NNZ_BUDGET).unwrap().dim).collect();
        assert_eq!(dims, vec![1, 0, 0, 1]);
    }

    #[test]
    fn coordinate_round_trip() {
        let f = f5();
        let w = make_w1(1, &f).unwrap();
        let slice = weight_zero_reduce(&w, Module::Adjoint).unwrap();
        let phi = phi21(&w, 5);
        let v = slice.to_coords(&phi).unwrap();
        assert_eq!(slice.from_coords(2, &v), phi);
        assert!(slice.coordinates(2).iter().all(|(t, k)| (k + 10 - t[0] - t[1]) % 5 == 4));
    }
}
