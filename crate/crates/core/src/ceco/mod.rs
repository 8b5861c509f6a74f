//! Chevalley–Eilenberg cochains with adjoint or trivial coefficients.
//!
//! The differential is
//! `dφ(x_0..x_n) = Σ_{i<j} (-1)^{i+j} φ([x_i, x_j], x_0..x̂_i..x̂_j..) + Σ_i (-1)^i x_i·φ(..x̂_i..)`,
//! so that 1-cocycles with adjoint coefficients are exactly derivations.

pub mod cache;
mod slice;

pub use slice::*;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liealg::LieAlgebra;
use crate::linalg::{normalize, SparseVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Module {
    Adjoint,
    Trivial,
}

impl Module {
    pub fn target_dim(self, l: &LieAlgebra) -> usize {
        match self {
            Module::Adjoint => l.dim(),
            Module::Trivial => 1,
        }
    }
}

impl std::fmt::Display for Module {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Module::Adjoint => "adjoint",
            Module::Trivial => "trivial",
        })
    }
}

impl std::str::FromStr for Module {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "adjoint" => Ok(Module::Adjoint),
            "trivial" => Ok(Module::Trivial),
            _ => Err(Error::Malformed(format!("unknown module `{s}` (adjoint or trivial)"))),
        }
    }
}

/// Sorts `t` in place; returns the parity of the permutation, or `None` if an
/// index repeats.
pub fn sort_with_sign(t: &mut [usize]) -> Option<bool> {
    let mut odd = false;
    for i in 1..t.len() {
        let mut j = i;
        while j > 0 && t[j - 1] > t[j] {
            t.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
        if j > 0 && t[j - 1] == t[j] {
            return None;
        }
    }
    Some(odd)
}

/// Strictly increasing `n`-tuples from `0..dim` in lexicographic order.
pub fn increasing_tuples(dim: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut t: Vec<usize> = (0..n).collect();
    if n > dim {
        return out;
    }
    loop {
        out.push(t.clone());
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if t[i] < dim - n + i {
                t[i] += 1;
                for j in i + 1..n {
                    t[j] = t[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// An alternating `n`-cochain, stored on strictly increasing basis tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    dim: usize,
    degree: usize,
    module: Module,
    coeffs: BTreeMap<Vec<usize>, SparseVec>,
}

impl Cochain {
    pub fn zero(l: &LieAlgebra, degree: usize, module: Module) -> Self {
        Cochain { dim: l.dim(), degree, module, coeffs: BTreeMap::new() }
    }

    /// Evaluates `g` on every increasing tuple.
    pub fn from_fn(l: &LieAlgebra, degree: usize, module: Module, mut g: impl FnMut(&[usize]) -> SparseVec) -> Self {
        let mut c = Self::zero(l, degree, module);
        for t in increasing_tuples(l.dim(), degree) {
            let v = normalize(l.field(), g(&t));
            if !v.is_empty() {
                c.coeffs.insert(t, v);
            }
        }
        c
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn module(&self) -> Module {
        self.module
    }

    pub fn algebra_dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero values on increasing tuples.
    pub fn iter(&self) -> impl Iterator<Item = (&Vec<usize>, &SparseVec)> {
        self.coeffs.iter()
    }

    /// Adds `v` to the value on `t` (any order; sign applied).
    pub fn add_at(&mut self, l: &LieAlgebra, t: &[usize], v: &SparseVec) {
        let f = l.field();
        let mut s = t.to_vec();
        let Some(odd) = sort_with_sign(&mut s) else { return };
        let scaled: SparseVec = v.iter().map(|&(k, c)| (k, if odd { f.neg(c) } else { c })).collect();
        let entry = self.coeffs.entry(s.clone()).or_default();
        entry.extend(scaled);
        let merged = normalize(f, std::mem::take(entry));
        if merged.is_empty() {
            self.coeffs.remove(&s);
        } else {
            self.coeffs.insert(s, merged);
        }
    }

    /// Value on a basis tuple in any order.
    pub fn eval_basis(&self, l: &LieAlgebra, t: &[usize]) -> SparseVec {
        let mut s = t.to_vec();
        match sort_with_sign(&mut s) {
            None => Vec::new(),
            Some(odd) => match self.coeffs.get(&s) {
                None => Vec::new(),
                Some(v) if odd => v.iter().map(|&(k, c)| (k, l.field().neg(c))).collect(),
                Some(v) => v.clone(),
            },
        }
    }

    /// Multilinear evaluation on sparse arguments.
    pub fn eval(&self, l: &LieAlgebra, args: &[SparseVec]) -> SparseVec {
        assert_eq!(args.len(), self.degree);
        let f = l.field();
        let mut acc = Vec::new();
        let mut idx = vec![0usize; args.len()];
        if args.iter().any(|a| a.is_empty()) {
            return acc;
        }
        loop {
            let t: Vec<usize> = idx.iter().zip(args).map(|(&i, a)| a[i].0).collect();
            let w = idx.iter().zip(args).fold(1u32, |s, (&i, a)| f.mul(s, a[i].1));
            for (k, c) in self.eval_basis(l, &t) {
                acc.push((k, f.mul(w, c)));
            }
            let mut pos = args.len();
            loop {
                if pos == 0 {
                    return normalize(f, acc);
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < args[pos].len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }

    pub fn add(&self, l: &LieAlgebra, other: &Cochain) -> Cochain {
        assert_eq!((self.degree, self.module), (other.degree, other.module));
        let mut out = self.clone();
        for (t, v) in &other.coeffs {
            out.add_at(l, t, v);
        }
        out
    }

    pub fn scale(&self, l: &LieAlgebra, s: u32) -> Cochain {
        let f = l.field();
        let mut out = Cochain { dim: self.dim, degree: self.degree, module: self.module, coeffs: BTreeMap::new() };
        if s.is_multiple_of(f.p()) {
            return out;
        }
        for (t, v) in &self.coeffs {
            out.coeffs.insert(t.clone(), v.iter().map(|&(k, c)| (k, f.mul(c, s))).collect());
        }
        out
    }

    pub fn sub(&self, l: &LieAlgebra, other: &Cochain) -> Cochain {
        self.add(l, &other.scale(l, l.field().neg(1)))
    }

    /// `deg(target) - Σ deg(inputs)` over the support, for graded algebras.
    pub fn degree_support(&self, l: &LieAlgebra) -> Vec<i64> {
        let Some(g) = l.degrees() else { return Vec::new() };
        let mut out: Vec<i64> = self
            .coeffs
            .iter()
            .flat_map(|(t, v)| {
                let s: i64 = t.iter().map(|&x| g[x]).sum();
                v.iter().map(move |&(k, _)| match self.module {
                    Module::Adjoint => g[k] - s,
                    Module::Trivial => -s,
                })
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn to_doc(&self) -> CochainDoc {
        CochainDoc {
            degree: self.degree,
            module: self.module,
            entries: self.coeffs.iter().flat_map(|(t, v)| v.iter().map(move |&(k, c)| (t.clone(), k, c))).collect(),
        }
    }

    pub fn from_doc(l: &LieAlgebra, doc: &CochainDoc) -> Result<Cochain> {
        let mut c = Cochain::zero(l, doc.degree, doc.module);
        let tdim = doc.module.target_dim(l);
        for (t, k, v) in &doc.entries {
            if t.len() != doc.degree || t.iter().any(|&x| x >= l.dim()) || *k >= tdim {
                return Err(Error::Malformed(format!("cochain entry {t:?} -> {k} out of range")));
            }
            c.add_at(l, t, &vec![(*k, *v % l.field().p())]);
        }
        Ok(c)
    }
}

/// Serializable cochain: `(increasing tuple, target index, value)` triples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainDoc {
    pub degree: usize,
    pub module: Module,
    pub entries: Vec<(Vec<usize>, usize, u32)>,
}

/// Value of `dc` on one increasing `(n+1)`-tuple.
fn differential_at(l: &LieAlgebra, c: &Cochain, s: &[usize]) -> SparseVec {
    let f = l.field();
    let n1 = s.len();
    let mut acc = Vec::new();
    for i in 0..n1 {
        for j in i + 1..n1 {
            let sign = f.sign((i + j) as i64);
            let rest: Vec<usize> = (0..n1).filter(|&q| q != i && q != j).map(|q| s[q]).collect();
            for &(m, b) in l.bracket_basis(s[i], s[j]) {
                let mut t = Vec::with_capacity(n1 - 1);
                t.push(m);
                t.extend_from_slice(&rest);
                let w = f.mul(sign, b);
                for (k, v) in c.eval_basis(l, &t) {
                    acc.push((k, f.mul(w, v)));
                }
            }
        }
    }
    if c.module == Module::Adjoint {
        for i in 0..n1 {
            let sign = f.sign(i as i64);
            let rest: Vec<usize> = (0..n1).filter(|&q| q != i).map(|q| s[q]).collect();
            if let Some(v) = c.coeffs.get(&rest) {
                for (k, x) in l.bracket_sparse(&[(s[i], sign)], v) {
                    acc.push((k, x));
                }
            }
        }
    }
    normalize(f, acc)
}

pub fn ce_differential(l: &LieAlgebra, c: &Cochain) -> Cochain {
    let n1 = c.degree + 1;
    let tuples = increasing_tuples(l.dim(), n1);
    let values: Vec<(Vec<usize>, SparseVec)> = tuples
        .into_par_iter()
        .map(|s| {
            let v = differential_at(l, c, &s);
            (s, v)
        })
        .filter(|(_, v)| !v.is_empty())
        .collect();
    Cochain { dim: l.dim(), degree: n1, module: c.module, coeffs: values.into_iter().collect() }
}

/// First increasing tuple on which `dc` does not vanish.
pub fn cocycle_failure(l: &LieAlgebra, c: &Cochain) -> Option<Vec<usize>> {
    increasing_tuples(l.dim(), c.degree + 1).into_par_iter().find_first(|s| !differential_at(l, c, s).is_empty())
}

pub fn is_cocycle(l: &LieAlgebra, c: &Cochain) -> bool {
    cocycle_failure(l, c).is_none()
}

pub fn require_cocycle(l: &LieAlgebra, c: &Cochain) -> Result<()> {
    match cocycle_failure(l, c) {
        None => Ok(()),
        Some(tuple) => Err(Error::NotCocycle { tuple }),
    }
}

/// `[φ, ψ](x, y, z) = φ(ψ(x, y), z) + ψ(φ(x, y), z)` summed over cyclic
/// permutations of `(x, y, z)`.
pub fn massey_bracket(l: &LieAlgebra, phi: &Cochain, psi: &Cochain) -> Result<Cochain> {
    if phi.degree != 2 || psi.degree != 2 || phi.module != Module::Adjoint || psi.module != Module::Adjoint {
        return Err(Error::Precondition("Massey bracket takes two adjoint 2-cochains".into()));
    }
    let f = l.field();
    let term = |a: &Cochain, b: &Cochain, x: usize, y: usize, z: usize| -> SparseVec {
        let inner = b.eval_basis(l, &[x, y]);
        if inner.is_empty() {
            return inner;
        }
        a.eval(l, &[inner, vec![(z, 1)]])
    };
    let tuples = increasing_tuples(l.dim(), 3);
    let values: Vec<(Vec<usize>, SparseVec)> = tuples
        .into_par_iter()
        .map(|s| {
            let (x, y, z) = (s[0], s[1], s[2]);
            let mut acc = Vec::new();
            for (u, v, w) in [(x, y, z), (y, z, x), (z, x, y)] {
                acc.extend(term(phi, psi, u, v, w));
                acc.extend(term(psi, phi, u, v, w));
            }
            (s, normalize(f, acc))
        })
        .filter(|(_, v)| !v.is_empty())
        .collect();
    Ok(Cochain { dim: l.dim(), degree: 3, module: Module::Adjoint, coeffs: values.into_iter().collect() })
}

/// Inner derivation `ad x` as an adjoint 1-cochain.
pub fn ad_cochain(l: &LieAlgebra, x: &SparseVec) -> Cochain {
    Cochain::from_fn(l, 1, Module::Adjoint, |t| l.bracket_sparse(x, &[(t[0], 1)]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Fp;
    use crate::commalg::{derivation_space, make_divided_powers};
    use crate::liealg::{current_algebra, current_index, make_w1};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f5() -> Fp {
        Fp::new(5).unwrap()
    }

    fn random_cochain(l: &LieAlgebra, degree: usize, module: Module, seed: u64) -> Cochain {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = l.field().p();
        let tdim = module.target_dim(l);
        Cochain::from_fn(l, degree, module, |_| (0..tdim).map(|k| (k, rng.gen_range(0..p))).collect())
    }

    #[test]
    fn tuple_enumeration_and_signs() {
        assert_eq!(increasing_tuples(4, 2).len(), 6);
        assert_eq!(increasing_tuples(5, 3)[0], vec![0, 1, 2]);
        assert_eq!(increasing_tuples(3, 0), vec![Vec::<usize>::new()]);
        let mut t = vec![2, 0, 1];
        assert_eq!(sort_with_sign(&mut t), Some(false));
        let mut t = vec![1, 0, 2];
        assert_eq!(sort_with_sign(&mut t), Some(true));
        assert_eq!(sort_with_sign(&mut [1, 1]), None);
    }

    #[test]
    fn inner_derivations_are_cocycles() {
        let f = f5();
        let w = make_w1(1, &f).unwrap();
        for x in 0..5 {
            assert!(is_cocycle(&w, &ad_cochain(&w, &vec![(x, 1)])));
        }
    }

    #[test]
    fn one_cocycles_are_derivations() {
        // a 1-cochain D is closed iff D[x,y] = [Dx,y] + [x,Dy]
        let f = f5();
        let w = make_w1(1, &f).unwrap();
        for seed in 0..20 {
            let c = random_cochain(&w, 1, Module::Adjoint, seed);
            let mut leibniz = true;
            for i in 0..5 {
                for j in 0..5 {
                    let lhs = c.eval(&w, &[w.bracket_basis(i, j).clone()]);
                    let mut rhs = w.bracket_sparse(&c.eval_basis(&w, &[i]), &[(j, 1)]);
                    rhs.extend(w.bracket_sparse(&[(i, 1)], &c.eval_basis(&w, &[j])));
                    leibniz &= lhs == normalize(&f, rhs);
                }
            }
            assert_eq!(leibniz, is_cocycle(&w, &c));
        }
    }

    #[test]
    fn derivations_of_the_coefficients_are_cocycles() {
        let f = f5();
        let o = make_divided_powers(1, &f).unwrap();
        let l = current_algebra(&make_w1(1, &f).unwrap(), &o).unwrap();
        for d in derivation_space(&o) {
            let c = Cochain::from_fn(&l, 1, Module::Adjoint, |t| {
                let (x, s) = (t[0] / 5, t[0] % 5);
                d.image_of_basis(s).iter().enumerate().filter(|(_, &c)| c != 0).map(|(u, &c)| (current_index(x, u, 5), c)).collect()
            });
            assert!(is_cocycle(&l, &c));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn d_squared_vanishes(seed in any::<u64>()) {
            let f = f5();
            let w = make_w1(1, &f).unwrap();
            for (deg, module) in [(0, Module::Adjoint), (1, Module::Adjoint), (2, Module::Adjoint), (1, Module::Trivial), (2, Module::Trivial)] {
                let c = random_cochain(&w, deg, module, seed);
                prop_assert!(ce_differential(&w, &ce_differential(&w, &c)).is_zero());
            }
        }

        #[test]
        fn massey_bracket_is_symmetric(seed in any::<u64>()) {
            let f = f5();
            let w = make_w1(1, &f).unwrap();
            let a = random_cochain(&w, 2, Module::Adjoint, seed);
            let b = random_cochain(&w, 2, Module::Adjoint, seed ^ 0x9e37);
            prop_assert_eq!(massey_bracket(&w, &a, &b).unwrap(), massey_bracket(&w, &b, &a).unwrap());
        }
    }

    #[test]
    fn massey_degrees_add() {
        // graded inputs of degrees i and j give an output of degree i + j
        let f = f5();
        let w = make_w1(2, &f).unwrap();
        let g = w.degrees().unwrap().to_vec();
        let homogeneous = |shift: i64| {
            Cochain::from_fn(&w, 2, Module::Adjoint, |t| {
                let target = g[t[0]] + g[t[1]] + shift;
                if (-1..=23).contains(&target) {
                    vec![(crate::liealg::w1_index(target), 1)]
                } else {
                    Vec::new()
                }
            })
        };
        let m = massey_bracket(&w, &homogeneous(3), &homogeneous(5)).unwrap();
        assert!(m.degree_support(&w).iter().all(|&d| d == 8));
        assert!(!m.is_zero());
    }

    #[test]
    fn doc_round_trip() {
        let f = f5();
        let w = make_w1(1, &f).unwrap();
        let c = random_cochain(&w, 2, Module::Adjoint, 3);
        assert_eq!(Cochain::from_doc(&w, &c.to_doc()).unwrap(), c);
    }
}
