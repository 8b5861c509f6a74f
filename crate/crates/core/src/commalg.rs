//! Finite-dimensional commutative associative unital algebras given by
//! structure constants, and their derivations.
//!
//! Elements are dense coordinate vectors over the basis. Monomial algebras
//! (divided powers, reduced polynomial rings and their tensor products) also
//! carry a multidegree per basis element; the Hochschild complex splits along
//! it.

use serde::{Deserialize, Serialize};

use crate::arith::Fp;
use crate::error::{Error, Result};
use crate::linalg::{normalize, sparse_from_dense, Echelon, SparseMatrix, SparseVec};

#[derive(Clone, Debug)]
pub struct CommAlgebra {
    field: Fp,
    labels: Vec<String>,
    /// `table[i * dim + j]` is `b_i b_j`.
    table: Vec<SparseVec>,
    unit: usize,
    grading: Option<Vec<Vec<i64>>>,
}

impl CommAlgebra {
    /// Builds an algebra from its multiplication table and checks
    /// commutativity, associativity on all basis triples, the unit law and,
    /// if given, homogeneity of the multidegree.
    pub fn new(field: Fp, labels: Vec<String>, table: Vec<SparseVec>, unit: usize, grading: Option<Vec<Vec<i64>>>) -> Result<Self> {
        let dim = labels.len();
        if table.len() != dim * dim {
            return Err(Error::Malformed(format!("table has {} entries, expected {}", table.len(), dim * dim)));
        }
        if unit >= dim {
            return Err(Error::Malformed(format!("unit index {unit} out of range")));
        }
        let table = table.into_iter().map(|v| normalize(&field, v)).collect();
        let a = CommAlgebra { field, labels, table, unit, grading };
        a.check_axioms()?;
        Ok(a)
    }

    fn check_axioms(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                if self.table[i * d + j] != self.table[j * d + i] {
                    return Err(Error::Axiom(format!("b{i} b{j} != b{j} b{i}")));
                }
            }
            if self.table[self.unit * d + i] != vec![(i, 1)] {
                return Err(Error::Axiom(format!("unit law fails on b{i}")));
            }
        }
        for i in 0..d {
            for j in i..d {
                let ij = self.basis_product(i, j);
                for k in 0..d {
                    let left = self.mul_sparse(ij, &[(k, 1)]);
                    let jk = self.basis_product(j, k);
                    let right = self.mul_sparse(&[(i, 1)], jk);
                    if left != right {
                        return Err(Error::Axiom(format!("associativity fails on (b{i}, b{j}, b{k})")));
                    }
                }
            }
        }
        if let Some(g) = &self.grading {
            if g.len() != d {
                return Err(Error::Malformed("grading length differs from dimension".into()));
            }
            for i in 0..d {
                for j in 0..d {
                    for &(k, _) in self.basis_product(i, j) {
                        let sum: Vec<i64> = g[i].iter().zip(&g[j]).map(|(a, b)| a + b).collect();
                        if g[k] != sum {
                            return Err(Error::Axiom(format!("product b{i} b{j} not homogeneous")));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &Fp {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn unit_vector(&self) -> Vec<u32> {
        self.basis_vector(self.unit)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        v
    }

    pub fn grading(&self) -> Option<&[Vec<i64>]> {
        self.grading.as_deref()
    }

    #[inline]
    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim() + j]
    }

    pub fn mul_sparse(&self, a: &[(usize, u32)], b: &[(usize, u32)]) -> SparseVec {
        let f = &self.field;
        let mut acc = Vec::new();
        for &(i, x) in a {
            for &(j, y) in b {
                let s = f.mul(x, y);
                for &(k, z) in self.basis_product(i, j) {
                    acc.push((k, f.mul(s, z)));
                }
            }
        }
        normalize(f, acc)
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let f = &self.field;
        let mut out = vec![0u32; self.dim()];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let s = f.mul(x, y);
                for &(k, z) in self.basis_product(i, j) {
                    out[k] = f.add(out[k], f.mul(s, z));
                }
            }
        }
        out
    }

    /// Multiplication table entries `(i, j, k, c)` with `b_i b_j = ... + c b_k`.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, u32)> {
        let d = self.dim();
        let mut out = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for &(k, c) in self.basis_product(i, j) {
                    out.push((i, j, k, c));
                }
            }
        }
        out
    }

    /// Is `v` invertible? Decided by solving `v x = 1`.
    pub fn is_invertible(&self, v: &[u32]) -> bool {
        let d = self.dim();
        let cols: Vec<SparseVec> = (0..d).map(|j| sparse_from_dense(&self.mul(v, &self.basis_vector(j)))).collect();
        crate::linalg::solve(&self.field, d, &cols, &vec![(self.unit, 1)]).is_some()
    }

    /// Does the span of `gens` form an ideal?
    pub fn is_ideal(&self, gens: &[Vec<u32>]) -> bool {
        let d = self.dim();
        let mut ech = Echelon::new(self.field.clone(), d);
        for g in gens {
            ech.insert(&sparse_from_dense(g));
        }
        for g in gens {
            for j in 0..d {
                if !ech.contains(&sparse_from_dense(&self.mul(g, &self.basis_vector(j)))) {
                    return false;
                }
            }
        }
        true
    }
}

impl CommAlgebra {
    pub fn to_doc(&self) -> CommAlgebraDoc {
        CommAlgebraDoc {
            p: self.field.p(),
            dim: self.dim(),
            basis: self.labels.clone(),
            unit: self.unit,
            mult: self.structure_constants().into_iter().map(|(i, j, k, c)| [i as u64, j as u64, k as u64, c as u64]).collect(),
            grading: self.grading.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: CommAlgebraDoc = serde_json::from_str(s)?;
        doc.into_algebra()
    }
}

/// JSON form: `{p, dim, basis, unit, mult: [[i, j, k, value]], grading?}`,
/// listing every ordered pair `(i, j)` with a nonzero product.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CommAlgebraDoc {
    pub p: u32,
    pub dim: usize,
    pub basis: Vec<String>,
    pub unit: usize,
    pub mult: Vec<[u64; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<Vec<Vec<i64>>>,
}

impl CommAlgebraDoc {
    pub fn into_algebra(self) -> Result<CommAlgebra> {
        let field = Fp::new(self.p)?;
        let d = self.dim;
        if self.basis.len() != d {
            return Err(Error::Malformed(format!("dim is {d} but basis has {} labels", self.basis.len())));
        }
        let mut table = vec![Vec::new(); d * d];
        for (n, e) in self.mult.iter().enumerate() {
            let [i, j, k, c] = *e;
            let fits = |x: u64| usize::try_from(x).ok().filter(|&x| x < d);
            match (fits(i), fits(j), fits(k)) {
                (Some(i), Some(j), Some(k)) => table[i * d + j].push((k, (c % self.p as u64) as u32)),
                _ => return Err(Error::Malformed(format!("mult entry #{n} {e:?} has an index out of range 0..{d}"))),
            }
        }
        let table = table.into_iter().map(|v| normalize(&field, v)).collect();
        CommAlgebra::new(field, self.basis, table, self.unit, self.grading)
    }
}

/// The one-dimensional algebra `K` (used as `B = K` in tensor products).
pub fn ground_field(field: &Fp) -> CommAlgebra {
    CommAlgebra::new(field.clone(), vec!["1".into()], vec![vec![(0, 1)]], 0, Some(vec![vec![]])).expect("K is an algebra")
}

/// The divided powers algebra `O_1(n)`: basis `x^i`, `0 <= i < p^n`, with
/// `x^i x^j = binom(i+j, j) x^{i+j}` truncated at `p^n`.
pub fn make_divided_powers(n: u32, field: &Fp) -> Result<CommAlgebra> {
    if n == 0 {
        return Err(Error::Precondition("divided powers need n >= 1".into()));
    }
    let size = (field.p() as u64)
        .checked_pow(n)
        .filter(|&s| s <= 1 << 16)
        .ok_or_else(|| Error::Precondition(format!("p^n = {}^{n} too large", field.p())))? as usize;
    let labels = (0..size).map(|i| format!("x^{i}")).collect();
    let mut table = Vec::with_capacity(size * size);
    for i in 0..size {
        for j in 0..size {
            let v = if i + j < size { field.binom((i + j) as i64, j as i64) } else { 0 };
            table.push(if v == 0 { Vec::new() } else { vec![(i + j, v)] });
        }
    }
    let grading = Some((0..size).map(|i| vec![i as i64]).collect());
    CommAlgebra::new(field.clone(), labels, table, 0, grading)
}

/// Exponent vector of the `idx`-th monomial of `O_m` (first variable fastest).
pub fn reduced_exponents(idx: usize, m: u32, p: u32) -> Vec<usize> {
    let mut e = Vec::with_capacity(m as usize);
    let mut r = idx;
    for _ in 0..m {
        e.push(r % p as usize);
        r /= p as usize;
    }
    e
}

pub fn reduced_index(exps: &[usize], p: u32) -> usize {
    exps.iter().rev().fold(0, |acc, &e| acc * p as usize + e)
}

/// The reduced polynomial ring `O_m = K[x_1..x_m]/(x_i^p)`.
pub fn make_reduced_poly(m: u32, field: &Fp) -> Result<CommAlgebra> {
    if m == 0 {
        return Err(Error::Precondition("reduced polynomial ring needs m >= 1".into()));
    }
    let p = field.p();
    let size = (p as u64).checked_pow(m).filter(|&s| s <= 1 << 16).ok_or_else(|| Error::Precondition(format!("p^m = {p}^{m} too large")))?
        as usize;
    let exps: Vec<Vec<usize>> = (0..size).map(|i| reduced_exponents(i, m, p)).collect();
    let labels = exps
        .iter()
        .map(|e| {
            let parts: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(v, &a)| if a == 1 { format!("x{}", v + 1) } else { format!("x{}^{a}", v + 1) })
                .collect();
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join("*")
            }
        })
        .collect();
    let mut table = Vec::with_capacity(size * size);
    for a in &exps {
        for b in &exps {
            let s: Vec<usize> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            table.push(if s.iter().all(|&x| x < p as usize) { vec![(reduced_index(&s, p), 1)] } else { Vec::new() });
        }
    }
    let grading = Some(exps.iter().map(|e| e.iter().map(|&x| x as i64).collect()).collect());
    CommAlgebra::new(field.clone(), labels, table, 0, grading)
}

/// `A ⊗ B` with basis `a_i ⊗ b_j` at index `i * dim B + j`.
pub fn tensor_product(a: &CommAlgebra, b: &CommAlgebra) -> Result<CommAlgebra> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch { left: a.field().p(), right: b.field().p() });
    }
    let f = a.field();
    let (da, db) = (a.dim(), b.dim());
    let mut labels = Vec::with_capacity(da * db);
    for la in a.labels() {
        for lb in b.labels() {
            labels.push(format!("{la}⊗{lb}"));
        }
    }
    let mut table = Vec::with_capacity(da * da * db * db);
    for i in 0..da {
        for j in 0..db {
            for k in 0..da {
                for l in 0..db {
                    let mut v = Vec::new();
                    for &(x, c) in a.basis_product(i, k) {
                        for &(y, e) in b.basis_product(j, l) {
                            v.push((x * db + y, f.mul(c, e)));
                        }
                    }
                    table.push(v);
                }
            }
        }
    }
    let grading = match (a.grading(), b.grading()) {
        (Some(ga), Some(gb)) => {
            let mut g = Vec::with_capacity(da * db);
            for x in ga {
                for y in gb {
                    g.push(x.iter().chain(y).copied().collect());
                }
            }
            Some(g)
        }
        _ => None,
    };
    CommAlgebra::new(f.clone(), labels, table, a.unit() * db + b.unit(), grading)
}

/// The isomorphism `O_m -> O_1(m)`,
/// `x^α -> α_1! .. α_m! x^{α_1 + α_2 p + ..}`, as column images, checked
/// multiplicative on all basis pairs.
pub fn divided_to_reduced_iso(m: u32, field: &Fp) -> Result<(CommAlgebra, CommAlgebra, Endomorphism)> {
    let reduced = make_reduced_poly(m, field)?;
    let divided = make_divided_powers(m, field)?;
    let p = field.p();
    let d = reduced.dim();
    let mut map = Endomorphism::zero(d);
    for idx in 0..d {
        let e = reduced_exponents(idx, m, p);
        let coef = e.iter().fold(1u32, |acc, &a| (1..=a as u32).fold(acc, |c, k| field.mul(c, k)));
        // the flat index of x^α in O_m is exactly α_1 + α_2 p + ..
        map.cols[idx][idx] = coef;
    }
    for i in 0..d {
        for j in 0..d {
            let lhs = map.apply(field, &reduced.mul(&reduced.basis_vector(i), &reduced.basis_vector(j)));
            let rhs = divided.mul(&map.cols[i], &map.cols[j]);
            if lhs != rhs {
                return Err(Error::Axiom(format!("isomorphism not multiplicative on ({}, {})", reduced.labels()[i], reduced.labels()[j])));
            }
        }
    }
    Ok((reduced, divided, map))
}

/// Linear endomorphism of an algebra; `cols[j]` is the image of `b_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endomorphism {
    pub cols: Vec<Vec<u32>>,
}

impl Endomorphism {
    pub fn zero(dim: usize) -> Self {
        Endomorphism { cols: vec![vec![0; dim]; dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut e = Self::zero(dim);
        for i in 0..dim {
            e.cols[i][i] = 1;
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn apply(&self, f: &Fp, v: &[u32]) -> Vec<u32> {
        let mut out = vec![0; self.dim()];
        for (j, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (k, &y) in self.cols[j].iter().enumerate() {
                if y != 0 {
                    out[k] = f.add(out[k], f.mul(x, y));
                }
            }
        }
        out
    }

    pub fn compose(&self, f: &Fp, other: &Endomorphism) -> Endomorphism {
        Endomorphism { cols: other.cols.iter().map(|c| self.apply(f, c)).collect() }
    }

    /// `[self, other] = self other - other self`.
    pub fn commutator(&self, f: &Fp, other: &Endomorphism) -> Endomorphism {
        let a = self.compose(f, other);
        let b = other.compose(f, self);
        a.sub(f, &b)
    }

    pub fn add(&self, f: &Fp, other: &Endomorphism) -> Endomorphism {
        Endomorphism {
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()).collect(),
        }
    }

    pub fn sub(&self, f: &Fp, other: &Endomorphism) -> Endomorphism {
        Endomorphism {
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| f.sub(x, y)).collect()).collect(),
        }
    }

    pub fn scale(&self, f: &Fp, s: u32) -> Endomorphism {
        Endomorphism { cols: self.cols.iter().map(|c| c.iter().map(|&x| f.mul(x, s)).collect()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.iter().all(|&x| x == 0))
    }

    /// Coordinates in the order `(image index k, source index j)` flattened to
    /// `j * dim + k`.
    pub fn flatten(&self) -> Vec<u32> {
        self.cols.iter().flatten().copied().collect()
    }

    pub fn unflatten(dim: usize, v: &[u32]) -> Endomorphism {
        Endomorphism { cols: v.chunks(dim).map(<[u32]>::to_vec).collect() }
    }

    /// Multiplication operator `R_u`.
    pub fn multiplication(a: &CommAlgebra, u: &[u32]) -> Endomorphism {
        Endomorphism { cols: (0..a.dim()).map(|j| a.mul(u, &a.basis_vector(j))).collect() }
    }
}

/// A derivation, checked against the Leibniz rule on all basis pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation(Endomorphism);

impl Derivation {
    pub fn new(a: &CommAlgebra, map: Endomorphism) -> Result<Self> {
        if map.dim() != a.dim() {
            return Err(Error::Malformed("derivation matrix has wrong size".into()));
        }
        if let Some((i, j)) = leibniz_failure(a, &map) {
            return Err(Error::NotDerivation(format!("D(b{i} b{j}) != D(b{i}) b{j} + b{i} D(b{j})")));
        }
        Ok(Derivation(map))
    }

    pub fn zero(a: &CommAlgebra) -> Self {
        Derivation(Endomorphism::zero(a.dim()))
    }

    pub fn map(&self) -> &Endomorphism {
        &self.0
    }

    pub fn into_map(self) -> Endomorphism {
        self.0
    }

    pub fn apply(&self, a: &CommAlgebra, v: &[u32]) -> Vec<u32> {
        self.0.apply(a.field(), v)
    }

    pub fn image_of_basis(&self, j: usize) -> &[u32] {
        &self.0.cols[j]
    }

    /// `u D`, again a derivation.
    pub fn times(&self, a: &CommAlgebra, u: &[u32]) -> Derivation {
        Derivation(Endomorphism { cols: self.0.cols.iter().map(|c| a.mul(u, c)).collect() })
    }

    pub fn commutator(&self, a: &CommAlgebra, other: &Derivation) -> Derivation {
        Derivation(self.0.commutator(a.field(), &other.0))
    }

    pub fn add(&self, a: &CommAlgebra, other: &Derivation) -> Derivation {
        Derivation(self.0.add(a.field(), &other.0))
    }

    pub fn scale(&self, a: &CommAlgebra, s: u32) -> Derivation {
        Derivation(self.0.scale(a.field(), s))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

fn leibniz_failure(a: &CommAlgebra, d: &Endomorphism) -> Option<(usize, usize)> {
    let f = a.field();
    for i in 0..a.dim() {
        for j in i..a.dim() {
            let prod = crate::linalg::dense_from_sparse(a.basis_product(i, j), a.dim());
            let lhs = d.apply(f, &prod);
            let r1 = a.mul(&d.cols[i], &a.basis_vector(j));
            let r2 = a.mul(&a.basis_vector(i), &d.cols[j]);
            let rhs: Vec<u32> = r1.iter().zip(&r2).map(|(&x, &y)| f.add(x, y)).collect();
            if lhs != rhs {
                return Some((i, j));
            }
        }
    }
    None
}

/// `∂` on `O_1(n)`: `x^j -> x^{j-1}`.
pub fn divided_partial(a: &CommAlgebra) -> Derivation {
    divided_partial_power(a, 1)
}

/// `∂^{s}` on a divided powers algebra: `x^j -> x^{j-s}`. A derivation when
/// `s` is a power of `p`.
pub fn divided_partial_power(a: &CommAlgebra, s: usize) -> Derivation {
    let d = a.dim();
    let mut m = Endomorphism::zero(d);
    for j in s..d {
        m.cols[j][j - s] = 1;
    }
    Derivation::new(a, m).expect("partial^(p^k) is a derivation of O_1(n)")
}

/// `∂/∂x_i` on `O_m`, `i` counted from 1.
pub fn reduced_partial(a: &CommAlgebra, m: u32, i: usize) -> Result<Derivation> {
    let f = a.field();
    let p = f.p();
    if i == 0 || i > m as usize {
        return Err(Error::IndexOutOfRange { index: i as i64, lo: 1, hi: m as i64 });
    }
    let mut e = Endomorphism::zero(a.dim());
    for idx in 0..a.dim() {
        let mut ex = reduced_exponents(idx, m, p);
        let k = ex[i - 1];
        if k > 0 {
            ex[i - 1] -= 1;
            e.cols[idx][reduced_index(&ex, p)] = f.from_i64(k as i64);
        }
    }
    Derivation::new(a, e)
}

/// `D ⊗ 1` on `A ⊗ B`.
pub fn extend_left(ab: &CommAlgebra, d: &Derivation, db: usize) -> Result<Derivation> {
    let da = d.map().dim();
    let mut e = Endomorphism::zero(da * db);
    for i in 0..da {
        for j in 0..db {
            for (k, &c) in d.image_of_basis(i).iter().enumerate() {
                if c != 0 {
                    e.cols[i * db + j][k * db + j] = c;
                }
            }
        }
    }
    Derivation::new(ab, e)
}

/// `1 ⊗ D` on `A ⊗ B`.
pub fn extend_right(ab: &CommAlgebra, da: usize, d: &Derivation) -> Result<Derivation> {
    let db = d.map().dim();
    let mut e = Endomorphism::zero(da * db);
    for i in 0..da {
        for j in 0..db {
            for (k, &c) in d.image_of_basis(j).iter().enumerate() {
                if c != 0 {
                    e.cols[i * db + j][i * db + k] = c;
                }
            }
        }
    }
    Derivation::new(ab, e)
}

/// Basis of `Der(A)` from the kernel of the Leibniz system on matrix entries.
pub fn derivation_space(a: &CommAlgebra) -> Vec<Derivation> {
    let d = a.dim();
    let f = a.field();
    // unknown (k, l) = coefficient of b_k in D(b_l), column l * d + k
    let var = |k: usize, l: usize| l * d + k;
    let mut rows = Vec::new();
    for i in 0..d {
        for j in i..d {
            let mut eqs: Vec<Vec<(usize, u32)>> = vec![Vec::new(); d];
            for &(l, c) in a.basis_product(i, j) {
                for (k, eq) in eqs.iter_mut().enumerate() {
                    eq.push((var(k, l), c));
                }
            }
            for s in 0..d {
                for &(k, c) in a.basis_product(s, j) {
                    eqs[k].push((var(s, i), f.neg(c)));
                }
                for &(k, c) in a.basis_product(i, s) {
                    eqs[k].push((var(s, j), f.neg(c)));
                }
            }
            for eq in eqs {
                let v = normalize(f, eq);
                if !v.is_empty() {
                    rows.push(v);
                }
            }
        }
    }
    let m = SparseMatrix::new(d * d, rows);
    m.kernel(f)
        .into_iter()
        .map(|v| {
            let dense = crate::linalg::dense_from_sparse(&v, d * d);
            Derivation(Endomorphism::unflatten(d, &dense))
        })
        .collect()
}

/// A subspace given by a basis of dense vectors.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Subspace {
    pub ambient: usize,
    pub basis: Vec<Vec<u32>>,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// `A^D = ker D`.
pub fn d_invariants(a: &CommAlgebra, d: &Derivation) -> Result<Subspace> {
    leibniz_checked(a, d)?;
    let n = a.dim();
    let rows: Vec<SparseVec> = (0..n).map(|k| normalize(a.field(), (0..n).map(|j| (j, d.image_of_basis(j)[k])).collect())).collect();
    let ker = SparseMatrix::new(n, rows).kernel(a.field());
    Ok(Subspace { ambient: n, basis: ker.iter().map(|v| crate::linalg::dense_from_sparse(v, n)).collect() })
}

fn leibniz_checked(a: &CommAlgebra, d: &Derivation) -> Result<()> {
    match leibniz_failure(a, d.map()) {
        Some((i, j)) => Err(Error::NotDerivation(format!("fails on (b{i}, b{j})"))),
        None => Ok(()),
    }
}

/// `Der(A)^D`: derivations commuting with `D`.
pub fn der_invariants(a: &CommAlgebra, d: &Derivation) -> Result<Vec<Derivation>> {
    leibniz_checked(a, d)?;
    let f = a.field();
    let basis = derivation_space(a);
    let images: Vec<Vec<u32>> = basis.iter().map(|e| d.commutator(a, e).map().flatten()).collect();
    let n = a.dim() * a.dim();
    // coefficient vector c with sum c_i [D, E_i] = 0
    let rows: Vec<SparseVec> = (0..n)
        .map(|coord| normalize(f, images.iter().enumerate().map(|(i, v)| (i, v[coord])).collect()))
        .filter(|r: &SparseVec| !r.is_empty())
        .collect();
    let ker = SparseMatrix::new(basis.len(), rows).kernel(f);
    Ok(ker
        .iter()
        .map(|c| {
            let mut acc = Derivation::zero(a);
            for &(i, x) in c {
                acc = acc.add(a, &basis[i].scale(a, x));
            }
            acc
        })
        .collect())
}

/// Quotient data for `Der(A) / [D, Der(A)]`.
#[derive(Clone, Debug)]
pub struct Coinvariants {
    pub dim: usize,
    pub representatives: Vec<Derivation>,
}

pub fn der_coinvariants(a: &CommAlgebra, d: &Derivation) -> Result<Coinvariants> {
    leibniz_checked(a, d)?;
    let f = a.field();
    let basis = derivation_space(a);
    let n = a.dim() * a.dim();
    let image: Vec<SparseVec> = basis.iter().map(|e| sparse_from_dense(&d.commutator(a, e).map().flatten())).collect();
    let cands: Vec<SparseVec> = basis.iter().map(|e| sparse_from_dense(&e.map().flatten())).collect();
    let picked = crate::linalg::independent_modulo(f, n, &image, &cands);
    Ok(Coinvariants { dim: picked.len(), representatives: picked.into_iter().map(|i| basis[i].clone()).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_and_errors() {
        let f = Fp::new(5).unwrap();
        let a = make_reduced_poly(2, &f).unwrap();
        let b = CommAlgebra::from_json(&a.to_json()).unwrap();
        assert_eq!(b.structure_constants(), a.structure_constants());
        assert_eq!(b.grading(), a.grading());
        let bad = r#"{"p":5,"dim":2,"basis":["1","x"],"unit":0,"mult":[[0,0,0,1],[0,1,1,1],[1,0,1,1],[1,1,7,1]]}"#;
        assert!(CommAlgebra::from_json(bad).unwrap_err().to_string().contains("mult entry #3"));
        let noncomm = r#"{"p":5,"dim":2,"basis":["1","x"],"unit":0,"mult":[[0,0,0,1],[0,1,1,1],[1,0,1,1],[1,1,1,1],[1,1,0,0]]}"#;
        assert!(CommAlgebra::from_json(noncomm).is_ok());
    }

    fn f5() -> Fp {
        Fp::new(5).unwrap()
    }

    fn x(a: &CommAlgebra, i: usize) -> Vec<u32> {
        a.basis_vector(i)
    }

    #[test]
    fn divided_powers_products() {
        let o = make_divided_powers(1, &f5()).unwrap();
        assert_eq!(o.mul(&x(&o, 1), &x(&o, 1)), {
            let mut v = vec![0; 5];
            v[2] = 2;
            v
        });
        // binom(4,2) = 6 = 1 mod 5
        assert_eq!(o.mul(&x(&o, 2), &x(&o, 2)), x(&o, 4));
        assert!(o.mul(&x(&o, 1), &x(&o, 4)).iter().all(|&c| c == 0));
        assert_eq!(o.dim(), 5);
    }

    #[test]
    fn reduced_poly_products() {
        let f = f5();
        let o1 = make_reduced_poly(1, &f).unwrap();
        assert!(o1.mul(&x(&o1, 3), &x(&o1, 2)).iter().all(|&c| c == 0));
        assert_eq!(o1.dim(), 5);
        let o2 = make_reduced_poly(2, &f).unwrap();
        let x1x2 = x(&o2, reduced_index(&[1, 1], 5));
        assert_eq!(o2.mul(&x1x2, &x1x2), x(&o2, reduced_index(&[2, 2], 5)));
        assert_eq!(o2.labels()[reduced_index(&[2, 1], 5)], "x1^2*x2");
    }

    #[test]
    fn constructed_algebras_pass_axioms() {
        // construction checks commutativity, associativity and the unit law
        for p in [5u32, 7] {
            let f = Fp::new(p).unwrap();
            make_divided_powers(1, &f).unwrap();
            make_reduced_poly(2, &f).unwrap();
        }
        let f = f5();
        make_divided_powers(2, &f).unwrap();
        let o = make_divided_powers(1, &f).unwrap();
        tensor_product(&o, &o).unwrap();
    }

    #[test]
    fn rejects_noncommutative_table() {
        let f = f5();
        let table = vec![vec![(0, 1)], vec![(1, 1)], vec![(1, 1)], vec![(0, 1)]];
        assert!(CommAlgebra::new(f.clone(), vec!["1".into(), "y".into()], table, 0, None).is_ok());
        let bad = vec![vec![(0, 1)], vec![(1, 1)], vec![(1, 1)], vec![(1, 1)]];
        // y*y = y with unit 1 is fine; now break commutativity of a 2-dim table with unit 0
        assert!(CommAlgebra::new(f.clone(), vec!["1".into(), "y".into()], bad, 0, None).is_ok());
        let noncomm = vec![vec![(0, 1)], vec![(1, 1)], vec![(1, 2)], vec![]];
        assert!(matches!(CommAlgebra::new(f, vec!["1".into(), "y".into()], noncomm, 0, None), Err(Error::Axiom(_))));
    }

    #[test]
    fn divided_reduced_isomorphism() {
        for (p, m) in [(5u32, 1u32), (5, 2), (7, 1)] {
            divided_to_reduced_iso(m, &Fp::new(p).unwrap()).unwrap();
        }
        let (r, _, iso) = divided_to_reduced_iso(2, &f5()).unwrap();
        let x1x2 = reduced_index(&[1, 1], 5);
        assert_eq!(iso.cols[x1x2][6], 1);
        let x1x2sq = reduced_index(&[2, 2], 5);
        assert_eq!(iso.cols[x1x2sq][12], 4);
        assert_eq!(iso.apply(r.field(), &r.unit_vector())[0], 1);
    }

    #[test]
    fn maximal_ideal_and_units() {
        let f = f5();
        for n in 1..=2 {
            let o = make_divided_powers(n, &f).unwrap();
            let plus: Vec<Vec<u32>> = (1..o.dim()).map(|i| x(&o, i)).collect();
            assert!(o.is_ideal(&plus));
            assert!(o.is_invertible(&o.unit_vector()));
            for i in 1..o.dim() {
                assert!(!o.is_invertible(&x(&o, i)));
                let mut v = x(&o, i);
                v[0] = 3;
                assert!(o.is_invertible(&v));
            }
        }
    }

    #[test]
    fn tensor_unit_and_products() {
        let f = f5();
        let o11 = make_divided_powers(1, &f).unwrap();
        let o1 = make_reduced_poly(1, &f).unwrap();
        let t = tensor_product(&o11, &o1).unwrap();
        assert_eq!(t.dim(), 25);
        assert_eq!(t.unit(), 0);
        // (x^1 ⊗ 1)(1 ⊗ x_1) = x^1 ⊗ x_1
        assert_eq!(t.mul(&x(&t, 5), &x(&t, 1)), x(&t, 6));
        let g = Fp::new(7).unwrap();
        let o7 = make_reduced_poly(1, &g).unwrap();
        assert!(matches!(tensor_product(&o1, &o7), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn derivation_space_dimensions() {
        let f = f5();
        let o1 = make_divided_powers(1, &f).unwrap();
        let der = derivation_space(&o1);
        assert_eq!(der.len(), 5);
        let o2 = make_reduced_poly(2, &f).unwrap();
        assert_eq!(derivation_space(&o2).len(), 50);
        // ∂ is in the span
        let partial = divided_partial(&o1);
        let vecs: Vec<SparseVec> = der.iter().map(|d| sparse_from_dense(&d.map().flatten())).collect();
        assert!(crate::linalg::solve(&f, 25, &vecs, &sparse_from_dense(&partial.map().flatten())).is_some());
    }

    #[test]
    fn invariants_of_partial() {
        let f = f5();
        let o1 = make_divided_powers(1, &f).unwrap();
        let partial = divided_partial(&o1);
        assert_eq!(d_invariants(&o1, &partial).unwrap().dim(), 1);
        assert_eq!(der_invariants(&o1, &partial).unwrap().len(), 1);
        assert_eq!(der_coinvariants(&o1, &partial).unwrap().dim, 1);
        let zero = Derivation::zero(&o1);
        assert_eq!(d_invariants(&o1, &zero).unwrap().dim(), 5);
        assert_eq!(der_invariants(&o1, &zero).unwrap().len(), 5);
    }

    #[test]
    fn non_derivation_rejected() {
        let f = f5();
        let o1 = make_divided_powers(1, &f).unwrap();
        let id = Endomorphism::identity(5);
        assert!(matches!(Derivation::new(&o1, id), Err(Error::NotDerivation(_))));
    }

    #[test]
    fn derivation_constructors() {
        let f = f5();
        let o2 = make_divided_powers(2, &f).unwrap();
        divided_partial_power(&o2, 5);
        let r2 = make_reduced_poly(2, &f).unwrap();
        reduced_partial(&r2, 2, 1).unwrap();
        reduced_partial(&r2, 2, 2).unwrap();
        let o1 = make_divided_powers(1, &f).unwrap();
        let t = tensor_product(&o1, &o1).unwrap();
        extend_left(&t, &divided_partial(&o1), 5).unwrap();
        extend_right(&t, 5, &divided_partial(&o1)).unwrap();
    }
}
