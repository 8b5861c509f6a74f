//! Lie algebras by structure constants.
//!
//! A [`LieAlgebra`] stores the full antisymmetric table, an optional integer
//! degree per basis vector (a grading, or the lower bound of a filtration)
//! and optionally the index of a toral element whose adjoint action is
//! diagonal on the basis.

mod build;
mod structure;

pub use build::*;
pub use structure::*;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::Fp;
use crate::error::{Error, Result};
use crate::linalg::{normalize, SparseVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DegreeKind {
    /// `[L_i, L_j] ⊆ L_{i+j}`.
    Grading,
    /// `[L_i, L_j] ⊆ Σ_{k >= i+j} L_k`.
    Filtration,
}

#[derive(Clone, Debug)]
pub struct LieAlgebra {
    field: Fp,
    labels: Vec<String>,
    /// `table[i * dim + j] = [b_i, b_j]`.
    table: Vec<SparseVec>,
    degrees: Option<Vec<i64>>,
    kind: DegreeKind,
    toral: Option<usize>,
}

impl LieAlgebra {
    /// Validates antisymmetry, the Jacobi identity on all basis triples,
    /// degree compatibility and diagonality of the toral element.
    pub fn new(
        field: Fp,
        labels: Vec<String>,
        table: Vec<SparseVec>,
        degrees: Option<Vec<i64>>,
        kind: DegreeKind,
        toral: Option<usize>,
    ) -> Result<Self> {
        let d = labels.len();
        if table.len() != d * d {
            return Err(Error::Malformed(format!("bracket table has {} entries, expected {}", table.len(), d * d)));
        }
        if degrees.as_ref().is_some_and(|g| g.len() != d) {
            return Err(Error::Malformed("degree list length differs from dimension".into()));
        }
        let table: Vec<SparseVec> = table.into_iter().map(|v| normalize(&field, v)).collect();
        let l = LieAlgebra { field, labels, table, degrees, kind, toral };
        l.check_antisymmetry()?;
        l.check_degrees()?;
        if let Some(t) = toral {
            if t >= d {
                return Err(Error::Malformed(format!("toral index {t} out of range")));
            }
            root_decomposition(&l, t)?;
        }
        if let Some(triple) = l.jacobi_failure() {
            return Err(Error::Jacobi(triple));
        }
        Ok(l)
    }

    /// From a list of `(i, j, k, c)` meaning `[b_i, b_j] ∋ c b_k`; entries with
    /// `i < j` are mirrored, entries with `i > j` must agree with the mirror.
    pub fn from_brackets(
        field: Fp,
        labels: Vec<String>,
        entries: &[(usize, usize, usize, u32)],
        degrees: Option<Vec<i64>>,
        kind: DegreeKind,
        toral: Option<usize>,
    ) -> Result<Self> {
        let d = labels.len();
        let mut upper: Vec<Vec<(usize, u32)>> = vec![Vec::new(); d * d];
        let mut lower: Vec<Vec<(usize, u32)>> = vec![Vec::new(); d * d];
        for (n, &(i, j, k, c)) in entries.iter().enumerate() {
            if i >= d || j >= d || k >= d {
                return Err(Error::Malformed(format!("bracket entry #{n} [{i},{j},{k},{c}] has an index out of range")));
            }
            if i == j {
                if c % field.p() != 0 {
                    return Err(Error::Malformed(format!("bracket entry #{n} [{i},{j},{k},{c}]: [b_i, b_i] must vanish")));
                }
                continue;
            }
            let c = c % field.p();
            if i < j {
                upper[i * d + j].push((k, c));
            } else {
                lower[j * d + i].push((k, field.neg(c)));
            }
        }
        let mut table = vec![Vec::new(); d * d];
        for i in 0..d {
            for j in i + 1..d {
                let u = normalize(&field, std::mem::take(&mut upper[i * d + j]));
                let lw = normalize(&field, std::mem::take(&mut lower[i * d + j]));
                if !lw.is_empty() && !u.is_empty() && lw != u {
                    return Err(Error::Malformed(format!("entries for [b{i}, b{j}] and [b{j}, b{i}] are not antisymmetric")));
                }
                let v = if u.is_empty() { lw } else { u };
                table[j * d + i] = v.iter().map(|&(k, c)| (k, field.neg(c))).collect();
                table[i * d + j] = v;
            }
        }
        Self::new(field, labels, table, degrees, kind, toral)
    }

    fn check_antisymmetry(&self) -> Result<()> {
        let d = self.dim();
        let f = &self.field;
        for i in 0..d {
            if !self.table[i * d + i].is_empty() {
                return Err(Error::Axiom(format!("[b{i}, b{i}] != 0")));
            }
            for j in i + 1..d {
                let neg: SparseVec = self.table[j * d + i].iter().map(|&(k, c)| (k, f.neg(c))).collect();
                if self.table[i * d + j] != neg {
                    return Err(Error::Axiom(format!("[b{i}, b{j}] != -[b{j}, b{i}]")));
                }
            }
        }
        Ok(())
    }

    fn check_degrees(&self) -> Result<()> {
        let Some(g) = &self.degrees else { return Ok(()) };
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                for &(k, _) in self.bracket_basis(i, j) {
                    let ok = match self.kind {
                        DegreeKind::Grading => g[k] == g[i] + g[j],
                        DegreeKind::Filtration => g[k] >= g[i] + g[j],
                    };
                    if !ok {
                        return Err(Error::Axiom(format!("[b{i}, b{j}] has a term b{k} of the wrong degree")));
                    }
                }
            }
        }
        Ok(())
    }

    /// First basis triple `i < j < k` violating Jacobi, if any.
    pub fn jacobi_failure(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        (0..d).into_par_iter().find_map_first(|i| {
            for j in i + 1..d {
                for k in j + 1..d {
                    let f = &self.field;
                    let mut acc = Vec::new();
                    for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for &(l, c) in self.bracket_basis(x, y) {
                            for &(m, e) in self.bracket_basis(l, z) {
                                acc.push((m, f.mul(c, e)));
                            }
                        }
                    }
                    if !normalize(f, acc).is_empty() {
                        return Some((i, j, k));
                    }
                }
            }
            None
        })
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

    pub fn degrees(&self) -> Option<&[i64]> {
        self.degrees.as_deref()
    }

    pub fn degree_kind(&self) -> DegreeKind {
        self.kind
    }

    pub fn is_graded(&self) -> bool {
        self.degrees.is_some() && self.kind == DegreeKind::Grading
    }

    pub fn toral(&self) -> Option<usize> {
        self.toral
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        v
    }

    #[inline]
    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim() + j]
    }

    pub fn bracket_sparse(&self, x: &[(usize, u32)], y: &[(usize, u32)]) -> SparseVec {
        let f = &self.field;
        let mut acc = Vec::new();
        for &(i, a) in x {
            for &(j, b) in y {
                let s = f.mul(a, b);
                for &(k, c) in self.bracket_basis(i, j) {
                    acc.push((k, f.mul(s, c)));
                }
            }
        }
        normalize(f, acc)
    }

    pub fn bracket(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = &self.field;
        let mut out = vec![0; self.dim()];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let s = f.mul(a, b);
                for &(k, c) in self.bracket_basis(i, j) {
                    out[k] = f.add(out[k], f.mul(s, c));
                }
            }
        }
        out
    }

    /// Same structure constants on the same labels (degrees and toral ignored).
    pub fn same_brackets(&self, other: &LieAlgebra) -> bool {
        self.field == other.field && self.dim() == other.dim() && self.table == other.table
    }

    /// All nonzero `(i, j, k, c)` with `i < j`.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, u32)> {
        let d = self.dim();
        let mut out = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                for &(k, c) in self.bracket_basis(i, j) {
                    out.push((i, j, k, c));
                }
            }
        }
        out
    }

    /// Keeps only the bracket terms of exact degree `deg i + deg j`.
    pub fn associated_graded(&self) -> Result<LieAlgebra> {
        let g = self.degrees.as_ref().ok_or_else(|| Error::Precondition("no filtration recorded".into()))?;
        let d = self.dim();
        let table = (0..d * d)
            .map(|ij| {
                let (i, j) = (ij / d, ij % d);
                self.table[ij].iter().copied().filter(|&(k, _)| g[k] == g[i] + g[j]).collect()
            })
            .collect();
        LieAlgebra::new(self.field.clone(), self.labels.clone(), table, Some(g.clone()), DegreeKind::Grading, self.toral)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim());
        self.labels = labels;
        self
    }

    pub(crate) fn raw_parts(&self) -> (&Fp, &[String], &[SparseVec]) {
        (&self.field, &self.labels, &self.table)
    }

    pub fn to_doc(&self) -> LieAlgebraDoc {
        LieAlgebraDoc {
            p: self.field.p(),
            dim: self.dim(),
            basis: self.labels.clone(),
            bracket: self.structure_constants().into_iter().map(|(i, j, k, c)| [i as u64, j as u64, k as u64, c as u64]).collect(),
            grading: self.degrees.clone(),
            degree_kind: self.degrees.as_ref().map(|_| self.kind),
            toral: self.toral,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: LieAlgebraDoc = serde_json::from_str(s)?;
        doc.into_algebra()
    }
}

/// JSON form: `{p, dim, basis, bracket: [[i, j, k, value]], grading?, degree_kind?, toral?}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LieAlgebraDoc {
    pub p: u32,
    pub dim: usize,
    pub basis: Vec<String>,
    pub bracket: Vec<[u64; 4]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_kind: Option<DegreeKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub toral: Option<usize>,
}

impl LieAlgebraDoc {
    pub fn into_algebra(self) -> Result<LieAlgebra> {
        let field = Fp::new(self.p)?;
        if self.basis.len() != self.dim {
            return Err(Error::Malformed(format!("dim is {} but basis has {} labels", self.dim, self.basis.len())));
        }
        let mut entries = Vec::with_capacity(self.bracket.len());
        for (n, e) in self.bracket.iter().enumerate() {
            let [i, j, k, c] = *e;
            let fits = |x: u64| usize::try_from(x).ok().filter(|&x| x < self.dim);
            match (fits(i), fits(j), fits(k)) {
                (Some(i), Some(j), Some(k)) => entries.push((i, j, k, (c % self.p as u64) as u32)),
                _ => return Err(Error::Malformed(format!("bracket entry #{n} {e:?} has an index out of range 0..{}", self.dim))),
            }
        }
        LieAlgebra::from_brackets(field, self.basis, &entries, self.grading, self.degree_kind.unwrap_or(DegreeKind::Grading), self.toral)
    }
}
