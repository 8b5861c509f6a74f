//! Sparse exact linear algebra over `F_p`.
//!
//! Everything is built on [`Echelon`], an incremental row-echelon basis with
//! sparse pivot rows and a dense scratch accumulator. Rank, kernels, solves
//! and quotient representatives all go through it.

use crate::arith::Fp;

/// Sparse vector: strictly increasing indices, nonzero residues.
pub type SparseVec = Vec<(usize, u32)>;

const NONE: u32 = u32::MAX;

pub fn sparse_from_dense(v: &[u32]) -> SparseVec {
    v.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, x)).collect()
}

pub fn dense_from_sparse(v: &SparseVec, n: usize) -> Vec<u32> {
    let mut out = vec![0; n];
    for &(i, x) in v {
        out[i] = x;
    }
    out
}

/// Sorts by index and merges duplicates, dropping zeros.
pub fn normalize(fp: &Fp, mut v: Vec<(usize, u32)>) -> SparseVec {
    v.sort_unstable_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 = fp.add(last.1, x),
            _ => out.push((i, x)),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}

/// `a + s * b`.
pub fn axpy(fp: &Fp, a: &SparseVec, s: u32, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            let v = fp.mul(s, b[j].1);
            if v != 0 {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = fp.add(a[i].1, fp.mul(s, b[j].1));
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(fp: &Fp, v: &SparseVec, s: u32) -> SparseVec {
    if s == 0 {
        return Vec::new();
    }
    v.iter().map(|&(i, x)| (i, fp.mul(x, s))).collect()
}

/// Row-major sparse matrix.
#[derive(Clone, Debug, Default)]
pub struct SparseMatrix {
    pub nrows: usize,
    pub ncols: usize,
    pub rows: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn new(ncols: usize, rows: Vec<SparseVec>) -> Self {
        SparseMatrix { nrows: rows.len(), ncols, rows }
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols: Vec<SparseVec> = vec![Vec::new(); self.ncols];
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, x) in row {
                cols[c].push((r, x));
            }
        }
        SparseMatrix { nrows: self.ncols, ncols: self.nrows, rows: cols }
    }

    pub fn mul_vec(&self, fp: &Fp, v: &[u32]) -> Vec<u32> {
        self.rows.iter().map(|row| row.iter().fold(0u32, |acc, &(c, x)| fp.add(acc, fp.mul(x, v[c])))).collect()
    }

    /// Exact rank. Columns are renumbered by ascending count and rows are fed
    /// sparsest first, a cheap Markowitz-style ordering; determinism comes
    /// from stable sorts.
    pub fn rank(&self, fp: &Fp) -> usize {
        if self.rows.is_empty() || self.ncols == 0 {
            return 0;
        }
        let mut count = vec![0usize; self.ncols];
        for row in &self.rows {
            for &(c, _) in row {
                count[c] += 1;
            }
        }
        let mut order: Vec<usize> = (0..self.ncols).collect();
        order.sort_by_key(|&c| count[c]);
        let mut relabel = vec![0usize; self.ncols];
        for (new, &old) in order.iter().enumerate() {
            relabel[old] = new;
        }
        let mut rows: Vec<SparseVec> = self
            .rows
            .iter()
            .filter(|r| !r.is_empty())
            .map(|r| {
                let mut v: SparseVec = r.iter().map(|&(c, x)| (relabel[c], x)).collect();
                v.sort_unstable_by_key(|e| e.0);
                v
            })
            .collect();
        rows.sort_by_key(Vec::len);
        let mut ech = Echelon::new(fp.clone(), self.ncols);
        for r in &rows {
            ech.insert(r);
            if ech.rank() == self.ncols {
                break;
            }
        }
        ech.rank()
    }

    /// Basis of `{x : M x = 0}`.
    pub fn kernel(&self, fp: &Fp) -> Vec<SparseVec> {
        let mut ech = Echelon::new(fp.clone(), self.ncols);
        for r in &self.rows {
            if !r.is_empty() {
                ech.insert(r);
            }
        }
        ech.kernel_basis()
    }
}

/// Incremental echelon form. Every stored row has leading coefficient 1 at
/// its pivot column and no entries left of it.
#[derive(Clone)]
pub struct Echelon {
    fp: Fp,
    ncols: usize,
    pivot_row: Vec<u32>,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
    combos: Option<Vec<SparseVec>>,
    inserted: usize,
    acc: Vec<u32>,
}

impl Echelon {
    pub fn new(fp: Fp, ncols: usize) -> Self {
        Echelon {
            fp,
            ncols,
            pivot_row: vec![NONE; ncols],
            rows: Vec::new(),
            pivots: Vec::new(),
            combos: None,
            inserted: 0,
            acc: vec![0; ncols],
        }
    }

    /// Same, but remembers how each stored row combines the inserted vectors,
    /// which is what [`Echelon::express`] needs.
    pub fn with_history(fp: Fp, ncols: usize) -> Self {
        let mut e = Echelon::new(fp, ncols);
        e.combos = Some(Vec::new());
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Reduces `v` against the stored rows. Returns the remainder and, when
    /// history is on, the combination of stored-row origins that was
    /// subtracted (as a sparse vector over insertion ids).
    fn reduce(&mut self, v: &SparseVec, stop_at_new_pivot: bool) -> (SparseVec, SparseVec) {
        let fp = self.fp.clone();
        if v.is_empty() {
            return (Vec::new(), Vec::new());
        }
        let mut lo = usize::MAX;
        let mut hi = 0usize;
        for &(c, x) in v {
            self.acc[c] = x;
            lo = lo.min(c);
            hi = hi.max(c);
        }
        let mut used: Vec<(usize, u32)> = Vec::new();
        let mut remainder: SparseVec = Vec::new();
        let mut c = lo;
        let mut stopped = false;
        while c <= hi {
            let x = self.acc[c];
            if x != 0 {
                let r = self.pivot_row[c];
                if stopped || r == NONE {
                    remainder.push((c, x));
                    self.acc[c] = 0;
                    if stop_at_new_pivot {
                        stopped = true;
                    }
                } else {
                    let f = fp.neg(x);
                    let row = &self.rows[r as usize];
                    for &(cc, y) in row {
                        let a = &mut self.acc[cc];
                        *a = ((*a as u64 + f as u64 * y as u64) % fp.p() as u64) as u32;
                    }
                    if let Some(&(last, _)) = row.last() {
                        hi = hi.max(last);
                    }
                    debug_assert_eq!(self.acc[c], 0);
                    used.push((r as usize, x));
                }
            }
            c += 1;
        }
        let combo = if let Some(combos) = &self.combos {
            let mut acc: Vec<(usize, u32)> = Vec::new();
            for (r, x) in used {
                for &(id, y) in &combos[r] {
                    acc.push((id, fp.mul(x, y)));
                }
            }
            normalize(&fp, acc)
        } else {
            Vec::new()
        };
        (remainder, combo)
    }

    /// Inserts `v`; returns true if it was independent of the current span.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let id = self.inserted;
        self.inserted += 1;
        let (rem, used) = self.reduce(v, self.combos.is_none());
        if rem.is_empty() {
            return false;
        }
        let fp = self.fp.clone();
        let lead = rem[0].0;
        let inv = fp.inv(rem[0].1);
        let row = scale(&fp, &rem, inv);
        if let Some(combos) = &mut self.combos {
            // row = inv * (v - sum used)
            let mut c: Vec<(usize, u32)> = vec![(id, inv)];
            for (k, x) in used {
                c.push((k, fp.neg(fp.mul(inv, x))));
            }
            combos.push(normalize(&fp, c));
        }
        self.pivot_row[lead] = self.rows.len() as u32;
        self.rows.push(row);
        self.pivots.push(lead);
        true
    }

    pub fn contains(&mut self, v: &SparseVec) -> bool {
        self.reduce(v, true).0.is_empty()
    }

    /// Writes `v` as a combination of the inserted vectors, if it lies in
    /// their span. Requires [`Echelon::with_history`].
    pub fn express(&mut self, v: &SparseVec) -> Option<SparseVec> {
        assert!(self.combos.is_some(), "express needs an echelon with history");
        let (rem, used) = self.reduce(v, false);
        if rem.is_empty() {
            Some(used)
        } else {
            None
        }
    }

    /// Basis of the null space of the matrix whose rows were inserted.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        let fp = &self.fp;
        // back-substitute to reduced row echelon form, highest pivot first
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| std::cmp::Reverse(self.pivots[r]));
        let mut reduced: Vec<SparseVec> = vec![Vec::new(); self.rows.len()];
        let mut acc = vec![0u32; self.ncols];
        for &r in &order {
            let row = &self.rows[r];
            for &(c, x) in row {
                acc[c] = x;
            }
            let lead = self.pivots[r];
            let hi = row.last().map(|e| e.0).unwrap_or(lead);
            let mut out: SparseVec = Vec::new();
            for c in lead..=hi {
                let x = acc[c];
                if x == 0 {
                    continue;
                }
                let pr = self.pivot_row[c];
                if c != lead && pr != NONE {
                    let f = fp.neg(x);
                    for &(cc, y) in &reduced[pr as usize] {
                        acc[cc] = fp.add(acc[cc], fp.mul(f, y));
                    }
                    acc[c] = 0;
                } else {
                    out.push((c, x));
                    acc[c] = 0;
                }
            }
            // entries beyond hi can appear from other reduced rows
            let tail_start = hi + 1;
            for c in tail_start..self.ncols {
                if acc[c] != 0 {
                    out.push((c, acc[c]));
                    acc[c] = 0;
                }
            }
            out.sort_unstable_by_key(|e| e.0);
            reduced[r] = out;
        }
        let mut is_pivot = vec![false; self.ncols];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        // column -> list of (pivot column, coefficient) from the reduced rows
        let mut by_free: Vec<Vec<(usize, u32)>> = vec![Vec::new(); self.ncols];
        for (r, row) in reduced.iter().enumerate() {
            let lead = self.pivots[r];
            for &(c, x) in row {
                if c != lead {
                    by_free[c].push((lead, x));
                }
            }
        }
        let mut basis = Vec::new();
        for f in 0..self.ncols {
            if is_pivot[f] {
                continue;
            }
            let mut v: Vec<(usize, u32)> = vec![(f, 1)];
            for &(lead, x) in &by_free[f] {
                v.push((lead, fp.neg(x)));
            }
            v.sort_unstable_by_key(|e| e.0);
            basis.push(v);
        }
        basis
    }
}

/// Indices of `candidates` that are independent modulo `span(base)` and of
/// the earlier chosen candidates.
pub fn independent_modulo(fp: &Fp, ncols: usize, base: &[SparseVec], candidates: &[SparseVec]) -> Vec<usize> {
    let mut ech = Echelon::new(fp.clone(), ncols);
    for b in base {
        ech.insert(b);
    }
    candidates.iter().enumerate().filter(|(_, v)| ech.insert(v)).map(|(i, _)| i).collect()
}

/// Rank of `span(base + extra)` minus rank of `span(base)`.
pub fn relative_rank(fp: &Fp, ncols: usize, base: &[SparseVec], extra: &[SparseVec]) -> usize {
    independent_modulo(fp, ncols, base, extra).len()
}

/// Finds `x` with `sum_j x_j columns[j] = target`.
pub fn solve(fp: &Fp, ncols: usize, columns: &[SparseVec], target: &SparseVec) -> Option<SparseVec> {
    let mut ech = Echelon::with_history(fp.clone(), ncols);
    for c in columns {
        ech.insert(c);
    }
    ech.express(target)
}

/// Dense-vector rank, used for small spans such as derived series.
pub fn rank_of_dense(fp: &Fp, vectors: &[Vec<u32>]) -> usize {
    let n = vectors.first().map(Vec::len).unwrap_or(0);
    let mut ech = Echelon::new(fp.clone(), n);
    for v in vectors {
        ech.insert(&sparse_from_dense(v));
    }
    ech.rank()
}

/// A basis (as dense vectors) of the span of `vectors`.
pub fn span_basis(fp: &Fp, n: usize, vectors: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut ech = Echelon::new(fp.clone(), n);
    let mut out = Vec::new();
    for v in vectors {
        if ech.insert(&sparse_from_dense(v)) {
            out.push(v.clone());
        }
    }
    out
}
