//! The three linear identities satisfied by the coefficients `λ_ij`.

use serde::{Deserialize, Serialize};

use crate::arith::{lambda_table, Fp};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityFailure {
    pub identity: String,
    pub indices: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LambdaReport {
    pub p: u32,
    /// Number of index tuples checked per identity.
    pub checked: [usize; 3],
    pub failures: Vec<IdentityFailure>,
    /// `λ_{-1,j} = λ_{0,j} = 0`, `λ_{1,j} = 3/2`, the `λ_{i,-1}` sums and the
    /// recurrence `λ_ij = λ_{i-1,j} + λ_{i,j-1}`.
    pub boundary_ok: bool,
    pub lambda_top_zero: bool,
}

impl LambdaReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.boundary_ok && self.lambda_top_zero
    }
}

/// Checks the identities against the closed-form table at `p`.
pub fn lambda_identities_check(p: u32) -> Result<LambdaReport> {
    let f = Fp::new(p)?;
    let table = lambda_table(&f);
    Ok(check_table(&f, &table))
}

/// Checks the identities for an arbitrary table indexed by `(i + 1, j + 1)`.
pub fn check_table(f: &Fp, table: &[Vec<u32>]) -> LambdaReport {
    let p = f.p() as i64;
    let lam = |i: i64, j: i64| table[(i + 1) as usize][(j + 1) as usize];
    let r = |k: i64| f.mul(f.sign(k), f.mul(f.from_i64(2 * k + 1), f.inv(f.from_i64(k * (k + 1)))));
    let n = |i: i64, j: i64| f.structure_constant(i, j);
    let mut failures = Vec::new();
    let mut checked = [0; 3];
    for k in 1..=p - 2 {
        let j = p - 1 - k;
        checked[0] += 1;
        if f.add(lam(j - 1, k), lam(j, k - 1)) != r(k) {
            failures.push(IdentityFailure { identity: "first".into(), indices: vec![j, k] });
        }
        checked[1] += 1;
        let lhs = f.sub(lam(j, k - 1), lam(k, j - 1));
        let rhs = f.add(
            f.add(f.mul(f.mul(2, f.sign(k)), lam(j, -1)), f.mul(f.mul(2, f.sign(k + 1)), lam(k, -1))),
            f.mul(f.sign(k + 1), f.mul(f.from_i64(2 * k + 1), f.inv(f.from_i64(k * (k + 1))))),
        );
        if lhs != rhs {
            failures.push(IdentityFailure { identity: "second".into(), indices: vec![j, k] });
        }
    }
    for i in 0..p {
        for j in 0..p {
            for k in 0..p {
                if i + j + k >= p - 1 {
                    continue;
                }
                checked[2] += 1;
                let pos = f.add(f.add(f.mul(n(i, j), lam(i + j, k)), f.mul(n(i, k), lam(j, i + k))), f.mul(n(j + k, i), lam(j, k)));
                let neg = f.add(f.mul(n(j, k), lam(i, j + k)), f.mul(n(i + k, j), lam(i, k)));
                if pos != neg {
                    failures.push(IdentityFailure { identity: "third".into(), indices: vec![i, j, k] });
                }
            }
        }
    }
    let three_halves = f.mul(3, f.inv(2));
    let mut boundary_ok = true;
    let mut partial = 0u32;
    for i in -1..=p - 2 {
        if i >= 1 {
            partial = f.add(partial, f.mul(f.from_i64(i + 2), f.inv(f.from_i64(i * (i + 1)))));
        }
        boundary_ok &= lam(i, -1) == partial;
        boundary_ok &= lam(-1, i) == 0 && lam(0, i) == 0 && lam(1, i) == three_halves;
        for j in -1..=p - 2 {
            if i >= 0 && j >= 0 {
                boundary_ok &= lam(i, j) == f.add(lam(i - 1, j), lam(i, j - 1));
            }
        }
    }
    LambdaReport { p: f.p(), checked, failures, boundary_ok, lambda_top_zero: lam(p - 2, 0) == 0 }
}
