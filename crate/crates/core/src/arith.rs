//! Prime-field scalars, binomial coefficients and the integer structure
//! constants of the Zassenhaus algebra.
//!
//! Binomials follow the convention `binom(n, k) = 0` for `k < 0` or `k > n`,
//! which makes `N_{-1,j} = 1`. Anything quoted "divided by p" is computed with
//! exact big integers and only then reduced.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A prime field `F_p` with `p > 3`, carrying factorial tables for Lucas'
/// theorem. Cheap to clone.
#[derive(Clone)]
pub struct Fp {
    p: u32,
    tables: Arc<Tables>,
}

struct Tables {
    fact: Vec<u32>,
    inv_fact: Vec<u32>,
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
    }
}
impl Eq for Fp {}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Fp {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if p <= 3 {
            return Err(Error::PrimeTooSmall(p as u64));
        }
        // keeps products of two residues inside u64 with room to accumulate
        if p >= 1 << 31 {
            return Err(Error::Precondition(format!("p = {p} too large")));
        }
        let mut fact = vec![1u32; p as usize];
        for i in 1..p as usize {
            fact[i] = ((fact[i - 1] as u64 * i as u64) % p as u64) as u32;
        }
        let mut inv_fact = vec![1u32; p as usize];
        inv_fact[p as usize - 1] = pow_mod(fact[p as usize - 1], p - 2, p);
        for i in (1..p as usize).rev() {
            inv_fact[i - 1] = ((inv_fact[i] as u64 * i as u64) % p as u64) as u32;
        }
        Ok(Fp { p, tables: Arc::new(Tables { fact, inv_fact }) })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        let mut base = a as u64 % self.p as u64;
        let mut e = e;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p as u64;
            }
            base = base * base % self.p as u64;
            e >>= 1;
        }
        acc as u32
    }

    /// Multiplicative inverse. Panics on zero, which is always a caller bug.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        pow_mod(a % self.p, self.p - 2, self.p)
    }

    pub fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    pub fn from_bigint(&self, v: &BigInt) -> u32 {
        let m = BigInt::from(self.p);
        let r = ((v % &m) + &m) % &m;
        r.to_u32().expect("residue fits in u32")
    }

    /// `(-1)^k` as a residue.
    pub fn sign(&self, k: i64) -> u32 {
        if k.rem_euclid(2) == 0 {
            1
        } else {
            self.p - 1
        }
    }

    pub fn scalar(&self, v: u32) -> PrimeScalar {
        PrimeScalar { value: v % self.p, p: self.p }
    }

    /// Small binomial `binom(a, b)` for `0 <= a, b < p`.
    fn small_binom(&self, a: u64, b: u64) -> u32 {
        if b > a {
            return 0;
        }
        let t = &self.tables;
        let r = self.mul(t.fact[a as usize], t.inv_fact[b as usize]);
        self.mul(r, t.inv_fact[(a - b) as usize])
    }

    /// `binom(n, k) mod p` by Lucas' theorem, with the zero convention for
    /// `k < 0`, `k > n` and `n < 0`.
    pub fn binom(&self, n: i64, k: i64) -> u32 {
        if k < 0 || n < 0 || k > n {
            return 0;
        }
        let p = self.p as u64;
        let (mut n, mut k) = (n as u64, k as u64);
        let mut acc = 1u32;
        while k > 0 || n > 0 {
            let (nd, kd) = (n % p, k % p);
            if kd > nd {
                return 0;
            }
            acc = self.mul(acc, self.small_binom(nd, kd));
            n /= p;
            k /= p;
        }
        acc
    }

    /// `N_ij mod p` with `N_ij = binom(i+j+1, j) - binom(i+j+1, i)`.
    pub fn structure_constant(&self, i: i64, j: i64) -> u32 {
        let n = i + j + 1;
        self.sub(self.binom(n, j), self.binom(n, i))
    }
}

fn pow_mod(a: u32, e: u32, p: u32) -> u32 {
    let mut base = a as u64 % p as u64;
    let mut e = e;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// An element of `F_p` that knows its characteristic.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeScalar {
    value: u32,
    p: u32,
}

impl PrimeScalar {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn p(self) -> u32 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Option<PrimeScalar> {
        if self.value == 0 {
            None
        } else {
            Some(PrimeScalar { value: pow_mod(self.value, self.p - 2, self.p), p: self.p })
        }
    }

    fn check(self, other: PrimeScalar) {
        assert_eq!(self.p, other.p, "mixing scalars of different characteristic");
    }
}

impl fmt::Debug for PrimeScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

impl fmt::Display for PrimeScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for PrimeScalar {
    type Output = PrimeScalar;
    fn add(self, rhs: PrimeScalar) -> PrimeScalar {
        self.check(rhs);
        PrimeScalar { value: ((self.value as u64 + rhs.value as u64) % self.p as u64) as u32, p: self.p }
    }
}

impl Sub for PrimeScalar {
    type Output = PrimeScalar;
    fn sub(self, rhs: PrimeScalar) -> PrimeScalar {
        self + (-rhs)
    }
}

impl Neg for PrimeScalar {
    type Output = PrimeScalar;
    fn neg(self) -> PrimeScalar {
        PrimeScalar { value: (self.p - self.value) % self.p, p: self.p }
    }
}

impl Mul for PrimeScalar {
    type Output = PrimeScalar;
    fn mul(self, rhs: PrimeScalar) -> PrimeScalar {
        self.check(rhs);
        PrimeScalar { value: ((self.value as u64 * rhs.value as u64) % self.p as u64) as u32, p: self.p }
    }
}

impl Div for PrimeScalar {
    type Output = PrimeScalar;
    fn div(self, rhs: PrimeScalar) -> PrimeScalar {
        self * rhs.inv().expect("division by zero in F_p")
    }
}

/// Exact `binom(n, k)` with the zero convention.
pub fn binom_big(n: i64, k: i64) -> BigUint {
    if k < 0 || n < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for t in 0..k {
        acc *= n - t;
        acc /= t + 1;
    }
    acc
}

/// Exact integer `N_ij`.
pub fn structure_constant_int(i: i64, j: i64) -> BigInt {
    let n = i + j + 1;
    BigInt::from(binom_big(n, j)) - BigInt::from(binom_big(n, i))
}

/// `binom(i, j) mod p` through Lucas' theorem.
pub fn binom_mod_p(i: i64, j: i64, p: u32) -> Result<PrimeScalar> {
    let f = Fp::new(p)?;
    if i < 0 {
        return Err(Error::Precondition(format!("binom_mod_p expects i >= 0, got {i}")));
    }
    Ok(f.scalar(f.binom(i, j)))
}

/// `N_ij mod p`. Whether `e_{i+j}` exists is the caller's business; see
/// [`crate::liealg::make_w1`] for the truncated bracket.
pub fn structure_constant_n(i: i64, j: i64, p: u32) -> Result<PrimeScalar> {
    let f = Fp::new(p)?;
    Ok(f.scalar(f.structure_constant(i, j)))
}

/// `(N_ij / p) mod p`, computed on the exact integer.
pub fn n_div_p(i: i64, j: i64, p: u32) -> Result<PrimeScalar> {
    let f = Fp::new(p)?;
    n_div_p_in(&f, i, j)
}

pub fn n_div_p_in(f: &Fp, i: i64, j: i64) -> Result<PrimeScalar> {
    let value = structure_constant_int(i, j);
    let pb = BigInt::from(f.p());
    if !(&value % &pb).is_zero() {
        return Err(Error::NotDivisible { i, j, value, p: f.p() });
    }
    Ok(f.scalar(f.from_bigint(&(value / pb))))
}

/// The coefficient
/// `lambda_ij = sum_{k=1}^{i} binom(i+j+1-k, j+1) (k+2) / (k(k+1))`
/// for `-1 <= i, j <= p-2`.
pub fn lambda_coeff(i: i64, j: i64, p: u32) -> Result<PrimeScalar> {
    let f = Fp::new(p)?;
    lambda_in(&f, i, j)
}

pub fn lambda_in(f: &Fp, i: i64, j: i64) -> Result<PrimeScalar> {
    let hi = f.p() as i64 - 2;
    for idx in [i, j] {
        if idx < -1 || idx > hi {
            return Err(Error::IndexOutOfRange { index: idx, lo: -1, hi });
        }
    }
    let mut acc = 0u32;
    for k in 1..=i {
        let den = f.from_i64(k * (k + 1));
        assert!(den != 0, "k(k+1) must be a unit for k <= p-2");
        let b = f.from_bigint(&BigInt::from(binom_big(i + j + 1 - k, j + 1)));
        let term = f.mul(f.mul(b, f.from_i64(k + 2)), f.inv(den));
        acc = f.add(acc, term);
    }
    Ok(f.scalar(acc))
}

/// Square table of `lambda_ij`, indexed by `(i + 1, j + 1)`.
pub fn lambda_table(f: &Fp) -> Vec<Vec<u32>> {
    let n = f.p() as i64;
    (-1..n - 1).map(|i| (-1..n - 1).map(|j| lambda_in(f, i, j).expect("in range").value()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> Fp {
        Fp::new(p).unwrap()
    }

    #[test]
    fn rejects_bad_characteristic() {
        assert!(matches!(Fp::new(9), Err(Error::NotPrime(9))));
        assert!(matches!(Fp::new(3), Err(Error::PrimeTooSmall(3))));
        assert!(matches!(Fp::new(2), Err(Error::PrimeTooSmall(2))));
        assert!(Fp::new(5).is_ok());
        assert!(binom_mod_p(4, 2, 12).is_err());
    }

    #[test]
    fn scalar_field_laws() {
        let k = f(7);
        for a in 0..7 {
            let x = k.scalar(a);
            assert!((x + (-x)).is_zero());
            if a != 0 {
                assert_eq!((x * x.inv().unwrap()).value(), 1);
                assert_eq!((x / x).value(), 1);
            }
        }
    }

    #[test]
    fn binomial_examples() {
        // 21 mod 5 = 1; Lucas digits binom(1,0) * binom(2,2)
        assert_eq!(binom_mod_p(7, 2, 5).unwrap().value(), 1);
        for j in 0..40 {
            assert_eq!(binom_mod_p(j, j, 5).unwrap().value(), 1);
        }
        assert_eq!(binom_mod_p(4, 6, 5).unwrap().value(), 0);
        assert_eq!(binom_mod_p(4, -1, 5).unwrap().value(), 0);
    }

    #[test]
    fn lucas_agrees_with_big_integers() {
        for p in [5u32, 7, 11] {
            let k = f(p);
            for n in 0..=200i64 {
                for j in 0..=n {
                    let big = BigInt::from(binom_big(n, j));
                    assert_eq!(k.binom(n, j), k.from_bigint(&big), "binom({n},{j}) mod {p}");
                }
            }
        }
    }

    #[test]
    fn structure_constant_examples() {
        for p in [5u32, 7] {
            for j in -1..30 {
                assert_eq!(structure_constant_n(0, j, p).unwrap().value() as i64, j.rem_euclid(p as i64));
                assert!(structure_constant_n(j, j, p).unwrap().is_zero());
            }
        }
        // 20 - 15 = 5
        assert!(structure_constant_n(2, 3, 5).unwrap().is_zero());
        assert_eq!(structure_constant_int(2, 3), BigInt::from(5));
        assert_eq!(structure_constant_n(-1, 4, 5).unwrap().value(), 1);
    }

    #[test]
    fn n_is_antisymmetric() {
        for i in -1..30 {
            for j in -1..30 {
                assert_eq!(structure_constant_int(i, j), -structure_constant_int(j, i));
            }
        }
    }

    #[test]
    fn n_recurrence() {
        for p in [5u32, 7] {
            let k = f(p);
            let top = (p * p) as i64 - 2;
            for i in 0..=top {
                for j in 0..=top {
                    let lhs = k.structure_constant(i, j);
                    let rhs = k.add(k.structure_constant(i - 1, j), k.structure_constant(i, j - 1));
                    assert_eq!(lhs, rhs, "N_{i},{j} at p={p}");
                }
            }
        }
    }

    #[test]
    fn n_vanishes_in_upper_triangle() {
        for p in [5u32, 7, 11] {
            let k = f(p);
            let top = p as i64 - 2;
            for i in -1..=top {
                for j in -1..=top {
                    if i + j >= top + 1 {
                        assert_eq!(k.structure_constant(i, j), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn n_nonzero_on_the_top_line() {
        // at i + j = p - 2 the bracket lands on e_{p-2} and need not vanish
        let k = f(5);
        assert_eq!(k.structure_constant(0, 3), 3);
        assert_eq!(k.structure_constant(-1, 3), 1);
    }

    #[test]
    fn n_periodicity() {
        let p = 5u32;
        let k = f(p);
        let pi = p as i64;
        for i in -1..=pi - 2 {
            let from = if i == -1 { pi } else { pi - 1 };
            for j in from..=pi * pi - 2 {
                assert_eq!(k.structure_constant(i, j - pi), k.structure_constant(i, j), "i={i} j={j}");
            }
        }
        // the shift breaks where j - p leaves the basis or hits [e_-1, e_-1]
        assert_ne!(k.structure_constant(-1, -1), k.structure_constant(-1, pi - 1));
        assert_ne!(k.structure_constant(0, -2), k.structure_constant(0, pi - 2));
    }

    #[test]
    fn binomial_sign_identity() {
        for p in [5u32, 7] {
            let k = f(p);
            let pi = p as i64;
            for i in 1..=pi {
                for j in i..=pi {
                    let lhs = k.binom(pi - i, pi - j);
                    let rhs = k.mul(k.sign(j - i), k.binom(j - 1, i - 1));
                    assert_eq!(lhs, rhs, "i={i} j={j} p={p}");
                }
            }
        }
    }

    #[test]
    fn n_div_p_examples() {
        // N_{1,3} = 10 - 5 = 5, N_{2,3} = 5
        assert_eq!(n_div_p(1, 3, 5).unwrap().value(), 1);
        assert_eq!(n_div_p(2, 3, 5).unwrap().value(), 1);
        for i in -1..12 {
            assert!(n_div_p(i, i, 5).unwrap().is_zero());
        }
        match n_div_p(0, 1, 5) {
            Err(Error::NotDivisible { i: 0, j: 1, value, .. }) => assert_eq!(value, BigInt::from(1)),
            other => panic!("expected divisibility error, got {other:?}"),
        }
    }

    #[test]
    fn lambda_examples() {
        for j in -1..=3 {
            assert!(lambda_coeff(-1, j, 5).unwrap().is_zero());
            assert!(lambda_coeff(0, j, 5).unwrap().is_zero());
            // 3/2 = 3 * 3 = 4 mod 5
            assert_eq!(lambda_coeff(1, j, 5).unwrap().value(), 4);
        }
        // 9/2 + 4/3 + 5/12 = 35/6 + 5/12, and both vanish mod 5
        assert!(lambda_coeff(3, 0, 5).unwrap().is_zero());
        assert!(matches!(lambda_coeff(4, 0, 5), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(lambda_coeff(0, -2, 5), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn lambda_recurrence_and_boundary() {
        for p in [5u32, 7] {
            let k = f(p);
            let t = lambda_table(&k);
            let at = |i: i64, j: i64| t[(i + 1) as usize][(j + 1) as usize];
            let top = p as i64 - 2;
            for i in 0..=top {
                for j in 0..=top {
                    assert_eq!(at(i, j), k.add(at(i - 1, j), at(i, j - 1)), "lambda recurrence {i},{j}");
                }
            }
            for i in 1..=top {
                let j = p as i64 - 1 - i;
                if j < 1 {
                    continue;
                }
                let v = k.mul(k.mul(k.sign(j), k.from_i64(2 * j + 1)), k.inv(k.from_i64(j * (j + 1))));
                assert_eq!(at(i, j), v, "boundary {i},{j}");
            }
            let s: u32 = (1..=top).fold(0, |acc, kk| k.add(acc, k.mul(k.from_i64(kk + 2), k.inv(k.from_i64(kk * (kk + 1))))));
            assert_eq!(at(top, -1), s);
            assert_eq!(at(top, 0), 0);
        }
    }
}
