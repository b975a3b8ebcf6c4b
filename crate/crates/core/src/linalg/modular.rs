//! Arithmetic modulo word-size primes, incremental echelon forms, CRT and
//! rational reconstruction.
//!
//! Nothing computed here is trusted on its own: callers use modular results
//! to pick candidates and then certify them with exact integer arithmetic.

use crate::poly::Q;
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::sync::OnceLock;

/// A prime below 2^31 with Barrett reduction.
#[derive(Clone, Copy, Debug)]
pub struct Zp {
    pub p: u64,
    m: u64,
}

impl Zp {
    pub fn new(p: u64) -> Self {
        assert!(p > 2 && p < 1 << 31);
        Zp { p, m: (u128::from(u64::MAX) / u128::from(p)) as u64 }
    }

    /// `x mod p` for `x < 2^62`.
    #[inline(always)]
    pub fn reduce(&self, x: u64) -> u64 {
        let q = ((u128::from(x) * u128::from(self.m)) >> 64) as u64;
        let r = x - q * self.p;
        if r >= self.p {
            r - self.p
        } else {
            r
        }
    }

    #[inline(always)]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
    }

    #[inline(always)]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline(always)]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline(always)]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    pub fn from_bigint(&self, v: &BigInt) -> u64 {
        let r = (v % BigInt::from(self.p)).to_u64_digits();
        let mag = match r.1.as_slice() {
            [] => 0,
            [d] => *d,
            _ => unreachable!(),
        };
        if r.0 == Sign::Minus {
            self.neg(mag)
        } else {
            mag
        }
    }

    pub fn from_i128(&self, v: i128) -> u64 {
        let r = v.rem_euclid(self.p as i128);
        r as u64
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The `i`-th prime below 2^31, counting down from 2^31 − 1.
pub fn prime(i: usize) -> u64 {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    let list = PRIMES.get_or_init(|| {
        let mut v = vec![];
        let mut c = (1u64 << 31) - 1;
        while v.len() < 1024 {
            if is_prime(c) {
                v.push(c);
            }
            c -= 2;
        }
        v
    });
    list[i]
}

/// Incremental reduced echelon form modulo a prime.
///
/// Each stored row has a 1 at its pivot column, zeros at every other pivot
/// column, and zeros at free columns left of its pivot, so the pivot set is
/// always the lexicographically first column basis of the inserted rows.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub zp: Zp,
    cols: usize,
    rows: Vec<Vec<u64>>,
    pivot_row: Vec<Option<usize>>,
    pivots: Vec<usize>,
    free: Vec<usize>,
    scratch: Vec<u64>,
}

impl Echelon {
    pub fn new(zp: Zp, cols: usize) -> Self {
        Echelon {
            zp,
            cols,
            rows: vec![],
            pivot_row: vec![None; cols],
            pivots: vec![],
            free: (0..cols).collect(),
            scratch: vec![0; cols],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// Free (non-pivot) columns in increasing order.
    pub fn free_cols(&self) -> &[usize] {
        &self.free
    }

    /// Pivot columns sorted increasingly.
    pub fn sorted_pivots(&self) -> Vec<usize> {
        let mut p = self.pivots.clone();
        p.sort_unstable();
        p
    }

    /// Entry of the reduced row whose pivot is `pivot_col`, at column `j`.
    pub fn entry(&self, pivot_col: usize, j: usize) -> u64 {
        self.rows[self.pivot_row[pivot_col].expect("pivot column")][j]
    }

    /// Inserts a row given by its nonzero entries (values already reduced mod p).
    /// Returns whether it was independent of the rows inserted before.
    pub fn insert(&mut self, entries: &[(usize, u64)]) -> bool {
        let zp = self.zp;
        let mut r = std::mem::take(&mut self.scratch);
        r.iter_mut().for_each(|v| *v = 0);
        for &(c, v) in entries {
            if v == 0 {
                continue;
            }
            match self.pivot_row[c] {
                None => r[c] = zp.add(r[c], v),
                Some(i) => {
                    let nv = zp.neg(v);
                    let row = &self.rows[i];
                    for &j in &self.free {
                        if row[j] != 0 {
                            r[j] = zp.reduce(r[j] + nv * row[j]);
                        }
                    }
                }
            }
        }
        let Some(pos) = self.free.iter().position(|&j| r[j] != 0) else {
            self.scratch = r;
            return false;
        };
        let q = self.free[pos];
        self.free.remove(pos);
        let inv = zp.inv(r[q]);
        let mut row = vec![0u64; self.cols];
        row[q] = 1;
        for &j in &self.free {
            if r[j] != 0 {
                row[j] = zp.mul(r[j], inv);
            }
        }
        let nz: Vec<usize> = self.free.iter().copied().filter(|&j| row[j] != 0).collect();
        for other in &mut self.rows {
            let f = other[q];
            if f == 0 {
                continue;
            }
            let nf = zp.neg(f);
            for &j in &nz {
                other[j] = zp.reduce(other[j] + nf * row[j]);
            }
            other[q] = 0;
        }
        self.pivot_row[q] = Some(self.rows.len());
        self.pivots.push(q);
        self.rows.push(row);
        self.scratch = r;
        true
    }

    /// A kernel vector `Σ_j r_j v_j` over the free columns with the given weights.
    pub fn kernel_combination(&self, weights: &[u64]) -> Vec<u64> {
        assert_eq!(weights.len(), self.free.len());
        let zp = self.zp;
        let mut w = vec![0u64; self.cols];
        for (k, &j) in self.free.iter().enumerate() {
            w[j] = weights[k];
        }
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc = 0u64;
            for (k, &j) in self.free.iter().enumerate() {
                if row[j] != 0 && weights[k] != 0 {
                    acc = zp.reduce(acc + row[j] * weights[k]);
                }
            }
            w[self.pivots[i]] = zp.neg(acc);
        }
        w
    }
}

/// Chinese remaindering of residues accumulated prime by prime.
#[derive(Clone, Debug)]
pub struct CrtAccumulator {
    modulus: BigInt,
    values: Vec<BigInt>,
}

impl CrtAccumulator {
    pub fn new(residues: &[u64], p: u64) -> Self {
        CrtAccumulator { modulus: BigInt::from(p), values: residues.iter().map(|&r| BigInt::from(r)).collect() }
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn add_prime(&mut self, residues: &[u64], p: u64) {
        assert_eq!(residues.len(), self.values.len());
        let zp = Zp::new(p);
        let m_mod_p = zp.from_bigint(&self.modulus);
        let m_inv = zp.inv(m_mod_p);
        for (v, &r) in self.values.iter_mut().zip(residues) {
            let cur = zp.from_bigint(v);
            let t = zp.mul(zp.sub(r, cur), m_inv);
            if t != 0 {
                *v += &self.modulus * BigInt::from(t);
            }
        }
        self.modulus *= BigInt::from(p);
    }

    /// Reconstructs every entry; `None` if any entry has no small enough fraction.
    pub fn reconstruct(&self) -> Option<Vec<Q>> {
        self.values.iter().map(|v| rational_reconstruct(v, &self.modulus)).collect()
    }
}

/// Finds `a/b ≡ v (mod m)` with `|a|, b ≤ √(m/2)`, if one exists.
pub fn rational_reconstruct(v: &BigInt, m: &BigInt) -> Option<Q> {
    let bound = (m >> 1u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), v.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let (q, r) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let s = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s);
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(Q::new(r1, s1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::RationalMatrix;
    use crate::poly::q_frac;
    use proptest::prelude::*;

    #[test]
    fn barrett_matches_remainder() {
        let zp = Zp::new(prime(0));
        for x in [0u64, 1, zp.p - 1, zp.p, zp.p + 1, (zp.p - 1) * (zp.p - 1), u64::MAX >> 2] {
            assert_eq!(zp.reduce(x), x % zp.p);
        }
        assert_eq!(zp.mul(zp.inv(12345), 12345), 1);
        assert_eq!(prime(0), 2147483647);
        assert!(prime(1) < prime(0) && is_prime(prime(1)));
    }

    #[test]
    fn reconstruction() {
        let m = BigInt::from(prime(0)) * BigInt::from(prime(1));
        for (a, b) in [(3i64, 7i64), (-22, 5), (0, 1), (123456, 1), (-1, 999)] {
            let zp = |p: u64| {
                let z = Zp::new(p);
                z.mul(z.from_i128(a as i128), z.inv(z.from_i128(b as i128)))
            };
            let mut acc = CrtAccumulator::new(&[zp(prime(0))], prime(0));
            acc.add_prime(&[zp(prime(1))], prime(1));
            assert_eq!(acc.modulus(), &m);
            assert_eq!(acc.reconstruct().unwrap(), vec![q_frac(a, b)]);
        }
    }

    proptest! {
        // Dual route: the modular echelon of a small integer matrix has the same
        // rank and pivot columns as exact rational elimination.
        #[test]
        fn echelon_agrees_with_rational_rref(rows in proptest::collection::vec(proptest::collection::vec(-3i64..4, 6), 1..7)) {
            let zp = Zp::new(prime(0));
            let mut e = Echelon::new(zp, 6);
            for r in &rows {
                let entries: Vec<(usize, u64)> = r.iter().enumerate().map(|(j, &v)| (j, zp.from_i128(v as i128))).collect();
                e.insert(&entries);
            }
            let rr = RationalMatrix::from_i64(&rows).unwrap().rref();
            prop_assert_eq!(e.rank(), rr.rank);
            prop_assert_eq!(e.sorted_pivots(), rr.pivots.clone());
            for (i, &pc) in rr.pivots.iter().enumerate() {
                for j in 0..6 {
                    let exact = rr.matrix.get(i, j);
                    let residue = zp.mul(zp.from_bigint(exact.numer()), zp.inv(zp.from_bigint(exact.denom())));
                    prop_assert_eq!(e.entry(pc, j), residue);
                }
            }
            let w = e.kernel_combination(&vec![1; e.free_cols().len()]);
            for r in &rows {
                let dot = r.iter().zip(&w).fold(0u64, |acc, (&a, &b)| zp.add(acc, zp.mul(zp.from_i128(a as i128), b)));
                prop_assert_eq!(dot, 0);
            }
        }
    }
}
