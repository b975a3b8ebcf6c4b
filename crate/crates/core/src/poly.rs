//! Exact multilinear polynomials over `{0,1}^n` or `{-1,1}^n`.
//!
//! Monomials are stored as variable bitmasks (bit `i` = variable `i+1`).
//! In the ±1 basis, the cube point for index `x` has `y_i = (-1)^{x_i}`.

use crate::boolfn::BooleanFunction;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeMap;

pub type Q = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    #[serde(rename = "01")]
    ZeroOne,
    #[serde(rename = "pm")]
    PlusMinus,
}

impl Basis {
    pub fn tag(self) -> &'static str {
        match self {
            Basis::ZeroOne => "01",
            Basis::PlusMinus => "pm",
        }
    }
}

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

/// Compares monomial masks by size, then lexicographically by sorted variable list.
pub fn monomial_cmp(a: u32, b: u32) -> Ordering {
    a.count_ones().cmp(&b.count_ones()).then_with(|| {
        // the first differing variable decides: the set containing it is smaller
        let diff = a ^ b;
        if diff == 0 {
            Ordering::Equal
        } else if a & (diff & diff.wrapping_neg()) != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    })
}

/// All monomials of degree at most `d` in `n` variables, ordered by (size, lex).
pub fn monomials_upto(n: usize, d: usize) -> Vec<u32> {
    let mut out = vec![];
    for k in 0..=d.min(n) {
        let mut comb: Vec<usize> = (0..k).collect();
        loop {
            out.push(comb.iter().fold(0u32, |m, &i| m | 1 << i));
            let Some(i) = (0..k).rev().find(|&i| comb[i] < n - k + i) else { break };
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
        }
    }
    out
}

/// In-place subset-sum transform: `a[x] ← Σ_{y ⊆ x} a[y]`.
pub fn zeta_i128(a: &mut [i128]) -> bool {
    let size = a.len();
    let mut bit = 1;
    while bit < size {
        for x in 0..size {
            if x & bit != 0 {
                match a[x].checked_add(a[x ^ bit]) {
                    Some(v) => a[x] = v,
                    None => return false,
                }
            }
        }
        bit <<= 1;
    }
    true
}

pub fn zeta_big(a: &mut [BigInt]) {
    let size = a.len();
    let mut bit = 1;
    while bit < size {
        for x in 0..size {
            if x & bit != 0 && !a[x ^ bit].is_zero() {
                let v = a[x ^ bit].clone();
                a[x] += v;
            }
        }
        bit <<= 1;
    }
}

/// In-place Möbius transform, inverse of [`zeta_big`].
pub fn mobius_big(a: &mut [BigInt]) {
    let size = a.len();
    let mut bit = 1;
    while bit < size {
        for x in 0..size {
            if x & bit != 0 && !a[x ^ bit].is_zero() {
                let v = a[x ^ bit].clone();
                a[x] -= v;
            }
        }
        bit <<= 1;
    }
}

/// Unnormalised Walsh–Hadamard transform; applying it twice multiplies by `2^n`.
pub fn walsh_big(a: &mut [BigInt]) {
    let size = a.len();
    let mut bit = 1;
    while bit < size {
        for x in 0..size {
            if x & bit == 0 {
                let (u, v) = (a[x].clone(), a[x | bit].clone());
                a[x] = &u + &v;
                a[x | bit] = u - v;
            }
        }
        bit <<= 1;
    }
}

pub fn walsh_i128(a: &mut [i128]) -> bool {
    let size = a.len();
    let mut bit = 1;
    while bit < size {
        for x in 0..size {
            if x & bit == 0 {
                let (u, v) = (a[x], a[x | bit]);
                match (u.checked_add(v), u.checked_sub(v)) {
                    (Some(s), Some(d)) => {
                        a[x] = s;
                        a[x | bit] = d;
                    }
                    _ => return false,
                }
            }
        }
        bit <<= 1;
    }
    true
}

/// Values of a polynomial with integer coefficients (dense by mask) at every cube point.
pub fn cube_values_int(basis: Basis, coeffs: &[BigInt]) -> Vec<BigInt> {
    let small: Option<Vec<i128>> = coeffs
        .iter()
        .map(|c| c.to_i128().filter(|v| v.unsigned_abs() < 1u128 << 100))
        .collect();
    if let Some(mut a) = small {
        let ok = match basis {
            Basis::ZeroOne => zeta_i128(&mut a),
            Basis::PlusMinus => walsh_i128(&mut a),
        };
        if ok {
            return a.into_iter().map(BigInt::from).collect();
        }
    }
    let mut a = coeffs.to_vec();
    match basis {
        Basis::ZeroOne => zeta_big(&mut a),
        Basis::PlusMinus => walsh_big(&mut a),
    }
    a
}

fn binomial_big(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// A multilinear polynomial with exact rational coefficients; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultilinearPolynomial {
    n: usize,
    basis: Basis,
    coeffs: BTreeMap<u32, Q>,
}

impl MultilinearPolynomial {
    pub fn zero(n: usize, basis: Basis) -> Self {
        MultilinearPolynomial { n, basis, coeffs: BTreeMap::new() }
    }

    pub fn constant(n: usize, basis: Basis, c: Q) -> Self {
        Self::from_terms(n, basis, [(0, c)])
    }

    /// Sums the given terms, dropping zeros.
    pub fn from_terms(n: usize, basis: Basis, terms: impl IntoIterator<Item = (u32, Q)>) -> Self {
        let mut p = Self::zero(n, basis);
        for (m, c) in terms {
            assert!(n >= 32 || m >> n == 0, "monomial outside the variable range");
            p.add_term(m, c);
        }
        p
    }

    /// The single variable `x_{i+1}`.
    pub fn variable(n: usize, basis: Basis, i: usize) -> Self {
        Self::from_terms(n, basis, [(1u32 << i, Q::one())])
    }

    /// `Σ_{i∈vars} x_i + c` in the given basis.
    pub fn linear_sum(n: usize, basis: Basis, vars: impl IntoIterator<Item = usize>, c: Q) -> Self {
        Self::from_terms(n, basis, vars.into_iter().map(|i| (1u32 << i, Q::one())).chain([(0, c)]))
    }

    fn add_term(&mut self, m: u32, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(m).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&m);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeff(&self, m: u32) -> Q {
        self.coeffs.get(&m).cloned().unwrap_or_else(Q::zero)
    }

    /// Nonzero terms in (size, lex) order.
    pub fn terms(&self) -> Vec<(u32, &Q)> {
        let mut t: Vec<(u32, &Q)> = self.coeffs.iter().map(|(&m, c)| (m, c)).collect();
        t.sort_by(|a, b| monomial_cmp(a.0, b.0));
        t
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest monomial size; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.keys().map(|m| m.count_ones() as usize).max().unwrap_or(0)
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.n, other.n, "polynomials on different variable counts");
        assert_eq!(self.basis, other.basis, "polynomials in different bases");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut r = self.clone();
        for (&m, c) in &other.coeffs {
            r.add_term(m, c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.n, self.basis);
        }
        MultilinearPolynomial {
            n: self.n,
            basis: self.basis,
            coeffs: self.coeffs.iter().map(|(&m, v)| (m, v * c)).collect(),
        }
    }

    /// Product reduced to multilinear form (`x² = x` over 0/1, `x² = 1` over ±1).
    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut r = Self::zero(self.n, self.basis);
        for (&a, ca) in &self.coeffs {
            for (&b, cb) in &other.coeffs {
                let m = match self.basis {
                    Basis::ZeroOne => a | b,
                    Basis::PlusMinus => a ^ b,
                };
                r.add_term(m, ca * cb);
            }
        }
        r
    }

    /// Evaluates at an arbitrary rational point.
    pub fn eval(&self, x: &[Q]) -> Result<Q> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: x.len() });
        }
        let mut acc = Q::zero();
        for (&m, c) in &self.coeffs {
            let mut t = c.clone();
            for (i, xi) in x.iter().enumerate() {
                if m >> i & 1 == 1 {
                    t *= xi;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Evaluates at the cube point with index `x`.
    pub fn eval_index(&self, x: usize) -> Q {
        let x = x as u32;
        let mut acc = Q::zero();
        for (&m, c) in &self.coeffs {
            match self.basis {
                Basis::ZeroOne => {
                    if m & x == m {
                        acc += c;
                    }
                }
                Basis::PlusMinus => {
                    if (m & x).count_ones() % 2 == 0 {
                        acc += c;
                    } else {
                        acc -= c;
                    }
                }
            }
        }
        acc
    }

    /// Least common denominator of the coefficients.
    pub fn common_denominator(&self) -> BigInt {
        self.coeffs.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// `(values, den)` with `p(x) = values[x] / den` for every cube index `x`.
    pub fn evaluate_all_scaled(&self) -> (Vec<BigInt>, BigInt) {
        let den = self.common_denominator();
        let mut dense = vec![BigInt::zero(); 1 << self.n];
        for (&m, c) in &self.coeffs {
            dense[m as usize] = c.numer() * (&den / c.denom());
        }
        (cube_values_int(self.basis, &dense), den)
    }

    pub fn evaluate_all(&self) -> Vec<Q> {
        let (vals, den) = self.evaluate_all_scaled();
        vals.into_iter().map(|v| Q::new(v, den.clone())).collect()
    }

    /// The unique multilinear polynomial taking `values[x]` at cube index `x`.
    pub fn interpolate(values: &[Q], basis: Basis) -> Result<Self> {
        let size = values.len();
        if !size.is_power_of_two() {
            return Err(Error::BadParams(format!("table length {size} is not a power of two")));
        }
        let n = size.trailing_zeros() as usize;
        let den = values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let mut a: Vec<BigInt> = values.iter().map(|v| v.numer() * (&den / v.denom())).collect();
        let scale = match basis {
            Basis::ZeroOne => {
                mobius_big(&mut a);
                den
            }
            Basis::PlusMinus => {
                walsh_big(&mut a);
                den << n
            }
        };
        Ok(Self::from_terms(
            n,
            basis,
            a.into_iter().enumerate().map(|(m, c)| (m as u32, Q::new(c, scale.clone()))),
        ))
    }

    /// Interpolant of a total function: 0/1-valued in the 0/1 basis, ±1-valued
    /// (output 1 ↦ −1) in the ±1 basis.
    pub fn from_function(f: &BooleanFunction, basis: Basis) -> Result<Self> {
        f.require_total("interpolation")?;
        let vals: Vec<Q> = (0..f.size())
            .map(|x| match (basis, f.value(x)) {
                (Basis::ZeroOne, b) => q(b as i64),
                (Basis::PlusMinus, b) => q(if b { -1 } else { 1 }),
            })
            .collect();
        Self::interpolate(&vals, basis)
    }

    /// Same function under the substitution `x = (1 − y)/2` or its inverse.
    pub fn to_basis(&self, target: Basis) -> Self {
        if target == self.basis {
            return self.clone();
        }
        let expansion: u64 = self.coeffs.keys().map(|m| 1u64 << m.count_ones()).sum();
        if self.n <= 20 && expansion > (self.n as u64 + 1) << self.n {
            return Self::interpolate(&self.evaluate_all(), target).expect("power-of-two table");
        }
        let mut r = Self::zero(self.n, target);
        for (&m, c) in &self.coeffs {
            // x_S = 2^{-|S|} Σ_{T⊆S} (−1)^{|T|} y_T and y_S = Σ_{T⊆S} (−2)^{|T|} x_T
            let base = match target {
                Basis::PlusMinus => c / Q::from_integer(BigInt::one() << m.count_ones()),
                Basis::ZeroOne => c.clone(),
            };
            let mut t = m;
            loop {
                let k = t.count_ones();
                let mut v = base.clone();
                if target == Basis::ZeroOne {
                    v *= Q::from_integer(BigInt::one() << k);
                }
                if k % 2 == 1 {
                    v = -v;
                }
                r.add_term(t, v);
                if t == 0 {
                    break;
                }
                t = (t - 1) & m;
            }
        }
        r
    }

    /// Slice averages `P(k)` for `k = 0..n` together with their interpolating univariate polynomial.
    pub fn symmetrize(&self) -> Symmetrized {
        let p = self.to_basis(Basis::ZeroOne);
        let n = self.n;
        let values: Vec<Q> = (0..=n)
            .map(|k| {
                let mut acc = Q::zero();
                for (&m, c) in &p.coeffs {
                    let s = m.count_ones() as usize;
                    acc += c * Q::new(binomial_big(k, s), binomial_big(n, s));
                }
                acc
            })
            .collect();
        let points: Vec<(Q, Q)> = values.iter().enumerate().map(|(k, v)| (q(k as i64), v.clone())).collect();
        Symmetrized { poly: UnivariatePolynomial::interpolate(&points), values }
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            n: self.n,
            basis: self.basis,
            terms: self
                .terms()
                .into_iter()
                .map(|(m, c)| TermJson {
                    vars: (0..self.n).filter(|i| m >> i & 1 == 1).map(|i| i + 1).collect(),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<Self> {
        let mut p = Self::zero(j.n, j.basis);
        for t in &j.terms {
            let mut m = 0u32;
            for &v in &t.vars {
                if v == 0 || v > j.n || m >> (v - 1) & 1 == 1 {
                    return Err(Error::Parse(format!("bad variable {v} in polynomial term")));
                }
                m |= 1 << (v - 1);
            }
            let num: BigInt = t.num.parse().map_err(|_| Error::Parse(format!("bad numerator `{}`", t.num)))?;
            let den: BigInt = t.den.parse().map_err(|_| Error::Parse(format!("bad denominator `{}`", t.den)))?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            p.add_term(m, Q::new(num, den));
        }
        Ok(p)
    }
}

/// Polynomial JSON: variables are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub n: usize,
    pub basis: Basis,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub vars: Vec<usize>,
    pub num: String,
    pub den: String,
}

/// `f̂(S) = 2^{-n} Σ_x f(x) χ_S(x)` with `f` read as ±1-valued.
pub fn fourier_coefficient(f: &BooleanFunction, s: &[usize]) -> Result<Q> {
    f.require_total("fourier_coefficient")?;
    let mut mask = 0usize;
    for &i in s {
        if i >= f.n() {
            return Err(Error::DimensionMismatch { expected: f.n(), got: i + 1 });
        }
        mask |= 1 << i;
    }
    let mut acc: i64 = 0;
    for x in 0..f.size() {
        let sign = ((x & mask).count_ones() + f.value(x) as u32) % 2;
        acc += if sign == 0 { 1 } else { -1 };
    }
    Ok(Q::new(acc.into(), BigInt::one() << f.n()))
}

/// Output of [`MultilinearPolynomial::symmetrize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Symmetrized {
    /// `P(0), …, P(n)`.
    pub values: Vec<Q>,
    pub poly: UnivariatePolynomial,
}

/// Dense univariate polynomial, coefficients by increasing power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariatePolynomial {
    coeffs: Vec<Q>,
}

impl UnivariatePolynomial {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UnivariatePolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    /// Lagrange interpolation through points with distinct abscissae.
    pub fn interpolate(points: &[(Q, Q)]) -> Self {
        let mut result = vec![Q::zero(); points.len()];
        for (i, (xi, yi)) in points.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            // basis polynomial Π_{j≠i} (x − x_j)/(x_i − x_j)
            let mut basis = vec![Q::one()];
            let mut denom = Q::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                let mut next = vec![Q::zero(); basis.len() + 1];
                for (k, c) in basis.iter().enumerate() {
                    next[k + 1] += c;
                    next[k] -= c * xj;
                }
                basis = next;
                denom *= xi - xj;
            }
            let scale = yi / denom;
            for (k, c) in basis.into_iter().enumerate() {
                result[k] += c * &scale;
            }
        }
        Self::new(result)
    }
}

/// Renders a rational as `num/den` (or just `num` for integers).
pub fn fmt_q(v: &Q) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Nonzero sign test helper used when rationals are compared against zero.
pub fn sign(v: &Q) -> i32 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}
