//! Nondeterministic and rational degree with certified witnesses.
//!
//! For each degree `d` we compute an exact basis of the space of multilinear
//! polynomials of degree ≤ `d` vanishing on the zero set `Z = f⁻¹(0) ∩ D`,
//! then test whether the basis jointly avoids zero on `O = f⁻¹(1) ∩ D`.
//!
//! The basis is found modularly and certified exactly:
//! 1. rows (points of `Z`) are selected so that they are independent mod a
//!    prime `p`, hence independent over ℚ. A random kernel vector mod `p`,
//!    evaluated on the whole cube, points at rows still missing;
//! 2. the kernel of the selected rows is recovered over ℚ by CRT and rational
//!    reconstruction of the reduced echelon form, then every vector is checked
//!    to vanish on all of `Z` with exact integer arithmetic. The selected rows
//!    bound the kernel dimension from above, so a full set of verified vectors
//!    is the whole kernel.

use crate::boolfn::BooleanFunction;
use crate::error::{Error, Result};
use crate::linalg::modular::{prime, CrtAccumulator, Echelon, Zp};
use crate::linalg::RationalMatrix;
use crate::poly::{cube_values_int, monomials_upto, Basis, MultilinearPolynomial, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Minimal-degree nondeterministic representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NdegResult {
    pub value: usize,
    /// 0/1-basis polynomial vanishing exactly on `f⁻¹(0) ∩ D` within `D`.
    pub witness: MultilinearPolynomial,
}

/// Minimal-degree exact rational representation `p/q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RdegResult {
    pub value: usize,
    pub p: MultilinearPolynomial,
    pub q: MultilinearPolynomial,
    pub ndeg: usize,
    pub ndeg_complement: usize,
}

/// Positive `α` with `Σ_i α_i V[i][y] ≠ 0` for every column `y`.
///
/// Rows that vanish everywhere get `α = 1` and are otherwise ignored. With
/// `b_i`, `B_i` the smallest nonzero and largest absolute entries of row `i`,
/// the first live row gets `α = 1` and later ones `α_i = (1 + Σ_{j<i} α_j B_j) / b_i`,
/// so the last row that is nonzero at `y` dominates the sum there.
pub fn avoidance_combine(v: &[Vec<Q>]) -> Result<Vec<Q>> {
    let cols = v.first().map_or(0, |r| r.len());
    if let Some(r) = v.iter().find(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch { expected: cols, got: r.len() });
    }
    if let Some(y) = (0..cols).find(|&y| v.iter().all(|r| r[y].is_zero())) {
        return Err(Error::UncoveredColumn(y));
    }
    let mut alpha = vec![Q::one(); v.len()];
    let mut acc = Q::zero();
    let mut first = true;
    for (i, row) in v.iter().enumerate() {
        let abs: Vec<Q> = row.iter().filter(|x| !x.is_zero()).map(|x| x.abs()).collect();
        let (Some(b), Some(big)) = (abs.iter().min(), abs.iter().max()) else { continue };
        if !first {
            alpha[i] = (Q::one() + &acc) / b;
        }
        first = false;
        acc += &alpha[i] * big;
    }
    for y in 0..cols {
        let s = v.iter().zip(&alpha).fold(Q::zero(), |s, (r, a)| s + a * &r[y]);
        assert!(!s.is_zero(), "avoidance combination vanished at column {y}");
    }
    Ok(alpha)
}

/// Calls `f` on every submask of `z` with at most `d` bits.
fn for_each_submask_upto(z: u32, d: usize, f: &mut impl FnMut(u32)) {
    fn rec(bits: &[u32], d: usize, acc: u32, f: &mut impl FnMut(u32)) {
        f(acc);
        if d == 0 {
            return;
        }
        for (i, &b) in bits.iter().enumerate() {
            rec(&bits[i + 1..], d - 1, acc | b, f);
        }
    }
    let bits: Vec<u32> = (0..32).filter(|i| z >> i & 1 == 1).map(|i| 1u32 << i).collect();
    rec(&bits, d, 0, f);
}

/// Exact integer basis of the degree-≤d polynomials vanishing on a point set.
struct VanishingSpace {
    n: usize,
    cols: Vec<u32>,
    col_of: Vec<u32>,
    /// Dense over `cols`, primitive integer vectors.
    basis: Vec<Vec<BigInt>>,
}

impl VanishingSpace {
    fn dense_by_mask(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut a = vec![BigInt::zero(); 1 << self.n];
        for (k, &m) in self.cols.iter().enumerate() {
            a[m as usize] = v[k].clone();
        }
        a
    }

    fn values(&self, v: &[BigInt]) -> Vec<BigInt> {
        cube_values_int(Basis::ZeroOne, &self.dense_by_mask(v))
    }

    fn value_at(&self, v: &[BigInt], y: usize, d: usize) -> BigInt {
        let mut acc = BigInt::zero();
        for_each_submask_upto(y as u32, d, &mut |s| {
            acc += &v[self.col_of[s as usize] as usize];
        });
        acc
    }
}

struct Engine<'a> {
    n: usize,
    d: usize,
    zeros: &'a [usize],
    cols: Vec<u32>,
    col_of: Vec<u32>,
}

/// Exact rational vectors → primitive integer vectors.
fn to_primitive(v: &[Q]) -> Vec<BigInt> {
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

impl Engine<'_> {
    fn row(&self, z: usize) -> Vec<(usize, u64)> {
        let mut out = vec![];
        for_each_submask_upto(z as u32, self.d, &mut |s| out.push((self.col_of[s as usize] as usize, 1)));
        out
    }

    fn echelon_of(&self, rows: &[usize], zp: Zp) -> Echelon {
        let mut e = Echelon::new(zp, self.cols.len());
        for &z in rows {
            e.insert(&self.row(z));
        }
        e
    }

    /// Phase 1: points of `Z` whose rows are independent mod the first prime and
    /// (with high probability) span the row space of all of `Z`.
    fn select_rows(&self, rng: &mut ChaCha8Rng) -> (Vec<usize>, Echelon) {
        let zp = Zp::new(prime(0));
        let mut e = Echelon::new(zp, self.cols.len());
        let mut selected = vec![];
        let mut seeds: Vec<usize> = self.zeros.iter().copied().filter(|&z| z.count_ones() as usize <= self.d).collect();
        seeds.sort_by_key(|&z| z.count_ones());
        for z in seeds {
            if e.insert(&self.row(z)) {
                selected.push(z);
            }
        }
        let size = 1usize << self.n;
        let mut vals = vec![0u64; size];
        while !e.is_full() {
            let weights: Vec<u64> = (0..e.free_cols().len()).map(|_| rng.gen_range(1..zp.p)).collect();
            let w = e.kernel_combination(&weights);
            vals.iter_mut().for_each(|v| *v = 0);
            for (k, &m) in self.cols.iter().enumerate() {
                vals[m as usize] = w[k];
            }
            let mut bit = 1;
            while bit < size {
                for x in 0..size {
                    if x & bit != 0 {
                        vals[x] = zp.add(vals[x], vals[x ^ bit]);
                    }
                }
                bit <<= 1;
            }
            let missing: Vec<usize> = self.zeros.iter().copied().filter(|&z| vals[z] != 0).take(256).collect();
            if missing.is_empty() {
                break;
            }
            for z in missing {
                if e.insert(&self.row(z)) {
                    selected.push(z);
                }
            }
        }
        (selected, e)
    }

    /// Checks that `v` vanishes on every zero point; returns the first offending point.
    fn first_nonvanishing(&self, space: &VanishingSpace, v: &[BigInt]) -> Option<usize> {
        let vals = space.values(v);
        self.zeros.iter().copied().find(|&z| !vals[z].is_zero())
    }

    fn empty_space(&self) -> VanishingSpace {
        VanishingSpace { n: self.n, cols: self.cols.clone(), col_of: self.col_of.clone(), basis: vec![] }
    }

    fn kernel(&self) -> VanishingSpace {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ (self.d as u64) << 8 ^ self.n as u64);
        let (selected, first) = self.select_rows(&mut rng);
        if first.is_full() {
            return self.empty_space();
        }
        let mut space = self.empty_space();
        let rank = first.rank();
        let mut pivots = first.sorted_pivots();
        let mut free = first.free_cols().to_vec();
        let residues = |e: &Echelon, pivots: &[usize], free: &[usize]| -> Vec<u64> {
            pivots.iter().flat_map(|&pc| free.iter().map(move |&j| e.entry(pc, j))).collect()
        };
        let mut acc = CrtAccumulator::new(&residues(&first, &pivots, &free), first.zp.p);
        let mut next_prime = 1;
        while next_prime < 400 {
            if let Some(entries) = acc.reconstruct() {
                let k = free.len();
                let vectors: Vec<Vec<BigInt>> = (0..k)
                    .map(|fj| {
                        let mut v = vec![Q::zero(); self.cols.len()];
                        v[free[fj]] = Q::one();
                        for (i, &pc) in pivots.iter().enumerate() {
                            v[pc] = -entries[i * k + fj].clone();
                        }
                        to_primitive(&v)
                    })
                    .collect();
                match vectors.iter().find_map(|v| self.first_nonvanishing(&space, v)) {
                    None => {
                        space.basis = vectors;
                        return space;
                    }
                    // a missing row, not a reconstruction error: certify by exact elimination
                    Some(z) if !selected.contains(&z) => return self.exact_kernel(selected, z),
                    Some(_) => {}
                }
            }
            let zp = Zp::new(prime(next_prime));
            next_prime += 1;
            let e = self.echelon_of(&selected, zp);
            if e.rank() < rank {
                continue;
            }
            let piv = e.sorted_pivots();
            if piv < pivots {
                pivots = piv;
                free = e.free_cols().to_vec();
                acc = CrtAccumulator::new(&residues(&e, &pivots, &free), zp.p);
            } else if piv == pivots {
                acc.add_prime(&residues(&e, &pivots, &free), zp.p);
            }
        }
        self.exact_kernel(selected, usize::MAX)
    }

    /// Rational elimination fallback; `extra` is a zero point known to be missing.
    fn exact_kernel(&self, mut rows: Vec<usize>, extra: usize) -> VanishingSpace {
        if extra != usize::MAX {
            rows.push(extra);
        }
        let mut space = self.empty_space();
        loop {
            let mut m = RationalMatrix::zeros(rows.len(), self.cols.len());
            for (i, &z) in rows.iter().enumerate() {
                for_each_submask_upto(z as u32, self.d, &mut |s| m.set(i, self.col_of[s as usize] as usize, Q::one()));
            }
            let basis: Vec<Vec<BigInt>> = m.nullspace_basis().iter().map(|v| to_primitive(v)).collect();
            match basis.iter().find_map(|v| self.first_nonvanishing(&space, v)) {
                None => {
                    space.basis = basis;
                    return space;
                }
                Some(z) => rows.push(z),
            }
        }
    }
}

/// Degree-≤d polynomials vanishing on `zeros`.
fn vanishing_space(n: usize, d: usize, zeros: &[usize]) -> VanishingSpace {
    let cols = monomials_upto(n, d);
    let mut col_of = vec![u32::MAX; 1 << n];
    for (k, &m) in cols.iter().enumerate() {
        col_of[m as usize] = k as u32;
    }
    Engine { n, d, zeros, cols, col_of }.kernel()
}

/// A witness of degree ≤ d vanishing on the zero set and nowhere on `ones`, if one exists.
fn covering_witness(space: &VanishingSpace, d: usize, ones: &[usize]) -> Option<MultilinearPolynomial> {
    if space.basis.is_empty() {
        return None;
    }
    // Cheap screen: a random combination reduced mod p that is nonzero at y proves y covered.
    let zp = Zp::new(prime(0));
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0de ^ d as u64);
    let size = 1usize << space.n;
    let mut comb = vec![0u64; size];
    for v in &space.basis {
        let w = rng.gen_range(1..zp.p);
        for (k, &m) in space.cols.iter().enumerate() {
            if !v[k].is_zero() {
                comb[m as usize] = zp.add(comb[m as usize], zp.mul(zp.from_bigint(&v[k]), w));
            }
        }
    }
    let mut bit = 1;
    while bit < size {
        for x in 0..size {
            if x & bit != 0 {
                comb[x] = zp.add(comb[x], comb[x ^ bit]);
            }
        }
        bit <<= 1;
    }
    for &y in ones.iter().filter(|&&y| comb[y] == 0) {
        if space.basis.iter().all(|v| space.value_at(v, y, d).is_zero()) {
            return None;
        }
    }
    // Greedy cover in basis order, then the avoidance combination on the chosen vectors.
    let mut uncovered = ones.len();
    let mut covered = vec![false; ones.len()];
    let mut chosen: Vec<(usize, Vec<Q>)> = vec![];
    for (i, v) in space.basis.iter().enumerate() {
        if uncovered == 0 {
            break;
        }
        let vals = space.values(v);
        let new = ones.iter().enumerate().filter(|&(k, &y)| !covered[k] && !vals[y].is_zero()).count();
        if new == 0 {
            continue;
        }
        for (k, &y) in ones.iter().enumerate() {
            if !covered[k] && !vals[y].is_zero() {
                covered[k] = true;
                uncovered -= 1;
            }
        }
        chosen.push((i, ones.iter().map(|&y| Q::from_integer(vals[y].clone())).collect()));
    }
    assert_eq!(uncovered, 0, "screened cover is incomplete");
    let rows: Vec<Vec<Q>> = chosen.iter().map(|(_, r)| r.clone()).collect();
    let alpha = avoidance_combine(&rows).expect("every column covered");
    let mut coeffs = vec![Q::zero(); space.cols.len()];
    for ((i, _), a) in chosen.iter().zip(&alpha) {
        for (k, c) in space.basis[*i].iter().enumerate() {
            if !c.is_zero() {
                coeffs[k] += a * Q::from_integer(c.clone());
            }
        }
    }
    let den = coeffs.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let terms = space.cols.iter().zip(coeffs).map(|(&m, c)| (m, c * Q::from_integer(den.clone())));
    Some(MultilinearPolynomial::from_terms(space.n, Basis::ZeroOne, terms))
}

/// Asserts that `w` vanishes exactly on the zero set within the domain.
fn assert_witness(f: &BooleanFunction, w: &MultilinearPolynomial) {
    let (vals, _) = w.evaluate_all_scaled();
    for x in f.domain_points() {
        assert_eq!(vals[x].is_zero(), !f.value(x), "ndeg witness wrong at point {x}");
    }
}

/// Minimal degree of a polynomial whose zeros within `D` are exactly `f⁻¹(0) ∩ D`.
pub fn ndeg(f: &BooleanFunction) -> NdegResult {
    let n = f.n();
    let zeros = f.preimage(false);
    let ones = f.preimage(true);
    let result = if ones.is_empty() {
        NdegResult { value: 0, witness: MultilinearPolynomial::zero(n, Basis::ZeroOne) }
    } else if zeros.is_empty() {
        NdegResult { value: 0, witness: MultilinearPolynomial::constant(n, Basis::ZeroOne, Q::one()) }
    } else {
        (1..=n)
            .find_map(|d| {
                let space = vanishing_space(n, d, &zeros);
                covering_witness(&space, d, &ones).map(|witness| NdegResult { value: d, witness })
            })
            .expect("the interpolant of f is a witness of degree n")
    };
    assert_witness(f, &result.witness);
    assert_eq!(result.witness.degree(), result.value, "witness degree differs from ndeg");
    result
}

/// `rdeg(f) = max(ndeg f, ndeg f̄)` with `p = g₁`, `q = g₁ − g₂`.
pub fn rdeg(f: &BooleanFunction) -> RdegResult {
    let a = ndeg(f);
    let b = ndeg(&f.negate_output());
    let p = a.witness.clone();
    let q = a.witness.sub(&b.witness);
    let (pv, _) = p.evaluate_all_scaled();
    let (qv, _) = q.evaluate_all_scaled();
    for x in f.domain_points() {
        assert!(!qv[x].is_zero(), "rational representation has q = 0 at {x}");
        // p and q share the denominator, so p/q is 1 iff the scaled values agree
        assert_eq!(pv[x] == qv[x], f.value(x), "p/q differs from f at {x}");
        assert!(pv[x].is_zero() || pv[x] == qv[x], "p/q is not Boolean at {x}");
    }
    let value = a.value.max(b.value);
    assert_eq!(p.degree().max(q.degree()), value);
    RdegResult { value, p, q, ndeg: a.value, ndeg_complement: b.value }
}

/// Exact degree-≤d vanishing space dimension; exposed for cross-checks.
pub fn vanishing_dimension(n: usize, d: usize, zeros: &[usize]) -> usize {
    vanishing_space(n, d, zeros).basis.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::family;
    use crate::poly::{q, q_frac};
    use proptest::prelude::*;

    #[test]
    fn avoidance_examples() {
        assert_eq!(avoidance_combine(&[vec![q(1), q(5), q(-2)]]).unwrap(), vec![q(1)]);
        assert_eq!(avoidance_combine(&[vec![q(1), q(0)], vec![q(0), q(1)]]).unwrap(), vec![q(1), q(2)]);
        let a = avoidance_combine(&[vec![q(1), q(-1)], vec![q(1), q(1)]]).unwrap();
        assert_eq!(a, vec![q(1), q(2)]);
        assert_eq!(
            avoidance_combine(&[vec![q(1), q(0)], vec![q(2), q(0)]]),
            Err(Error::UncoveredColumn(1))
        );
        let a = avoidance_combine(&[vec![q(0), q(0)], vec![q_frac(1, 2), q(3)]]).unwrap();
        assert_eq!(a, vec![q(1), q(1)]);
    }

    #[test]
    fn ndeg_examples() {
        let or3 = family("or", &[3]).unwrap();
        let r = ndeg(&or3);
        assert_eq!(r.value, 1);
        // basis x1, x2, x3 combined with the avoidance weights 1, 2, 4
        assert_eq!(r.witness, MultilinearPolynomial::from_terms(3, Basis::ZeroOne, [(1, q(1)), (2, q(2)), (4, q(4))]));
        assert_eq!(ndeg(&or3.negate_output()).value, 3);
        assert_eq!(ndeg(&family("parity", &[2]).unwrap()).value, 1);
        let ehbar = family("ehbar", &[4]).unwrap();
        let r = ndeg(&ehbar);
        assert_eq!(r.value, 1);
        let expect = MultilinearPolynomial::linear_sum(4, Basis::ZeroOne, 0..4, q(-2));
        assert!(r.witness == expect || r.witness == expect.scale(&q(-1)));
    }

    #[test]
    fn constant_conventions() {
        let zero = BooleanFunction::constant(3, false).unwrap();
        assert_eq!(ndeg(&zero), NdegResult { value: 0, witness: MultilinearPolynomial::zero(3, Basis::ZeroOne) });
        let one = BooleanFunction::constant(3, true).unwrap();
        assert_eq!(ndeg(&one).witness, MultilinearPolynomial::constant(3, Basis::ZeroOne, q(1)));
        assert_eq!(rdeg(&zero).value, 0);
    }

    #[test]
    fn rdeg_examples() {
        assert_eq!(rdeg(&family("and", &[4]).unwrap()).value, 4);
        assert!(rdeg(&family("mt", &[6]).unwrap()).value <= 3);
    }

    #[test]
    fn partial_functions_use_the_domain_only() {
        // constant 1 on its domain
        let f = BooleanFunction::partial_from_fn(2, |x| if x == 1 || x == 2 { Some(true) } else { None }).unwrap();
        assert_eq!(ndeg(&f).value, 0);
        let majn = family("majn", &[4]).unwrap();
        let r = rdeg(&majn);
        assert_eq!(r.ndeg, 1);
    }

    /// Brute-force oracle: smallest d with a degree-≤d 0/1 polynomial with small
    /// integer coefficients vanishing exactly on the zero set.
    fn ndeg_brute(f: &BooleanFunction) -> usize {
        let n = f.n();
        if f.preimage(true).is_empty() || f.preimage(false).is_empty() {
            return 0;
        }
        for d in 1..=n {
            let cols = monomials_upto(n, d);
            let total = 5usize.pow(cols.len() as u32);
            for code in 0..total {
                let mut c = code;
                let coeffs: Vec<i64> = cols
                    .iter()
                    .map(|_| {
                        let v = (c % 5) as i64 - 2;
                        c /= 5;
                        v
                    })
                    .collect();
                let ok = (0..f.size()).all(|x| {
                    let v: i64 = cols.iter().zip(&coeffs).filter(|(&m, _)| m as usize & x == m as usize).map(|(_, c)| c).sum();
                    (v != 0) == f.value(x)
                });
                if ok {
                    return d;
                }
            }
        }
        unreachable!()
    }

    #[test]
    fn matches_brute_force_on_all_two_variable_functions() {
        for t in 0..16usize {
            let f = BooleanFunction::from_fn(2, |x| t >> x & 1 == 1).unwrap();
            assert_eq!(ndeg(&f).value, ndeg_brute(&f), "table {t:04b}");
        }
    }

    #[test]
    fn kernel_dimension_matches_rational_elimination() {
        // dual route: modular engine vs dense rational nullspace for MT_9's zero set
        let f = family("mt", &[9]).unwrap();
        let zeros = f.preimage(false);
        for d in 1..=3 {
            let cols = monomials_upto(9, d);
            let rows: Vec<Vec<Q>> = zeros
                .iter()
                .map(|&z| cols.iter().map(|&m| q((m as usize & z == m as usize) as i64)).collect())
                .collect();
            let exact = RationalMatrix::from_rows(rows).unwrap().nullspace_basis().len();
            assert_eq!(vanishing_dimension(9, d, &zeros), exact, "d = {d}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn witnesses_certified(bits in proptest::collection::vec(any::<bool>(), 32), dom in proptest::collection::vec(any::<bool>(), 32)) {
            let f = BooleanFunction::from_fn(5, |x| bits[x]).unwrap();
            let r = rdeg(&f);
            prop_assert_eq!(r.value, rdeg(&f.negate_output()).value);
            if dom.iter().any(|&b| b) {
                let g = BooleanFunction::partial_from_fn(5, |x| if dom[x] { Some(bits[x]) } else { None }).unwrap();
                let rg = rdeg(&g);
                prop_assert!(rg.value <= r.value);
            }
        }
    }
}
