//! Sign degree and approximate degree by exact LP feasibility.
//!
//! Both LPs are invariant under the variable permutations that fix `f` (and its
//! domain), and averaging a feasible polynomial over that group keeps it feasible.
//! So only polynomials constant on orbits of monomials are searched: variables are
//! grouped into blocks of mutually interchangeable inputs, a monomial type records
//! how many variables it takes from each block, and a point type records the
//! Hamming weight inside each block. The value of a monomial type summed over its
//! orbit at a point type is a product of Kravchuk numbers.

use crate::boolfn::BooleanFunction;
use crate::error::{bad, Result};
use crate::linalg::{LinearProgram, LpOutcome, Relation};
use crate::poly::{monomials_upto, q, Basis, MultilinearPolynomial, Q};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;

/// A degree together with the polynomial (±1 basis) attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpDegree {
    pub value: usize,
    pub witness: MultilinearPolynomial,
}

/// Partition of the variables into blocks of pairwise swappable inputs.
pub fn symmetry_blocks(f: &BooleanFunction) -> Vec<Vec<usize>> {
    let n = f.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if root(&mut parent, i) != root(&mut parent, j) && f.invariant_under_swap(i, j) {
                let r = root(&mut parent, j);
                parent[r] = root(&mut parent, i);
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = vec![];
    let mut index: HashMap<usize, usize> = HashMap::new();
    for i in 0..n {
        let r = root(&mut parent, i);
        let k = *index.entry(r).or_insert_with(|| {
            blocks.push(vec![]);
            blocks.len() - 1
        });
        blocks[k].push(i);
    }
    blocks
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `K_t(w; N) = Σ_j (−1)^j C(w, j) C(N − w, t − j)`: the sum of `χ_S` over all
/// `|S| = t` in an `N`-set, at a point of weight `w` there.
pub fn kravchuk(t: usize, w: usize, big_n: usize) -> BigInt {
    (0..=t.min(w)).fold(BigInt::zero(), |acc, j| {
        let term = binomial(w, j) * binomial(big_n - w, t - j);
        if j % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    })
}

struct PointType {
    in_domain: bool,
    /// ±1 value: output 0 ↦ 1, output 1 ↦ −1.
    sign: i64,
    weights: Vec<usize>,
}

struct Reduced {
    n: usize,
    blocks: Vec<Vec<usize>>,
    points: Vec<PointType>,
}

impl Reduced {
    fn new(f: &BooleanFunction) -> Self {
        let blocks = symmetry_blocks(f);
        let masks: Vec<usize> = blocks.iter().map(|b| b.iter().map(|&i| 1usize << i).sum()).collect();
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut points: Vec<PointType> = vec![];
        for x in 0..f.size() {
            let weights: Vec<usize> = masks.iter().map(|m| (x & m).count_ones() as usize).collect();
            let in_domain = f.in_domain(x);
            let sign = if f.value(x) { -1 } else { 1 };
            match seen.get(&weights) {
                Some(&k) => debug_assert!(points[k].in_domain == in_domain && (!in_domain || points[k].sign == sign)),
                None => {
                    seen.insert(weights.clone(), points.len());
                    points.push(PointType { in_domain, sign, weights });
                }
            }
        }
        Reduced { n: f.n(), blocks, points }
    }

    /// Monomial types of total degree at most `d`.
    fn monomial_types(&self, d: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for b in &self.blocks {
            out = out
                .into_iter()
                .flat_map(|t: Vec<usize>| {
                    let used: usize = t.iter().sum();
                    (0..=b.len().min(d - used)).map(move |k| {
                        let mut u = t.clone();
                        u.push(k);
                        u
                    })
                })
                .collect();
        }
        out
    }

    fn row(&self, types: &[Vec<usize>], point: &PointType) -> Vec<Q> {
        types
            .iter()
            .map(|t| {
                let v = t
                    .iter()
                    .zip(&point.weights)
                    .zip(&self.blocks)
                    .fold(BigInt::one(), |acc, ((&tb, &wb), blk)| acc * kravchuk(tb, wb, blk.len()));
                Q::from_integer(v)
            })
            .collect()
    }

    /// The full ±1-basis polynomial whose orbit coefficients are `coeffs`.
    fn expand(&self, types: &[Vec<usize>], coeffs: &[Q], d: usize) -> MultilinearPolynomial {
        let index: HashMap<&Vec<usize>, usize> = types.iter().enumerate().map(|(k, t)| (t, k)).collect();
        let masks: Vec<u32> = self.blocks.iter().map(|b| b.iter().map(|&i| 1u32 << i).sum()).collect();
        let terms = monomials_upto(self.n, d).into_iter().map(|s| {
            let t: Vec<usize> = masks.iter().map(|m| (s & m).count_ones() as usize).collect();
            (s, coeffs[index[&t]].clone())
        });
        MultilinearPolynomial::from_terms(self.n, Basis::PlusMinus, terms)
    }

    /// Solves the degree-`d` LP; `constrain` adds the rows for one point type.
    fn solve(
        &self,
        d: usize,
        constrain: &dyn Fn(&mut LinearProgram, Vec<Q>, &PointType),
    ) -> Option<MultilinearPolynomial> {
        let types = self.monomial_types(d);
        let mut lp = LinearProgram::new(types.len());
        for p in &self.points {
            constrain(&mut lp, self.row(&types, p), p);
        }
        match lp.feasible() {
            LpOutcome::Feasible(c) => Some(self.expand(&types, &c, d)),
            LpOutcome::Infeasible => None,
        }
    }

    /// Smallest feasible degree, by binary search (feasibility is monotone in `d`).
    fn min_degree(
        &self,
        constrain: &dyn Fn(&mut LinearProgram, Vec<Q>, &PointType),
    ) -> LpDegree {
        let mut hi = self.n;
        let mut best = self.solve(hi, constrain).expect("degree n is always feasible");
        let mut lo = 0;
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.solve(mid, constrain) {
                Some(w) => {
                    hi = mid;
                    best = w;
                }
                None => lo = mid + 1,
            }
        }
        LpDegree { value: hi, witness: best }
    }
}

fn sign_of(f: &BooleanFunction, x: usize) -> Q {
    if f.value(x) {
        q(-1)
    } else {
        q(1)
    }
}

/// Least degree of a real polynomial with `sgn p(x) = f(x)` (±1 view) everywhere.
pub fn sign_degree(f: &BooleanFunction) -> Result<LpDegree> {
    f.require_total("sign degree")?;
    let red = Reduced::new(f);
    let res = red.min_degree(&|lp, row, p| {
        let row = row.into_iter().map(|c| c * q(p.sign)).collect();
        lp.add(row, Relation::Ge, q(1)).expect("row width");
    });
    let vals = res.witness.evaluate_all();
    for (x, v) in vals.iter().enumerate() {
        assert!((v * sign_of(f, x)).is_positive(), "sign representation fails at {x}");
    }
    assert!(res.witness.degree() <= res.value);
    Ok(res)
}

/// `adeg_ε(f)`: least degree of `p` with `|p − f| ≤ ε` on the domain and `|p| ≤ 1`
/// on the whole cube (±1 view). `ε` must lie in `[0, 1/2)`.
pub fn approx_degree(f: &BooleanFunction, eps: &Q) -> Result<LpDegree> {
    if eps.is_negative() || *eps >= Q::new(1.into(), 2.into()) {
        return Err(bad(format!("epsilon {eps} outside [0, 1/2)")));
    }
    let red = Reduced::new(f);
    let res = red.min_degree(&|lp, row, p| {
        if p.in_domain {
            let target = q(p.sign);
            if eps.is_zero() {
                lp.add(row.clone(), Relation::Eq, target).expect("row width");
            } else {
                lp.add(row.clone(), Relation::Ge, &target - eps).expect("row width");
                lp.add(row.clone(), Relation::Le, &target + eps).expect("row width");
            }
        }
        lp.add(row.clone(), Relation::Le, q(1)).expect("row width");
        lp.add(row, Relation::Ge, q(-1)).expect("row width");
    });
    let vals = res.witness.evaluate_all();
    for (x, v) in vals.iter().enumerate() {
        assert!(v.abs() <= q(1), "approximation unbounded at {x}");
        if f.in_domain(x) {
            assert!((v - sign_of(f, x)).abs() <= *eps, "approximation off at {x}");
        }
    }
    assert!(res.witness.degree() <= res.value);
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::family;
    use crate::measures::deg;
    use crate::poly::q_frac;
    use proptest::prelude::*;

    /// Oracle: the same LPs over all monomials, with no symmetry reduction.
    fn plain_lp(f: &BooleanFunction, d: usize, eps: Option<&Q>) -> bool {
        let n = f.n();
        let monos = monomials_upto(n, d);
        let mut lp = LinearProgram::new(monos.len());
        for x in 0..f.size() {
            let row: Vec<Q> =
                monos.iter().map(|&s| if (s as usize & x).count_ones() % 2 == 0 { q(1) } else { q(-1) }).collect();
            let t = sign_of(f, x);
            match eps {
                None => lp.add(row.into_iter().map(|c| c * &t).collect(), Relation::Ge, q(1)).unwrap(),
                Some(e) => {
                    if f.in_domain(x) {
                        lp.add(row.clone(), Relation::Ge, &t - e).unwrap();
                        lp.add(row.clone(), Relation::Le, &t + e).unwrap();
                    }
                    lp.add(row.clone(), Relation::Le, q(1)).unwrap();
                    lp.add(row, Relation::Ge, q(-1)).unwrap();
                }
            }
        }
        lp.feasible().is_feasible()
    }

    fn plain_min(f: &BooleanFunction, eps: Option<&Q>) -> usize {
        (0..=f.n()).find(|&d| plain_lp(f, d, eps)).unwrap()
    }

    #[test]
    fn kravchuk_matches_direct_sum() {
        for big_n in 0..6usize {
            for t in 0..=big_n {
                for w in 0..=big_n {
                    let x = (1usize << w) - 1;
                    let direct: i64 = (0..1usize << big_n)
                        .filter(|s| s.count_ones() as usize == t)
                        .map(|s| if (s & x).count_ones() % 2 == 0 { 1 } else { -1 })
                        .sum();
                    assert_eq!(kravchuk(t, w, big_n), BigInt::from(direct));
                }
            }
        }
    }

    #[test]
    fn blocks_examples() {
        assert_eq!(symmetry_blocks(&family("maj", &[3]).unwrap()), vec![vec![0, 1, 2]]);
        assert_eq!(symmetry_blocks(&family("andor", &[2, 2]).unwrap()), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(symmetry_blocks(&family("bi", &[6]).unwrap()), vec![vec![0, 1, 2], vec![3, 4, 5]]);
    }

    #[test]
    fn sign_degree_examples() {
        assert_eq!(sign_degree(&BooleanFunction::constant(3, true).unwrap()).unwrap().value, 0);
        assert_eq!(sign_degree(&family("maj", &[3]).unwrap()).unwrap().value, 1);
        assert_eq!(sign_degree(&family("parity", &[3]).unwrap()).unwrap().value, 3);
        assert!(sign_degree(&family("majn", &[4]).unwrap()).is_err());
    }

    #[test]
    fn approx_degree_examples() {
        let third = q_frac(1, 3);
        for name in ["and", "or", "parity", "mt"] {
            let f = family(name, &[3]).unwrap();
            assert_eq!(approx_degree(&f, &q(0)).unwrap().value, deg(&f).unwrap());
        }
        let majn = approx_degree(&family("majn", &[8]).unwrap(), &third).unwrap();
        assert!(majn.value <= 3);
        let bi = approx_degree(&family("bi", &[6]).unwrap(), &third).unwrap();
        assert!(bi.value >= 2);
        assert_eq!(bi.value, plain_min(&family("bi", &[6]).unwrap(), Some(&third)));
        assert!(approx_degree(&family("and", &[2]).unwrap(), &q_frac(1, 2)).is_err());
        assert!(approx_degree(&family("and", &[2]).unwrap(), &q(-1)).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn reduction_agrees_with_plain_lp(bits in proptest::collection::vec(any::<bool>(), 8), sym in any::<bool>()) {
            // symmetric samples exercise the reduction, random ones the trivial blocks
            let f = if sym {
                BooleanFunction::from_fn(3, |x| bits[x.count_ones() as usize]).unwrap()
            } else {
                BooleanFunction::from_fn(3, |x| bits[x]).unwrap()
            };
            prop_assert_eq!(sign_degree(&f).unwrap().value, plain_min(&f, None));
            let third = q_frac(1, 3);
            prop_assert_eq!(approx_degree(&f, &third).unwrap().value, plain_min(&f, Some(&third)));
            prop_assert_eq!(approx_degree(&f, &q(0)).unwrap().value, deg(&f).unwrap());
        }
    }
}
