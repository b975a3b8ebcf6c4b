//! Counting identities, inequality spot checks and the random-function census.

pub mod generate;

use crate::boolfn::BooleanFunction;
use crate::error::{bad, check_cap, Result};
use crate::measures::rdeg;
use crate::paperlab::Verdict;
use crate::poly::{fmt_q, Q};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

pub const CENSUS_CAP: usize = 10;
/// Constant in the census threshold `⌈n/2 − √(c·n)⌉`, as a fraction `c = 1104/1000`.
const CENSUS_C: (u64, u64) = (1104, 1000);
pub const GENERATOR: &str = "ChaCha8 seeded with the census seed, stream = sample index";

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Number of dichotomies of `N` points in general position separable in dimension `d`:
/// `C(N, d) = 2 Σ_{i<d} binom(N−1, i)`.
pub fn cover_count(big_n: u64, d: u64) -> Result<BigInt> {
    if d > big_n {
        return Err(bad(format!("cover count needs 0 ≤ d ≤ N, got N = {big_n}, d = {d}")));
    }
    if big_n == 0 {
        return Ok(BigInt::zero());
    }
    Ok((0..d).fold(BigInt::zero(), |acc, i| acc + binomial(big_n - 1, i)) * 2)
}

/// For `3 | n`: the number of points outside the middle-third slices and the number
/// of monomials of degree at most `n/3`. The first is smaller for every such `n`.
pub fn middle_third_counts(n: u64) -> Result<(BigInt, BigInt)> {
    if n == 0 || n % 3 != 0 {
        return Err(bad(format!("n = {n} is not a positive multiple of 3")));
    }
    let outside = (0..n / 3).chain(2 * n / 3 + 1..=n).fold(BigInt::zero(), |acc, i| acc + binomial(n, i));
    let low = (0..=n / 3).fold(BigInt::zero(), |acc, i| acc + binomial(n, i));
    Ok((outside, low))
}

/// `(sum of the k largest x)·(sum of the n−k+1 largest y)` and `Σ x_i y_i`.
pub fn sorted_sums_inequality(x: &[Q], y: &[Q], k: usize) -> Result<(Q, Q)> {
    if x.len() != y.len() || k == 0 || k > x.len() {
        return Err(bad(format!("need equal lengths and 1 ≤ k ≤ n, got {}, {}, k = {k}", x.len(), y.len())));
    }
    if x.iter().chain(y).any(|v| v < &Q::zero()) {
        return Err(bad("entries must be nonnegative"));
    }
    let desc = |v: &[Q]| {
        let mut s = v.to_vec();
        s.sort_by(|a, b| b.cmp(a));
        s
    };
    let (sx, sy) = (desc(x), desc(y));
    let n = x.len();
    let left = sx[..k].iter().sum::<Q>() * sy[..n - k + 1].iter().sum::<Q>();
    let right = x.iter().zip(y).map(|(a, b)| a * b).sum::<Q>();
    Ok((left, right))
}

pub fn middle_third_verdict(n: u64) -> Result<Verdict> {
    let (outside, low) = middle_third_counts(n)?;
    Ok(Verdict::new("fact:3.7", format!("n={n}"), outside < low, outside.to_string(), low.to_string()))
}

pub fn sorted_sums_verdict(x: &[Q], y: &[Q], k: usize) -> Result<Verdict> {
    let (left, right) = sorted_sums_inequality(x, y, k)?;
    let show = |v: &[Q]| v.iter().map(fmt_q).collect::<Vec<_>>().join(",");
    Ok(Verdict::new("fact:B.2", format!("x=({});y=({});k={k}", show(x), show(y)), left >= right, fmt_q(&left), fmt_q(&right)))
}

/// Verdicts for every `3 | n ≤ limit` and `trials` seeded random sequence triples.
pub fn fact_checks(limit: u64, trials: usize, seed: u64) -> Result<Vec<Verdict>> {
    if limit > 200 {
        return Err(bad(format!("limit {limit} exceeds 200")));
    }
    let mut out: Vec<Verdict> = (1..=limit / 3).map(|i| middle_third_verdict(3 * i)).collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let n = rng.gen_range(1..=8);
        let x: Vec<Q> = (0..n).map(|_| generate::random_nonnegative_rational(&mut rng)).collect();
        let y: Vec<Q> = (0..n).map(|_| generate::random_nonnegative_rational(&mut rng)).collect();
        let k = rng.gen_range(1..=n);
        out.push(sorted_sums_verdict(&x, &y, k)?);
    }
    Ok(out)
}

/// Smallest integer `t` with `t ≥ n/2 − √(c·n)`, computed exactly.
pub fn census_threshold(n: usize) -> usize {
    let n = n as u64;
    // t qualifies iff n − 2t ≤ 0 or (n − 2t)² · den ≤ 4 · num · n
    (0..=n)
        .find(|&t| {
            let gap = n as i64 - 2 * t as i64;
            gap <= 0 || (gap * gap) as u64 * CENSUS_C.1 <= 4 * CENSUS_C.0 * n
        })
        .unwrap_or(n) as usize
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusResult {
    pub n: usize,
    pub count: usize,
    pub seed: u64,
    pub generator: String,
    pub rdeg: Vec<usize>,
    pub histogram: BTreeMap<usize, usize>,
    /// Threshold `t` ↦ fraction of samples with rdeg ≥ t, as an exact rational string.
    pub fraction_at_least: BTreeMap<usize, String>,
    pub threshold: usize,
    pub fraction_at_threshold: String,
    /// `log₂` of the counting bound on the fraction below threshold; context only.
    pub log2_counting_bound: f64,
}

/// The `index`-th sample of a census with `seed`.
pub fn census_sample(n: usize, seed: u64, index: u64) -> BooleanFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    generate::random_function(n, &mut rng)
}

fn binary_entropy(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        0.0
    } else {
        -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
    }
}

/// Exact rdeg of `count` seeded uniformly random functions on `n` variables.
pub fn census(n: usize, count: usize, seed: u64) -> Result<CensusResult> {
    check_cap(n, CENSUS_CAP)?;
    if n == 0 || count == 0 {
        return Err(bad("census needs n ≥ 1 and count ≥ 1"));
    }
    let rdegs: Vec<usize> = (0..count as u64).into_par_iter().map(|i| rdeg(&census_sample(n, seed, i)).value).collect();
    let mut histogram = BTreeMap::new();
    for &r in &rdegs {
        *histogram.entry(r).or_insert(0) += 1;
    }
    let frac = |t: usize| fmt_q(&Q::new(rdegs.iter().filter(|&&r| r >= t).count().into(), count.into()));
    let threshold = census_threshold(n);
    let c = CENSUS_C.0 as f64 / CENSUS_C.1 as f64;
    Ok(CensusResult {
        n,
        count,
        seed,
        generator: GENERATOR.into(),
        fraction_at_least: (0..=n).map(|t| (t, frac(t))).collect(),
        fraction_at_threshold: frac(threshold),
        threshold,
        histogram,
        rdeg: rdegs,
        log2_counting_bound: (1u64 << n) as f64 * (2.0 * binary_entropy((-2.0 * c).exp()) - 1.0),
    })
}

impl CensusResult {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("census JSON")
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("index,rdeg\n");
        for (i, r) in self.rdeg.iter().enumerate() {
            s.push_str(&format!("{i},{r}\n"));
        }
        s
    }

    /// Census verdict: every sample reaches the threshold.
    pub fn verdict(&self) -> Verdict {
        let reached = self.rdeg.iter().filter(|&&r| r >= self.threshold).count();
        Verdict::new(
            "cor:3.20",
            format!("n={},count={},seed={},threshold={}", self.n, self.count, self.seed, self.threshold),
            reached == self.count,
            reached.to_string(),
            self.count.to_string(),
        )
    }
}
