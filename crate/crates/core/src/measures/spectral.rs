//! Spectral sensitivity: the largest eigenvalue of the sensitivity graph.
//!
//! Power iteration runs on `A²` in floating point. Bounds are then certified in
//! exact integer arithmetic from a quantised copy `u > 0` of the iterate:
//! `‖Au‖/‖u‖ ≤ λ` because `A` is symmetric, and `λ² ≤ max_i (A²u)_i/u_i` by the
//! Collatz–Wielandt bound for the nonnegative matrix `A²`.

use crate::boolfn::BooleanFunction;
use crate::error::{check_cap, Result};
use crate::poly::Q;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

pub const SPECTRAL_CAP: usize = 18;
pub const DEFAULT_TOL: f64 = 1e-9;
pub const MAX_ITERATIONS: usize = 1_000_000;

const SCALE_BITS: u32 = 40;

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralResult {
    pub lambda: f64,
    pub lower: Q,
    pub upper: Q,
    pub iterations: usize,
}

struct Graph {
    /// Bitmask of sensitive directions at each point.
    sens: Vec<u32>,
    /// Connected component of each non-isolated point (`usize::MAX` if isolated).
    comp: Vec<usize>,
    comps: usize,
}

impl Graph {
    fn new(f: &BooleanFunction) -> Self {
        let n = f.n();
        let sens: Vec<u32> = (0..f.size())
            .map(|x| (0..n).filter(|&i| f.value(x) != f.value(x ^ (1 << i))).map(|i| 1u32 << i).sum())
            .collect();
        let mut comp = vec![usize::MAX; f.size()];
        let mut comps = 0;
        for s in 0..f.size() {
            if sens[s] == 0 || comp[s] != usize::MAX {
                continue;
            }
            comp[s] = comps;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for i in 0..n {
                    let y = x ^ (1 << i);
                    if sens[x] >> i & 1 == 1 && comp[y] == usize::MAX {
                        comp[y] = comps;
                        stack.push(y);
                    }
                }
            }
            comps += 1;
        }
        Graph { sens, comp, comps }
    }

    fn apply<T: Copy + Default + std::ops::Add<Output = T>>(&self, v: &[T]) -> Vec<T> {
        (0..v.len())
            .map(|x| {
                let mut m = self.sens[x];
                let mut acc = T::default();
                while m != 0 {
                    let i = m.trailing_zeros();
                    acc = acc + v[x ^ (1 << i)];
                    m &= m - 1;
                }
                acc
            })
            .collect()
    }

    fn normalise(&self, v: &mut [f64]) {
        let mut top = vec![0f64; self.comps];
        for (x, &c) in self.comp.iter().enumerate() {
            if c != usize::MAX {
                top[c] = top[c].max(v[x]);
            }
        }
        for (x, &c) in self.comp.iter().enumerate() {
            if c != usize::MAX {
                v[x] /= top[c];
            }
        }
    }

    /// Float estimates `(lower, upper)` of λ at iterate `v`.
    fn estimate(&self, v: &[f64]) -> (f64, f64) {
        let av = self.apply(v);
        let aav = self.apply(&av);
        let mut num = vec![0f64; self.comps];
        let mut den = vec![0f64; self.comps];
        let mut ratio = 0f64;
        for (x, &c) in self.comp.iter().enumerate() {
            if c != usize::MAX {
                num[c] += av[x] * av[x];
                den[c] += v[x] * v[x];
                ratio = ratio.max(aav[x] / v[x]);
            }
        }
        let lower = (0..self.comps).map(|c| num[c] / den[c]).fold(0f64, f64::max);
        (lower.sqrt(), ratio.sqrt())
    }

    /// Exact bounds from a quantised copy of `v`.
    fn certify(&self, v: &[f64]) -> (Q, Q) {
        let u: Vec<i128> = (0..v.len())
            .map(|x| if self.sens[x] == 0 { 0 } else { ((v[x] * (1u64 << SCALE_BITS) as f64) as i128).max(1) })
            .collect();
        let au = self.apply(&u);
        let aau = self.apply(&au);
        // each component restriction of u is a test vector of its own
        let mut num = vec![BigInt::zero(); self.comps];
        let mut den = vec![BigInt::zero(); self.comps];
        for (x, &c) in self.comp.iter().enumerate() {
            if c != usize::MAX {
                num[c] += BigInt::from(au[x]) * au[x];
                den[c] += BigInt::from(u[x]) * u[x];
            }
        }
        let best_comp = (1..self.comps).fold(0, |b, c| if &num[c] * &den[b] > &num[b] * &den[c] { c } else { b });
        let scale = BigInt::from(1u64 << SCALE_BITS);
        let scale2 = &scale * &scale;
        // lower: floor(sqrt(num/den) · 2^k) / 2^k
        let lower_num = (&num[best_comp] * &scale2 / &den[best_comp]).sqrt();
        // upper: max ratio as an exact fraction, then ceil(sqrt(r) · 2^k) / 2^k
        let mut best = (0i128, 1i128);
        for x in 0..u.len() {
            if u[x] != 0 && BigInt::from(aau[x]) * best.1 > BigInt::from(best.0) * u[x] {
                best = (aau[x], u[x]);
            }
        }
        let target = (BigInt::from(best.0) * &scale2 + BigInt::from(best.1 - 1)) / BigInt::from(best.1);
        let mut upper_num = target.sqrt();
        if &upper_num * &upper_num < target {
            upper_num += 1;
        }
        (Q::new(lower_num, scale.clone()), Q::new(upper_num, scale))
    }
}

/// λ(f) with certified rational bounds `upper − lower ≤ tol` (unless the
/// iteration cap is hit first).
pub fn spectral_sensitivity(f: &BooleanFunction, tol: f64) -> Result<SpectralResult> {
    f.require_total("spectral sensitivity")?;
    check_cap(f.n(), SPECTRAL_CAP)?;
    let g = Graph::new(f);
    if g.comps == 0 {
        return Ok(SpectralResult { lambda: 0.0, lower: Q::zero(), upper: Q::zero(), iterations: 0 });
    }
    let mut v: Vec<f64> = g.sens.iter().map(|&m| if m == 0 { 0.0 } else { 1.0 }).collect();
    let tol_q = Q::from_float(tol).unwrap_or_else(Q::zero);
    let mut best: Option<(Q, Q)> = None;
    let mut iterations = 0;
    loop {
        let (lo, hi) = g.estimate(&v);
        let due = hi - lo <= tol / 4.0 || iterations % 1024 == 0 || iterations >= MAX_ITERATIONS;
        if due {
            let (l, u) = g.certify(&v);
            let (bl, bu) = match best.take() {
                None => (l, u),
                Some((bl, bu)) => (bl.max(l), bu.min(u)),
            };
            let done = &bu - &bl <= tol_q || iterations >= MAX_ITERATIONS;
            best = Some((bl, bu));
            if done {
                break;
            }
        }
        let av = g.apply(&v);
        v = g.apply(&av);
        g.normalise(&mut v);
        iterations += 1;
    }
    let (lower, upper) = best.expect("certified at least once");
    let lambda = ((&lower + &upper) / BigInt::from(2)).to_f64().unwrap_or(f64::NAN);
    Ok(SpectralResult { lambda, lower, upper, iterations })
}
