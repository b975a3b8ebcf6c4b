//! Sensitivity, block sensitivity, certificate complexity and AND/OR-dimension
//! by exhaustive search over the cube.

use crate::boolfn::BooleanFunction;
use crate::error::{check_cap, Error, Result};
use std::collections::HashMap;

/// Cap for block sensitivity and certificate complexity.
pub const SEARCH_CAP: usize = 14;
/// Cap for AND/OR-dimension.
pub const DIMENSION_CAP: usize = 12;

/// Number of sensitive neighbours of `x`; neighbours outside the domain do not count.
pub fn sensitivity_at(f: &BooleanFunction, x: usize) -> Result<usize> {
    if x >= f.size() || !f.in_domain(x) {
        return Err(Error::PointOutsideDomain(x));
    }
    Ok((0..f.n())
        .filter(|&i| {
            let y = x ^ (1 << i);
            f.in_domain(y) && f.value(y) != f.value(x)
        })
        .count())
}

pub fn sensitivity(f: &BooleanFunction) -> usize {
    f.domain_points().map(|x| sensitivity_at(f, x).unwrap()).max().unwrap_or(0)
}

/// `s^{(b)}(f)`: maximum sensitivity over domain points with value `b`.
pub fn one_sided_sensitivity(f: &BooleanFunction, b: bool) -> usize {
    f.domain_points().filter(|&x| f.value(x) == b).map(|x| sensitivity_at(f, x).unwrap()).max().unwrap_or(0)
}

/// Word-level bitset over `2^n` positions with the flip permutation `x ↦ x ⊕ 2^i`.
#[derive(Clone)]
struct CubeSet {
    words: Vec<u64>,
}

const LOW_MASKS: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

impl CubeSet {
    fn from_fn(n: usize, f: impl Fn(usize) -> bool) -> Self {
        let size = 1usize << n;
        let mut words = vec![0u64; size.div_ceil(64)];
        for x in 0..size {
            if f(x) {
                words[x >> 6] |= 1 << (x & 63);
            }
        }
        CubeSet { words }
    }

    fn get(&self, x: usize) -> bool {
        self.words[x >> 6] >> (x & 63) & 1 == 1
    }

    /// The set `{x : x ⊕ 2^i ∈ self}`.
    fn flipped(&self, i: usize, n: usize) -> CubeSet {
        let mut out = self.words.clone();
        if i < 6 {
            let s = 1u32 << i;
            let m = LOW_MASKS[i];
            for w in &mut out {
                *w = ((*w & m) << s) | ((*w >> s) & m);
            }
            if n < 6 {
                let keep = (1u64 << (1 << n)) - 1;
                out.iter_mut().for_each(|w| *w &= keep);
            }
        } else {
            let stride = 1usize << (i - 6);
            for (k, w) in out.iter_mut().enumerate() {
                *w = self.words[k ^ stride];
            }
        }
        CubeSet { words: out }
    }

    fn and(&self, other: &CubeSet) -> CubeSet {
        CubeSet { words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect() }
    }
}

/// Maximum number of pairwise disjoint blocks among `blocks` inside `avail`.
fn max_packing(blocks: &[u32], avail: u32, memo: &mut HashMap<u32, usize>) -> usize {
    if avail == 0 {
        return 0;
    }
    if let Some(&v) = memo.get(&avail) {
        return v;
    }
    let low = avail & avail.wrapping_neg();
    // either the lowest available variable stays unused, or some block covers it
    let mut best = max_packing(blocks, avail & !low, memo);
    for &b in blocks {
        if b & low != 0 && b & !avail == 0 {
            best = best.max(1 + max_packing(blocks, avail & !b, memo));
        }
    }
    memo.insert(avail, best);
    best
}

/// Block sensitivity at `x`, by exact packing of minimal sensitive blocks.
pub fn block_sensitivity_at(f: &BooleanFunction, x: usize) -> Result<usize> {
    f.require_total("block sensitivity")?;
    check_cap(f.n(), SEARCH_CAP)?;
    let n = f.n();
    let full = (1usize << n) - 1;
    let fx = f.value(x);
    let sensitive = CubeSet::from_fn(n, |b| f.value(x ^ b) != fx);
    // blocks containing a sensitive block (upward closure)
    let mut up = sensitive.clone();
    for i in 0..n {
        let shifted = up.flipped(i, n);
        let has_bit = CubeSet::from_fn(n, |b| b >> i & 1 == 1);
        for (k, w) in up.words.iter_mut().enumerate() {
            *w |= shifted.words[k] & has_bit.words[k];
        }
    }
    let minimal: Vec<u32> = (1..=full)
        .filter(|&b| sensitive.get(b) && (0..n).all(|i| b >> i & 1 == 0 || !up.get(b ^ (1 << i))))
        .map(|b| b as u32)
        .collect();
    Ok(max_packing(&minimal, full as u32, &mut HashMap::new()))
}

pub fn block_sensitivity(f: &BooleanFunction) -> Result<usize> {
    f.require_total("block sensitivity")?;
    check_cap(f.n(), SEARCH_CAP)?;
    let mut best = 0;
    for x in 0..f.size() {
        best = best.max(block_sensitivity_at(f, x)?);
    }
    Ok(best)
}

/// Per-point certificate complexity `C(f, x)` for every `x`.
pub fn certificate_profile(f: &BooleanFunction) -> Result<Vec<usize>> {
    f.require_total("certificate complexity")?;
    check_cap(f.n(), SEARCH_CAP)?;
    let n = f.n();
    let size = 1usize << n;
    let values = CubeSet::from_fn(n, |x| f.value(x));
    // same[i] = {x : f(x) = f(x ⊕ 2^i)}
    let same: Vec<CubeSet> = (0..n)
        .map(|i| {
            let fl = values.flipped(i, n);
            CubeSet { words: values.words.iter().zip(&fl.words).map(|(a, b)| !(a ^ b)).collect() }
        })
        .collect();
    // mono[F] = {x : f is constant on the subcube through x with free variables F}
    let mut mono: Vec<CubeSet> = Vec::with_capacity(size);
    mono.push(CubeSet::from_fn(n, |_| true));
    for free in 1..size {
        let i = free.trailing_zeros() as usize;
        let prev = &mono[free & (free - 1)];
        mono.push(prev.and(&prev.flipped(i, n)).and(&same[i]));
    }
    let mut order: Vec<usize> = (0..size).collect();
    order.sort_by_key(|&m| std::cmp::Reverse(m.count_ones()));
    let mut best = vec![usize::MAX; size];
    let mut remaining = size;
    for free in order {
        for x in 0..size {
            if best[x] == usize::MAX && mono[free].get(x) {
                best[x] = n - free.count_ones() as usize;
                remaining -= 1;
            }
        }
        if remaining == 0 {
            break;
        }
    }
    Ok(best)
}

/// `C_b(f)`: maximum certificate size over inputs with value `b`.
pub fn certificate_complexity_b(f: &BooleanFunction, b: bool) -> Result<usize> {
    let prof = certificate_profile(f)?;
    Ok((0..f.size()).filter(|&x| f.value(x) == b).map(|x| prof[x]).max().unwrap_or(0))
}

pub fn certificate_complexity(f: &BooleanFunction) -> Result<usize> {
    Ok(certificate_profile(f)?.into_iter().max().unwrap_or(0))
}

fn dimension(f: &BooleanFunction, target_ones: bool) -> Result<usize> {
    f.require_total("AND/OR-dimension")?;
    check_cap(f.n(), DIMENSION_CAP)?;
    let n = f.n();
    let size = 1usize << n;
    let mut frees: Vec<usize> = (1..size).collect();
    frees.sort_by_key(|&m| std::cmp::Reverse(m.count_ones()));
    let mut count = vec![0u32; size];
    for free in frees {
        let k = free.count_ones();
        count.iter_mut().for_each(|c| *c = 0);
        for x in 0..size {
            if f.value(x) {
                count[x & !free] += 1;
            }
        }
        let want = if target_ones { 1 } else { (1u32 << k) - 1 };
        if (0..size).any(|base| base & free == 0 && count[base] == want) {
            return Ok(k as usize);
        }
    }
    Ok(0)
}

/// Largest restriction arity giving AND up to input negations (exactly one 1-point).
pub fn and_dimension(f: &BooleanFunction) -> Result<usize> {
    dimension(f, true)
}

/// Largest restriction arity giving OR up to input negations (exactly one 0-point).
pub fn or_dimension(f: &BooleanFunction) -> Result<usize> {
    dimension(f, false)
}
