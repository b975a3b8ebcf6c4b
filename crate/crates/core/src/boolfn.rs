//! Total and partial Boolean functions stored as truth tables.
//!
//! A point `x` of `{0,1}^n` is identified with the index `Σ x_j 2^(j-1)`, so
//! variable 1 is the least-significant bit. Variables are 0-based in the Rust
//! API (`0..n`) and 1-based in every text format.

use crate::error::{bad, check_cap, Error, Result};
use std::sync::atomic::{AtomicUsize, Ordering};

/// Hard cap on the number of variables of a truth table.
pub const MAX_VARS: usize = 20;

static VAR_CAP: AtomicUsize = AtomicUsize::new(MAX_VARS);

/// Current variable cap; never above [`MAX_VARS`].
pub fn max_vars() -> usize {
    VAR_CAP.load(Ordering::Relaxed)
}

/// Lowers (or restores) the variable cap, clamped to [`MAX_VARS`].
pub fn set_max_vars(cap: usize) {
    VAR_CAP.store(cap.min(MAX_VARS), Ordering::Relaxed);
}

pub(crate) fn check_vars(n: usize) -> Result<()> {
    check_cap(n, max_vars())
}

/// Fixed-length bitset backing truth tables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bits {
    len: usize,
    words: Vec<u64>,
}

impl Bits {
    pub fn zeros(len: usize) -> Self {
        Bits { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn ones(len: usize) -> Self {
        let mut b = Bits { len, words: vec![u64::MAX; len.div_ceil(64)] };
        b.trim();
        b
    }

    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut b = Bits::zeros(len);
        for i in 0..len {
            if f(i) {
                b.set(i, true);
            }
        }
        b
    }

    /// Parses a bit string written with index 0 first (`"0001"` has bit 3 set).
    pub fn from_str_lsb_first(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().collect();
        let mut b = Bits::zeros(chars.len());
        for (i, c) in chars.iter().enumerate() {
            match c {
                '0' => {}
                '1' => b.set(i, true),
                _ => return Err(Error::Parse(format!("bad bit character `{c}`"))),
            }
        }
        Ok(b)
    }

    fn trim(&mut self) {
        let extra = self.words.len() * 64 - self.len;
        if extra > 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= u64::MAX >> extra;
            }
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: bool) {
        if v {
            self.words[i >> 6] |= 1 << (i & 63);
        } else {
            self.words[i >> 6] &= !(1 << (i & 63));
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn and(&self, other: &Bits) -> Bits {
        Bits {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn not(&self) -> Bits {
        let mut b = Bits { len: self.len, words: self.words.iter().map(|w| !w).collect() };
        b.trim();
        b
    }

    pub fn all(&self) -> bool {
        self.count_ones() == self.len
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Little-endian hex: digit `j` holds bits `4j..4j+3`, lowest index in the low bit.
    pub fn to_hex(&self) -> String {
        let digits = self.len.div_ceil(4).max(1);
        (0..digits)
            .map(|j| {
                let mut nib = 0u32;
                for k in 0..4 {
                    let i = 4 * j + k;
                    if i < self.len && self.get(i) {
                        nib |= 1 << k;
                    }
                }
                char::from_digit(nib, 16).unwrap()
            })
            .collect()
    }

    pub fn from_hex(s: &str, len: usize) -> Result<Self> {
        let digits: Vec<char> = s.trim().chars().collect();
        if digits.len() != len.div_ceil(4).max(1) {
            return Err(Error::Parse(format!(
                "hex string has {} digits, expected {}",
                digits.len(),
                len.div_ceil(4).max(1)
            )));
        }
        let mut b = Bits::zeros(len);
        for (j, c) in digits.iter().enumerate() {
            let nib = c.to_digit(16).ok_or_else(|| Error::Parse(format!("bad hex digit `{c}`")))?;
            for k in 0..4 {
                if nib >> k & 1 == 1 {
                    let i = 4 * j + k;
                    if i >= len {
                        return Err(Error::Parse("hex string sets bits beyond the table".into()));
                    }
                    b.set(i, true);
                }
            }
        }
        Ok(b)
    }
}

impl std::fmt::Debug for Bits {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: String = (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect();
        write!(f, "Bits({s})")
    }
}

/// A total or partial Boolean function on `{0,1}^n` with an explicit domain.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BooleanFunction {
    n: usize,
    domain: Bits,
    values: Bits,
}

/// Per-variable assignment: `Some(b)` fixes the variable, `None` leaves it free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    assignment: Vec<Option<bool>>,
}

impl Restriction {
    pub fn new(assignment: Vec<Option<bool>>) -> Self {
        Restriction { assignment }
    }

    /// A restriction on `n` variables fixing only the listed ones.
    pub fn fixing(n: usize, fixed: &[(usize, bool)]) -> Self {
        let mut assignment = vec![None; n];
        for &(i, b) in fixed {
            assignment[i] = Some(b);
        }
        Restriction { assignment }
    }

    pub fn assignment(&self) -> &[Option<bool>] {
        &self.assignment
    }

    /// Number of fixed variables.
    pub fn size(&self) -> usize {
        self.assignment.iter().filter(|a| a.is_some()).count()
    }

    pub fn free_vars(&self) -> Vec<usize> {
        (0..self.assignment.len()).filter(|&i| self.assignment[i].is_none()).collect()
    }
}

/// Direction in which a unate function depends on one variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Increasing,
    Decreasing,
    Irrelevant,
}

/// Weights of the full Hamming slices on which `f` is constantly 0 and constantly 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceProfile {
    pub zero: Vec<usize>,
    pub one: Vec<usize>,
}

#[inline]
pub fn weight(x: usize) -> usize {
    x.count_ones() as usize
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

impl BooleanFunction {
    /// Builds a function from its domain and value bitsets; values outside the domain are cleared.
    pub fn new(n: usize, domain: Bits, values: Bits) -> Result<Self> {
        check_vars(n)?;
        let size = 1usize << n;
        if domain.len() != size || values.len() != size {
            return Err(Error::DimensionMismatch {
                expected: size,
                got: if domain.len() != size { domain.len() } else { values.len() },
            });
        }
        if domain.count_ones() == 0 {
            return Err(Error::EmptyDomain);
        }
        let values = values.and(&domain);
        Ok(BooleanFunction { n, domain, values })
    }

    pub fn total(n: usize, values: Bits) -> Result<Self> {
        Self::new(n, Bits::ones(1 << n), values)
    }

    pub fn from_fn(n: usize, f: impl Fn(usize) -> bool) -> Result<Self> {
        check_vars(n)?;
        Self::total(n, Bits::from_fn(1 << n, f))
    }

    /// Partial function from a closure returning `None` outside the domain.
    pub fn partial_from_fn(n: usize, f: impl Fn(usize) -> Option<bool>) -> Result<Self> {
        check_vars(n)?;
        let size = 1usize << n;
        let table: Vec<Option<bool>> = (0..size).map(f).collect();
        Self::new(
            n,
            Bits::from_fn(size, |i| table[i].is_some()),
            Bits::from_fn(size, |i| table[i] == Some(true)),
        )
    }

    pub fn constant(n: usize, value: bool) -> Result<Self> {
        Self::from_fn(n, |_| value)
    }

    /// The dictator `x_{i+1}` on `n` variables.
    pub fn dictator(n: usize, i: usize) -> Result<Self> {
        if i >= n {
            return Err(bad(format!("dictator index {i} out of range for n = {n}")));
        }
        Self::from_fn(n, |x| x >> i & 1 == 1)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn size(&self) -> usize {
        1 << self.n
    }

    pub fn domain(&self) -> &Bits {
        &self.domain
    }

    pub fn values(&self) -> &Bits {
        &self.values
    }

    #[inline]
    pub fn in_domain(&self, x: usize) -> bool {
        self.domain.get(x)
    }

    /// Value at `x`; meaningful only inside the domain.
    #[inline]
    pub fn value(&self, x: usize) -> bool {
        self.values.get(x)
    }

    /// `Some(f(x))` on the domain, `None` outside.
    #[inline]
    pub fn eval(&self, x: usize) -> Option<bool> {
        if self.domain.get(x) {
            Some(self.values.get(x))
        } else {
            None
        }
    }

    pub fn is_total(&self) -> bool {
        self.domain.all()
    }

    pub fn domain_points(&self) -> impl Iterator<Item = usize> + '_ {
        self.domain.iter_ones()
    }

    /// Domain points where the function takes value `b`.
    pub fn preimage(&self, b: bool) -> Vec<usize> {
        self.domain_points().filter(|&x| self.value(x) == b).collect()
    }

    /// True when the function is constant on its domain.
    pub fn is_constant(&self) -> bool {
        let ones = self.values.count_ones();
        ones == 0 || ones == self.domain.count_ones()
    }

    pub(crate) fn require_total(&self, what: &str) -> Result<()> {
        if self.is_total() {
            Ok(())
        } else {
            Err(Error::PartialNotSupported(what.to_string()))
        }
    }

    pub fn negate_output(&self) -> BooleanFunction {
        BooleanFunction {
            n: self.n,
            domain: self.domain.clone(),
            values: self.values.not().and(&self.domain),
        }
    }

    /// Applies `f` after negating the listed (0-based) inputs.
    pub fn negate_inputs(&self, vars: &[usize]) -> Result<BooleanFunction> {
        let mut mask = 0usize;
        for &v in vars {
            if v >= self.n {
                return Err(bad(format!("variable {} out of range for n = {}", v + 1, self.n)));
            }
            mask |= 1 << v;
        }
        Ok(self.negate_inputs_mask(mask))
    }

    pub fn negate_inputs_mask(&self, mask: usize) -> BooleanFunction {
        let size = self.size();
        BooleanFunction {
            n: self.n,
            domain: Bits::from_fn(size, |x| self.domain.get(x ^ mask)),
            values: Bits::from_fn(size, |x| self.values.get(x ^ mask)),
        }
    }

    /// Renames variables: variable `i` of the result is variable `perm[i]` of `self`.
    pub fn permute_inputs(&self, perm: &[usize]) -> Result<BooleanFunction> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: perm.len() });
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || seen[p] {
                return Err(bad("not a permutation"));
            }
            seen[p] = true;
        }
        let map = |x: usize| {
            let mut y = 0usize;
            for (i, &p) in perm.iter().enumerate() {
                if x >> i & 1 == 1 {
                    y |= 1 << p;
                }
            }
            y
        };
        let size = self.size();
        Ok(BooleanFunction {
            n: self.n,
            domain: Bits::from_fn(size, |x| self.domain.get(map(x))),
            values: Bits::from_fn(size, |x| self.values.get(map(x))),
        })
    }

    pub fn restrict(&self, rho: &Restriction) -> Result<BooleanFunction> {
        if rho.assignment.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: rho.assignment.len() });
        }
        let free = rho.free_vars();
        if free.is_empty() {
            return Err(bad("restriction must leave at least one variable free"));
        }
        let mut base = 0usize;
        for (i, a) in rho.assignment.iter().enumerate() {
            if *a == Some(true) {
                base |= 1 << i;
            }
        }
        let lift = |y: usize| {
            let mut x = base;
            for (j, &v) in free.iter().enumerate() {
                if y >> j & 1 == 1 {
                    x |= 1 << v;
                }
            }
            x
        };
        let size = 1usize << free.len();
        let domain = Bits::from_fn(size, |y| self.domain.get(lift(y)));
        if domain.count_ones() == 0 {
            return Err(Error::EmptyDomain);
        }
        let values = Bits::from_fn(size, |y| self.values.get(lift(y)));
        BooleanFunction::new(free.len(), domain, values)
    }

    /// `f(g_1(x^1), ..., g_m(x^m))` with the blocks `x^i` laid out consecutively.
    pub fn compose_disjoint(&self, gs: &[BooleanFunction]) -> Result<BooleanFunction> {
        if gs.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: gs.len() });
        }
        self.require_total("compose_disjoint")?;
        for g in gs {
            g.require_total("compose_disjoint")?;
        }
        let total: usize = gs.iter().map(|g| g.n).sum();
        check_vars(total)?;
        let offsets: Vec<usize> = gs
            .iter()
            .scan(0, |acc, g| {
                let o = *acc;
                *acc += g.n;
                Some(o)
            })
            .collect();
        BooleanFunction::from_fn(total, |x| {
            let mut outer = 0usize;
            for (i, g) in gs.iter().enumerate() {
                let block = (x >> offsets[i]) & ((1 << g.n) - 1);
                if g.value(block) {
                    outer |= 1 << i;
                }
            }
            self.value(outer)
        })
    }

    fn binary_compose(&self, g: &BooleanFunction, op: impl Fn(bool, bool) -> bool) -> Result<BooleanFunction> {
        self.require_total("composition")?;
        g.require_total("composition")?;
        check_vars(self.n + g.n)?;
        let lo = (1usize << self.n) - 1;
        BooleanFunction::from_fn(self.n + g.n, |x| op(self.value(x & lo), g.value(x >> self.n)))
    }

    /// `(f ∧ g)(x, y) = f(x) ∧ g(y)` on disjoint variables, `x` first.
    pub fn and_compose(&self, g: &BooleanFunction) -> Result<BooleanFunction> {
        self.binary_compose(g, |a, b| a && b)
    }

    /// `(f ∨ g)(x, y) = f(x) ∨ g(y)` on disjoint variables, `x` first.
    pub fn or_compose(&self, g: &BooleanFunction) -> Result<BooleanFunction> {
        self.binary_compose(g, |a, b| a || b)
    }

    /// Full Hamming slices contained in the domain on which `f` is constant.
    pub fn slice_profile(&self) -> SliceProfile {
        let n = self.n;
        let mut in_dom = vec![0usize; n + 1];
        let mut ones = vec![0usize; n + 1];
        for x in 0..self.size() {
            if self.domain.get(x) {
                let w = weight(x);
                in_dom[w] += 1;
                if self.values.get(x) {
                    ones[w] += 1;
                }
            }
        }
        let mut profile = SliceProfile { zero: vec![], one: vec![] };
        for k in 0..=n {
            if in_dom[k] != binomial(n, k) {
                continue;
            }
            if ones[k] == 0 {
                profile.zero.push(k);
            } else if ones[k] == in_dom[k] {
                profile.one.push(k);
            }
        }
        profile
    }

    /// Invariance of domain and values under all variable permutations.
    pub fn is_symmetric(&self) -> bool {
        // (domain membership, value) of the first point seen on each slice
        let mut seen: Vec<Option<(bool, bool)>> = vec![None; self.n + 1];
        for x in 0..self.size() {
            let w = weight(x);
            let cur = (self.domain.get(x), self.values.get(x));
            match seen[w] {
                None => seen[w] = Some(cur),
                Some(prev) if prev != cur => return false,
                _ => {}
            }
        }
        true
    }

    /// Whether swapping variables `i` and `j` leaves domain and values unchanged.
    pub fn invariant_under_swap(&self, i: usize, j: usize) -> bool {
        let (bi, bj) = (1usize << i, 1usize << j);
        (0..self.size()).all(|x| {
            if (x & bi != 0) == (x & bj != 0) {
                return true;
            }
            let y = x ^ bi ^ bj;
            self.domain.get(x) == self.domain.get(y) && self.values.get(x) == self.values.get(y)
        })
    }

    pub fn is_monotone(&self) -> Result<bool> {
        self.require_total("monotonicity")?;
        Ok((0..self.n).all(|i| matches!(self.orientation(i), Some(Orientation::Increasing | Orientation::Irrelevant))))
    }

    /// `None` when the function is not unate in variable `i`.
    fn orientation(&self, i: usize) -> Option<Orientation> {
        let bit = 1usize << i;
        let (mut up, mut down) = (false, false);
        for x in (0..self.size()).filter(|x| x & bit == 0) {
            match (self.values.get(x), self.values.get(x | bit)) {
                (false, true) => up = true,
                (true, false) => down = true,
                _ => {}
            }
            if up && down {
                return None;
            }
        }
        Some(match (up, down) {
            (true, false) => Orientation::Increasing,
            (false, true) => Orientation::Decreasing,
            _ => Orientation::Irrelevant,
        })
    }

    /// The per-variable orientation if `f` is unate, `None` otherwise.
    pub fn is_unate(&self) -> Result<Option<Vec<Orientation>>> {
        self.require_total("unateness")?;
        Ok((0..self.n).map(|i| self.orientation(i)).collect())
    }

    /// Variables the function depends on (within its domain).
    pub fn relevant_vars(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&i| {
                let bit = 1usize << i;
                (0..self.size()).any(|x| {
                    x & bit == 0
                        && self.domain.get(x)
                        && self.domain.get(x | bit)
                        && self.values.get(x) != self.values.get(x | bit)
                })
            })
            .collect()
    }

    /// Bit string with index 0 first.
    pub fn table_string(&self) -> String {
        (0..self.size())
            .map(|x| match self.eval(x) {
                None => '*',
                Some(true) => '1',
                Some(false) => '0',
            })
            .collect()
    }
}

/// Named function families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Parity,
    And,
    Or,
    /// `Thr_k`: 1 iff `|x| ≥ k`.
    Thr,
    /// Strict majority: 1 iff `|x| > n/2`.
    Maj,
    /// Exact half: 1 iff `|x| = n/2`.
    Eh,
    EhBar,
    /// Middle third: 1 iff `n/3 ≤ |x| ≤ 2n/3`.
    Mt,
    /// Majority-or-none, partial on `|x| = 0` or `|x| ≥ n/2`.
    Majn,
    /// Boolean imbalance on `n = 4m + 2` variables, partial.
    Bi,
    /// `AND_a ∘ OR_b` on `a·b` variables.
    AndOr,
    Const,
}

impl Family {
    pub fn from_name(name: &str) -> Result<Family> {
        Ok(match name.to_ascii_lowercase().as_str() {
            "parity" | "xor" => Family::Parity,
            "and" => Family::And,
            "or" => Family::Or,
            "thr" => Family::Thr,
            "maj" => Family::Maj,
            "eh" => Family::Eh,
            "ehbar" => Family::EhBar,
            "mt" => Family::Mt,
            "majn" => Family::Majn,
            "bi" => Family::Bi,
            "andor" => Family::AndOr,
            "const" => Family::Const,
            other => return Err(Error::Parse(format!("unknown family `{other}`"))),
        })
    }
}

/// Builds a member of a named family. Parameters: `[n]` for most families,
/// `[k, n]` for `thr`, `[a, b]` for `andor`, `[b, n]` for `const`.
pub fn family(name: &str, params: &[usize]) -> Result<BooleanFunction> {
    let fam = Family::from_name(name)?;
    let arity = match fam {
        Family::Thr | Family::AndOr | Family::Const => 2,
        _ => 1,
    };
    if params.len() != arity {
        return Err(bad(format!("{name} expects {arity} parameter(s), got {}", params.len())));
    }
    let n = *params.last().unwrap();
    let need_n = |min: usize| -> Result<()> {
        if n < min {
            return Err(bad(format!("{name} requires n ≥ {min}")));
        }
        check_vars(n)
    };
    match fam {
        Family::Parity => {
            need_n(1)?;
            BooleanFunction::from_fn(n, |x| weight(x) % 2 == 1)
        }
        Family::And => {
            need_n(1)?;
            BooleanFunction::from_fn(n, |x| weight(x) == n)
        }
        Family::Or => {
            need_n(1)?;
            BooleanFunction::from_fn(n, |x| x != 0)
        }
        Family::Thr => {
            need_n(1)?;
            let k = params[0];
            if k == 0 || k > n {
                return Err(bad(format!("thr requires 1 ≤ k ≤ n, got k = {k}, n = {n}")));
            }
            BooleanFunction::from_fn(n, |x| weight(x) >= k)
        }
        Family::Maj => {
            need_n(1)?;
            BooleanFunction::from_fn(n, |x| 2 * weight(x) > n)
        }
        Family::Eh | Family::EhBar => {
            need_n(2)?;
            if n % 2 != 0 {
                return Err(bad(format!("{name} requires n even, got {n}")));
            }
            let neg = fam == Family::EhBar;
            BooleanFunction::from_fn(n, |x| (weight(x) == n / 2) != neg)
        }
        Family::Mt => {
            need_n(3)?;
            if n % 3 != 0 {
                return Err(bad(format!("mt requires 3 | n, got {n}")));
            }
            BooleanFunction::from_fn(n, |x| (n / 3..=2 * n / 3).contains(&weight(x)))
        }
        Family::Majn => {
            need_n(2)?;
            BooleanFunction::partial_from_fn(n, |x| {
                let w = weight(x);
                if w == 0 {
                    Some(false)
                } else if 2 * w >= n {
                    Some(true)
                } else {
                    None
                }
            })
        }
        Family::Bi => {
            need_n(6)?;
            if n % 4 != 2 {
                return Err(bad(format!("bi requires n = 4m + 2, got {n}")));
            }
            let m = (n - 2) / 4;
            let half = 2 * m + 1;
            let lo = (1usize << half) - 1;
            BooleanFunction::partial_from_fn(n, |x| {
                let (wl, wr) = (weight(x & lo), weight(x >> half));
                if wl == m && wr == m {
                    Some(false)
                } else if wl + wr == 2 * m + 1 && wl >= m && wr >= m {
                    Some(true)
                } else {
                    None
                }
            })
        }
        Family::AndOr => {
            let (a, b) = (params[0], params[1]);
            if a == 0 || b == 0 {
                return Err(bad("andor fan-ins must be positive"));
            }
            check_vars(a * b)?;
            let block = (1usize << b) - 1;
            BooleanFunction::from_fn(a * b, |x| (0..a).all(|i| (x >> (i * b)) & block != 0))
        }
        Family::Const => {
            need_n(1)?;
            if params[0] > 1 {
                return Err(bad("const value must be 0 or 1"));
            }
            BooleanFunction::constant(n, params[0] == 1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> Bits {
        // examples are written with the highest index on the left
        Bits::from_str_lsb_first(&s.chars().rev().collect::<String>()).unwrap()
    }

    #[test]
    fn make_function_examples() {
        let id = BooleanFunction::new(1, bits("11"), bits("10")).unwrap();
        assert_eq!(id, BooleanFunction::dictator(1, 0).unwrap());
        let and2 = BooleanFunction::new(2, bits("1111"), bits("1000")).unwrap();
        assert_eq!(and2, family("and", &[2]).unwrap());
        let slice1 = BooleanFunction::new(2, bits("0110"), bits("0110")).unwrap();
        assert!(!slice1.is_total());
        assert_eq!(slice1.preimage(true), vec![1, 2]);
        assert!(slice1.preimage(false).is_empty());
    }

    #[test]
    fn make_function_errors() {
        assert_eq!(BooleanFunction::new(2, Bits::zeros(4), Bits::zeros(4)), Err(Error::EmptyDomain));
        assert!(matches!(BooleanFunction::constant(21, true), Err(Error::CapExceeded { .. })));
        let canon = BooleanFunction::new(2, bits("0001"), bits("1111")).unwrap();
        assert_eq!(canon.values().count_ones(), 1);
    }

    #[test]
    fn family_examples() {
        let mt6 = family("mt", &[6]).unwrap();
        for x in 0..64 {
            assert_eq!(mt6.value(x), (2..=4).contains(&weight(x)));
        }
        let majn4 = family("majn", &[4]).unwrap();
        for x in 0..16usize {
            let w = weight(x);
            assert_eq!(majn4.in_domain(x), w == 0 || w >= 2);
        }
        assert!(!majn4.value(0));
        assert!(majn4.preimage(true).iter().all(|&x| weight(x) >= 2));
        let andor = family("andor", &[2, 2]).unwrap();
        for x in 0..16usize {
            let b = |i: usize| x >> i & 1 == 1;
            assert_eq!(andor.value(x), (b(0) || b(1)) && (b(2) || b(3)));
        }
    }

    #[test]
    fn family_bad_params() {
        assert!(matches!(family("mt", &[7]), Err(Error::BadParams(_))));
        assert!(matches!(family("eh", &[5]), Err(Error::BadParams(_))));
        assert!(matches!(family("bi", &[8]), Err(Error::BadParams(_))));
        assert!(matches!(family("majn", &[1]), Err(Error::BadParams(_))));
        assert!(family("nosuch", &[3]).is_err());
    }

    #[test]
    fn bi_conventions() {
        let bi = family("bi", &[6]).unwrap();
        // m = 1: halves of 3 bits
        let pt = |l: usize, r: usize| l | (r << 3);
        assert_eq!(bi.eval(pt(0b001, 0b010)), Some(false));
        assert_eq!(bi.eval(pt(0b011, 0b100)), Some(true));
        assert_eq!(bi.eval(pt(0b001, 0b110)), Some(true));
        assert_eq!(bi.eval(pt(0b000, 0b000)), None);
        assert_eq!(bi.eval(pt(0b011, 0b011)), None);
    }

    #[test]
    fn negation_examples() {
        let and2 = family("and", &[2]).unwrap();
        let nand = and2.negate_output();
        assert_eq!(nand.table_string(), "1110");
        let nor = and2.negate_inputs(&[0, 1]).unwrap();
        assert_eq!(nor.table_string(), "1000");
        let p3 = family("parity", &[3]).unwrap();
        assert_eq!(p3.negate_inputs(&[1]).unwrap(), p3.negate_output());
    }

    #[test]
    fn restrict_examples() {
        let and3 = family("and", &[3]).unwrap();
        let r = Restriction::fixing(3, &[(2, true)]);
        assert_eq!(and3.restrict(&r).unwrap(), family("and", &[2]).unwrap());
        let or3 = family("or", &[3]).unwrap();
        assert_eq!(or3.restrict(&r).unwrap(), BooleanFunction::constant(2, true).unwrap());
        let mt3 = family("mt", &[3]).unwrap();
        let g = mt3.restrict(&Restriction::fixing(3, &[(2, false)])).unwrap();
        assert_eq!(g.table_string(), "0111");
        let majn = family("majn", &[4]).unwrap();
        let empty = majn.restrict(&Restriction::fixing(4, &[(0, false), (1, false), (2, false)]));
        assert!(empty.is_ok());
        assert_eq!(
            BooleanFunction::partial_from_fn(2, |x| if x == 3 { Some(true) } else { None })
                .unwrap()
                .restrict(&Restriction::fixing(2, &[(0, false)])),
            Err(Error::EmptyDomain)
        );
    }

    #[test]
    fn composition_examples() {
        let and2 = family("and", &[2]).unwrap();
        let or2 = family("or", &[2]).unwrap();
        let andor = family("andor", &[2, 2]).unwrap();
        assert_eq!(and2.compose_disjoint(&[or2.clone(), or2.clone()]).unwrap(), andor);
        assert_eq!(or2.and_compose(&or2).unwrap(), andor);
        let x1 = BooleanFunction::dictator(1, 0).unwrap();
        assert_eq!(x1.and_compose(&x1).unwrap(), and2);
        let p3 = family("parity", &[3]).unwrap();
        assert_eq!(x1.compose_disjoint(&[p3.clone()]).unwrap(), p3);
        let oo = and2.or_compose(&and2).unwrap();
        for x in 0..16usize {
            assert_eq!(oo.value(x), (x & 3 == 3) || (x >> 2 == 3));
        }
        let sep = and2
            .compose_disjoint(&[family("ehbar", &[2]).unwrap(), family("ehbar", &[2]).unwrap()])
            .unwrap();
        assert_eq!(sep.n(), 4);
        assert!(sep.value(0b0000) && sep.value(0b1111) && !sep.value(0b0001));
    }

    #[test]
    fn slice_profile_examples() {
        let p = family("mt", &[6]).unwrap().slice_profile();
        assert_eq!((p.zero, p.one), (vec![0, 1, 5, 6], vec![2, 3, 4]));
        let p = family("majn", &[4]).unwrap().slice_profile();
        assert_eq!((p.zero, p.one), (vec![0], vec![2, 3, 4]));
        let p = family("parity", &[2]).unwrap().slice_profile();
        assert_eq!((p.zero, p.one), (vec![0, 2], vec![1]));
    }

    #[test]
    fn predicates() {
        let and3 = family("and", &[3]).unwrap();
        assert!(and3.is_monotone().unwrap());
        let u = and3.negate_inputs(&[1]).unwrap();
        assert!(!u.is_monotone().unwrap());
        assert_eq!(
            u.is_unate().unwrap(),
            Some(vec![Orientation::Increasing, Orientation::Decreasing, Orientation::Increasing])
        );
        assert_eq!(family("parity", &[2]).unwrap().is_unate().unwrap(), None);
        assert!(!family("andor", &[2, 2]).unwrap().is_symmetric());
        assert!(family("majn", &[6]).unwrap().is_symmetric());
        assert!(matches!(family("majn", &[4]).unwrap().is_monotone(), Err(Error::PartialNotSupported(_))));
    }

    #[test]
    fn hex_round_trip() {
        let f = family("mt", &[6]).unwrap();
        let h = f.values().to_hex();
        assert_eq!(Bits::from_hex(&h, 64).unwrap(), *f.values());
        assert_eq!(family("and", &[2]).unwrap().values().to_hex(), "8");
        assert_eq!(family("and", &[1]).unwrap().values().to_hex(), "2");
    }
}
