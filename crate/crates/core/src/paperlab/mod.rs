//! Per-instance checkers for the bounds and identities on rational degree, plus
//! the witness constructions they rely on.
//!
//! Claim ids (`prop:3.2`, `lemma:4.2`, ...) are stable identifiers of the
//! checkers on the command line and in verdict JSON.

pub mod witnesses;

pub use witnesses::{
    andor_rational_rep, bi_rational_witness, ehbar_witness, mt_complement_witness, mt_existence_witness,
    separation_function, separation_report, verifies_ndeg, verifies_rational,
};

use crate::boolfn::{family, BooleanFunction};
use crate::error::{bad, check_cap, Error, Result};
use crate::experiments::{self, generate};
use crate::fnspec::{parse_function_spec, parse_var_list};
use crate::formula::ReadOnceFormula;
use crate::measures::{
    and_dimension, approx_degree, avoidance_combine, deg, ndeg, one_sided_sensitivity, or_dimension, rdeg,
    sensitivity, spectral_sensitivity,
};
use crate::poly::{fmt_q, PolyJson, Q};
use crate::postsim;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use std::collections::BTreeSet;
use std::str::FromStr;

/// Outcome of one checker on one instance (or one class of instances).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub claim: String,
    pub instance: String,
    pub holds: bool,
    pub lhs: String,
    pub rhs: String,
    pub witnesses: Vec<PolyJson>,
}

impl Verdict {
    pub fn new(claim: &str, instance: impl Into<String>, holds: bool, lhs: impl ToString, rhs: impl ToString) -> Self {
        Verdict {
            claim: claim.into(),
            instance: instance.into(),
            holds,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            witnesses: vec![],
        }
    }

    fn with_witnesses(mut self, ws: impl IntoIterator<Item = PolyJson>) -> Self {
        self.witnesses.extend(ws);
        self
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("verdict JSON")
    }
}

pub const CLAIMS: [&str; 23] = [
    "lemma:3.1", "prop:3.2", "prop:3.3", "fact:3.7", "claim:3.8", "cor:3.9", "claim:3.10", "cor:3.11",
    "lemma:3.12", "lemma:3.13", "cor:3.14", "cor:3.15", "cor:3.16", "cor:3.20", "prop:4.1", "lemma:4.2",
    "prop:4.3", "cor:4.4", "prop:5.2", "thm:6.1", "lemma:6.4", "prop:B.1", "fact:B.2",
];

/// Runs the checker for `claim` on the instance described by `params`.
///
/// Function arguments use the function-spec grammar; `all:N` stands for every
/// function on `N` variables in the class the claim is about.
pub fn check(claim: &str, params: &str) -> Result<Verdict> {
    let params = params.trim();
    match claim {
        "lemma:3.1" => per_function(claim, params, Class::Symmetric, slice_bound_verdict),
        "prop:3.2" => per_function(claim, params, Class::Symmetric, symmetric_degree_verdict),
        "prop:3.3" => middle_third_verdict(parse_usize(params)?),
        "fact:3.7" => experiments::middle_third_verdict(parse_usize(params)? as u64),
        "claim:3.8" => per_function(claim, params, Class::Monotone, monotone_sensitivity_verdict),
        "cor:3.9" => per_function(claim, params, Class::Monotone, monotone_equality_verdict),
        "claim:3.10" => negation_verdict(params),
        "cor:3.11" => per_function(claim, params, Class::Unate, unate_verdict),
        "lemma:3.12" => trickle_down_verdict(params),
        "lemma:3.13" => branching_verdict(&parse_formula(params)?),
        "cor:3.14" => depth_verdict(claim, &parse_formula(params)?, false),
        "cor:3.15" => depth_verdict(claim, &parse_formula(params)?, true),
        "cor:3.16" => threshold_formula_verdict(&parse_formula(params)?),
        "cor:3.20" => {
            let v = parse_usize_list(params)?;
            let [n, count, seed] = v[..] else {
                return Err(Error::Parse(format!("cor:3.20 expects n,count,seed, got `{params}`")));
            };
            Ok(experiments::census(n, count, seed as u64)?.verdict())
        }
        "prop:4.1" | "prop:4.3" | "cor:4.4" => composition_verdict(claim, params),
        "lemma:4.2" => avoidance_verdict(params),
        "prop:5.2" => separation_verdict(parse_usize(params)?),
        "thm:6.1" => majority_or_none_verdict(parse_usize(params)?),
        "lemma:6.4" => imbalance_verdict(parse_usize(params)?),
        "prop:B.1" => dimension_verdict(&parse_formula(params)?),
        "fact:B.2" => sorted_sums_verdict(params),
        other => Err(Error::UnknownClaim(other.to_string())),
    }
}

fn parse_usize(s: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| Error::Parse(format!("expected a non-negative integer, got `{s}`")))
}

fn parse_usize_list(s: &str) -> Result<Vec<usize>> {
    s.split([',', ';']).map(parse_usize).collect()
}

fn parse_q_list(s: &str) -> Result<Vec<Q>> {
    s.split(',')
        .map(|t| Q::from_str(t.trim()).map_err(|_| Error::Parse(format!("bad rational `{t}`"))))
        .collect()
}

fn parse_formula(s: &str) -> Result<ReadOnceFormula> {
    ReadOnceFormula::parse(s.trim().strip_prefix("ro:").unwrap_or(s.trim()))
}

/// Splits a list of function specs on `;`, or on `,` when no `;` is present.
/// With `,` a purely numeric token continues the input-negation list of the
/// previous spec, so `and:3~1,2,or:2` is two specs.
pub fn split_specs(params: &str) -> Vec<String> {
    if params.contains(';') {
        return params.split(';').map(|s| s.trim().to_string()).collect();
    }
    let mut out: Vec<String> = vec![];
    for tok in params.split(',').map(str::trim) {
        match out.last_mut() {
            Some(prev) if prev.contains('~') && !tok.is_empty() && tok.bytes().all(|b| b.is_ascii_digit()) => {
                prev.push(',');
                prev.push_str(tok);
            }
            _ => out.push(tok.to_string()),
        }
    }
    out
}

fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

/// Smallest `r` with `r² ≥ x`.
pub fn ceil_sqrt(x: usize) -> usize {
    (0..=x).find(|r| r * r >= x).unwrap_or(x)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Class {
    Symmetric,
    Monotone,
    Unate,
}

/// `all:N` expanded within `class`, or a single parsed spec.
fn instances(params: &str, class: Class) -> Result<Vec<(String, BooleanFunction)>> {
    let Some(n) = params.strip_prefix("all:") else {
        return Ok(vec![(params.to_string(), parse_function_spec(params)?)]);
    };
    let n = parse_usize(n)?;
    let fs = match class {
        Class::Symmetric => {
            check_cap(n, 10)?;
            generate::symmetric_functions(n)
        }
        Class::Monotone => {
            check_cap(n, 5)?;
            generate::monotone_functions(n)
        }
        Class::Unate => {
            check_cap(n, 4)?;
            unate_functions(n)
        }
    };
    Ok(fs.into_iter().map(|f| (format!("n={n}:{}", f.table_string()), f)).collect())
}

/// Every unate function on `n` variables (monotone functions under all input negations).
pub fn unate_functions(n: usize) -> Vec<BooleanFunction> {
    let mut seen = BTreeSet::new();
    let mut out = vec![];
    for f in generate::monotone_functions(n.min(5)) {
        for mask in 0..1usize << n {
            let g = f.negate_inputs_mask(mask);
            if seen.insert(g.table_string()) {
                out.push(g);
            }
        }
    }
    out
}

/// Folds per-instance verdicts: holds iff all hold; lhs/rhs count holding instances.
fn aggregate(claim: &str, description: &str, mut vs: Vec<Verdict>) -> Verdict {
    if vs.len() == 1 {
        return vs.pop().unwrap();
    }
    let good = vs.iter().filter(|v| v.holds).count();
    let mut instance = format!("{description} ({} instances)", vs.len());
    if let Some(v) = vs.iter().find(|v| !v.holds) {
        instance.push_str(&format!("; first failure {}: {} vs {}", v.instance, v.lhs, v.rhs));
    }
    Verdict::new(claim, instance, good == vs.len(), good, vs.len())
}

fn per_function(
    claim: &str,
    params: &str,
    class: Class,
    one: fn(&str, &BooleanFunction) -> Result<Verdict>,
) -> Result<Verdict> {
    let vs = instances(params, class)?.iter().map(|(label, f)| one(label, f)).collect::<Result<Vec<_>>>()?;
    if vs.is_empty() {
        return Err(bad(format!("{params} has no instances")));
    }
    Ok(aggregate(claim, params, vs))
}

fn require_nonconstant(f: &BooleanFunction) -> Result<()> {
    if f.is_constant() {
        Err(bad("the function must be non-constant"))
    } else {
        Ok(())
    }
}

fn is_monotone_either_way(f: &BooleanFunction) -> Result<bool> {
    Ok(f.is_monotone()? || f.negate_inputs_mask((1 << f.n()) - 1).is_monotone()?)
}

/// `⌈½ max(|S0|, |S1|)⌉` over the full constant slices of `f`.
pub fn slice_bound(f: &BooleanFunction) -> usize {
    let prof = f.slice_profile();
    ceil_div(prof.zero.len().max(prof.one.len()), 2)
}

fn slice_bound_verdict(label: &str, f: &BooleanFunction) -> Result<Verdict> {
    require_nonconstant(f)?;
    let r = rdeg(f);
    let bound = slice_bound(f);
    Ok(Verdict::new("lemma:3.1", label, r.value >= bound, r.value, bound).with_witnesses([r.p.to_json(), r.q.to_json()]))
}

fn symmetric_degree_verdict(label: &str, f: &BooleanFunction) -> Result<Verdict> {
    require_nonconstant(f)?;
    if !f.is_total() || !f.is_symmetric() {
        return Err(bad(format!("{label} is not a total symmetric function")));
    }
    let r = rdeg(f);
    let bound = ceil_div(deg(f)? + 1, 3);
    Ok(Verdict::new("prop:3.2", label, r.value >= bound, r.value, bound).with_witnesses([r.p.to_json(), r.q.to_json()]))
}

fn middle_third_verdict(n: usize) -> Result<Verdict> {
    let complement = mt_complement_witness(n)?;
    let existence = mt_existence_witness(n)?;
    let f = family("mt", &[n])?;
    let r = rdeg(&f);
    let holds = r.value <= n / 3 + 1 && r.ndeg <= n / 3 && complement.degree() == n / 3 + 1 && existence.degree() <= n / 3;
    Ok(Verdict::new(
        "prop:3.3",
        format!("mt:{n}"),
        holds,
        format!("rdeg={},ndeg={}", r.value, r.ndeg),
        format!("rdeg<={},ndeg<={}", n / 3 + 1, n / 3),
    )
    .with_witnesses([existence.to_json(), complement.to_json()]))
}

fn monotone_sensitivity_verdict(label: &str, f: &BooleanFunction) -> Result<Verdict> {
    if !is_monotone_either_way(f)? {
        return Err(bad(format!("{label} is not monotone")));
    }
    let (s0, s1) = (one_sided_sensitivity(f, false), one_sided_sensitivity(f, true));
    let (n0, n1) = (ndeg(&f.negate_output()).value, ndeg(f).value);
    Ok(Verdict::new(
        "claim:3.8",
        label,
        s0 <= n0 && s1 <= n1,
        format!("s0={s0},s1={s1}"),
        format!("ndeg(not f)={n0},ndeg(f)={n1}"),
    ))
}

fn monotone_equality_verdict(label: &str, f: &BooleanFunction) -> Result<Verdict> {
    if !is_monotone_either_way(f)? {
        return Err(bad(format!("{label} is not monotone")));
    }
    let r = rdeg(f);
    let s = sensitivity(f);
    let d = deg(f)?;
    Ok(Verdict::new("cor:3.9", format!("{label},deg={d}"), r.value == s && r.value * r.value >= d, r.value, s)
        .with_witnesses([r.p.to_json(), r.q.to_json()]))
}

fn negation_verdict(params: &str) -> Result<Verdict> {
    if let Some(n) = params.strip_prefix("all:") {
        let n = parse_usize(n)?;
        check_cap(n, 3)?;
        let mut vs = vec![];
        for table in 0u64..1 << (1 << n) {
            let f = BooleanFunction::from_fn(n, |x| table >> x & 1 == 1)?;
            let base = rdeg(&f).value;
            for mask in 1..1usize << n {
                let other = rdeg(&f.negate_inputs_mask(mask)).value;
                vs.push(Verdict::new("claim:3.10", format!("{};mask={mask:b}", f.table_string()), base == other, base, other));
            }
        }
        return Ok(aggregate("claim:3.10", params, vs));
    }
    let (spec, vars) = params
        .split_once(';')
        .ok_or_else(|| Error::Parse(format!("claim:3.10 expects SPEC;VARS, got `{params}`")))?;
    let f = parse_function_spec(spec)?;
    let g = f.negate_inputs(&parse_var_list(vars)?)?;
    let (a, b) = (rdeg(&f), rdeg(&g));
    Ok(Verdict::new("claim:3.10", params, a.value == b.value, a.value, b.value)
        .with_witnesses([b.p.to_json(), b.q.to_json()]))
}

fn unate_verdict(label: &str, f: &BooleanFunction) -> Result<Verdict> {
    if f.is_unate()?.is_none() {
        return Err(bad(format!("{label} is not unate")));
    }
    let r = rdeg(f);
    let d = deg(f)?;
    Ok(Verdict::new("cor:3.11", format!("{label},deg={d}"), r.value * r.value >= d, r.value, ceil_sqrt(d)))
}

fn trickle_down_verdict(params: &str) -> Result<Verdict> {
    let specs = split_specs(params);
    let fs = specs.iter().map(|s| parse_function_spec(s)).collect::<Result<Vec<_>>>()?;
    let (outer, inner) = fs.split_first().ok_or_else(|| Error::Parse("lemma:3.12 expects f;g1;...".into()))?;
    for (s, f) in specs.iter().zip(&fs) {
        if f.relevant_vars().len() != f.n() {
            return Err(bad(format!("every variable of {s} must be relevant")));
        }
    }
    let h = outer.compose_disjoint(inner)?;
    let r = rdeg(&h);
    let parts = fs.iter().map(|f| rdeg(f).value).max().unwrap_or(0);
    Ok(Verdict::new("lemma:3.12", params, r.value >= parts, r.value, parts).with_witnesses([r.p.to_json(), r.q.to_json()]))
}

fn formula_label(phi: &ReadOnceFormula) -> String {
    format!("ro:{phi}")
}

fn branching_verdict(phi: &ReadOnceFormula) -> Result<Verdict> {
    let stats = phi.stats()?;
    let f = phi.to_function()?;
    let r = rdeg(&f);
    let bound = ceil_div(stats.max_branching, 2);
    Ok(Verdict::new("lemma:3.13", format!("{},w={}", formula_label(phi), stats.max_branching), r.value >= bound, r.value, bound))
}

fn depth_verdict(claim: &str, phi: &ReadOnceFormula, allow_unate: bool) -> Result<Verdict> {
    let stats = phi.stats()?;
    let f = phi.to_function()?;
    let r = rdeg(&f).value;
    let w = stats.max_branching;
    let (gate_rdeg, bound) = match phi.widest_gate().gate_function() {
        None => (0, 0),
        Some(g) => {
            let mut bound = if g.is_symmetric() { slice_bound(&g) } else { 0 };
            if allow_unate && g.is_unate()?.is_some() {
                bound = bound.max(ceil_sqrt(deg(&g)?));
            }
            (rdeg(&g).value, bound)
        }
    };
    // some gate has fan-in at least m^{1/depth}
    let wide_enough = (w as u128).pow(stats.depth as u32) >= stats.vars as u128;
    Ok(Verdict::new(
        claim,
        format!("{},w={w},depth={},m={},gate rdeg={gate_rdeg}", formula_label(phi), stats.depth, stats.vars),
        wide_enough && r >= gate_rdeg && gate_rdeg >= bound,
        r,
        bound,
    ))
}

fn require_threshold(phi: &ReadOnceFormula) -> Result<()> {
    if phi.is_threshold_formula() {
        Ok(())
    } else {
        Err(bad(format!("{} uses a non-threshold gate", formula_label(phi))))
    }
}

fn threshold_formula_verdict(phi: &ReadOnceFormula) -> Result<Verdict> {
    require_threshold(phi)?;
    let m = phi.validate()?;
    let r = rdeg(&phi.to_function()?).value;
    Ok(Verdict::new("cor:3.16", format!("{},m={m}", formula_label(phi)), r * r >= m, r, ceil_sqrt(m)))
}

fn dimension_verdict(phi: &ReadOnceFormula) -> Result<Verdict> {
    require_threshold(phi)?;
    let m = phi.validate()?;
    let f = phi.to_function()?;
    let (a, o) = (and_dimension(&f)?, or_dimension(&f)?);
    let r = rdeg(&f).value;
    Ok(Verdict::new(
        "prop:B.1",
        format!("{},m={m}", formula_label(phi)),
        a * o >= m && r >= a.max(o),
        format!("dimand*dimor={},rdeg={r}", a * o),
        format!("m={m},max dim={}", a.max(o)),
    ))
}

/// Both sides of the AND/OR composition identities for non-constant `f`, `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompositionSides {
    pub ndeg_and: usize,
    pub ndeg_or: usize,
    pub rdeg_and: usize,
    pub rdeg_or: usize,
    pub ndeg_f: usize,
    pub ndeg_not_f: usize,
    pub ndeg_g: usize,
    pub ndeg_not_g: usize,
}

impl CompositionSides {
    pub fn compute(f: &BooleanFunction, g: &BooleanFunction) -> Result<Self> {
        require_nonconstant(f)?;
        require_nonconstant(g)?;
        let (and, or) = (f.and_compose(g)?, f.or_compose(g)?);
        Ok(CompositionSides {
            ndeg_and: ndeg(&and).value,
            ndeg_or: ndeg(&or).value,
            rdeg_and: rdeg(&and).value,
            rdeg_or: rdeg(&or).value,
            ndeg_f: ndeg(f).value,
            ndeg_not_f: ndeg(&f.negate_output()).value,
            ndeg_g: ndeg(g).value,
            ndeg_not_g: ndeg(&g.negate_output()).value,
        })
    }

    /// `ndeg(f∧g) = ndeg f + ndeg g`.
    pub fn and_rhs(&self) -> usize {
        self.ndeg_f + self.ndeg_g
    }

    /// `ndeg(f∨g) = max(ndeg f, ndeg g)`.
    pub fn or_rhs(&self) -> usize {
        self.ndeg_f.max(self.ndeg_g)
    }

    pub fn rdeg_and_rhs(&self) -> usize {
        (self.ndeg_f + self.ndeg_g).max(self.ndeg_not_f).max(self.ndeg_not_g)
    }

    pub fn rdeg_or_rhs(&self) -> usize {
        (self.ndeg_not_f + self.ndeg_not_g).max(self.ndeg_f).max(self.ndeg_g)
    }

    fn verdict(&self, claim: &str, instance: String) -> Verdict {
        match claim {
            "prop:4.1" => Verdict::new(claim, instance, self.ndeg_and == self.and_rhs(), self.ndeg_and, self.and_rhs()),
            "prop:4.3" => Verdict::new(claim, instance, self.ndeg_or == self.or_rhs(), self.ndeg_or, self.or_rhs()),
            _ => Verdict::new(
                claim,
                instance,
                self.rdeg_and == self.rdeg_and_rhs() && self.rdeg_or == self.rdeg_or_rhs(),
                format!("rdeg(and)={},rdeg(or)={}", self.rdeg_and, self.rdeg_or),
                format!("{},{}", self.rdeg_and_rhs(), self.rdeg_or_rhs()),
            ),
        }
    }
}

fn nonconstant_functions(n: usize) -> Result<Vec<BooleanFunction>> {
    check_cap(n, 2)?;
    (1u64..(1 << (1 << n)) - 1).map(|t| BooleanFunction::from_fn(n, |x| t >> x & 1 == 1)).collect()
}

fn composition_verdict(claim: &str, params: &str) -> Result<Verdict> {
    if let Some(n) = params.strip_prefix("all:") {
        let fs = nonconstant_functions(parse_usize(n)?)?;
        let mut vs = vec![];
        for f in &fs {
            for g in &fs {
                let sides = CompositionSides::compute(f, g)?;
                vs.push(sides.verdict(claim, format!("{},{}", f.table_string(), g.table_string())));
            }
        }
        return Ok(aggregate(claim, params, vs));
    }
    let specs = split_specs(params);
    let [f, g] = &specs[..] else {
        return Err(Error::Parse(format!("{claim} expects two functions, got `{params}`")));
    };
    let sides = CompositionSides::compute(&parse_function_spec(f)?, &parse_function_spec(g)?)?;
    Ok(sides.verdict(claim, params.to_string()))
}

fn avoidance_verdict(params: &str) -> Result<Verdict> {
    let rows = params.split(';').map(parse_q_list).collect::<Result<Vec<_>>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    if cols == 0 || rows.iter().any(|r| r.len() != cols) {
        return Err(bad("rows must be non-empty and of equal length"));
    }
    let alpha = avoidance_combine(&rows)?;
    let nonzero = (0..cols)
        .filter(|&c| !rows.iter().zip(&alpha).map(|(r, a)| &r[c] * a).sum::<Q>().is_zero())
        .count();
    let positive = alpha.iter().all(|a| a > &Q::zero());
    let shown = alpha.iter().map(fmt_q).collect::<Vec<_>>().join(",");
    Ok(Verdict::new("lemma:4.2", format!("{params};alpha=({shown})"), positive && nonzero == cols, nonzero, cols))
}

/// Slack on floating comparisons of λ against closed-form endpoints.
const LAMBDA_SLACK: f64 = 1e-6;

fn separation_verdict(n: usize) -> Result<Verdict> {
    let f = separation_function(n)?;
    let r = rdeg(&f);
    let d = deg(&f)?;
    let s = sensitivity(&f);
    let l = spectral_sensitivity(&f, crate::measures::spectral::DEFAULT_TOL)?;
    let top = (n as f64).powf(1.5);
    let (lo, hi) = (l.lower.to_f64().unwrap_or(f64::NAN), l.upper.to_f64().unwrap_or(f64::NAN));
    let lambda_ok = lo >= top / 2.0 - LAMBDA_SLACK && hi <= top + LAMBDA_SLACK;
    let holds = r.value == n && lambda_ok && 2 * s + 2 * n >= n * n && d == n * n;
    Ok(Verdict::new(
        "prop:5.2",
        format!("and:{n}∘ehbar:{n}"),
        holds,
        format!("rdeg={},lambda=[{lo:.9},{hi:.9}],s={s},deg={d}", r.value),
        format!("rdeg={n},lambda in [{:.9},{top:.9}],s>={},deg={}", top / 2.0, (n * n / 2).saturating_sub(n), n * n),
    )
    .with_witnesses([r.p.to_json(), r.q.to_json()]))
}

fn majority_or_none_verdict(n: usize) -> Result<Verdict> {
    let f = family("majn", &[n])?;
    let r = rdeg(&f);
    let bound = ceil_div(n / 2 + 1, 2);
    Ok(Verdict::new("thm:6.1", format!("majn:{n}"), r.value >= bound, r.value, bound).with_witnesses([r.p.to_json(), r.q.to_json()]))
}

/// `adeg_{1/3}` of `BI_n`.
pub fn imbalance_approx_degree(n: usize) -> Result<usize> {
    Ok(approx_degree(&family("bi", &[n])?, &Q::new(1.into(), 3.into()))?.value)
}

fn imbalance_verdict(n: usize) -> Result<Verdict> {
    let (p, q) = bi_rational_witness(n)?;
    let f = family("bi", &[n])?;
    let (sp, sq) = postsim::to_sign_representation(&p, &q);
    let report = postsim::certify_error(&f, &sp, &sq, &Q::zero())?;
    let exact = p.degree().max(q.degree()) <= 1 && report.max_error.is_zero() && report.postq_bound <= 2;
    let a = imbalance_approx_degree(n)?;
    let (growth, rhs) = if n == 6 {
        (a >= 2, ">=2".to_string())
    } else {
        let b = imbalance_approx_degree(n - 4)?;
        (a > b, format!(">{b}"))
    };
    Ok(Verdict::new(
        "lemma:6.4",
        format!("bi:{n},max_error={},postq_bound={}", fmt_q(&report.max_error), report.postq_bound),
        exact && growth,
        format!("adeg={a}"),
        rhs,
    )
    .with_witnesses([p.to_json(), q.to_json()]))
}

fn sorted_sums_verdict(params: &str) -> Result<Verdict> {
    let parts: Vec<&str> = params.split(';').collect();
    let [x, y, k] = parts[..] else {
        return Err(Error::Parse(format!("fact:B.2 expects x;y;k, got `{params}`")));
    };
    experiments::sorted_sums_verdict(&parse_q_list(x)?, &parse_q_list(y)?, parse_usize(k)?)
}

/// One regression-suite instance: claim, params and size (variables or `n`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteInstance {
    pub claim: &'static str,
    pub params: String,
    pub size: usize,
}

fn inst(claim: &'static str, params: impl Into<String>, size: usize) -> SuiteInstance {
    SuiteInstance { claim, params: params.into(), size }
}

const SYMMETRIC_FORMULAS: [&str; 6] = [
    "and(x1,x2)",
    "sym0110(x1,x2,x3)",
    "or(x1,and(x2,x3))",
    "parity(and(x1,x2),or(x3,x4))",
    "thr2(x1,not(x2),parity(x3,x4),x5)",
    "and(sym0110(x1,x2,x3),or(x4,x5,x6),x7)",
];

const THRESHOLD_FORMULAS: [&str; 6] = [
    "and(x1,x2)",
    "or(and(x1,x2),x3)",
    "thr2(x1,or(x2,x3),not(x4))",
    "and(or(x1,x2),or(x3,x4),or(x5,x6))",
    "thr2(and(x1,x2),or(x3,x4,x5),not(x6),x7)",
    "or(thr2(x1,x2,x3),and(x4,not(x5)),thr3(x6,x7,x8,x9))",
];

/// Every shipped instance, across all claims.
pub fn suite() -> Vec<SuiteInstance> {
    let mut s = vec![];
    for n in 1..=8 {
        s.push(inst("lemma:3.1", format!("all:{n}"), n));
        s.push(inst("prop:3.2", format!("all:{n}"), n));
    }
    for n in (2..=12).step_by(2) {
        s.push(inst("lemma:3.1", format!("majn:{n}"), n));
        s.push(inst("thm:6.1", n.to_string(), n));
    }
    for n in [3, 6, 9, 12] {
        s.push(inst("prop:3.3", n.to_string(), n));
    }
    for n in (3..=60).step_by(3) {
        s.push(inst("fact:3.7", n.to_string(), n));
    }
    for n in 1..=4 {
        s.push(inst("claim:3.8", format!("all:{n}"), n));
        s.push(inst("cor:3.9", format!("all:{n}"), n));
        s.push(inst("cor:3.11", format!("all:{n}"), n));
    }
    for n in 1..=3 {
        s.push(inst("claim:3.10", format!("all:{n}"), n));
    }
    s.push(inst("claim:3.10", "mt:6;1,4,5", 6));
    for (p, size) in [("and:2;or:1;or:1", 2), ("or:2;and:2;parity:2", 4), ("maj:3;or:2;and:2;eh:2", 6), ("parity:2;mt:3;thr:2:3", 6)] {
        s.push(inst("lemma:3.12", p, size));
    }
    for phi in SYMMETRIC_FORMULAS {
        let size = parse_formula(phi).and_then(|f| f.validate()).expect("shipped formula");
        for claim in ["lemma:3.13", "cor:3.14", "cor:3.15"] {
            s.push(inst(claim, phi, size));
        }
    }
    for phi in THRESHOLD_FORMULAS {
        let size = parse_formula(phi).and_then(|f| f.validate()).expect("shipped formula");
        s.push(inst("cor:3.16", phi, size));
        s.push(inst("prop:B.1", phi, size));
        s.push(inst("cor:3.15", phi, size));
    }
    for n in [1, 4, 6, 8] {
        s.push(inst("cor:3.20", format!("{n},20,1"), n));
    }
    for claim in ["prop:4.1", "prop:4.3", "cor:4.4"] {
        s.push(inst(claim, "all:1", 2));
        s.push(inst(claim, "all:2", 4));
        for (p, size) in [("or:2,and:2", 4), ("parity:2,maj:3", 5), ("mt:3,eh:2", 5), ("and:3~1,2,or:3", 6)] {
            s.push(inst(claim, p, size));
        }
    }
    for (p, size) in [("1,0;0,1", 2), ("1,-1;1,1", 2), ("2,0,-1;0,3,1", 3), ("1,-2,0,5;0,1,1,-1;3,0,0,1", 4)] {
        s.push(inst("lemma:4.2", p, size));
    }
    s.push(inst("prop:5.2", "2", 4));
    s.push(inst("prop:5.2", "4", 16));
    for n in [6, 10, 14] {
        s.push(inst("lemma:6.4", n.to_string(), n));
    }
    for (p, size) in [("1,1;1,1;1", 2), ("3,0,2;1,5,1;2", 3), ("1/2,4,0,7;2,2,3,1/3;3", 4)] {
        s.push(inst("fact:B.2", p, size));
    }
    s
}

/// Suite instances of size at most `max_size`, plus the smallest instance of every claim.
pub fn suite_upto(max_size: usize) -> Vec<SuiteInstance> {
    let all = suite();
    let mut keep = vec![false; all.len()];
    for claim in CLAIMS {
        let smallest = (0..all.len()).filter(|&i| all[i].claim == claim).min_by_key(|&i| all[i].size);
        if let Some(i) = smallest {
            keep[i] = true;
        }
    }
    all.into_iter().zip(keep).filter(|(i, k)| *k || i.size <= max_size).map(|(i, _)| i).collect()
}

/// Runs [`suite_upto`] and returns the verdicts in suite order.
pub fn verify_all(max_size: usize) -> Result<Vec<Verdict>> {
    suite_upto(max_size).iter().map(|i| check(i.claim, &i.params)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn holds(claim: &str, params: &str) -> Verdict {
        let v = check(claim, params).unwrap();
        assert!(v.holds, "{claim} {params}: {v:?}");
        v
    }

    #[test]
    fn spec_splitting() {
        assert_eq!(split_specs("or:2,and:2"), vec!["or:2", "and:2"]);
        assert_eq!(split_specs("and:3~1,2,or:3"), vec!["and:3~1,2", "or:3"]);
        assert_eq!(split_specs("thr:2:3;mt:3"), vec!["thr:2:3", "mt:3"]);
    }

    #[test]
    fn documented_examples() {
        let v = holds("prop:4.1", "or:2,and:2");
        assert_eq!((v.lhs.as_str(), v.rhs.as_str()), ("3", "3"));
        let v = holds("cor:3.9", "all:3");
        assert_eq!(v.rhs, "20");
        let v = holds("fact:3.7", "9");
        assert_eq!((v.lhs.as_str(), v.rhs.as_str()), ("92", "130"));
    }

    #[test]
    fn errors() {
        assert_eq!(check("nosuch", ""), Err(Error::UnknownClaim("nosuch".into())));
        assert!(matches!(check("prop:3.2", "and:21"), Err(Error::CapExceeded { .. })));
        assert!(matches!(check("cor:3.9", "parity:3"), Err(Error::BadParams(_))));
        assert!(matches!(check("cor:3.16", "parity(x1,x2)"), Err(Error::BadParams(_))));
        assert!(matches!(check("prop:4.1", "or:2"), Err(Error::Parse(_))));
        assert!(matches!(check("lemma:4.2", "1,0;0,0"), Err(Error::UncoveredColumn(1))));
    }

    #[test]
    fn individual_claims() {
        holds("lemma:3.1", "majn:8");
        holds("prop:3.2", "mt:6");
        holds("prop:3.3", "6");
        holds("claim:3.8", "thr:2:4");
        holds("claim:3.10", "andor:2x2;1,3");
        holds("cor:3.11", "thr:2:4~1,2");
        holds("lemma:3.12", "or:2;and:2;parity:2");
        holds("lemma:3.13", "thr2(x1,x2,x3,x4)");
        holds("cor:3.14", "and(or(x1,x2),or(x3,x4))");
        holds("cor:3.16", "ro:and(or(x1,x2),or(x3,x4))");
        holds("cor:3.20", "4,10,1");
        holds("lemma:4.2", "1,-1;1,1");
        holds("cor:4.4", "mt:3;parity:2");
        holds("thm:6.1", "6");
        holds("prop:B.1", "thr2(x1,or(x2,x3),not(x4))");
        holds("fact:B.2", "1,1;1,1;1");
        let v = holds("prop:4.3", "or:2,and:2");
        assert_eq!(v.lhs, "2");
    }

    #[test]
    fn verdict_json_shape() {
        let v = holds("thm:6.1", "4");
        let j = v.to_json();
        for key in ["claim", "instance", "holds", "lhs", "rhs", "witnesses"] {
            assert!(j.get(key).is_some(), "missing {key}");
        }
        assert_eq!(j["witnesses"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn slice_bound_can_exceed_rdeg_of_wide_gates() {
        // the ⌈w/2⌉ bound for a single symmetric gate of fan-in w is not implied
        // by the slice bound: MT_9 has rdeg 4
        let v = check("lemma:3.13", "sym0001111000(x1,x2,x3,x4,x5,x6,x7,x8,x9)").unwrap();
        assert!(!v.holds);
        assert_eq!((v.lhs.as_str(), v.rhs.as_str()), ("4", "5"));
        holds("lemma:3.1", "mt:9");
    }

    #[test]
    fn small_suite_passes() {
        let vs = verify_all(3).unwrap();
        let claims: BTreeSet<&str> = vs.iter().map(|v| v.claim.as_str()).collect();
        assert_eq!(claims.len(), CLAIMS.len());
        for v in &vs {
            assert!(v.holds, "{v:?}");
        }
    }
}
