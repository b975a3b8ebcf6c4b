//! Enumerations of function classes and random instance generators.

use crate::boolfn::BooleanFunction;
use crate::formula::ReadOnceFormula;
use crate::poly::Q;
use rand::seq::SliceRandom;
use rand::Rng;

/// All non-constant symmetric total functions on `n` variables, by spectrum.
pub fn symmetric_functions(n: usize) -> Vec<BooleanFunction> {
    (1..(1u64 << (n + 1)) - 1)
        .map(|spec| BooleanFunction::from_fn(n, |x| spec >> x.count_ones() & 1 == 1).expect("n within cap"))
        .collect()
}

/// Truth tables (bit `x` = f(x)) of all monotone functions on `n ≤ 5` variables.
fn monotone_tables(n: usize) -> Vec<u64> {
    if n == 0 {
        return vec![0, 1];
    }
    let half = 1u32 << (n - 1);
    let prev = monotone_tables(n - 1);
    let mut out = vec![];
    for &f0 in &prev {
        for &f1 in &prev {
            if f0 & !f1 == 0 {
                out.push(f0 | f1 << half);
            }
        }
    }
    out
}

/// All monotone total functions on `n ≤ 5` variables, constants included.
pub fn monotone_functions(n: usize) -> Vec<BooleanFunction> {
    assert!(n <= 5, "monotone enumeration is limited to n ≤ 5");
    monotone_tables(n)
        .into_iter()
        .map(|t| BooleanFunction::from_fn(n, |x| t >> x & 1 == 1).expect("n within cap"))
        .collect()
}

/// Uniformly random total function.
pub fn random_function<R: Rng>(n: usize, rng: &mut R) -> BooleanFunction {
    let bits: Vec<bool> = (0..1usize << n).map(|_| rng.gen()).collect();
    BooleanFunction::from_fn(n, |x| bits[x]).expect("n within cap")
}

/// Random non-constant monotone function given by a DNF of up to four terms.
pub fn random_monotone<R: Rng>(n: usize, rng: &mut R) -> BooleanFunction {
    let terms: Vec<usize> = (0..rng.gen_range(1..=4)).map(|_| rng.gen_range(1..1usize << n)).collect();
    BooleanFunction::from_fn(n, |x| terms.iter().any(|&t| x & t == t)).expect("n within cap")
}

/// Random unate function: a random monotone function with random inputs negated.
pub fn random_unate<R: Rng>(n: usize, rng: &mut R) -> BooleanFunction {
    random_monotone(n, rng).negate_inputs_mask(rng.gen_range(0..1usize << n))
}

fn maybe_negate<R: Rng>(f: ReadOnceFormula, rng: &mut R) -> ReadOnceFormula {
    if rng.gen_bool(0.25) {
        ReadOnceFormula::not(f)
    } else {
        f
    }
}

/// Splits `vars` into `parts` non-empty consecutive groups.
fn split<R: Rng>(vars: &[usize], parts: usize, rng: &mut R) -> Vec<Vec<usize>> {
    let mut cuts: Vec<usize> = (1..vars.len()).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(parts - 1).collect();
    cuts.sort_unstable();
    let mut out = vec![];
    let mut start = 0;
    for c in cuts.into_iter().chain([vars.len()]) {
        out.push(vars[start..c].to_vec());
        start = c;
    }
    out
}

fn random_tree<R: Rng>(
    vars: &[usize],
    rng: &mut R,
    gate: &dyn Fn(usize, Vec<ReadOnceFormula>, &mut R) -> ReadOnceFormula,
) -> ReadOnceFormula {
    if vars.len() == 1 {
        return maybe_negate(ReadOnceFormula::var(vars[0]), rng);
    }
    let fanin = rng.gen_range(2..=vars.len());
    let children = split(vars, fanin, rng).iter().map(|g| random_tree(g, rng, gate)).collect();
    maybe_negate(gate(fanin, children, rng), rng)
}

fn shuffled_vars<R: Rng>(m: usize, rng: &mut R) -> Vec<usize> {
    let mut vars: Vec<usize> = (0..m).collect();
    vars.shuffle(rng);
    vars
}

/// Random read-once formula over NOT and threshold gates on `m` variables.
pub fn random_threshold_formula<R: Rng>(m: usize, rng: &mut R) -> ReadOnceFormula {
    let vars = shuffled_vars(m, rng);
    random_tree(&vars, rng, &|fanin, cs, rng: &mut R| match rng.gen_range(0..4) {
        0 => ReadOnceFormula::And(cs),
        1 => ReadOnceFormula::Or(cs),
        _ => ReadOnceFormula::Thr(rng.gen_range(1..=fanin), cs),
    })
}

/// Random read-once formula over NOT and symmetric gates on `m` variables.
pub fn random_symmetric_formula<R: Rng>(m: usize, rng: &mut R) -> ReadOnceFormula {
    let vars = shuffled_vars(m, rng);
    random_tree(&vars, rng, &|fanin, cs, rng: &mut R| match rng.gen_range(0..5) {
        0 => ReadOnceFormula::And(cs),
        1 => ReadOnceFormula::Or(cs),
        2 => ReadOnceFormula::Parity(cs),
        _ => loop {
            let spec: Vec<bool> = (0..=fanin).map(|_| rng.gen()).collect();
            if spec.iter().any(|&b| b != spec[0]) {
                break ReadOnceFormula::Sym(spec, cs);
            }
        },
    })
}

/// Random nonnegative rational with small numerator and denominator.
pub fn random_nonnegative_rational<R: Rng>(rng: &mut R) -> Q {
    Q::new(rng.gen_range(0..=20).into(), rng.gen_range(1..=6).into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn class_sizes() {
        let counts: Vec<usize> = (0..=5).map(|n| monotone_tables(n).len()).collect();
        // Dedekind numbers
        assert_eq!(counts, vec![2, 3, 6, 20, 168, 7581]);
        assert!(monotone_functions(3).iter().all(|f| f.is_monotone().unwrap()));
        let sym = symmetric_functions(4);
        assert_eq!(sym.len(), 30);
        assert!(sym.iter().all(|f| f.is_symmetric() && !f.is_constant()));
    }

    #[test]
    fn random_generators_produce_valid_objects() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for m in 1..=9 {
            let t = random_threshold_formula(m, &mut rng);
            assert_eq!(t.validate().unwrap(), m);
            assert!(t.is_threshold_formula());
            let s = random_symmetric_formula(m, &mut rng);
            assert_eq!(s.validate().unwrap(), m);
        }
        for n in 1..=6 {
            let f = random_monotone(n, &mut rng);
            assert!(f.is_monotone().unwrap() && !f.is_constant());
            assert!(random_unate(n, &mut rng).is_unate().unwrap().is_some());
        }
    }
}
