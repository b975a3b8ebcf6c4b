//! Explicit representations for named families, each re-verified pointwise
//! before it is returned.

use crate::boolfn::{family, BooleanFunction};
use crate::error::{bad, check_cap, Result};
use crate::experiments::middle_third_counts;
use crate::measures::{deg, ndeg, rdeg, sensitivity, spectral_sensitivity, MeasureReport, MeasureValue};
use crate::poly::{q, q_frac, Basis, MultilinearPolynomial, Q};
use num_traits::Zero;

/// True iff `p` is nonzero exactly on `f⁻¹(1)` within the domain.
pub fn verifies_ndeg(f: &BooleanFunction, p: &MultilinearPolynomial) -> bool {
    let vals = p.evaluate_all();
    f.domain_points().all(|x| vals[x].is_zero() != f.value(x))
}

/// True iff `q ≠ 0` and `p/q = f` (0/1-valued) on the domain.
pub fn verifies_rational(f: &BooleanFunction, p: &MultilinearPolynomial, q: &MultilinearPolynomial) -> bool {
    let (pv, qv) = (p.evaluate_all(), q.evaluate_all());
    f.domain_points().all(|x| {
        let target = if f.value(x) { &qv[x] } else { &Q::zero() };
        !qv[x].is_zero() && &pv[x] == target
    })
}

/// `Σ_{i ∈ vars} x_i + c` in the 0/1 basis.
fn affine(n: usize, vars: impl IntoIterator<Item = usize>, c: Q) -> MultilinearPolynomial {
    MultilinearPolynomial::linear_sum(n, Basis::ZeroOne, vars, c)
}

/// `p = Π_i Σ_j x_ij` and `q = p + Σ_i Π_j (1 − x_ij)` for `AND_a ∘ OR_b`, block `i`
/// holding variables `i·b .. (i+1)·b`.
pub fn andor_rational_rep(a: usize, b: usize) -> Result<(MultilinearPolynomial, MultilinearPolynomial)> {
    if a == 0 || b == 0 {
        return Err(bad("andor fan-ins must be positive"));
    }
    check_cap(a * b, 20)?;
    let n = a * b;
    let one = MultilinearPolynomial::constant(n, Basis::ZeroOne, q(1));
    let mut p = one.clone();
    let mut empty_blocks = MultilinearPolynomial::zero(n, Basis::ZeroOne);
    for i in 0..a {
        let block = i * b..(i + 1) * b;
        p = p.mul(&affine(n, block.clone(), q(0)));
        let all_zero = block.fold(one.clone(), |acc, v| {
            acc.mul(&one.sub(&MultilinearPolynomial::variable(n, Basis::ZeroOne, v)))
        });
        empty_blocks = empty_blocks.add(&all_zero);
    }
    let qq = p.add(&empty_blocks);
    assert!(verifies_rational(&family("andor", &[a, b])?, &p, &qq), "AND∘OR representation failed verification");
    Ok((p, qq))
}

/// `Σ x_i − n/2`, nonzero exactly off the middle slice.
pub fn ehbar_witness(n: usize) -> Result<MultilinearPolynomial> {
    if n == 0 || n % 2 != 0 {
        return Err(bad(format!("ehbar witness needs a positive even n, got {n}")));
    }
    let p = affine(n, 0..n, q(-(n as i64) / 2));
    assert!(verifies_ndeg(&family("ehbar", &[n])?, &p), "ehbar witness failed verification");
    Ok(p)
}

fn check_multiple_of_three(n: usize, cap: usize) -> Result<()> {
    if n == 0 || n % 3 != 0 {
        return Err(bad(format!("n = {n} is not a positive multiple of 3")));
    }
    if n > cap {
        return Err(bad(format!("n = {n} exceeds {cap}")));
    }
    Ok(())
}

/// `Π_{i=n/3}^{2n/3} (Σ x − i)`: vanishes exactly on the middle-third slices.
pub fn mt_complement_witness(n: usize) -> Result<MultilinearPolynomial> {
    check_multiple_of_three(n, 15)?;
    let p = (n / 3..=2 * n / 3).fold(MultilinearPolynomial::constant(n, Basis::ZeroOne, q(1)), |acc, i| {
        acc.mul(&affine(n, 0..n, q(-(i as i64))))
    });
    assert!(verifies_ndeg(&family("mt", &[n])?.negate_output(), &p), "complement witness failed verification");
    assert_eq!(p.degree(), n / 3 + 1);
    Ok(p)
}

/// A polynomial of degree at most `n/3` vanishing off the middle third and nonzero
/// on all of it, found by the nondeterministic-degree solver.
pub fn mt_existence_witness(n: usize) -> Result<MultilinearPolynomial> {
    check_multiple_of_three(n, 12)?;
    let (outside, low) = middle_third_counts(n as u64)?;
    assert!(outside < low, "counting inequality fails at n = {n}");
    let r = ndeg(&family("mt", &[n])?);
    assert!(verifies_ndeg(&family("mt", &[n])?, &r.witness));
    assert!(r.value <= n / 3, "ndeg(MT_{n}) = {} exceeds n/3", r.value);
    Ok(r.witness)
}

/// `p = (R − L)/2`, `q = R` with `L`, `R` the ±1 sums of the two halves.
pub fn bi_rational_witness(n: usize) -> Result<(MultilinearPolynomial, MultilinearPolynomial)> {
    if n < 6 || n % 4 != 2 || n > 18 {
        return Err(bad(format!("bi witness needs n = 4m + 2 with 6 ≤ n ≤ 18, got {n}")));
    }
    let half = n / 2;
    // Σ (1 − 2x_i) over a range of variables
    let pm_sum = |vars: std::ops::Range<usize>| {
        let len = vars.len() as i64;
        affine(n, vars, q(0)).scale(&q(-2)).add(&MultilinearPolynomial::constant(n, Basis::ZeroOne, q(len)))
    };
    let (l, r) = (pm_sum(0..half), pm_sum(half..n));
    let p = r.sub(&l).scale(&q_frac(1, 2));
    assert!(verifies_rational(&family("bi", &[n])?, &p, &r), "bi witness failed verification");
    Ok((p, r))
}

/// `AND_n ∘ EH̄_n` on `n²` variables.
pub fn separation_function(n: usize) -> Result<BooleanFunction> {
    if n == 0 || n % 2 != 0 {
        return Err(bad(format!("separation family needs a positive even n, got {n}")));
    }
    check_cap(n, 4)?;
    let inner = family("ehbar", &[n])?;
    family("and", &[n])?.compose_disjoint(&vec![inner; n])
}

/// rdeg, deg, s and λ of `AND_n ∘ EH̄_n` together with `λ/rdeg` and `deg/rdeg²`.
pub fn separation_report(n: usize) -> Result<MeasureReport> {
    let f = separation_function(n)?;
    let mut report = MeasureReport::new(format!("and:{n}∘ehbar:{n}"), &f);
    let r = rdeg(&f);
    let d = deg(&f)?;
    let lambda = spectral_sensitivity(&f, crate::measures::spectral::DEFAULT_TOL)?;
    let rd = Q::from_integer(r.value.into());
    let e = report.push("rdeg", MeasureValue::Int(r.value));
    e.witnesses.push(("p".into(), r.p.to_json()));
    e.witnesses.push(("q".into(), r.q.to_json()));
    report.push("deg", MeasureValue::Int(d));
    report.push("s", MeasureValue::Int(sensitivity(&f)));
    report.push(
        "lambda_over_rdeg",
        MeasureValue::Interval { lower: &lambda.lower / &rd, upper: &lambda.upper / &rd, estimate: lambda.lambda / r.value as f64 },
    );
    report.push("deg_over_rdeg_squared", MeasureValue::Rational(Q::from_integer(d.into()) / (&rd * &rd)));
    report.push("lambda", MeasureValue::Interval { lower: lambda.lower, upper: lambda.upper, estimate: lambda.lambda });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::certificate_complexity;

    #[test]
    fn andor_examples() {
        let (p, qq) = andor_rational_rep(1, 1).unwrap();
        assert_eq!(p, MultilinearPolynomial::variable(1, Basis::ZeroOne, 0));
        assert_eq!(qq, MultilinearPolynomial::constant(1, Basis::ZeroOne, q(1)));
        let (p, qq) = andor_rational_rep(2, 2).unwrap();
        // (x1 + x2)(x3 + x4)
        let expected_p = MultilinearPolynomial::from_terms(4, Basis::ZeroOne, [(0b0101, q(1)), (0b1001, q(1)), (0b0110, q(1)), (0b1010, q(1))]);
        assert_eq!(p, expected_p);
        assert_eq!(qq.sub(&p).evaluate_all()[0], q(2));
        for n in 1..=3 {
            let (p, qq) = andor_rational_rep(n, n).unwrap();
            assert_eq!(p.degree().max(qq.degree()), n);
            assert_eq!(certificate_complexity(&family("andor", &[n, n]).unwrap()).unwrap(), n);
        }
        let (p, qq) = andor_rational_rep(2, 3).unwrap();
        assert_eq!((p.degree(), qq.degree()), (2, 3));
        assert!(andor_rational_rep(3, 7).is_err());
    }

    #[test]
    fn ehbar_and_mt() {
        let w = ehbar_witness(4).unwrap();
        assert_eq!(w.evaluate_all()[0b0011], q(0));
        assert_eq!(w.evaluate_all()[0b0111], q(1));
        assert!(verifies_ndeg(&family("ehbar", &[6]).unwrap(), &ehbar_witness(6).unwrap()));
        assert!(ehbar_witness(3).is_err());
        for n in [3, 6, 9] {
            let c = mt_complement_witness(n).unwrap();
            let e = mt_existence_witness(n).unwrap();
            assert_eq!(c.degree(), n / 3 + 1);
            assert!(e.degree() <= n / 3);
            assert!(rdeg(&family("mt", &[n]).unwrap()).value <= c.degree().max(e.degree()));
        }
        let c3 = mt_complement_witness(3).unwrap().evaluate_all();
        // (Σx − 1)(Σx − 2) at weights 0 and 3
        assert_eq!((c3[0].clone(), c3[7].clone()), (q(2), q(2)));
        assert!(mt_complement_witness(18).is_err());
        assert!(mt_existence_witness(7).is_err());
    }

    #[test]
    fn bi_witness() {
        let (p, qq) = bi_rational_witness(6).unwrap();
        assert_eq!(p.degree().max(qq.degree()), 1);
        let s_plus = 0b001_001;
        assert_eq!(p.evaluate_all()[s_plus], q(0));
        let s_minus = 0b001_011;
        assert_eq!(p.evaluate_all()[s_minus], qq.evaluate_all()[s_minus]);
        assert_eq!(qq.coeff(0), q(3));
        assert_eq!(p.coeff(1), q(1));
        assert_eq!(p.coeff(1 << 3), q(-1));
        assert!(bi_rational_witness(10).is_ok());
        assert!(bi_rational_witness(8).is_err());
    }

    #[test]
    fn separation_rows() {
        let r = separation_report(2).unwrap();
        assert_eq!(r.get("rdeg").unwrap().as_int(), Some(2));
        assert_eq!(r.get("deg").unwrap().as_int(), Some(4));
        // s of AND_2 ∘ EH̄_2 by enumeration: at 0000 every bit flips the output
        assert_eq!(r.get("s").unwrap().as_int(), Some(4));
        assert!(separation_report(3).is_err());
        assert!(separation_report(6).is_err());
    }
}
