//! Outcome probabilities of the post-selected algorithm built from a rational
//! representation `p/q` in the ±1 basis.
//!
//! After post-selection the state is proportional to `p(x)|0⟩ + q(x)|1⟩`; it is
//! measured in the Hadamard basis with `|−⟩ ↦ −1` and `|+⟩ ↦ +1`. Under this
//! labelling an exact representation never errs.

use crate::boolfn::BooleanFunction;
use crate::error::{Error, Result};
use crate::poly::{fmt_q, Basis, MultilinearPolynomial, Q};
use num_traits::Zero;
use serde_json::json;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PostSelectionOutcome {
    pub x: usize,
    pub p_val: Q,
    pub q_val: Q,
    pub prob_minus: Q,
    pub prob_plus: Q,
    pub prob_wrong: Q,
}

/// Outcome distribution at cube index `x` when the correct label is `f_val ∈ {−1, 1}`.
pub fn outcome(p: &MultilinearPolynomial, q: &MultilinearPolynomial, x: usize, f_val: i8) -> Result<PostSelectionOutcome> {
    let (p_val, q_val) = (p.eval_index(x), q.eval_index(x));
    point_outcome(x, p_val, q_val, f_val)
}

fn point_outcome(x: usize, p_val: Q, q_val: Q, f_val: i8) -> Result<PostSelectionOutcome> {
    let norm = &p_val * &p_val + &q_val * &q_val;
    if norm.is_zero() {
        return Err(Error::PostselectionImpossible(x));
    }
    let two = Q::from_integer(2.into());
    let diff = &q_val - &p_val;
    let sum = &q_val + &p_val;
    let prob_minus = &diff * &diff / (&two * &norm);
    let prob_plus = &sum * &sum / (&two * &norm);
    let prob_wrong = if f_val < 0 { prob_plus.clone() } else { prob_minus.clone() };
    Ok(PostSelectionOutcome { x, p_val, q_val, prob_minus, prob_plus, prob_wrong })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErrorReport {
    pub max_error: Q,
    /// Point attaining `max_error` (the first one, in index order).
    pub worst: usize,
    pub postq_bound: usize,
    pub within_eps: bool,
}

impl ErrorReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({"max_error": fmt_q(&self.max_error), "postq_bound": self.postq_bound, "basis": Basis::PlusMinus.tag()})
    }
}

/// Largest error probability over the domain of `f` (±1 view: output 1 ↦ −1)
/// for the representation `p/q`, both in the ±1 basis.
pub fn certify_error(f: &BooleanFunction, p: &MultilinearPolynomial, q: &MultilinearPolynomial, eps: &Q) -> Result<ErrorReport> {
    if p.basis() != Basis::PlusMinus || q.basis() != Basis::PlusMinus {
        return Err(Error::BadParams("post-selection analysis expects ±1-basis polynomials".into()));
    }
    if p.n() != f.n() || q.n() != f.n() {
        return Err(Error::DimensionMismatch { expected: f.n(), got: p.n().max(q.n()) });
    }
    let pv = p.evaluate_all();
    let qv = q.evaluate_all();
    let mut max_error = Q::zero();
    let mut worst = f.domain_points().next().expect("non-empty domain");
    for x in f.domain_points() {
        let f_val = if f.value(x) { -1 } else { 1 };
        let o = point_outcome(x, pv[x].clone(), qv[x].clone(), f_val)?;
        debug_assert_eq!(&o.prob_minus + &o.prob_plus, Q::from_integer(1.into()));
        if o.prob_wrong > max_error {
            max_error = o.prob_wrong;
            worst = x;
        }
    }
    let within_eps = max_error <= *eps;
    Ok(ErrorReport { max_error, worst, postq_bound: 2 * p.degree().max(q.degree()), within_eps })
}

/// Turns a 0/1-valued representation `p/q` (0/1 basis) into the ±1-valued
/// representation `(q − 2p)/q` in the ±1 basis.
pub fn to_sign_representation(p: &MultilinearPolynomial, q: &MultilinearPolynomial) -> (MultilinearPolynomial, MultilinearPolynomial) {
    let num = q.sub(&p.scale(&Q::from_integer(2.into())));
    (num.to_basis(Basis::PlusMinus), q.to_basis(Basis::PlusMinus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::family;
    use crate::measures::rdeg;
    use crate::poly::{q as qi, q_frac};
    use proptest::prelude::*;

    fn constant(c: Q) -> MultilinearPolynomial {
        MultilinearPolynomial::constant(1, Basis::PlusMinus, c)
    }

    #[test]
    fn closed_form_examples() {
        let o = outcome(&constant(qi(-1)), &constant(qi(1)), 0, -1).unwrap();
        assert_eq!((o.prob_minus, o.prob_wrong), (qi(1), qi(0)));
        let o = outcome(&constant(qi(1)), &constant(qi(2)), 0, 1).unwrap();
        assert_eq!(o.prob_minus, q_frac(1, 10));
        let o = outcome(&constant(qi(3)), &constant(qi(3)), 0, 1).unwrap();
        assert_eq!(o.prob_minus, qi(0));
        assert_eq!(outcome(&constant(qi(0)), &constant(qi(0)), 0, 1), Err(Error::PostselectionImpossible(0)));
    }

    #[test]
    fn exact_representations_never_err() {
        for f in [family("andor", &[2, 2]).unwrap(), family("mt", &[3]).unwrap(), family("majn", &[4]).unwrap()] {
            let r = rdeg(&f);
            let (p, q) = to_sign_representation(&r.p, &r.q);
            let rep = certify_error(&f, &p, &q, &qi(0)).unwrap();
            assert_eq!(rep.max_error, qi(0));
            assert_eq!(rep.postq_bound, 2 * r.value);
            assert!(rep.within_eps);
        }
    }

    #[test]
    fn perturbed_representation_within_eps() {
        // f = x1 in ±1 view (output 1 ↦ −1); p/q = −x1·(1 + δ) with δ ≤ 1/10
        let f = family("and", &[1]).unwrap();
        let p = MultilinearPolynomial::variable(1, Basis::PlusMinus, 0).scale(&q_frac(11, 10));
        let q = constant(qi(1));
        let rep = certify_error(&f, &p, &q, &q_frac(1, 10)).unwrap();
        assert!(rep.max_error > qi(0));
        assert!(rep.within_eps);
        assert!(certify_error(&f, &p.to_basis(Basis::ZeroOne), &q, &qi(0)).is_err());
    }

    proptest! {
        #[test]
        fn probabilities_sum_to_one_and_scale_free(a in -20i64..20, b in -20i64..20, c in 1i64..9) {
            prop_assume!(a != 0 || b != 0);
            let o = outcome(&constant(qi(a)), &constant(qi(b)), 0, 1).unwrap();
            prop_assert_eq!(&o.prob_minus + &o.prob_plus, qi(1));
            let s = outcome(&constant(qi(a * c)), &constant(qi(-b * c)), 0, 1).unwrap();
            let t = outcome(&constant(qi(-a * c)), &constant(qi(b * c)), 0, 1).unwrap();
            prop_assert_eq!(s.prob_minus, t.prob_minus);
            let u = outcome(&constant(qi(a * c)), &constant(qi(b * c)), 0, 1).unwrap();
            prop_assert_eq!(u.prob_minus, o.prob_minus);
        }
    }
}
