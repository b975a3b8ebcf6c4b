//! Exact LP feasibility by phase-1 simplex with Bland's rule.
//!
//! Variables are free (unbounded in sign). Equalities are eliminated by
//! Gaussian elimination before the simplex runs on the inequalities.

use super::RationalMatrix;
use crate::error::{Error, Result};
use crate::poly::Q;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Ge,
    Le,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Q>,
    pub rel: Relation,
    pub rhs: Q,
}

impl Constraint {
    pub fn holds(&self, x: &[Q]) -> bool {
        let lhs = self.coeffs.iter().zip(x).fold(Q::zero(), |acc, (a, b)| acc + a * b);
        match self.rel {
            Relation::Ge => lhs >= self.rhs,
            Relation::Le => lhs <= self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }
}

/// A feasibility problem over free rational variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearProgram {
    vars: usize,
    constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Feasible(Vec<Q>),
    Infeasible,
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, LpOutcome::Feasible(_))
    }
}

impl LinearProgram {
    pub fn new(vars: usize) -> Self {
        LinearProgram { vars, constraints: vec![] }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn add(&mut self, coeffs: Vec<Q>, rel: Relation, rhs: Q) -> Result<()> {
        if coeffs.len() != self.vars {
            return Err(Error::DimensionMismatch { expected: self.vars, got: coeffs.len() });
        }
        self.constraints.push(Constraint { coeffs, rel, rhs });
        Ok(())
    }

    /// Decides feasibility exactly; a returned witness satisfies every constraint.
    pub fn feasible(&self) -> LpOutcome {
        let outcome = self.solve();
        if let LpOutcome::Feasible(x) = &outcome {
            assert!(self.constraints.iter().all(|c| c.holds(x)), "LP witness failed verification");
        }
        outcome
    }

    fn solve(&self) -> LpOutcome {
        let n = self.vars;
        // Equalities: x_P = b'_i − Σ_{free j} R[i][j] x_j.
        let eq_rows: Vec<Vec<Q>> = self
            .constraints
            .iter()
            .filter(|c| c.rel == Relation::Eq)
            .map(|c| c.coeffs.iter().cloned().chain([c.rhs.clone()]).collect())
            .collect();
        let (pivots, reduced) = if eq_rows.is_empty() {
            (vec![], None)
        } else {
            let rr = RationalMatrix::from_rows(eq_rows).expect("rectangular").rref();
            if rr.pivots.last() == Some(&n) {
                return LpOutcome::Infeasible;
            }
            (rr.pivots.clone(), Some(rr.matrix))
        };
        let mut is_pivot = vec![false; n];
        pivots.iter().for_each(|&p| is_pivot[p] = true);
        let free: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();

        // Substitute into the inequalities, normalised to a·y ≥ b over the free variables.
        let mut ineqs: Vec<(Vec<Q>, Q)> = vec![];
        for c in self.constraints.iter().filter(|c| c.rel != Relation::Eq) {
            let mut a: Vec<Q> = free.iter().map(|&j| c.coeffs[j].clone()).collect();
            let mut b = c.rhs.clone();
            if let Some(r) = &reduced {
                for (i, &p) in pivots.iter().enumerate() {
                    let cp = &c.coeffs[p];
                    if cp.is_zero() {
                        continue;
                    }
                    b -= cp * r.get(i, n);
                    for (k, &j) in free.iter().enumerate() {
                        let rij = r.get(i, j);
                        if !rij.is_zero() {
                            a[k] -= cp * rij;
                        }
                    }
                }
            }
            if c.rel == Relation::Le {
                a.iter_mut().for_each(|v| *v = -v.clone());
                b = -b;
            }
            ineqs.push((a, b));
        }

        let y = match phase_one(free.len(), &ineqs) {
            Some(y) => y,
            None => return LpOutcome::Infeasible,
        };
        let mut x = vec![Q::zero(); n];
        for (k, &j) in free.iter().enumerate() {
            x[j] = y[k].clone();
        }
        if let Some(r) = &reduced {
            for (i, &p) in pivots.iter().enumerate() {
                let mut v = r.get(i, n).clone();
                for (k, &j) in free.iter().enumerate() {
                    v -= r.get(i, j) * &y[k];
                }
                x[p] = v;
            }
        }
        LpOutcome::Feasible(x)
    }
}

/// Finds free `y` with `a_i·y ≥ b_i` for all rows, or `None` if infeasible.
fn phase_one(k: usize, rows: &[(Vec<Q>, Q)]) -> Option<Vec<Q>> {
    if rows.is_empty() {
        return Some(vec![Q::zero(); k]);
    }
    // Columns: u (k), v (k), surplus s (m), artificials for rows with b > 0.
    // Row i: a·u − a·v − s_i = b_i, negated when b_i ≤ 0 so that s_i can start basic.
    let m = rows.len();
    let needs_art: Vec<bool> = rows.iter().map(|(_, b)| b.is_positive()).collect();
    let n_art = needs_art.iter().filter(|&&x| x).count();
    let cols = 2 * k + m + n_art;
    let width = cols + 1;
    let mut t = vec![Q::zero(); (m + 1) * width];
    let mut basis = vec![0usize; m];
    let mut art = 2 * k + m;
    for (i, (a, b)) in rows.iter().enumerate() {
        let sign = if needs_art[i] { Q::one() } else { -Q::one() };
        for j in 0..k {
            if !a[j].is_zero() {
                t[i * width + j] = &a[j] * &sign;
                t[i * width + k + j] = -&a[j] * &sign;
            }
        }
        t[i * width + 2 * k + i] = -sign.clone();
        t[i * width + cols] = b * &sign;
        if needs_art[i] {
            t[i * width + art] = Q::one();
            basis[i] = art;
            art += 1;
        } else {
            basis[i] = 2 * k + i;
        }
    }
    // Objective row holds reduced costs of minimising the artificial sum.
    let obj = m * width;
    for i in (0..m).filter(|&i| needs_art[i]) {
        for j in 0..width {
            if j < 2 * k + m || j == cols {
                let v = t[i * width + j].clone();
                if !v.is_zero() {
                    t[obj + j] -= v;
                }
            }
        }
    }
    loop {
        let Some(enter) = (0..cols).find(|&j| t[obj + j].is_negative()) else { break };
        // ratio test, ties broken by the smallest basic variable index
        let mut leave: Option<(usize, Q)> = None;
        for i in 0..m {
            let a = &t[i * width + enter];
            if a.is_positive() {
                let ratio = &t[i * width + cols] / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (r, _) = leave.expect("phase one objective is bounded below");
        pivot(&mut t, width, m + 1, r, enter);
        basis[r] = enter;
    }
    if !t[obj + cols].is_zero() {
        return None;
    }
    let mut val = vec![Q::zero(); cols];
    for i in 0..m {
        val[basis[i]] = t[i * width + cols].clone();
    }
    Some((0..k).map(|j| &val[j] - &val[k + j]).collect())
}

fn pivot(t: &mut [Q], width: usize, nrows: usize, r: usize, c: usize) {
    let inv = t[r * width + c].recip();
    for j in 0..width {
        if !t[r * width + j].is_zero() {
            t[r * width + j] *= &inv;
        }
    }
    let prow: Vec<(usize, Q)> =
        (0..width).filter(|&j| !t[r * width + j].is_zero()).map(|j| (j, t[r * width + j].clone())).collect();
    for i in 0..nrows {
        if i == r {
            continue;
        }
        let f = t[i * width + c].clone();
        if f.is_zero() {
            continue;
        }
        for (j, v) in &prow {
            t[i * width + j] -= &f * v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{q, q_frac};
    use proptest::prelude::*;

    #[test]
    fn interval_examples() {
        let mut lp = LinearProgram::new(1);
        lp.add(vec![q(1)], Relation::Ge, q(1)).unwrap();
        lp.add(vec![q(1)], Relation::Le, q(0)).unwrap();
        assert_eq!(lp.feasible(), LpOutcome::Infeasible);

        let mut lp = LinearProgram::new(1);
        lp.add(vec![q(1)], Relation::Ge, q(1)).unwrap();
        lp.add(vec![q(1)], Relation::Le, q(2)).unwrap();
        let LpOutcome::Feasible(x) = lp.feasible() else { panic!("feasible") };
        assert!(x[0] >= q(1) && x[0] <= q(2));
        assert!(lp.add(vec![q(1), q(2)], Relation::Eq, q(0)).is_err());
    }

    #[test]
    fn parity_has_no_affine_sign_representation() {
        // coefficients (c0, c1, c2) of c0 + c1 y1 + c2 y2; parity value is y1·y2
        let mut lp = LinearProgram::new(3);
        for (y1, y2) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
            let f = y1 * y2;
            lp.add(vec![q(f), q(f * y1), q(f * y2)], Relation::Ge, q(1)).unwrap();
        }
        assert_eq!(lp.feasible(), LpOutcome::Infeasible);
    }

    #[test]
    fn equalities_and_free_variables() {
        let mut lp = LinearProgram::new(3);
        lp.add(vec![q(1), q(1), q(0)], Relation::Eq, q(-4)).unwrap();
        lp.add(vec![q(1), q(-1), q(0)], Relation::Eq, q(2)).unwrap();
        lp.add(vec![q(0), q(0), q(1)], Relation::Le, q_frac(-1, 2)).unwrap();
        let LpOutcome::Feasible(x) = lp.feasible() else { panic!("feasible") };
        assert_eq!((x[0].clone(), x[1].clone()), (q(-1), q(-3)));
        lp.add(vec![q(1), q(0), q(0)], Relation::Eq, q(0)).unwrap();
        assert_eq!(lp.feasible(), LpOutcome::Infeasible);
    }

    #[test]
    fn degenerate_cycle_prone_system_terminates() {
        // Beale-style degenerate constraints, all through the origin
        let mut lp = LinearProgram::new(4);
        lp.add(vec![q_frac(1, 4), q(-60), q_frac(-1, 25), q(9)], Relation::Le, q(0)).unwrap();
        lp.add(vec![q_frac(1, 2), q(-90), q_frac(-1, 50), q(3)], Relation::Le, q(0)).unwrap();
        lp.add(vec![q(0), q(0), q(1), q(0)], Relation::Le, q(1)).unwrap();
        lp.add(vec![q(0), q(0), q(1), q(0)], Relation::Ge, q_frac(1, 2)).unwrap();
        assert!(lp.feasible().is_feasible());
    }

    proptest! {
        // Every point in a random box-with-cuts system found feasible must satisfy it;
        // a system built around a known point must be found feasible.
        #[test]
        fn known_point_is_found(
            point in proptest::collection::vec(-3i64..4, 3),
            rows in proptest::collection::vec((proptest::collection::vec(-3i64..4, 3), 0i64..3, 0u8..3), 1..8),
        ) {
            let mut lp = LinearProgram::new(3);
            for (a, slack, kind) in rows {
                let ax: i64 = a.iter().zip(&point).map(|(x, y)| x * y).sum();
                let a: Vec<Q> = a.into_iter().map(q).collect();
                match kind {
                    0 => lp.add(a, Relation::Ge, q(ax - slack)).unwrap(),
                    1 => lp.add(a, Relation::Le, q(ax + slack)).unwrap(),
                    _ => lp.add(a, Relation::Eq, q(ax)).unwrap(),
                }
            }
            prop_assert!(lp.feasible().is_feasible());
        }
    }
}
