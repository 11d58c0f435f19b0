//! Dense two-phase simplex over exact rationals (Bland's rule).
//!
//! Only used at desk scale: a few dozen columns, fewer than ten rows.

use num_traits::{One, Signed, Zero};

use crate::linalg::Rational;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rational, solution: Vec<Rational> },
}

/// maximize `cost · z` subject to `a z = b`, `z >= 0`.
pub fn maximize(a: &[Vec<Rational>], b: &[Rational], cost: &[Rational]) -> LpOutcome {
    let m = a.len();
    let n = cost.len();
    let width = n + m;
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut r = Vec::with_capacity(width + 1);
        for x in row {
            r.push(if flip { -x.clone() } else { x.clone() });
        }
        for k in 0..m {
            r.push(if k == i { Rational::one() } else { Rational::zero() });
        }
        r.push(if flip { -bi.clone() } else { bi.clone() });
        rows.push(r);
    }
    let mut tab = Tableau {
        rows,
        basis: (n..n + m).collect(),
    };

    let mut phase_one = vec![Rational::zero(); width];
    for c in phase_one.iter_mut().skip(n) {
        *c = -Rational::one();
    }
    // Phase one is bounded above by zero.
    let _ = tab.optimize(&phase_one, width);
    if !tab.objective(&phase_one).is_zero() {
        return LpOutcome::Infeasible;
    }

    // Pivot remaining artificials out of the basis, dropping redundant rows.
    let mut i = 0;
    while i < tab.rows.len() {
        if tab.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !tab.rows[i][j].is_zero()) {
                tab.pivot(i, j);
                i += 1;
            } else {
                tab.rows.remove(i);
                tab.basis.remove(i);
            }
        } else {
            i += 1;
        }
    }

    let mut full_cost = cost.to_vec();
    full_cost.resize(width, Rational::zero());
    if tab.optimize(&full_cost, n).is_err() {
        return LpOutcome::Unbounded;
    }
    let mut solution = vec![Rational::zero(); n];
    for (row, &bv) in tab.rows.iter().zip(&tab.basis) {
        if bv < n {
            solution[bv] = row[width].clone();
        }
    }
    LpOutcome::Optimal {
        value: tab.objective(&full_cost),
        solution,
    }
}

/// True iff `a z = b, z >= 0` has a solution.
pub fn feasible(a: &[Vec<Rational>], b: &[Rational]) -> bool {
    let ncols = a.first().map_or(0, Vec::len);
    !matches!(
        maximize(a, b, &vec![Rational::zero(); ncols]),
        LpOutcome::Infeasible
    )
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
}

struct Unbounded;

impl Tableau {
    fn rhs_col(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len() - 1)
    }

    fn objective(&self, cost: &[Rational]) -> Rational {
        let rhs = self.rhs_col();
        self.rows
            .iter()
            .zip(&self.basis)
            .fold(Rational::zero(), |acc, (r, &bv)| acc + &cost[bv] * &r[rhs])
    }

    /// Runs simplex iterations allowing only columns `< allowed` to enter.
    fn optimize(&mut self, cost: &[Rational], allowed: usize) -> Result<(), Unbounded> {
        let rhs = self.rhs_col();
        loop {
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut r = cost[j].clone();
                for (row, &bv) in self.rows.iter().zip(&self.basis) {
                    if !row[j].is_zero() && !cost[bv].is_zero() {
                        r -= &cost[bv] * &row[j];
                    }
                }
                r.is_positive()
            });
            let Some(j) = entering else {
                return Ok(());
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[j].is_positive() {
                    let ratio = &row[rhs] / &row[j];
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((i, _)) = leave else {
                return Err(Unbounded);
            };
            self.pivot(i, j);
        }
    }

    fn pivot(&mut self, i: usize, j: usize) {
        let inv = self.rows[i][j].recip();
        for x in self.rows[i].iter_mut() {
            *x *= &inv;
        }
        let prow = self.rows[i].clone();
        for (k, row) in self.rows.iter_mut().enumerate() {
            if k != i && !row[j].is_zero() {
                let f = row[j].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        self.basis[i] = j;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat_i64;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat_i64(x)).collect()
    }

    #[test]
    fn simple_maximum() {
        // max x + y s.t. x + s1 = 2, y + s2 = 3
        let a = vec![v(&[1, 0, 1, 0]), v(&[0, 1, 0, 1])];
        let out = maximize(&a, &v(&[2, 3]), &v(&[1, 1, 0, 0]));
        match out {
            LpOutcome::Optimal { value, solution } => {
                assert_eq!(value, rat_i64(5));
                assert_eq!(solution[0], rat_i64(2));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        // x + y = -1 with x, y >= 0
        assert_eq!(maximize(&[v(&[1, 1])], &v(&[-1]), &v(&[0, 0])), LpOutcome::Infeasible);
        // x - y = 0, maximize x
        assert_eq!(maximize(&[v(&[1, -1])], &v(&[0]), &v(&[1, 0])), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows_are_dropped() {
        let a = vec![v(&[1, 1]), v(&[2, 2])];
        assert!(feasible(&a, &v(&[1, 2])));
        assert!(!feasible(&a, &v(&[1, 3])));
    }
}
