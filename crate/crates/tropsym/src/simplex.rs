//! Exact rational simplex for linear programs in standard equality form
//!
//! ```text
//! minimize  c·y   subject to   E y = f,   y ≥ 0
//! ```
//!
//! Two-phase dense tableau with Bland's pivoting rule, so the method never
//! cycles and every number stays an exact rational. Problem sizes here are
//! tiny in the row dimension (one row per variable of the ambient space),
//! which keeps pivots cheap even with many columns.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::scalar::Rational;

/// A standard-form problem instance.
#[derive(Clone, Debug)]
pub struct StandardLp {
    /// Row-major constraint matrix `E` (r × m).
    pub constraints: Vec<Vec<Rational>>,
    /// Right-hand side `f` (length r).
    pub rhs: Vec<Rational>,
    /// Cost vector `c` (length m).
    pub objective: Vec<Rational>,
}

/// Successful solve: optimal value, a primal optimum, and the dual
/// multipliers of the equality constraints.
#[derive(Clone, Debug)]
pub struct LpSolution {
    pub value: Rational,
    pub variables: Vec<Rational>,
    pub duals: Vec<Rational>,
}

#[derive(Clone, Debug)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

struct Tableau {
    /// rows[i] has `m` structural entries followed by the rhs.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    m: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.m]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let pivot = self.rows[row][col].clone();
        debug_assert!(!pivot.is_zero());
        for entry in self.rows[row].iter_mut() {
            *entry /= &pivot;
        }
        let pivot_row = self.rows[row].clone();
        for (i, r) in self.rows.iter_mut().enumerate() {
            if i == row {
                continue;
            }
            let factor = r[col].clone();
            if factor.is_zero() {
                continue;
            }
            for (entry, p) in r.iter_mut().zip(&pivot_row) {
                *entry -= &factor * p;
            }
        }
        self.basis[row] = col;
    }

    /// Runs Bland's rule to optimality for the given reduced-cost row.
    /// `allowed` restricts the entering columns. Returns `false` on
    /// unboundedness.
    fn optimize(&mut self, cost: &mut [Rational], allowed: &dyn Fn(usize) -> bool) -> bool {
        loop {
            // entering: lowest-index allowed column with negative reduced cost
            let entering = (0..self.m).find(|&j| allowed(j) && cost[j].is_negative());
            let Some(col) = entering else {
                return true;
            };
            // leaving: minimum ratio; ties by lowest basis variable index
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if a.is_positive() {
                    let ratio = self.rhs(i) / a;
                    match &best {
                        None => best = Some((i, ratio)),
                        Some((bi, br)) => {
                            if ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]) {
                                best = Some((i, ratio));
                            }
                        }
                    }
                }
            }
            let Some((row, _)) = best else {
                return false; // unbounded
            };
            self.pivot(row, col);
            // update reduced costs: cost -= cost[col] * pivot_row
            let factor = cost[col].clone();
            if !factor.is_zero() {
                for (c, p) in cost.iter_mut().zip(&self.rows[row]) {
                    *c -= &factor * p;
                }
            }
        }
    }
}

impl StandardLp {
    /// Solves the program. `Optimal` carries exact primal variables and
    /// dual multipliers (one per constraint row; redundant rows get 0).
    pub fn solve(&self) -> LpOutcome {
        let r = self.constraints.len();
        let m = self.objective.len();
        debug_assert_eq!(self.rhs.len(), r);
        debug_assert!(self.constraints.iter().all(|row| row.len() == m));

        // Phase 1 tableau: structural columns, artificial columns, rhs.
        let total = m + r;
        let mut rows = Vec::with_capacity(r);
        for i in 0..r {
            let negate = self.rhs[i].is_negative();
            let mut row: Vec<Rational> = Vec::with_capacity(total + 1);
            for j in 0..m {
                let v = self.constraints[i][j].clone();
                row.push(if negate { -v } else { v });
            }
            for k in 0..r {
                row.push(if k == i {
                    Rational::one()
                } else {
                    Rational::zero()
                });
            }
            let b = self.rhs[i].clone();
            row.push(if negate { -b } else { b });
            rows.push(row);
        }
        let mut t = Tableau {
            rows,
            basis: (m..m + r).collect(),
            m: total,
        };

        // Phase-1 reduced costs: minimize the sum of artificials.
        let mut cost = vec![Rational::zero(); total + 1];
        for c in cost.iter_mut().take(total).skip(m) {
            *c = Rational::one();
        }
        for i in 0..r {
            let row = t.rows[i].clone();
            for (c, p) in cost.iter_mut().zip(&row) {
                *c -= p;
            }
        }
        if !t.optimize(&mut cost, &|_| true) {
            unreachable!("phase-1 objective is bounded below by zero");
        }
        // cost[total] holds −(phase-1 objective value)
        if cost[total].is_negative() {
            return LpOutcome::Infeasible;
        }

        // Drive remaining artificials out of the basis.
        let mut redundant: Vec<usize> = Vec::new();
        for i in 0..r {
            if t.basis[i] >= m {
                debug_assert!(t.rhs(i).is_zero());
                match (0..m).find(|&j| !t.rows[i][j].is_zero()) {
                    Some(j) => t.pivot(i, j),
                    None => redundant.push(i),
                }
            }
        }
        redundant.sort_unstable();
        for (removed, &i) in redundant.iter().enumerate() {
            t.rows.remove(i - removed);
            t.basis.remove(i - removed);
        }

        // Phase 2 on structural columns only.
        let mut cost: Vec<Rational> = self.objective.clone();
        cost.extend(vec![Rational::zero(); r + 1]);
        for (i, &b) in t.basis.clone().iter().enumerate() {
            let factor = cost[b].clone();
            if !factor.is_zero() {
                let row = t.rows[i].clone();
                for (c, p) in cost.iter_mut().zip(&row) {
                    *c -= &factor * p;
                }
            }
        }
        if !t.optimize(&mut cost, &|j| j < m) {
            return LpOutcome::Unbounded;
        }

        let mut variables = vec![Rational::zero(); m];
        for (i, &b) in t.basis.iter().enumerate() {
            debug_assert!(b < m, "artificials were driven out");
            variables[b] = t.rhs(i).clone();
        }
        let mut value = Rational::zero();
        for (v, c) in variables.iter().zip(&self.objective) {
            value += v * c;
        }

        let duals = self.multipliers(&t.basis, redundant);
        LpOutcome::Optimal(LpSolution {
            value,
            variables,
            duals,
        })
    }

    /// Solves `E_Bᵀ π = c_B` for the multipliers of the surviving rows and
    /// re-inserts zeros for dropped redundant rows.
    fn multipliers(&self, basis: &[usize], redundant: Vec<usize>) -> Vec<Rational> {
        let keep: Vec<usize> = (0..self.constraints.len())
            .filter(|i| !redundant.contains(i))
            .collect();
        let k = keep.len();
        debug_assert_eq!(basis.len(), k);
        // Build the kxk system: rows indexed by basis column, unknowns π.
        let mut a: Vec<Vec<Rational>> = Vec::with_capacity(k);
        let mut b: Vec<Rational> = Vec::with_capacity(k);
        for &col in basis {
            a.push(
                keep.iter()
                    .map(|&i| self.constraints[i][col].clone())
                    .collect(),
            );
            b.push(self.objective[col].clone());
        }
        gaussian_solve(&mut a, &mut b);
        let mut duals = vec![Rational::zero(); self.constraints.len()];
        for (slot, &i) in keep.iter().enumerate() {
            duals[i] = b[slot].clone();
        }
        duals
    }
}

/// In-place exact Gaussian elimination; `a` must be square nonsingular.
fn gaussian_solve(a: &mut [Vec<Rational>], b: &mut [Rational]) {
    let n = a.len();
    for col in 0..n {
        let pivot_row = (col..n)
            .find(|&i| !a[i][col].is_zero())
            .expect("basis matrix is nonsingular");
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        let pivot = a[col][col].clone();
        for entry in a[col][col..].iter_mut() {
            *entry /= &pivot;
        }
        b[col] /= &pivot;
        let eliminated = a[col].clone();
        for i in 0..n {
            if i == col {
                continue;
            }
            let factor = a[i][col].clone();
            if factor.is_zero() {
                continue;
            }
            for (entry, p) in a[i][col..].iter_mut().zip(&eliminated[col..]) {
                *entry -= &factor * p;
            }
            let v = &factor * &b[col];
            b[i] -= v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    fn lp(
        constraints: Vec<Vec<i64>>,
        rhs: Vec<i64>,
        objective: Vec<i64>,
    ) -> StandardLp {
        StandardLp {
            constraints: constraints
                .into_iter()
                .map(|row| row.into_iter().map(rat).collect())
                .collect(),
            rhs: rhs.into_iter().map(rat).collect(),
            objective: objective.into_iter().map(rat).collect(),
        }
    }

    #[test]
    fn simple_optimum() {
        // min −x − y  s.t.  x + y + s = 4, x + 2s' ... keep it basic:
        // min −x−y s.t. x + y + s = 4, x − y + t = 2, all ≥ 0 → x=3, y=1
        let p = lp(
            vec![vec![1, 1, 1, 0], vec![1, -1, 0, 1]],
            vec![4, 2],
            vec![-1, -1, 0, 0],
        );
        match p.solve() {
            LpOutcome::Optimal(sol) => {
                assert_eq!(sol.value, rat(-4));
                assert_eq!(sol.variables[0], rat(3));
                assert_eq!(sol.variables[1], rat(1));
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn detects_infeasible() {
        // x + y = −1, x,y ≥ 0
        let p = lp(vec![vec![1, 1]], vec![-1], vec![1, 1]);
        assert!(matches!(p.solve(), LpOutcome::Infeasible));
    }

    #[test]
    fn detects_unbounded() {
        // min −x s.t. x − y = 0 → x can grow forever
        let p = lp(vec![vec![1, -1]], vec![0], vec![-1, 0]);
        assert!(matches!(p.solve(), LpOutcome::Unbounded));
    }

    #[test]
    fn handles_redundant_rows() {
        let p = lp(
            vec![vec![1, 1], vec![2, 2], vec![1, 0]],
            vec![4, 8, 1],
            vec![1, 1],
        );
        match p.solve() {
            LpOutcome::Optimal(sol) => assert_eq!(sol.value, rat(4)),
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn duals_satisfy_strong_duality() {
        // min x + 2y s.t. x + y = 3, x − y = 1 → x=2, y=1, value 4
        let p = lp(vec![vec![1, 1], vec![1, -1]], vec![3, 1], vec![1, 2]);
        match p.solve() {
            LpOutcome::Optimal(sol) => {
                assert_eq!(sol.value, rat(4));
                // f·π = value
                let fdot = &sol.duals[0] * rat(3) + &sol.duals[1] * rat(1);
                assert_eq!(fdot, rat(4));
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn exact_fractions_survive() {
        // min x s.t. 3x = 1
        let p = StandardLp {
            constraints: vec![vec![rat(3)]],
            rhs: vec![rat(1)],
            objective: vec![rat(1)],
        };
        match p.solve() {
            LpOutcome::Optimal(sol) => assert_eq!(sol.value, ratio(1, 3)),
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn bland_rule_survives_beale_cycling_instance() {
        // The classic degenerate program on which the largest-coefficient
        // rule cycles forever. Slacks included; optimum −1/20 at
        // x = (1/25, 0, 1, 0).
        use alloc::vec;
        let p = StandardLp {
            constraints: vec![
                vec![
                    ratio(1, 4),
                    rat(-60),
                    ratio(-1, 25),
                    rat(9),
                    rat(1),
                    rat(0),
                    rat(0),
                ],
                vec![
                    ratio(1, 2),
                    rat(-90),
                    ratio(-1, 50),
                    rat(3),
                    rat(0),
                    rat(1),
                    rat(0),
                ],
                vec![rat(0), rat(0), rat(1), rat(0), rat(0), rat(0), rat(1)],
            ],
            rhs: vec![rat(0), rat(0), rat(1)],
            objective: vec![
                ratio(-3, 4),
                rat(150),
                ratio(-1, 50),
                rat(6),
                rat(0),
                rat(0),
                rat(0),
            ],
        };
        match p.solve() {
            LpOutcome::Optimal(sol) => {
                assert_eq!(sol.value, ratio(-1, 20));
                assert_eq!(sol.variables[0], ratio(1, 25));
                assert_eq!(sol.variables[2], rat(1));
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }
}
