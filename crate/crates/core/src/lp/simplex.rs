//! Phase-I simplex over any [`Scalar`], with Bland's rule.
//!
//! Only feasibility is decided: variables are `x >= 0`, constraints are rows
//! `sum coeff * x (<=|>=|=) rhs`. Bland's smallest-index rule for both the
//! entering and the leaving variable guarantees termination without any
//! perturbation, so with an exact scalar the verdict carries no tolerance.

use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

impl Relation {
    fn flipped(self) -> Self {
        match self {
            Relation::Le => Relation::Ge,
            Relation::Ge => Relation::Le,
            Relation::Eq => Relation::Eq,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Constraint<T> {
    pub coeffs: Vec<(usize, T)>,
    pub relation: Relation,
    pub rhs: T,
}

/// Linear feasibility problem over non-negative variables.
#[derive(Debug, Clone)]
pub struct FeasibilityProblem<T> {
    num_vars: usize,
    constraints: Vec<Constraint<T>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PhaseOneOutcome<T> {
    Feasible(Vec<T>),
    Infeasible,
}

/// Outcome plus the number of pivots spent.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseOneRun<T> {
    pub outcome: PhaseOneOutcome<T>,
    pub pivots: usize,
}

impl<T: Scalar> FeasibilityProblem<T> {
    pub fn new(num_vars: usize) -> Self {
        FeasibilityProblem {
            num_vars,
            constraints: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn constraints(&self) -> &[Constraint<T>] {
        &self.constraints
    }

    pub fn add(&mut self, coeffs: Vec<(usize, T)>, relation: Relation, rhs: T) {
        debug_assert!(coeffs.iter().all(|(j, _)| *j < self.num_vars));
        self.constraints.push(Constraint { coeffs, relation, rhs });
    }

    /// Checks a point against every row, within the scalar's tolerance.
    pub fn is_satisfied_by(&self, x: &[T]) -> bool {
        x.len() == self.num_vars
            && x.iter().all(|v| !v.is_negative_tol())
            && self.constraints.iter().all(|c| {
                let lhs = c
                    .coeffs
                    .iter()
                    .fold(T::zero(), |acc, (j, a)| acc + a.clone() * x[*j].clone());
                let gap = lhs - c.rhs.clone();
                match c.relation {
                    Relation::Le => !gap.is_positive_tol(),
                    Relation::Ge => !gap.is_negative_tol(),
                    Relation::Eq => gap.is_zero_tol(),
                }
            })
    }

    pub fn solve(&self) -> PhaseOneOutcome<T> {
        self.solve_counting().outcome
    }

    pub fn solve_counting(&self) -> PhaseOneRun<T> {
        Tableau::build(self).run()
    }
}

/// Dense tableau. Columns: structural, then one auxiliary per row
/// (slack or surplus), then artificials. The last column is the rhs.
struct Tableau<T> {
    rows: Vec<Vec<T>>,
    /// Phase-I reduced costs; the rhs slot holds `-w`.
    cost: Vec<T>,
    basis: Vec<usize>,
    num_vars: usize,
    width: usize,
}

impl<T: Scalar> Tableau<T> {
    fn build(problem: &FeasibilityProblem<T>) -> Self {
        let m = problem.constraints.len();
        let n = problem.num_vars;
        let artificial_rows: Vec<usize> = problem
            .constraints
            .iter()
            .enumerate()
            .filter(|(_, c)| {
                let relation = if c.rhs.is_negative_tol() {
                    c.relation.flipped()
                } else {
                    c.relation
                };
                relation != Relation::Le
            })
            .map(|(i, _)| i)
            .collect();
        let art_base = n + m;
        let width = art_base + artificial_rows.len() + 1;
        let rhs_col = width - 1;

        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut next_art = art_base;
        for (i, c) in problem.constraints.iter().enumerate() {
            let negate = c.rhs.is_negative_tol();
            let relation = if negate { c.relation.flipped() } else { c.relation };
            let sign = |v: T| if negate { -v } else { v };
            let mut row = vec![T::zero(); width];
            for (j, a) in &c.coeffs {
                row[*j] = row[*j].clone() + sign(a.clone());
            }
            row[rhs_col] = sign(c.rhs.clone());
            match relation {
                Relation::Le => {
                    row[n + i] = T::one();
                    basis.push(n + i);
                }
                Relation::Ge => {
                    row[n + i] = -T::one();
                    row[next_art] = T::one();
                    basis.push(next_art);
                    next_art += 1;
                }
                Relation::Eq => {
                    row[next_art] = T::one();
                    basis.push(next_art);
                    next_art += 1;
                }
            }
            rows.push(row);
        }

        let mut cost = vec![T::zero(); width];
        for &i in &artificial_rows {
            for (j, v) in rows[i].iter().enumerate() {
                if j < art_base || j == rhs_col {
                    cost[j] = cost[j].clone() - v.clone();
                }
            }
        }
        Tableau {
            rows,
            cost,
            basis,
            num_vars: n,
            width,
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v = v.clone() / p.clone();
            }
        }
        let support: Vec<usize> = (0..self.width).filter(|&j| !self.rows[r][j].is_zero()).collect();
        let pivot_row = self.rows[r].clone();
        let eliminate = |target: &mut Vec<T>| {
            let factor = target[c].clone();
            if factor.is_zero() {
                return;
            }
            for &j in &support {
                target[j] = target[j].clone() - factor.clone() * pivot_row[j].clone();
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.cost);
        self.basis[r] = c;
    }

    fn run(mut self) -> PhaseOneRun<T> {
        let rhs = self.width - 1;
        let mut pivots = 0;
        while let Some(enter) = (0..rhs).find(|&j| self.cost[j].is_negative_tol()) {
            let mut leave: Option<(usize, T)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive_tol() {
                    continue;
                }
                let q = row[rhs].clone() / row[enter].clone();
                let better = match &leave {
                    None => true,
                    Some((best_i, best_q)) => {
                        let diff = q.clone() - best_q.clone();
                        diff.is_negative_tol() || (diff.is_zero_tol() && self.basis[i] < self.basis[*best_i])
                    }
                };
                if better {
                    leave = Some((i, q));
                }
            }
            // Phase-I objective is bounded below by zero, so a ratio row always exists.
            let (r, _) = leave.expect("phase-I objective cannot be unbounded");
            self.pivot(r, enter);
            pivots += 1;
        }

        let residual = -self.cost[rhs].clone();
        let outcome = if residual.is_positive_tol() {
            PhaseOneOutcome::Infeasible
        } else {
            let mut x = vec![T::zero(); self.num_vars];
            for (i, &b) in self.basis.iter().enumerate() {
                if b < self.num_vars {
                    x[b] = self.rows[i][rhs].clone();
                }
            }
            PhaseOneOutcome::Feasible(x)
        };
        PhaseOneRun { outcome, pivots }
    }
}
