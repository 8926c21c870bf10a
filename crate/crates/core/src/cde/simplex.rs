//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! Problems are in equality form: maximize `c·x` subject to `A x = b`, `x >= 0`.

use num_traits::{Signed, Zero};

use crate::rational::{one, zero, Rational};

#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub constraints: Vec<Vec<Rational>>,
    pub rhs: Vec<Rational>,
    pub objective: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Rational,
    pub x: Vec<Rational>,
    /// Basic variables, sorted.
    pub basis: Vec<usize>,
    pub pivots: usize,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    /// Reduced costs, with minus the objective value in the last slot.
    cost: Vec<Rational>,
    basis: Vec<usize>,
    /// Columns allowed to enter the basis.
    allowed: Vec<bool>,
    pivots: usize,
    degenerate_run: usize,
}

/// Consecutive degenerate pivots tolerated before switching to Bland's rule.
const DEGENERATE_LIMIT: usize = 50;

enum Step {
    Optimal,
    Unbounded,
    Pivoted,
}

fn eliminate(target: &mut [Rational], pivot_row: &[Rational], col: usize) {
    if target[col].is_zero() {
        return;
    }
    let factor = target[col].clone();
    for (x, y) in target.iter_mut().zip(pivot_row) {
        if !y.is_zero() {
            *x -= &factor * y;
        }
    }
}

impl Tableau {
    fn new(rows: Vec<Vec<Rational>>, basis: Vec<usize>, width: usize) -> Self {
        Tableau { rows, cost: vec![zero(); width + 1], basis, allowed: vec![true; width], pivots: 0, degenerate_run: 0 }
    }

    fn width(&self) -> usize {
        self.allowed.len()
    }

    fn rhs(&self, r: usize) -> &Rational {
        &self.rows[r][self.width()]
    }

    /// Install a cost vector, pricing out the current basis.
    fn set_cost(&mut self, cost: &[Rational]) {
        let mut row: Vec<Rational> = cost.iter().cloned().chain(std::iter::once(zero())).collect();
        for r in 0..self.rows.len() {
            let c = cost[self.basis[r]].clone();
            if !c.is_zero() {
                for (x, y) in row.iter_mut().zip(&self.rows[r]) {
                    if !y.is_zero() {
                        *x -= &c * y;
                    }
                }
            }
        }
        self.cost = row;
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col].clone();
        for x in self.rows[row].iter_mut() {
            if !x.is_zero() {
                *x = &*x / &p;
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[row]);
        for other in self.rows.iter_mut() {
            if !other.is_empty() {
                eliminate(other, &pivot_row, col);
            }
        }
        eliminate(&mut self.cost, &pivot_row, col);
        self.rows[row] = pivot_row;
        self.basis[row] = col;
        self.pivots += 1;
    }

    /// One pivot minimizing the installed cost: Dantzig's rule, or Bland's
    /// rule after a long degenerate run.
    fn step(&mut self) -> Step {
        let bland = self.degenerate_run >= DEGENERATE_LIMIT;
        let mut entering: Option<usize> = None;
        for j in 0..self.width() {
            if !self.allowed[j] || !self.cost[j].is_negative() {
                continue;
            }
            if bland {
                entering = Some(j);
                break;
            }
            if entering.is_none_or(|e| self.cost[j] < self.cost[e]) {
                entering = Some(j);
            }
        }
        let Some(col) = entering else {
            return Step::Optimal;
        };
        let mut best: Option<(usize, Rational)> = None;
        for r in 0..self.rows.len() {
            let a = &self.rows[r][col];
            if !a.is_positive() {
                continue;
            }
            let ratio = self.rhs(r) / a;
            let better = match &best {
                None => true,
                Some((br, bv)) => ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br]),
            };
            if better {
                best = Some((r, ratio));
            }
        }
        match best {
            None => Step::Unbounded,
            Some((row, ratio)) => {
                if ratio.is_zero() {
                    self.degenerate_run += 1;
                } else {
                    self.degenerate_run = 0;
                }
                self.pivot(row, col);
                Step::Pivoted
            }
        }
    }

    fn run(&mut self) -> bool {
        self.degenerate_run = 0;
        loop {
            match self.step() {
                Step::Optimal => return true,
                Step::Unbounded => return false,
                Step::Pivoted => {}
            }
        }
    }

    /// Value of the installed cost at the current basic solution.
    fn value(&self) -> Rational {
        -self.cost[self.width()].clone()
    }
}

impl LinearProgram {
    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn maximize(&self) -> LpOutcome {
        let n = self.num_vars();
        let m = self.constraints.len();
        assert!(self.rhs.len() == m && self.constraints.iter().all(|r| r.len() == n), "ragged LP");

        // phase 1: one artificial per row, right-hand sides made nonnegative
        let width = n + m;
        let rows = (0..m)
            .map(|r| {
                let flip = self.rhs[r].is_negative();
                let sign = |q: &Rational| if flip { -q } else { q.clone() };
                let mut row: Vec<Rational> = self.constraints[r].iter().map(sign).collect();
                row.extend((0..m).map(|a| if a == r { one() } else { zero() }));
                row.push(sign(&self.rhs[r]));
                row
            })
            .collect();
        let mut t = Tableau::new(rows, (n..width).collect(), width);
        let phase1_cost: Vec<Rational> = (0..width).map(|j| if j < n { zero() } else { one() }).collect();
        t.set_cost(&phase1_cost);
        t.run();
        if !t.value().is_zero() {
            return LpOutcome::Infeasible;
        }

        // drive zero-level artificials out, dropping redundant rows
        let mut r = 0;
        while r < t.rows.len() {
            if t.basis[r] >= n {
                match (0..n).find(|&j| !t.rows[r][j].is_zero()) {
                    Some(col) => t.pivot(r, col),
                    None => {
                        t.rows.remove(r);
                        t.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
        for j in n..width {
            t.allowed[j] = false;
        }

        // phase 2 minimizes -c
        let cost: Vec<Rational> =
            (0..width).map(|j| if j < n { -self.objective[j].clone() } else { zero() }).collect();
        t.set_cost(&cost);
        if !t.run() {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![zero(); n];
        for (row, &b) in t.basis.iter().enumerate() {
            x[b] = t.rhs(row).clone();
        }
        let value = -t.value();
        let mut basis = t.basis.clone();
        basis.sort_unstable();
        LpOutcome::Optimal(LpSolution { value, x, basis, pivots: t.pivots })
    }

    pub fn minimize(&self) -> LpOutcome {
        let negated = LinearProgram {
            constraints: self.constraints.clone(),
            rhs: self.rhs.clone(),
            objective: self.objective.iter().map(|c| -c).collect(),
        };
        match negated.maximize() {
            LpOutcome::Optimal(mut s) => {
                s.value = -s.value;
                LpOutcome::Optimal(s)
            }
            other => other,
        }
    }
}
