//! Exact rational linear programming.
//!
//! A dense two-phase simplex method with Bland's anti-cycling rule. All
//! variables are non-negative; constraints carry an explicit relation.
//! Problem sizes in this crate are tiny (a handful of rows, a few dozen
//! columns), so a plain tableau is the right tool.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type Rat = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub rel: Relation,
    pub rhs: Rat,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rat>, rel: Relation, rhs: Rat) -> Self {
        Self { coeffs, rel, rhs }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rat, point: Vec<Rat> },
}

impl Outcome {
    pub fn value(&self) -> Option<&Rat> {
        match self {
            Outcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

/// Maximizes `objective · x` subject to `constraints` and `x >= 0`.
pub fn maximize(num_vars: usize, objective: &[Rat], constraints: &[Constraint]) -> Outcome {
    debug_assert_eq!(objective.len(), num_vars);
    Tableau::build(num_vars, constraints).solve(objective)
}

/// Minimizes `objective · x`; the reported value is the minimum.
pub fn minimize(num_vars: usize, objective: &[Rat], constraints: &[Constraint]) -> Outcome {
    let neg: Vec<Rat> = objective.iter().map(|c| -c).collect();
    match maximize(num_vars, &neg, constraints) {
        Outcome::Optimal { value, point } => Outcome::Optimal { value: -value, point },
        other => other,
    }
}

/// Returns a feasible point, if one exists.
pub fn feasible(num_vars: usize, constraints: &[Constraint]) -> Option<Vec<Rat>> {
    let mut t = Tableau::build(num_vars, constraints);
    if !t.phase_one() {
        return None;
    }
    Some(t.primal())
}

struct Tableau {
    /// rows x (cols + 1); last column is the right-hand side.
    a: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    num_vars: usize,
    cols: usize,
    /// Columns at or beyond this index are artificial.
    first_artificial: usize,
}

impl Tableau {
    fn build(num_vars: usize, constraints: &[Constraint]) -> Self {
        let m = constraints.len();
        // Normalize so every rhs is non-negative.
        let rows: Vec<(Vec<Rat>, Relation, Rat)> = constraints
            .iter()
            .map(|c| {
                debug_assert_eq!(c.coeffs.len(), num_vars);
                if c.rhs.is_negative() {
                    let rel = match c.rel {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                    (c.coeffs.iter().map(|x| -x).collect(), rel, -c.rhs.clone())
                } else {
                    (c.coeffs.clone(), c.rel, c.rhs.clone())
                }
            })
            .collect();

        let num_slack = rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let num_art = rows.iter().filter(|r| r.1 != Relation::Le).count();
        let first_artificial = num_vars + num_slack;
        let cols = first_artificial + num_art;

        let mut a = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut slack = num_vars;
        let mut art = first_artificial;
        for (coeffs, rel, rhs) in rows {
            let mut row = vec![Rat::zero(); cols + 1];
            row[..num_vars].clone_from_slice(&coeffs);
            row[cols] = rhs;
            match rel {
                Relation::Le => {
                    row[slack] = Rat::one();
                    basis.push(slack);
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -Rat::one();
                    slack += 1;
                    row[art] = Rat::one();
                    basis.push(art);
                    art += 1;
                }
                Relation::Eq => {
                    row[art] = Rat::one();
                    basis.push(art);
                    art += 1;
                }
            }
            a.push(row);
        }
        Tableau { a, basis, num_vars, cols, first_artificial }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.a[r][c].recip();
        for x in self.a[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = self.a[r].clone();
        for (i, row) in self.a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Reduced costs for maximizing `cost` (indexed by column).
    fn reduced_costs(&self, cost: &[Rat]) -> Vec<Rat> {
        let mut d: Vec<Rat> = cost.to_vec();
        for (row, &b) in self.a.iter().zip(&self.basis) {
            if cost[b].is_zero() {
                continue;
            }
            for (dj, x) in d.iter_mut().zip(row.iter()) {
                if !x.is_zero() {
                    *dj -= &cost[b] * x;
                }
            }
        }
        d
    }

    /// Runs the simplex loop; `allowed` bounds the entering columns.
    /// Returns false when unbounded.
    fn optimize(&mut self, cost: &[Rat], allowed: usize) -> bool {
        loop {
            let d = self.reduced_costs(cost);
            // Bland: smallest index with positive reduced cost enters.
            let Some(enter) = (0..allowed).find(|&j| d[j].is_positive()) else {
                return true;
            };
            let mut leave: Option<(usize, Rat)> = None;
            for (i, row) in self.a.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[self.cols] / &row[enter];
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
            match leave {
                None => return false,
                Some((r, _)) => self.pivot(r, enter),
            }
        }
    }

    /// Drives the artificial variables to zero. Returns feasibility.
    fn phase_one(&mut self) -> bool {
        if self.first_artificial == self.cols {
            return true;
        }
        let mut cost = vec![Rat::zero(); self.cols];
        for c in cost.iter_mut().skip(self.first_artificial) {
            *c = -Rat::one();
        }
        self.optimize(&cost, self.cols);
        let infeasible = self
            .a
            .iter()
            .zip(&self.basis)
            .any(|(row, &b)| b >= self.first_artificial && !row[self.cols].is_zero());
        if infeasible {
            return false;
        }
        // Pivot remaining (zero-valued) artificials out of the basis; rows
        // where that is impossible are redundant.
        let mut r = 0;
        while r < self.a.len() {
            if self.basis[r] >= self.first_artificial {
                if let Some(c) = (0..self.first_artificial).find(|&j| !self.a[r][j].is_zero()) {
                    self.pivot(r, c);
                } else {
                    self.a.remove(r);
                    self.basis.remove(r);
                    continue;
                }
            }
            r += 1;
        }
        true
    }

    fn primal(&self) -> Vec<Rat> {
        let mut x = vec![Rat::zero(); self.num_vars];
        for (row, &b) in self.a.iter().zip(&self.basis) {
            if b < self.num_vars {
                x[b] = row[self.cols].clone();
            }
        }
        x
    }

    fn solve(mut self, objective: &[Rat]) -> Outcome {
        if !self.phase_one() {
            return Outcome::Infeasible;
        }
        let mut cost = vec![Rat::zero(); self.cols];
        cost[..self.num_vars].clone_from_slice(objective);
        if !self.optimize(&cost, self.first_artificial) {
            return Outcome::Unbounded;
        }
        let point = self.primal();
        let value = point
            .iter()
            .zip(objective)
            .fold(Rat::zero(), |acc, (x, c)| acc + x * c);
        Outcome::Optimal { value, point }
    }
}
