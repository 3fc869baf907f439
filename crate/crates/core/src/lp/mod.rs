//! Small dense linear programs: `maximize c.x` subject to linear inequality
//! rows and optional per-variable bounds.
//!
//! [`DenseSimplex`] is the built-in solver; anything implementing
//! [`LpSolver`] can be plugged in instead.

mod format;
mod simplex;

pub use format::write_lp_format;
pub use simplex::DenseSimplex;

use thiserror::Error;

/// Constraint violation allowed in an optimal solution.
pub const FEASIBILITY_TOL: f64 = 1e-7;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LpError {
    #[error("constraint {row} has {found} coefficients, model has {expected} variables")]
    RowLength {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("non-finite coefficient in {0}")]
    NonFinite(String),
    #[error("variable {index}: lower bound {lower} exceeds upper bound {upper}")]
    InvertedBounds {
        index: usize,
        lower: f64,
        upper: f64,
    },
    #[error("simplex exceeded {0} iterations")]
    IterationLimit(usize),
    #[error("solution violates constraint {row} by {violation} (numerical failure)")]
    Numerical { row: usize, violation: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
    pub name: Option<String>,
}

impl Constraint {
    /// Left-hand side at `x`.
    pub fn activity(&self, x: &[f64]) -> f64 {
        self.coeffs.iter().zip(x).map(|(a, v)| a * v).sum()
    }

    /// Amount by which `x` violates the row (zero when satisfied).
    pub fn violation(&self, x: &[f64]) -> f64 {
        let lhs = self.activity(x);
        match self.relation {
            Relation::Le => (lhs - self.rhs).max(0.0),
            Relation::Ge => (self.rhs - lhs).max(0.0),
            Relation::Eq => (lhs - self.rhs).abs(),
        }
    }
}

/// Maximisation LP over named real variables. Variables are free unless
/// bounded with [`LpModel::set_bounds`].
#[derive(Debug, Clone, PartialEq)]
pub struct LpModel {
    names: Vec<String>,
    objective: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    constraints: Vec<Constraint>,
}

impl LpModel {
    pub fn new() -> Self {
        LpModel {
            names: Vec::new(),
            objective: Vec::new(),
            lower: Vec::new(),
            upper: Vec::new(),
            constraints: Vec::new(),
        }
    }

    /// Adds a free variable with objective coefficient `cost`; returns its index.
    pub fn add_var(&mut self, name: impl Into<String>, cost: f64) -> usize {
        self.names.push(name.into());
        self.objective.push(cost);
        self.lower.push(f64::NEG_INFINITY);
        self.upper.push(f64::INFINITY);
        for c in &mut self.constraints {
            c.coeffs.push(0.0);
        }
        self.names.len() - 1
    }

    pub fn set_bounds(&mut self, var: usize, lower: f64, upper: f64) {
        self.lower[var] = lower;
        self.upper[var] = upper;
    }

    /// Adds a row from sparse `(variable, coefficient)` terms.
    pub fn add_constraint(
        &mut self,
        terms: &[(usize, f64)],
        relation: Relation,
        rhs: f64,
    ) -> usize {
        let mut coeffs = vec![0.0; self.num_vars()];
        for &(v, a) in terms {
            coeffs[v] += a;
        }
        self.push_row(Constraint {
            coeffs,
            relation,
            rhs,
            name: None,
        })
    }

    /// Adds a dense row as-is; its length is checked by [`LpModel::check`].
    pub fn push_row(&mut self, row: Constraint) -> usize {
        self.constraints.push(row);
        self.constraints.len() - 1
    }

    pub fn name_last_row(&mut self, name: impl Into<String>) {
        if let Some(c) = self.constraints.last_mut() {
            c.name = Some(name.into());
        }
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn objective(&self) -> &[f64] {
        &self.objective
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn bounds(&self, var: usize) -> (f64, f64) {
        (self.lower[var], self.upper[var])
    }

    /// Well-formedness: row lengths match and all data is finite (bounds may be infinite).
    pub fn check(&self) -> Result<(), LpError> {
        let n = self.num_vars();
        if self.objective.iter().any(|c| !c.is_finite()) {
            return Err(LpError::NonFinite("objective".into()));
        }
        for (index, (&lower, &upper)) in self.lower.iter().zip(&self.upper).enumerate() {
            if lower.is_nan()
                || upper.is_nan()
                || lower == f64::INFINITY
                || upper == f64::NEG_INFINITY
            {
                return Err(LpError::NonFinite(format!("bounds of variable {index}")));
            }
            if lower > upper {
                return Err(LpError::InvertedBounds {
                    index,
                    lower,
                    upper,
                });
            }
        }
        for (row, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != n {
                return Err(LpError::RowLength {
                    row,
                    expected: n,
                    found: c.coeffs.len(),
                });
            }
            if c.coeffs.iter().any(|a| !a.is_finite()) || !c.rhs.is_finite() {
                return Err(LpError::NonFinite(format!("constraint {row}")));
            }
        }
        Ok(())
    }

    /// Largest row or bound violation at `x`.
    pub fn max_violation(&self, x: &[f64]) -> (usize, f64) {
        let mut worst = (0, 0.0);
        for (row, c) in self.constraints.iter().enumerate() {
            let v = c.violation(x);
            if v > worst.1 {
                worst = (row, v);
            }
        }
        for (i, &v) in x.iter().enumerate() {
            let viol = (self.lower[i] - v).max(v - self.upper[i]).max(0.0);
            if viol > worst.1 {
                worst = (self.constraints.len() + i, viol);
            }
        }
        worst
    }
}

impl Default for LpModel {
    fn default() -> Self {
        LpModel::new()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Objective value; meaningful only when optimal.
    pub objective: f64,
    /// Variable assignment; empty unless optimal.
    pub values: Vec<f64>,
    pub iterations: usize,
}

impl LpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

pub trait LpSolver {
    fn solve(&self, model: &LpModel) -> Result<LpSolution, LpError>;
}

/// Solves with the default [`DenseSimplex`].
pub fn solve_lp(model: &LpModel) -> Result<LpSolution, LpError> {
    DenseSimplex::default().solve(model)
}
