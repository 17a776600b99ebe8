//! Exact linear programming and the LP formulations of revenue maximization.

pub(crate) mod formulations;
mod simplex;

pub use formulations::{
    price_lp_for_assignment, rev_lp, AllocationMode, AssignmentLp, RevLpResult,
};
pub use simplex::solve_lp;

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{self, zero, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    /// Sparse coefficients `(variable, coefficient)`.
    pub coeffs: Vec<(usize, Rational)>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// Variable bounds; `None` means unbounded on that side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bound {
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
}

impl Bound {
    pub fn nonnegative() -> Self {
        Bound { lower: Some(zero()), upper: None }
    }

    pub fn free() -> Self {
        Bound { lower: None, upper: None }
    }

    pub fn between(lower: Rational, upper: Rational) -> Self {
        Bound { lower: Some(lower), upper: Some(upper) }
    }
}

/// A linear program over exact rationals. Variables default to `[0, ∞)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    pub bounds: Vec<Bound>,
}

impl LinearProgram {
    pub fn new(sense: Sense, num_vars: usize) -> Self {
        LinearProgram {
            sense,
            objective: vec![zero(); num_vars],
            constraints: Vec::new(),
            bounds: vec![Bound::nonnegative(); num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add_var(&mut self, objective: Rational, bound: Bound) -> usize {
        self.objective.push(objective);
        self.bounds.push(bound);
        self.objective.len() - 1
    }

    pub fn add_constraint(&mut self, coeffs: Vec<(usize, Rational)>, relation: Relation, rhs: Rational) {
        self.constraints.push(Constraint { coeffs, relation, rhs });
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        if self.bounds.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: self.bounds.len() });
        }
        for c in &self.constraints {
            if let Some(&(j, _)) = c.coeffs.iter().find(|(j, _)| *j >= n) {
                return Err(Error::IndexOutOfRange { index: j, len: n });
            }
        }
        for (j, b) in self.bounds.iter().enumerate() {
            if let (Some(l), Some(u)) = (&b.lower, &b.upper) {
                if l > u {
                    return Err(Error::invalid(format!("variable {j} has lower bound above upper bound")));
                }
            }
        }
        Ok(())
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        self.objective.iter().zip(x).fold(zero(), |acc, (c, v)| acc + c * v)
    }

    /// Exact feasibility check of an assignment against every constraint and bound.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        if x.len() != self.num_vars() {
            return false;
        }
        let bounds_ok = self.bounds.iter().zip(x).all(|(b, v)| {
            b.lower.as_ref().is_none_or(|l| v >= l) && b.upper.as_ref().is_none_or(|u| v <= u)
        });
        bounds_ok
            && self.constraints.iter().all(|c| {
                let lhs = c.coeffs.iter().fold(zero(), |acc, (j, a)| acc + a * &x[*j]);
                match c.relation {
                    Relation::Le => lhs <= c.rhs,
                    Relation::Ge => lhs >= c.rhs,
                    Relation::Eq => lhs == c.rhs,
                }
            })
    }
}

/// Plain-text dump in an LP-file-like layout, for debugging.
impl fmt::Display for LinearProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let term = |c: &Rational, j: usize| format!("{} x{j}", rational::format(c));
        let sense = match self.sense {
            Sense::Maximize => "maximize",
            Sense::Minimize => "minimize",
        };
        let obj: Vec<String> = self
            .objective
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| term(c, j))
            .collect();
        writeln!(f, "{sense}\n  {}", if obj.is_empty() { "0".into() } else { obj.join(" + ") })?;
        writeln!(f, "subject to")?;
        for c in &self.constraints {
            let lhs: Vec<String> = c.coeffs.iter().map(|(j, a)| term(a, *j)).collect();
            let rel = match c.relation {
                Relation::Le => "<=",
                Relation::Ge => ">=",
                Relation::Eq => "=",
            };
            writeln!(f, "  {} {rel} {}", lhs.join(" + "), rational::format(&c.rhs))?;
        }
        writeln!(f, "bounds")?;
        for (j, b) in self.bounds.iter().enumerate() {
            let lo = b.lower.as_ref().map_or("-inf".to_string(), rational::format);
            let hi = b.upper.as_ref().map_or("inf".to_string(), rational::format);
            writeln!(f, "  {lo} <= x{j} <= {hi}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Optimal objective value; zero unless `status` is `Optimal`.
    pub value: Rational,
    /// Optimal assignment; empty unless `status` is `Optimal`.
    pub x: Vec<Rational>,
}

impl LpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}
