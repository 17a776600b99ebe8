//! Two-phase primal simplex on a dense rational tableau with Bland's rule.
//!
//! Pivots only touch the nonzero columns of the pivot row and the rows with a
//! nonzero entry in the pivot column, which keeps the sparse IC systems of the
//! revenue LPs cheap despite the dense storage.

use num_traits::{One, Signed, Zero};

use super::{LinearProgram, LpSolution, LpStatus, Relation, Sense};
use crate::error::Result;
use crate::rational::{zero, Rational};

/// How an original variable is expressed through nonnegative tableau columns:
/// `x = offset + Σ sign·y`.
struct VarMap {
    offset: Rational,
    cols: Vec<(usize, bool)>,
}

struct Row {
    coeffs: Vec<(usize, Rational)>,
    relation: Relation,
    rhs: Rational,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// Reduced-cost row; the last entry holds minus the objective value.
    z: Vec<Rational>,
    /// Columns excluded from entering (artificials in phase two).
    blocked: Vec<bool>,
}

enum Outcome {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn rhs_col(&self) -> usize {
        self.z.len() - 1
    }

    fn pivot(&mut self, r: usize, e: usize) {
        let rhs = self.rhs_col();
        let piv = self.rows[r][e].clone();
        if !piv.is_one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v /= &piv;
                }
            }
        }
        let nz: Vec<usize> = (0..=rhs).filter(|&j| !self.rows[r][j].is_zero()).collect();
        let prow: Vec<Rational> = nz.iter().map(|&j| self.rows[r][j].clone()).collect();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][e].is_zero() {
                continue;
            }
            let f = self.rows[i][e].clone();
            let row = &mut self.rows[i];
            for (&j, p) in nz.iter().zip(&prow) {
                row[j] -= &f * p;
            }
        }
        if !self.z[e].is_zero() {
            let f = self.z[e].clone();
            for (&j, p) in nz.iter().zip(&prow) {
                self.z[j] -= &f * p;
            }
        }
        self.basis[r] = e;
    }

    /// Runs Bland's-rule pivots until optimal or unbounded (maximization).
    fn optimize(&mut self) -> Outcome {
        let rhs = self.rhs_col();
        loop {
            let Some(e) = (0..rhs).find(|&j| !self.blocked[j] && self.z[j].is_positive()) else {
                return Outcome::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][e];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rows[i][rhs] / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, e),
                None => return Outcome::Unbounded,
            }
        }
    }

    /// Reduced costs for a maximization objective `c` over tableau columns.
    fn set_objective(&mut self, c: &[Rational]) {
        let rhs = self.rhs_col();
        let mut z: Vec<Rational> = c.to_vec();
        z.push(zero());
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &c[b];
            if cb.is_zero() {
                continue;
            }
            for j in 0..=rhs {
                let t = &self.rows[i][j];
                if !t.is_zero() {
                    z[j] -= cb * t;
                }
            }
        }
        self.z = z;
    }
}

/// Solves `lp` exactly.
pub fn solve_lp(lp: &LinearProgram) -> Result<LpSolution> {
    lp.validate()?;

    // Substitute variables so every tableau column is nonnegative.
    let mut maps = Vec::with_capacity(lp.num_vars());
    let mut ncols = 0usize;
    let mut bound_rows: Vec<Row> = Vec::new();
    for b in &lp.bounds {
        match (&b.lower, &b.upper) {
            (Some(l), upper) => {
                let y = ncols;
                ncols += 1;
                if let Some(u) = upper {
                    bound_rows.push(Row { coeffs: vec![(y, Rational::one())], relation: Relation::Le, rhs: u - l });
                }
                maps.push(VarMap { offset: l.clone(), cols: vec![(y, true)] });
            }
            (None, Some(u)) => {
                maps.push(VarMap { offset: u.clone(), cols: vec![(ncols, false)] });
                ncols += 1;
            }
            (None, None) => {
                maps.push(VarMap { offset: zero(), cols: vec![(ncols, true), (ncols + 1, false)] });
                ncols += 2;
            }
        }
    }

    let mut rows: Vec<Row> = Vec::with_capacity(lp.constraints.len() + bound_rows.len());
    for c in &lp.constraints {
        let mut dense = vec![zero(); ncols];
        let mut rhs = c.rhs.clone();
        for (j, a) in &c.coeffs {
            if a.is_zero() {
                continue;
            }
            let m = &maps[*j];
            rhs -= a * &m.offset;
            for &(col, positive) in &m.cols {
                if positive {
                    dense[col] += a;
                } else {
                    dense[col] -= a;
                }
            }
        }
        let coeffs = dense.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
        rows.push(Row { coeffs, relation: c.relation, rhs });
    }
    rows.extend(bound_rows);

    // Normalize to nonnegative right-hand sides.
    for row in rows.iter_mut() {
        if row.rhs.is_negative() {
            row.rhs = -row.rhs.clone();
            for (_, v) in row.coeffs.iter_mut() {
                *v = -v.clone();
            }
            row.relation = match row.relation {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
    }

    let n_slack = rows.iter().filter(|r| r.relation != Relation::Eq).count();
    let n_art = rows.iter().filter(|r| r.relation != Relation::Le).count();
    let width = ncols + n_slack + n_art;
    let art_start = ncols + n_slack;

    let mut table = Vec::with_capacity(rows.len());
    let mut basis = Vec::with_capacity(rows.len());
    let (mut next_slack, mut next_art) = (ncols, art_start);
    for row in &rows {
        let mut t = vec![zero(); width + 1];
        for (j, v) in &row.coeffs {
            t[*j] = v.clone();
        }
        t[width] = row.rhs.clone();
        match row.relation {
            Relation::Le => {
                t[next_slack] = Rational::one();
                basis.push(next_slack);
                next_slack += 1;
            }
            Relation::Ge => {
                t[next_slack] = -Rational::one();
                next_slack += 1;
                t[next_art] = Rational::one();
                basis.push(next_art);
                next_art += 1;
            }
            Relation::Eq => {
                t[next_art] = Rational::one();
                basis.push(next_art);
                next_art += 1;
            }
        }
        table.push(t);
    }

    let mut tab = Tableau { rows: table, basis, z: vec![zero(); width + 1], blocked: vec![false; width] };

    if n_art > 0 {
        let mut c1 = vec![zero(); width];
        for v in c1.iter_mut().skip(art_start) {
            *v = -Rational::one();
        }
        tab.set_objective(&c1);
        tab.optimize();
        if !tab.z[width].is_zero() {
            return Ok(LpSolution { status: LpStatus::Infeasible, value: zero(), x: Vec::new() });
        }
        // Drive remaining (zero-level) artificials out of the basis.
        let mut i = 0;
        while i < tab.rows.len() {
            if tab.basis[i] >= art_start {
                match (0..art_start).find(|&j| !tab.rows[i][j].is_zero()) {
                    Some(j) => {
                        tab.pivot(i, j);
                        i += 1;
                    }
                    None => {
                        // redundant row
                        tab.rows.remove(i);
                        tab.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
        for b in tab.blocked.iter_mut().skip(art_start) {
            *b = true;
        }
    }

    // Phase two: maximize (negated for minimization).
    let mut c2 = vec![zero(); width];
    for (m, c) in maps.iter().zip(&lp.objective) {
        let c = if lp.sense == Sense::Maximize { c.clone() } else { -c.clone() };
        for &(col, positive) in &m.cols {
            c2[col] = if positive { c.clone() } else { -c.clone() };
        }
    }
    tab.set_objective(&c2);
    if let Outcome::Unbounded = tab.optimize() {
        return Ok(LpSolution { status: LpStatus::Unbounded, value: zero(), x: Vec::new() });
    }

    let mut y = vec![zero(); width];
    for (i, &b) in tab.basis.iter().enumerate() {
        y[b] = tab.rows[i][width].clone();
    }
    let x: Vec<Rational> = maps
        .iter()
        .map(|m| {
            m.cols.iter().fold(m.offset.clone(), |acc, &(col, positive)| {
                if positive {
                    acc + &y[col]
                } else {
                    acc - &y[col]
                }
            })
        })
        .collect();
    let value = lp.objective_value(&x);
    Ok(LpSolution { status: LpStatus::Optimal, value, x })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use crate::solver::Bound;

    #[test]
    fn bounded_single_variable() {
        let mut lp = LinearProgram::new(Sense::Maximize, 1);
        lp.objective[0] = int(1);
        lp.add_constraint(vec![(0, int(1))], Relation::Le, int(3));
        let s = solve_lp(&lp).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.value, int(3));
    }

    #[test]
    fn unbounded_single_variable() {
        let mut lp = LinearProgram::new(Sense::Maximize, 1);
        lp.objective[0] = int(1);
        assert_eq!(solve_lp(&lp).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn two_variable_vertex() {
        let mut lp = LinearProgram::new(Sense::Maximize, 2);
        lp.objective = vec![int(1), int(1)];
        lp.add_constraint(vec![(0, int(1)), (1, int(2))], Relation::Le, int(4));
        lp.add_constraint(vec![(0, int(3)), (1, int(1))], Relation::Le, int(6));
        let s = solve_lp(&lp).unwrap();
        assert_eq!(s.value, rat(14, 5));
        assert_eq!(s.x, vec![rat(8, 5), rat(6, 5)]);
        assert!(lp.is_feasible(&s.x));
    }

    #[test]
    fn infeasible_system() {
        let mut lp = LinearProgram::new(Sense::Minimize, 1);
        lp.add_constraint(vec![(0, int(1))], Relation::Ge, int(2));
        lp.add_constraint(vec![(0, int(1))], Relation::Le, int(1));
        assert_eq!(solve_lp(&lp).unwrap().status, LpStatus::Infeasible);
    }

    #[test]
    fn equality_free_and_negative_bounds() {
        // min x0 - x1 with x0 free, -3 <= x1 <= -1, x0 + x1 = 2
        let mut lp = LinearProgram::new(Sense::Minimize, 2);
        lp.objective = vec![int(1), int(-1)];
        lp.bounds[0] = Bound::free();
        lp.bounds[1] = Bound::between(int(-3), int(-1));
        lp.add_constraint(vec![(0, int(1)), (1, int(1))], Relation::Eq, int(2));
        let s = solve_lp(&lp).unwrap();
        // x0 = 2 - x1, objective 2 - 2 x1, minimized at x1 = -1
        assert_eq!(s.x, vec![int(3), int(-1)]);
        assert_eq!(s.value, int(4));
    }

    #[test]
    fn upper_bounded_only_variable() {
        let mut lp = LinearProgram::new(Sense::Maximize, 1);
        lp.objective[0] = int(-1);
        lp.bounds[0] = Bound { lower: None, upper: Some(int(5)) };
        assert_eq!(solve_lp(&lp).unwrap().status, LpStatus::Unbounded);
        lp.objective[0] = int(1);
        assert_eq!(solve_lp(&lp).unwrap().value, int(5));
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LinearProgram::new(Sense::Maximize, 2);
        lp.objective = vec![int(1), int(0)];
        lp.add_constraint(vec![(0, int(1)), (1, int(1))], Relation::Eq, int(1));
        lp.add_constraint(vec![(0, int(2)), (1, int(2))], Relation::Eq, int(2));
        let s = solve_lp(&lp).unwrap();
        assert_eq!(s.value, int(1));
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's classic cycling LP; Bland's rule must terminate.
        let mut lp = LinearProgram::new(Sense::Maximize, 4);
        lp.objective = vec![rat(3, 4), int(-150), rat(1, 50), int(-6)];
        lp.add_constraint(
            vec![(0, rat(1, 4)), (1, int(-60)), (2, rat(-1, 25)), (3, int(9))],
            Relation::Le,
            int(0),
        );
        lp.add_constraint(
            vec![(0, rat(1, 2)), (1, int(-90)), (2, rat(-1, 50)), (3, int(3))],
            Relation::Le,
            int(0),
        );
        lp.add_constraint(vec![(2, int(1))], Relation::Le, int(1));
        let s = solve_lp(&lp).unwrap();
        assert_eq!(s.value, rat(1, 20));
    }

    #[test]
    fn bad_index_is_rejected() {
        let mut lp = LinearProgram::new(Sense::Maximize, 1);
        lp.add_constraint(vec![(3, int(1))], Relation::Le, int(1));
        assert!(solve_lp(&lp).is_err());
    }
}
