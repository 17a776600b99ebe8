//! Revenue maximization as linear programs over incentive constraints.
//!
//! Only incentive constraints between support atoms are imposed, plus
//! individual rationality for each atom. By the taxation principle the menu
//! read off an optimal solution is then incentive compatible for every type.

use num_traits::One;

use super::{solve_lp, Bound, LinearProgram, LpSolution, LpStatus, Relation, Sense};
use crate::error::{Error, Result};
use crate::model::{FiniteDistribution, Menu, MenuEntry};
use crate::rational::{one, zero, Rational};

#[derive(Clone, Debug)]
pub struct RevLpResult {
    pub value: Rational,
    /// Canonical witness: one entry per atom, duplicates merged, zero entry dropped.
    pub menu: Menu,
    pub lp: LinearProgram,
    pub solution: LpSolution,
}

/// Optimal revenue over all IC/IR mechanisms for a finite distribution. With
/// `unit_demand`, allocations are further restricted to `Σ_i q_i ≤ 1`.
pub fn rev_lp(dist: &FiniteDistribution, unit_demand: bool) -> Result<RevLpResult> {
    if dist.is_empty() {
        return Err(Error::EmptyDistribution);
    }
    let groups = vec![GroupSpec::Free; dist.len()];
    let assignment: Vec<Option<usize>> = (0..dist.len()).map(Some).collect();
    let built = build_group_lp(dist, &groups, &assignment, unit_demand);
    let solution = solve_lp(&built.lp)?;
    if solution.status != LpStatus::Optimal {
        // The all-zero mechanism is always feasible and revenue is bounded by Σ x_i.
        unreachable!("revenue LP is feasible and bounded, got {:?}", solution.status);
    }
    let entries = built.read_entries(&solution.x);
    let menu = Menu::dedup(dist.k(), entries)?.canonicalized();
    Ok(RevLpResult { value: solution.value.clone(), menu, lp: built.lp, solution })
}

/// How the allocations of the menu entries are treated in an assignment LP.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AllocationMode {
    /// Entry allocations are given; only prices are optimized.
    Fixed(Vec<Vec<Rational>>),
    /// `groups` entries whose allocations and prices are both LP variables.
    Free { groups: usize, unit_demand: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssignmentLp {
    pub value: Rational,
    /// One entry per group, in group order (unused groups included).
    pub entries: Vec<MenuEntry>,
}

/// Best revenue when each atom is forced to pick its assigned entry
/// (`None` = the zero entry). Returns `Ok(None)` when no prices realize the
/// assignment.
pub fn price_lp_for_assignment(
    dist: &FiniteDistribution,
    mode: &AllocationMode,
    assignment: &[Option<usize>],
) -> Result<Option<AssignmentLp>> {
    if assignment.len() != dist.len() {
        return Err(Error::DimensionMismatch { expected: dist.len(), found: assignment.len() });
    }
    let (groups, unit_demand) = match mode {
        AllocationMode::Fixed(allocs) => {
            let unit = one();
            for q in allocs {
                if q.len() != dist.k() {
                    return Err(Error::DimensionMismatch { expected: dist.k(), found: q.len() });
                }
                if q.iter().any(|v| *v < zero() || *v > unit) {
                    return Err(Error::invalid("allocation outside [0,1]"));
                }
            }
            (allocs.iter().cloned().map(GroupSpec::Fixed).collect::<Vec<_>>(), false)
        }
        AllocationMode::Free { groups, unit_demand } => (vec![GroupSpec::Free; *groups], *unit_demand),
    };
    if let Some(&g) = assignment.iter().flatten().find(|&&g| g >= groups.len()) {
        return Err(Error::IndexOutOfRange { index: g, len: groups.len() });
    }
    solve_group_lp(dist, &groups, assignment, unit_demand)
}

/// Entry specification for [`solve_group_lp`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum GroupSpec {
    Fixed(Vec<Rational>),
    Free,
}

pub(crate) fn solve_group_lp(
    dist: &FiniteDistribution,
    groups: &[GroupSpec],
    assignment: &[Option<usize>],
    unit_demand: bool,
) -> Result<Option<AssignmentLp>> {
    let built = build_group_lp(dist, groups, assignment, unit_demand);
    let sol = solve_lp(&built.lp)?;
    match sol.status {
        LpStatus::Optimal => Ok(Some(AssignmentLp { value: sol.value.clone(), entries: built.read_entries(&sol.x) })),
        LpStatus::Infeasible => Ok(None),
        LpStatus::Unbounded => unreachable!("assigned payments are bounded by valuations"),
    }
}

/// Variable layout of a group LP: per group an optional allocation block and a price.
struct GroupLp {
    lp: LinearProgram,
    k: usize,
    /// Per group: allocation variable offset (free groups) or fixed vector, and price variable.
    layout: Vec<(Result<usize, Vec<Rational>>, usize)>,
}

impl GroupLp {
    fn read_entries(&self, x: &[Rational]) -> Vec<MenuEntry> {
        self.layout
            .iter()
            .map(|(alloc, price)| {
                let q = match alloc {
                    Ok(off) => x[*off..*off + self.k].to_vec(),
                    Err(q) => q.clone(),
                };
                MenuEntry { q, s: x[*price].clone() }
            })
            .collect()
    }

    /// Coefficients of the utility `x·q_g − s_g` of atom point `x` for group `g`,
    /// plus a constant term when the allocation is fixed.
    fn utility_terms(&self, x: &[Rational], g: usize, sign: &Rational) -> (Vec<(usize, Rational)>, Rational) {
        let (alloc, price) = &self.layout[g];
        let mut terms = vec![(*price, -sign.clone())];
        let mut constant = zero();
        match alloc {
            Ok(off) => {
                for (i, xi) in x.iter().enumerate() {
                    if *xi != zero() {
                        terms.push((off + i, sign * xi));
                    }
                }
            }
            Err(q) => {
                constant = sign * crate::rational::dot(q, x);
            }
        }
        (terms, constant)
    }
}

fn build_group_lp(
    dist: &FiniteDistribution,
    groups: &[GroupSpec],
    assignment: &[Option<usize>],
    unit_demand: bool,
) -> GroupLp {
    let k = dist.k();
    let mut lp = LinearProgram::new(Sense::Maximize, 0);
    let mut layout = Vec::with_capacity(groups.len());
    for g in groups {
        let alloc = match g {
            GroupSpec::Free => {
                let off = lp.num_vars();
                for _ in 0..k {
                    lp.add_var(zero(), Bound::between(zero(), one()));
                }
                if unit_demand {
                    lp.add_constraint((off..off + k).map(|j| (j, one())).collect(), Relation::Le, one());
                }
                Ok(off)
            }
            GroupSpec::Fixed(q) => Err(q.clone()),
        };
        let price = lp.add_var(zero(), Bound::nonnegative());
        layout.push((alloc, price));
    }
    let mut built = GroupLp { lp, k, layout };

    for (a, atom) in dist.atoms().iter().enumerate() {
        let x = atom.x.values();
        let plus = one();
        let minus = -Rational::one();
        match assignment[a] {
            Some(g) => {
                built.lp.objective[built.layout[g].1] += &atom.p;
                let (own, own_c) = built.utility_terms(x, g, &plus);
                // IR: x·q_g − s_g ≥ 0
                built.lp.add_constraint(own.clone(), Relation::Ge, -own_c.clone());
                for h in 0..groups.len() {
                    if h == g {
                        continue;
                    }
                    let (other, other_c) = built.utility_terms(x, h, &minus);
                    let mut coeffs = own.clone();
                    coeffs.extend(other);
                    built.lp.add_constraint(coeffs, Relation::Ge, -(own_c.clone() + other_c));
                }
            }
            None => {
                for h in 0..groups.len() {
                    let (other, other_c) = built.utility_terms(x, h, &plus);
                    built.lp.add_constraint(other, Relation::Le, -other_c);
                }
            }
        }
    }
    built
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::expected_revenue;
    use crate::rational::{int, rat};

    #[test]
    fn single_type_full_extraction() {
        let f = FiniteDistribution::from_ints(2, &[(&[1, 1], (1, 1))]).unwrap();
        let r = rev_lp(&f, false).unwrap();
        assert_eq!(r.value, int(2));
        assert_eq!(r.menu.entries(), &[MenuEntry::from_ints(&[1, 1], 2)]);
        assert!(r.lp.is_feasible(&r.solution.x));
    }

    #[test]
    fn single_item_two_types() {
        let f = FiniteDistribution::from_ints(1, &[(&[1], (1, 2)), (&[2], (1, 2))]).unwrap();
        let r = rev_lp(&f, false).unwrap();
        assert_eq!(r.value, int(1));
        assert_eq!(expected_revenue(&r.menu, &f).unwrap(), int(1));
    }

    #[test]
    fn unit_demand_single_type() {
        let f = FiniteDistribution::from_ints(2, &[(&[1, 1], (1, 1))]).unwrap();
        let r = rev_lp(&f, true).unwrap();
        assert_eq!(r.value, int(1));
        let e = &r.menu.entries()[0];
        assert_eq!(e.s, int(1));
        assert!(e.allocation_total() <= one());
    }

    #[test]
    fn empty_distribution_is_rejected() {
        let f = FiniteDistribution::new(2, vec![]).unwrap();
        assert_eq!(rev_lp(&f, false).unwrap_err(), Error::EmptyDistribution);
    }

    #[test]
    fn fixed_assignment_examples() {
        let f = FiniteDistribution::from_ints(2, &[(&[1, 0], (1, 2)), (&[0, 2], (1, 2))]).unwrap();
        let mode = AllocationMode::Fixed(vec![vec![int(1), int(0)], vec![int(0), int(1)]]);
        let r = price_lp_for_assignment(&f, &mode, &[Some(0), Some(1)]).unwrap().unwrap();
        assert_eq!(r.value, rat(3, 2));
        assert_eq!(r.entries[0].s, int(1));
        assert_eq!(r.entries[1].s, int(2));

        let g = FiniteDistribution::from_ints(2, &[(&[1, 1], (1, 1))]).unwrap();
        let mode = AllocationMode::Fixed(vec![vec![int(1), int(1)]]);
        let r = price_lp_for_assignment(&g, &mode, &[Some(0)]).unwrap().unwrap();
        assert_eq!(r.value, int(2));

        let h = FiniteDistribution::from_ints(2, &[(&[1, 0], (1, 1))]).unwrap();
        let mode = AllocationMode::Fixed(vec![vec![int(0), int(1)]]);
        let r = price_lp_for_assignment(&h, &mode, &[Some(0)]).unwrap().unwrap();
        assert_eq!(r.value, int(0));
        assert_eq!(r.entries[0].s, int(0));
    }

    #[test]
    fn unrealizable_assignment_is_infeasible() {
        // The higher type cannot be kept out while the lower type buys.
        let f = FiniteDistribution::from_ints(1, &[(&[1], (1, 2)), (&[2], (1, 2))]).unwrap();
        let mode = AllocationMode::Fixed(vec![vec![int(1)]]);
        assert!(price_lp_for_assignment(&f, &mode, &[Some(0), None]).unwrap().is_none());
    }

    #[test]
    fn assignment_index_out_of_range() {
        let f = FiniteDistribution::from_ints(1, &[(&[1], (1, 1))]).unwrap();
        let mode = AllocationMode::Fixed(vec![vec![int(1)]]);
        assert!(matches!(
            price_lp_for_assignment(&f, &mode, &[Some(3)]),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn free_groups_recover_full_revenue() {
        let f = FiniteDistribution::from_ints(2, &[(&[1, 0], (1, 2)), (&[0, 2], (1, 2))]).unwrap();
        let mode = AllocationMode::Free { groups: 2, unit_demand: false };
        let r = price_lp_for_assignment(&f, &mode, &[Some(0), Some(1)]).unwrap().unwrap();
        assert_eq!(r.value, rev_lp(&f, false).unwrap().value);
    }
}
