//! Exact revenue computations for a single buyer facing a multi-item seller.
//!
//! Distributions have finite support and every number is an exact rational,
//! so revenue identities can be asserted as equalities. The crate covers
//! optimal and restricted revenues (bundling, separate sales, deterministic,
//! bounded menu size, unit demand), the generic gap constructions, the
//! bundling-comparison bound `T(b)` and menu discretization.

pub mod analysis;
pub mod combinatorics;
pub mod constructions;
pub mod error;
pub mod invariants;
pub mod model;
pub mod rational;
pub mod revenue;
pub mod solver;

pub use error::{Error, Result};
pub use model::{
    evaluate_additive_choice, evaluate_choice, expected_additive_revenue, expected_revenue,
    scale_distribution, scale_menu, symmetrize, AdditiveMenu, Atom, ChoiceResult,
    FiniteDistribution, Menu, MenuEntry, ValuationPoint,
};
pub use rational::{Extended, Rational};
pub use solver::{price_lp_for_assignment, rev_lp, solve_lp, LinearProgram, LpSolution, LpStatus};
