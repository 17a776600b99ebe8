//! Menu-level analyses: the `T(b)` bound, discretization, and unit-demand rewrites.

mod discretize;
mod tbound;
mod unit_demand;

pub use discretize::{
    discretize_two_item, price_ranges, round_grid_k, Certificate, DiscretizationReport, EntryTrace, Parameters,
    PaymentRow,
};
pub use tbound::{t_values, tight_distribution, tight_distribution_from, TBoundReport, TBoundRow};
pub use unit_demand::{split_bundle_lottery, unit_demand_scale, BundleLottery};
