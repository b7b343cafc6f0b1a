//! Bounds-consistency propagators for the FOCUS family of sequence
//! constraints: SpringyFocus, weighted FOCUS and weighted springy FOCUS.
//!
//! The [`oracle`] module holds an exhaustive reference implementation used
//! to test the propagators, and [`solver`] a small propagation engine with
//! depth-first search and a Pareto driver for the rentals problem.

pub mod corpus;
pub mod dp;
pub mod error;
pub mod model;
pub mod oracle;
pub mod solver;
pub mod springy;
pub mod weighted;
pub mod weighted_springy;

pub use error::{CoverViolation, Infeasible, ModelError, OracleError};
pub use model::{
    check_cover, cover_is_valid, label, Cover, FocusInstance, FocusParams, IntInterval, VarLabel,
    Variant,
};

/// Runs the bounds-consistency filter matching the instance's variant.
pub fn propagate(inst: &FocusInstance) -> Result<FocusInstance, Infeasible> {
    match inst.variant() {
        Variant::Focus | Variant::Springy => springy::springy_filter(inst),
        Variant::Weighted => weighted::bc_filter_w(inst),
        Variant::WeightedSpringy => weighted_springy::bc_filter_wh(inst),
    }
}
