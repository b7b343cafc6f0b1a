//! A small propagation engine: bounds-only domains with a trail, a
//! fixpoint loop over posted propagators, depth-first search, and the
//! bi-objective driver for the rentals problem.

pub mod among;
pub mod network;
pub mod pareto;
pub mod search;

pub use among::{among_filter, Among, AmongSpec};
pub use network::{Channel, Domains, FocusProp, Network, Propagator, SumLeq};
pub use pareto::{
    oracle_frontier, pareto_rentals, random_rentals, weakly_dominates, RentalsInstance,
    RentalsModel, Unsatisfiable,
};
pub use search::{minimize, solve_all, SearchStats};
