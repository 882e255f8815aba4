//! Low-index search for the one-sided congruences of a finitely presented
//! monoid with a bounded number of classes.
//!
//! The search builds standard word graphs edge by edge in depth-first
//! order. After every new edge the chosen deduction engine adds the edges
//! forced by the defining relations or reports a conflict; when the graph
//! becomes complete it is the word graph of a right congruence, and every
//! such congruence is reached exactly once.

mod engine;
mod graph;
mod parallel;
mod search;

pub use engine::{deduction_engines, DeductionEngine, DeductionFactory, FelschEngine, NaiveEngine};
pub use graph::SearchGraph;
pub use parallel::{parallel_count, parallel_for_each, parallel_stats, SearchStats};
pub use search::{
    all_right_congruences, audit_graph, compatible_incremental, count_right_congruences, for_each_right_congruence,
    AllRightCongruences, PendingDefinition, SearchConfig, SearchState, Side,
};
