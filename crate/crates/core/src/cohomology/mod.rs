//! Twisted cochain complexes, their cohomology, induced maps and cup
//! products.
//!
//! A `p`-cochain assigns to each `p`-simplex a value in the fiber over its
//! least vertex. With that anchoring only the 0th face of the coboundary
//! needs a transport, and the triangle cocycle condition is exactly what
//! makes `δ ∘ δ = 0`.

pub mod cochain;
pub mod maps;
pub mod twisted;

use thiserror::Error;

use crate::local_system::Edge;

pub use cochain::{betti_from_ranks, Cochain, CochainComplex, CohomologyResult};
pub use maps::{
    check_gauge_condition, cochain_map, cup, find_gauge, induced_map, lefschetz_number, CohomologySpace,
    InducedMap,
};
pub use twisted::{betti, coboundary_matrix, cohomology, h0_criterion, relative_cohomology, TwistedComplex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("the second complex is not a subcomplex of the first")]
    NotASubcomplex,
    #[error("weights do not form a cocycle: {}", .0.join("; "))]
    InvalidCocycle(Vec<String>),
    #[error("coboundary {0} composed with the next one is not zero")]
    NotAComplex(usize),
    #[error("pulled-back weights differ from the gauged source weights on edge {}-{}", .0.0, .0.1)]
    GaugeMismatch(Edge),
    #[error("map, weights and cohomology spaces live on different complexes")]
    ComplexMismatch,
}
