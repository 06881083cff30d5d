//! Weak odd domination on simple graphs.
//!
//! A set `B` is weakly odd dominated (WOD) when some `C ⊆ V ∖ B` gives every
//! vertex of `B` an odd number of neighbours in `C`. This crate computes the
//! largest WOD set size `κ`, the smallest non-WOD set size `κ'`, and the
//! quantum threshold `κ_Q = max(κ, n − κ')`, each with a checkable
//! certificate; decides the parameterized threshold questions; builds the
//! reduction gadgets that relate these problems to Oddset; and verifies
//! those reductions against exact solvers on small instances.

pub mod bitset;
pub mod bounds;
pub mod error;
pub mod graph;
pub mod kernel;
pub mod miner;
pub mod reductions;

pub use bitset::VertexSet;
pub use error::{Error, Result};
pub use graph::Graph;
pub use kernel::{
    even_set, is_wod, kappa, kappa_prime, kappa_q, odd_neighborhood, verify_certificate, Certificate, ExactLimits,
    NonWodCertificate, WodCertificate,
};
