//! Odd/Even operators, WOD decision, and exact κ, κ', κ_Q.

mod bounded;
mod certificate;
mod exact;
mod gf2;
mod odd;

pub use bounded::{kappa_at_least_bounded, kappa_prime_at_most, kappa_q_at_least_bounded, subsets_up_to};
pub use certificate::{verify_certificate, Certificate, NonWodCertificate, WodCertificate};
pub use exact::{
    kappa, kappa_prime, kappa_prime_with, kappa_q, kappa_q_with, kappa_with, ExactLimits, QuantumThreshold,
    DEFAULT_MAX_ORDER, HARD_MAX_ORDER,
};
pub use gf2::{is_wod, is_wod_bruteforce, Gf2System, BRUTEFORCE_FREE_LIMIT};
pub use odd::{even_set, odd_neighborhood, odd_neighborhood_by_rows};

pub(crate) use bounded::SubsetWalk;
