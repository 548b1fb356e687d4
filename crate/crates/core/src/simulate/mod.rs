//! Sampling M-states and estimating Pauli and local expectation values.

pub mod estimate;
pub mod sampling;

pub use estimate::{
    estimate_local, estimate_pauli, exact_pauli, hoeffding_n, pauli_coefficients, Estimate, Method,
    PauliWord,
};
pub use sampling::{
    random_walk, random_word, rng_from_seed, sample_orbit, sample_orbit_many, sample_random_word,
    MState, PauliCosetState,
};
