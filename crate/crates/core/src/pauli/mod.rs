//! GF(2) linear algebra and the fast path for Pauli stabilizer groups.

pub mod gf2;
pub mod label;
pub mod stabilizer;

pub use gf2::{gf2_nullspace, gf2_solve, Gf2Matrix, Gf2Vector};
pub use label::{pauli_mul, pauli_to_monomial, qudit_pauli, PauliLabel};
pub use stabilizer::{
    random_stabilizer_group, CosetSupport, DiagonalGenerator, PauliStabilizerGroup,
};
