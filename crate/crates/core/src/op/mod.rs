//! Monomial operators and generator sets.

pub mod format;
pub mod gate;
pub mod generators;
pub mod monomial;

pub use gate::LocalMonomialGate;
pub use generators::{invert_word, GeneratorSet, Letter, Word};
pub use monomial::{
    compose, invert, CustomDiagonal, CustomPermutation, DiagonalFn, MonomialOp, PermutationFn,
    PlaquetteRule, Purity, VertexRule,
};
