//! Orbits, Schreier trees, the support test and orbit bases.

pub mod basis;
pub mod support;
pub mod tree;

pub use basis::{orbit_basis, orbit_state, OrbitBasis, OrbitEntry, OrbitState, Seeds, SparseState};
pub use support::{schreier_generators, support_test, SchreierGenerator, SupportVerdict, Witness};
pub use tree::{orbit_bfs, transversal_phase, SchreierTree, DEFAULT_ORBIT_CAP};
