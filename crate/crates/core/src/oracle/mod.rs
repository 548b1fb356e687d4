//! Dense linear-algebra cross-checks at small dimension: explicit operators,
//! joint fixed spaces, group enumeration and the group-average projector.

pub mod compare;
pub mod dense;
pub mod fixed;

pub use compare::{compare_basis, ComparisonReport};
pub use dense::{
    average_projector, densify, densify_all, group_enumerate, DenseOperator, DEFAULT_DENSE_CAP,
    DEFAULT_ELEMENT_CAP,
};
pub use fixed::{joint_fixed_space, FixedSpaceBasis, SparseVector};
