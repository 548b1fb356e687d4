//! Builders for the standard example families. Each returns the generator set
//! together with the results the analysis is expected to reproduce.

pub mod aklt;
pub mod circuit;
pub mod coset;
pub mod dicke;
pub mod group_table;
pub mod lattice;
pub mod laughlin;
pub mod lme;
pub mod pauli_fixtures;
pub mod quantum_double;

use serde::Serialize;

use crate::op::generators::GeneratorSet;
use crate::space::BasisVector;

pub use aklt::{
    aklt_amplitude, aklt_representatives, aklt_witness, build_aklt, AkltLabel, Boundary,
};
pub use circuit::{build_coherent_prob, RevGate, ReversibleCircuit};
pub use coset::{build_coset, dual_subgroup, CyclicProduct};
pub use dicke::{build_dicke, build_w};
pub use group_table::FiniteGroupTable;
pub use lattice::SphereLattice;
pub use laughlin::build_laughlin;
pub use lme::build_lme;
pub use pauli_fixtures::{build_pauli, cluster_path, five_qubit_code, ghz3};
pub use quantum_double::{build_quantum_double, flat_connections};

/// What analysis of a fixture should find. `None` marks a quantity the
/// builder does not predict.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Expected {
    /// Dimension of the stabilized space.
    pub dimension: Option<usize>,
    /// Number of basis vectors in the union of supported orbits.
    pub support_size: Option<u64>,
    /// A basis vector in the support.
    pub representative: Option<BasisVector>,
    /// Number of orbits partitioning the whole basis.
    pub total_orbits: Option<u64>,
    /// Every generator is a pure permutation or a pure diagonal.
    pub pure_group: bool,
}

/// A named generator set with its expected analysis.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub gens: GeneratorSet,
    pub expected: Expected,
}

impl Fixture {
    /// Wrap a generator set; `pure_group` is computed from the generators.
    pub fn new(name: impl Into<String>, gens: GeneratorSet, expected: Expected) -> Fixture {
        let pure_group = gens.is_pure();
        Fixture {
            name: name.into(),
            gens,
            expected: Expected {
                pure_group,
                ..expected
            },
        }
    }
}

/// `n choose k` as `u64`, `None` on overflow.
pub(crate) fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}
