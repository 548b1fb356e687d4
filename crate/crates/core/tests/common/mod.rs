#![allow(dead_code)]

use monostab::families::Fixture;
use monostab::group::{orbit_basis, OrbitBasis, Seeds};
use monostab::oracle::{compare_basis, joint_fixed_space, ComparisonReport, DEFAULT_DENSE_CAP};
use monostab::BasisVector;

pub const ORBIT_CAP: usize = 1_000_000;

/// Exhaustive orbit partition of a fixture's whole basis.
pub fn exhaustive(f: &Fixture) -> OrbitBasis {
    let basis = orbit_basis(&f.gens, &Seeds::Exhaustive, ORBIT_CAP).unwrap();
    assert!(basis.is_conclusive(), "{}", f.name);
    basis
}

pub fn support_size(basis: &OrbitBasis) -> u64 {
    basis.states().map(|s| s.size() as u64).sum()
}

/// Check every predicted quantity against the orbit machinery.
pub fn check_expected(f: &Fixture) -> OrbitBasis {
    let basis = exhaustive(f);
    let e = &f.expected;
    if let Some(d) = e.dimension {
        assert_eq!(basis.dimension(), d, "{} dimension", f.name);
    }
    if let Some(s) = e.support_size {
        assert_eq!(support_size(&basis), s, "{} support size", f.name);
    }
    if let Some(t) = e.total_orbits {
        assert_eq!(basis.total_orbits() as u64, t, "{} orbit count", f.name);
    }
    if let Some(r) = &e.representative {
        assert!(
            supported(&basis, r),
            "{} representative {r} not supported",
            f.name
        );
    }
    basis
}

pub fn supported(basis: &OrbitBasis, x: &BasisVector) -> bool {
    basis.states().any(|s| s.contains(x))
}

/// Dense oracle comparison; panics on oracle errors.
pub fn oracle_report(f: &Fixture, basis: &OrbitBasis) -> ComparisonReport {
    let fixed = joint_fixed_space(&f.gens, DEFAULT_DENSE_CAP).unwrap();
    let states: Vec<_> = basis.states().map(|s| s.to_sparse()).collect();
    compare_basis(f.gens.space(), &fixed, &states).unwrap()
}

pub mod pool {
    use std::sync::Arc;

    use monostab::op::{
        CustomPermutation, DiagonalFn, GeneratorSet, LocalMonomialGate, MonomialOp, PermutationFn,
    };
    use monostab::{BasisVector, Phase, SiteSpace};
    use proptest::prelude::*;

    /// Primitive operators of every kind on `n >= 3` qubits.
    pub fn qubit_primitives(n: usize) -> Vec<MonomialOp> {
        let e = |g: LocalMonomialGate, s: Vec<usize>| MonomialOp::embed(g, s).unwrap();
        let t = LocalMonomialGate::diagonal(
            vec![2],
            vec![Phase::ONE, Phase::root_of_unity(1, 8).unwrap()],
        )
        .unwrap();
        let phased_swap = LocalMonomialGate::from_action(vec![2, 2], |v| {
            (
                vec![v[1], v[0]],
                if v[0] != v[1] { Phase::I } else { Phase::ONE },
            )
        })
        .unwrap();
        let rotate = CustomPermutation::new(
            "rotate sites",
            |x: &BasisVector| {
                let mut v = x.0.clone();
                v.rotate_left(1);
                BasisVector(v)
            },
            |x: &BasisVector| {
                let mut v = x.0.clone();
                v.rotate_right(1);
                BasisVector(v)
            },
        );
        let table: Vec<Phase> = (0..1u64 << n)
            .map(|i| Phase::root_of_unity((i * 5 % 7) as i64, 6).unwrap())
            .collect();
        vec![
            e(LocalMonomialGate::not(), vec![0]),
            e(LocalMonomialGate::swap(2), vec![0, 1]),
            e(LocalMonomialGate::cnot(), vec![1, 2]),
            e(LocalMonomialGate::toffoli(), vec![2, 0, 1]),
            e(LocalMonomialGate::qudit_z(2, 1).unwrap(), vec![n - 1]),
            e(t, vec![1]),
            e(phased_swap, vec![n - 1, 0]),
            MonomialOp::constant(Phase::I),
            MonomialOp::diagonal(DiagonalFn::Hamming {
                den: 3,
                slope: 1,
                offset: 2,
            }),
            MonomialOp::diagonal(DiagonalFn::Clause {
                literals: vec![1, -2, 3],
            }),
            MonomialOp::diagonal(DiagonalFn::Table {
                dims: vec![2; n],
                phases: Arc::new(table),
            }),
            MonomialOp::Permutation(PermutationFn::Custom(rotate)),
        ]
    }

    /// Products of primitives, each factor possibly inverted.
    pub fn arb_op(n: usize) -> impl Strategy<Value = MonomialOp> {
        let count = qubit_primitives(n).len();
        prop::collection::vec((0..count, any::<bool>()), 1..5).prop_map(move |picks| {
            let prims = qubit_primitives(n);
            let factors: Vec<MonomialOp> = picks
                .into_iter()
                .map(|(i, inv)| {
                    let op = prims[i].clone();
                    if inv {
                        op.inverse()
                    } else {
                        op
                    }
                })
                .collect();
            if factors.len() == 1 {
                factors.into_iter().next().unwrap()
            } else {
                MonomialOp::Product(factors)
            }
        })
    }

    pub fn arb_vector(n: usize) -> impl Strategy<Value = BasisVector> {
        prop::collection::vec(0u32..2, n).prop_map(BasisVector)
    }

    /// A generator set of one to three random operators on `n` qubits.
    pub fn arb_gens(n: usize) -> impl Strategy<Value = GeneratorSet> {
        prop::collection::vec(arb_op(n), 1..4).prop_map(move |ops| {
            let mut g = GeneratorSet::new(SiteSpace::qubits(n).unwrap());
            for (i, op) in ops.into_iter().enumerate() {
                g.push(format!("G{i}"), op).unwrap();
            }
            g
        })
    }
}
