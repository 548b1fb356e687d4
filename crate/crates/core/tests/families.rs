mod common;

use common::{check_expected, exhaustive, oracle_report, supported};
use monostab::families::{
    aklt_amplitude, aklt_representatives, build_aklt, build_coherent_prob, build_coset,
    build_dicke, build_laughlin, build_lme, build_quantum_double, build_w, cluster_path,
    five_qubit_code, flat_connections, ghz3, AkltLabel, Boundary, FiniteGroupTable, RevGate,
    ReversibleCircuit, SphereLattice,
};
use monostab::group::OrbitState;
use monostab::{BasisVector, Phase};
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn only_state(basis: &monostab::group::OrbitBasis) -> &OrbitState {
    let states: Vec<_> = basis.states().collect();
    assert_eq!(states.len(), 1);
    states[0]
}

/// `(amplitude, vector)` pairs of a state, sorted by vector.
fn amplitudes(s: &OrbitState) -> Vec<(String, Complex64)> {
    let mut v: Vec<_> = s
        .to_sparse()
        .into_iter()
        .map(|(x, a)| (x.to_string(), a))
        .collect();
    v.sort_by(|a, b| a.0.cmp(&b.0));
    v
}

fn assert_state(s: &OrbitState, expected: &[(&str, Complex64)]) {
    let got = amplitudes(s);
    assert_eq!(got.len(), expected.len());
    for ((x, a), (y, b)) in got.iter().zip(expected) {
        assert_eq!(x, y);
        assert!((a - b).norm() < 1e-12, "{x}: {a} vs {b}");
    }
}

#[test]
fn w_and_dicke_metadata_hold() {
    for n in 2..=7 {
        for k in 1..n {
            let f = build_dicke(n, k).unwrap();
            let basis = check_expected(&f);
            if n <= 6 {
                assert!(oracle_report(&f, &basis).passed, "{}", f.name);
            }
        }
    }
}

#[test]
fn w4_is_uniform_over_weight_one() {
    let f = build_w(4).unwrap();
    let basis = check_expected(&f);
    let h = 0.5;
    assert_state(
        only_state(&basis),
        &[
            ("0001", c(h, 0.0)),
            ("0010", c(h, 0.0)),
            ("0100", c(h, 0.0)),
            ("1000", c(h, 0.0)),
        ],
    );
}

#[test]
fn dicke_2_1_is_bell_like() {
    let f = build_dicke(2, 1).unwrap();
    let basis = check_expected(&f);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    assert_state(only_state(&basis), &[("01", c(r, 0.0)), ("10", c(r, 0.0))]);
}

/// Parity class of a qutrit string for even n.
fn parity_class(x: &BasisVector) -> AkltLabel {
    let odd = |v: u32| x.values().iter().filter(|&&a| a == v).count() % 2 == 1;
    match (odd(0), odd(1), odd(2)) {
        (false, false, false) => AkltLabel::I,
        (false, true, true) => AkltLabel::X,
        (true, false, true) => AkltLabel::Y,
        (true, true, false) => AkltLabel::Z,
        _ => unreachable!("even n"),
    }
}

#[test]
fn aklt_orbits_are_parity_classes() {
    for n in [4, 6] {
        for bc in [Boundary::Open, Boundary::Periodic] {
            let f = build_aklt(n, bc).unwrap();
            let basis = check_expected(&f);
            let reps = aklt_representatives(n).unwrap();
            for e in &basis.entries {
                let class = parity_class(e.min());
                let (_, rep) = reps.iter().find(|(l, _)| *l == class).unwrap();
                assert_eq!(parity_class(rep), class);
                // Every member of the orbit shares the class of its minimum.
                if let monostab::group::OrbitEntry::Supported(s) = e {
                    assert!(s.tree().members().all(|y| parity_class(y) == class));
                }
            }
            for (label, rep) in &reps {
                let expect_supported = bc == Boundary::Open || *label == AkltLabel::I;
                assert_eq!(
                    supported(&basis, rep),
                    expect_supported,
                    "{label:?} n={n} {bc}"
                );
            }
        }
    }
}

#[test]
fn aklt_states_match_trace_formula() {
    for n in [4, 6] {
        for bc in [Boundary::Open, Boundary::Periodic] {
            let f = build_aklt(n, bc).unwrap();
            let basis = exhaustive(&f);
            for s in basis.states() {
                let label = match bc {
                    Boundary::Open => parity_class(s.rep()),
                    Boundary::Periodic => AkltLabel::I,
                };
                let norm: f64 = f
                    .gens
                    .space()
                    .basis()
                    .map(|y| aklt_amplitude(label, &y).unwrap().norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                let phase = s.amplitude(s.rep()) / (aklt_amplitude(label, s.rep()).unwrap() / norm);
                for y in f.gens.space().basis() {
                    let target = aklt_amplitude(label, &y).unwrap() / norm * phase;
                    assert!((s.amplitude(&y) - target).norm() <= 1e-9, "{y} n={n} {bc}");
                }
            }
        }
    }
}

#[test]
fn aklt_oracle_agreement() {
    for bc in [Boundary::Open, Boundary::Periodic] {
        let f = build_aklt(4, bc).unwrap();
        let basis = exhaustive(&f);
        assert!(oracle_report(&f, &basis).passed, "{bc}");
    }
}

#[test]
fn quantum_double_fixtures() {
    let z2 = FiniteGroupTable::cyclic(2).unwrap();
    let s3 = FiniteGroupTable::symmetric(3).unwrap();
    for (lat, g) in [
        (SphereLattice::tetrahedron(), &z2),
        (SphereLattice::theta(), &s3),
    ] {
        let f = build_quantum_double(&lat, g).unwrap();
        let basis = check_expected(&f);
        let s = only_state(&basis);
        assert!(s.terms().all(|(_, p)| p == Phase::ONE));
        let mut members: Vec<_> = s.tree().members().cloned().collect();
        members.sort();
        assert_eq!(members, flat_connections(&lat, g).unwrap());
        assert!(oracle_report(&f, &basis).passed, "{}", f.name);
    }
}

#[test]
fn coset_examples() {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let f = build_coset(&[4], &[vec![2]], &[1]).unwrap();
    let basis = check_expected(&f);
    assert_state(only_state(&basis), &[("1", c(r, 0.0)), ("3", c(r, 0.0))]);
    assert!(oracle_report(&f, &basis).passed);

    // Whole group: uniform over everything.
    let f = build_coset(&[2, 3], &[vec![1, 0], vec![0, 1]], &[0, 0]).unwrap();
    let basis = check_expected(&f);
    assert_eq!(only_state(&basis).size(), 6);

    // Trivial subgroup: a single basis vector.
    let f = build_coset(&[3, 2], &[], &[2, 1]).unwrap();
    let basis = check_expected(&f);
    assert_state(only_state(&basis), &[("21", c(1.0, 0.0))]);
    assert!(oracle_report(&f, &basis).passed);
}

#[test]
fn coherent_probability_examples() {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let id = ReversibleCircuit::identity(2).unwrap();
    let basis = check_expected(&build_coherent_prob(&id, 1).unwrap());
    assert_state(only_state(&basis), &[("00", c(r, 0.0)), ("10", c(r, 0.0))]);

    let cnot = ReversibleCircuit::new(
        2,
        vec![RevGate::Cnot {
            control: 0,
            target: 1,
        }],
    )
    .unwrap();
    let basis = check_expected(&build_coherent_prob(&cnot, 1).unwrap());
    assert_state(only_state(&basis), &[("00", c(r, 0.0)), ("11", c(r, 0.0))]);

    let toffoli = ReversibleCircuit::new(
        3,
        vec![RevGate::Toffoli {
            controls: [0, 1],
            target: 2,
        }],
    )
    .unwrap();
    let f = build_coherent_prob(&toffoli, 2).unwrap();
    let basis = check_expected(&f);
    let h = 0.5;
    assert_state(
        only_state(&basis),
        &[
            ("000", c(h, 0.0)),
            ("010", c(h, 0.0)),
            ("100", c(h, 0.0)),
            ("111", c(h, 0.0)),
        ],
    );
    assert!(oracle_report(&f, &basis).passed);
}

#[test]
fn laughlin_examples() {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let basis = check_expected(&build_laughlin(2).unwrap());
    assert_state(only_state(&basis), &[("01", c(r, 0.0)), ("10", c(-r, 0.0))]);

    let f = build_laughlin(3).unwrap();
    let basis = check_expected(&f);
    let a = 1.0 / 6f64.sqrt();
    assert_state(
        only_state(&basis),
        &[
            ("012", c(a, 0.0)),
            ("021", c(-a, 0.0)),
            ("102", c(-a, 0.0)),
            ("120", c(a, 0.0)),
            ("201", c(a, 0.0)),
            ("210", c(-a, 0.0)),
        ],
    );
    assert!(oracle_report(&f, &basis).passed);
    assert!(!supported(&basis, &"001".parse().unwrap()));
}

#[test]
fn lme_examples() {
    let h = 0.5;
    let f = build_lme(2, "one", |_| c(1.0, 0.0)).unwrap();
    let basis = check_expected(&f);
    assert_state(
        only_state(&basis),
        &[
            ("00", c(h, 0.0)),
            ("01", c(h, 0.0)),
            ("10", c(h, 0.0)),
            ("11", c(h, 0.0)),
        ],
    );

    let f = build_lme(2, "cz", |x| {
        c(if x.0[0] & x.0[1] == 1 { -1.0 } else { 1.0 }, 0.0)
    })
    .unwrap();
    let basis = check_expected(&f);
    assert_state(
        only_state(&basis),
        &[
            ("00", c(h, 0.0)),
            ("01", c(h, 0.0)),
            ("10", c(h, 0.0)),
            ("11", c(-h, 0.0)),
        ],
    );
    assert!(oracle_report(&f, &basis).passed);

    let f = build_lme(2, "s", |x| c(0.0, 1.0).powu(x.weight() as u32)).unwrap();
    let basis = check_expected(&f);
    assert_state(
        only_state(&basis),
        &[
            ("00", c(h, 0.0)),
            ("01", c(0.0, h)),
            ("10", c(0.0, h)),
            ("11", c(-h, 0.0)),
        ],
    );
    assert!(oracle_report(&f, &basis).passed);
}

#[test]
fn pauli_fixtures() {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let f = ghz3().unwrap();
    let basis = check_expected(&f);
    assert_state(
        only_state(&basis),
        &[("000", c(r, 0.0)), ("111", c(r, 0.0))],
    );
    for f in [
        cluster_path(3).unwrap(),
        cluster_path(4).unwrap(),
        five_qubit_code().unwrap(),
    ] {
        let basis = check_expected(&f);
        assert!(oracle_report(&f, &basis).passed, "{}", f.name);
    }
}
