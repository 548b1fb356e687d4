mod common;

use std::collections::HashMap;

use common::exhaustive;
use monostab::families::{
    build_aklt, build_coherent_prob, build_dicke, build_lme, build_w, cluster_path,
    five_qubit_code, ghz3, Boundary, Fixture, RevGate, ReversibleCircuit,
};
use monostab::group::{orbit_bfs, OrbitState};
use monostab::op::{DiagonalFn, GeneratorSet, MonomialOp};
use monostab::oracle::{densify, joint_fixed_space};
use monostab::pauli::{Gf2Vector, PauliLabel, PauliStabilizerGroup};
use monostab::simulate::{
    estimate_local, estimate_pauli, exact_pauli, hoeffding_n, sample_orbit, sample_orbit_many,
    sample_random_word, Method, PauliCosetState,
};
use monostab::{BasisVector, MsfError, SiteSpace};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

const DENSE_CAP: usize = 4096;

fn state_of(f: &Fixture) -> OrbitState {
    let rep = f
        .expected
        .representative
        .clone()
        .expect("fixture representative");
    exhaustive(f)
        .states()
        .find(|s| s.contains(&rep))
        .unwrap()
        .clone()
}

fn dense_vector(space: &SiteSpace, s: &OrbitState) -> DVector<Complex64> {
    let mut v = DVector::zeros(space.total_dim().unwrap() as usize);
    for (x, a) in s.to_sparse() {
        v[space.index(&x).unwrap() as usize] = a;
    }
    v
}

fn dense_expectation(space: &SiteSpace, v: &DVector<Complex64>, p: &PauliLabel) -> Complex64 {
    let m = densify(&p.to_monomial(), space, DENSE_CAP).unwrap();
    v.dotc(&m.apply_vector(v))
}

/// Every `i^k X(s)Z(t)` on `n` qubits with `k = 0`.
fn all_paulis(n: usize) -> impl Iterator<Item = PauliLabel> {
    let bits =
        move |m: usize| Gf2Vector::from_bits(&(0..n).map(|i| m >> i & 1 == 1).collect::<Vec<_>>());
    (0..1usize << n).flat_map(move |s| {
        (0..1usize << n).map(move |t| PauliLabel::new(0, bits(s), bits(t)).unwrap())
    })
}

fn qubit_fixtures() -> Vec<Fixture> {
    let circ = ReversibleCircuit::new(
        3,
        vec![
            RevGate::Cnot {
                control: 0,
                target: 2,
            },
            RevGate::Toffoli {
                controls: [0, 1],
                target: 2,
            },
        ],
    )
    .unwrap();
    vec![
        build_w(4).unwrap(),
        build_dicke(5, 2).unwrap(),
        ghz3().unwrap(),
        cluster_path(4).unwrap(),
        build_coherent_prob(&circ, 2).unwrap(),
        build_lme(3, "s", |x| Complex64::i().powu(x.weight() as u32)).unwrap(),
    ]
}

#[test]
fn hoeffding_counts() {
    let formula = |e: f64, d: f64| (2.0 / (e * e) * (4.0 / d).ln()).ceil() as u64;
    assert_eq!(hoeffding_n(0.05, 1e-3).unwrap(), 6636);
    assert_eq!(hoeffding_n(0.05, 1e-3).unwrap(), formula(0.05, 1e-3));
    assert_eq!(
        hoeffding_n(0.1, 1e-3).unwrap() * 4,
        hoeffding_n(0.05, 1e-3).unwrap()
    );
    // ln(4/δ) = 2 exactly, so the bound is 2·2 = 4.
    let d = 4.0 / std::f64::consts::E.powi(2);
    assert_eq!(hoeffding_n(1.0, d).unwrap(), 4);
    for (e, d) in [(0.3, 0.1), (0.01, 0.5), (0.2, 1e-6)] {
        assert_eq!(hoeffding_n(e, d).unwrap(), formula(e, d));
    }
    for (e, d) in [
        (0.0, 0.1),
        (1.5, 0.1),
        (0.1, 0.0),
        (0.1, 1.0),
        (f64::NAN, 0.1),
    ] {
        assert!(
            matches!(hoeffding_n(e, d), Err(MsfError::InvalidArgument(_))),
            "{e} {d}"
        );
    }
}

#[test]
fn exact_values_match_dense_expectations() {
    for f in qubit_fixtures() {
        let space = f.gens.space();
        let n = space.num_sites();
        let fixed = joint_fixed_space(&f.gens, DENSE_CAP).unwrap();
        assert_eq!(fixed.dim_fixed(), 1, "{}", f.name);
        let oracle = fixed.vectors()[0].to_dense(space.total_dim().unwrap() as usize);
        let s = state_of(&f);
        for p in all_paulis(n) {
            let want = dense_expectation(space, &oracle, &p);
            let got = exact_pauli(&s, &p).unwrap();
            assert!(
                (got - want).norm() < 1e-9,
                "{} {p}: {got} vs {want}",
                f.name
            );
        }
    }
}

#[test]
fn exact_values_on_a_code_state() {
    let f = five_qubit_code().unwrap();
    let basis = exhaustive(&f);
    let space = f.gens.space();
    for s in basis.states() {
        let v = dense_vector(space, s);
        for p in all_paulis(5).step_by(7) {
            let want = dense_expectation(space, &v, &p);
            assert!((exact_pauli(s, &p).unwrap() - want).norm() < 1e-9, "{p}");
        }
    }
}

#[test]
fn w_examples() {
    let s = state_of(&build_w(4).unwrap());
    let z1 = PauliLabel::z(4, 0);
    assert!((exact_pauli(&s, &z1).unwrap() - 0.5).norm() < 1e-12);
    let x1x2: PauliLabel = "XXII".parse().unwrap();
    assert!((exact_pauli(&s, &x1x2).unwrap() - 0.5).norm() < 1e-12);
    let id = PauliLabel::identity(4);
    assert_eq!(exact_pauli(&s, &id).unwrap(), Complex64::new(1.0, 0.0));
    let e = estimate_pauli(&s, &id, 0.1, 0.01, 3).unwrap();
    assert_eq!(e.value, Complex64::new(1.0, 0.0));

    let e = estimate_pauli(&s, &z1, 0.05, 1e-3, 7).unwrap();
    assert_eq!(e.method, Method::MonteCarlo);
    assert_eq!(e.samples_used, 6636);
    assert_eq!(e.seed, Some(7));
    assert!((e.value - 0.5).norm() <= 0.05);
    // Identical seeds replay identically.
    assert_eq!(
        e.value,
        estimate_pauli(&s, &z1, 0.05, 1e-3, 7).unwrap().value
    );

    let xxx: PauliLabel = "XXX".parse().unwrap();
    let g = state_of(&ghz3().unwrap());
    assert!((estimate_pauli(&g, &xxx, 0.1, 0.01, 0).unwrap().value - 1.0).norm() < 1e-12);
}

#[test]
fn estimator_soundness_over_seeds() {
    let (eps, delta, runs) = (0.1, 0.01, 200u64);
    // Allowed failures: δ·runs plus three standard deviations.
    let allowed =
        (delta * runs as f64 + 3.0 * (runs as f64 * delta * (1.0 - delta)).sqrt()).floor() as usize;
    let cases: Vec<(Fixture, &str)> = vec![
        (build_w(4).unwrap(), "ZIII"),
        (build_dicke(5, 2).unwrap(), "XXIII"),
        (cluster_path(4).unwrap(), "ZXZI"),
        (
            build_lme(3, "s", |x| Complex64::i().powu(x.weight() as u32)).unwrap(),
            "XYI",
        ),
    ];
    for (f, label) in cases {
        let s = state_of(&f);
        let p: PauliLabel = label.parse().unwrap();
        let exact = exact_pauli(&s, &p).unwrap();
        let failures = (0..runs)
            .filter(|&seed| {
                let e = estimate_pauli(&s, &p, eps, delta, seed).unwrap();
                assert!(e.samples_used >= hoeffding_n(eps, delta).unwrap());
                (e.value - exact).norm() > eps
            })
            .count();
        assert!(
            failures <= allowed,
            "{} {label}: {failures} failures",
            f.name
        );
    }
}

#[test]
fn pauli_coset_state_estimates() {
    let g = PauliStabilizerGroup::parse(&["XXX", "-ZZI", "IZZ"]).unwrap();
    let fast = PauliCosetState::new(g.clone()).unwrap();
    let generic = Fixture::new("signed ghz", g.to_generators().unwrap(), Default::default());
    let basis = exhaustive(&generic);
    let s = basis.states().next().unwrap();
    for p in all_paulis(3) {
        let exact = exact_pauli(s, &p).unwrap();
        let e = estimate_pauli(&fast, &p, 0.1, 0.01, 5).unwrap();
        assert!(
            (e.value - exact).norm() <= 0.1,
            "{p}: {} vs {exact}",
            e.value
        );
    }
}

#[test]
fn local_observables() {
    let w = state_of(&build_w(4).unwrap());
    let one = DMatrix::from_row_slice(2, 2, &[0.0, 0.0, 0.0, 1.0]).map(|r| Complex64::new(r, 0.0));
    let e = estimate_local(&w, &one, &[0], 0.05, 1e-3, 1).unwrap();
    assert!((e.value - 0.25).norm() <= 0.05, "{}", e.value);

    let id = DMatrix::<Complex64>::identity(2, 2);
    let e = estimate_local(&w, &id, &[2], 0.05, 1e-3, 1).unwrap();
    assert_eq!(e.value, Complex64::new(1.0, 0.0));
    assert_eq!(e.samples_used, 0);

    let g = state_of(&ghz3().unwrap());
    let zz = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, -1.0, -1.0, 1.0]))
        .map(|r| Complex64::new(r, 0.0));
    let e = estimate_local(&g, &zz, &[0, 1], 0.05, 1e-3, 2).unwrap();
    assert!((e.value - 1.0).norm() < 1e-12);

    assert!(estimate_local(&g, &zz, &[0, 0], 0.05, 1e-3, 2).is_err());
    assert!(estimate_local(&g, &zz, &[0, 3], 0.05, 1e-3, 2).is_err());
    assert!(estimate_local(&g, &one, &[0, 1], 0.05, 1e-3, 2).is_err());
}

#[test]
fn qutrit_estimation_is_unsupported() {
    let s = state_of(&build_aklt(4, Boundary::Open).unwrap());
    let p = PauliLabel::z(4, 0);
    assert!(matches!(exact_pauli(&s, &p), Err(MsfError::Unsupported(_))));
}

#[test]
fn exact_sampler_is_uniform() {
    let f = build_w(4).unwrap();
    let s = state_of(&f);
    let draws = sample_orbit_many(s.tree(), 100_000, 42).unwrap();
    let mut counts: HashMap<BasisVector, usize> = HashMap::new();
    for d in &draws {
        *counts.entry(d.clone()).or_default() += 1;
    }
    assert_eq!(counts.len(), 4);
    for c in counts.values() {
        assert!((*c as f64 / 1e5 - 0.25).abs() <= 0.01);
    }
    assert_eq!(draws[0], sample_orbit(s.tree(), 42).unwrap());

    let aklt = build_aklt(4, Boundary::Open).unwrap();
    let tree = orbit_bfs(&aklt.gens, &BasisVector(vec![0; 4]), 1000).unwrap();
    let draws = sample_orbit_many(&tree, 100_000, 9).unwrap();
    let mut counts: HashMap<BasisVector, usize> = HashMap::new();
    for d in draws {
        *counts.entry(d).or_default() += 1;
    }
    let u = 1.0 / tree.len() as f64;
    let tv: f64 = tree
        .members()
        .map(|y| (counts.get(y).copied().unwrap_or(0) as f64 / 1e5 - u).abs())
        .sum::<f64>()
        / 2.0;
    assert!(tv < 0.02, "tv {tv}");

    let singleton = orbit_bfs(&f.gens, &BasisVector(vec![0; 4]), 10).unwrap();
    for seed in 0..10 {
        assert_eq!(
            sample_orbit(&singleton, seed).unwrap(),
            BasisVector(vec![0; 4])
        );
    }
    let truncated = orbit_bfs(&aklt.gens, &BasisVector(vec![0; 4]), 3).unwrap();
    assert!(sample_orbit(&truncated, 0).is_err());
}

fn random_word_tv(gens: &GeneratorSet, x: &BasisVector, word_len: usize, draws: u64) -> f64 {
    let tree = orbit_bfs(gens, x, 1 << 16).unwrap();
    let mut counts: HashMap<BasisVector, u64> = HashMap::new();
    for seed in 0..draws {
        *counts
            .entry(sample_random_word(gens, x, word_len, seed).unwrap())
            .or_default() += 1;
    }
    assert!(counts.keys().all(|y| tree.contains(y)));
    let u = 1.0 / tree.len() as f64;
    tree.members()
        .map(|y| (counts.get(y).copied().unwrap_or(0) as f64 / draws as f64 - u).abs())
        .sum::<f64>()
        / 2.0
}

#[test]
fn random_word_sampler() {
    let w = build_w(8).unwrap();
    let x: BasisVector = "10000000".parse().unwrap();
    for seed in 0..5 {
        assert_eq!(sample_random_word(&w.gens, &x, 0, seed).unwrap(), x);
    }
    let diag = GeneratorSet::new(SiteSpace::qubits(3).unwrap())
        .with(
            "D",
            MonomialOp::Diagonal(DiagonalFn::Clause {
                literals: vec![1, -2],
            }),
        )
        .unwrap();
    let y: BasisVector = "010".parse().unwrap();
    assert_eq!(sample_random_word(&diag, &y, 50, 1).unwrap(), y);

    // Convergence toward uniform as walks lengthen.
    let tvs: Vec<f64> = [4, 32, 512]
        .iter()
        .map(|&l| random_word_tv(&w.gens, &x, l, 20_000))
        .collect();
    assert!(tvs[0] > tvs[1] && tvs[1] > tvs[2], "{tvs:?}");
    assert!(tvs[2] < 0.05, "{tvs:?}");
}
