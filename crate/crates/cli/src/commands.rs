use clap::ValueEnum;
use monostab::families::Fixture;
use monostab::group::{orbit_basis, orbit_bfs, orbit_state, OrbitEntry, OrbitState, Seeds};
use monostab::hardness::{parse_dimacs, reduce_cnf, solve_small};
use monostab::op::format::SpecFile;
use monostab::oracle::{average_projector, compare_basis, group_enumerate, joint_fixed_space};
use monostab::pauli::PauliLabel;
use monostab::simulate::{
    estimate_pauli, exact_pauli, random_walk, rng_from_seed, sample_orbit_many,
};
use monostab::{BasisVector, MsfError};
use serde::Serialize;
use serde_json::{json, Value};

use crate::source::{build_family, SourceArgs};
use crate::{CnfAction, Command, Failure, RunConfig, Stage};

pub struct Outcome {
    pub result: Value,
    pub code: u8,
}

impl Outcome {
    fn ok(result: Value) -> Outcome {
        Outcome { result, code: 0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleMethod {
    /// Uniform draw from the enumerated orbit.
    Exact,
    /// Endpoint of a random generator walk.
    RandomWord,
}

fn to_value<T: Serialize>(v: &T) -> Result<Value, Failure> {
    serde_json::to_value(v)
        .map_err(MsfError::from)
        .stage("output")
}

fn cap(v: u64) -> usize {
    usize::try_from(v).unwrap_or(usize::MAX)
}

pub fn run(command: Command, config: &RunConfig) -> (&'static str, Result<Outcome, Failure>) {
    match command {
        Command::Family { name, params } => ("family", family(&name, &params)),
        Command::Analyze {
            source,
            seeds,
            amplitudes,
        } => (
            "analyze",
            analyze(&source, seeds.as_deref(), amplitudes, config),
        ),
        Command::State { source, rep } => ("state", state(&source, rep.as_deref(), config)),
        Command::Sample {
            source,
            rep,
            count,
            method,
            word_len,
        } => (
            "sample",
            sample(&source, rep.as_deref(), count, method, word_len, config),
        ),
        Command::Expect {
            source,
            rep,
            pauli,
            epsilon,
            delta,
            exact,
        } => (
            "expect",
            expect(
                &source,
                rep.as_deref(),
                &pauli,
                epsilon,
                delta,
                exact,
                config,
            ),
        ),
        Command::Oracle { source, projector } => ("oracle", oracle(&source, projector, config)),
        Command::Cnf { action } => ("cnf", cnf(action)),
    }
}

fn family(name: &str, params: &crate::source::FamilyParams) -> Result<Outcome, Failure> {
    let fixture = build_family(name, params).stage("build")?;
    let spec = SpecFile::from_generators(&fixture.gens).stage("serialize")?;
    Ok(Outcome::ok(json!({
        "name": fixture.name,
        "spec": to_value(&spec)?,
        "expected": to_value(&fixture.expected)?,
    })))
}

fn load(source: &SourceArgs) -> Result<Fixture, Failure> {
    source.load().stage("load")
}

fn representative(fixture: &Fixture, rep: Option<&str>) -> Result<BasisVector, Failure> {
    match rep {
        Some(s) => fixture.gens.space().parse_vector(s).stage("load"),
        None => fixture
            .expected
            .representative
            .clone()
            .ok_or_else(|| Failure {
                stage: "load",
                error: MsfError::InvalidArgument("no expected representative; pass --rep".into()),
            }),
    }
}

fn amplitudes(state: &OrbitState) -> Vec<Value> {
    let mut terms: Vec<(&BasisVector, _)> = state.terms().collect();
    terms.sort_by(|a, b| a.0.cmp(b.0));
    let scale = state.norm();
    terms
        .into_iter()
        .map(|(x, p)| {
            let c = p.to_complex() * scale;
            json!({"x": x.to_string(), "phase": p.to_string(), "re": c.re, "im": c.im})
        })
        .collect()
}

fn analyze(
    source: &SourceArgs,
    seeds: Option<&str>,
    with_amplitudes: bool,
    config: &RunConfig,
) -> Result<Outcome, Failure> {
    let fixture = load(source)?;
    let gens = &fixture.gens;
    let seeds = match seeds {
        None => Seeds::Exhaustive,
        Some(list) => Seeds::List(
            list.split(',')
                .map(|s| gens.space().parse_vector(s.trim()))
                .collect::<monostab::Result<_>>()
                .stage("load")?,
        ),
    };
    let exhaustive = matches!(seeds, Seeds::Exhaustive);
    let basis = orbit_basis(gens, &seeds, cap(config.orbit_cap)).stage("analyze")?;
    let mut orbits = Vec::new();
    let mut states = Vec::new();
    for entry in &basis.entries {
        let mut o = json!({
            "min": entry.min().to_string(),
            "root": entry.root().to_string(),
            "size": entry.size(),
        });
        match entry {
            OrbitEntry::Supported(s) => {
                o["status"] = json!("supported");
                let mut st = json!({
                    "rep": s.rep().to_string(),
                    "size": s.size(),
                    "amplitude_modulus": s.norm(),
                });
                if with_amplitudes {
                    st["amplitudes"] = Value::Array(amplitudes(s));
                }
                states.push(st);
            }
            OrbitEntry::Excluded { witness, .. } => {
                o["status"] = json!("excluded");
                o["witness"] = to_value(witness)?;
            }
            OrbitEntry::Inconclusive { .. } => o["status"] = json!("inconclusive"),
        }
        orbits.push(o);
    }
    let conclusive = basis.is_conclusive();
    let result = json!({
        "name": fixture.name,
        "dims": gens.space().dims(),
        "generators": gens.names(),
        "pure_group": gens.is_pure(),
        "exhaustive": exhaustive,
        "conclusive": conclusive,
        "total_orbits": basis.total_orbits(),
        "supported_orbits": basis.dimension(),
        "inconclusive_orbits": basis.inconclusive(),
        "dimension": (exhaustive && conclusive).then(|| basis.dimension()),
        "orbits": orbits,
        "basis": states,
        "expected": to_value(&fixture.expected)?,
    });
    Ok(Outcome {
        result,
        code: if conclusive { 0 } else { 1 },
    })
}

fn supported_state(
    fixture: &Fixture,
    rep: &BasisVector,
    config: &RunConfig,
) -> Result<OrbitState, Failure> {
    let tree = orbit_bfs(&fixture.gens, rep, cap(config.orbit_cap)).stage("orbit")?;
    tree.require_complete().stage("orbit")?;
    orbit_state(tree, &fixture.gens).stage("support")
}

fn state(source: &SourceArgs, rep: Option<&str>, config: &RunConfig) -> Result<Outcome, Failure> {
    let fixture = load(source)?;
    let rep = representative(&fixture, rep)?;
    let s = supported_state(&fixture, &rep, config)?;
    Ok(Outcome::ok(json!({
        "name": fixture.name,
        "rep": rep.to_string(),
        "size": s.size(),
        "amplitudes": amplitudes(&s),
    })))
}

fn sample(
    source: &SourceArgs,
    rep: Option<&str>,
    count: usize,
    method: SampleMethod,
    word_len: usize,
    config: &RunConfig,
) -> Result<Outcome, Failure> {
    let fixture = load(source)?;
    let rep = representative(&fixture, rep)?;
    let samples: Vec<BasisVector> = match method {
        SampleMethod::Exact => {
            let s = supported_state(&fixture, &rep, config)?;
            sample_orbit_many(s.tree(), count, config.seed).stage("sample")?
        }
        SampleMethod::RandomWord => {
            let mut rng = rng_from_seed(config.seed);
            (0..count)
                .map(|_| random_walk(&fixture.gens, &rep, word_len, &mut rng))
                .collect::<monostab::Result<_>>()
                .stage("sample")?
        }
    };
    let mut result = json!({
        "name": fixture.name,
        "rep": rep.to_string(),
        "method": method,
        "count": count,
        "seed": config.seed,
        "samples": samples.iter().map(ToString::to_string).collect::<Vec<_>>(),
    });
    if method == SampleMethod::RandomWord {
        result["word_len"] = json!(word_len);
    }
    Ok(Outcome::ok(result))
}

/// A full label such as `-XZI`, or sparse 1-based factors such as `Z1` or
/// `-X1Z3` on `n` qubits.
pub fn parse_pauli_arg(s: &str, n: usize) -> monostab::Result<PauliLabel> {
    let s = s.trim();
    if let Ok(p) = s.parse::<PauliLabel>() {
        if p.num_qubits() == n {
            return Ok(p);
        }
    }
    let body = s.trim_start_matches(['+', '-', 'i']);
    let sign = &s[..s.len() - body.len()];
    let bad = || {
        MsfError::InvalidArgument(format!(
            "cannot read {s:?} as a Pauli operator on {n} qubits"
        ))
    };
    let mut letters = vec!['I'; n];
    let mut chars = body
        .chars()
        .filter(|c| !c.is_whitespace() && *c != '*')
        .peekable();
    let mut any = false;
    while let Some(letter) = chars.next() {
        if !matches!(letter, 'I' | 'X' | 'Y' | 'Z') {
            return Err(bad());
        }
        let mut digits = String::new();
        while let Some(d) = chars.peek().filter(|c| c.is_ascii_digit()) {
            digits.push(*d);
            chars.next();
        }
        let site: usize = digits.parse().map_err(|_| bad())?;
        if site == 0 || site > n || letters[site - 1] != 'I' {
            return Err(bad());
        }
        letters[site - 1] = letter;
        any = true;
    }
    if !any {
        return Err(bad());
    }
    format!("{sign}{}", letters.into_iter().collect::<String>()).parse()
}

fn expect(
    source: &SourceArgs,
    rep: Option<&str>,
    pauli: &str,
    epsilon: f64,
    delta: f64,
    exact: bool,
    config: &RunConfig,
) -> Result<Outcome, Failure> {
    let fixture = load(source)?;
    let rep = representative(&fixture, rep)?;
    let p = parse_pauli_arg(pauli, fixture.gens.space().num_sites()).stage("load")?;
    let s = supported_state(&fixture, &rep, config)?;
    let est = estimate_pauli(&s, &p, epsilon, delta, config.seed).stage("estimate")?;
    let mut result = json!({
        "name": fixture.name,
        "rep": rep.to_string(),
        "pauli": p.to_string(),
        "estimate": to_value(&est)?,
    });
    if exact {
        let v = exact_pauli(&s, &p).stage("exact")?;
        result["exact"] = json!({"re": v.re, "im": v.im});
    }
    Ok(Outcome::ok(result))
}

fn oracle(source: &SourceArgs, projector: bool, config: &RunConfig) -> Result<Outcome, Failure> {
    let fixture = load(source)?;
    let gens = &fixture.gens;
    let fixed = joint_fixed_space(gens, cap(config.dense_cap)).stage("oracle")?;
    let basis = orbit_basis(gens, &Seeds::Exhaustive, cap(config.orbit_cap)).stage("analyze")?;
    if !basis.is_conclusive() {
        return Err(Failure {
            stage: "analyze",
            error: MsfError::CapExceeded(format!(
                "{} orbits exceeded the orbit cap",
                basis.inconclusive()
            )),
        });
    }
    let states: Vec<_> = basis.states().map(OrbitState::to_sparse).collect();
    let report = compare_basis(gens.space(), &fixed, &states).stage("compare")?;
    let mut passed = report.passed;
    let mut result = json!({"name": fixture.name, "comparison": to_value(&report)?});
    if projector {
        let elements =
            group_enumerate(gens, cap(config.dense_cap), cap(config.group_cap)).stage("group")?;
        let rho = average_projector(&elements).stage("projector")?;
        let diag_matches =
            gens.space().basis().enumerate().all(|(i, x)| {
                (rho[(i, i)].norm() > 1e-9) == basis.states().any(|s| s.contains(&x))
            });
        passed &= diag_matches;
        result["projector"] = json!({
            "group_order": elements.len(),
            "trace": rho.trace().re,
            "diagonal_matches_support": diag_matches,
        });
    }
    result["passed"] = json!(passed);
    Ok(Outcome {
        result,
        code: if passed { 0 } else { 1 },
    })
}

fn cnf(action: CnfAction) -> Result<Outcome, Failure> {
    let read = |file: &std::path::Path| -> Result<_, Failure> {
        let text = std::fs::read_to_string(file)
            .map_err(|e| MsfError::InvalidArgument(format!("cannot read {}: {e}", file.display())))
            .stage("load")?;
        parse_dimacs(&text).stage("parse")
    };
    match action {
        CnfAction::Reduce { file } => {
            let f = read(&file)?;
            let gens = reduce_cnf(&f).stage("reduce")?;
            let spec = SpecFile::from_generators(&gens).stage("serialize")?;
            Ok(Outcome::ok(json!({
                "name": file.display().to_string(),
                "spec": to_value(&spec)?,
            })))
        }
        CnfAction::Solve { file, cap, unique } => {
            let f = read(&file)?;
            let report = solve_small(&f, cap).stage("solve")?;
            let mut result = to_value(&report)?;
            if unique {
                result["unique"] = json!(report.unique().stage("solve")?.to_string());
            }
            Ok(Outcome::ok(result))
        }
    }
}
