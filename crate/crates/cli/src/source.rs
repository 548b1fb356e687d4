use std::path::PathBuf;

use clap::Args;
use monostab::families::{
    self, build_aklt, build_coherent_prob, build_coset, build_dicke, build_laughlin, build_lme,
    build_pauli, build_quantum_double, build_w, cluster_path, five_qubit_code, ghz3, Boundary,
    Expected, FiniteGroupTable, Fixture, RevGate, ReversibleCircuit, SphereLattice,
};
use monostab::op::format::SpecFile;
use monostab::{MsfError, Result};
use num_complex::Complex64;

pub const FAMILIES: &str = "w, dicke, aklt, quantum-double, coset, coherent, laughlin, lme, \
                            ghz3, cluster, five-qubit-code, pauli";

/// Where the generator set comes from: an operator-spec file or a built-in
/// family with its parameters.
#[derive(Args, Debug, Clone, Default)]
pub struct SourceArgs {
    /// Operator-spec JSON file (bare, or the output of `family`).
    #[arg(long, conflicts_with = "family")]
    pub input: Option<PathBuf>,
    /// Built-in family name.
    #[arg(long)]
    pub family: Option<String>,
    #[command(flatten)]
    pub params: FamilyParams,
}

#[derive(Args, Debug, Clone, Default)]
pub struct FamilyParams {
    /// Number of sites.
    #[arg(long)]
    pub n: Option<usize>,
    /// Dicke weight.
    #[arg(long)]
    pub k: Option<usize>,
    /// Chain boundary for aklt: open or periodic.
    #[arg(long, default_value = "open")]
    pub bc: String,
    /// Lattice for quantum-double: tetrahedron, cube or theta.
    #[arg(long)]
    pub lattice: Option<String>,
    /// Gauge group for quantum-double: zN (cyclic) or sM (symmetric).
    #[arg(long)]
    pub group: Option<String>,
    /// Cyclic factors for coset, comma separated.
    #[arg(long)]
    pub factors: Option<String>,
    /// Subgroup generators for coset, `;`-separated comma lists.
    #[arg(long, default_value = "")]
    pub subgroup: String,
    /// Coset shift, comma separated.
    #[arg(long)]
    pub shift: Option<String>,
    /// Reversible circuit such as `not:0;cnot:0,1;toffoli:0,1,2`.
    #[arg(long, default_value = "")]
    pub circuit: String,
    /// Random input bits for coherent.
    #[arg(long)]
    pub random_bits: Option<usize>,
    /// Phase function for lme: one, cz or s.
    #[arg(long, default_value = "one")]
    pub phase_fn: String,
    /// Pauli strings for pauli, comma separated.
    #[arg(long)]
    pub strings: Option<String>,
}

fn bad(msg: impl Into<String>) -> MsfError {
    MsfError::InvalidArgument(msg.into())
}

fn need<T: Copy>(v: Option<T>, flag: &str, family: &str) -> Result<T> {
    v.ok_or_else(|| bad(format!("family {family} needs --{flag}")))
}

fn parse_list(s: &str, what: &str) -> Result<Vec<u32>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| bad(format!("{what}: {t:?} is not a non-negative integer")))
        })
        .collect()
}

fn parse_group(s: &str) -> Result<FiniteGroupTable> {
    let order = |t: &str| {
        t.parse::<usize>()
            .map_err(|_| bad(format!("group {s:?}: expected zN or sM")))
    };
    match s.split_at(s.len().min(1)) {
        ("z", n) => FiniteGroupTable::cyclic(order(n)?),
        ("s", m) => FiniteGroupTable::symmetric(order(m)?),
        _ => Err(bad(format!("group {s:?}: expected zN or sM"))),
    }
}

fn parse_circuit(n: usize, s: &str) -> Result<ReversibleCircuit> {
    let mut gates = Vec::new();
    for part in s.split(';').filter(|p| !p.trim().is_empty()) {
        let (kind, wires) = part
            .trim()
            .split_once(':')
            .ok_or_else(|| bad(format!("circuit gate {part:?} needs kind:wires")))?;
        let w: Vec<usize> = parse_list(wires, "circuit wires")?
            .into_iter()
            .map(|x| x as usize)
            .collect();
        let gate = match (kind, w.as_slice()) {
            ("not", &[t]) => RevGate::Not { target: t },
            ("cnot", &[c, t]) => RevGate::Cnot {
                control: c,
                target: t,
            },
            ("toffoli", &[a, b, t]) => RevGate::Toffoli {
                controls: [a, b],
                target: t,
            },
            _ => {
                return Err(bad(format!(
                    "circuit gate {part:?} is not not/cnot/toffoli with 1/2/3 wires"
                )))
            }
        };
        gates.push(gate);
    }
    ReversibleCircuit::new(n, gates)
}

fn lme_fixture(n: usize, name: &str) -> Result<Fixture> {
    let one = Complex64::new(1.0, 0.0);
    match name {
        "one" => build_lme(n, name, move |_| one),
        "cz" => build_lme(n, name, |x| {
            let pairs = x.0.windows(2).filter(|w| w[0] & w[1] == 1).count();
            Complex64::new(if pairs % 2 == 0 { 1.0 } else { -1.0 }, 0.0)
        }),
        "s" => build_lme(n, name, |x| Complex64::i().powu(x.weight() as u32)),
        _ => Err(bad(format!(
            "phase function {name:?}: expected one, cz or s"
        ))),
    }
}

/// Build a named family from its parameters.
pub fn build_family(family: &str, p: &FamilyParams) -> Result<Fixture> {
    match family {
        "w" => build_w(need(p.n, "n", family)?),
        "dicke" => build_dicke(need(p.n, "n", family)?, need(p.k, "k", family)?),
        "aklt" => build_aklt(need(p.n, "n", family)?, p.bc.parse::<Boundary>()?),
        "quantum-double" => {
            let lat = SphereLattice::by_name(p.lattice.as_deref().unwrap_or("tetrahedron"))?;
            let group = parse_group(p.group.as_deref().unwrap_or("z2"))?;
            build_quantum_double(&lat, &group)
        }
        "coset" => {
            let factors = parse_list(
                p.factors
                    .as_deref()
                    .ok_or_else(|| bad("family coset needs --factors"))?,
                "factors",
            )?;
            let h: Vec<Vec<u32>> = p
                .subgroup
                .split(';')
                .filter(|t| !t.trim().is_empty())
                .map(|t| parse_list(t, "subgroup"))
                .collect::<Result<_>>()?;
            let shift = match &p.shift {
                Some(s) => parse_list(s, "shift")?,
                None => vec![0; factors.len()],
            };
            build_coset(&factors, &h, &shift)
        }
        "coherent" => {
            let n = need(p.n, "n", family)?;
            let circ = parse_circuit(n, &p.circuit)?;
            build_coherent_prob(&circ, need(p.random_bits, "random-bits", family)?)
        }
        "laughlin" => build_laughlin(need(p.n, "n", family)?),
        "lme" => lme_fixture(need(p.n, "n", family)?, &p.phase_fn),
        "ghz3" => ghz3(),
        "cluster" => cluster_path(need(p.n, "n", family)?),
        "five-qubit-code" => five_qubit_code(),
        "pauli" => {
            let s = p
                .strings
                .as_deref()
                .ok_or_else(|| bad("family pauli needs --strings"))?;
            let strings: Vec<&str> = s.split(',').map(str::trim).collect();
            Ok(Fixture::new(
                "pauli",
                build_pauli(&strings)?,
                Expected::default(),
            ))
        }
        _ => Err(bad(format!("unknown family {family:?}; known: {FAMILIES}"))),
    }
}

/// Read an operator-spec file. Accepts a bare spec or a `family` report
/// (an object with `spec` and optional `expected` blocks).
pub fn read_fixture(path: &PathBuf) -> Result<Fixture> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| bad(format!("cannot read {}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    let (spec, expected) = match value.get("result").and_then(|r| r.get("spec")) {
        Some(spec) => (spec.clone(), value["result"].get("expected").cloned()),
        None => match value.get("spec") {
            Some(spec) => (spec.clone(), value.get("expected").cloned()),
            None => (value, None),
        },
    };
    let spec: SpecFile = serde_json::from_value(spec)?;
    let gens = spec.to_generators()?;
    let mut fixture = Fixture::new(path.display().to_string(), gens, Expected::default());
    if let Some(e) = expected {
        fixture.expected = families::Expected {
            pure_group: fixture.expected.pure_group,
            ..expected_from_json(&e)?
        };
    }
    Ok(fixture)
}

fn expected_from_json(v: &serde_json::Value) -> Result<Expected> {
    let num = |k: &str| v.get(k).and_then(serde_json::Value::as_u64);
    let representative = match v.get("representative").and_then(|r| r.as_str()) {
        Some(s) => Some(s.parse()?),
        None => None,
    };
    Ok(Expected {
        dimension: num("dimension").map(|d| d as usize),
        support_size: num("support_size"),
        representative,
        total_orbits: num("total_orbits"),
        pure_group: false,
    })
}

impl SourceArgs {
    pub fn load(&self) -> Result<Fixture> {
        match (&self.input, &self.family) {
            (Some(path), _) => read_fixture(path),
            (None, Some(f)) => build_family(f, &self.params),
            (None, None) => Err(bad("give --input <file> or --family <name>")),
        }
    }
}
