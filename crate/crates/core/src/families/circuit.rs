use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{MsfError, Result};
use crate::families::{Expected, Fixture};
use crate::op::gate::LocalMonomialGate;
use crate::op::generators::GeneratorSet;
use crate::op::monomial::{invert, MonomialOp};
use crate::space::{BasisVector, SiteSpace};

/// Maximum number of free inputs for which the image is enumerated.
const IMAGE_CAP_BITS: usize = 20;

/// Reversible classical gates on 0-based wires.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "gate", rename_all = "lowercase")]
pub enum RevGate {
    Not { target: usize },
    Cnot { control: usize, target: usize },
    Toffoli { controls: [usize; 2], target: usize },
}

impl RevGate {
    fn wires(&self) -> Vec<usize> {
        match *self {
            RevGate::Not { target } => vec![target],
            RevGate::Cnot { control, target } => vec![control, target],
            RevGate::Toffoli { controls, target } => vec![controls[0], controls[1], target],
        }
    }

    fn apply(&self, bits: &mut [u32]) {
        match *self {
            RevGate::Not { target } => bits[target] ^= 1,
            RevGate::Cnot { control, target } => bits[target] ^= bits[control],
            RevGate::Toffoli { controls, target } => {
                bits[target] ^= bits[controls[0]] & bits[controls[1]]
            }
        }
    }

    fn gate(&self) -> LocalMonomialGate {
        match self {
            RevGate::Not { .. } => LocalMonomialGate::not(),
            RevGate::Cnot { .. } => LocalMonomialGate::cnot(),
            RevGate::Toffoli { .. } => LocalMonomialGate::toffoli(),
        }
    }
}

/// A circuit of reversible gates on `n` bits, applied in list order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReversibleCircuit {
    n: usize,
    gates: Vec<RevGate>,
}

impl ReversibleCircuit {
    pub fn new(n: usize, gates: Vec<RevGate>) -> Result<ReversibleCircuit> {
        if n == 0 {
            return Err(MsfError::InvalidArgument(
                "circuit needs at least one wire".into(),
            ));
        }
        for (i, g) in gates.iter().enumerate() {
            let w = g.wires();
            let distinct: BTreeSet<_> = w.iter().collect();
            if distinct.len() != w.len() || w.iter().any(|&x| x >= n) {
                return Err(MsfError::InvalidArgument(format!(
                    "gate {i} uses repeated or out-of-range wires {w:?}"
                )));
            }
        }
        Ok(ReversibleCircuit { n, gates })
    }

    pub fn identity(n: usize) -> Result<ReversibleCircuit> {
        ReversibleCircuit::new(n, Vec::new())
    }

    pub fn num_wires(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[RevGate] {
        &self.gates
    }

    pub fn run(&self, input: &[u32]) -> Vec<u32> {
        let mut bits = input.to_vec();
        for g in &self.gates {
            g.apply(&mut bits);
        }
        bits
    }

    /// The circuit as an operator; the first gate acts first.
    pub fn to_op(&self) -> Result<MonomialOp> {
        let factors = self
            .gates
            .iter()
            .rev()
            .map(|g| MonomialOp::embed(g.gate(), g.wires()))
            .collect::<Result<Vec<_>>>()?;
        Ok(MonomialOp::Product(factors))
    }
}

/// The coherent encoding `C(|+⟩^k ⊗ |0⟩^{n-k})` of the output distribution of
/// `circ` on `k` uniformly random input bits, stabilized by `C X_i C⁻¹` for
/// `i < k` and `C Z_j C⁻¹` for `j ≥ k`.
pub fn build_coherent_prob(circ: &ReversibleCircuit, k: usize) -> Result<Fixture> {
    let n = circ.num_wires();
    if k > n {
        return Err(MsfError::InvalidArgument(format!(
            "{k} random bits exceed the {n} circuit wires"
        )));
    }
    let c = circ.to_op()?;
    let c_inv = invert(c.clone());
    let mut gens = GeneratorSet::new(SiteSpace::qubits(n)?);
    for i in 0..n {
        let (name, local) = if i < k {
            (format!("P{}", i + 1), LocalMonomialGate::not())
        } else {
            (format!("D{}", i + 1), LocalMonomialGate::qudit_z(2, 1)?)
        };
        let op = MonomialOp::Product(vec![
            c.clone(),
            MonomialOp::embed(local, vec![i])?,
            c_inv.clone(),
        ]);
        gens.push(name, op)?;
    }
    let rep = if k <= IMAGE_CAP_BITS {
        (0..1u64 << k)
            .map(|m| {
                let input: Vec<u32> = (0..n)
                    .map(|i| {
                        if i < k {
                            (m >> (k - 1 - i) & 1) as u32
                        } else {
                            0
                        }
                    })
                    .collect();
                circ.run(&input)
            })
            .min()
            .map(BasisVector)
    } else {
        None
    };
    Ok(Fixture::new(
        format!("coherent-{n}-{k}"),
        gens,
        Expected {
            dimension: Some(1),
            support_size: 1u64.checked_shl(k as u32),
            representative: rep,
            total_orbits: 1u64.checked_shl((n - k) as u32),
            ..Expected::default()
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_repeated_wires() {
        assert!(ReversibleCircuit::new(
            2,
            vec![RevGate::Cnot {
                control: 0,
                target: 0
            }]
        )
        .is_err());
        assert!(ReversibleCircuit::new(2, vec![RevGate::Not { target: 2 }]).is_err());
    }

    #[test]
    fn operator_matches_classical_run() {
        let circ = ReversibleCircuit::new(
            3,
            vec![
                RevGate::Not { target: 0 },
                RevGate::Toffoli {
                    controls: [0, 1],
                    target: 2,
                },
                RevGate::Cnot {
                    control: 2,
                    target: 1,
                },
            ],
        )
        .unwrap();
        let op = circ.to_op().unwrap();
        for x in SiteSpace::qubits(3).unwrap().basis() {
            assert_eq!(op.apply(&x).unwrap().0 .0, circ.run(x.values()));
        }
    }
}
