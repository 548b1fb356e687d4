use serde::{Deserialize, Serialize};

use crate::error::{MsfError, Result};
use crate::phase::Phase;

/// A small monomial matrix on `k` sites, stored as a permutation of the local
/// index set plus one phase per input index:
/// `|x_loc⟩ ↦ phases[x_loc] · |perm[x_loc]⟩`.
///
/// Local indices are mixed radix over `dims`, first site most significant.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GateRepr", into = "GateRepr")]
pub struct LocalMonomialGate {
    dims: Vec<u32>,
    perm: Vec<usize>,
    inv_perm: Vec<usize>,
    phases: Vec<Phase>,
}

#[derive(Serialize, Deserialize)]
struct GateRepr {
    dims: Vec<u32>,
    perm: Vec<usize>,
    phases: Vec<Phase>,
}

impl TryFrom<GateRepr> for LocalMonomialGate {
    type Error = MsfError;
    fn try_from(r: GateRepr) -> Result<Self> {
        LocalMonomialGate::new(r.dims, r.perm, r.phases)
    }
}

impl From<LocalMonomialGate> for GateRepr {
    fn from(g: LocalMonomialGate) -> Self {
        GateRepr {
            dims: g.dims,
            perm: g.perm,
            phases: g.phases,
        }
    }
}

impl LocalMonomialGate {
    pub fn new(dims: Vec<u32>, perm: Vec<usize>, phases: Vec<Phase>) -> Result<Self> {
        if dims.is_empty() || dims.iter().any(|&d| d < 2) {
            return Err(MsfError::MalformedOperator(format!(
                "gate dims {dims:?} must be non-empty with every entry >= 2"
            )));
        }
        let size = dims
            .iter()
            .try_fold(1usize, |a, &d| a.checked_mul(d as usize))
            .filter(|&s| s <= 1 << 24)
            .ok_or_else(|| MsfError::MalformedOperator(format!("gate on {dims:?} is too large")))?;
        if perm.len() != size || phases.len() != size {
            return Err(MsfError::MalformedOperator(format!(
                "gate on {dims:?} needs {size} perm entries and phases, got {} and {}",
                perm.len(),
                phases.len()
            )));
        }
        let mut inv_perm = vec![usize::MAX; size];
        for (i, &p) in perm.iter().enumerate() {
            if p >= size || inv_perm[p] != usize::MAX {
                return Err(MsfError::MalformedOperator(format!(
                    "gate perm {perm:?} is not a bijection"
                )));
            }
            inv_perm[p] = i;
        }
        Ok(LocalMonomialGate {
            dims,
            perm,
            inv_perm,
            phases,
        })
    }

    /// Tabulate a gate from its action on local basis vectors.
    pub fn from_action(
        dims: Vec<u32>,
        action: impl Fn(&[u32]) -> (Vec<u32>, Phase),
    ) -> Result<Self> {
        let size: usize = dims.iter().map(|&d| d as usize).product();
        let mut perm = Vec::with_capacity(size);
        let mut phases = Vec::with_capacity(size);
        for i in 0..size {
            let (out, ph) = action(&unflatten(&dims, i));
            if out.len() != dims.len() || out.iter().zip(&dims).any(|(&v, &d)| v >= d) {
                return Err(MsfError::MalformedOperator(format!(
                    "gate action maps into {out:?}, outside {dims:?}"
                )));
            }
            perm.push(flatten(&dims, &out));
            phases.push(ph);
        }
        LocalMonomialGate::new(dims, perm, phases)
    }

    pub fn diagonal(dims: Vec<u32>, phases: Vec<Phase>) -> Result<Self> {
        let perm = (0..phases.len()).collect();
        LocalMonomialGate::new(dims, perm, phases)
    }

    pub fn arity(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    pub fn size(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn phases(&self) -> &[Phase] {
        &self.phases
    }

    pub fn forward(&self, local: usize) -> (usize, Phase) {
        (self.perm[local], self.phases[local])
    }

    /// Preimage of `local` together with the conjugated phase, i.e. the
    /// action of the adjoint gate.
    pub fn backward(&self, local: usize) -> (usize, Phase) {
        let pre = self.inv_perm[local];
        (pre, self.phases[pre].conj())
    }

    pub fn is_diagonal(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn is_permutation(&self) -> bool {
        self.phases.iter().all(|p| p.is_one())
    }

    pub fn flatten(&self, values: &[u32]) -> usize {
        flatten(&self.dims, values)
    }

    pub fn unflatten(&self, index: usize) -> Vec<u32> {
        unflatten(&self.dims, index)
    }

    /// Two-site swap on `d`-level sites.
    pub fn swap(d: u32) -> Self {
        Self::from_action(vec![d, d], |v| (vec![v[1], v[0]], Phase::ONE)).expect("valid swap")
    }

    /// `X_d^power`: `|x⟩ ↦ |x + power mod d⟩`.
    pub fn qudit_x(d: u32, power: i64) -> Result<Self> {
        let shift = power.rem_euclid(d as i64) as u32;
        Self::from_action(vec![d], |v| (vec![(v[0] + shift) % d], Phase::ONE))
    }

    /// `Z_d^power`: `|x⟩ ↦ exp(2πi·power·x/d)|x⟩`.
    pub fn qudit_z(d: u32, power: i64) -> Result<Self> {
        let phases = (0..d as i64)
            .map(|x| Phase::root_of_unity(power * x, d as u64))
            .collect::<Result<Vec<_>>>()?;
        Self::diagonal(vec![d], phases)
    }

    /// Classical NOT on one bit.
    pub fn not() -> Self {
        Self::from_action(vec![2], |v| (vec![1 - v[0]], Phase::ONE)).expect("valid gate")
    }

    /// CNOT with the control on the first site.
    pub fn cnot() -> Self {
        Self::from_action(vec![2, 2], |v| (vec![v[0], v[1] ^ v[0]], Phase::ONE))
            .expect("valid gate")
    }

    /// Toffoli with controls on the first two sites.
    pub fn toffoli() -> Self {
        Self::from_action(vec![2, 2, 2], |v| {
            (vec![v[0], v[1], v[2] ^ (v[0] & v[1])], Phase::ONE)
        })
        .expect("valid gate")
    }

    /// The two-qutrit AKLT operator: antisymmetric pairs swap with a minus
    /// sign, and `|00⟩ → |11⟩ → |22⟩ → |00⟩` cycles.
    pub fn aklt() -> Self {
        Self::from_action(vec![3, 3], |v| {
            if v[0] == v[1] {
                let c = (v[0] + 1) % 3;
                (vec![c, c], Phase::ONE)
            } else {
                (vec![v[1], v[0]], Phase::MINUS_ONE)
            }
        })
        .expect("valid gate")
    }
}

pub(crate) fn flatten(dims: &[u32], values: &[u32]) -> usize {
    values
        .iter()
        .zip(dims)
        .fold(0usize, |acc, (&v, &d)| acc * d as usize + v as usize)
}

pub(crate) fn unflatten(dims: &[u32], mut index: usize) -> Vec<u32> {
    let mut out = vec![0u32; dims.len()];
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = (index % d as usize) as u32;
        index /= d as usize;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijection() {
        let e = LocalMonomialGate::new(vec![2], vec![0, 0], vec![Phase::ONE; 2]);
        assert!(matches!(e, Err(MsfError::MalformedOperator(_))));
        let e = LocalMonomialGate::new(vec![2], vec![0], vec![Phase::ONE]);
        assert!(e.is_err());
    }

    #[test]
    fn aklt_gate_table() {
        let u = LocalMonomialGate::aklt();
        let idx = |a, b| u.flatten(&[a, b]);
        assert_eq!(u.forward(idx(0, 1)), (idx(1, 0), Phase::MINUS_ONE));
        assert_eq!(u.forward(idx(2, 1)), (idx(1, 2), Phase::MINUS_ONE));
        assert_eq!(u.forward(idx(0, 0)), (idx(1, 1), Phase::ONE));
        assert_eq!(u.forward(idx(2, 2)), (idx(0, 0), Phase::ONE));
        assert_eq!(u.backward(idx(1, 1)), (idx(0, 0), Phase::ONE));
    }

    #[test]
    fn qudit_paulis() {
        let z = LocalMonomialGate::qudit_z(3, 1).unwrap();
        assert_eq!(z.phases()[2], Phase::root_of_unity(2, 3).unwrap());
        let x = LocalMonomialGate::qudit_x(3, 1).unwrap();
        assert_eq!(x.forward(2), (0, Phase::ONE));
    }
}
