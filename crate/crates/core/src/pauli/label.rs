use std::fmt;
use std::str::FromStr;

use crate::error::{MsfError, Result};
use crate::op::gate::LocalMonomialGate;
use crate::op::monomial::MonomialOp;
use crate::pauli::gf2::Gf2Vector;
use crate::phase::Phase;
use crate::space::BasisVector;

/// `i^k X(s) Z(t)` on `n` qubits, with `k` taken mod 4.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliLabel {
    pub k: u8,
    pub s: Gf2Vector,
    pub t: Gf2Vector,
}

impl PauliLabel {
    pub fn new(k: u8, s: Gf2Vector, t: Gf2Vector) -> Result<Self> {
        if s.len() != t.len() {
            return Err(MsfError::InvalidArgument(format!(
                "X part has {} qubits, Z part {}",
                s.len(),
                t.len()
            )));
        }
        Ok(PauliLabel { k: k % 4, s, t })
    }

    pub fn identity(n: usize) -> Self {
        PauliLabel {
            k: 0,
            s: Gf2Vector::zeros(n),
            t: Gf2Vector::zeros(n),
        }
    }

    pub fn x(n: usize, i: usize) -> Self {
        PauliLabel {
            k: 0,
            s: Gf2Vector::unit(n, i),
            t: Gf2Vector::zeros(n),
        }
    }

    pub fn z(n: usize, i: usize) -> Self {
        PauliLabel {
            k: 0,
            s: Gf2Vector::zeros(n),
            t: Gf2Vector::unit(n, i),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.s.len()
    }

    /// `i^k`.
    pub fn gamma(&self) -> Phase {
        Phase::i_pow(self.k as i64)
    }

    pub fn is_identity(&self) -> bool {
        self.k == 0 && self.s.is_zero() && self.t.is_zero()
    }

    /// Multiply by `i^dk`.
    pub fn times_i_pow(&self, dk: u8) -> Self {
        PauliLabel {
            k: (self.k + dk) % 4,
            ..self.clone()
        }
    }

    pub fn commutes_with(&self, other: &PauliLabel) -> bool {
        self.s.dot(&other.t) == self.t.dot(&other.s)
    }

    /// `σ² = i^{2k} (-1)^{s·t} I`; true when this is `+I`.
    pub fn squares_to_identity(&self) -> bool {
        (self.k as usize + self.s.dot(&self.t) as usize).is_multiple_of(2)
    }

    /// `σ|x⟩ = i^k (-1)^{t·x} |x + s⟩`.
    pub fn act(&self, x: &Gf2Vector) -> (Gf2Vector, Phase) {
        let k = self.k as i64 + 2 * self.t.dot(x) as i64;
        (x.add(&self.s), Phase::i_pow(k))
    }

    pub fn act_on(&self, x: &BasisVector) -> Result<(BasisVector, Phase)> {
        if x.len() != self.num_qubits() || x.values().iter().any(|&v| v > 1) {
            return Err(MsfError::InvalidBasisVector(format!(
                "{x} is not a {}-qubit vector",
                self.num_qubits()
            )));
        }
        let (y, p) = self.act(&Gf2Vector::from_values(x.values()));
        Ok((BasisVector(y.to_values()), p))
    }

    /// The same operator as a monomial operator: the `Z` factors act first,
    /// then the `X` factors, then the scalar `i^k`.
    pub fn to_monomial(&self) -> MonomialOp {
        let mut factors = Vec::new();
        if self.k != 0 {
            factors.push(MonomialOp::constant(self.gamma()));
        }
        for i in self.s.ones() {
            factors.push(MonomialOp::Embedded {
                gate: LocalMonomialGate::qudit_x(2, 1).expect("valid gate").into(),
                sites: vec![i],
            });
        }
        for i in self.t.ones() {
            factors.push(MonomialOp::Embedded {
                gate: LocalMonomialGate::qudit_z(2, 1).expect("valid gate").into(),
                sites: vec![i],
            });
        }
        MonomialOp::Product(factors)
    }
}

/// Label of `p·q`, using `Z(t)X(s') = (-1)^{t·s'} X(s')Z(t)`.
pub fn pauli_mul(p: &PauliLabel, q: &PauliLabel) -> Result<PauliLabel> {
    if p.num_qubits() != q.num_qubits() {
        return Err(MsfError::InvalidArgument(format!(
            "cannot multiply Paulis on {} and {} qubits",
            p.num_qubits(),
            q.num_qubits()
        )));
    }
    let k = p.k + q.k + 2 * p.t.dot(&q.s) as u8;
    Ok(PauliLabel {
        k: k % 4,
        s: p.s.add(&q.s),
        t: p.t.add(&q.t),
    })
}

pub fn pauli_to_monomial(label: &PauliLabel) -> MonomialOp {
    label.to_monomial()
}

/// `X_d^x_exp Z_d^z_exp` on one `d`-level site.
pub fn qudit_pauli(d: u32, x_exp: i64, z_exp: i64, site: usize) -> Result<MonomialOp> {
    if d < 2 {
        return Err(MsfError::InvalidArgument(format!(
            "qudit dimension {d} < 2"
        )));
    }
    Ok(MonomialOp::Product(vec![
        MonomialOp::embed(LocalMonomialGate::qudit_x(d, x_exp)?, vec![site])?,
        MonomialOp::embed(LocalMonomialGate::qudit_z(d, z_exp)?, vec![site])?,
    ]))
}

impl FromStr for PauliLabel {
    type Err = MsfError;

    /// Strings over `IXYZ` with an optional sign `+`, `-`, `+i`, `-i`, `i`.
    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let (mut k, body) = if let Some(r) = text.strip_prefix("+i").or(text.strip_prefix("i")) {
            (1u8, r)
        } else if let Some(r) = text.strip_prefix("-i") {
            (3, r)
        } else if let Some(r) = text.strip_prefix('-') {
            (2, r)
        } else {
            (0, text.strip_prefix('+').unwrap_or(text))
        };
        if body.is_empty() {
            return Err(MsfError::InvalidArgument(format!(
                "empty Pauli string {text:?}"
            )));
        }
        let n = body.chars().count();
        let mut s = Gf2Vector::zeros(n);
        let mut t = Gf2Vector::zeros(n);
        for (i, c) in body.chars().enumerate() {
            match c.to_ascii_uppercase() {
                'I' => {}
                'X' => s.set(i, true),
                'Z' => t.set(i, true),
                'Y' => {
                    // Y = iXZ
                    s.set(i, true);
                    t.set(i, true);
                    k += 1;
                }
                _ => {
                    return Err(MsfError::InvalidArgument(format!(
                        "invalid Pauli letter {c:?} in {text:?}"
                    )))
                }
            }
        }
        Ok(PauliLabel { k: k % 4, s, t })
    }
}

impl fmt::Display for PauliLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ys = (0..self.num_qubits())
            .filter(|&i| self.s.get(i) && self.t.get(i))
            .count();
        let sign = ["", "i", "-", "-i"][(self.k as usize + 4 - ys % 4) % 4];
        write!(f, "{sign}")?;
        for i in 0..self.num_qubits() {
            let c = match (self.s.get(i), self.t.get(i)) {
                (false, false) => 'I',
                (true, false) => 'X',
                (false, true) => 'Z',
                (true, true) => 'Y',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliLabel(k={}, s={}, t={})", self.k, self.s, self.t)
    }
}
