use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{MsfError, Result};
use crate::families::{Expected, Fixture};
use crate::op::gate::LocalMonomialGate;
use crate::op::generators::GeneratorSet;
use crate::op::monomial::MonomialOp;
use crate::space::{BasisVector, SiteSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Open,
    Periodic,
}

impl FromStr for Boundary {
    type Err = MsfError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "open" => Ok(Boundary::Open),
            "periodic" => Ok(Boundary::Periodic),
            _ => Err(MsfError::InvalidArgument(format!(
                "boundary must be open or periodic, got {s:?}"
            ))),
        }
    }
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Boundary::Open => "open",
            Boundary::Periodic => "periodic",
        })
    }
}

/// The boundary Pauli labelling the four open-chain ground states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum AkltLabel {
    I,
    X,
    Y,
    Z,
}

impl AkltLabel {
    pub const ALL: [AkltLabel; 4] = [AkltLabel::I, AkltLabel::X, AkltLabel::Y, AkltLabel::Z];

    fn matrix(self) -> Mat2 {
        let c = Complex64::new;
        let (o, z, i) = (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
        match self {
            AkltLabel::I => [[o, z], [z, o]],
            AkltLabel::X => [[z, o], [o, z]],
            AkltLabel::Y => [[z, -i], [i, z]],
            AkltLabel::Z => [[o, z], [z, -o]],
        }
    }
}

type Mat2 = [[Complex64; 2]; 2];

fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, slot) in row.iter_mut().enumerate() {
            *slot = a[r][0] * b[0][c] + a[r][1] * b[1][c];
        }
    }
    out
}

/// Site value `a` stands for the Pauli matrix `σ_a` with `σ_0 = X`,
/// `σ_1 = Y`, `σ_2 = Z`.
fn site_pauli(a: u32) -> Result<Mat2> {
    match a {
        0 => Ok(AkltLabel::X.matrix()),
        1 => Ok(AkltLabel::Y.matrix()),
        2 => Ok(AkltLabel::Z.matrix()),
        _ => Err(MsfError::InvalidBasisVector(format!(
            "AKLT site value {a} is not a qutrit value"
        ))),
    }
}

/// Unnormalized ground-state amplitude `Tr(σ · σ_{a_1} ⋯ σ_{a_n})` of `x`.
/// The periodic chain's unique ground state is the `I` case.
pub fn aklt_amplitude(label: AkltLabel, x: &BasisVector) -> Result<Complex64> {
    let mut m = label.matrix();
    for &a in x.values() {
        m = mat_mul(&m, &site_pauli(a)?);
    }
    Ok(m[0][0] + m[1][1])
}

/// Orbit representatives for even `n`: `0…000`, `0…012`, `1…102`, `2…201`.
pub fn aklt_representatives(n: usize) -> Result<Vec<(AkltLabel, BasisVector)>> {
    if n < 2 {
        return Err(MsfError::InvalidArgument(format!(
            "AKLT chains need n >= 2, got {n}"
        )));
    }
    let rep = |fill: u32, a: u32, b: u32| {
        let mut v = vec![fill; n];
        v[n - 2] = a;
        v[n - 1] = b;
        BasisVector(v)
    };
    Ok(vec![
        (AkltLabel::I, rep(0, 0, 0)),
        (AkltLabel::X, rep(0, 1, 2)),
        (AkltLabel::Y, rep(1, 0, 2)),
        (AkltLabel::Z, rep(2, 0, 1)),
    ])
}

fn gate_on(i: usize, j: usize) -> Result<MonomialOp> {
    MonomialOp::embed(LocalMonomialGate::aklt(), vec![i - 1, j - 1])
}

/// AKLT chain of `n` qutrits with gates `U_{i,i+1}`, plus `U_{n,1}` when
/// periodic. Dimension predictions are made for even `n` only.
pub fn build_aklt(n: usize, boundary: Boundary) -> Result<Fixture> {
    if n < 2 {
        return Err(MsfError::InvalidArgument(format!(
            "AKLT chains need n >= 2, got {n}"
        )));
    }
    if boundary == Boundary::Periodic && n < 3 {
        return Err(MsfError::InvalidArgument(
            "a periodic AKLT chain needs n >= 3".into(),
        ));
    }
    let mut gens = GeneratorSet::new(SiteSpace::uniform(n, 3)?);
    for i in 1..n {
        gens.push(format!("U{}_{}", i, i + 1), gate_on(i, i + 1)?)?;
    }
    if boundary == Boundary::Periodic {
        gens.push(format!("U{n}_1"), gate_on(n, 1)?)?;
    }
    let even = n.is_multiple_of(2);
    let total = 3u64.checked_pow(n as u32);
    // Strings with an even count of every value: (3^n + 3) / 4 for even n.
    let even_counts = total.map(|t| t.div_ceil(4));
    let expected = Expected {
        dimension: even.then_some(match boundary {
            Boundary::Open => 4,
            Boundary::Periodic => 1,
        }),
        support_size: if even {
            match boundary {
                Boundary::Open => total,
                Boundary::Periodic => even_counts,
            }
        } else {
            None
        },
        representative: Some(BasisVector::zeros(n)),
        total_orbits: even.then_some(4),
        ..Expected::default()
    };
    Ok(Fixture::new(format!("aklt-{n}-{boundary}"), gens, expected))
}

/// `B = U_{n-2,n-1} U_{n,n-1} U_{n-1,n-2} ⋯ U_{2,1} U_{1,n}`, a word in the
/// periodic generators that maps each of `a_X`, `a_Y`, `a_Z` to minus itself.
pub fn aklt_witness(n: usize) -> Result<MonomialOp> {
    if n < 3 {
        return Err(MsfError::InvalidArgument(format!(
            "the witness needs n >= 3, got {n}"
        )));
    }
    let mut factors = vec![gate_on(n - 2, n - 1)?];
    for i in (2..=n).rev() {
        factors.push(gate_on(i, i - 1)?);
    }
    factors.push(gate_on(1, n)?);
    Ok(MonomialOp::Product(factors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase::Phase;

    #[test]
    fn witness_negates_nontrivial_representatives() {
        for n in [4, 6] {
            let b = aklt_witness(n).unwrap();
            for (label, rep) in aklt_representatives(n).unwrap() {
                if label == AkltLabel::I {
                    continue;
                }
                assert_eq!(
                    b.apply(&rep).unwrap(),
                    (rep.clone(), Phase::MINUS_ONE),
                    "{label:?} n={n}"
                );
            }
        }
    }

    #[test]
    fn amplitudes_vanish_off_parity_class() {
        // Three 0s and one 1: the Z class.
        let x: BasisVector = "0001".parse().unwrap();
        for l in AkltLabel::ALL {
            let a = aklt_amplitude(l, &x).unwrap();
            assert_eq!(a.norm() > 0.0, l == AkltLabel::Z, "{l:?}");
        }
        let zero = BasisVector::zeros(4);
        assert_eq!(
            aklt_amplitude(AkltLabel::I, &zero).unwrap(),
            Complex64::new(2.0, 0.0)
        );
    }

    #[test]
    fn generator_names() {
        let f = build_aklt(3, Boundary::Periodic).unwrap();
        assert_eq!(f.gens.names(), ["U1_2", "U2_3", "U3_1"]);
        assert_eq!(f.expected.dimension, None);
        assert!(build_aklt(2, Boundary::Periodic).is_err());
    }
}
