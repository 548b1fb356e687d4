//! Unit-modulus phases.
//!
//! Almost every operator in this crate carries roots of unity, so the default
//! representation is an exact cyclotomic fraction `exp(2πi·num/den)`. Products
//! of cyclotomic phases stay exact, which makes "is this phase exactly 1?"
//! decidable. A floating-point variant exists for user-supplied phase
//! functions (LME states) and anything that overflows the exact form.

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{MsfError, Result};

/// Modulus tolerance accepted when building an approximate phase.
pub const UNIT_TOLERANCE: f64 = 1e-12;
/// An approximate phase this close to 1 counts as 1.
pub const ONE_TOLERANCE: f64 = 1e-9;
/// Approximate phases between `ONE_TOLERANCE` and this distance from 1 are
/// ambiguous and trigger [`MsfError::Precision`].
pub const AMBIGUOUS_LIMIT: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PhaseRepr", into = "PhaseRepr")]
pub enum Phase {
    /// `exp(2πi·num/den)`, always reduced with `0 <= num < den`.
    Cyclotomic {
        num: u64,
        den: u64,
    },
    Approx {
        re: f64,
        im: f64,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PhaseRepr {
    Cyclotomic { num: i64, den: u64 },
    Approx { re: f64, im: f64 },
}

impl TryFrom<PhaseRepr> for Phase {
    type Error = MsfError;

    fn try_from(r: PhaseRepr) -> Result<Self> {
        match r {
            PhaseRepr::Cyclotomic { num, den } => Phase::root_of_unity(num, den),
            PhaseRepr::Approx { re, im } => Phase::from_complex(Complex64::new(re, im)),
        }
    }
}

impl From<Phase> for PhaseRepr {
    fn from(p: Phase) -> Self {
        match p {
            Phase::Cyclotomic { num, den } => PhaseRepr::Cyclotomic {
                num: num as i64,
                den,
            },
            Phase::Approx { re, im } => PhaseRepr::Approx { re, im },
        }
    }
}

/// Outcome of comparing a phase with 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Unity {
    One,
    NotOne,
}

impl Phase {
    pub const ONE: Phase = Phase::Cyclotomic { num: 0, den: 1 };
    pub const MINUS_ONE: Phase = Phase::Cyclotomic { num: 1, den: 2 };
    pub const I: Phase = Phase::Cyclotomic { num: 1, den: 4 };
    pub const MINUS_I: Phase = Phase::Cyclotomic { num: 3, den: 4 };

    /// `exp(2πi·num/den)`, reduced.
    pub fn root_of_unity(num: i64, den: u64) -> Result<Phase> {
        if den == 0 {
            return Err(MsfError::InvalidPhase("zero denominator".into()));
        }
        let d = den as i128;
        let n = (num as i128).rem_euclid(d);
        let g = n.gcd(&d).max(1);
        Ok(Phase::Cyclotomic {
            num: (n / g) as u64,
            den: (d / g) as u64,
        })
    }

    /// `i^k`.
    pub fn i_pow(k: i64) -> Phase {
        Phase::root_of_unity(k, 4).expect("nonzero denominator")
    }

    /// `(-1)^bit`.
    pub fn sign(negative: bool) -> Phase {
        if negative {
            Phase::MINUS_ONE
        } else {
            Phase::ONE
        }
    }

    pub fn from_complex(c: Complex64) -> Result<Phase> {
        let m = c.norm();
        if !m.is_finite() || (m - 1.0).abs() > UNIT_TOLERANCE {
            return Err(MsfError::InvalidPhase(format!(
                "{c} has modulus {m}, expected 1"
            )));
        }
        Ok(Phase::Approx { re: c.re, im: c.im })
    }

    pub fn to_complex(self) -> Complex64 {
        match self {
            Phase::Cyclotomic { num, den } => {
                // Exact values for the quarter turns keep dense matrices free of 1e-17 noise.
                let quarter = 4 * num as u128;
                if quarter.is_multiple_of(den as u128) {
                    match quarter / den as u128 {
                        0 => Complex64::new(1.0, 0.0),
                        1 => Complex64::new(0.0, 1.0),
                        2 => Complex64::new(-1.0, 0.0),
                        _ => Complex64::new(0.0, -1.0),
                    }
                } else {
                    let theta = std::f64::consts::TAU * num as f64 / den as f64;
                    Complex64::new(theta.cos(), theta.sin())
                }
            }
            Phase::Approx { re, im } => Complex64::new(re, im),
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Phase::Cyclotomic { .. })
    }

    pub fn conj(self) -> Phase {
        match self {
            Phase::Cyclotomic { num, den } => Phase::Cyclotomic {
                num: (den - num) % den,
                den,
            },
            Phase::Approx { re, im } => Phase::Approx { re, im: -im },
        }
    }

    pub fn pow(self, e: i64) -> Phase {
        match self {
            Phase::Cyclotomic { num, den } => {
                let n = ((num as i128) * (e as i128)).rem_euclid(den as i128) as i64;
                Phase::root_of_unity(n, den).expect("nonzero denominator")
            }
            Phase::Approx { .. } => {
                let base = if e < 0 { self.conj() } else { self };
                let mut acc = Phase::ONE;
                for _ in 0..e.unsigned_abs() {
                    acc = acc * base;
                }
                acc
            }
        }
    }

    /// Distance `|phase - 1|`.
    pub fn distance_from_one(self) -> f64 {
        (self.to_complex() - Complex64::new(1.0, 0.0)).norm()
    }

    /// Exact for cyclotomic phases; tolerance-based for approximate ones, with
    /// an error inside the ambiguous band rather than a guess.
    pub fn unity(self) -> Result<Unity> {
        match self {
            Phase::Cyclotomic { num, .. } => Ok(if num == 0 { Unity::One } else { Unity::NotOne }),
            Phase::Approx { .. } => {
                let d = self.distance_from_one();
                if d <= ONE_TOLERANCE {
                    Ok(Unity::One)
                } else if d < AMBIGUOUS_LIMIT {
                    Err(MsfError::Precision { distance: d })
                } else {
                    Ok(Unity::NotOne)
                }
            }
        }
    }

    /// `num = 0` for cyclotomic, `|p - 1| <= 1e-9` otherwise.
    pub fn is_one(self) -> bool {
        match self {
            Phase::Cyclotomic { num, .. } => num == 0,
            Phase::Approx { .. } => self.distance_from_one() <= ONE_TOLERANCE,
        }
    }

    pub fn approx_eq(self, other: Phase, tol: f64) -> bool {
        (self.to_complex() - other.to_complex()).norm() <= tol
    }
}

impl Default for Phase {
    fn default() -> Self {
        Phase::ONE
    }
}

impl Mul for Phase {
    type Output = Phase;

    fn mul(self, rhs: Phase) -> Phase {
        match (self, rhs) {
            (Phase::Cyclotomic { num: n1, den: d1 }, Phase::Cyclotomic { num: n2, den: d2 }) => {
                let l = (d1 as u128).lcm(&(d2 as u128));
                if l <= i64::MAX as u128 {
                    let n = (n1 as u128 * (l / d1 as u128) + n2 as u128 * (l / d2 as u128)) % l;
                    return Phase::root_of_unity(n as i64, l as u64).expect("nonzero denominator");
                }
                let c = self.to_complex() * rhs.to_complex();
                Phase::Approx { re: c.re, im: c.im }
            }
            _ => {
                let c = self.to_complex() * rhs.to_complex();
                let c = c / c.norm();
                Phase::Approx { re: c.re, im: c.im }
            }
        }
    }
}

impl std::iter::Product for Phase {
    fn product<I: Iterator<Item = Phase>>(iter: I) -> Phase {
        iter.fold(Phase::ONE, |a, b| a * b)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Phase::Cyclotomic { num: 0, .. } => write!(f, "1"),
            Phase::Cyclotomic { num: 1, den: 2 } => write!(f, "-1"),
            Phase::Cyclotomic { num: 1, den: 4 } => write!(f, "i"),
            Phase::Cyclotomic { num: 3, den: 4 } => write!(f, "-i"),
            Phase::Cyclotomic { num, den } => write!(f, "e^(2πi·{num}/{den})"),
            Phase::Approx { re, im } => write!(f, "({re:+.12}{im:+.12}i)"),
        }
    }
}
