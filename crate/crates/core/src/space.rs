//! Product basis indexing.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{MsfError, Result};

/// A tensor product of sites with local dimensions `dims[i] >= 2`.
///
/// Flat indices use mixed radix with site 0 most significant, so index order
/// coincides with the lexicographic order of [`BasisVector`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SpaceRepr", into = "SpaceRepr")]
pub struct SiteSpace {
    dims: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct SpaceRepr {
    dims: Vec<u32>,
}

impl TryFrom<SpaceRepr> for SiteSpace {
    type Error = MsfError;
    fn try_from(r: SpaceRepr) -> Result<Self> {
        SiteSpace::new(r.dims)
    }
}

impl From<SiteSpace> for SpaceRepr {
    fn from(s: SiteSpace) -> Self {
        SpaceRepr { dims: s.dims }
    }
}

impl SiteSpace {
    pub fn new(dims: Vec<u32>) -> Result<SiteSpace> {
        if dims.is_empty() {
            return Err(MsfError::InvalidArgument(
                "a space needs at least one site".into(),
            ));
        }
        if let Some((i, d)) = dims.iter().enumerate().find(|(_, &d)| d < 2) {
            return Err(MsfError::InvalidArgument(format!(
                "site {i} has dimension {d}, need at least 2"
            )));
        }
        Ok(SiteSpace { dims })
    }

    pub fn qubits(n: usize) -> Result<SiteSpace> {
        SiteSpace::new(vec![2; n])
    }

    pub fn uniform(n: usize, d: u32) -> Result<SiteSpace> {
        SiteSpace::new(vec![d; n])
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    pub fn num_sites(&self) -> usize {
        self.dims.len()
    }

    pub fn is_qubit(&self) -> bool {
        self.dims.iter().all(|&d| d == 2)
    }

    /// Product of the site dimensions, or `None` when it does not fit in a
    /// `u64` (a "huge" space that can only be explored through orbits).
    pub fn total_dim(&self) -> Option<u64> {
        self.dims
            .iter()
            .try_fold(1u64, |acc, &d| acc.checked_mul(d as u64))
    }

    pub fn check(&self, x: &BasisVector) -> Result<()> {
        if x.0.len() != self.dims.len() {
            return Err(MsfError::InvalidBasisVector(format!(
                "{x} has {} sites, space has {}",
                x.0.len(),
                self.dims.len()
            )));
        }
        for (i, (&v, &d)) in x.0.iter().zip(&self.dims).enumerate() {
            if v >= d {
                return Err(MsfError::InvalidBasisVector(format!(
                    "{x}: value {v} at site {i} exceeds local dimension {d}"
                )));
            }
        }
        Ok(())
    }

    pub fn index(&self, x: &BasisVector) -> Result<u64> {
        self.check(x)?;
        let mut idx = 0u64;
        for (&v, &d) in x.0.iter().zip(&self.dims) {
            idx = idx
                .checked_mul(d as u64)
                .and_then(|i| i.checked_add(v as u64))
                .ok_or_else(|| MsfError::CapExceeded("flat index overflows u64".into()))?;
        }
        Ok(idx)
    }

    pub fn vector(&self, mut index: u64) -> Result<BasisVector> {
        match self.total_dim() {
            Some(t) if index < t => {}
            _ => {
                return Err(MsfError::InvalidBasisVector(format!(
                    "index {index} out of range"
                )))
            }
        }
        let mut values = vec![0u32; self.dims.len()];
        for (slot, &d) in values.iter_mut().zip(&self.dims).rev() {
            *slot = (index % d as u64) as u32;
            index /= d as u64;
        }
        Ok(BasisVector(values))
    }

    /// Every basis vector in index order. Panics if the space is huge; call
    /// sites check `total_dim` against a cap first.
    pub fn basis(&self) -> impl Iterator<Item = BasisVector> + '_ {
        let total = self.total_dim().expect("space too large to enumerate");
        (0..total).map(move |i| self.vector(i).expect("index in range"))
    }

    pub fn parse_vector(&self, s: &str) -> Result<BasisVector> {
        let x: BasisVector = s.parse()?;
        self.check(&x)?;
        Ok(x)
    }
}

/// A computational basis vector `|x_1 … x_n⟩` stored per site.
///
/// Ordering is lexicographic over sites.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisVector(pub Vec<u32>);

impl BasisVector {
    pub fn new(values: Vec<u32>) -> Self {
        BasisVector(values)
    }

    pub fn zeros(n: usize) -> Self {
        BasisVector(vec![0; n])
    }

    /// Qubit vector from a bit slice.
    pub fn from_bits(bits: &[bool]) -> Self {
        BasisVector(bits.iter().map(|&b| b as u32).collect())
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of nonzero entries (Hamming weight for qubits).
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&v| v != 0).count()
    }
}

impl fmt::Display for BasisVector {
    /// Digits run together when every value is a single digit, otherwise
    /// values are separated by dots.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&v| v < 10) {
            for v in &self.0 {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
            write!(f, "{}", parts.join("."))
        }
    }
}

impl FromStr for BasisVector {
    type Err = MsfError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s
            .trim()
            .trim_start_matches('|')
            .trim_end_matches('⟩')
            .trim_end_matches('>');
        let bad = || MsfError::InvalidBasisVector(format!("cannot parse {s:?}"));
        if s.is_empty() {
            return Err(bad());
        }
        let values = if s.contains(['.', ',']) {
            s.split(['.', ','])
                .map(|p| p.trim().parse::<u32>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).ok_or_else(bad))
                .collect::<Result<Vec<_>>>()?
        };
        Ok(BasisVector(values))
    }
}

impl Serialize for BasisVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BasisVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_bad_spaces() {
        assert!(SiteSpace::new(vec![]).is_err());
        assert!(SiteSpace::new(vec![2, 1]).is_err());
    }

    #[test]
    fn index_order_is_lexicographic() {
        let s = SiteSpace::new(vec![2, 3]).unwrap();
        let all: Vec<BasisVector> = s.basis().collect();
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        assert_eq!(all[4], BasisVector(vec![1, 1]));
    }

    #[test]
    fn huge_space_is_flagged() {
        let s = SiteSpace::qubits(70).unwrap();
        assert_eq!(s.total_dim(), None);
        assert_eq!(SiteSpace::qubits(10).unwrap().total_dim(), Some(1024));
    }

    #[test]
    fn display_and_parse() {
        let x: BasisVector = "0012".parse().unwrap();
        assert_eq!(x, BasisVector(vec![0, 0, 1, 2]));
        assert_eq!(x.to_string(), "0012");
        let y = BasisVector(vec![10, 3]);
        assert_eq!(y.to_string(), "10.3");
        assert_eq!("10.3".parse::<BasisVector>().unwrap(), y);
        assert!("0a1".parse::<BasisVector>().is_err());
    }

    #[test]
    fn check_catches_out_of_range() {
        let s = SiteSpace::qubits(2).unwrap();
        assert!(s.check(&BasisVector(vec![0, 2])).is_err());
        assert!(s.check(&BasisVector(vec![0])).is_err());
    }

    proptest! {
        #[test]
        fn index_round_trip(dims in prop::collection::vec(2u32..5, 1..6), seed in any::<u64>()) {
            let s = SiteSpace::new(dims).unwrap();
            let idx = seed % s.total_dim().unwrap();
            let x = s.vector(idx).unwrap();
            prop_assert_eq!(s.index(&x).unwrap(), idx);
        }
    }
}
