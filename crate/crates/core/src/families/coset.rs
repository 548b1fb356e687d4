use std::collections::{BTreeSet, VecDeque};

use crate::error::{MsfError, Result};
use crate::families::{Expected, Fixture};
use crate::op::gate::LocalMonomialGate;
use crate::op::generators::GeneratorSet;
use crate::op::monomial::MonomialOp;
use crate::phase::Phase;
use crate::space::{BasisVector, SiteSpace};

/// Largest group [`CyclicProduct`] will enumerate.
pub const COSET_GROUP_CAP: u64 = 100_000;

/// The abelian group `Z_{n_1} × ⋯ × Z_{n_m}` with elements as residue vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicProduct {
    factors: Vec<u32>,
}

impl CyclicProduct {
    pub fn new(factors: Vec<u32>) -> Result<CyclicProduct> {
        if factors.is_empty() || factors.iter().any(|&n| n < 2) {
            return Err(MsfError::InvalidArgument(format!(
                "cyclic factors must be non-empty and each at least 2, got {factors:?}"
            )));
        }
        Ok(CyclicProduct { factors })
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn order(&self) -> Option<u64> {
        self.factors
            .iter()
            .try_fold(1u64, |acc, &n| acc.checked_mul(n as u64))
    }

    pub fn check(&self, g: &[u32]) -> Result<()> {
        if g.len() != self.factors.len() || g.iter().zip(&self.factors).any(|(&x, &n)| x >= n) {
            return Err(MsfError::InvalidArgument(format!(
                "{g:?} is not an element of Z_{:?}",
                self.factors
            )));
        }
        Ok(())
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter()
            .zip(b)
            .zip(&self.factors)
            .map(|((&x, &y), &n)| (x + y) % n)
            .collect()
    }

    /// `χ_k(x) = Π_l exp(2πi k_l x_l / n_l)`.
    pub fn character(&self, k: &[u32], x: &[u32]) -> Phase {
        k.iter()
            .zip(x)
            .zip(&self.factors)
            .map(|((&a, &b), &n)| {
                Phase::root_of_unity(a as i64 * b as i64, n as u64).expect("nonzero modulus")
            })
            .fold(Phase::ONE, |acc, p| acc * p)
    }

    fn enumerable(&self) -> Result<u64> {
        match self.order() {
            Some(o) if o <= COSET_GROUP_CAP => Ok(o),
            _ => Err(MsfError::CapExceeded(format!(
                "group Z_{:?} exceeds the enumeration cap {COSET_GROUP_CAP}",
                self.factors
            ))),
        }
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> Result<Vec<Vec<u32>>> {
        let order = self.enumerable()?;
        let space = SiteSpace::new(self.factors.clone())?;
        (0..order).map(|i| space.vector(i).map(|v| v.0)).collect()
    }

    /// The subgroup generated by `gens`.
    pub fn closure(&self, gens: &[Vec<u32>]) -> Result<BTreeSet<Vec<u32>>> {
        self.enumerable()?;
        for g in gens {
            self.check(g)?;
        }
        let zero = vec![0; self.factors.len()];
        let mut seen = BTreeSet::from([zero.clone()]);
        let mut queue = VecDeque::from([zero]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = self.add(&x, g);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        Ok(seen)
    }
}

/// A generating set for `H^⊥ = {k : χ_k(h) = 1 for all h ∈ H}`, chosen greedily
/// in lexicographic order.
pub fn dual_subgroup(group: &CyclicProduct, h_gens: &[Vec<u32>]) -> Result<Vec<Vec<u32>>> {
    for h in h_gens {
        group.check(h)?;
    }
    let mut chosen: Vec<Vec<u32>> = Vec::new();
    let mut span = group.closure(&chosen)?;
    for k in group.elements()? {
        if span.contains(&k) || !h_gens.iter().all(|h| group.character(&k, h).is_one()) {
            continue;
        }
        chosen.push(k);
        span = group.closure(&chosen)?;
    }
    Ok(chosen)
}

fn translation(group: &CyclicProduct, h: &[u32]) -> Result<MonomialOp> {
    let factors = h
        .iter()
        .zip(group.factors())
        .enumerate()
        .filter(|(_, (&x, _))| x != 0)
        .map(|(site, (&x, &n))| {
            MonomialOp::embed(LocalMonomialGate::qudit_x(n, x as i64)?, vec![site])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MonomialOp::Product(factors))
}

/// `conj(χ_k(shift)) Z(k)`, which fixes every vector of `H + shift`.
fn shifted_character(group: &CyclicProduct, k: &[u32], shift: &[u32]) -> Result<MonomialOp> {
    let mut factors = Vec::new();
    let c = group.character(k, shift).conj();
    if !c.is_one() {
        factors.push(MonomialOp::constant(c));
    }
    for (site, (&x, &n)) in k.iter().zip(group.factors()).enumerate() {
        if x != 0 {
            factors.push(MonomialOp::embed(
                LocalMonomialGate::qudit_z(n, x as i64)?,
                vec![site],
            )?);
        }
    }
    Ok(MonomialOp::Product(factors))
}

/// The coset state `|H + shift⟩` on one site per cyclic factor, stabilized by
/// the translations `X(h)` for the given generators of `H` and the shifted
/// characters of a generating set of `H^⊥`.
pub fn build_coset(factors: &[u32], h_gens: &[Vec<u32>], shift: &[u32]) -> Result<Fixture> {
    let group = CyclicProduct::new(factors.to_vec())?;
    group.check(shift)?;
    let h = group.closure(h_gens)?;
    let dual = dual_subgroup(&group, h_gens)?;
    let mut gens = GeneratorSet::new(SiteSpace::new(factors.to_vec())?);
    for (i, g) in h_gens
        .iter()
        .filter(|g| g.iter().any(|&x| x != 0))
        .enumerate()
    {
        gens.push(format!("X{}", i + 1), translation(&group, g)?)?;
    }
    for (j, k) in dual.iter().enumerate() {
        gens.push(format!("Z{}", j + 1), shifted_character(&group, k, shift)?)?;
    }
    let rep = h
        .iter()
        .map(|x| group.add(x, shift))
        .min()
        .expect("subgroup contains zero");
    let order = group.order().expect("checked by closure");
    Ok(Fixture::new(
        format!("coset-{factors:?}"),
        gens,
        Expected {
            dimension: Some(1),
            support_size: Some(h.len() as u64),
            representative: Some(BasisVector(rep)),
            total_orbits: Some(order / h.len() as u64),
            ..Expected::default()
        },
    ))
}
