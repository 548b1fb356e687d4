use std::collections::HashSet;

use num_complex::Complex64;

use crate::error::{MsfError, Result};
use crate::group::support::{support_test, Witness};
use crate::group::tree::{orbit_bfs, SchreierTree};
use crate::op::generators::GeneratorSet;
use crate::op::monomial::MonomialOp;
use crate::phase::Phase;
use crate::space::BasisVector;

/// A sparse state as (basis vector, amplitude) pairs.
pub type SparseState = Vec<(BasisVector, Complex64)>;

/// The uniform-modulus superposition `Σ_y ξ(y)|y⟩ / √|O|` over a supported
/// orbit, with `ξ` read off the Schreier tree.
#[derive(Clone, Debug)]
pub struct OrbitState {
    tree: SchreierTree,
}

/// Build the orbit state rooted at the tree root; refuses roots outside the
/// support.
pub fn orbit_state(tree: SchreierTree, gens: &GeneratorSet) -> Result<OrbitState> {
    let verdict = support_test(&tree, gens)?;
    if !verdict.in_support {
        return Err(MsfError::NotSupported(tree.root().to_string()));
    }
    Ok(OrbitState { tree })
}

impl OrbitState {
    pub fn rep(&self) -> &BasisVector {
        self.tree.root()
    }

    pub fn tree(&self) -> &SchreierTree {
        &self.tree
    }

    pub fn size(&self) -> usize {
        self.tree.len()
    }

    /// `1/√|O|`.
    pub fn norm(&self) -> f64 {
        1.0 / (self.size() as f64).sqrt()
    }

    pub fn contains(&self, y: &BasisVector) -> bool {
        self.tree.contains(y)
    }

    pub fn phase_of(&self, y: &BasisVector) -> Result<Phase> {
        self.tree.transversal_phase(y)
    }

    /// Amplitude `⟨y|ψ⟩`, zero off the orbit.
    pub fn amplitude(&self, y: &BasisVector) -> Complex64 {
        match self.tree.index_of(y) {
            Some(i) => self.tree.phase_at(i).to_complex() * self.norm(),
            None => Complex64::new(0.0, 0.0),
        }
    }

    /// Members with their phases, in BFS order.
    pub fn terms(&self) -> impl Iterator<Item = (&BasisVector, Phase)> + '_ {
        (0..self.size()).map(|i| (self.tree.member(i), self.tree.phase_at(i)))
    }

    pub fn to_sparse(&self) -> SparseState {
        let norm = self.norm();
        self.terms()
            .map(|(y, p)| (y.clone(), p.to_complex() * norm))
            .collect()
    }

    /// Whether `op` maps the state to itself amplitude by amplitude: for every
    /// member `y`, `op|y⟩ = λ|z⟩` must satisfy `λ·ξ(y) = ξ(z)`.
    pub fn is_fixed_by(&self, op: &MonomialOp) -> Result<bool> {
        for (y, xi) in self.terms() {
            let (z, lambda) = op.apply(y)?;
            let Some(j) = self.tree.index_of(&z) else {
                return Ok(false);
            };
            let lhs = lambda * xi;
            let rhs = self.tree.phase_at(j);
            let same = if lhs.is_exact() && rhs.is_exact() {
                lhs == rhs
            } else {
                lhs.approx_eq(rhs, crate::phase::ONE_TOLERANCE)
            };
            if !same {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Which basis vectors to partition into orbits.
#[derive(Clone, Debug)]
pub enum Seeds {
    /// Every basis vector; the space must have at most `cap` elements.
    Exhaustive,
    List(Vec<BasisVector>),
}

#[derive(Clone, Debug)]
pub enum OrbitEntry {
    Supported(OrbitState),
    Excluded {
        root: BasisVector,
        min: BasisVector,
        size: usize,
        witness: Witness,
    },
    /// The orbit outgrew the cap; nothing can be concluded about it.
    Inconclusive {
        root: BasisVector,
        min: BasisVector,
        explored: usize,
    },
}

impl OrbitEntry {
    /// Smallest element seen in the orbit (the true minimum unless
    /// inconclusive).
    pub fn min(&self) -> &BasisVector {
        match self {
            OrbitEntry::Supported(s) => s.tree().min_member(),
            OrbitEntry::Excluded { min, .. } | OrbitEntry::Inconclusive { min, .. } => min,
        }
    }

    pub fn root(&self) -> &BasisVector {
        match self {
            OrbitEntry::Supported(s) => s.rep(),
            OrbitEntry::Excluded { root, .. } | OrbitEntry::Inconclusive { root, .. } => root,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            OrbitEntry::Supported(s) => s.size(),
            OrbitEntry::Excluded { size, .. } => *size,
            OrbitEntry::Inconclusive { explored, .. } => *explored,
        }
    }
}

/// Orbits of the requested seeds, sorted by minimal element.
#[derive(Clone, Debug)]
pub struct OrbitBasis {
    pub entries: Vec<OrbitEntry>,
}

impl OrbitBasis {
    pub fn states(&self) -> impl Iterator<Item = &OrbitState> + '_ {
        self.entries.iter().filter_map(|e| match e {
            OrbitEntry::Supported(s) => Some(s),
            _ => None,
        })
    }

    /// Number of supported orbits, which is the M-space dimension when the
    /// partition is exhaustive and conclusive.
    pub fn dimension(&self) -> usize {
        self.states().count()
    }

    pub fn total_orbits(&self) -> usize {
        self.entries.len()
    }

    pub fn inconclusive(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| matches!(e, OrbitEntry::Inconclusive { .. }))
            .count()
    }

    pub fn is_conclusive(&self) -> bool {
        self.inconclusive() == 0
    }
}

/// Partition the seeds into orbits, test each for support, and return one
/// orbit state per supported orbit.
pub fn orbit_basis(gens: &GeneratorSet, seeds: &Seeds, cap: usize) -> Result<OrbitBasis> {
    let seed_iter: Box<dyn Iterator<Item = BasisVector> + '_> = match seeds {
        Seeds::Exhaustive => match gens.space().total_dim() {
            Some(t) if t <= cap as u64 => Box::new(gens.space().basis()),
            _ => {
                return Err(MsfError::CapExceeded(format!(
                    "exhaustive orbit partition needs the whole basis, which exceeds the cap {cap}"
                )))
            }
        },
        Seeds::List(list) => {
            for x in list {
                gens.space().check(x)?;
            }
            Box::new(list.iter().cloned())
        }
    };
    let mut seen: HashSet<BasisVector> = HashSet::new();
    let mut entries = Vec::new();
    for x in seed_iter {
        if seen.contains(&x) {
            continue;
        }
        let tree = orbit_bfs(gens, &x, cap)?;
        seen.extend(tree.members().cloned());
        if tree.is_truncated() {
            entries.push(OrbitEntry::Inconclusive {
                root: x,
                min: tree.min_member().clone(),
                explored: tree.len(),
            });
            continue;
        }
        let verdict = support_test(&tree, gens)?;
        match verdict.witness {
            None => entries.push(OrbitEntry::Supported(OrbitState { tree })),
            Some(witness) => entries.push(OrbitEntry::Excluded {
                root: x,
                min: tree.min_member().clone(),
                size: tree.len(),
                witness,
            }),
        }
    }
    entries.sort_by(|a, b| a.min().cmp(b.min()));
    Ok(OrbitBasis { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::op::{DiagonalFn, LocalMonomialGate};
    use crate::space::SiteSpace;

    fn w(n: usize) -> GeneratorSet {
        let mut g = GeneratorSet::new(SiteSpace::qubits(n).unwrap());
        g.push(
            "T",
            MonomialOp::Diagonal(DiagonalFn::Hamming {
                den: n as u64,
                slope: 1,
                offset: -1,
            }),
        )
        .unwrap();
        for i in 0..n - 1 {
            g.push(
                format!("S{}", i + 1),
                MonomialOp::embed(LocalMonomialGate::swap(2), vec![i, i + 1]).unwrap(),
            )
            .unwrap();
        }
        g
    }

    #[test]
    fn w_state_basis() {
        let g = w(4);
        let b = orbit_basis(&g, &Seeds::Exhaustive, 1000).unwrap();
        assert_eq!(b.total_orbits(), 5);
        assert_eq!(b.dimension(), 1);
        let s = b.states().next().unwrap();
        assert_eq!(s.rep().to_string(), "0001");
        for (_, p) in s.terms() {
            assert_eq!(p, Phase::ONE);
        }
        assert!((s.amplitude(&"0100".parse().unwrap()).re - 0.5).abs() < 1e-15);
        for op in g.ops() {
            assert!(s.is_fixed_by(op).unwrap());
        }
    }

    #[test]
    fn seeds_in_one_orbit_collapse() {
        let g = w(4);
        let seeds = Seeds::List(vec!["1000".parse().unwrap(), "0010".parse().unwrap()]);
        let b = orbit_basis(&g, &seeds, 1000).unwrap();
        assert_eq!(b.total_orbits(), 1);
        assert_eq!(b.entries[0].root().to_string(), "1000");
    }

    #[test]
    fn exhaustive_over_cap_is_refused() {
        let g = w(4);
        assert!(matches!(
            orbit_basis(&g, &Seeds::Exhaustive, 8),
            Err(MsfError::CapExceeded(_))
        ));
    }

    #[test]
    fn truncated_orbit_is_reported() {
        let g = w(4);
        let b = orbit_basis(&g, &Seeds::List(vec!["1100".parse().unwrap()]), 3).unwrap();
        assert_eq!(b.inconclusive(), 1);
        assert!(!b.is_conclusive());
    }

    #[test]
    fn unsupported_root_is_refused() {
        let g = w(3);
        let t = orbit_bfs(&g, &"000".parse().unwrap(), 10).unwrap();
        assert!(matches!(orbit_state(t, &g), Err(MsfError::NotSupported(_))));
    }
}
