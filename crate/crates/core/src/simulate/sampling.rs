use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{MsfError, Result};
use crate::group::basis::OrbitState;
use crate::group::tree::SchreierTree;
use crate::op::generators::{GeneratorSet, Letter};
use crate::pauli::gf2::Gf2Vector;
use crate::pauli::stabilizer::{CosetSupport, PauliStabilizerGroup};
use crate::phase::Phase;
use crate::space::BasisVector;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A state whose Born distribution can be sampled and whose amplitudes are
/// uniform in modulus with computable phases.
pub trait MState {
    /// Exactly uniform draw from the support.
    fn sample<R: Rng>(&self, rng: &mut R) -> Result<BasisVector>;

    /// Phase of `y`, or `None` when `y` lies outside the support.
    fn xi(&self, y: &BasisVector) -> Result<Option<Phase>>;

    fn num_sites(&self) -> usize;
}

impl MState for OrbitState {
    fn sample<R: Rng>(&self, rng: &mut R) -> Result<BasisVector> {
        Ok(self.tree().member(rng.gen_range(0..self.size())).clone())
    }

    fn xi(&self, y: &BasisVector) -> Result<Option<Phase>> {
        Ok(self.tree().transversal_phase(y).ok())
    }

    fn num_sites(&self) -> usize {
        self.rep().len()
    }
}

/// The stabilizer state of a full Pauli group as a coset expansion, with
/// membership and phases from GF(2) arithmetic instead of orbit enumeration.
#[derive(Clone, Debug)]
pub struct PauliCosetState {
    group: PauliStabilizerGroup,
    coset: CosetSupport,
}

impl PauliCosetState {
    pub fn new(group: PauliStabilizerGroup) -> Result<Self> {
        let x = group.support_representative()?;
        let coset = group.coset_support(&x);
        Ok(PauliCosetState { group, coset })
    }

    pub fn group(&self) -> &PauliStabilizerGroup {
        &self.group
    }

    pub fn coset(&self) -> &CosetSupport {
        &self.coset
    }

    pub fn rep(&self) -> BasisVector {
        BasisVector(self.coset.x.to_values())
    }

    fn bits(&self, y: &BasisVector) -> Result<Gf2Vector> {
        if y.len() != self.group.num_qubits() || y.values().iter().any(|&v| v > 1) {
            return Err(MsfError::InvalidBasisVector(format!(
                "{y} is not a {}-qubit vector",
                self.group.num_qubits()
            )));
        }
        Ok(Gf2Vector::from_values(y.values()))
    }
}

impl MState for PauliCosetState {
    fn sample<R: Rng>(&self, rng: &mut R) -> Result<BasisVector> {
        let mut y = self.coset.x.clone();
        for b in &self.coset.basis {
            if rng.gen_bool(0.5) {
                y.xor_assign(b);
            }
        }
        Ok(BasisVector(y.to_values()))
    }

    fn xi(&self, y: &BasisVector) -> Result<Option<Phase>> {
        let y = self.bits(y)?;
        if !self.coset.contains(&y) {
            return Ok(None);
        }
        self.group.xi_fast(&self.coset.x, &y).map(Some)
    }

    fn num_sites(&self) -> usize {
        self.group.num_qubits()
    }
}

/// Uniform draw from a complete orbit, deterministic given the seed.
pub fn sample_orbit(tree: &SchreierTree, seed: u64) -> Result<BasisVector> {
    Ok(sample_orbit_many(tree, 1, seed)?.pop().expect("one draw"))
}

/// `count` independent uniform draws from one seeded stream.
pub fn sample_orbit_many(tree: &SchreierTree, count: usize, seed: u64) -> Result<Vec<BasisVector>> {
    tree.require_complete()?;
    let mut rng = rng_from_seed(seed);
    Ok((0..count)
        .map(|_| tree.member(rng.gen_range(0..tree.len())).clone())
        .collect())
}

/// Endpoint of a random walk of `word_len` uniformly chosen generator or
/// inverse letters starting at `x`. This only approximates a uniform orbit
/// sample; the quality depends on `word_len` and on the mixing time of the
/// generators.
pub fn sample_random_word(
    gens: &GeneratorSet,
    x: &BasisVector,
    word_len: usize,
    seed: u64,
) -> Result<BasisVector> {
    random_walk(gens, x, word_len, &mut rng_from_seed(seed))
}

pub fn random_walk<R: Rng>(
    gens: &GeneratorSet,
    x: &BasisVector,
    word_len: usize,
    rng: &mut R,
) -> Result<BasisVector> {
    gens.space().check(x)?;
    let mut y = x.clone();
    if gens.is_empty() {
        return Ok(y);
    }
    for _ in 0..word_len {
        let letter = Letter {
            gen: rng.gen_range(0..gens.len()),
            inverse: rng.gen_bool(0.5),
        };
        y = gens.apply_letter(letter, &y)?.0;
    }
    Ok(y)
}

/// A uniformly random word of the given length.
pub fn random_word<R: Rng>(gens: &GeneratorSet, len: usize, rng: &mut R) -> Vec<Letter> {
    let letters: Vec<Letter> = (0..gens.len())
        .flat_map(|g| [Letter::forward(g), Letter::backward(g)])
        .collect();
    (0..len)
        .filter_map(|_| letters.choose(rng).copied())
        .collect()
}
