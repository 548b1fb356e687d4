use indexmap::IndexMap;

use crate::error::{MsfError, Result};
use crate::op::generators::{GeneratorSet, Letter, Word};
use crate::phase::Phase;
use crate::space::BasisVector;

/// Default maximum number of orbit elements explored before giving up.
pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;

#[derive(Clone, Debug)]
struct Node {
    /// Index of the parent member and the letter taking parent to this node.
    parent: Option<(usize, Letter)>,
    /// Phase of the transversal word on the root: `t_y|root⟩ = phase·|y⟩`.
    phase: Phase,
}

/// Breadth-first Schreier tree of an orbit under the permutation parts of the
/// generators.
///
/// Members are kept in discovery order: BFS layer, then parent order, then
/// generator index with the forward letter before the inverse one.
#[derive(Clone, Debug)]
pub struct SchreierTree {
    nodes: IndexMap<BasisVector, Node>,
    truncated: bool,
    cap: usize,
}

/// Explore the orbit of `x`, stopping once `cap` members have been found and
/// another new one turns up.
pub fn orbit_bfs(gens: &GeneratorSet, x: &BasisVector, cap: usize) -> Result<SchreierTree> {
    gens.space().check(x)?;
    if cap == 0 {
        return Err(MsfError::InvalidArgument(
            "orbit cap must be positive".into(),
        ));
    }
    let mut nodes = IndexMap::new();
    nodes.insert(
        x.clone(),
        Node {
            parent: None,
            phase: Phase::ONE,
        },
    );
    let mut truncated = false;
    let mut head = 0;
    'bfs: while head < nodes.len() {
        let (y, node) = nodes.get_index(head).expect("head in range");
        let (y, base) = (y.clone(), node.phase);
        for gen in 0..gens.len() {
            for letter in [Letter::forward(gen), Letter::backward(gen)] {
                let (z, p) = gens.apply_letter(letter, &y)?;
                if nodes.contains_key(&z) {
                    continue;
                }
                if nodes.len() >= cap {
                    truncated = true;
                    break 'bfs;
                }
                nodes.insert(
                    z,
                    Node {
                        parent: Some((head, letter)),
                        phase: base * p,
                    },
                );
            }
        }
        head += 1;
    }
    Ok(SchreierTree {
        nodes,
        truncated,
        cap,
    })
}

impl SchreierTree {
    pub fn root(&self) -> &BasisVector {
        self.nodes.get_index(0).expect("root present").0
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Error unless the orbit was fully explored.
    pub fn require_complete(&self) -> Result<()> {
        if self.truncated {
            Err(MsfError::Truncated {
                root: self.root().to_string(),
                explored: self.len(),
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }

    pub fn members(&self) -> impl ExactSizeIterator<Item = &BasisVector> + '_ {
        self.nodes.keys()
    }

    pub fn member(&self, i: usize) -> &BasisVector {
        self.nodes.get_index(i).expect("member index in range").0
    }

    pub fn contains(&self, y: &BasisVector) -> bool {
        self.nodes.contains_key(y)
    }

    pub fn index_of(&self, y: &BasisVector) -> Option<usize> {
        self.nodes.get_index_of(y)
    }

    /// Smallest member in lexicographic order.
    pub fn min_member(&self) -> &BasisVector {
        self.nodes.keys().min().expect("root present")
    }

    /// Phase of the transversal word on the root, i.e. one element of the set
    /// of phases `ξ` with `U|root⟩ = ξ|y⟩`. For supported roots this is the
    /// orbit-state phase of `y`.
    pub fn transversal_phase(&self, y: &BasisVector) -> Result<Phase> {
        self.nodes
            .get(y)
            .map(|n| n.phase)
            .ok_or_else(|| MsfError::NotInOrbit(y.to_string()))
    }

    pub(crate) fn phase_at(&self, i: usize) -> Phase {
        self.nodes[i].phase
    }

    pub(crate) fn parent_at(&self, i: usize) -> Option<(usize, Letter)> {
        self.nodes[i].parent
    }

    /// Word `t_y` (operator order) taking the root to `y`.
    pub fn transversal_word(&self, y: &BasisVector) -> Result<Word> {
        let i = self
            .index_of(y)
            .ok_or_else(|| MsfError::NotInOrbit(y.to_string()))?;
        Ok(self.word_at(i))
    }

    pub(crate) fn word_at(&self, mut i: usize) -> Word {
        let mut word = Vec::new();
        while let Some((p, letter)) = self.nodes[i].parent {
            word.push(letter);
            i = p;
        }
        word
    }

    /// Recompute the transversal phase by walking the tree path, without the
    /// cached value.
    pub fn path_phase(&self, gens: &GeneratorSet, y: &BasisVector) -> Result<Phase> {
        let word = self.transversal_word(y)?;
        let (z, phase) = gens.word_apply(&word, self.root())?;
        if &z != y {
            return Err(MsfError::Inconsistency(format!(
                "transversal word for {y} lands on {z}"
            )));
        }
        Ok(phase)
    }
}

/// Free-function form of [`SchreierTree::transversal_phase`].
pub fn transversal_phase(tree: &SchreierTree, y: &BasisVector) -> Result<Phase> {
    tree.transversal_phase(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::op::{LocalMonomialGate, MonomialOp};
    use crate::space::SiteSpace;

    fn swap_chain(n: usize) -> GeneratorSet {
        let mut g = GeneratorSet::new(SiteSpace::qubits(n).unwrap());
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
    fn weight_one_orbit_in_bfs_order() {
        let g = swap_chain(4);
        let t = orbit_bfs(&g, &"1000".parse().unwrap(), 100).unwrap();
        let m: Vec<String> = t.members().map(|x| x.to_string()).collect();
        assert_eq!(m, ["1000", "0100", "0010", "0001"]);
        assert!(!t.is_truncated());
        assert_eq!(
            t.transversal_word(&"0001".parse().unwrap()).unwrap().len(),
            3
        );
    }

    #[test]
    fn cap_truncates() {
        let g = swap_chain(4);
        let t = orbit_bfs(&g, &"1100".parse().unwrap(), 3).unwrap();
        assert!(t.is_truncated());
        assert_eq!(t.len(), 3);
        assert!(matches!(
            t.require_complete(),
            Err(MsfError::Truncated { .. })
        ));
    }

    #[test]
    fn path_phase_matches_cache() {
        let mut g = GeneratorSet::new(SiteSpace::uniform(3, 3).unwrap());
        g.push(
            "U12",
            MonomialOp::embed(LocalMonomialGate::aklt(), vec![0, 1]).unwrap(),
        )
        .unwrap();
        g.push(
            "U23",
            MonomialOp::embed(LocalMonomialGate::aklt(), vec![1, 2]).unwrap(),
        )
        .unwrap();
        let t = orbit_bfs(&g, &"012".parse().unwrap(), 1000).unwrap();
        for y in t.members() {
            assert_eq!(
                t.path_phase(&g, y).unwrap(),
                t.transversal_phase(y).unwrap()
            );
        }
    }
}
