use serde::Serialize;

use crate::error::{MsfError, Result};
use crate::group::tree::SchreierTree;
use crate::op::generators::{invert_word, GeneratorSet, Letter, Word};
use crate::phase::{Phase, Unity};

/// One Schreier generator `t_{g·y}⁻¹ · g · t_y` of the point stabilizer of the
/// root, together with its phase on the root.
#[derive(Clone, Debug)]
pub struct SchreierGenerator {
    pub member: usize,
    pub gen: usize,
    pub image: usize,
    pub phase: Phase,
}

impl SchreierGenerator {
    /// The word in operator order.
    pub fn word(&self, tree: &SchreierTree) -> Word {
        let mut w = invert_word(&tree.word_at(self.image));
        w.push(Letter::forward(self.gen));
        w.extend(tree.word_at(self.member));
        w
    }
}

/// Stream of Schreier generators over all members and all generators (forward
/// letters suffice to generate the stabilizer). Tree edges, whose words reduce
/// to the identity, are skipped.
pub struct SchreierGenerators<'a> {
    tree: &'a SchreierTree,
    gens: &'a GeneratorSet,
    member: usize,
    gen: usize,
}

pub fn schreier_generators<'a>(
    tree: &'a SchreierTree,
    gens: &'a GeneratorSet,
) -> Result<SchreierGenerators<'a>> {
    tree.require_complete()?;
    Ok(SchreierGenerators {
        tree,
        gens,
        member: 0,
        gen: 0,
    })
}

impl Iterator for SchreierGenerators<'_> {
    type Item = Result<SchreierGenerator>;

    fn next(&mut self) -> Option<Self::Item> {
        while self.member < self.tree.len() {
            if self.gen == self.gens.len() {
                self.member += 1;
                self.gen = 0;
                continue;
            }
            let (member, gen) = (self.member, self.gen);
            self.gen += 1;
            let y = self.tree.member(member);
            let (z, lambda) = match self.gens.op(gen).apply(y) {
                Ok(r) => r,
                Err(e) => return Some(Err(e)),
            };
            let Some(image) = self.tree.index_of(&z) else {
                return Some(Err(MsfError::Inconsistency(format!(
                    "generator {} maps orbit member {y} outside the orbit",
                    self.gens.name(gen)
                ))));
            };
            if self.tree.parent_at(image) == Some((member, Letter::forward(gen))) {
                continue;
            }
            let phase = self.tree.phase_at(member) * lambda * self.tree.phase_at(image).conj();
            return Some(Ok(SchreierGenerator {
                member,
                gen,
                image,
                phase,
            }));
        }
        None
    }
}

/// A word whose permutation part fixes the root but whose phase on the root
/// is not 1, proving the root lies outside the support.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    #[serde(skip)]
    pub word: Word,
    #[serde(rename = "word")]
    pub names: Vec<String>,
    pub phase: Phase,
}

#[derive(Clone, Debug, Serialize)]
pub struct SupportVerdict {
    pub in_support: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// Decide whether the root of a complete tree lies in the support of the
/// joint +1 eigenspace: every stabilizer element must act on the root with
/// phase exactly 1.
pub fn support_test(tree: &SchreierTree, gens: &GeneratorSet) -> Result<SupportVerdict> {
    for sg in schreier_generators(tree, gens)? {
        let sg = sg?;
        if sg.phase.unity()? == Unity::NotOne {
            let word = sg.word(tree);
            return Ok(SupportVerdict {
                in_support: false,
                witness: Some(Witness {
                    names: gens.word_names(&word),
                    word,
                    phase: sg.phase,
                }),
            });
        }
    }
    Ok(SupportVerdict {
        in_support: true,
        witness: None,
    })
}
