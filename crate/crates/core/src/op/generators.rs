use std::collections::HashMap;
use std::fmt;

use crate::error::{MsfError, Result};
use crate::op::monomial::{MonomialOp, Purity};
use crate::phase::Phase;
use crate::space::{BasisVector, SiteSpace};

/// One letter of a group word: a generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn forward(gen: usize) -> Letter {
        Letter {
            gen,
            inverse: false,
        }
    }

    pub fn backward(gen: usize) -> Letter {
        Letter { gen, inverse: true }
    }

    pub fn inverted(self) -> Letter {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }
}

/// A word in the generators, in operator order: the last letter acts first.
pub type Word = Vec<Letter>;

/// Inverse of a word.
pub fn invert_word(word: &[Letter]) -> Word {
    word.iter().rev().map(|l| l.inverted()).collect()
}

/// Named generators `{U_1, …, U_m}` acting on one site space.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    space: SiteSpace,
    names: Vec<String>,
    ops: Vec<MonomialOp>,
    by_name: HashMap<String, usize>,
}

impl GeneratorSet {
    pub fn new(space: SiteSpace) -> Self {
        GeneratorSet {
            space,
            names: Vec::new(),
            ops: Vec::new(),
            by_name: HashMap::new(),
        }
    }

    /// Append a generator; names must be unique and the operator must be
    /// well formed on the space.
    pub fn push(&mut self, name: impl Into<String>, op: MonomialOp) -> Result<usize> {
        let name = name.into();
        if self.by_name.contains_key(&name) {
            return Err(MsfError::InvalidArgument(format!(
                "duplicate generator name {name:?}"
            )));
        }
        op.validate(&self.space)?;
        let idx = self.ops.len();
        self.by_name.insert(name.clone(), idx);
        self.names.push(name);
        self.ops.push(op);
        Ok(idx)
    }

    pub fn with(mut self, name: impl Into<String>, op: MonomialOp) -> Result<Self> {
        self.push(name, op)?;
        Ok(self)
    }

    pub fn space(&self) -> &SiteSpace {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn ops(&self) -> &[MonomialOp] {
        &self.ops
    }

    pub fn op(&self, i: usize) -> &MonomialOp {
        &self.ops[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &MonomialOp)> {
        self.names.iter().map(String::as_str).zip(&self.ops)
    }

    /// Apply a single letter.
    pub fn apply_letter(&self, letter: Letter, x: &BasisVector) -> Result<(BasisVector, Phase)> {
        let op = self.ops.get(letter.gen).ok_or_else(|| {
            MsfError::InvalidArgument(format!("generator index {} out of range", letter.gen))
        })?;
        if letter.inverse {
            op.apply_inverse(x)
        } else {
            op.apply(x)
        }
    }

    /// Evaluate a word on `x` without building a product operator.
    pub fn word_apply(&self, word: &[Letter], x: &BasisVector) -> Result<(BasisVector, Phase)> {
        let mut y = x.clone();
        let mut phase = Phase::ONE;
        for &l in word.iter().rev() {
            let (z, p) = self.apply_letter(l, &y)?;
            y = z;
            phase = phase * p;
        }
        Ok((y, phase))
    }

    /// Product operator for a word.
    pub fn word_op(&self, word: &[Letter]) -> MonomialOp {
        MonomialOp::Product(
            word.iter()
                .map(|l| {
                    let op = self.ops[l.gen].clone();
                    if l.inverse {
                        op.inverse()
                    } else {
                        op
                    }
                })
                .collect(),
        )
    }

    /// Generator names for a word, e.g. `["S1", "T^-1"]`.
    pub fn word_names(&self, word: &[Letter]) -> Vec<String> {
        word.iter()
            .map(|l| {
                if l.inverse {
                    format!("{}^-1", self.names[l.gen])
                } else {
                    self.names[l.gen].clone()
                }
            })
            .collect()
    }

    /// True when every generator is structurally a permutation or a diagonal,
    /// so the group is pure and all orbit-state phases are 1.
    pub fn is_pure(&self) -> bool {
        self.ops.iter().all(|op| op.purity() != Purity::Mixed)
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "space dims {:?}", self.space.dims())?;
        for (name, op) in self.iter() {
            writeln!(f, "  {name}: {}", op.describe())?;
        }
        Ok(())
    }
}
