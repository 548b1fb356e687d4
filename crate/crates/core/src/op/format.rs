//! Operator-spec files: a JSON document holding a site space and a named list
//! of generators.
//!
//! ```json
//! {"space": {"dims": [2, 2]},
//!  "generators": [{"name": "S1", "kind": "embedded",
//!                  "gate": {"dims": [2, 2], "perm": [0, 2, 1, 3], "phases": [...]},
//!                  "sites": [0, 1]}]}
//! ```
//!
//! Canonical output has sorted keys and reduced phase fractions, so equal
//! generator sets serialize to identical bytes.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{MsfError, Result};
use crate::families::group_table::FiniteGroupTable;
use crate::op::gate::LocalMonomialGate;
use crate::op::generators::GeneratorSet;
use crate::op::monomial::{DiagonalFn, MonomialOp, PermutationFn, PlaquetteRule, VertexRule};
use crate::phase::Phase;
use crate::space::SiteSpace;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpecFile {
    pub space: SiteSpace,
    pub generators: Vec<GeneratorEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorEntry {
    pub name: String,
    #[serde(flatten)]
    pub op: OpSpec,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OpSpec {
    Embedded {
        gate: LocalMonomialGate,
        sites: Vec<usize>,
    },
    Product {
        factors: Vec<OpSpec>,
    },
    Inverse {
        inner: Box<OpSpec>,
    },
    Diagonal {
        function: DiagonalSpec,
    },
    Permutation {
        function: PermutationSpec,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum DiagonalSpec {
    Constant {
        phase: Phase,
    },
    Hamming {
        den: u64,
        slope: i64,
        offset: i64,
    },
    Clause {
        literals: Vec<i32>,
    },
    Plaquette {
        group: FiniteGroupTable,
        edges: Vec<usize>,
        forward: Vec<bool>,
    },
    Table {
        dims: Vec<u32>,
        phases: Vec<Phase>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum PermutationSpec {
    Vertex {
        group: FiniteGroupTable,
        edges: Vec<usize>,
        toward: Vec<bool>,
        k: usize,
    },
}

impl OpSpec {
    pub fn from_op(op: &MonomialOp) -> Result<OpSpec> {
        Ok(match op {
            MonomialOp::Embedded { gate, sites } => OpSpec::Embedded {
                gate: (**gate).clone(),
                sites: sites.clone(),
            },
            MonomialOp::Product(fs) => OpSpec::Product {
                factors: fs.iter().map(OpSpec::from_op).collect::<Result<_>>()?,
            },
            MonomialOp::Inverse(inner) => OpSpec::Inverse {
                inner: Box::new(OpSpec::from_op(inner)?),
            },
            MonomialOp::Diagonal(f) => OpSpec::Diagonal {
                function: match f {
                    DiagonalFn::Constant(p) => DiagonalSpec::Constant { phase: *p },
                    DiagonalFn::Hamming { den, slope, offset } => DiagonalSpec::Hamming {
                        den: *den,
                        slope: *slope,
                        offset: *offset,
                    },
                    DiagonalFn::Clause { literals } => DiagonalSpec::Clause {
                        literals: literals.clone(),
                    },
                    DiagonalFn::Plaquette(r) => DiagonalSpec::Plaquette {
                        group: (*r.group).clone(),
                        edges: r.edges.clone(),
                        forward: r.forward.clone(),
                    },
                    DiagonalFn::Table { dims, phases } => DiagonalSpec::Table {
                        dims: dims.clone(),
                        phases: (**phases).clone(),
                    },
                    DiagonalFn::Custom(c) => {
                        return Err(MsfError::Unsupported(format!(
                            "custom phase function {:?} cannot be serialized",
                            c.description
                        )))
                    }
                },
            },
            MonomialOp::Permutation(p) => OpSpec::Permutation {
                function: match p {
                    PermutationFn::Vertex(r) => PermutationSpec::Vertex {
                        group: (*r.group).clone(),
                        edges: r.edges.clone(),
                        toward: r.toward.clone(),
                        k: r.k,
                    },
                    PermutationFn::Custom(c) => {
                        return Err(MsfError::Unsupported(format!(
                            "custom permutation {:?} cannot be serialized",
                            c.description
                        )))
                    }
                },
            },
        })
    }

    pub fn to_op(&self) -> Result<MonomialOp> {
        Ok(match self {
            OpSpec::Embedded { gate, sites } => MonomialOp::embed(gate.clone(), sites.clone())?,
            OpSpec::Product { factors } => {
                MonomialOp::Product(factors.iter().map(OpSpec::to_op).collect::<Result<_>>()?)
            }
            OpSpec::Inverse { inner } => MonomialOp::Inverse(Box::new(inner.to_op()?)),
            OpSpec::Diagonal { function } => MonomialOp::Diagonal(match function {
                DiagonalSpec::Constant { phase } => DiagonalFn::Constant(*phase),
                DiagonalSpec::Hamming { den, slope, offset } => DiagonalFn::Hamming {
                    den: *den,
                    slope: *slope,
                    offset: *offset,
                },
                DiagonalSpec::Clause { literals } => DiagonalFn::Clause {
                    literals: literals.clone(),
                },
                DiagonalSpec::Plaquette {
                    group,
                    edges,
                    forward,
                } => DiagonalFn::Plaquette(Arc::new(PlaquetteRule {
                    group: Arc::new(group.clone()),
                    edges: edges.clone(),
                    forward: forward.clone(),
                })),
                DiagonalSpec::Table { dims, phases } => DiagonalFn::Table {
                    dims: dims.clone(),
                    phases: Arc::new(phases.clone()),
                },
            }),
            OpSpec::Permutation { function } => MonomialOp::Permutation(match function {
                PermutationSpec::Vertex {
                    group,
                    edges,
                    toward,
                    k,
                } => PermutationFn::Vertex(Arc::new(VertexRule {
                    group: Arc::new(group.clone()),
                    edges: edges.clone(),
                    toward: toward.clone(),
                    k: *k,
                })),
            }),
        })
    }
}

impl SpecFile {
    pub fn from_generators(gens: &GeneratorSet) -> Result<SpecFile> {
        let generators = gens
            .iter()
            .map(|(name, op)| {
                Ok(GeneratorEntry {
                    name: name.to_string(),
                    op: OpSpec::from_op(op)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(SpecFile {
            space: gens.space().clone(),
            generators,
        })
    }

    pub fn to_generators(&self) -> Result<GeneratorSet> {
        let mut gens = GeneratorSet::new(self.space.clone());
        for entry in &self.generators {
            gens.push(entry.name.clone(), entry.op.to_op()?)?;
        }
        Ok(gens)
    }
}

/// Canonical JSON text for any serializable value: keys sorted, no whitespace.
pub fn canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value)?;
    Ok(serde_json::to_string(&v)?)
}

/// Same as [`canonical_json`] but indented for humans; key order is kept.
pub fn canonical_json_pretty<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value)?;
    Ok(serde_json::to_string_pretty(&v)?)
}

pub fn write_spec(gens: &GeneratorSet) -> Result<String> {
    canonical_json(&SpecFile::from_generators(gens)?)
}

pub fn read_spec(text: &str) -> Result<GeneratorSet> {
    let spec: SpecFile = serde_json::from_str(text)?;
    spec.to_generators()
}
