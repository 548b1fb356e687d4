use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{MsfError, Result};
use crate::families::group_table::FiniteGroupTable;
use crate::op::gate::LocalMonomialGate;
use crate::phase::Phase;
use crate::space::{BasisVector, SiteSpace};

/// A unitary monomial operator given by its action on basis vectors,
/// `|x⟩ ↦ λ(x)|π(x)⟩`, together with the inverse action.
///
/// The diagonal part is applied first (`U = PD`), so the phase is indexed by
/// the input vector. `Product` factors are in operator order: the last factor
/// acts first.
#[derive(Clone, Debug)]
pub enum MonomialOp {
    Embedded {
        gate: Arc<LocalMonomialGate>,
        sites: Vec<usize>,
    },
    Product(Vec<MonomialOp>),
    Inverse(Box<MonomialOp>),
    Diagonal(DiagonalFn),
    Permutation(PermutationFn),
}

/// Computable diagonal phase functions.
#[derive(Clone, Debug)]
pub enum DiagonalFn {
    /// Global phase.
    Constant(Phase),
    /// `exp(2πi·(offset + slope·w(x))/den)` with `w` the number of nonzero sites.
    Hamming { den: u64, slope: i64, offset: i64 },
    /// `-1` exactly on assignments falsifying a clause of signed 1-based literals.
    Clause { literals: Vec<i32> },
    /// `-1` unless the ordered holonomy around a plaquette is the identity.
    Plaquette(Arc<PlaquetteRule>),
    /// Explicit phase per basis vector, indexed in mixed radix over `dims`.
    Table {
        dims: Vec<u32>,
        phases: Arc<Vec<Phase>>,
    },
    /// Arbitrary computable phase function; not serializable.
    Custom(CustomDiagonal),
}

/// Computable basis permutations.
#[derive(Clone, Debug)]
pub enum PermutationFn {
    /// Gauge transformation `V_v(k)` at one vertex of a lattice gauge model.
    Vertex(Arc<VertexRule>),
    /// Arbitrary computable bijection with its inverse; not serializable.
    Custom(CustomPermutation),
}

/// Plaquette constraint: edges in traversal order, with `forward[i]` true when
/// edge `i` points along the traversal. The holonomy is
/// `g_L^{s_L} ⋯ g_2^{s_2} g_1^{s_1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaquetteRule {
    pub group: Arc<FiniteGroupTable>,
    pub edges: Vec<usize>,
    pub forward: Vec<bool>,
}

impl PlaquetteRule {
    pub fn holonomy(&self, x: &[u32]) -> Result<usize> {
        let mut h = self.group.identity();
        for (&e, &fwd) in self.edges.iter().zip(&self.forward) {
            let g = *x.get(e).ok_or_else(|| {
                MsfError::MalformedOperator(format!("plaquette edge {e} out of range"))
            })? as usize;
            if g >= self.group.order() {
                return Err(MsfError::MalformedOperator(format!(
                    "edge value {g} is not an element of {}",
                    self.group.name()
                )));
            }
            h = self.group.mul(self.group.signed(g, fwd), h);
        }
        Ok(h)
    }
}

/// Vertex gauge action by group element `k`: an edge pointing toward the
/// vertex maps `g ↦ k·g`, an edge pointing away maps `g ↦ g·k⁻¹`.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexRule {
    pub group: Arc<FiniteGroupTable>,
    pub edges: Vec<usize>,
    pub toward: Vec<bool>,
    pub k: usize,
}

impl VertexRule {
    fn act(&self, x: &BasisVector, k: usize) -> Result<BasisVector> {
        let mut out = x.clone();
        let kinv = self.group.inv(k);
        for (&e, &toward) in self.edges.iter().zip(&self.toward) {
            let slot = out.0.get_mut(e).ok_or_else(|| {
                MsfError::MalformedOperator(format!("vertex edge {e} out of range"))
            })?;
            let g = *slot as usize;
            if g >= self.group.order() {
                return Err(MsfError::MalformedOperator(format!(
                    "edge value {g} is not an element of {}",
                    self.group.name()
                )));
            }
            *slot = if toward {
                self.group.mul(k, g)
            } else {
                self.group.mul(g, kinv)
            } as u32;
        }
        Ok(out)
    }
}

type PhaseFnBox = Arc<dyn Fn(&BasisVector) -> Result<Phase> + Send + Sync>;
type PermFnBox = Arc<dyn Fn(&BasisVector) -> BasisVector + Send + Sync>;

#[derive(Clone)]
pub struct CustomDiagonal {
    pub description: String,
    f: PhaseFnBox,
}

impl CustomDiagonal {
    pub fn new(
        description: impl Into<String>,
        f: impl Fn(&BasisVector) -> Result<Phase> + Send + Sync + 'static,
    ) -> Self {
        CustomDiagonal {
            description: description.into(),
            f: Arc::new(f),
        }
    }
}

impl fmt::Debug for CustomDiagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CustomDiagonal({})", self.description)
    }
}

#[derive(Clone)]
pub struct CustomPermutation {
    pub description: String,
    forward: PermFnBox,
    backward: PermFnBox,
}

impl CustomPermutation {
    /// `forward` and `backward` must be mutually inverse bijections.
    pub fn new(
        description: impl Into<String>,
        forward: impl Fn(&BasisVector) -> BasisVector + Send + Sync + 'static,
        backward: impl Fn(&BasisVector) -> BasisVector + Send + Sync + 'static,
    ) -> Self {
        CustomPermutation {
            description: description.into(),
            forward: Arc::new(forward),
            backward: Arc::new(backward),
        }
    }
}

impl fmt::Debug for CustomPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CustomPermutation({})", self.description)
    }
}

/// Whether an operator is structurally a pure permutation, a pure diagonal,
/// or neither.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Purity {
    Identity,
    Diagonal,
    Permutation,
    Mixed,
}

impl Purity {
    fn combine(self, other: Purity) -> Purity {
        use Purity::*;
        match (self, other) {
            (Identity, p) | (p, Identity) => p,
            (a, b) if a == b => a,
            _ => Mixed,
        }
    }
}

impl DiagonalFn {
    pub fn phase(&self, x: &BasisVector) -> Result<Phase> {
        match self {
            DiagonalFn::Constant(p) => Ok(*p),
            DiagonalFn::Hamming { den, slope, offset } => {
                let w = x.weight() as i64;
                Phase::root_of_unity(offset + slope * w, *den)
            }
            DiagonalFn::Clause { literals } => {
                let mut satisfied = false;
                for &lit in literals {
                    let var = lit.unsigned_abs() as usize - 1;
                    let v = *x.0.get(var).ok_or_else(|| {
                        MsfError::MalformedOperator(format!("literal {lit} out of range"))
                    })?;
                    if v > 1 {
                        return Err(MsfError::MalformedOperator(format!(
                            "clause variable {var} is not a qubit value"
                        )));
                    }
                    satisfied |= (lit > 0) == (v == 1);
                }
                Ok(Phase::sign(!satisfied))
            }
            DiagonalFn::Plaquette(rule) => {
                let h = rule.holonomy(&x.0)?;
                Ok(Phase::sign(h != rule.group.identity()))
            }
            DiagonalFn::Table { dims, phases } => {
                if x.len() != dims.len() || x.0.iter().zip(dims).any(|(&v, &d)| v >= d) {
                    return Err(MsfError::MalformedOperator(format!(
                        "{x} outside phase table dims {dims:?}"
                    )));
                }
                Ok(phases[crate::op::gate::flatten(dims, &x.0)])
            }
            DiagonalFn::Custom(c) => (c.f)(x),
        }
    }
}

impl PermutationFn {
    pub fn forward(&self, x: &BasisVector) -> Result<BasisVector> {
        match self {
            PermutationFn::Vertex(rule) => rule.act(x, rule.k),
            PermutationFn::Custom(c) => Ok((c.forward)(x)),
        }
    }

    pub fn backward(&self, x: &BasisVector) -> Result<BasisVector> {
        match self {
            PermutationFn::Vertex(rule) => rule.act(x, rule.group.inv(rule.k)),
            PermutationFn::Custom(c) => Ok((c.backward)(x)),
        }
    }
}

impl MonomialOp {
    /// Embed a local gate on distinct sites.
    pub fn embed(gate: LocalMonomialGate, sites: Vec<usize>) -> Result<MonomialOp> {
        if gate.arity() != sites.len() {
            return Err(MsfError::MalformedOperator(format!(
                "gate of arity {} placed on {} sites",
                gate.arity(),
                sites.len()
            )));
        }
        let distinct: HashSet<_> = sites.iter().collect();
        if distinct.len() != sites.len() {
            return Err(MsfError::MalformedOperator(format!(
                "sites {sites:?} are not distinct"
            )));
        }
        Ok(MonomialOp::Embedded {
            gate: Arc::new(gate),
            sites,
        })
    }

    pub fn diagonal(f: DiagonalFn) -> MonomialOp {
        MonomialOp::Diagonal(f)
    }

    pub fn constant(p: Phase) -> MonomialOp {
        MonomialOp::Diagonal(DiagonalFn::Constant(p))
    }

    pub fn identity() -> MonomialOp {
        MonomialOp::Product(Vec::new())
    }

    pub fn inverse(self) -> MonomialOp {
        match self {
            MonomialOp::Inverse(inner) => *inner,
            op => MonomialOp::Inverse(Box::new(op)),
        }
    }

    /// `|x⟩ ↦ (π(x), λ(x))`.
    pub fn apply(&self, x: &BasisVector) -> Result<(BasisVector, Phase)> {
        match self {
            MonomialOp::Embedded { gate, sites } => {
                embedded_action(gate, sites, x, |g, l| g.forward(l))
            }
            MonomialOp::Product(factors) => {
                let mut y = x.clone();
                let mut phase = Phase::ONE;
                for f in factors.iter().rev() {
                    let (z, p) = f.apply(&y)?;
                    y = z;
                    phase = phase * p;
                }
                Ok((y, phase))
            }
            MonomialOp::Inverse(inner) => inner.apply_inverse(x),
            MonomialOp::Diagonal(f) => Ok((x.clone(), f.phase(x)?)),
            MonomialOp::Permutation(p) => Ok((p.forward(x)?, Phase::ONE)),
        }
    }

    /// Action of the adjoint: if `apply(x) = (y, λ)` then
    /// `apply_inverse(y) = (x, conj(λ))`.
    pub fn apply_inverse(&self, y: &BasisVector) -> Result<(BasisVector, Phase)> {
        match self {
            MonomialOp::Embedded { gate, sites } => {
                embedded_action(gate, sites, y, |g, l| g.backward(l))
            }
            MonomialOp::Product(factors) => {
                let mut x = y.clone();
                let mut phase = Phase::ONE;
                for f in factors {
                    let (z, p) = f.apply_inverse(&x)?;
                    x = z;
                    phase = phase * p;
                }
                Ok((x, phase))
            }
            MonomialOp::Inverse(inner) => inner.apply(y),
            MonomialOp::Diagonal(f) => Ok((y.clone(), f.phase(y)?.conj())),
            MonomialOp::Permutation(p) => Ok((p.backward(y)?, Phase::ONE)),
        }
    }

    /// Check that the operator is well formed on `space`. Custom functions
    /// cannot be inspected and are accepted as-is.
    pub fn validate(&self, space: &SiteSpace) -> Result<()> {
        let n = space.num_sites();
        let dims = space.dims();
        match self {
            MonomialOp::Embedded { gate, sites } => {
                for (&s, &d) in sites.iter().zip(gate.dims()) {
                    if s >= n {
                        return Err(MsfError::MalformedOperator(format!(
                            "site {s} out of range for {n} sites"
                        )));
                    }
                    if dims[s] != d {
                        return Err(MsfError::SpaceMismatch(format!(
                            "gate expects dimension {d} at site {s}, space has {}",
                            dims[s]
                        )));
                    }
                }
                Ok(())
            }
            MonomialOp::Product(fs) => fs.iter().try_for_each(|f| f.validate(space)),
            MonomialOp::Inverse(inner) => inner.validate(space),
            MonomialOp::Diagonal(f) => match f {
                DiagonalFn::Constant(_) | DiagonalFn::Custom(_) => Ok(()),
                DiagonalFn::Hamming { den, .. } => {
                    if *den == 0 {
                        Err(MsfError::MalformedOperator("zero denominator".into()))
                    } else {
                        Ok(())
                    }
                }
                DiagonalFn::Clause { literals } => {
                    if literals.is_empty() {
                        return Err(MsfError::MalformedOperator("empty clause".into()));
                    }
                    for &l in literals {
                        let v = l.unsigned_abs() as usize;
                        if l == 0 || v > n || dims[v - 1] != 2 {
                            return Err(MsfError::MalformedOperator(format!(
                                "literal {l} does not name a qubit of the space"
                            )));
                        }
                    }
                    Ok(())
                }
                DiagonalFn::Plaquette(rule) => {
                    check_gauge_edges(&rule.group, &rule.edges, rule.forward.len(), space)
                }
                DiagonalFn::Table { dims: td, phases } => {
                    if td.as_slice() != dims {
                        return Err(MsfError::SpaceMismatch(format!(
                            "phase table dims {td:?} differ from space {dims:?}"
                        )));
                    }
                    let size: usize = td.iter().map(|&d| d as usize).product();
                    if phases.len() != size {
                        return Err(MsfError::MalformedOperator(format!(
                            "phase table has {} entries, expected {size}",
                            phases.len()
                        )));
                    }
                    Ok(())
                }
            },
            MonomialOp::Permutation(p) => match p {
                PermutationFn::Vertex(rule) => {
                    if rule.k >= rule.group.order() {
                        return Err(MsfError::MalformedOperator(format!(
                            "vertex element {} not in {}",
                            rule.k,
                            rule.group.name()
                        )));
                    }
                    check_gauge_edges(&rule.group, &rule.edges, rule.toward.len(), space)
                }
                PermutationFn::Custom(_) => Ok(()),
            },
        }
    }

    pub fn purity(&self) -> Purity {
        match self {
            MonomialOp::Embedded { gate, .. } => {
                match (gate.is_diagonal(), gate.is_permutation()) {
                    (true, true) => Purity::Identity,
                    (true, false) => Purity::Diagonal,
                    (false, true) => Purity::Permutation,
                    (false, false) => Purity::Mixed,
                }
            }
            MonomialOp::Product(fs) => fs
                .iter()
                .fold(Purity::Identity, |acc, f| acc.combine(f.purity())),
            MonomialOp::Inverse(inner) => inner.purity(),
            MonomialOp::Diagonal(DiagonalFn::Constant(p)) if p.is_one() => Purity::Identity,
            MonomialOp::Diagonal(_) => Purity::Diagonal,
            MonomialOp::Permutation(_) => Purity::Permutation,
        }
    }

    /// Short human-readable description.
    pub fn describe(&self) -> String {
        match self {
            MonomialOp::Embedded { gate, sites } => {
                format!("gate{:?} on sites {sites:?}", gate.dims())
            }
            MonomialOp::Product(fs) => {
                let parts: Vec<String> = fs.iter().map(|f| f.describe()).collect();
                format!("({})", parts.join(" · "))
            }
            MonomialOp::Inverse(inner) => format!("{}⁻¹", inner.describe()),
            MonomialOp::Diagonal(f) => match f {
                DiagonalFn::Constant(p) => format!("const {p}"),
                DiagonalFn::Hamming { den, slope, offset } => {
                    format!("hamming phase ({offset} + {slope}·w)/{den}")
                }
                DiagonalFn::Clause { literals } => format!("clause {literals:?}"),
                DiagonalFn::Plaquette(r) => format!("plaquette {:?}", r.edges),
                DiagonalFn::Table { .. } => "phase table".into(),
                DiagonalFn::Custom(c) => c.description.clone(),
            },
            MonomialOp::Permutation(p) => match p {
                PermutationFn::Vertex(r) => format!("vertex {:?} by {}", r.edges, r.k),
                PermutationFn::Custom(c) => c.description.clone(),
            },
        }
    }
}

fn check_gauge_edges(
    group: &FiniteGroupTable,
    edges: &[usize],
    flags: usize,
    space: &SiteSpace,
) -> Result<()> {
    if flags != edges.len() {
        return Err(MsfError::MalformedOperator(
            "edge list and orientation flags differ in length".into(),
        ));
    }
    for &e in edges {
        match space.dims().get(e) {
            Some(&d) if d as usize == group.order() => {}
            Some(&d) => {
                return Err(MsfError::SpaceMismatch(format!(
                    "edge {e} has dimension {d}, group {} has order {}",
                    group.name(),
                    group.order()
                )))
            }
            None => {
                return Err(MsfError::MalformedOperator(format!(
                    "edge {e} out of range"
                )))
            }
        }
    }
    Ok(())
}

fn embedded_action(
    gate: &LocalMonomialGate,
    sites: &[usize],
    x: &BasisVector,
    step: impl Fn(&LocalMonomialGate, usize) -> (usize, Phase),
) -> Result<(BasisVector, Phase)> {
    let mut local = 0usize;
    for (&s, &d) in sites.iter().zip(gate.dims()) {
        let v = *x.0.get(s).ok_or_else(|| {
            MsfError::MalformedOperator(format!("site {s} out of range for {}", x))
        })?;
        if v >= d {
            return Err(MsfError::MalformedOperator(format!(
                "value {v} at site {s} exceeds gate dimension {d}"
            )));
        }
        local = local * d as usize + v as usize;
    }
    let (mut image, phase) = step(gate, local);
    let mut out = x.clone();
    for (&s, &d) in sites.iter().zip(gate.dims()).rev() {
        out.0[s] = (image % d as usize) as u32;
        image /= d as usize;
    }
    Ok((out, phase))
}

/// Compose operators in operator order (`ops[0]` acts last), checking each
/// against the shared space.
pub fn compose(space: &SiteSpace, ops: Vec<MonomialOp>) -> Result<MonomialOp> {
    for op in &ops {
        op.validate(space)?;
    }
    Ok(MonomialOp::Product(ops))
}

/// The inverse operator; satisfies the `apply_inverse` contract.
pub fn invert(op: MonomialOp) -> MonomialOp {
    op.inverse()
}
