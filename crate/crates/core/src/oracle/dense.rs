use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, VecDeque};
use std::hash::{Hash, Hasher};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{MsfError, Result};
use crate::op::generators::GeneratorSet;
use crate::op::monomial::MonomialOp;
use crate::space::SiteSpace;

/// Default largest dimension the oracle will materialize.
pub const DEFAULT_DENSE_CAP: usize = 4096;
/// Default largest group the oracle will enumerate.
pub const DEFAULT_ELEMENT_CAP: usize = 100_000;
/// Entry tolerance for group-element deduplication.
pub const DEDUP_TOLERANCE: f64 = 1e-10;
/// Grid used to bucket elements before the tolerance comparison. Coarser than
/// the tolerance so rounding noise cannot split equal matrices across buckets.
const BUCKET_GRID: f64 = 1e-6;
/// Tolerance for the projector identities.
pub const PROJECTOR_TOLERANCE: f64 = 1e-9;

/// An explicit matrix with one nonzero entry per column, stored column-wise:
/// column `j` holds `values[j]` in row `rows[j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    rows: Vec<usize>,
    values: Vec<Complex64>,
}

impl DenseOperator {
    pub fn identity(dim: usize) -> Self {
        DenseOperator {
            rows: (0..dim).collect(),
            values: vec![Complex64::new(1.0, 0.0); dim],
        }
    }

    /// Build from column data, checking that every row is hit exactly once
    /// and every entry has unit modulus.
    pub fn from_columns(rows: Vec<usize>, values: Vec<Complex64>) -> Result<Self> {
        let dim = rows.len();
        if values.len() != dim {
            return Err(MsfError::InvalidArgument(
                "rows and values differ in length".into(),
            ));
        }
        let mut hit = vec![false; dim];
        for &r in &rows {
            if r >= dim || std::mem::replace(&mut hit[r], true) {
                return Err(MsfError::Inconsistency(format!(
                    "operator is not monomial: row {r} repeated or out of range"
                )));
            }
        }
        if let Some(v) = values
            .iter()
            .find(|v| (v.norm() - 1.0).abs() > PROJECTOR_TOLERANCE)
        {
            return Err(MsfError::Inconsistency(format!(
                "entry {v} is not unit modulus"
            )));
        }
        Ok(DenseOperator { rows, values })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// `(row, value)` of the nonzero entry in column `j`.
    pub fn column(&self, j: usize) -> (usize, Complex64) {
        (self.rows[j], self.values[j])
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        if self.rows[j] == i {
            self.values[j]
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    /// `self · other`.
    pub fn mul(&self, other: &DenseOperator) -> DenseOperator {
        let (rows, values) = (0..other.dim())
            .map(|j| {
                let (r, v) = other.column(j);
                (self.rows[r], self.values[r] * v)
            })
            .unzip();
        DenseOperator { rows, values }
    }

    pub fn adjoint(&self) -> DenseOperator {
        let mut rows = vec![0; self.dim()];
        let mut values = vec![Complex64::new(0.0, 0.0); self.dim()];
        for j in 0..self.dim() {
            rows[self.rows[j]] = j;
            values[self.rows[j]] = self.values[j].conj();
        }
        DenseOperator { rows, values }
    }

    pub fn apply_vector(&self, v: &DVector<Complex64>) -> DVector<Complex64> {
        let mut out = DVector::zeros(self.dim());
        for j in 0..self.dim() {
            out[self.rows[j]] += self.values[j] * v[j];
        }
        out
    }

    /// `self · m` for a dense matrix.
    pub fn mul_dense(&self, m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        let mut out = DMatrix::zeros(self.dim(), m.ncols());
        for j in 0..self.dim() {
            let (r, v) = self.column(j);
            for c in 0..m.ncols() {
                out[(r, c)] = v * m[(j, c)];
            }
        }
        out
    }

    /// `m · self` for a dense matrix.
    pub fn dense_mul(&self, m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        let mut out = DMatrix::zeros(m.nrows(), self.dim());
        for j in 0..self.dim() {
            let (r, v) = self.column(j);
            for i in 0..m.nrows() {
                out[(i, j)] = m[(i, r)] * v;
            }
        }
        out
    }

    pub fn to_matrix(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.dim(), self.dim());
        for j in 0..self.dim() {
            m[(self.rows[j], j)] = self.values[j];
        }
        m
    }

    pub fn max_deviation(&self, other: &DenseOperator) -> f64 {
        if self.rows != other.rows {
            return f64::INFINITY;
        }
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn hash_key(&self) -> u64 {
        let q = |x: f64| (x / BUCKET_GRID).round() as i64;
        let mut h = DefaultHasher::new();
        self.rows.hash(&mut h);
        for v in &self.values {
            (q(v.re), q(v.im)).hash(&mut h);
        }
        h.finish()
    }
}

fn dense_dim(space: &SiteSpace, cap: usize) -> Result<usize> {
    match space.total_dim() {
        Some(d) if d <= cap as u64 => Ok(d as usize),
        _ => Err(MsfError::CapExceeded(format!(
            "space of dimension {} exceeds the dense cap {cap}",
            space
                .total_dim()
                .map_or_else(|| "beyond 2^64".to_string(), |d| d.to_string())
        ))),
    }
}

/// Materialize an operator by applying it to every basis vector.
pub fn densify(op: &MonomialOp, space: &SiteSpace, cap: usize) -> Result<DenseOperator> {
    let dim = dense_dim(space, cap)?;
    op.validate(space)?;
    let mut rows = Vec::with_capacity(dim);
    let mut values = Vec::with_capacity(dim);
    for x in space.basis() {
        let (y, p) = op.apply(&x)?;
        rows.push(space.index(&y)? as usize);
        values.push(p.to_complex());
    }
    DenseOperator::from_columns(rows, values)
}

pub fn densify_all(gens: &GeneratorSet, cap: usize) -> Result<Vec<DenseOperator>> {
    gens.ops()
        .iter()
        .map(|op| densify(op, gens.space(), cap))
        .collect()
}

/// Every element of the generated group, by breadth-first closure from the
/// identity under left multiplication. Fails once more than `element_cap`
/// distinct elements appear.
pub fn group_enumerate(
    gens: &GeneratorSet,
    dense_cap: usize,
    element_cap: usize,
) -> Result<Vec<DenseOperator>> {
    let dim = dense_dim(gens.space(), dense_cap)?;
    let dense = densify_all(gens, dense_cap)?;
    let mut elements = vec![DenseOperator::identity(dim)];
    let mut buckets: HashMap<_, Vec<usize>> = HashMap::new();
    buckets.insert(elements[0].hash_key(), vec![0]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for u in &dense {
            let candidate = u.mul(&elements[i]);
            let key = candidate.hash_key();
            let bucket = buckets.entry(key).or_default();
            if bucket
                .iter()
                .any(|&j| elements[j].max_deviation(&candidate) <= DEDUP_TOLERANCE)
            {
                continue;
            }
            if elements.len() >= element_cap {
                return Err(MsfError::CapExceeded(format!(
                    "group has more than {element_cap} elements (too large or infinite)"
                )));
            }
            bucket.push(elements.len());
            queue.push_back(elements.len());
            elements.push(candidate);
        }
    }
    Ok(elements)
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// The group average `ρ = (1/|G|) Σ U`, verified to be an orthogonal
/// projector absorbing every element on both sides.
pub fn average_projector(elements: &[DenseOperator]) -> Result<DMatrix<Complex64>> {
    let first = elements
        .first()
        .ok_or_else(|| MsfError::InvalidArgument("empty element list".into()))?;
    let dim = first.dim();
    let mut rho = DMatrix::zeros(dim, dim);
    for u in elements {
        for j in 0..dim {
            let (r, v) = u.column(j);
            rho[(r, j)] += v;
        }
    }
    rho /= Complex64::new(elements.len() as f64, 0.0);
    let checks = [
        ("ρ² = ρ", max_abs(&(&rho * &rho - &rho))),
        ("ρ† = ρ", max_abs(&(rho.adjoint() - &rho))),
    ];
    for (what, dev) in checks {
        if dev > PROJECTOR_TOLERANCE {
            return Err(MsfError::Inconsistency(format!("{what} fails by {dev:e}")));
        }
    }
    for (i, u) in elements.iter().enumerate() {
        let left = max_abs(&(u.mul_dense(&rho) - &rho));
        let right = max_abs(&(u.dense_mul(&rho) - &rho));
        if left.max(right) > PROJECTOR_TOLERANCE {
            return Err(MsfError::Inconsistency(format!(
                "element {i} fails Uρ = ρ = ρU by {:e}",
                left.max(right)
            )));
        }
    }
    Ok(rho)
}
