use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use petgraph::unionfind::UnionFind;

use crate::error::{MsfError, Result};
use crate::op::generators::GeneratorSet;
use crate::oracle::dense::{densify_all, DenseOperator};

/// Eigenvalues of `Σ (2I - U - U†)` at or below this are treated as zero.
pub const NULL_TOLERANCE: f64 = 1e-9;
/// Eigenvalues between `NULL_TOLERANCE` and this are too close to call.
pub const NULL_AMBIGUOUS: f64 = 1e-6;
/// Required `‖U v - v‖` for every returned vector.
pub const FIXED_RESIDUAL: f64 = 1e-9;

/// A sparse vector over flat basis indices, indices increasing.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseVector {
    pub indices: Vec<usize>,
    pub values: Vec<Complex64>,
}

impl SparseVector {
    pub fn to_dense(&self, dim: usize) -> DVector<Complex64> {
        let mut v = DVector::zeros(dim);
        for (&i, &c) in self.indices.iter().zip(&self.values) {
            v[i] = c;
        }
        v
    }

    pub fn norm(&self) -> f64 {
        self.values.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        self.indices
            .iter()
            .copied()
            .zip(self.values.iter().copied())
    }
}

/// Orthonormal basis of the joint +1 eigenspace of a generator set.
#[derive(Clone, Debug)]
pub struct FixedSpaceBasis {
    dim_ambient: usize,
    vectors: Vec<SparseVector>,
}

impl FixedSpaceBasis {
    pub fn dim_ambient(&self) -> usize {
        self.dim_ambient
    }

    pub fn dim_fixed(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[SparseVector] {
        &self.vectors
    }

    /// `N × k` matrix with the basis as columns.
    pub fn to_matrix(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.dim_ambient, self.dim_fixed());
        for (c, v) in self.vectors.iter().enumerate() {
            for (i, z) in v.entries() {
                m[(i, c)] = z;
            }
        }
        m
    }

    /// The projector `P = Σ v v†` as a dense matrix.
    pub fn projector(&self) -> DMatrix<Complex64> {
        let v = self.to_matrix();
        &v * v.adjoint()
    }

    /// `⟨x|P|x⟩`.
    pub fn projector_diagonal(&self) -> Vec<f64> {
        let mut d = vec![0.0; self.dim_ambient];
        for v in &self.vectors {
            for (i, z) in v.entries() {
                d[i] += z.norm_sqr();
            }
        }
        d
    }

    /// `P|x⟩` for the basis vector with flat index `x`.
    pub fn project_basis_vector(&self, x: usize) -> DVector<Complex64> {
        let mut out = DVector::zeros(self.dim_ambient);
        for v in &self.vectors {
            if let Ok(p) = v.indices.binary_search(&x) {
                let c = v.values[p].conj();
                for (i, z) in v.entries() {
                    out[i] += z * c;
                }
            }
        }
        out
    }
}

/// Orthonormal basis of `{v : U_i v = v for all i}`.
///
/// The space splits into blocks connected by the generators' permutation
/// parts; in each block the fixed space is the null space of the positive
/// semidefinite `H = Σ_i (2I - U_i - U_i†)`, whose eigenvalues are the squared
/// singular values of the stacked `(U_i - I)` system.
pub fn joint_fixed_space(gens: &GeneratorSet, dense_cap: usize) -> Result<FixedSpaceBasis> {
    let ops = densify_all(gens, dense_cap)?;
    let dim = gens
        .space()
        .total_dim()
        .expect("densify_all checked the cap") as usize;
    let mut uf = UnionFind::<usize>::new(dim);
    for u in &ops {
        for j in 0..dim {
            uf.union(j, u.column(j).0);
        }
    }
    let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for j in 0..dim {
        blocks.entry(uf.find_mut(j)).or_default().push(j);
    }
    let mut vectors = Vec::new();
    for block in blocks.values() {
        vectors.extend(block_null_space(&ops, block)?);
    }
    for v in &vectors {
        for (g, u) in ops.iter().enumerate() {
            let r = residual(u, v);
            if r > FIXED_RESIDUAL {
                return Err(MsfError::Inconsistency(format!(
                    "fixed vector moves under generator {} by {r:e}",
                    gens.name(g)
                )));
            }
        }
    }
    vectors.sort_by_key(|v| v.indices[0]);
    Ok(FixedSpaceBasis {
        dim_ambient: dim,
        vectors,
    })
}

fn block_null_space(ops: &[DenseOperator], block: &[usize]) -> Result<Vec<SparseVector>> {
    let c = block.len();
    let local = |j: usize| {
        block
            .binary_search(&j)
            .expect("block closed under generators")
    };
    let mut h = DMatrix::<Complex64>::zeros(c, c);
    for u in ops {
        for (a, &j) in block.iter().enumerate() {
            let (r, v) = u.column(j);
            let b = local(r);
            h[(a, a)] += Complex64::new(2.0, 0.0);
            h[(b, a)] -= v;
            h[(a, b)] -= v.conj();
        }
    }
    let eig = SymmetricEigen::new(h);
    let mut out = Vec::new();
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda > NULL_TOLERANCE && lambda < NULL_AMBIGUOUS {
            return Err(MsfError::Precision { distance: lambda });
        }
        if lambda <= NULL_TOLERANCE {
            let col = eig.eigenvectors.column(k);
            // Fix the global phase: largest entry real and positive.
            let (_, pivot) =
                col.iter()
                    .enumerate()
                    .fold((0.0, Complex64::new(1.0, 0.0)), |(m, p), (_, z)| {
                        if z.norm() > m + 1e-12 {
                            (z.norm(), *z)
                        } else {
                            (m, p)
                        }
                    });
            let phase = pivot.conj() / pivot.norm();
            let (indices, values) = block
                .iter()
                .zip(col.iter())
                .filter(|(_, z)| z.norm() > 1e-14)
                .map(|(&j, z)| (j, z * phase))
                .unzip();
            out.push(SparseVector { indices, values });
        }
    }
    Ok(out)
}

fn residual(u: &DenseOperator, v: &SparseVector) -> f64 {
    let mut moved: BTreeMap<usize, Complex64> = v.entries().collect();
    for (j, z) in v.entries() {
        let (r, val) = u.column(j);
        *moved.entry(r).or_default() -= val * z;
    }
    moved.values().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
