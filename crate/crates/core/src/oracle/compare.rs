use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::Result;
use crate::group::basis::SparseState;
use crate::oracle::fixed::{FixedSpaceBasis, SparseVector};
use crate::space::SiteSpace;

/// Largest accepted distance of an orbit state from the fixed space.
pub const RESIDUAL_TOLERANCE: f64 = 1e-8;
/// Largest accepted entry of `Gram - I` for the orbit states.
pub const GRAM_TOLERANCE: f64 = 1e-9;
/// Largest accepted Frobenius distance between the two projectors.
pub const PROJECTOR_DISTANCE_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonReport {
    pub passed: bool,
    pub fixed_dimension: usize,
    pub orbit_states: usize,
    pub max_residual: f64,
    pub gram_deviation: f64,
    pub projector_distance: f64,
    pub failures: Vec<String>,
}

type Sparse = BTreeMap<usize, Complex64>;

fn inner(a: &Sparse, b: &Sparse) -> Complex64 {
    let (small, large, flip) = if a.len() <= b.len() {
        (a, b, false)
    } else {
        (b, a, true)
    };
    let s: Complex64 = small
        .iter()
        .filter_map(|(i, x)| large.get(i).map(|y| x.conj() * y))
        .sum();
    if flip {
        s.conj()
    } else {
        s
    }
}

/// `‖v - Σ_b ⟨b|v⟩ b‖` for an orthonormal family `basis`, computed from the
/// explicit remainder rather than from norms so small residuals keep their
/// precision. `index` maps each flat index to the basis members touching it.
fn remainder(v: &Sparse, basis: &[Sparse], index: &HashMap<usize, Vec<usize>>) -> f64 {
    let mut touched: Vec<usize> = v
        .keys()
        .filter_map(|i| index.get(i))
        .flatten()
        .copied()
        .collect();
    touched.sort_unstable();
    touched.dedup();
    let mut rem = v.clone();
    for b in touched {
        let c = inner(&basis[b], v);
        for (i, z) in &basis[b] {
            *rem.entry(*i).or_default() -= c * z;
        }
    }
    rem.values().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn build_index(vs: &[Sparse]) -> HashMap<usize, Vec<usize>> {
    let mut index: HashMap<usize, Vec<usize>> = HashMap::new();
    for (k, v) in vs.iter().enumerate() {
        for i in v.keys() {
            index.entry(*i).or_default().push(k);
        }
    }
    index
}

fn to_sparse(v: &SparseVector) -> Sparse {
    v.entries().collect()
}

/// Check that `states` form an orthonormal basis of the same space as
/// `fixed`: equal counts, each state inside the fixed space, orthonormal
/// states, and equal projectors.
pub fn compare_basis(
    space: &SiteSpace,
    fixed: &FixedSpaceBasis,
    states: &[SparseState],
) -> Result<ComparisonReport> {
    let mut failures = Vec::new();
    let fixed_vs: Vec<Sparse> = fixed.vectors().iter().map(to_sparse).collect();
    let mut state_vs = Vec::with_capacity(states.len());
    for s in states {
        let mut m = Sparse::new();
        for (x, a) in s {
            *m.entry(space.index(x)? as usize).or_default() += a;
        }
        state_vs.push(m);
    }

    if fixed_vs.len() != state_vs.len() {
        failures.push(format!(
            "count: fixed space has dimension {}, got {} orbit states",
            fixed_vs.len(),
            state_vs.len()
        ));
    }

    let fixed_index = build_index(&fixed_vs);
    let state_index = build_index(&state_vs);
    let residuals: Vec<f64> = state_vs
        .iter()
        .map(|v| remainder(v, &fixed_vs, &fixed_index))
        .collect();
    let max_residual = residuals.iter().copied().fold(0.0, f64::max);
    for (k, r) in residuals.iter().enumerate() {
        if *r > RESIDUAL_TOLERANCE {
            failures.push(format!(
                "residual: orbit state {k} lies {r:e} outside the fixed space"
            ));
        }
    }

    let mut gram_deviation: f64 = 0.0;
    for (a, va) in state_vs.iter().enumerate() {
        let mut partners: Vec<usize> = va
            .keys()
            .filter_map(|i| state_index.get(i))
            .flatten()
            .copied()
            .collect();
        partners.sort_unstable();
        partners.dedup();
        let expected_self = Complex64::new(1.0, 0.0);
        if !partners.contains(&a) {
            gram_deviation = gram_deviation.max(1.0);
        }
        for b in partners {
            let g = inner(va, &state_vs[b]);
            let dev = if a == b {
                (g - expected_self).norm()
            } else {
                g.norm()
            };
            gram_deviation = gram_deviation.max(dev);
        }
    }
    if gram_deviation > GRAM_TOLERANCE {
        failures.push(format!(
            "gram: orbit states deviate from orthonormal by {gram_deviation:e}"
        ));
    }

    // ‖P1 - P2‖_F² = ‖(I - P2)V1‖_F² + ‖(I - P1)V2‖_F² for orthonormal V1, V2.
    let back: f64 = fixed_vs
        .iter()
        .map(|v| remainder(v, &state_vs, &state_index).powi(2))
        .sum();
    let forth: f64 = residuals.iter().map(|r| r * r).sum();
    let projector_distance = (back + forth).sqrt();
    if projector_distance > PROJECTOR_DISTANCE_TOLERANCE {
        failures.push(format!(
            "projector: Frobenius distance {projector_distance:e} between the two projectors"
        ));
    }

    Ok(ComparisonReport {
        passed: failures.is_empty(),
        fixed_dimension: fixed_vs.len(),
        orbit_states: state_vs.len(),
        max_residual,
        gram_deviation,
        projector_distance,
        failures,
    })
}
