use std::sync::Arc;

use crate::error::{MsfError, Result};
use crate::families::group_table::FiniteGroupTable;
use crate::families::lattice::SphereLattice;
use crate::families::{Expected, Fixture};
use crate::op::generators::GeneratorSet;
use crate::op::monomial::{DiagonalFn, MonomialOp, PermutationFn, PlaquetteRule, VertexRule};
use crate::space::{BasisVector, SiteSpace};

/// Largest configuration count [`flat_connections`] will scan.
const FLAT_SCAN_CAP: u64 = 1 << 24;

fn plaquette_rules(lat: &SphereLattice, group: &Arc<FiniteGroupTable>) -> Vec<PlaquetteRule> {
    lat.plaquettes()
        .iter()
        .map(|walk| PlaquetteRule {
            group: Arc::clone(group),
            edges: walk.iter().map(|&(e, _)| e).collect(),
            forward: walk.iter().map(|&(_, f)| f).collect(),
        })
        .collect()
}

/// Lattice gauge model with one `|G|`-level site per edge. Each plaquette
/// contributes the diagonal `2B_p - I`, and each vertex `v` contributes the
/// gauge transformations `V_v(k)` for every non-identity `k`.
pub fn build_quantum_double(lat: &SphereLattice, group: &FiniteGroupTable) -> Result<Fixture> {
    let order = group.order();
    let group = Arc::new(group.clone());
    let mut gens = GeneratorSet::new(SiteSpace::uniform(lat.num_edges(), order as u32)?);
    for (p, rule) in plaquette_rules(lat, &group).into_iter().enumerate() {
        gens.push(
            format!("P{p}"),
            MonomialOp::diagonal(DiagonalFn::Plaquette(Arc::new(rule))),
        )?;
    }
    for v in 0..lat.num_vertices() {
        let star = lat.star(v);
        for k in (0..order).filter(|&k| k != group.identity()) {
            let rule = VertexRule {
                group: Arc::clone(&group),
                edges: star.iter().map(|&(e, _)| e).collect(),
                toward: star.iter().map(|&(_, t)| t).collect(),
                k,
            };
            gens.push(
                format!("V{v}_{k}"),
                MonomialOp::Permutation(PermutationFn::Vertex(Arc::new(rule))),
            )?;
        }
    }
    // On the sphere every flat connection is pure gauge, and the gauge
    // orbit of the trivial connection has |G|^{V-1} elements.
    let support = (order as u64).checked_pow(lat.num_vertices() as u32 - 1);
    let rep = BasisVector(vec![group.identity() as u32; lat.num_edges()]);
    Ok(Fixture::new(
        format!("quantum-double-{}-{}", group.name(), lat.name()),
        gens,
        Expected {
            dimension: Some(1),
            support_size: support,
            representative: Some(rep),
            ..Expected::default()
        },
    ))
}

/// Every edge labelling whose plaquette holonomies are all the identity, by
/// exhaustive scan in increasing flat-index order.
pub fn flat_connections(lat: &SphereLattice, group: &FiniteGroupTable) -> Result<Vec<BasisVector>> {
    let space = SiteSpace::uniform(lat.num_edges(), group.order() as u32)?;
    match space.total_dim() {
        Some(d) if d <= FLAT_SCAN_CAP => {}
        _ => {
            return Err(MsfError::CapExceeded(format!(
                "{} edge configurations exceed the scan cap {FLAT_SCAN_CAP}",
                space
                    .total_dim()
                    .map_or("too many".into(), |d| d.to_string())
            )))
        }
    }
    let group = Arc::new(group.clone());
    let rules = plaquette_rules(lat, &group);
    let mut out = Vec::new();
    for x in space.basis() {
        let mut flat = true;
        for r in &rules {
            if r.holonomy(x.values())? != group.identity() {
                flat = false;
                break;
            }
        }
        if flat {
            out.push(x);
        }
    }
    Ok(out)
}
