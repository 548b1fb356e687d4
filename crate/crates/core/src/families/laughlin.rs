use crate::error::{MsfError, Result};
use crate::families::{binomial, Expected, Fixture};
use crate::op::gate::LocalMonomialGate;
use crate::op::generators::GeneratorSet;
use crate::op::monomial::MonomialOp;
use crate::phase::Phase;
use crate::space::{BasisVector, SiteSpace};

/// The totally antisymmetric state on `n` sites of dimension `n`, stabilized
/// by the negated adjacent swaps `-S_{i,i+1}`.
pub fn build_laughlin(n: usize) -> Result<Fixture> {
    if n < 2 {
        return Err(MsfError::InvalidArgument(format!("need n >= 2, got {n}")));
    }
    let mut gens = GeneratorSet::new(SiteSpace::uniform(n, n as u32)?);
    let swap = LocalMonomialGate::swap(n as u32);
    for i in 0..n - 1 {
        let op = MonomialOp::Product(vec![
            MonomialOp::constant(Phase::MINUS_ONE),
            MonomialOp::embed(swap.clone(), vec![i, i + 1])?,
        ]);
        gens.push(format!("A{}", i + 1), op)?;
    }
    let factorial = (1..=n as u64).try_fold(1u64, |acc, i| acc.checked_mul(i));
    Ok(Fixture::new(
        format!("laughlin-{n}"),
        gens,
        Expected {
            dimension: Some(1),
            support_size: factorial,
            representative: Some(BasisVector((0..n as u32).collect())),
            // Multisets of size n over n values.
            total_orbits: binomial(2 * n as u64 - 1, n as u64),
            ..Expected::default()
        },
    ))
}
