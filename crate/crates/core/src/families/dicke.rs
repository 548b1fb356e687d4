use crate::error::{MsfError, Result};
use crate::families::{binomial, Expected, Fixture};
use crate::op::gate::LocalMonomialGate;
use crate::op::generators::GeneratorSet;
use crate::op::monomial::{DiagonalFn, MonomialOp};
use crate::space::{BasisVector, SiteSpace};

/// The `n`-qubit W state: the Dicke state of weight 1.
pub fn build_w(n: usize) -> Result<Fixture> {
    let mut f = build_dicke(n, 1)?;
    f.name = format!("w-{n}");
    Ok(f)
}

/// The weight-`k` Dicke state on `n` qubits, stabilized by the weight phase
/// `T_k = α^{w(x) - k}` with `α = exp(2πi/n)` and the adjacent swaps
/// `S_1 … S_{n-1}`.
pub fn build_dicke(n: usize, k: usize) -> Result<Fixture> {
    if n < 2 {
        return Err(MsfError::InvalidArgument(format!(
            "Dicke states need n >= 2, got {n}"
        )));
    }
    if k == 0 || k >= n {
        return Err(MsfError::InvalidArgument(format!(
            "Dicke weight must satisfy 1 <= k <= n-1, got k={k} for n={n}"
        )));
    }
    let mut gens = GeneratorSet::new(SiteSpace::qubits(n)?);
    gens.push(
        "T",
        MonomialOp::diagonal(DiagonalFn::Hamming {
            den: n as u64,
            slope: 1,
            offset: -(k as i64),
        }),
    )?;
    let swap = LocalMonomialGate::swap(2);
    for i in 0..n - 1 {
        gens.push(
            format!("S{}", i + 1),
            MonomialOp::embed(swap.clone(), vec![i, i + 1])?,
        )?;
    }
    // Smallest weight-k string: ones packed at the end.
    let rep = BasisVector((0..n).map(|i| u32::from(i >= n - k)).collect());
    Ok(Fixture::new(
        format!("dicke-{n}-{k}"),
        gens,
        Expected {
            dimension: Some(1),
            support_size: binomial(n as u64, k as u64),
            representative: Some(rep),
            total_orbits: Some(n as u64 + 1),
            ..Expected::default()
        },
    ))
}
