use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{MsfError, Result};
use crate::families::{Expected, Fixture};
use crate::op::gate::LocalMonomialGate;
use crate::op::generators::GeneratorSet;
use crate::op::monomial::{CustomDiagonal, DiagonalFn, MonomialOp};
use crate::phase::Phase;
use crate::space::{BasisVector, SiteSpace};

/// Inputs are checked eagerly for unit modulus up to this many qubits.
const EAGER_CHECK_QUBITS: usize = 16;

/// The state `D|+⟩^n = 2^{-n/2} Σ_x γ_x |x⟩` for a diagonal `D` given by the
/// phase function `γ`, stabilized by `D X_i D†`.
pub fn build_lme<F>(n: usize, name: &str, gamma: F) -> Result<Fixture>
where
    F: Fn(&BasisVector) -> Complex64 + Send + Sync + 'static,
{
    if n == 0 {
        return Err(MsfError::InvalidArgument("need at least one qubit".into()));
    }
    let space = SiteSpace::qubits(n)?;
    let gamma = Arc::new(gamma);
    if n <= EAGER_CHECK_QUBITS {
        for x in space.basis() {
            Phase::from_complex(gamma(&x))?;
        }
    }
    let g = Arc::clone(&gamma);
    let d = MonomialOp::diagonal(DiagonalFn::Custom(CustomDiagonal::new(
        format!("phase function {name}"),
        move |x| Phase::from_complex(g(x)),
    )));
    let mut gens = GeneratorSet::new(space);
    for i in 0..n {
        let op = MonomialOp::Product(vec![
            d.clone(),
            MonomialOp::embed(LocalMonomialGate::not(), vec![i])?,
            d.clone().inverse(),
        ]);
        gens.push(format!("U{}", i + 1), op)?;
    }
    Ok(Fixture::new(
        format!("lme-{name}-{n}"),
        gens,
        Expected {
            dimension: Some(1),
            support_size: 1u64.checked_shl(n as u32),
            representative: Some(BasisVector::zeros(n)),
            total_orbits: Some(1),
            ..Expected::default()
        },
    ))
}
