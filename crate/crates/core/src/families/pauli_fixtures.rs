use crate::error::Result;
use crate::families::{Expected, Fixture};
use crate::op::generators::GeneratorSet;
use crate::pauli::label::PauliLabel;
use crate::space::{BasisVector, SiteSpace};

/// A generator set from signed Pauli strings such as `-ZZI`. The strings need
/// not commute; each becomes a generator named by its string.
pub fn build_pauli(strings: &[&str]) -> Result<GeneratorSet> {
    let labels = strings
        .iter()
        .map(|s| s.parse::<PauliLabel>())
        .collect::<Result<Vec<_>>>()?;
    let n = labels.first().map_or(0, PauliLabel::num_qubits);
    let mut gens = GeneratorSet::new(SiteSpace::qubits(n)?);
    for (s, l) in strings.iter().zip(&labels) {
        gens.push(s.to_string(), l.to_monomial())?;
    }
    Ok(gens)
}

pub fn ghz3() -> Result<Fixture> {
    Ok(Fixture::new(
        "ghz-3",
        build_pauli(&["XXX", "ZZI", "IZZ"])?,
        Expected {
            dimension: Some(1),
            support_size: Some(2),
            representative: Some(BasisVector::zeros(3)),
            total_orbits: Some(4),
            ..Expected::default()
        },
    ))
}

/// Linear cluster state on `n` qubits: `Z_{i-1} X_i Z_{i+1}`.
pub fn cluster_path(n: usize) -> Result<Fixture> {
    let strings: Vec<String> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if j == i {
                        'X'
                    } else if j + 1 == i || j == i + 1 {
                        'Z'
                    } else {
                        'I'
                    }
                })
                .collect()
        })
        .collect();
    let refs: Vec<&str> = strings.iter().map(String::as_str).collect();
    Ok(Fixture::new(
        format!("cluster-{n}"),
        build_pauli(&refs)?,
        Expected {
            dimension: Some(1),
            support_size: 1u64.checked_shl(n as u32),
            representative: Some(BasisVector::zeros(n)),
            total_orbits: Some(1),
            ..Expected::default()
        },
    ))
}

/// The five-qubit code, cyclic shifts of `XZZXI`.
pub fn five_qubit_code() -> Result<Fixture> {
    Ok(Fixture::new(
        "five-qubit-code",
        build_pauli(&["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"])?,
        Expected {
            dimension: Some(2),
            support_size: Some(32),
            representative: Some(BasisVector::zeros(5)),
            total_orbits: Some(2),
            ..Expected::default()
        },
    ))
}
