use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::error::{MsfError, Result};
use crate::group::basis::OrbitState;
use crate::pauli::gf2::Gf2Vector;
use crate::pauli::label::PauliLabel;
use crate::simulate::sampling::{rng_from_seed, MState};
use crate::space::BasisVector;

/// `γ X(a) Z(b)` on qubits, with `γ = i^k`.
pub type PauliWord = PauliLabel;

/// Largest observable support accepted by [`estimate_local`].
pub const MAX_LOCAL_SITES: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ExactEnumeration,
    MonteCarlo,
}

#[derive(Clone, Debug, Serialize)]
pub struct Estimate {
    #[serde(serialize_with = "serialize_complex")]
    pub value: Complex64,
    pub epsilon: f64,
    pub delta: f64,
    pub samples_used: u64,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

fn serialize_complex<S: serde::Serializer>(
    c: &Complex64,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("Complex", 2)?;
    st.serialize_field("re", &c.re)?;
    st.serialize_field("im", &c.im)?;
    st.end()
}

/// Samples needed for a mean of modulus-≤1 terms to land within `ε` of its
/// expectation with probability `1 - δ`, covering real and imaginary parts:
/// `⌈(2/ε²)·ln(4/δ)⌉`.
pub fn hoeffding_n(epsilon: f64, delta: f64) -> Result<u64> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(MsfError::InvalidArgument(format!(
            "epsilon must lie in (0, 1], got {epsilon}"
        )));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(MsfError::InvalidArgument(format!(
            "delta must lie in (0, 1), got {delta}"
        )));
    }
    let v = 2.0 / (epsilon * epsilon) * (4.0 / delta).ln();
    // Snap values that are an integer up to rounding noise.
    let r = v.round();
    let n = if (v - r).abs() <= 1e-9 * v.max(1.0) {
        r
    } else {
        v.ceil()
    };
    Ok(n as u64)
}

fn qubit_bits(y: &BasisVector) -> Result<Gf2Vector> {
    if y.values().iter().any(|&v| v > 1) {
        return Err(MsfError::Unsupported(format!(
            "Pauli estimation needs qubit sites, got {y}"
        )));
    }
    Ok(Gf2Vector::from_values(y.values()))
}

/// `F(y) = (-1)^{b·y} ξ(y) conj(ξ(y+a))` when `y+a` is in the support, else 0.
fn estimator_term<S: MState>(state: &S, p: &PauliWord, y: &BasisVector) -> Result<Complex64> {
    let bits = qubit_bits(y)?;
    let xi_y = state
        .xi(y)?
        .ok_or_else(|| MsfError::Inconsistency(format!("sampled {y} lies outside the support")))?;
    let z = BasisVector(bits.add(&p.s).to_values());
    let Some(xi_z) = state.xi(&z)? else {
        return Ok(Complex64::new(0.0, 0.0));
    };
    let sign = if p.t.dot(&bits) { -1.0 } else { 1.0 };
    Ok((xi_y * xi_z.conj()).to_complex() * sign)
}

fn check_width<S: MState>(state: &S, p: &PauliWord) -> Result<()> {
    if p.num_qubits() != state.num_sites() {
        return Err(MsfError::SpaceMismatch(format!(
            "Pauli word on {} qubits, state on {} sites",
            p.num_qubits(),
            state.num_sites()
        )));
    }
    Ok(())
}

fn mean_pauli<S: MState, R: Rng>(
    state: &S,
    p: &PauliWord,
    n: u64,
    rng: &mut R,
) -> Result<Complex64> {
    let mut sum = Complex64::new(0.0, 0.0);
    for _ in 0..n {
        let y = state.sample(rng)?;
        sum += estimator_term(state, p, &y)?;
    }
    Ok(p.gamma().to_complex() * sum / n as f64)
}

/// Monte-Carlo estimate of `⟨ψ|p|ψ⟩` from `hoeffding_n(ε, δ)` samples.
pub fn estimate_pauli<S: MState>(
    state: &S,
    p: &PauliWord,
    epsilon: f64,
    delta: f64,
    seed: u64,
) -> Result<Estimate> {
    check_width(state, p)?;
    let n = hoeffding_n(epsilon, delta)?;
    let value = mean_pauli(state, p, n, &mut rng_from_seed(seed))?;
    Ok(Estimate {
        value,
        epsilon,
        delta,
        samples_used: n,
        method: Method::MonteCarlo,
        seed: Some(seed),
    })
}

/// `⟨ψ|p|ψ⟩` by summing the estimator over the whole orbit.
pub fn exact_pauli(state: &OrbitState, p: &PauliWord) -> Result<Complex64> {
    state.tree().require_complete()?;
    check_width(state, p)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for y in state.tree().members() {
        sum += estimator_term(state, p, y)?;
    }
    Ok(p.gamma().to_complex() * sum / state.size() as f64)
}

/// Coefficients `c_{s,t}` of `A = Σ c_{s,t} X(s)Z(t)` on `k` qubits, indexed
/// `[s][t]` by local bit masks (first site most significant).
pub fn pauli_coefficients(a: &DMatrix<Complex64>) -> Result<Vec<Vec<Complex64>>> {
    let dim = a.nrows();
    if dim != a.ncols() || !dim.is_power_of_two() || dim < 2 {
        return Err(MsfError::InvalidArgument(format!(
            "observable must be 2^k × 2^k, got {} × {}",
            a.nrows(),
            a.ncols()
        )));
    }
    // c_{s,t} = 2^-k Σ_x (-1)^{t·x} A[x⊕s, x]; a Walsh-Hadamard transform per s.
    let mut out = Vec::with_capacity(dim);
    for s in 0..dim {
        let mut v: Vec<Complex64> = (0..dim).map(|x| a[(x ^ s, x)]).collect();
        let mut h = 1;
        while h < dim {
            for i in (0..dim).step_by(2 * h) {
                for j in i..i + h {
                    let (u, w) = (v[j], v[j + h]);
                    v[j] = u + w;
                    v[j + h] = u - w;
                }
            }
            h *= 2;
        }
        out.push(v.into_iter().map(|c| c / dim as f64).collect());
    }
    Ok(out)
}

/// Estimate `⟨ψ|A|ψ⟩` for a `k`-local observable given as a dense
/// `2^k × 2^k` matrix acting on `sites` (first listed site most significant).
///
/// Each non-identity Pauli term gets an equal share `ε/T` of the error budget
/// after weighting by its coefficient, and `δ/T` of the failure probability.
/// The identity term is exact.
pub fn estimate_local<S: MState>(
    state: &S,
    observable: &DMatrix<Complex64>,
    sites: &[usize],
    epsilon: f64,
    delta: f64,
    seed: u64,
) -> Result<Estimate> {
    let k = sites.len();
    if k == 0 || k > MAX_LOCAL_SITES {
        return Err(MsfError::InvalidArgument(format!(
            "observable support must have 1..={MAX_LOCAL_SITES} sites, got {k}"
        )));
    }
    let n = state.num_sites();
    let mut seen = vec![false; n];
    for &s in sites {
        if s >= n || std::mem::replace(&mut seen[s], true) {
            return Err(MsfError::InvalidArgument(format!(
                "sites {sites:?} must be distinct and below {n}"
            )));
        }
    }
    if observable.nrows() != 1 << k {
        return Err(MsfError::InvalidArgument(format!(
            "observable on {k} sites must be {0} × {0}",
            1 << k
        )));
    }
    hoeffding_n(epsilon, delta)?;
    let coeffs = pauli_coefficients(observable)?;
    let mut terms = Vec::new();
    for (s, row) in coeffs.iter().enumerate() {
        for (t, &c) in row.iter().enumerate() {
            if (s, t) != (0, 0) && c.norm() > 1e-14 {
                terms.push((s, t, c));
            }
        }
    }
    let mut value = coeffs[0][0];
    let mut samples = 0u64;
    let count = terms.len().max(1) as f64;
    let delta_j = delta / count;
    let global = |mask: usize| {
        let mut v = Gf2Vector::zeros(n);
        for (i, &site) in sites.iter().enumerate() {
            if mask >> (k - 1 - i) & 1 == 1 {
                v.set(site, true);
            }
        }
        v
    };
    for (j, &(s, t, c)) in terms.iter().enumerate() {
        let eps_j = (epsilon / (count * c.norm())).min(1.0);
        let n_j = hoeffding_n(eps_j, delta_j)?;
        let p = PauliLabel::new(0, global(s), global(t))?;
        let mut rng = rng_from_seed(seed);
        rng.set_stream(j as u64 + 1);
        value += c * mean_pauli(state, &p, n_j, &mut rng)?;
        samples += n_j;
    }
    Ok(Estimate {
        value,
        epsilon,
        delta,
        samples_used: samples,
        method: Method::MonteCarlo,
        seed: Some(seed),
    })
}
