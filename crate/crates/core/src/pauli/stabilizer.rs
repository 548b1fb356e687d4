use rand::Rng;

use crate::error::{MsfError, Result};
use crate::op::generators::GeneratorSet;
use crate::pauli::gf2::{Gf2Matrix, Gf2Vector};
use crate::pauli::label::{pauli_mul, PauliLabel};
use crate::phase::Phase;
use crate::space::SiteSpace;

/// Independent, commuting Pauli operators that each square to `+I`. A full
/// set (`n` generators) stabilizes a state; fewer generators stabilize a code.
#[derive(Clone, Debug)]
pub struct PauliStabilizerGroup {
    n: usize,
    gens: Vec<PauliLabel>,
}

/// Diagonal generator `(-1)^sign Z(z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalGenerator {
    pub sign: bool,
    pub z: Gf2Vector,
}

impl PauliStabilizerGroup {
    pub fn new(gens: Vec<PauliLabel>) -> Result<Self> {
        let n = gens
            .first()
            .map(PauliLabel::num_qubits)
            .ok_or_else(|| MsfError::InvalidArgument("no stabilizer generators".into()))?;
        if gens.iter().any(|g| g.num_qubits() != n) {
            return Err(MsfError::InvalidArgument(
                "stabilizer generators act on different qubit counts".into(),
            ));
        }
        if gens.len() > n {
            return Err(MsfError::InvalidArgument(format!(
                "{} generators on {n} qubits cannot be independent",
                gens.len()
            )));
        }
        if let Some(g) = gens.iter().find(|g| !g.squares_to_identity()) {
            return Err(MsfError::InvalidArgument(format!(
                "{g} squares to -I, so -I would lie in the group and no nonzero state is stabilized"
            )));
        }
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                if !a.commutes_with(b) {
                    return Err(MsfError::InvalidArgument(format!(
                        "{a} and {b} anticommute"
                    )));
                }
            }
        }
        let rows = gens.iter().map(|g| g.s.concat(&g.t)).collect();
        let rank = Gf2Matrix::from_rows(2 * n, rows)?.rank();
        if rank != gens.len() {
            return Err(MsfError::InvalidArgument(format!(
                "generators are dependent (rank {rank} of {})",
                gens.len()
            )));
        }
        Ok(PauliStabilizerGroup { n, gens })
    }

    pub fn parse(strings: &[&str]) -> Result<Self> {
        Self::new(
            strings
                .iter()
                .map(|s| s.parse())
                .collect::<Result<Vec<PauliLabel>>>()?,
        )
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliLabel] {
        &self.gens
    }

    /// `σ(a) = σ_1^{a_1} ⋯ σ_m^{a_m}`.
    pub fn element(&self, a: &Gf2Vector) -> PauliLabel {
        self.gens
            .iter()
            .enumerate()
            .filter(|(i, _)| a.get(*i))
            .fold(PauliLabel::identity(self.n), |acc, (_, g)| {
                pauli_mul(&acc, g).expect("same qubit count")
            })
    }

    /// `n × m` matrix whose columns are the X parts `s^i`.
    fn x_columns(&self) -> Gf2Matrix {
        let cols: Vec<Gf2Vector> = self.gens.iter().map(|g| g.s.clone()).collect();
        Gf2Matrix::from_columns(self.n, &cols).expect("consistent lengths")
    }

    /// Generators of the diagonal subgroup, from a nullspace basis of
    /// `Σ a_i s^i = 0`.
    pub fn diagonal_subgroup(&self) -> Result<Vec<DiagonalGenerator>> {
        self.x_columns()
            .nullspace()
            .iter()
            .map(|a| {
                let d = self.element(a);
                if !d.s.is_zero() {
                    return Err(MsfError::Inconsistency(format!(
                        "diagonal element {d} has a nonzero X part"
                    )));
                }
                if d.k % 2 == 1 {
                    return Err(MsfError::Inconsistency(format!(
                        "diagonal element {d} has an imaginary sign"
                    )));
                }
                Ok(DiagonalGenerator {
                    sign: d.k == 2,
                    z: d.t,
                })
            })
            .collect()
    }

    /// Some `x` with `x·d^j = u_j` for every diagonal generator; its coset is
    /// the support of the stabilized space.
    pub fn support_representative(&self) -> Result<Gf2Vector> {
        let diag = self.diagonal_subgroup()?;
        if diag.is_empty() {
            return Ok(Gf2Vector::zeros(self.n));
        }
        let a = Gf2Matrix::from_rows(self.n, diag.iter().map(|d| d.z.clone()).collect())?;
        let u = Gf2Vector::from_bits(&diag.iter().map(|d| d.sign).collect::<Vec<_>>());
        a.solve(&u).ok_or_else(|| {
            MsfError::Inconsistency("diagonal subgroup constraints have no solution".into())
        })
    }

    /// The support coset `x + S`, `S` the span of the X parts.
    pub fn coset_support(&self, x: &Gf2Vector) -> CosetSupport {
        let (red, pivots) = self.x_columns().transpose().rref();
        CosetSupport {
            basis: red.rows()[..pivots.len()].to_vec(),
            x: x.clone(),
        }
    }

    /// `ξ_x(y)` from label arithmetic: solve `Σ a_i s^i = x + y` and read the
    /// phase of `σ(a)` on `|x⟩`. `x` must be a support representative.
    pub fn xi_fast(&self, x: &Gf2Vector, y: &Gf2Vector) -> Result<Phase> {
        let a = self
            .x_columns()
            .solve(&x.add(y))
            .ok_or_else(|| MsfError::NotInOrbit(y.to_string()))?;
        let (z, phase) = self.element(&a).act(x);
        debug_assert_eq!(&z, y);
        Ok(phase)
    }

    /// Generic generator set for the same group.
    pub fn to_generators(&self) -> Result<GeneratorSet> {
        let mut set = GeneratorSet::new(SiteSpace::qubits(self.n)?);
        for g in &self.gens {
            set.push(g.to_string(), g.to_monomial())?;
        }
        Ok(set)
    }
}

/// Affine GF(2) subspace `x + span(basis)`.
#[derive(Clone, Debug)]
pub struct CosetSupport {
    /// Reduced row echelon basis of `S`.
    pub basis: Vec<Gf2Vector>,
    pub x: Gf2Vector,
}

impl CosetSupport {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, y: &Gf2Vector) -> bool {
        let d = y.add(&self.x);
        if self.basis.is_empty() {
            return d.is_zero();
        }
        let n = self.x.len();
        Gf2Matrix::from_columns(n, &self.basis)
            .expect("consistent lengths")
            .solve(&d)
            .is_some()
    }

    /// All elements, for `dim <= 20`.
    pub fn elements(&self) -> Result<Vec<Gf2Vector>> {
        if self.dim() > 20 {
            return Err(MsfError::CapExceeded(format!(
                "coset of dimension {} is too large to list",
                self.dim()
            )));
        }
        Ok((0u64..1 << self.dim())
            .map(|mask| {
                self.basis
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .fold(self.x.clone(), |acc, (_, b)| acc.add(b))
            })
            .collect())
    }
}

/// A random valid stabilizer group with `r` generators on `n` qubits: the
/// signed `Z_1, …, Z_r` conjugated by a random Clifford circuit of `depth`
/// gates.
pub fn random_stabilizer_group<R: Rng>(
    n: usize,
    r: usize,
    depth: usize,
    rng: &mut R,
) -> Result<PauliStabilizerGroup> {
    if r == 0 || r > n {
        return Err(MsfError::InvalidArgument(format!(
            "need 1 <= generators <= {n}, got {r}"
        )));
    }
    // Images of X_j and Z_j under the circuit so far.
    let mut img_x: Vec<PauliLabel> = (0..n).map(|j| PauliLabel::x(n, j)).collect();
    let mut img_z: Vec<PauliLabel> = (0..n).map(|j| PauliLabel::z(n, j)).collect();
    let conj = |p: &PauliLabel, ix: &[PauliLabel], iz: &[PauliLabel]| -> PauliLabel {
        let mut acc = PauliLabel::identity(n).times_i_pow(p.k);
        for j in p.s.ones() {
            acc = pauli_mul(&acc, &ix[j]).expect("same n");
        }
        for j in p.t.ones() {
            acc = pauli_mul(&acc, &iz[j]).expect("same n");
        }
        acc
    };
    for _ in 0..depth {
        let (gx, gz): (Vec<PauliLabel>, Vec<PauliLabel>) = match rng.gen_range(0..3) {
            0 => {
                let q = rng.gen_range(0..n);
                let mut gx: Vec<_> = (0..n).map(|j| PauliLabel::x(n, j)).collect();
                let mut gz: Vec<_> = (0..n).map(|j| PauliLabel::z(n, j)).collect();
                std::mem::swap(&mut gx[q], &mut gz[q]);
                (gx, gz)
            }
            1 => {
                let q = rng.gen_range(0..n);
                let mut gx: Vec<_> = (0..n).map(|j| PauliLabel::x(n, j)).collect();
                let gz: Vec<_> = (0..n).map(|j| PauliLabel::z(n, j)).collect();
                gx[q] = pauli_mul(&gx[q], &gz[q]).expect("same n").times_i_pow(1);
                (gx, gz)
            }
            _ if n >= 2 => {
                let c = rng.gen_range(0..n);
                let t = (c + rng.gen_range(1..n)) % n;
                let mut gx: Vec<_> = (0..n).map(|j| PauliLabel::x(n, j)).collect();
                let mut gz: Vec<_> = (0..n).map(|j| PauliLabel::z(n, j)).collect();
                gx[c] = pauli_mul(&gx[c], &PauliLabel::x(n, t)).expect("same n");
                gz[t] = pauli_mul(&PauliLabel::z(n, c), &gz[t]).expect("same n");
                (gx, gz)
            }
            _ => continue,
        };
        // Compose: the new gate acts after the circuit built so far.
        img_x = img_x.iter().map(|p| conj(p, &gx, &gz)).collect();
        img_z = img_z.iter().map(|p| conj(p, &gx, &gz)).collect();
    }
    let gens = (0..r)
        .map(|j| {
            let sign = if rng.gen_bool(0.5) { 2 } else { 0 };
            img_z[j].times_i_pow(sign)
        })
        .collect();
    PauliStabilizerGroup::new(gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn v(s: &str) -> Gf2Vector {
        s.parse().unwrap()
    }

    #[test]
    fn ghz_diagonal_subgroup() {
        let g = PauliStabilizerGroup::parse(&["XXX", "ZZI", "IZZ"]).unwrap();
        let d = g.diagonal_subgroup().unwrap();
        assert_eq!(
            d,
            vec![
                DiagonalGenerator {
                    sign: false,
                    z: v("110")
                },
                DiagonalGenerator {
                    sign: false,
                    z: v("011")
                },
            ]
        );
        let x = g.support_representative().unwrap();
        assert_eq!(x, v("000"));
        let c = g.coset_support(&x);
        assert_eq!(c.elements().unwrap(), vec![v("000"), v("111")]);
        assert_eq!(g.xi_fast(&x, &v("111")).unwrap(), Phase::ONE);
        assert!(g.xi_fast(&x, &v("100")).is_err());
    }

    #[test]
    fn cluster_path_has_trivial_diagonal_part() {
        let g = PauliStabilizerGroup::parse(&["XZI", "ZXZ", "IZX"]).unwrap();
        assert!(g.diagonal_subgroup().unwrap().is_empty());
        assert_eq!(g.coset_support(&v("000")).dim(), 3);
    }

    #[test]
    fn minus_z_picks_one() {
        let g = PauliStabilizerGroup::parse(&["-Z"]).unwrap();
        assert_eq!(g.support_representative().unwrap(), v("1"));
    }

    #[test]
    fn rejects_invalid_groups() {
        assert!(PauliStabilizerGroup::parse(&["XI", "ZI"]).is_err());
        assert!(PauliStabilizerGroup::parse(&["ZZ", "ZZ"]).is_err());
        assert!(PauliStabilizerGroup::parse(&["iZ"]).is_err());
        assert!(PauliStabilizerGroup::parse(&["XX", "ZZ", "YY"]).is_err());
    }

    #[test]
    fn random_groups_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=6 {
            for r in 1..=n {
                random_stabilizer_group(n, r, 40, &mut rng).unwrap();
            }
        }
    }
}
