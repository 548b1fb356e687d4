use serde::{Deserialize, Serialize};

use crate::error::{MsfError, Result};

/// Associativity is checked exhaustively up to this order.
const ASSOC_CHECK_LIMIT: usize = 64;

/// A finite group given by its Cayley table. Elements are `0..order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TableRepr", into = "TableRepr")]
pub struct FiniteGroupTable {
    name: String,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    identity: usize,
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    name: String,
    mul: Vec<Vec<usize>>,
}

impl TryFrom<TableRepr> for FiniteGroupTable {
    type Error = MsfError;
    fn try_from(r: TableRepr) -> Result<Self> {
        FiniteGroupTable::from_table(r.name, r.mul)
    }
}

impl From<FiniteGroupTable> for TableRepr {
    fn from(g: FiniteGroupTable) -> Self {
        TableRepr {
            name: g.name,
            mul: g.mul,
        }
    }
}

impl FiniteGroupTable {
    /// Build from `mul[a][b] = a·b`, validating the group axioms.
    pub fn from_table(name: impl Into<String>, mul: Vec<Vec<usize>>) -> Result<Self> {
        let n = mul.len();
        let bad = |m: String| MsfError::InvalidArgument(format!("group table: {m}"));
        if n == 0 {
            return Err(bad("empty".into()));
        }
        for row in &mul {
            if row.len() != n || row.iter().any(|&c| c >= n) {
                return Err(bad(
                    "rows must have length `order` with entries < order".into()
                ));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| mul[e][g] == g && mul[g][e] == g))
            .ok_or_else(|| bad("no identity element".into()))?;
        let inv = mul
            .iter()
            .enumerate()
            .map(|(g, row)| {
                (0..n)
                    .find(|&h| row[h] == identity && mul[h][g] == identity)
                    .ok_or_else(|| bad(format!("element {g} has no inverse")))
            })
            .collect::<Result<Vec<_>>>()?;
        if n <= ASSOC_CHECK_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                            return Err(bad(format!("({a}·{b})·{c} != {a}·({b}·{c})")));
                        }
                    }
                }
            }
        }
        Ok(FiniteGroupTable {
            name: name.into(),
            mul,
            inv,
            identity,
        })
    }

    /// The cyclic group `Z_n` under addition.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(MsfError::InvalidArgument("Z_0 is not a group".into()));
        }
        let mul = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Self::from_table(format!("Z{n}"), mul)
    }

    /// The symmetric group on `m` letters; elements are permutations in
    /// lexicographic order, `(a·b)(i) = a(b(i))`.
    pub fn symmetric(m: usize) -> Result<Self> {
        if m == 0 || m > 5 {
            return Err(MsfError::InvalidArgument(format!("S{m} is not supported")));
        }
        let perms = permutations(m);
        let pos = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("closed");
        let mul = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| pos(&(0..m).map(|i| a[b[i]]).collect()))
                    .collect()
            })
            .collect();
        Self::from_table(format!("S{m}"), mul)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `g^s` for a signature `s = ±1`.
    pub fn signed(&self, g: usize, positive: bool) -> usize {
        if positive {
            g
        } else {
            self.inv[g]
        }
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul[a][b] == self.mul[b][a]))
    }
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_is_nonabelian_of_order_6() {
        let g = FiniteGroupTable::symmetric(3).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        assert_eq!(g.identity(), 0);
        for a in 0..6 {
            assert_eq!(g.mul(a, g.inv(a)), g.identity());
        }
    }

    #[test]
    fn cyclic_inverse() {
        let z4 = FiniteGroupTable::cyclic(4).unwrap();
        assert_eq!(z4.inv(1), 3);
        assert!(z4.is_abelian());
    }

    #[test]
    fn rejects_non_associative() {
        // a quasigroup with identity 0 that is not associative
        let mul = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(FiniteGroupTable::from_table("bad", mul).is_err());
    }

    #[test]
    fn rejects_missing_identity() {
        assert!(FiniteGroupTable::from_table("bad", vec![vec![1, 0], vec![1, 0]]).is_err());
    }
}
