//! Bit-packed linear algebra over GF(2).

use std::fmt;
use std::str::FromStr;

use crate::error::{MsfError, Result};

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Vector {
    len: usize,
    words: Vec<u64>,
}

impl Gf2Vector {
    pub fn zeros(len: usize) -> Self {
        Gf2Vector {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    /// The unit vector `e_i`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub fn from_values(values: &[u32]) -> Self {
        let mut v = Self::zeros(values.len());
        for (i, &b) in values.iter().enumerate() {
            v.set(i, b & 1 == 1);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, b: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if b {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        let b = self.get(i);
        self.set(i, !b);
    }

    pub fn xor_assign(&mut self, other: &Gf2Vector) {
        assert_eq!(self.len, other.len, "length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn add(&self, other: &Gf2Vector) -> Gf2Vector {
        let mut v = self.clone();
        v.xor_assign(other);
        v
    }

    pub fn dot(&self, other: &Gf2Vector) -> bool {
        assert_eq!(self.len, other.len, "length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }

    pub fn to_values(&self) -> Vec<u32> {
        (0..self.len).map(|i| self.get(i) as u32).collect()
    }

    /// Concatenation `[self | other]`.
    pub fn concat(&self, other: &Gf2Vector) -> Gf2Vector {
        let mut v = Gf2Vector::zeros(self.len + other.len);
        for i in self.ones() {
            v.set(i, true);
        }
        for i in other.ones() {
            v.set(self.len + i, true);
        }
        v
    }
}

impl fmt::Display for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", self.get(i) as u8)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Vector({self})")
    }
}

impl FromStr for Gf2Vector {
    type Err = MsfError;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(MsfError::InvalidArgument(format!(
                    "{s:?} is not a bit string"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Gf2Vector::from_bits(&bits))
    }
}

/// Row-major matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gf2Matrix {
    cols: usize,
    rows: Vec<Gf2Vector>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf2Matrix {
            cols,
            rows: vec![Gf2Vector::zeros(cols); rows],
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<Gf2Vector>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(MsfError::InvalidArgument(format!(
                "row of length {} in a matrix with {cols} columns",
                r.len()
            )));
        }
        Ok(Gf2Matrix { cols, rows })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Gf2Vector]) -> Result<Self> {
        Gf2Matrix::from_rows(rows, columns.to_vec()).map(|m| m.transpose())
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Gf2Vector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &Gf2Vector {
        &self.rows[i]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, b: bool) {
        self.rows[r].set(c, b)
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zeros(self.cols, self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &Gf2Vector) -> Gf2Vector {
        assert_eq!(x.len(), self.cols, "length mismatch");
        Gf2Vector::from_bits(&self.rows.iter().map(|r| r.dot(x)).collect::<Vec<_>>())
    }

    /// Reduced row echelon form with its pivot columns. Zero rows are kept at
    /// the bottom.
    pub fn rref(&self) -> (Gf2Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == m.rows.len() {
                break;
            }
            let Some(p) = (r..m.rows.len()).find(|&i| m.rows[i].get(c)) else {
                continue;
            };
            m.rows.swap(r, p);
            let pivot_row = m.rows[r].clone();
            for (i, row) in m.rows.iter_mut().enumerate() {
                if i != r && row.get(c) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Some solution of `A x = b` (free variables set to 0), or `None`.
    pub fn solve(&self, b: &Gf2Vector) -> Option<Gf2Vector> {
        assert_eq!(b.len(), self.rows.len(), "length mismatch");
        let aug_rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut extra = Gf2Vector::zeros(1);
                extra.set(0, b.get(i));
                r.concat(&extra)
            })
            .collect();
        let aug = Gf2Matrix {
            cols: self.cols + 1,
            rows: aug_rows,
        };
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = Gf2Vector::zeros(self.cols);
        for (r, &c) in pivots.iter().enumerate() {
            x.set(c, red.rows[r].get(self.cols));
        }
        Some(x)
    }

    /// Canonical nullspace basis: one vector per free column in increasing
    /// order, with that free variable 1 and the other free variables 0.
    pub fn nullspace(&self) -> Vec<Gf2Vector> {
        let (red, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = Gf2Vector::unit(self.cols, f);
                for (r, &c) in pivots.iter().enumerate() {
                    if red.rows[r].get(f) {
                        v.set(c, true);
                    }
                }
                v
            })
            .collect()
    }
}

/// Free-function forms.
pub fn gf2_solve(a: &Gf2Matrix, b: &Gf2Vector) -> Option<Gf2Vector> {
    a.solve(b)
}

pub fn gf2_nullspace(a: &Gf2Matrix) -> Vec<Gf2Vector> {
    a.nullspace()
}
