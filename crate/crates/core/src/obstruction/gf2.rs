//! Dense linear algebra over GF(2).

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gf2Vector {
    len: usize,
    words: Vec<u64>,
}

impl Gf2Vector {
    pub fn zeros(len: usize) -> Self {
        Gf2Vector {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_ones<I: IntoIterator<Item = usize>>(len: usize, ones: I) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
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
        assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        if self.get(i) != bit {
            self.flip(i);
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &Gf2Vector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn dot(&self, other: &Gf2Vector) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    ncols: usize,
    rows: Vec<Gf2Vector>,
}

impl Gf2Matrix {
    pub fn new(ncols: usize, rows: Vec<Gf2Vector>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch {
                expected: ncols,
                found: r.len(),
            });
        }
        Ok(Gf2Matrix { ncols, rows })
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Gf2Vector] {
        &self.rows
    }

    /// `c · M`, the sum of the rows selected by `c`.
    pub fn left_mul(&self, c: &Gf2Vector) -> Result<Gf2Vector> {
        if c.len() != self.nrows() {
            return Err(Error::DimensionMismatch {
                expected: self.nrows(),
                found: c.len(),
            });
        }
        let mut out = Gf2Vector::zeros(self.ncols);
        for i in c.ones() {
            out.xor_assign(&self.rows[i]);
        }
        Ok(out)
    }

    /// `M · y`, one bit per row.
    pub fn right_mul(&self, y: &Gf2Vector) -> Result<Gf2Vector> {
        if y.len() != self.ncols {
            return Err(Error::DimensionMismatch {
                expected: self.ncols,
                found: y.len(),
            });
        }
        Ok(Gf2Vector::from_ones(
            self.nrows(),
            self.rows
                .iter()
                .enumerate()
                .filter(|(_, r)| r.dot(y))
                .map(|(i, _)| i),
        ))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gf2Solution {
    /// `combination · M = v`.
    Solvable { combination: Gf2Vector, rank: usize },
    /// `M · witness = 0` but `v · witness = 1`, so `v` is not in the row space.
    Infeasible { witness: Gf2Vector, rank: usize },
}

/// Decides whether `v` lies in the row space of `m`, with a certificate
/// either way.
pub fn gf2_solve(m: &Gf2Matrix, v: &Gf2Vector) -> Result<Gf2Solution> {
    if v.len() != m.ncols {
        return Err(Error::DimensionMismatch {
            expected: m.ncols,
            found: v.len(),
        });
    }
    let nrows = m.nrows();
    let mut rows: Vec<(Gf2Vector, Gf2Vector)> = m
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| (r.clone(), Gf2Vector::from_ones(nrows, [i])))
        .collect();

    // Reduced row echelon form, tracking which original rows make up each row.
    let mut pivots: Vec<usize> = Vec::new();
    let mut next = 0;
    for col in 0..m.ncols {
        let Some(p) = (next..rows.len()).find(|&r| rows[r].0.get(col)) else {
            continue;
        };
        rows.swap(next, p);
        let (pivot_row, pivot_combo) = rows[next].clone();
        for (r, (row, combo)) in rows.iter_mut().enumerate() {
            if r != next && row.get(col) {
                row.xor_assign(&pivot_row);
                combo.xor_assign(&pivot_combo);
            }
        }
        pivots.push(col);
        next += 1;
    }
    let rank = pivots.len();

    let mut residual = v.clone();
    let mut combination = Gf2Vector::zeros(nrows);
    for (i, &col) in pivots.iter().enumerate() {
        if residual.get(col) {
            residual.xor_assign(&rows[i].0);
            combination.xor_assign(&rows[i].1);
        }
    }
    match residual.first_one() {
        None => Ok(Gf2Solution::Solvable { combination, rank }),
        Some(free) => {
            // Null vector for the free column `free`; the residual is zero on
            // pivot columns, so its dot product with this vector is 1.
            let mut witness = Gf2Vector::from_ones(m.ncols, [free]);
            for (i, &col) in pivots.iter().enumerate() {
                if rows[i].0.get(free) {
                    witness.flip(col);
                }
            }
            Ok(Gf2Solution::Infeasible { witness, rank })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn matrix(ncols: usize, rows: &[&[usize]]) -> Gf2Matrix {
        Gf2Matrix::new(
            ncols,
            rows.iter()
                .map(|r| Gf2Vector::from_ones(ncols, r.iter().copied()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn small_systems() {
        let m = matrix(3, &[&[0, 1], &[1, 2]]);
        let v = Gf2Vector::from_ones(3, [0, 2]);
        let Gf2Solution::Solvable { combination, rank } = gf2_solve(&m, &v).unwrap() else {
            panic!()
        };
        assert_eq!(rank, 2);
        assert_eq!(m.left_mul(&combination).unwrap(), v);

        let v = Gf2Vector::from_ones(3, [0]);
        let Gf2Solution::Infeasible { witness, .. } = gf2_solve(&m, &v).unwrap() else {
            panic!()
        };
        assert!(m.right_mul(&witness).unwrap().is_zero());
        assert!(v.dot(&witness));
    }

    #[test]
    fn zero_vector_is_solvable() {
        let m = matrix(4, &[&[0, 3]]);
        let Gf2Solution::Solvable { combination, .. } =
            gf2_solve(&m, &Gf2Vector::zeros(4)).unwrap()
        else {
            panic!()
        };
        assert!(combination.is_zero());
        assert!(gf2_solve(&m, &Gf2Vector::zeros(3)).is_err());
    }

    #[test]
    fn wide_vectors_span_words() {
        let mut v = Gf2Vector::zeros(130);
        v.flip(0);
        v.flip(64);
        v.flip(129);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(v.count_ones(), 3);
        v.set(64, false);
        assert_eq!(v.first_one(), Some(0));
    }

    proptest! {
        #[test]
        fn certificates_always_check(
            bits in proptest::collection::vec(proptest::collection::vec(any::<bool>(), 9), 0..12),
            target in proptest::collection::vec(any::<bool>(), 9),
        ) {
            let rows: Vec<Gf2Vector> = bits
                .iter()
                .map(|r| Gf2Vector::from_ones(9, r.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i)))
                .collect();
            let m = Gf2Matrix::new(9, rows).unwrap();
            let v = Gf2Vector::from_ones(9, target.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i));
            match gf2_solve(&m, &v).unwrap() {
                Gf2Solution::Solvable { combination, .. } => {
                    prop_assert_eq!(m.left_mul(&combination).unwrap(), v);
                }
                Gf2Solution::Infeasible { witness, .. } => {
                    prop_assert!(m.right_mul(&witness).unwrap().is_zero());
                    prop_assert!(v.dot(&witness));
                }
            }
        }
    }
}
