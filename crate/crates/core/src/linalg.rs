//! Exact linear algebra over the rationals.
//!
//! Ranks and determinants go through fraction-free (Bareiss) elimination on
//! big integers with full pivoting. Every rational matrix is first cleared of
//! denominators row by row, which scales rows by nonzero constants and so
//! leaves the rank unchanged. Nothing in here ever compares against a
//! tolerance.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::cmp::Ordering;

/// Dense row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    /// Builds a matrix from rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        RationalMatrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Sub-matrix made of the given rows, in the given order.
    pub fn select_rows(&self, which: &[usize]) -> Self {
        let mut data = Vec::with_capacity(which.len() * self.cols);
        for &r in which {
            data.extend_from_slice(self.row(r));
        }
        RationalMatrix {
            rows: which.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Clears denominators row by row.
    pub fn to_integer_rows(&self) -> IntMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for r in 0..self.rows {
            let row = self.row(r);
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            data.extend(row.iter().map(|v| v.numer() * (&lcm / v.denom())));
        }
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn rank(&self) -> usize {
        self.to_integer_rows().rank()
    }
}

/// Dense row-major matrix of big integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    /// Exact rank by fraction-free elimination with full pivoting.
    pub fn rank(&self) -> usize {
        self.clone().bareiss().rank
    }

    /// Exact determinant; `None` for non-square input.
    pub fn determinant(&self) -> Option<BigInt> {
        if self.rows != self.cols {
            return None;
        }
        if self.rows == 0 {
            return Some(BigInt::one());
        }
        let out = self.clone().bareiss();
        if out.rank < self.rows {
            return Some(BigInt::zero());
        }
        let det = out.last_pivot;
        Some(if out.negate { -det } else { det })
    }

    fn bareiss(mut self) -> Elimination {
        let (rows, cols) = (self.rows, self.cols);
        let mut prev = BigInt::one();
        let mut negate = false;
        let mut rank = 0;
        for k in 0..rows.min(cols) {
            // Smallest nonzero entry keeps intermediate growth down; any
            // nonzero pivot is exact.
            let mut best: Option<(usize, usize, u64)> = None;
            for i in k..rows {
                for j in k..cols {
                    let v = &self.data[i * cols + j];
                    if !v.is_zero() {
                        let bits = v.bits();
                        if best.is_none_or(|(_, _, b)| bits < b) {
                            best = Some((i, j, bits));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = best else { break };
            if pi != k {
                for j in 0..cols {
                    self.data.swap(pi * cols + j, k * cols + j);
                }
                negate = !negate;
            }
            if pj != k {
                for i in 0..rows {
                    self.data.swap(i * cols + pj, i * cols + k);
                }
                negate = !negate;
            }
            rank += 1;
            let pivot = self.data[k * cols + k].clone();
            for i in (k + 1)..rows {
                let lead = std::mem::take(&mut self.data[i * cols + k]);
                if lead.is_zero() {
                    if !prev.is_one() || !pivot.is_one() {
                        for j in (k + 1)..cols {
                            let idx = i * cols + j;
                            let v = &self.data[idx] * &pivot;
                            self.data[idx] = v / &prev;
                        }
                    }
                    continue;
                }
                for j in (k + 1)..cols {
                    let idx = i * cols + j;
                    let v = &self.data[idx] * &pivot - &lead * &self.data[k * cols + j];
                    self.data[idx] = if prev.is_one() { v } else { v / &prev };
                }
            }
            prev = pivot;
        }
        Elimination {
            rank,
            last_pivot: prev,
            negate,
        }
    }
}

struct Elimination {
    rank: usize,
    last_pivot: BigInt,
    negate: bool,
}

/// Exact determinant of a square rational matrix.
pub fn determinant(m: &RationalMatrix) -> BigRational {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    // Row scaling by the lcm of denominators multiplies det by their product.
    let mut scale = BigInt::one();
    for r in 0..m.rows {
        let lcm = m.row(r).iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        scale *= lcm;
    }
    let det = m
        .to_integer_rows()
        .determinant()
        .expect("square matrix");
    BigRational::new(det, scale)
}

/// Sign of the determinant as -1, 0 or 1.
pub fn determinant_sign(m: &RationalMatrix) -> i8 {
    match determinant(m).cmp(&BigRational::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// Solves `a * x = b` exactly. Returns `None` when `a` is singular.
pub fn solve(a: &RationalMatrix, b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.rows;
    assert_eq!(a.cols, n, "solve needs a square matrix");
    assert_eq!(b.len(), n, "right-hand side length");
    let w = n + 1;
    let mut aug: Vec<BigRational> = Vec::with_capacity(n * w);
    for r in 0..n {
        aug.extend_from_slice(a.row(r));
        aug.push(b[r].clone());
    }
    for k in 0..n {
        let p = (k..n).find(|&i| !aug[i * w + k].is_zero())?;
        if p != k {
            for j in 0..w {
                aug.swap(p * w + j, k * w + j);
            }
        }
        let pivot = aug[k * w + k].clone();
        for j in k..w {
            aug[k * w + j] = &aug[k * w + j] / &pivot;
        }
        for i in 0..n {
            if i == k || aug[i * w + k].is_zero() {
                continue;
            }
            let f = aug[i * w + k].clone();
            for j in k..w {
                let v = &aug[k * w + j] * &f;
                aug[i * w + j] -= v;
            }
        }
    }
    Some((0..n).map(|r| aug[r * w + n].clone()).collect())
}
