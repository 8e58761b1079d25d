use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Ring;
use crate::error::{Error, Result};

/// Dense row-major matrix with exact entries in a [`Ring`].
///
/// Entries over F_p are always stored reduced to `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl Matrix {
    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Self {
        Matrix { ring, rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_vec(ring: Ring, rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        let data = data.into_iter().map(|a| ring.reduce(a)).collect();
        Ok(Matrix { ring, rows, cols, data })
    }

    /// Builds from nested rows; `cols` is needed to shape matrices with no rows.
    pub fn from_rows<T: Into<BigInt> + Clone>(ring: Ring, cols: usize, rows: &[Vec<T>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Dimension(format!("row {r} has {} entries, expected {cols}", row.len())));
            }
            data.extend(row.iter().cloned().map(Into::into));
        }
        Self::from_vec(ring, rows.len(), cols, data)
    }

    /// Shorthand for small literal matrices in tests and examples.
    pub fn from_i64(ring: Ring, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let nested: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        Self::from_rows(ring, cols, &nested).expect("ragged literal matrix")
    }

    pub fn from_fn(ring: Ring, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(ring.reduce(f(r, c)));
            }
        }
        Matrix { ring, rows, cols, data }
    }

    pub fn diagonal(ring: Ring, entries: &[BigInt]) -> Self {
        let n = entries.len();
        Self::from_fn(ring, n, n, |r, c| if r == c { entries[r].clone() } else { BigInt::zero() })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigInt) {
        self.data[r * self.cols + c] = self.ring.reduce(value);
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let a = self.get(r, c);
                    if r == c { a.is_one() } else { a.is_zero() }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.ring, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let data = self.data.iter().map(|a| self.ring.reduce(a * k)).collect();
        Matrix { ring: self.ring, rows: self.rows, cols: self.cols, data }
    }

    pub fn try_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_ring(rhs)?;
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = vec![BigInt::zero(); self.rows * rhs.cols];
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                let out_row = &mut out[r * rhs.cols..(r + 1) * rhs.cols];
                for (o, b) in out_row.iter_mut().zip(rhs.row(k)) {
                    if !b.is_zero() {
                        *o += a * b;
                    }
                }
            }
        }
        let data = out.into_iter().map(|a| self.ring.reduce(a)).collect();
        Ok(Matrix { ring: self.ring, rows: self.rows, cols: rhs.cols, data })
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|r| {
                let s: BigInt = self.row(r).iter().zip(v).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum();
                self.ring.reduce(s)
            })
            .collect()
    }

    fn zip_with(&self, rhs: &Matrix, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Result<Matrix> {
        self.check_ring(rhs)?;
        if self.shape() != rhs.shape() {
            return Err(Error::Dimension(format!(
                "shapes {:?} and {:?} differ",
                self.shape(),
                rhs.shape()
            )));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| self.ring.reduce(f(a, b))).collect();
        Ok(Matrix { ring: self.ring, rows: self.rows, cols: self.cols, data })
    }

    pub fn try_add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn try_sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, |a, b| a - b)
    }

    fn check_ring(&self, rhs: &Matrix) -> Result<()> {
        if self.ring != rhs.ring {
            return Err(Error::RingMismatch(self.ring.label(), rhs.ring.label()));
        }
        Ok(())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.ring, idx.len(), self.cols, |r, c| self.get(idx[r], c).clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.ring, self.rows, idx.len(), |r, c| self.get(r, idx[c]).clone())
    }

    pub fn row_range(&self, start: usize, end: usize) -> Self {
        let idx: Vec<usize> = (start..end).collect();
        self.select_rows(&idx)
    }

    pub fn col_range(&self, start: usize, end: usize) -> Self {
        let idx: Vec<usize> = (start..end).collect();
        self.select_cols(&idx)
    }

    /// Side-by-side concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &Matrix) -> Self {
        assert_eq!(self.rows, rhs.rows, "hstack row mismatch");
        Self::from_fn(self.ring, self.rows, self.cols + rhs.cols, |r, c| {
            if c < self.cols { self.get(r, c).clone() } else { rhs.get(r, c - self.cols).clone() }
        })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, rhs: &Matrix) -> Self {
        assert_eq!(self.cols, rhs.cols, "vstack column mismatch");
        Self::from_fn(self.ring, self.rows + rhs.rows, self.cols, |r, c| {
            if r < self.rows { self.get(r, c).clone() } else { rhs.get(r - self.rows, c).clone() }
        })
    }

    /// `[[a, 0], [0, b]]`.
    pub fn block_diag(&self, rhs: &Matrix) -> Self {
        let (r0, c0) = self.shape();
        Self::from_fn(self.ring, r0 + rhs.rows, c0 + rhs.cols, |r, c| {
            if r < r0 && c < c0 {
                self.get(r, c).clone()
            } else if r >= r0 && c >= c0 {
                rhs.get(r - r0, c - c0).clone()
            } else {
                BigInt::zero()
            }
        })
    }

    /// Assembles a 2x2 block matrix; block shapes must agree.
    pub fn blocks(tl: &Matrix, tr: &Matrix, bl: &Matrix, br: &Matrix) -> Self {
        tl.hstack(tr).vstack(&bl.hstack(br))
    }

    /// Largest absolute value of an entry, as a bit length.
    pub fn max_bits(&self) -> u64 {
        self.data.iter().map(|a| a.bits()).max().unwrap_or(0)
    }
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &'a Matrix) -> Matrix {
        self.try_mul(rhs).expect("matrix product")
    }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn add(self, rhs: &'a Matrix) -> Matrix {
        self.try_add(rhs).expect("matrix sum")
    }
}

impl<'a> Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &'a Matrix) -> Matrix {
        self.try_sub(rhs).expect("matrix difference")
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        let data = self.data.iter().map(|a| self.ring.reduce(-a)).collect();
        Matrix { ring: self.ring, rows: self.rows, cols: self.cols, data }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<{}>{}x{}", self.ring, self.rows, self.cols)?;
        f.debug_list().entries(self.to_rows().iter().map(|r| r.iter().map(|a| a.to_string()).collect::<Vec<_>>())).finish()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .to_rows()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_identity() {
        let z = Ring::Integers;
        let a = Matrix::from_i64(z, &[&[1, 2], &[3, 4]]);
        let i = Matrix::identity(z, 2);
        assert_eq!(&a * &i, a);
        assert_eq!(&a * &a, Matrix::from_i64(z, &[&[7, 10], &[15, 22]]));
    }

    #[test]
    fn field_entries_are_reduced() {
        let f3 = Ring::PrimeField(3);
        let a = Matrix::from_i64(f3, &[&[4, -1]]);
        assert_eq!(a.row(0), &[BigInt::from(1), BigInt::from(2)]);
    }

    #[test]
    fn empty_shapes_multiply() {
        let z = Ring::Integers;
        let a = Matrix::zeros(z, 0, 3);
        let b = Matrix::zeros(z, 3, 2);
        assert_eq!((&a * &b).shape(), (0, 2));
        let c = Matrix::zeros(z, 2, 0);
        let d = Matrix::zeros(z, 0, 2);
        assert!((&c * &d).is_zero());
    }

    #[test]
    fn mismatch_is_an_error() {
        let z = Ring::Integers;
        assert!(Matrix::zeros(z, 2, 3).try_mul(&Matrix::zeros(z, 2, 3)).is_err());
        assert!(Matrix::zeros(z, 1, 1).try_mul(&Matrix::zeros(Ring::PrimeField(2), 1, 1)).is_err());
    }
}
