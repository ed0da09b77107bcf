//! Dense exact matrices and the elimination kernels everything else is built on.
//!
//! Matrices act on column vectors from the left, so `a.mul(&b)` applies `b`
//! first. All operations are exact; nothing here rounds.

use std::fmt;

use num_traits::Zero;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Scalar> Matrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { F::one() } else { F::zero() })
    }

    pub fn scalar(n: usize, c: F) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { c.clone() } else { F::zero() })
    }

    pub fn diagonal(entries: &[F]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { F::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Builds an `n × k` matrix whose columns are the given vectors.
    pub fn from_columns(n: usize, columns: &[Vec<F>]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != n) {
            return Err(Error::Shape(format!("column length differs from {n}")));
        }
        Ok(Self::from_fn(n, columns.len(), |i, j| columns[j][i].clone()))
    }

    pub fn column_vector(v: Vec<F>) -> Self {
        Self { rows: v.len(), cols: 1, data: v }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| F::from_int(x)).collect()).collect())
            .expect("rectangular literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j { v.is_one() } else { v.is_zero() }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Entrywise field involution.
    pub fn conj(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(Scalar::conj).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    let acc = std::mem::replace(&mut out.data[idx], F::zero());
                    out.data[idx] = acc + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(self.mul(rhs))
    }

    pub fn apply(&self, x: &[F]) -> Vec<F> {
        assert_eq!(self.cols, x.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum shape mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference shape mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b.clone()).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &F) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.clone() * c.clone()).collect() }
    }

    pub fn hstack(parts: &[&Self]) -> Result<Self> {
        let rows = parts.first().map_or(0, |m| m.rows);
        if parts.iter().any(|m| m.rows != rows) {
            return Err(Error::Shape("hstack row counts differ".into()));
        }
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut offset = 0;
        for m in parts {
            for i in 0..rows {
                for j in 0..m.cols {
                    out.set(i, offset + j, m.get(i, j).clone());
                }
            }
            offset += m.cols;
        }
        Ok(out)
    }

    pub fn vstack(parts: &[&Self]) -> Result<Self> {
        let cols = parts.first().map_or(0, |m| m.cols);
        if parts.iter().any(|m| m.cols != cols) {
            return Err(Error::Shape("vstack column counts differ".into()));
        }
        let rows = parts.iter().map(|m| m.rows).sum();
        let data = parts.iter().flat_map(|m| m.data.iter().cloned()).collect();
        Ok(Self { rows, cols, data })
    }

    pub fn select_columns(&self, cols: std::ops::Range<usize>) -> Self {
        Self::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols.start + j).clone())
    }

    pub fn select_rows(&self, rows: std::ops::Range<usize>) -> Self {
        Self::from_fn(rows.len(), self.cols, |i, j| self.get(rows.start + i, j).clone())
    }

    /// Reduced row echelon form and the strictly increasing pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = self.get(r, c).inv();
            if !inv.is_one() {
                for j in c..cols {
                    let v = std::mem::replace(&mut self.data[r * cols + j], F::zero());
                    self.data[r * cols + j] = v * inv.clone();
                }
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..cols {
                    let pr = self.data[r * cols + j].clone();
                    if pr.is_zero() {
                        continue;
                    }
                    let v = std::mem::replace(&mut self.data[i * cols + j], F::zero());
                    self.data[i * cols + j] = v - factor.clone() * pr;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space, one vector per column.
    pub fn kernel(&self) -> Self {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            out.set(f, k, F::one());
            for (row, &p) in pivots.iter().enumerate() {
                let v = r.get(row, f);
                if !v.is_zero() {
                    out.set(p, k, -v.clone());
                }
            }
        }
        out
    }

    /// Some `x` with `self · x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &Self) -> Result<Option<Self>> {
        if self.rows != b.rows {
            return Err(Error::Shape(format!("solve: {} rows vs {} rows", self.rows, b.rows)));
        }
        let n = self.cols;
        let (r, pivots) = Self::hstack(&[self, b])?.rref();
        if pivots.iter().any(|&p| p >= n) {
            return Ok(None);
        }
        let mut x = Self::zeros(n, b.cols);
        for (row, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, r.get(row, n + j).clone());
            }
        }
        Ok(Some(x))
    }

    /// Two-sided inverse, or `None` when singular or non-square.
    pub fn invert(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Self::hstack(&[self, &Self::identity(n)]).ok()?;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.select_columns(n..2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::identity(self.rows);
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            (0..self.rows)
                .map(|i| Value::Array(self.row(i).iter().map(Scalar::to_json).collect()))
                .collect(),
        )
    }

    /// Parses a JSON array of row arrays.
    pub fn from_json(v: &Value) -> Result<Self> {
        let rows = v.as_array().ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
        let parsed = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?
                    .iter()
                    .map(F::from_json)
                    .collect::<Result<Vec<F>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(parsed)
    }
}

impl<F: Scalar> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use crate::scalar::{rational, GaussianRational, Rational};

    type Q = Matrix<Rational>;
    type C = Matrix<GaussianRational>;

    #[test]
    fn rref_examples() {
        let (r, p) = Q::zeros(2, 2).rref();
        assert_eq!(r, Q::zeros(2, 2));
        assert!(p.is_empty());

        let (r, p) = Q::identity(3).rref();
        assert_eq!(r, Q::identity(3));
        assert_eq!(p, vec![0, 1, 2]);

        let (r, p) = Q::from_ints(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(r, Q::from_ints(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Q::identity(3).kernel().cols(), 0);
        assert_eq!(Q::zeros(2, 2).kernel(), Q::identity(2));
        let m = Q::from_ints(&[&[1, 2], &[2, 4]]);
        let k = m.kernel();
        assert_eq!(k, Q::from_ints(&[&[-2], &[1]]));
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn solve_examples() {
        let b = Q::from_ints(&[&[3], &[-1]]);
        assert_eq!(Q::identity(2).solve(&b).unwrap(), Some(b));
        let a = Q::from_ints(&[&[1, 0], &[0, 0]]);
        assert_eq!(a.solve(&Q::from_ints(&[&[0], &[1]])).unwrap(), None);
        assert!(a.solve(&Q::zeros(3, 1)).is_err());
    }

    #[test]
    fn invert_examples() {
        assert_eq!(Q::identity(3).invert(), Some(Q::identity(3)));
        let m = Q::from_ints(&[&[1, 1], &[0, 1]]);
        let inv = m.invert().unwrap();
        assert_eq!(inv, Q::from_ints(&[&[1, -1], &[0, 1]]));
        assert!(m.mul(&inv).is_identity() && inv.mul(&m).is_identity());
        assert_eq!(Q::from_ints(&[&[1, 2], &[2, 4]]).invert(), None);
        assert_eq!(Q::zeros(2, 3).invert(), None);
    }

    #[test]
    fn complex_inverse() {
        let i = GaussianRational::i();
        let m = C::from_rows(vec![
            vec![GaussianRational::one(), i.clone()],
            vec![i.clone(), GaussianRational::from_ints(2, 0)],
        ])
        .unwrap();
        let inv = m.invert().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert_eq!(m.conj().conj(), m);
    }

    #[test]
    fn json_round_trip() {
        let m = Q::from_rows(vec![vec![rational(1, 2), rational(-3, 1)]]).unwrap();
        let v = m.to_json();
        assert_eq!(v, serde_json::json!([["1/2", "-3"]]));
        assert_eq!(Q::from_json(&v).unwrap(), m);
        assert!(Q::from_json(&serde_json::json!([["1"], ["1", "2"]])).is_err());
    }
}
