use std::fmt;

use num_rational::BigRational;

use crate::field::{FieldElem, FieldError, Point};

use super::{LinalgError, Ring};

/// Row-major dense matrix with optional basis labels.
#[derive(Clone)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
}

impl<T: PartialEq> PartialEq for Mat<T> {
    fn eq(&self, o: &Self) -> bool {
        self.rows == o.rows && self.cols == o.cols && self.data == o.data
    }
}

impl<T: fmt::Debug> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        Ok(())
    }
}

impl<T> Mat<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length does not match {}x{}", rows, cols);
        Mat { rows, cols, data, row_labels: Vec::new(), col_labels: Vec::new() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::from_vec(rows, cols, data)
    }

    pub fn with_labels(mut self, rows: Vec<String>, cols: Vec<String>) -> Self {
        debug_assert!(rows.is_empty() || rows.len() == self.rows);
        debug_assert!(cols.is_empty() || cols.len() == self.cols);
        self.row_labels = rows;
        self.col_labels = cols;
        self
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
            row_labels: self.row_labels.clone(),
            col_labels: self.col_labels.clone(),
        }
    }

    pub fn try_map<U, E>(&self, f: impl Fn(&T) -> Result<U, E>) -> Result<Mat<U>, E> {
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_, _>>()?,
            row_labels: self.row_labels.clone(),
            col_labels: self.col_labels.clone(),
        })
    }
}

impl<T: Ring> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_vec(rows, cols, vec![T::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diag(d: &[T]) -> Self {
        let n = d.len();
        Self::from_fn(n, n, |i, j| if i == j { d[i].clone() } else { T::zero() })
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn from_columns(rows: usize, cols: &[Vec<T>]) -> Self {
        Self::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
            .with_labels(self.col_labels.clone(), self.row_labels.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn add(&self, o: &Self) -> Result<Self, LinalgError> {
        self.zip(o, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, o: &Self) -> Result<Self, LinalgError> {
        self.zip(o, |a, b| a.clone() - b.clone())
    }

    fn zip(&self, o: &Self, f: impl Fn(&T, &T) -> T) -> Result<Self, LinalgError> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(LinalgError::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let data = self.data.iter().zip(o.data.iter()).map(|(a, b)| f(a, b)).collect();
        Ok(Mat { data, ..self.clone() })
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| if x.is_zero() { T::zero() } else { x.clone() * c.clone() })
    }

    /// Product skipping zero entries.
    pub fn mul(&self, o: &Self) -> Result<Self, LinalgError> {
        if self.cols != o.rows {
            return Err(LinalgError::Dimension(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out: Vec<T> = vec![T::zero(); self.rows * o.cols];
        for i in 0..self.rows {
            for kk in 0..self.cols {
                let a = self.get(i, kk);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(kk, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cell = &mut out[i * o.cols + j];
                    *cell = cell.clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(Mat::from_vec(self.rows, o.cols, out).with_labels(self.row_labels.clone(), o.col_labels.clone()))
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>, LinalgError> {
        if self.cols != v.len() {
            return Err(LinalgError::Dimension(format!("{}x{} * vector of {}", self.rows, self.cols, v.len())));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + a.clone() * b.clone();
                    }
                }
                acc
            })
            .collect())
    }

    /// Kronecker product self ⊗ o.
    pub fn kron(&self, o: &Self) -> Self {
        Mat::from_fn(self.rows * o.rows, self.cols * o.cols, |i, j| {
            let a = self.get(i / o.rows, j / o.cols);
            if a.is_zero() {
                return T::zero();
            }
            let b = o.get(i % o.rows, j % o.cols);
            if b.is_zero() {
                T::zero()
            } else {
                a.clone() * b.clone()
            }
        })
    }

    /// Index of the first column that differs, if any.
    pub fn first_difference(&self, o: &Self) -> Option<(usize, usize)> {
        for j in 0..self.cols {
            for i in 0..self.rows {
                if self.get(i, j) != o.get(i, j) {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

impl Mat<FieldElem> {
    pub fn eval_at(&self, pt: &Point) -> Result<Mat<BigRational>, FieldError> {
        self.try_map(|x| x.eval_at(pt))
    }
}
