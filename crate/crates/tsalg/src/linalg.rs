//! Dense matrices over `F_p` with Gaussian elimination.
//!
//! Pivots are always the first nonzero entry in scan order, so every
//! derived basis (nullspace, row echelon span) is deterministic.

use crate::error::Error;
use crate::field::PrimeField;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub field: PrimeField,
    pub rows: usize,
    pub cols: usize,
    data: Vec<u64>,
}

impl Matrix {
    pub fn zero(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: PrimeField, rows: Vec<Vec<u64>>) -> Result<Self, Error> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::MatrixShape("ragged row lengths".to_string()));
        }
        let data = rows
            .into_iter()
            .flatten()
            .map(|c| field.reduce(c))
            .collect();
        Ok(Matrix {
            field,
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = self.field.reduce(v);
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, Error> {
        if self.cols != other.rows {
            return Err(Error::MatrixShape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut out = Matrix::zero(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = f.add(out.get(r, c), f.mul(a, other.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, Error> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::MatrixShape("addition shape mismatch".to_string()));
        }
        let mut out = self.clone();
        for i in 0..self.data.len() {
            out.data[i] = self.field.add(self.data[i], other.data[i]);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, Error> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::MatrixShape("subtraction shape mismatch".to_string()));
        }
        let mut out = self.clone();
        for i in 0..self.data.len() {
            out.data[i] = self.field.sub(self.data[i], other.data[i]);
        }
        Ok(out)
    }

    pub fn scale(&self, c: u64) -> Matrix {
        let c = self.field.reduce(c);
        let mut out = self.clone();
        for v in out.data.iter_mut() {
            *v = self.field.mul(*v, c);
        }
        out
    }

    /// Row vector times matrix (right-module convention).
    pub fn act_row(&self, v: &[u64]) -> Result<Vec<u64>, Error> {
        if v.len() != self.rows {
            return Err(Error::MatrixShape("row vector length".to_string()));
        }
        let f = self.field;
        let mut out = vec![0u64; self.cols];
        for (r, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for c in 0..self.cols {
                out[c] = f.add(out[c], f.mul(x, self.get(r, c)));
            }
        }
        Ok(out)
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r >= self.rows {
                break;
            }
            // first nonzero entry below r in column c
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for k in 0..self.cols {
                    let a = self.get(r, k);
                    let b = self.get(pr, k);
                    self.set(r, k, b);
                    self.set(pr, k, a);
                }
            }
            let inv = f.inv(self.get(r, c)).unwrap();
            for k in 0..self.cols {
                self.set(r, k, f.mul(self.get(r, k), inv));
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor == 0 {
                    continue;
                }
                for k in 0..self.cols {
                    let v = f.sub(self.get(i, k), f.mul(factor, self.get(r, k)));
                    self.set(i, k, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of `{ v : M v = 0 }` (column vectors, returned as coordinate
    /// vectors), with free variables set to unit values in column order.
    pub fn nullspace_basis(&self) -> Vec<Vec<u64>> {
        let f = self.field;
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = Some(row);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![0u64; self.cols];
            vec[free] = 1;
            for (col, piv) in pivot_set.iter().enumerate() {
                if let Some(row) = piv {
                    vec[col] = f.neg(m.get(*row, free));
                }
            }
            basis.push(vec);
        }
        basis
    }

    /// One solution of `M x = b` (free variables zero), or `None` if
    /// inconsistent.
    pub fn solve(&self, b: &[u64]) -> Result<Option<Vec<u64>>, Error> {
        if b.len() != self.rows {
            return Err(Error::MatrixShape("rhs length".to_string()));
        }
        let mut aug = Matrix::zero(self.field, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, b[r]);
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u64; self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = aug.get(row, self.cols);
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Matrix, Error> {
        if self.rows != self.cols {
            return Err(Error::MatrixShape("inverse of non-square".to_string()));
        }
        let n = self.rows;
        let mut aug = Matrix::zero(self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, 1);
        }
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return Err(Error::Singular);
        }
        let mut out = Matrix::zero(self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, aug.get(r, n + c));
            }
        }
        Ok(out)
    }

    /// Kronecker product, row-major block layout.
    pub fn kronecker(&self, other: &Matrix) -> Matrix {
        let f = self.field;
        let mut out = Matrix::zero(f, self.rows * other.rows, self.cols * other.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.get(r1, c1);
                if a == 0 {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        out.set(
                            r1 * other.rows + r2,
                            c1 * other.cols + c2,
                            f.mul(a, other.get(r2, c2)),
                        );
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }
}

/// Maintains a row space under incremental insertion, in reduced echelon
/// form. `insert` reports whether the vector enlarged the span.
#[derive(Debug, Clone)]
pub struct RowSpan {
    field: PrimeField,
    cols: usize,
    // rows sorted by pivot column, each with leading 1 and cleared pivots
    rows: Vec<Vec<u64>>,
}

impl RowSpan {
    pub fn new(field: PrimeField, cols: usize) -> Self {
        RowSpan {
            field,
            cols,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&c| c == 0)
    }

    fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let f = self.field;
        let mut v: Vec<u64> = v.iter().map(|&c| f.reduce(c)).collect();
        for row in &self.rows {
            let pivot = row.iter().position(|&c| c != 0).unwrap();
            let factor = v[pivot];
            if factor != 0 {
                for i in 0..self.cols {
                    v[i] = f.sub(v[i], f.mul(factor, row[i]));
                }
            }
        }
        v
    }

    pub fn insert(&mut self, v: &[u64]) -> bool {
        let f = self.field;
        let mut v = self.reduce(v);
        let Some(pivot) = v.iter().position(|&c| c != 0) else {
            return false;
        };
        let inv = f.inv(v[pivot]).unwrap();
        for c in v.iter_mut() {
            *c = f.mul(*c, inv);
        }
        // clear this pivot from existing rows to keep the form reduced
        for row in self.rows.iter_mut() {
            let factor = row[pivot];
            if factor != 0 {
                for i in 0..self.cols {
                    row[i] = f.sub(row[i], f.mul(factor, v[i]));
                }
            }
        }
        let at = self
            .rows
            .iter()
            .position(|row| row.iter().position(|&c| c != 0).unwrap() > pivot)
            .unwrap_or(self.rows.len());
        self.rows.insert(at, v);
        true
    }
}
