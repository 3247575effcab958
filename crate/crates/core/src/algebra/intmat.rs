//! Square integer matrices of runtime dimension.
//!
//! Gadget matrices are overwhelmingly zero (direct sums and Kronecker products of
//! 2×2 blocks), so entries are kept as sorted per-row lists of nonzeros. Indices
//! are 0-based: `E_k` has its single one at `(0, k - 1)`.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix must be square and non-empty, got {rows} rows with a row of length {cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("entry ({row}, {col}) below the diagonal is nonzero")]
    NotUpperTriangular { row: usize, col: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMat {
    dim: usize,
    rows: Vec<Vec<(usize, BigInt)>>,
}

impl IntMat {
    pub fn zeros(dim: usize) -> Self {
        IntMat {
            dim,
            rows: vec![Vec::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let rows = (0..dim).map(|i| vec![(i, BigInt::one())]).collect();
        IntMat { dim, rows }
    }

    /// Builds a matrix from dense rows.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self, MatrixError> {
        let dim = rows.len();
        if dim == 0 {
            return Err(MatrixError::NotSquare { rows: 0, cols: 0 });
        }
        let mut out = IntMat::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(MatrixError::NotSquare {
                    rows: dim,
                    cols: row.len(),
                });
            }
            for (j, v) in row.iter().enumerate() {
                let v: BigInt = v.clone().into();
                if !v.is_zero() {
                    out.rows[i].push((j, v));
                }
            }
        }
        Ok(out)
    }

    /// Like [`IntMat::from_rows`], but rejects nonzero entries below the diagonal.
    pub fn upper_triangular<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self, MatrixError> {
        let m = IntMat::from_rows(rows)?;
        m.check_upper_triangular()?;
        Ok(m)
    }

    /// Builds a matrix from `(row, col, value)` triples; later triples overwrite earlier ones.
    pub fn from_entries(dim: usize, entries: impl IntoIterator<Item = (usize, usize, BigInt)>) -> Self {
        let mut m = IntMat::zeros(dim);
        for (i, j, v) in entries {
            m.set(i, j, v);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        match self.rows[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(pos) => self.rows[i][pos].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        assert!(i < self.dim && j < self.dim, "index ({i}, {j}) out of range");
        let row = &mut self.rows[i];
        match row.binary_search_by_key(&j, |(c, _)| *c) {
            Ok(pos) if v.is_zero() => {
                row.remove(pos);
            }
            Ok(pos) => row[pos].1 = v,
            Err(_) if v.is_zero() => {}
            Err(pos) => row.insert(pos, (j, v)),
        }
    }

    /// Nonzero entries in row-major order.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut dense = vec![vec![BigInt::zero(); self.dim]; self.dim];
        for (i, j, v) in self.nonzeros() {
            dense[i][j] = v.clone();
        }
        dense
    }

    pub fn check_upper_triangular(&self) -> Result<(), MatrixError> {
        match self.nonzeros().find(|(i, j, _)| j < i) {
            Some((row, col, _)) => Err(MatrixError::NotUpperTriangular { row, col }),
            None => Ok(()),
        }
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.check_upper_triangular().is_ok()
    }

    pub fn scale(&self, c: &BigInt) -> IntMat {
        if c.is_zero() {
            return IntMat::zeros(self.dim);
        }
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().map(|(j, v)| (*j, v * c)).collect())
            .collect();
        IntMat { dim: self.dim, rows }
    }

    pub fn checked_mul(&self, rhs: &IntMat) -> Result<IntMat, MatrixError> {
        if self.dim != rhs.dim {
            return Err(MatrixError::DimensionMismatch(self.dim, rhs.dim));
        }
        let mut acc: Vec<BigInt> = vec![BigInt::zero(); self.dim];
        let mut touched: Vec<usize> = Vec::new();
        let mut rows = Vec::with_capacity(self.dim);
        for row in &self.rows {
            for (l, a) in row {
                for (j, b) in &rhs.rows[*l] {
                    if acc[*j].is_zero() {
                        touched.push(*j);
                    }
                    acc[*j] += a * b;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let mut out_row = Vec::with_capacity(touched.len());
            for &j in &touched {
                let v = std::mem::take(&mut acc[j]);
                if !v.is_zero() {
                    out_row.push((j, v));
                }
            }
            touched.clear();
            rows.push(out_row);
        }
        Ok(IntMat { dim: self.dim, rows })
    }

    pub fn pow(&self, mut n: u64) -> IntMat {
        let mut result = IntMat::identity(self.dim);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }
}

impl<'a> Mul<&'a IntMat> for &'a IntMat {
    type Output = IntMat;

    /// Panics on a dimension mismatch; use [`IntMat::checked_mul`] otherwise.
    fn mul(self, rhs: &'a IntMat) -> IntMat {
        self.checked_mul(rhs).expect("matrix dimensions must agree")
    }
}

/// `E_k`: the `k × k` matrix whose only nonzero entry is a one in the top-right corner.
pub fn unit_matrix(k: usize) -> IntMat {
    assert!(k >= 1, "E_k needs k >= 1");
    IntMat::from_entries(k, [(0, k - 1, BigInt::one())])
}

/// Block matrix `(a_ij · B)`.
pub fn kronecker(a: &IntMat, b: &IntMat) -> IntMat {
    let n = b.dim;
    let mut out = IntMat::zeros(a.dim * n);
    for (i, row) in a.rows.iter().enumerate() {
        for bi in 0..n {
            let target = &mut out.rows[i * n + bi];
            for (j, av) in row {
                for (bj, bv) in &b.rows[bi] {
                    target.push((j * n + bj, av * bv));
                }
            }
        }
    }
    out
}

/// Block-diagonal matrix `diag(A, B)`.
pub fn direct_sum(a: &IntMat, b: &IntMat) -> IntMat {
    let offset = a.dim;
    let mut rows = a.rows.clone();
    rows.extend(
        b.rows
            .iter()
            .map(|row| row.iter().map(|(j, v)| (j + offset, v.clone())).collect()),
    );
    IntMat {
        dim: a.dim + b.dim,
        rows,
    }
}

impl fmt::Display for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.to_dense().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMat({}x{}; ", self.dim, self.dim)?;
        let entries: Vec<String> = self
            .nonzeros()
            .map(|(i, j, v)| format!("({i},{j})={v}"))
            .collect();
        write!(f, "{})", entries.join(", "))
    }
}
