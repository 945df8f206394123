use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntLatError;

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, IntLatError> {
        if entries.len() != rows * cols {
            return Err(IntLatError::ShapeMismatch {
                expected: (rows, cols),
                found: (entries.len(), 1),
            });
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    /// Builds a matrix from small-integer rows; every row must have `cols` entries.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R], cols: usize) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged row");
            entries.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix { rows: rows.len(), cols, entries }
    }

    pub fn from_big_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            entries.extend(r);
        }
        IntMatrix { rows: n, cols, entries }
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[BigInt]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
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

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [BigInt] {
        let c = self.cols;
        &mut self.entries[i * c..(i + 1) * c]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[BigInt]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, IntLatError> {
        if self.cols != other.rows {
            return Err(IntLatError::ShapeMismatch { expected: (self.cols, 0), found: (other.rows, 0) });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &IntMatrix) -> Result<IntMatrix, IntLatError> {
        if self.cols != other.cols {
            return Err(IntLatError::ShapeMismatch { expected: (0, self.cols), found: (0, other.cols) });
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(IntMatrix { rows: self.rows + other.rows, cols: self.cols, entries })
    }

    /// Keeps the listed rows, in order.
    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        let rows: Vec<Vec<BigInt>> = idx.iter().map(|&i| self.row(i).to_vec()).collect();
        Self::from_big_rows(rows, self.cols)
    }

    /// Keeps the listed columns, in order.
    pub fn select_cols(&self, idx: &[usize]) -> IntMatrix {
        let mut out = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                out[(i, jj)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Nonzero rows only.
    pub fn nonzero_rows(&self) -> IntMatrix {
        let keep: Vec<usize> = (0..self.rows).filter(|&i| !self.is_zero_row(i)).collect();
        self.select_rows(&keep)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let c = self.cols;
        for j in 0..c {
            self.entries.swap(a * c + j, b * c + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let c = self.cols;
        for i in 0..self.rows {
            self.entries.swap(i * c + a, i * c + b);
        }
    }

    /// `row[target] += q * row[source]`.
    pub fn add_row_multiple(&mut self, target: usize, source: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        let c = self.cols;
        for j in 0..c {
            let s = &self.entries[source * c + j];
            if !s.is_zero() {
                let delta = s * q;
                self.entries[target * c + j] += delta;
            }
        }
    }

    /// `col[target] += q * col[source]`.
    pub fn add_col_multiple(&mut self, target: usize, source: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        let c = self.cols;
        for i in 0..self.rows {
            let s = &self.entries[i * c + source];
            if !s.is_zero() {
                let delta = s * q;
                self.entries[i * c + target] += delta;
            }
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for x in self.row_mut(i) {
            *x = -std::mem::take(x);
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        let c = self.cols;
        for i in 0..self.rows {
            let x = &mut self.entries[i * c + j];
            *x = -std::mem::take(x);
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt, IntLatError> {
        if self.rows != self.cols {
            return Err(IntLatError::ShapeMismatch { expected: (self.rows, self.rows), found: self.shape() });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v.div_floor(&prev);
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * a[(n - 1, n - 1)].clone())
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.determinant().map(|d| d.abs().is_one()).unwrap_or(false)
    }

    /// Whitespace-separated text: one row per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in self.row_iter() {
            let parts: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            out.push_str(&parts.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<IntMatrix, IntLatError> {
        let mut rows = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let row: Result<Vec<BigInt>, _> = line.split_whitespace().map(|t| t.parse::<BigInt>()).collect();
            rows.push(row.map_err(|e| IntLatError::Parse(e.to_string()))?);
        }
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(IntLatError::Parse("ragged rows".into()));
        }
        Ok(Self::from_big_rows(rows, cols))
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for (i, r) in self.row_iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let parts: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", parts.join(" "))?;
        }
        write!(f, "]")
    }
}
