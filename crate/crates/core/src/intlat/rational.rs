use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{IntLatError, IntMatrix};

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, entries: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<BigRational>) -> Result<Self, IntLatError> {
        if entries.len() != rows * cols {
            return Err(IntLatError::ShapeMismatch { expected: (rows, cols), found: (entries.len(), 1) });
        }
        Ok(QMatrix { rows, cols, entries })
    }

    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R], cols: usize) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged row");
            entries.extend(r.iter().map(|&x| BigRational::from_integer(x.into())));
        }
        QMatrix { rows: rows.len(), cols, entries }
    }

    pub fn from_int_matrix(m: &IntMatrix) -> Self {
        let mut q = Self::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                q[(i, j)] = BigRational::from_integer(m[(i, j)].clone());
            }
        }
        q
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

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Matrix product; panics on a shape mismatch.
    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "QMatrix product shape mismatch");
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
        out
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.shape(), other.shape(), "QMatrix sum shape mismatch");
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        QMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|x| x * c).collect() }
    }

    pub fn neg(&self) -> QMatrix {
        self.scale(&-BigRational::one())
    }

    /// Copies `block` into `self` with its top-left corner at `(r, c)`.
    pub fn set_block(&mut self, r: usize, c: usize, block: &QMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r + i, c + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn block(&self, r: usize, c: usize, rows: usize, cols: usize) -> QMatrix {
        let mut out = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out[(i, j)] = self[(r + i, c + j)].clone();
            }
        }
        out
    }

    pub fn hstack(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(0, self.cols, other);
        out
    }

    pub fn vstack(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut out = Self::zeros(self.rows + other.rows, self.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, 0, other);
        out
    }

    pub fn select_cols(&self, idx: &[usize]) -> QMatrix {
        let mut out = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                out[(i, jj)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> QMatrix {
        let mut out = Self::zeros(idx.len(), self.cols);
        for (ii, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                out[(ii, j)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else { continue };
            a.swap_rows(p, r);
            let inv = a[(r, c)].recip();
            for j in c..a.cols {
                let x = &a[(r, j)] * &inv;
                a[(r, j)] = x;
            }
            for i in 0..a.rows {
                if i == r || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in c..a.cols {
                    let d = &f * &a[(r, j)];
                    if !d.is_zero() {
                        a[(i, j)] -= d;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let c = self.cols;
        for j in 0..c {
            self.entries.swap(a * c + j, b * c + j);
        }
    }

    /// Some `X` with `self · X = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &QMatrix) -> Option<QMatrix> {
        assert_eq!(self.rows, b.rows, "solve row mismatch");
        let (r, pivots) = self.hstack(b).rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = QMatrix::zeros(self.cols, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[(p, j)] = r[(i, self.cols + j)].clone();
            }
        }
        Some(x)
    }

    /// Row entries cleared to coprime integers.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let den = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter().map(|x| x.numer() * (&den / x.denom())).collect()
            })
            .collect()
    }
}

/// Rank over ℚ, by fraction-free elimination after clearing denominators.
pub fn qrank(m: &QMatrix) -> usize {
    let mut rows: Vec<Vec<BigInt>> = m.integer_rows().into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    let mut rank = 0;
    for c in 0..m.cols() {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(p, rank);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let a = &pivot_row[c];
        for row in tail.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let b = row[c].clone();
            let g = a.gcd(&b);
            let (fa, fb) = (a / &g, &b / &g);
            let mut content = BigInt::zero();
            for (x, y) in row.iter_mut().zip(pivot_row) {
                *x = &*x * &fa - y * &fb;
                content = content.gcd(x);
            }
            if !content.is_zero() && !content.is_one() {
                for x in row.iter_mut() {
                    *x /= &content;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Columns spanning the right kernel `{x : M·x = 0}`, one column per free variable.
pub fn qkernel_basis(m: &QMatrix) -> QMatrix {
    let (r, pivots) = m.rref();
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    let mut k = QMatrix::zeros(m.cols(), free.len());
    for (kk, &f) in free.iter().enumerate() {
        k[(f, kk)] = BigRational::one();
        for (i, &p) in pivots.iter().enumerate() {
            k[(p, kk)] = -r[(i, f)].clone();
        }
    }
    k
}

impl Index<(usize, usize)> for QMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let parts: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", parts.join(" "))?;
        }
        write!(f, "]")
    }
}
