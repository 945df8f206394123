//! Hermite and Smith normal forms over ℤ.
//!
//! Pivoting is deterministic: the pivot is an entry of minimal absolute value,
//! ties broken by smallest row index and then smallest column index.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// `S = U · M · V` with `S` diagonal and `d_1 | d_2 | …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)].clone())
            .filter(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Row-style Hermite normal form: returns `(H, U)` with `H = U · M`.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (h, u) = hnf_impl(m, true);
    (h, u.expect("transform requested"))
}

/// Hermite normal form without the transform.
pub fn hnf(m: &IntMatrix) -> IntMatrix {
    hnf_impl(m, false).0
}

fn hnf_impl(m: &IntMatrix, with_transform: bool) -> (IntMatrix, Option<IntMatrix>) {
    let mut a = m.clone();
    let mut u = with_transform.then(|| IntMatrix::identity(m.rows()));
    let rows = a.rows();
    let mut r = 0;
    for c in 0..a.cols() {
        if r == rows {
            break;
        }
        loop {
            // smallest nonzero |a[i][c]|, i >= r
            let mut best: Option<usize> = None;
            for i in r..rows {
                let x = &a[(i, c)];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|b| x.magnitude() < a[(b, c)].magnitude()) {
                    best = Some(i);
                    if x.magnitude().is_one() {
                        break;
                    }
                }
            }
            let Some(p) = best else { break };
            a.swap_rows(p, r);
            if let Some(u) = u.as_mut() {
                u.swap_rows(p, r);
            }
            let mut done = true;
            for i in r + 1..rows {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let q = -(&a[(i, c)] / &a[(r, c)]);
                a.add_row_multiple(i, r, &q);
                if let Some(u) = u.as_mut() {
                    u.add_row_multiple(i, r, &q);
                }
                if !a[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[(r, c)].is_zero() {
            continue;
        }
        if a[(r, c)].is_negative() {
            a.negate_row(r);
            if let Some(u) = u.as_mut() {
                u.negate_row(r);
            }
        }
        let p = a[(r, c)].clone();
        for i in 0..r {
            let q = -a[(i, c)].div_floor(&p);
            a.add_row_multiple(i, r, &q);
            if let Some(u) = u.as_mut() {
                u.add_row_multiple(i, r, &q);
            }
        }
        r += 1;
    }
    (a, u)
}

/// Smith normal form with unimodular transforms.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let mut red = Reducer::new(m, true);
    red.run();
    SmithDecomposition { s: red.a, u: red.u.unwrap(), v: red.v.unwrap() }
}

/// Invariant factors only (nonzero diagonal of the Smith form). Skips the
/// transform bookkeeping, which dominates on large relation matrices.
pub fn smith_invariants(m: &IntMatrix) -> Vec<BigInt> {
    let mut red = Reducer::new(m, false);
    red.run();
    (0..red.a.rows().min(red.a.cols()))
        .map(|i| red.a[(i, i)].clone())
        .filter(|d| !d.is_zero())
        .collect()
}

struct Reducer {
    a: IntMatrix,
    u: Option<IntMatrix>,
    v: Option<IntMatrix>,
}

impl Reducer {
    fn new(m: &IntMatrix, with_transforms: bool) -> Self {
        Reducer {
            a: m.clone(),
            u: with_transforms.then(|| IntMatrix::identity(m.rows())),
            v: with_transforms.then(|| IntMatrix::identity(m.cols())),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(u) = self.u.as_mut() {
            u.swap_rows(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(v) = self.v.as_mut() {
            v.swap_cols(i, j);
        }
    }

    fn add_row(&mut self, target: usize, source: usize, q: &BigInt) {
        self.a.add_row_multiple(target, source, q);
        if let Some(u) = self.u.as_mut() {
            u.add_row_multiple(target, source, q);
        }
    }

    fn add_col(&mut self, target: usize, source: usize, q: &BigInt) {
        self.a.add_col_multiple(target, source, q);
        if let Some(v) = self.v.as_mut() {
            v.add_col_multiple(target, source, q);
        }
    }

    /// Minimal |entry| in the trailing submatrix starting at `t`.
    fn global_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.magnitude() < self.a[(bi, bj)].magnitude()) {
                    best = Some((i, j));
                    if x.magnitude().is_one() {
                        return best;
                    }
                }
            }
        }
        best
    }

    /// Minimal |entry| in row `t` and column `t` of the trailing submatrix.
    fn cross_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let consider = |i: usize, j: usize, best: &mut Option<(usize, usize)>| {
            let x = &self.a[(i, j)];
            if x.is_zero() {
                return;
            }
            let better = match *best {
                None => true,
                Some((bi, bj)) => {
                    let (bx, xm) = (self.a[(bi, bj)].magnitude(), x.magnitude());
                    xm < bx || (xm == bx && (i, j) < (bi, bj))
                }
            };
            if better {
                *best = Some((i, j));
            }
        };
        for i in t..self.a.rows() {
            consider(i, t, &mut best);
        }
        for j in t + 1..self.a.cols() {
            consider(t, j, &mut best);
        }
        best
    }

    fn run(&mut self) {
        let (rows, cols) = self.a.shape();
        for t in 0..rows.min(cols) {
            let Some((pi, pj)) = self.global_pivot(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..rows {
                    if self.a[(i, t)].is_zero() {
                        continue;
                    }
                    let q = -(&self.a[(i, t)] / &self.a[(t, t)]);
                    self.add_row(i, t, &q);
                    dirty |= !self.a[(i, t)].is_zero();
                }
                for j in t + 1..cols {
                    if self.a[(t, j)].is_zero() {
                        continue;
                    }
                    let q = -(&self.a[(t, j)] / &self.a[(t, t)]);
                    self.add_col(j, t, &q);
                    dirty |= !self.a[(t, j)].is_zero();
                }
                if dirty {
                    let (pi, pj) = self.cross_pivot(t).expect("nonzero remainder");
                    self.swap_rows(t, pi);
                    self.swap_cols(t, pj);
                    continue;
                }
                // divisibility: fold an offending row into row t and retry
                let p = self.a[(t, t)].clone();
                let offender = (t + 1..rows).find(|&i| {
                    (t + 1..cols).any(|j| !self.a[(i, j)].is_multiple_of(&p))
                });
                match offender {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[(t, t)].is_negative() {
                self.a.negate_row(t);
                if let Some(u) = self.u.as_mut() {
                    u.negate_row(t);
                }
            }
        }
    }
}
