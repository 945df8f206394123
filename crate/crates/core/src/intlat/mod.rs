//! Exact integer linear algebra: Hermite and Smith normal forms, cokernel
//! invariants, lattice comparison, and rational rank/kernel computations.

mod matrix;
mod normal_form;
mod rational;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

pub use matrix::IntMatrix;
pub use normal_form::{hermite_normal_form, hnf, smith_invariants, smith_normal_form, SmithDecomposition};
pub use rational::{qkernel_basis, qrank, QMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntLatError {
    #[error("shape mismatch: expected {expected:?}, found {found:?}")]
    ShapeMismatch { expected: (usize, usize), found: (usize, usize) },
    #[error("parse error: {0}")]
    Parse(String),
}

/// Invariants of `ℤ^cols / rowlattice(M)`: free rank and torsion factors `> 1`.
pub fn cokernel_invariants(m: &IntMatrix) -> (usize, Vec<BigInt>) {
    let factors = smith_invariants(m);
    let free = m.cols() - factors.len();
    let torsion = factors.into_iter().filter(|d| !d.is_one()).collect();
    (free, torsion)
}

/// Nonzero rows of the Hermite normal form: the canonical basis of the row lattice.
pub fn lattice_basis(m: &IntMatrix) -> IntMatrix {
    hnf(m).nonzero_rows()
}

/// Whether two matrices have the same row lattice.
pub fn lattice_equal(a: &IntMatrix, b: &IntMatrix) -> Result<bool, IntLatError> {
    if a.cols() != b.cols() {
        return Err(IntLatError::ShapeMismatch { expected: (0, a.cols()), found: (0, b.cols()) });
    }
    Ok(lattice_basis(a) == lattice_basis(b))
}

/// Basis (as rows) of the left kernel `{x ∈ ℤ^rows : x·M = 0}`.
pub fn left_kernel(m: &IntMatrix) -> IntMatrix {
    let (h, u) = hermite_normal_form(m);
    let zero: Vec<usize> = (0..h.rows()).filter(|&i| h.is_zero_row(i)).collect();
    hnf(&u.select_rows(&zero))
}

/// Basis (as rows) of the integer kernel `{x ∈ ℤ^cols : M·x = 0}`.
pub fn right_kernel(m: &IntMatrix) -> IntMatrix {
    left_kernel(&m.transpose())
}

/// Coordinates of `v` in a basis given by the rows of a matrix in Hermite
/// normal form with no zero rows. `None` if `v` is outside the lattice.
pub fn hnf_coordinates(basis: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut rest = v.to_vec();
    let mut coords = Vec::with_capacity(basis.rows());
    for i in 0..basis.rows() {
        let pivot = basis.row(i).iter().position(|x| !x.is_zero())?;
        let p = &basis[(i, pivot)];
        if !(&rest[pivot] % p).is_zero() {
            return None;
        }
        let q = &rest[pivot] / p;
        if !q.is_zero() {
            for (r, b) in rest.iter_mut().zip(basis.row(i)) {
                *r -= &q * b;
            }
        }
        coords.push(q);
    }
    rest.iter().all(Zero::is_zero).then_some(coords)
}

/// Whether every row of `a` lies in the row lattice of `b`.
pub fn rows_in_lattice(a: &IntMatrix, b: &IntMatrix) -> bool {
    let basis = lattice_basis(b);
    a.row_iter().all(|r| r.iter().all(Zero::is_zero) || hnf_coordinates(&basis, r).is_some())
}
