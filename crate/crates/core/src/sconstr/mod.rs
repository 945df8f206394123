//! Strict diagrams of rational chain complexes indexed by `Δ(m,n)`: cubes and their
//! totalizations, membership in the higher S-construction, knitting, reindexing and
//! slice mutation.

mod complex;
mod cube;
mod diagram;
mod json;
mod kan;
mod knit;
mod random;

use thiserror::Error;

use crate::simplex::Simplex;
use crate::slices::SliceError;

pub use complex::{cone, ChainMapQ, QComplex};
pub use cube::{is_bicartesian, totalize, CubeDiagram};
pub use diagram::{check_membership, reindex, MembershipReport, PosetDiagram, SDiagram};
pub use json::{diagram_from_json, diagram_to_json};
pub use kan::{backward_path, knit_from_slice, mutate_data};
pub use knit::{corner_poset, knit_from_corner};
pub use random::{random_corner_data, random_indicator_data};

#[derive(Debug, Clone, Error)]
pub enum SConstrError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("d∘d ≠ 0 out of degree {0}")]
    NotAComplex(i32),
    #[error("map does not commute with the differentials in degree {0}")]
    NotAChainMap(i32),
    #[error("totalization has d² ≠ 0 out of degree {0}; the cube does not commute")]
    SignError(i32),
    #[error("not a functor: {square} does not commute")]
    NotAFunctor { square: String },
    #[error("degenerate simplex {0} carries a complex with nonzero homology")]
    DegenerateNotAcyclic(Simplex),
    #[error(transparent)]
    Slice(#[from] SliceError),
    #[error("no backward mutation path from {from} within {cap} slices")]
    NoPathFound { from: String, cap: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

/// Nonzero Betti numbers of every object of a diagram.
pub fn diagram_betti(x: &PosetDiagram) -> std::collections::BTreeMap<Simplex, std::collections::BTreeMap<i32, usize>> {
    x.betti_table()
}
