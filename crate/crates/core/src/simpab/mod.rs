//! Simplicial abelian groups: Moore complexes and homotopy groups, the
//! Dold–Kan objects `Γ(A[m])`, and the array model of `N(A[1])`.

mod chain;
mod group;
mod simplicial;

use thiserror::Error;

pub use chain::{homotopy_group, moore_complex, ChainCx};
pub use group::{FgAb, GroupHom};
pub(crate) use group::kron_identity;
pub use simplicial::{
    check_simplicial_identities, compare_via, gamma, na1, na1_to_gamma, surjections, IdentityKind, Report,
    SimplicialAb, Violation,
};


#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimpAbError {
    #[error("simplicial identity violated: {0}")]
    IdentityViolation(String),
    #[error("homotopy in degree {n} needs level {} but the truncation is {truncation}", n + 1)]
    TruncationTooShallow { n: usize, truncation: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix column {generator} is not compatible with the group orders")]
    IncompatibleHom { generator: usize },
    #[error("parse error: {0}")]
    Parse(String),
}
