use crate::intlat::{cokernel_invariants, hnf_coordinates, lattice_basis, IntMatrix};

use super::{FgAb, GroupHom, SimpAbError, SimplicialAb};

/// A chain complex of finitely generated abelian groups in degrees `0..=top`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainCx {
    groups: Vec<FgAb>,
    /// `diffs[n - 1]` is `∂_n: C_n -> C_{n-1}`.
    diffs: Vec<GroupHom>,
}

impl ChainCx {
    pub fn new(groups: Vec<FgAb>, diffs: Vec<GroupHom>) -> Result<Self, SimpAbError> {
        if groups.is_empty() || diffs.len() + 1 != groups.len() {
            return Err(SimpAbError::ShapeMismatch("need one differential per positive degree".into()));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.source() != &groups[k + 1] || d.target() != &groups[k] {
                return Err(SimpAbError::ShapeMismatch(format!("∂_{} has the wrong groups", k + 1)));
            }
        }
        for k in 1..diffs.len() {
            if !diffs[k - 1].compose(&diffs[k]).expect("composable").is_zero() {
                return Err(SimpAbError::IdentityViolation(format!("∂_{} ∘ ∂_{} ≠ 0", k, k + 1)));
            }
        }
        Ok(ChainCx { groups, diffs })
    }

    pub fn top_degree(&self) -> usize {
        self.groups.len() - 1
    }

    pub fn group(&self, n: usize) -> &FgAb {
        &self.groups[n]
    }

    /// `∂_n` for `n ≥ 1`.
    pub fn boundary(&self, n: usize) -> &GroupHom {
        &self.diffs[n - 1]
    }

    /// `H_n`, in canonical form. Needs degree `n + 1`.
    pub fn homology(&self, n: usize) -> Result<FgAb, SimpAbError> {
        if n + 1 > self.top_degree() {
            return Err(SimpAbError::TruncationTooShallow { n, truncation: self.top_degree() });
        }
        let c = &self.groups[n];
        let r = c.ngens();
        let cycles = if n == 0 { IntMatrix::identity(r) } else { lattice_basis(&self.boundary(n).kernel_lattice()) };
        let generators = self.boundary(n + 1).matrix().transpose().stack(&c.relations()).expect("same width");
        let mut rows = Vec::with_capacity(generators.rows());
        for g in generators.row_iter() {
            let coords = hnf_coordinates(&cycles, g)
                .ok_or_else(|| SimpAbError::IdentityViolation(format!("a boundary in degree {n} is not a cycle")))?;
            rows.push(coords);
        }
        let relations = IntMatrix::from_big_rows(rows, cycles.rows());
        let (free, torsion) = cokernel_invariants(&relations);
        Ok(FgAb::from_invariants(free, &torsion))
    }
}

/// Unnormalized Moore complex: `∂_n = Σ (-1)^i d_i`.
pub fn moore_complex(x: &SimplicialAb) -> Result<ChainCx, SimpAbError> {
    let l = x.truncation();
    let diffs = (1..=l)
        .map(|n| {
            (0..=n).fold(GroupHom::zero(x.level(n), x.level(n - 1)), |acc, i| {
                acc.add_scaled(x.face(n, i), if i % 2 == 0 { 1 } else { -1 })
            })
        })
        .collect();
    ChainCx::new(x.levels().to_vec(), diffs)
}

/// `π_n(X) = H_n` of the Moore complex, for `n ≤ L - 1`.
pub fn homotopy_group(x: &SimplicialAb, n: usize) -> Result<FgAb, SimpAbError> {
    if n + 1 > x.truncation() {
        return Err(SimpAbError::TruncationTooShallow { n, truncation: x.truncation() });
    }
    moore_complex(x)?.homology(n)
}
