use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::intlat::{cokernel_invariants, right_kernel, rows_in_lattice, IntMatrix};

use super::SimpAbError;

/// A finitely generated abelian group `⊕ ℤ/orders[i]`, with `ℤ/0 = ℤ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FgAb {
    orders: Vec<u64>,
}

impl FgAb {
    pub fn new(orders: Vec<u64>) -> Self {
        FgAb { orders }
    }

    pub fn zero() -> Self {
        FgAb { orders: vec![] }
    }

    pub fn z() -> Self {
        FgAb { orders: vec![0] }
    }

    pub fn cyclic(k: u64) -> Self {
        FgAb { orders: vec![k] }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Number of generators in this presentation.
    pub fn ngens(&self) -> usize {
        self.orders.len()
    }

    /// `A^k`, generator-major within each copy.
    pub fn power(&self, k: usize) -> FgAb {
        FgAb { orders: self.orders.repeat(k) }
    }

    pub fn direct_sum(&self, other: &FgAb) -> FgAb {
        let mut orders = self.orders.clone();
        orders.extend(&other.orders);
        FgAb { orders }
    }

    /// Order relations as rows over the generators (one row per finite order).
    pub fn relations(&self) -> IntMatrix {
        let rows: Vec<Vec<BigInt>> = self
            .orders
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != 0)
            .map(|(i, &d)| {
                let mut r = vec![BigInt::zero(); self.ngens()];
                r[i] = BigInt::from(d);
                r
            })
            .collect();
        IntMatrix::from_big_rows(rows, self.ngens())
    }

    /// Canonical form: torsion factors `> 1` in a divisibility chain, then free summands.
    pub fn canonical(&self) -> FgAb {
        let (free, torsion) = cokernel_invariants(&self.relations());
        Self::from_invariants(free, &torsion)
    }

    pub(crate) fn from_invariants(free: usize, torsion: &[BigInt]) -> FgAb {
        let mut orders: Vec<u64> = torsion.iter().map(|d| d.to_u64().expect("torsion order fits in u64")).collect();
        orders.extend(std::iter::repeat_n(0, free));
        FgAb { orders }
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.iter().all(|&d| d == 1)
    }

    /// Isomorphism of groups, by comparing canonical forms.
    pub fn is_isomorphic(&self, other: &FgAb) -> bool {
        self.canonical() == other.canonical()
    }

    /// Whether `x ≡ y` modulo the order of generator `i`.
    pub(crate) fn congruent(&self, i: usize, x: &BigInt, y: &BigInt) -> bool {
        match self.orders[i] {
            0 => x == y,
            d => (x - y).is_multiple_of(&BigInt::from(d)),
        }
    }
}

impl fmt::Display for FgAb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .orders
            .iter()
            .filter(|&&d| d != 1)
            .map(|&d| if d == 0 { "Z".to_string() } else { format!("Z/{d}") })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

/// Parses `"Z"`, `"Z/4"`, `"Z+Z/2"` and `"0"`.
impl FromStr for FgAb {
    type Err = SimpAbError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "0" {
            return Ok(FgAb::zero());
        }
        let mut orders = Vec::new();
        for term in s.split('+').map(str::trim) {
            let bad = || SimpAbError::Parse(format!("bad group term {term:?} in {s:?}"));
            match term.strip_prefix('Z') {
                Some("") => orders.push(0),
                Some(rest) => {
                    let k: u64 = rest.strip_prefix('/').ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
                    if k == 0 {
                        return Err(bad());
                    }
                    orders.push(k);
                }
                None => return Err(bad()),
            }
        }
        Ok(FgAb { orders })
    }
}

/// A homomorphism given on generators: column `j` is the image of source generator `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: FgAb,
    target: FgAb,
    matrix: IntMatrix,
}

impl GroupHom {
    pub fn new(source: FgAb, target: FgAb, matrix: IntMatrix) -> Result<Self, SimpAbError> {
        if matrix.shape() != (target.ngens(), source.ngens()) {
            return Err(SimpAbError::ShapeMismatch(format!(
                "matrix {:?} for a map with {} source and {} target generators",
                matrix.shape(),
                source.ngens(),
                target.ngens()
            )));
        }
        for (j, &d) in source.orders.iter().enumerate() {
            if d == 0 {
                continue;
            }
            let d = BigInt::from(d);
            for i in 0..target.ngens() {
                if !target.congruent(i, &(&matrix[(i, j)] * &d), &BigInt::zero()) {
                    return Err(SimpAbError::IncompatibleHom { generator: j });
                }
            }
        }
        Ok(GroupHom { source, target, matrix })
    }

    pub(crate) fn new_unchecked(source: FgAb, target: FgAb, matrix: IntMatrix) -> Self {
        debug_assert_eq!(matrix.shape(), (target.ngens(), source.ngens()));
        GroupHom { source, target, matrix }
    }

    pub fn identity(a: &FgAb) -> Self {
        GroupHom { source: a.clone(), target: a.clone(), matrix: IntMatrix::identity(a.ngens()) }
    }

    pub fn zero(source: &FgAb, target: &FgAb) -> Self {
        GroupHom::new_unchecked(source.clone(), target.clone(), IntMatrix::zeros(target.ngens(), source.ngens()))
    }

    pub fn source(&self) -> &FgAb {
        &self.source
    }

    pub fn target(&self) -> &FgAb {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &GroupHom) -> Result<GroupHom, SimpAbError> {
        if f.target != self.source {
            return Err(SimpAbError::ShapeMismatch("composable maps must share the middle group".into()));
        }
        let m = self.matrix.mul(&f.matrix).expect("shapes checked");
        Ok(GroupHom::new_unchecked(f.source.clone(), self.target.clone(), m))
    }

    /// Pointwise sum `self + c·other`.
    pub(crate) fn add_scaled(&self, other: &GroupHom, c: i64) -> GroupHom {
        let mut m = self.matrix.clone();
        let c = BigInt::from(c);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                m[(i, j)] += &other.matrix[(i, j)] * &c;
            }
        }
        GroupHom::new_unchecked(self.source.clone(), self.target.clone(), m)
    }

    /// Equality as homomorphisms: entries agree modulo the target orders.
    pub fn equals(&self, other: &GroupHom) -> bool {
        self.source == other.source
            && self.target == other.target
            && (0..self.matrix.rows()).all(|i| {
                (0..self.matrix.cols()).all(|j| self.target.congruent(i, &self.matrix[(i, j)], &other.matrix[(i, j)]))
            })
    }

    pub fn is_zero(&self) -> bool {
        self.equals(&GroupHom::zero(&self.source, &self.target))
    }

    /// Surjective: the image together with the target relations spans everything.
    pub fn is_surjective(&self) -> bool {
        let lattice = self.matrix.transpose().stack(&self.target.relations()).expect("same width");
        cokernel_invariants(&lattice) == (0, vec![])
    }

    /// Injective: every source vector mapping into the target relations is
    /// itself a source relation.
    pub fn is_injective(&self) -> bool {
        let kernel = self.kernel_lattice();
        rows_in_lattice(&kernel, &self.source.relations())
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_surjective() && self.is_injective()
    }

    /// Rows spanning `{x ∈ ℤ^source : matrix·x ∈ target relations}`.
    pub(crate) fn kernel_lattice(&self) -> IntMatrix {
        let rel = self.target.relations();
        let s = self.source.ngens();
        let t = self.target.ngens();
        let mut block = IntMatrix::zeros(t, s + rel.rows());
        for i in 0..t {
            for j in 0..s {
                block[(i, j)] = self.matrix[(i, j)].clone();
            }
            for r in 0..rel.rows() {
                block[(i, s + r)] = -rel[(r, i)].clone();
            }
        }
        let k = right_kernel(&block);
        k.select_cols(&(0..s).collect::<Vec<_>>())
    }
}

/// The pattern `p ⊗ I`, one identity block per generator of `a`.
pub(crate) fn kron_identity(p: &IntMatrix, a: &FgAb) -> IntMatrix {
    let r = a.ngens();
    let mut out = IntMatrix::zeros(p.rows() * r, p.cols() * r);
    for i in 0..p.rows() {
        for j in 0..p.cols() {
            if p[(i, j)].is_zero() {
                continue;
            }
            for g in 0..r {
                out[(i * r + g, j * r + g)] = p[(i, j)].clone();
            }
        }
    }
    out
}
