use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::One;

use crate::intlat::{qrank, QMatrix};

use super::SConstrError;

/// A bounded chain complex of finite-dimensional ℚ-vector spaces, homological
/// grading (`d: C_k -> C_{k-1}`). Stored trimmed: the outermost degrees are nonzero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QComplex {
    lo: i32,
    dims: Vec<usize>,
    /// `diffs[i]` is `d` out of degree `lo + i`.
    diffs: Vec<QMatrix>,
}

impl QComplex {
    pub fn zero() -> Self {
        QComplex { lo: 0, dims: vec![], diffs: vec![] }
    }

    /// `ℚ^dim` concentrated in degree `deg`.
    pub fn concentrated(deg: i32, dim: usize) -> Self {
        Self::build(deg, deg, |_| dim, |_| QMatrix::zeros(0, dim)).expect("valid")
    }

    /// Builds the complex on degrees `lo..=hi`; `d(k)` must be `dim(k-1) × dim(k)`.
    pub fn build(
        lo: i32,
        hi: i32,
        dim: impl Fn(i32) -> usize,
        d: impl Fn(i32) -> QMatrix,
    ) -> Result<Self, SConstrError> {
        if hi < lo {
            return Ok(Self::zero());
        }
        let dims: Vec<usize> = (lo..=hi).map(&dim).collect();
        let mut diffs = Vec::with_capacity(dims.len());
        for (i, k) in (lo..=hi).enumerate() {
            let below = if k == lo { 0 } else { dims[i - 1] };
            let m = if k == lo { QMatrix::zeros(0, dims[i]) } else { d(k) };
            if m.shape() != (below, dims[i]) {
                return Err(SConstrError::Shape(format!(
                    "differential out of degree {k} is {:?}, expected {:?}",
                    m.shape(),
                    (below, dims[i])
                )));
            }
            diffs.push(m);
        }
        for i in 1..diffs.len() {
            if !diffs[i - 1].mul(&diffs[i]).is_zero() {
                return Err(SConstrError::NotAComplex(lo + i as i32));
            }
        }
        let mut c = QComplex { lo, dims, diffs };
        c.trim();
        Ok(c)
    }

    fn trim(&mut self) {
        while self.dims.first() == Some(&0) {
            self.dims.remove(0);
            self.diffs.remove(0);
            self.lo += 1;
            if let Some(d) = self.diffs.first_mut() {
                *d = QMatrix::zeros(0, d.cols());
            }
        }
        while self.dims.last() == Some(&0) {
            self.dims.pop();
            self.diffs.pop();
        }
        if self.dims.is_empty() {
            self.lo = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// Lowest and highest nonzero degrees.
    pub fn range(&self) -> Option<(i32, i32)> {
        (!self.dims.is_empty()).then(|| (self.lo, self.lo + self.dims.len() as i32 - 1))
    }

    pub fn dim(&self, k: i32) -> usize {
        let i = k - self.lo;
        if i < 0 || i as usize >= self.dims.len() {
            0
        } else {
            self.dims[i as usize]
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `d: C_k -> C_{k-1}`, a `dim(k-1) × dim(k)` matrix.
    pub fn d(&self, k: i32) -> QMatrix {
        let i = k - self.lo;
        if i <= 0 || i as usize >= self.dims.len() {
            QMatrix::zeros(self.dim(k - 1), self.dim(k))
        } else {
            self.diffs[i as usize].clone()
        }
    }

    fn d_rank(&self, k: i32) -> usize {
        let i = k - self.lo;
        if i <= 0 || i as usize >= self.dims.len() {
            0
        } else {
            qrank(&self.diffs[i as usize])
        }
    }

    /// Nonzero Betti numbers by degree.
    pub fn betti(&self) -> BTreeMap<i32, usize> {
        let Some((lo, hi)) = self.range() else { return BTreeMap::new() };
        let ranks: Vec<usize> = (lo..=hi + 1).map(|k| self.d_rank(k)).collect();
        (lo..=hi)
            .map(|k| {
                let i = (k - lo) as usize;
                (k, self.dim(k) - ranks[i] - ranks[i + 1])
            })
            .filter(|&(_, b)| b > 0)
            .collect()
    }

    /// Betti numbers over the degree range of the complex, lowest degree first.
    pub fn betti_list(&self) -> Vec<usize> {
        let Some((lo, hi)) = self.range() else { return vec![] };
        let b = self.betti();
        (lo..=hi).map(|k| b.get(&k).copied().unwrap_or(0)).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.betti().is_empty()
    }

    pub fn euler_characteristic(&self) -> i64 {
        let Some((lo, hi)) = self.range() else { return 0 };
        (lo..=hi).map(|k| if k.rem_euclid(2) == 0 { self.dim(k) as i64 } else { -(self.dim(k) as i64) }).sum()
    }

    pub fn direct_sum(&self, other: &QComplex) -> QComplex {
        let (lo, hi) = match (self.range(), other.range()) {
            (None, None) => return QComplex::zero(),
            (Some(r), None) | (None, Some(r)) => r,
            (Some(a), Some(b)) => (a.0.min(b.0), a.1.max(b.1)),
        };
        Self::build(
            lo,
            hi,
            |k| self.dim(k) + other.dim(k),
            |k| {
                let mut m = QMatrix::zeros(self.dim(k - 1) + other.dim(k - 1), self.dim(k) + other.dim(k));
                m.set_block(0, 0, &self.d(k));
                m.set_block(self.dim(k - 1), self.dim(k), &other.d(k));
                m
            },
        )
        .expect("direct sum of complexes")
    }

    /// `C[s]`: degree `k` moves to `k + s`; the differential picks up `(-1)^s`.
    pub fn shift(&self, s: i32) -> QComplex {
        let sign = if s.rem_euclid(2) == 0 { BigRational::one() } else { -BigRational::one() };
        let Some((lo, hi)) = self.range() else { return QComplex::zero() };
        Self::build(lo + s, hi + s, |k| self.dim(k - s), |k| self.d(k - s).scale(&sign)).expect("shift")
    }

    /// The disk `ℚ_{k+1} -> ℚ_k` with identity differential.
    pub fn disk(k: i32) -> QComplex {
        Self::build(k, k + 1, |_| 1, |_| QMatrix::identity(1)).expect("disk")
    }
}

impl std::fmt::Debug for QComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.range() {
            None => write!(f, "QComplex(0)"),
            Some((lo, hi)) => {
                let dims: Vec<String> = (lo..=hi).map(|k| format!("{k}:{}", self.dim(k))).collect();
                write!(f, "QComplex[{}]", dims.join(" "))
            }
        }
    }
}

/// A chain map, stored degreewise; absent degrees are zero.
#[derive(Clone, PartialEq, Eq)]
pub struct ChainMapQ {
    source: Arc<QComplex>,
    target: Arc<QComplex>,
    blocks: BTreeMap<i32, QMatrix>,
}

impl ChainMapQ {
    pub fn new(source: Arc<QComplex>, target: Arc<QComplex>, blocks: BTreeMap<i32, QMatrix>) -> Result<Self, SConstrError> {
        for (&k, b) in &blocks {
            if b.shape() != (target.dim(k), source.dim(k)) {
                return Err(SConstrError::Shape(format!(
                    "map block in degree {k} is {:?}, expected {:?}",
                    b.shape(),
                    (target.dim(k), source.dim(k))
                )));
            }
        }
        let f = Self::new_unchecked(source, target, blocks);
        f.check_commutes()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: Arc<QComplex>, target: Arc<QComplex>, mut blocks: BTreeMap<i32, QMatrix>) -> Self {
        blocks.retain(|_, b| !b.is_zero());
        ChainMapQ { source, target, blocks }
    }

    fn check_commutes(&self) -> Result<(), SConstrError> {
        let (Some(s), t) = (self.source.range(), self.target.range()) else { return Ok(()) };
        let (lo, hi) = match t {
            Some(t) => (s.0.min(t.0), s.1.max(t.1) + 1),
            None => return Ok(()),
        };
        for k in lo..=hi {
            let lhs = self.target.d(k).mul(&self.block(k));
            let rhs = self.block(k - 1).mul(&self.source.d(k));
            if lhs != rhs {
                return Err(SConstrError::NotAChainMap(k));
            }
        }
        Ok(())
    }

    pub fn identity(x: &Arc<QComplex>) -> Self {
        let blocks = match x.range() {
            Some((lo, hi)) => (lo..=hi).map(|k| (k, QMatrix::identity(x.dim(k)))).collect(),
            None => BTreeMap::new(),
        };
        Self::new_unchecked(x.clone(), x.clone(), blocks)
    }

    pub fn zero(source: &Arc<QComplex>, target: &Arc<QComplex>) -> Self {
        Self::new_unchecked(source.clone(), target.clone(), BTreeMap::new())
    }

    pub fn source(&self) -> &Arc<QComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<QComplex> {
        &self.target
    }

    /// The block in degree `k`, `target.dim(k) × source.dim(k)`.
    pub fn block(&self, k: i32) -> QMatrix {
        self.blocks.get(&k).cloned().unwrap_or_else(|| QMatrix::zeros(self.target.dim(k), self.source.dim(k)))
    }

    pub fn blocks(&self) -> &BTreeMap<i32, QMatrix> {
        &self.blocks
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &ChainMapQ) -> ChainMapQ {
        debug_assert!(f.target == self.source, "composable maps");
        let blocks = f
            .blocks
            .iter()
            .filter_map(|(&k, b)| self.blocks.get(&k).map(|a| (k, a.mul(b))))
            .collect();
        Self::new_unchecked(f.source.clone(), self.target.clone(), blocks)
    }

    pub fn add(&self, other: &ChainMapQ) -> ChainMapQ {
        let mut blocks = self.blocks.clone();
        for (&k, b) in &other.blocks {
            let e = blocks.entry(k).or_insert_with(|| QMatrix::zeros(b.rows(), b.cols()));
            *e = e.add(b);
        }
        Self::new_unchecked(self.source.clone(), self.target.clone(), blocks)
    }

    pub fn neg(&self) -> ChainMapQ {
        let blocks = self.blocks.iter().map(|(&k, b)| (k, b.neg())).collect();
        Self::new_unchecked(self.source.clone(), self.target.clone(), blocks)
    }

    /// Same blocks, reattached to equal-shaped endpoints.
    pub(crate) fn with_ends(&self, source: Arc<QComplex>, target: Arc<QComplex>) -> ChainMapQ {
        Self::new_unchecked(source, target, self.blocks.clone())
    }
}

impl std::fmt::Debug for ChainMapQ {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ChainMapQ({:?} -> {:?}, {:?})", self.source, self.target, self.blocks)
    }
}

/// Mapping cone: degree `k` is `T_k ⊕ S_{k-1}` with `D = [[d_T, f],[0, -d_S]]`.
pub fn cone(f: &ChainMapQ) -> QComplex {
    let (s, t) = (f.source(), f.target());
    let ranges: Vec<(i32, i32)> = [t.range(), s.range().map(|(a, b)| (a + 1, b + 1))].into_iter().flatten().collect();
    if ranges.is_empty() {
        return QComplex::zero();
    }
    let lo = ranges.iter().map(|r| r.0).min().unwrap();
    let hi = ranges.iter().map(|r| r.1).max().unwrap();
    QComplex::build(
        lo,
        hi,
        |k| t.dim(k) + s.dim(k - 1),
        |k| {
            let mut m = QMatrix::zeros(t.dim(k - 1) + s.dim(k - 2), t.dim(k) + s.dim(k - 1));
            m.set_block(0, 0, &t.d(k));
            m.set_block(0, t.dim(k), &f.block(k - 1));
            m.set_block(t.dim(k - 1), t.dim(k), &s.d(k - 1).neg());
            m
        },
    )
    .expect("cone of a chain map")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(deg: i32) -> Arc<QComplex> {
        Arc::new(QComplex::concentrated(deg, 1))
    }

    #[test]
    fn cone_examples() {
        let x = q(0);
        assert!(cone(&ChainMapQ::identity(&x)).is_acyclic());
        let zero = ChainMapQ::zero(&x, &x);
        let c = cone(&zero);
        assert_eq!(c.betti_list(), vec![1, 1]);
        let from_zero = ChainMapQ::zero(&Arc::new(QComplex::zero()), &x);
        assert_eq!(cone(&from_zero), *x);
    }

    #[test]
    fn betti_examples() {
        assert_eq!(QComplex::concentrated(0, 1).betti_list(), vec![1]);
        assert!(QComplex::disk(3).is_acyclic());
        assert!(QComplex::zero().betti_list().is_empty());
    }

    #[test]
    fn rejects_non_complex_and_non_chain_map() {
        let r = QComplex::build(0, 2, |_| 1, |_| QMatrix::identity(1));
        assert!(matches!(r, Err(SConstrError::NotAComplex(_))));
        let disk = Arc::new(QComplex::disk(0));
        let ok = ChainMapQ::new(q(0), disk.clone(), [(0, QMatrix::identity(1))].into_iter().collect());
        assert!(ok.is_ok());
        let bad = ChainMapQ::new(q(1), disk, [(1, QMatrix::identity(1))].into_iter().collect());
        assert!(matches!(bad, Err(SConstrError::NotAChainMap(_))));
    }

    #[test]
    fn trimming_and_shift() {
        let c = QComplex::build(-2, 3, |k| if k == 1 { 2 } else { 0 }, |k| QMatrix::zeros(
            if k - 1 == 1 { 2 } else { 0 },
            if k == 1 { 2 } else { 0 },
        ))
        .unwrap();
        assert_eq!(c, QComplex::concentrated(1, 2));
        let s = QComplex::disk(0).shift(1);
        assert_eq!(s.range(), Some((1, 2)));
        assert!(s.is_acyclic());
        assert_eq!(QComplex::disk(0).direct_sum(&QComplex::concentrated(5, 1)).betti_list().iter().sum::<usize>(), 1);
        assert_eq!(QComplex::concentrated(1, 3).euler_characteristic(), -3);
    }
}
