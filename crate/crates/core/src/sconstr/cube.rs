use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::One;

use crate::intlat::QMatrix;

use super::complex::{ChainMapQ, QComplex};
use super::SConstrError;

/// A commutative `dim`-cube of complexes. Vertices are bitmasks, edges `(v, i)` with bit `i` of `v` clear.
#[derive(Clone, Debug)]
pub struct CubeDiagram {
    dim: usize,
    values: Vec<Arc<QComplex>>,
    edges: BTreeMap<(usize, usize), ChainMapQ>,
}

impl CubeDiagram {
    /// `edge(v, i)` supplies the map `X_v -> X_{v + e_i}`.
    pub fn new(
        dim: usize,
        values: Vec<Arc<QComplex>>,
        mut edge: impl FnMut(usize, usize) -> ChainMapQ,
    ) -> Result<Self, SConstrError> {
        if values.len() != 1 << dim {
            return Err(SConstrError::Shape(format!("a {dim}-cube needs {} vertices", 1 << dim)));
        }
        let mut edges = BTreeMap::new();
        for v in 0..values.len() {
            for i in (0..dim).filter(|i| v >> i & 1 == 0) {
                let f = edge(v, i);
                if *f.source() != values[v] || *f.target() != values[v | 1 << i] {
                    return Err(SConstrError::Shape(format!("edge ({v:b}, {i}) has the wrong endpoints")));
                }
                edges.insert((v, i), f);
            }
        }
        Ok(CubeDiagram { dim, values, edges })
    }

    /// Every edge zero.
    pub fn with_zero_edges(dim: usize, values: Vec<Arc<QComplex>>) -> Result<Self, SConstrError> {
        let vals = values.clone();
        Self::new(dim, values, |v, i| ChainMapQ::zero(&vals[v], &vals[v | 1 << i]))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn value(&self, v: usize) -> &Arc<QComplex> {
        &self.values[v]
    }

    pub fn edge(&self, v: usize, i: usize) -> &ChainMapQ {
        &self.edges[&(v, i)]
    }
}

/// Where each `(vertex, internal degree)` summand sits inside a total complex.
#[derive(Clone, Debug, Default)]
pub(crate) struct Layout {
    offsets: BTreeMap<i32, Vec<(usize, i32, usize)>>,
}

impl Layout {
    pub(crate) fn offset(&self, total: i32, v: usize) -> Option<(i32, usize)> {
        self.offsets.get(&total)?.iter().find(|e| e.0 == v).map(|e| (e.1, e.2))
    }
}

fn sign(odd: bool) -> BigRational {
    if odd {
        -BigRational::one()
    } else {
        BigRational::one()
    }
}

/// Total complex with vertex `v` in column `dim - |v|`.
pub fn totalize(cube: &CubeDiagram) -> Result<QComplex, SConstrError> {
    totalize_with_layout(cube).map(|t| t.0)
}

pub(crate) fn totalize_with_layout(cube: &CubeDiagram) -> Result<(QComplex, Layout), SConstrError> {
    let col = |v: usize| (cube.dim - v.count_ones() as usize) as i32;
    let mut layout = Layout::default();
    let mut dims: BTreeMap<i32, usize> = BTreeMap::new();
    for v in 0..cube.values.len() {
        let Some((lo, hi)) = cube.values[v].range() else { continue };
        for k in lo..=hi {
            let total = k + col(v);
            let d = dims.entry(total).or_insert(0);
            layout.offsets.entry(total).or_default().push((v, k, *d));
            *d += cube.values[v].dim(k);
        }
    }
    let (Some(&lo), Some(&hi)) = (dims.keys().next(), dims.keys().next_back()) else {
        return Ok((QComplex::zero(), layout));
    };
    let dim_of = |t: i32| dims.get(&t).copied().unwrap_or(0);
    let mut diffs: BTreeMap<i32, QMatrix> = BTreeMap::new();
    for total in lo + 1..=hi {
        let mut m = QMatrix::zeros(dim_of(total - 1), dim_of(total));
        for &(v, k, off) in layout.offsets.get(&total).into_iter().flatten() {
            let x = &cube.values[v];
            if let Some((_, below)) = layout.offset(total - 1, v) {
                m.set_block(below, off, &x.d(k).scale(&sign(col(v) % 2 == 1)));
            }
            for i in (0..cube.dim).filter(|i| v >> i & 1 == 0) {
                let w = v | 1 << i;
                let Some((_, target)) = layout.offset(total - 1, w) else { continue };
                let eps = (v & ((1 << i) - 1)).count_ones() % 2 == 1;
                m.set_block(target, off, &cube.edge(v, i).block(k).scale(&sign(eps)));
            }
        }
        diffs.insert(total, m);
    }
    let total = QComplex::build(lo, hi, dim_of, |t| diffs[&t].clone()).map_err(|e| match e {
        SConstrError::NotAComplex(k) => SConstrError::SignError(k),
        other => other,
    })?;
    Ok((total, layout))
}

/// Block-diagonal map between the totalizations of two cubes of equal dimension.
pub(crate) fn induced_total_map(
    source: (&Arc<QComplex>, &Layout),
    target: (&Arc<QComplex>, &Layout),
    vertex_maps: &[ChainMapQ],
) -> ChainMapQ {
    let (s, sl) = source;
    let (t, tl) = target;
    let mut blocks = BTreeMap::new();
    for (&total, entries) in &sl.offsets {
        if t.dim(total) == 0 {
            continue;
        }
        let mut m = QMatrix::zeros(t.dim(total), s.dim(total));
        for &(v, k, off) in entries {
            if let Some((k2, toff)) = tl.offset(total, v) {
                debug_assert_eq!(k, k2);
                m.set_block(toff, off, &vertex_maps[v].block(k));
            }
        }
        blocks.insert(total, m);
    }
    ChainMapQ::new_unchecked(s.clone(), t.clone(), blocks)
}

/// Inclusion of a column-0 vertex as a summand.
pub(crate) fn summand_inclusion(x: &Arc<QComplex>, total: (&Arc<QComplex>, &Layout), v: usize) -> ChainMapQ {
    let (t, tl) = total;
    let mut blocks = BTreeMap::new();
    if let Some((lo, hi)) = x.range() {
        for k in lo..=hi {
            let (_, off) = tl.offset(k, v).expect("summand present");
            let mut m = QMatrix::zeros(t.dim(k), x.dim(k));
            m.set_block(off, 0, &QMatrix::identity(x.dim(k)));
            blocks.insert(k, m);
        }
    }
    ChainMapQ::new_unchecked(x.clone(), t.clone(), blocks)
}

/// Acyclic totalization.
pub fn is_bicartesian(cube: &CubeDiagram) -> Result<bool, SConstrError> {
    Ok(totalize(cube)?.is_acyclic())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Arc<QComplex> {
        Arc::new(QComplex::concentrated(0, 1))
    }

    fn z() -> Arc<QComplex> {
        Arc::new(QComplex::zero())
    }

    #[test]
    fn zero_cube_totalizes_to_zero() {
        let c = CubeDiagram::with_zero_edges(2, vec![z(), z(), z(), z()]).unwrap();
        assert!(totalize(&c).unwrap().is_zero());
    }

    #[test]
    fn identity_square_is_bicartesian() {
        // 00 = Q, 01 (bit 0) = Q with identity, others zero.
        let vals = vec![q(), q(), z(), z()];
        let v2 = vals.clone();
        let c = CubeDiagram::new(2, vals, |v, i| {
            if v == 0 && i == 0 {
                ChainMapQ::identity(&v2[0])
            } else {
                ChainMapQ::zero(&v2[v], &v2[v | 1 << i])
            }
        })
        .unwrap();
        assert!(is_bicartesian(&c).unwrap());
    }

    #[test]
    fn lone_corner_is_not_bicartesian() {
        let c = CubeDiagram::with_zero_edges(2, vec![q(), z(), z(), z()]).unwrap();
        let t = totalize(&c).unwrap();
        assert_eq!(t.betti().into_iter().collect::<Vec<_>>(), vec![(2, 1)]);
        assert!(!is_bicartesian(&c).unwrap());
    }

    #[test]
    fn exact_sequence_cube() {
        // 0 -> Q -> Q^2 -> Q -> 0 placed on the vertices 000, 001, 011, 111 of a 3-cube.
        let mut dims = [0usize; 8];
        dims[0b001] = 1;
        dims[0b011] = 2;
        dims[0b111] = 1;
        let vals: Vec<Arc<QComplex>> = dims.iter().map(|&d| Arc::new(QComplex::concentrated(0, d))).collect();
        let v2 = vals.clone();
        let c = CubeDiagram::new(3, vals, |v, i| match (v, i) {
            (0b001, 1) => ChainMapQ::new_unchecked(v2[1].clone(), v2[3].clone(), [(0, QMatrix::from_ints(&[[1], [0]], 1))].into()),
            (0b011, 2) => ChainMapQ::new_unchecked(v2[3].clone(), v2[7].clone(), [(0, QMatrix::from_ints(&[[0, 1]], 2))].into()),
            _ => ChainMapQ::zero(&v2[v], &v2[v | 1 << i]),
        })
        .unwrap();
        assert!(is_bicartesian(&c).unwrap());
    }

    #[test]
    fn non_commuting_square_is_a_sign_error() {
        let vals = vec![q(), q(), q(), q()];
        let v2 = vals.clone();
        let c = CubeDiagram::new(2, vals, |v, i| {
            if v == 0b01 && i == 1 {
                ChainMapQ::zero(&v2[v], &v2[3])
            } else {
                ChainMapQ::identity(&v2[v])
            }
        })
        .unwrap();
        assert!(matches!(totalize(&c), Err(SConstrError::SignError(_))));
    }
}
