use std::collections::HashMap;
use std::sync::Arc;

use crate::simplex::{enumerate_simplices, Simplex};

use super::complex::{ChainMapQ, QComplex};
use super::cube::{induced_total_map, summand_inclusion, totalize_with_layout, CubeDiagram, Layout};
use super::diagram::PosetDiagram;
use super::SConstrError;

/// `P(m,n) = {σ : σ₀ = 0}`.
pub fn corner_poset(m: usize, n: usize) -> Vec<Simplex> {
    enumerate_simplices(m, n).into_iter().filter(|s| s.at(0) == 0).collect()
}

/// Vertex `u` of the corner cube of `σ`: `(0, σ_{0+u₀}, …, σ_{m-1+u_{m-1}})`.
fn corner_vertex(sigma: &Simplex, u: usize) -> Simplex {
    let m = sigma.dom();
    let mut values = Vec::with_capacity(m + 1);
    values.push(0);
    values.extend((0..m).map(|j| sigma.at(j + (u >> j & 1))));
    Simplex::of(&values, sigma.cod())
}

struct Knitted {
    /// Index in the corner data of each cube vertex.
    vertices: Vec<usize>,
    layout: Layout,
}

/// Extends a functor on `P(m,n)` to all of `Δ(m,n)`.
///
/// For `σ₀ > 0` the value is the totalization of the `m`-cube `u ↦ X_{(0, σ_{j+u_j})}`,
/// i.e. the column complex `[X_{d_{m+1}ρ} → … → X_{d_1ρ}]` for `ρ = (0,σ)` when degenerate
/// corner values vanish. Degenerate `σ` receive acyclic values. Degenerate corner
/// values need only be acyclic.
pub fn knit_from_corner(data: &PosetDiagram) -> Result<PosetDiagram, SConstrError> {
    let (m, n) = (data.m(), data.n());
    let corner = corner_poset(m, n);
    if data.elements() != corner.as_slice() {
        return Err(SConstrError::Shape(format!("corner data must be indexed by exactly P({m},{n})")));
    }
    for (i, s) in corner.iter().enumerate() {
        if s.is_degenerate() && !data.object_at(i).is_acyclic() {
            return Err(SConstrError::DegenerateNotAcyclic(s.clone()));
        }
    }
    let elements = enumerate_simplices(m, n);
    let mut objects: Vec<Arc<QComplex>> = Vec::with_capacity(elements.len());
    let mut knitted: Vec<Option<Knitted>> = Vec::with_capacity(elements.len());
    let mut maps: HashMap<(usize, usize), ChainMapQ> = HashMap::new();
    let corner_index = |s: &Simplex| data.index_of(s).expect("corner vertex");

    for (j, sigma) in elements.iter().enumerate() {
        if sigma.at(0) == 0 {
            let cj = corner_index(sigma);
            objects.push(data.object_at(cj).clone());
            knitted.push(None);
            for (i, tau) in elements.iter().enumerate().take(j) {
                if tau.at(0) == 0 && tau.le(sigma) {
                    maps.insert((i, j), data.map_at(corner_index(tau), cj).expect("comparable"));
                }
            }
            continue;
        }
        let vertices: Vec<usize> = (0..1usize << m).map(|u| corner_index(&corner_vertex(sigma, u))).collect();
        let values = vertices.iter().map(|&c| data.object_at(c).clone()).collect();
        let cube = CubeDiagram::new(m, values, |u, i| data.map_at(vertices[u], vertices[u | 1 << i]).expect("cube edge"))?;
        let (total, layout) = totalize_with_layout(&cube)?;
        let total = Arc::new(total);
        let top = (1usize << m) - 1;
        for (i, tau) in elements.iter().enumerate().take(j) {
            if !tau.le(sigma) {
                continue;
            }
            let f = match &knitted[i] {
                None => {
                    let into_top = data.map_at(corner_index(tau), vertices[top]).expect("τ ≤ (0,σ₁,…,σ_m)");
                    summand_inclusion(data.object_at(vertices[top]), (&total, &layout), top).compose(&into_top)
                }
                Some(k) => {
                    let vertex_maps: Vec<ChainMapQ> = (0..1usize << m)
                        .map(|u| data.map_at(k.vertices[u], vertices[u]).expect("vertexwise comparable"))
                        .collect();
                    induced_total_map((&objects[i], &k.layout), (&total, &layout), &vertex_maps)
                }
            };
            maps.insert((i, j), f);
        }
        objects.push(total);
        knitted.push(Some(Knitted { vertices, layout }));
    }
    Ok(PosetDiagram::from_table(m, n, elements, objects, maps))
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::intlat::QMatrix;
    use crate::sconstr::check_membership;

    fn q() -> QComplex {
        QComplex::concentrated(0, 1)
    }

    fn s(v: &[usize], n: usize) -> Simplex {
        Simplex::of(v, n)
    }

    fn scalar_map(a: &QComplex, b: &QComplex, x: i64) -> ChainMapQ {
        ChainMapQ::new(Arc::new(a.clone()), Arc::new(b.clone()), [(0, QMatrix::from_ints(&[[x]], 1))].into()).unwrap()
    }

    fn m1n2(x: i64) -> PosetDiagram {
        let objects = BTreeMap::from([(s(&[0, 1], 2), q()), (s(&[0, 2], 2), q())]);
        let arrows = BTreeMap::from([((s(&[0, 1], 2), s(&[0, 2], 2)), scalar_map(&q(), &q(), x))]);
        PosetDiagram::new(1, 2, corner_poset(1, 2), objects, arrows).unwrap()
    }

    #[test]
    fn m1_cone_of_identity_and_of_zero() {
        let x = knit_from_corner(&m1n2(1)).unwrap();
        assert!(x.object(&s(&[1, 2], 2)).unwrap().is_acyclic());
        assert!(check_membership(&x).passes());
        let x = knit_from_corner(&m1n2(0)).unwrap();
        assert_eq!(x.object(&s(&[1, 2], 2)).unwrap().betti_list(), vec![1, 1]);
        assert!(check_membership(&x).passes());
    }

    #[test]
    fn m2_three_column_totalization() {
        let n = 3;
        let objects = BTreeMap::from([(s(&[0, 1, 2], n), q()), (s(&[0, 1, 3], n), q()), (s(&[0, 2, 3], n), q())]);
        let arrows = BTreeMap::from([
            ((s(&[0, 1, 2], n), s(&[0, 1, 3], n)), scalar_map(&q(), &q(), 1)),
            ((s(&[0, 1, 3], n), s(&[0, 2, 3], n)), scalar_map(&q(), &q(), 0)),
        ]);
        let data = PosetDiagram::new(2, n, corner_poset(2, n), objects, arrows).unwrap();
        let x = knit_from_corner(&data).unwrap();
        let top = x.object(&s(&[1, 2, 3], n)).unwrap();
        assert_eq!(top.betti(), BTreeMap::from([(0, 1)]));
        assert!(check_membership(&x).passes());
        assert_eq!(x.restrict(&corner_poset(2, n)), data);
    }

    #[test]
    fn corner_vertices_are_the_column() {
        let sigma = s(&[1, 2, 3], 3);
        let col: Vec<String> = (0..4).map(|u| corner_vertex(&sigma, u).key()).collect();
        assert_eq!(col, vec!["0,1,2", "0,2,2", "0,1,3", "0,2,3"]);
    }
}
