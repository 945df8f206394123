use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::One;
use rand::Rng;

use crate::intlat::QMatrix;
use crate::simplex::Simplex;

use super::complex::{ChainMapQ, QComplex};
use super::diagram::PosetDiagram;
use super::knit::corner_poset;

/// One summand: `ℚ` (or a disk) in `degree`, identity maps on the convex set `members`.
struct Indicator {
    members: Vec<bool>,
    degree: i32,
    disk: bool,
}

fn random_indicator<R: Rng>(elements: &[Simplex], rng: &mut R) -> Option<Indicator> {
    let nondeg: Vec<usize> = (0..elements.len()).filter(|&i| !elements[i].is_degenerate()).collect();
    if nondeg.is_empty() {
        return None;
    }
    for _ in 0..20 {
        let a = nondeg[rng.gen_range(0..nondeg.len())];
        let above: Vec<usize> = nondeg.iter().copied().filter(|&b| elements[a].le(&elements[b])).collect();
        let b = above[rng.gen_range(0..above.len())];
        let members: Vec<bool> =
            elements.iter().map(|x| elements[a].le(x) && x.le(&elements[b])).collect();
        if members.iter().zip(elements).all(|(&inside, x)| !inside || !x.is_degenerate()) {
            return Some(Indicator { members, degree: rng.gen_range(-1..=1), disk: rng.gen_bool(0.15) });
        }
    }
    None
}

fn random_unimodular<R: Rng>(k: usize, rng: &mut R) -> QMatrix {
    let mut lower = QMatrix::identity(k);
    let mut upper = QMatrix::identity(k);
    for i in 0..k {
        for j in 0..i {
            lower[(i, j)] = BigRational::from_integer(rng.gen_range(-2i64..=2).into());
            upper[(j, i)] = BigRational::from_integer(rng.gen_range(-2i64..=2).into());
        }
    }
    lower.mul(&upper)
}

/// A direct sum of 1 to 3 shifted convex-indicator functors on `elements`, each value
/// `ℚ` (occasionally an acyclic disk), conjugated by random unimodular changes of basis.
pub fn random_indicator_data<R: Rng>(m: usize, n: usize, elements: &[Simplex], rng: &mut R) -> PosetDiagram {
    let count = rng.gen_range(1..=3);
    let summands: Vec<Indicator> = (0..count).filter_map(|_| random_indicator(elements, rng)).collect();
    let slot = |ind: &Indicator, k: i32| if ind.disk { k == ind.degree || k == ind.degree + 1 } else { k == ind.degree };
    let (lo, hi) = (-1, 2);
    // basis of X_x in degree k: summands containing x with a slot in degree k
    let basis = |x: usize, k: i32| -> Vec<usize> {
        (0..summands.len()).filter(|&s| summands[s].members[x] && slot(&summands[s], k)).collect()
    };
    let mut change: BTreeMap<(usize, i32), (QMatrix, QMatrix)> = BTreeMap::new();
    let mut objects = BTreeMap::new();
    let mut arcs = Vec::new();
    for x in 0..elements.len() {
        for k in lo..=hi {
            let d = basis(x, k).len();
            let g = random_unimodular(d, rng);
            let g_inv = g.solve(&QMatrix::identity(d)).expect("unimodular");
            change.insert((x, k), (g, g_inv));
        }
        let obj = QComplex::build(
            lo,
            hi,
            |k| basis(x, k).len(),
            |k| {
                let (top, bottom) = (basis(x, k), basis(x, k - 1));
                let mut d = QMatrix::zeros(bottom.len(), top.len());
                for (c, s) in top.iter().enumerate() {
                    if summands[*s].disk && summands[*s].degree + 1 == k {
                        let r = bottom.iter().position(|t| t == s).expect("disk bottom");
                        d[(r, c)] = BigRational::one();
                    }
                }
                change[&(x, k - 1)].0.mul(&d).mul(&change[&(x, k)].1)
            },
        )
        .expect("indicator sums are complexes");
        objects.insert(elements[x].clone(), obj.clone());
        arcs.push(Arc::new(obj));
    }
    let mut arrows = BTreeMap::new();
    for a in 0..elements.len() {
        for b in 0..elements.len() {
            if a == b || !elements[a].le(&elements[b]) {
                continue;
            }
            let covered = (0..elements.len())
                .any(|c| c != a && c != b && elements[a].le(&elements[c]) && elements[c].le(&elements[b]));
            if covered {
                continue;
            }
            let blocks = (lo..=hi)
                .map(|k| {
                    let (src, tgt) = (basis(a, k), basis(b, k));
                    let mut f = QMatrix::zeros(tgt.len(), src.len());
                    for (c, s) in src.iter().enumerate() {
                        if let Some(r) = tgt.iter().position(|t| t == s) {
                            f[(r, c)] = BigRational::one();
                        }
                    }
                    (k, change[&(b, k)].0.mul(&f).mul(&change[&(a, k)].1))
                })
                .collect();
            let map = ChainMapQ::new(arcs[a].clone(), arcs[b].clone(), blocks).expect("indicator maps are chain maps");
            arrows.insert((elements[a].clone(), elements[b].clone()), map);
        }
    }
    PosetDiagram::new(m, n, elements.iter().cloned(), objects, arrows).expect("convex indicators are functors")
}

/// Random convex-indicator data on `P(m,n)`.
pub fn random_corner_data<R: Rng>(m: usize, n: usize, rng: &mut R) -> PosetDiagram {
    random_indicator_data(m, n, &corner_poset(m, n), rng)
}
