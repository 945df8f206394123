use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::intlat::QMatrix;
use crate::simplex::{ar_cube, enumerate_nondegenerate, enumerate_simplices, euler_cube, Cube, MonotoneMap, Simplex};

use super::complex::{ChainMapQ, QComplex};
use super::cube::{is_bicartesian, CubeDiagram};
use super::SConstrError;

/// A strict functor from a subposet of `Δ(m,n)` to complexes. Arrows are supplied on
/// the induced cover relations; every composite is tabulated at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct PosetDiagram {
    m: usize,
    n: usize,
    elements: Vec<Simplex>,
    index: HashMap<Simplex, usize>,
    objects: Vec<Arc<QComplex>>,
    covers: Vec<Vec<usize>>,
    maps: HashMap<(usize, usize), ChainMapQ>,
}

/// A diagram on all of `Δ(m,n)`.
pub type SDiagram = PosetDiagram;

fn induced_covers(elements: &[Simplex]) -> Vec<Vec<usize>> {
    let n = elements.len();
    (0..n)
        .map(|a| {
            let above: Vec<usize> = (a + 1..n).filter(|&b| elements[a].le(&elements[b])).collect();
            above
                .iter()
                .copied()
                .filter(|&b| !above.iter().any(|&c| c != b && elements[c].le(&elements[b])))
                .collect()
        })
        .collect()
}

impl PosetDiagram {
    /// Objects absent from `objects` are zero; cover arrows absent from `arrows` are zero.
    pub fn new(
        m: usize,
        n: usize,
        elements: impl IntoIterator<Item = Simplex>,
        mut objects: BTreeMap<Simplex, QComplex>,
        mut arrows: BTreeMap<(Simplex, Simplex), ChainMapQ>,
    ) -> Result<Self, SConstrError> {
        let mut elements: Vec<Simplex> = elements.into_iter().collect();
        elements.sort();
        elements.dedup();
        for s in &elements {
            if s.dom() != m || s.cod() != n {
                return Err(SConstrError::Shape(format!("{s} is not in Δ({m},{n})")));
            }
        }
        let index: HashMap<Simplex, usize> = elements.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        if let Some(k) = objects.keys().find(|k| !index.contains_key(*k)) {
            return Err(SConstrError::Shape(format!("object at {k} outside the poset")));
        }
        let objs: Vec<Arc<QComplex>> =
            elements.iter().map(|s| Arc::new(objects.remove(s).unwrap_or_else(QComplex::zero))).collect();
        let covers = induced_covers(&elements);
        let mut cover_maps = HashMap::new();
        for (a, ups) in covers.iter().enumerate() {
            for &b in ups {
                let key = (elements[a].clone(), elements[b].clone());
                let f = match arrows.remove(&key) {
                    Some(f) => {
                        if **f.source() != *objs[a] || **f.target() != *objs[b] {
                            return Err(SConstrError::Shape(format!("arrow {}->{} has the wrong endpoints", key.0, key.1)));
                        }
                        f.with_ends(objs[a].clone(), objs[b].clone())
                    }
                    None => ChainMapQ::zero(&objs[a], &objs[b]),
                };
                cover_maps.insert((a, b), f);
            }
        }
        if let Some(((a, b), _)) = arrows.into_iter().next() {
            return Err(SConstrError::Shape(format!("{a}->{b} is not a cover relation of the poset")));
        }
        let maps = tabulate(&elements, &covers, &cover_maps)?;
        Ok(PosetDiagram { m, n, elements, index, objects: objs, covers, maps })
    }

    /// Trusted constructor from a complete, functorial table of maps between comparable elements.
    pub(crate) fn from_table(
        m: usize,
        n: usize,
        elements: Vec<Simplex>,
        objects: Vec<Arc<QComplex>>,
        maps: HashMap<(usize, usize), ChainMapQ>,
    ) -> Self {
        let index = elements.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let covers = induced_covers(&elements);
        PosetDiagram { m, n, elements, index, objects, covers, maps }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[Simplex] {
        &self.elements
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index.contains_key(s)
    }

    pub fn is_full(&self) -> bool {
        self.elements.len() == enumerate_simplices(self.m, self.n).len()
    }

    pub fn object(&self, s: &Simplex) -> Option<&Arc<QComplex>> {
        self.index.get(s).map(|&i| &self.objects[i])
    }

    pub(crate) fn object_at(&self, i: usize) -> &Arc<QComplex> {
        &self.objects[i]
    }

    pub(crate) fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// The map `X_a -> X_b` for `a ≤ b`.
    pub fn map(&self, a: &Simplex, b: &Simplex) -> Option<ChainMapQ> {
        let (i, j) = (self.index_of(a)?, self.index_of(b)?);
        self.map_at(i, j)
    }

    pub(crate) fn map_at(&self, i: usize, j: usize) -> Option<ChainMapQ> {
        if i == j {
            Some(ChainMapQ::identity(&self.objects[i]))
        } else {
            self.maps.get(&(i, j)).cloned()
        }
    }

    /// Arrows on the induced cover relations.
    pub fn cover_arrows(&self) -> impl Iterator<Item = (&Simplex, &Simplex, &ChainMapQ)> {
        self.covers.iter().enumerate().flat_map(move |(a, ups)| {
            ups.iter().map(move |&b| (&self.elements[a], &self.elements[b], &self.maps[&(a, b)]))
        })
    }

    /// The subdiagram on `subset ∩ elements`.
    pub fn restrict<'a>(&self, subset: impl IntoIterator<Item = &'a Simplex>) -> PosetDiagram {
        let mut idx: Vec<usize> = subset.into_iter().filter_map(|s| self.index_of(s)).collect();
        idx.sort_unstable();
        idx.dedup();
        let elements = idx.iter().map(|&i| self.elements[i].clone()).collect();
        let objects = idx.iter().map(|&i| self.objects[i].clone()).collect();
        let mut maps = HashMap::new();
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate().skip(a + 1) {
                if let Some(f) = self.maps.get(&(i, j)) {
                    maps.insert((a, b), f.clone());
                }
            }
        }
        Self::from_table(self.m, self.n, elements, objects, maps)
    }

    /// The cube `v ↦ X_{c(v)}`, when every vertex lies in the poset.
    pub fn cube(&self, c: &Cube) -> Option<CubeDiagram> {
        let idx: Option<Vec<usize>> = c.vertices().iter().map(|s| self.index_of(s)).collect();
        let idx = idx?;
        let values = idx.iter().map(|&i| self.objects[i].clone()).collect();
        CubeDiagram::new(c.dim(), values, |v, i| self.map_at(idx[v], idx[v | 1 << i]).expect("cube edges are comparable")).ok()
    }

    /// The diagram with `X_s` replaced by zero and every map touching `s` zeroed.
    /// The result is functorial when `s` is maximal or minimal.
    pub fn zero_out(&self, s: &Simplex) -> PosetDiagram {
        let Some(k) = self.index_of(s) else { return self.clone() };
        let mut objects = self.objects.clone();
        objects[k] = Arc::new(QComplex::zero());
        let maps = self
            .maps
            .iter()
            .map(|(&(i, j), f)| {
                let f = if i == k || j == k {
                    ChainMapQ::zero(&objects[i], &objects[j])
                } else {
                    f.clone()
                };
                ((i, j), f)
            })
            .collect();
        Self::from_table(self.m, self.n, self.elements.clone(), objects, maps)
    }

    /// The diagram with `X_s ⊕ ℚ[degree]` at `s`, the new summand mapping to and from zero.
    /// Always functorial.
    pub fn with_skyscraper(&self, s: &Simplex, degree: i32) -> PosetDiagram {
        let Some(k) = self.index_of(s) else { return self.clone() };
        let old = self.objects[k].clone();
        let mut objects = self.objects.clone();
        objects[k] = Arc::new(old.direct_sum(&QComplex::concentrated(degree, 1)));
        let maps = self
            .maps
            .iter()
            .map(|(&(i, j), f)| {
                let f = if i == k || j == k {
                    let blocks = f
                        .blocks()
                        .iter()
                        .map(|(&d, b)| {
                            let mut big = QMatrix::zeros(objects[j].dim(d), objects[i].dim(d));
                            big.set_block(0, 0, b);
                            (d, big)
                        })
                        .collect();
                    ChainMapQ::new_unchecked(objects[i].clone(), objects[j].clone(), blocks)
                } else {
                    f.clone()
                };
                ((i, j), f)
            })
            .collect();
        Self::from_table(self.m, self.n, self.elements.clone(), objects, maps)
    }

    /// Nonzero Betti numbers of every object.
    pub fn betti_table(&self) -> BTreeMap<Simplex, BTreeMap<i32, usize>> {
        self.elements.iter().zip(&self.objects).map(|(s, x)| (s.clone(), x.betti())).collect()
    }
}

fn tabulate(
    elements: &[Simplex],
    covers: &[Vec<usize>],
    cover_maps: &HashMap<(usize, usize), ChainMapQ>,
) -> Result<HashMap<(usize, usize), ChainMapQ>, SConstrError> {
    let mut maps: HashMap<(usize, usize), ChainMapQ> = cover_maps.clone();
    for a in (0..elements.len()).rev() {
        for b in a + 1..elements.len() {
            if !elements[a].le(&elements[b]) {
                continue;
            }
            let mut first: Option<(usize, ChainMapQ)> = None;
            for &c in covers[a].iter().filter(|&&c| elements[c].le(&elements[b])) {
                let step = &cover_maps[&(a, c)];
                let via = if c == b { step.clone() } else { maps[&(c, b)].compose(step) };
                match &first {
                    None => first = Some((c, via)),
                    Some((c0, f)) => {
                        if *f != via {
                            return Err(SConstrError::NotAFunctor {
                                square: format!(
                                    "{} -> {{{}, {}}} -> {}",
                                    elements[a], elements[*c0], elements[c], elements[b]
                                ),
                            });
                        }
                    }
                }
            }
            let (_, f) = first.expect("comparable elements are joined by a cover chain");
            maps.insert((a, b), f);
        }
    }
    Ok(maps)
}

/// Outcome of [`check_membership`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MembershipReport {
    /// Every degenerate object is acyclic.
    pub degenerate_ok: bool,
    pub degenerate_failures: Vec<Simplex>,
    pub euler_failures: Vec<Simplex>,
    pub ar_failures: Vec<Simplex>,
}

impl MembershipReport {
    pub fn passes(&self) -> bool {
        self.degenerate_ok && self.euler_failures.is_empty() && self.ar_failures.is_empty()
    }
}

/// Checks degenerate objects and every Euler and AR cube lying inside the diagram.
pub fn check_membership(x: &PosetDiagram) -> MembershipReport {
    let degenerate_failures: Vec<Simplex> = x
        .elements
        .iter()
        .zip(&x.objects)
        .filter(|(s, o)| s.is_degenerate() && !o.is_acyclic())
        .map(|(s, _)| s.clone())
        .collect();
    let fails = |c: &Cube| match x.cube(c) {
        Some(cube) => !is_bicartesian(&cube).unwrap_or(false),
        None => false,
    };
    let euler_failures = if x.m < x.n {
        enumerate_nondegenerate(x.m + 1, x.n)
            .into_iter()
            .filter(|rho| fails(&euler_cube(rho).expect("nondegenerate")))
            .collect()
    } else {
        vec![]
    };
    let ar_failures = enumerate_nondegenerate(x.m, x.n)
        .into_iter()
        .filter(|s| s.at(x.m) < x.n)
        .filter(|s| fails(&ar_cube(s).expect("nondegenerate")))
        .collect();
    MembershipReport { degenerate_ok: degenerate_failures.is_empty(), degenerate_failures, euler_failures, ar_failures }
}

/// `(reindex X)_τ = X_{α∘τ}` for `α: [n′] -> [n]`.
pub fn reindex(x: &SDiagram, alpha: &MonotoneMap) -> Result<SDiagram, SConstrError> {
    if alpha.cod() != x.n || !x.is_full() {
        return Err(SConstrError::Shape(format!("cannot reindex a diagram over [{}] along {alpha}", x.n)));
    }
    let elements = enumerate_simplices(x.m, alpha.dom());
    let img: Vec<usize> = elements
        .iter()
        .map(|t| x.index_of(&alpha.compose(t).expect("composable")).expect("full diagram"))
        .collect();
    let objects = img.iter().map(|&i| x.objects[i].clone()).collect();
    let mut maps = HashMap::new();
    for a in 0..elements.len() {
        for b in a + 1..elements.len() {
            if elements[a].le(&elements[b]) {
                maps.insert((a, b), x.map_at(img[a], img[b]).expect("monotone image"));
            }
        }
    }
    Ok(PosetDiagram::from_table(x.m, alpha.dom(), elements, objects, maps))
}
