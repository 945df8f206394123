use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::intlat::{qkernel_basis, qrank, QMatrix};
use crate::simplex::{ar_cube, Simplex};
use crate::slices::{admissible_moves, convex_hull, initial_slice, mutate, Direction, MutationMove, Slice};

use super::complex::{ChainMapQ, QComplex};
use super::diagram::PosetDiagram;
use super::knit::{corner_poset, knit_from_corner};
use super::SConstrError;

/// A mutable functor on a finite subposet, every comparable pair tabulated.
struct Table {
    m: usize,
    n: usize,
    elements: Vec<Simplex>,
    objects: Vec<Arc<QComplex>>,
    maps: HashMap<(usize, usize), ChainMapQ>,
}

impl Table {
    fn from_diagram(d: &PosetDiagram) -> Table {
        let elements = d.elements().to_vec();
        let objects = (0..elements.len()).map(|i| d.object_at(i).clone()).collect();
        let mut maps = HashMap::new();
        for i in 0..elements.len() {
            for j in 0..elements.len() {
                if i != j && elements[i].le(&elements[j]) {
                    maps.insert((i, j), d.map_at(i, j).expect("comparable"));
                }
            }
        }
        Table { m: d.m(), n: d.n(), elements, objects, maps }
    }

    fn into_diagram(self, keep: &BTreeSet<Simplex>) -> PosetDiagram {
        let mut order: Vec<usize> = (0..self.elements.len()).filter(|&i| keep.contains(&self.elements[i])).collect();
        order.sort_by(|&a, &b| self.elements[a].cmp(&self.elements[b]));
        let elements = order.iter().map(|&i| self.elements[i].clone()).collect();
        let objects = order.iter().map(|&i| self.objects[i].clone()).collect();
        let mut maps = HashMap::new();
        for (a, &i) in order.iter().enumerate() {
            for (b, &j) in order.iter().enumerate() {
                if let Some(f) = self.maps.get(&(i, j)) {
                    maps.insert((a, b), f.clone());
                }
            }
        }
        PosetDiagram::from_table(self.m, self.n, elements, objects, maps)
    }

    fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.elements[i].le(&self.elements[j])
    }

    fn position(&self, s: &Simplex) -> Option<usize> {
        self.elements.iter().position(|e| e == s)
    }

    /// Inserts `s` with value `obj`, `into(a)` the map from each smaller element and
    /// `out(b)` the map to each larger one.
    fn insert(
        &mut self,
        s: Simplex,
        obj: Arc<QComplex>,
        mut into: impl FnMut(&Table, usize) -> ChainMapQ,
        mut out: impl FnMut(&Table, usize) -> ChainMapQ,
    ) {
        let x = self.elements.len();
        let mut new_maps = Vec::new();
        for a in 0..x {
            if self.elements[a].le(&s) {
                new_maps.push(((a, x), into(self, a)));
            } else if s.le(&self.elements[a]) {
                new_maps.push(((x, a), out(self, a)));
            }
        }
        self.elements.push(s);
        self.objects.push(obj);
        self.maps.extend(new_maps);
    }

    fn insert_zero(&mut self, s: Simplex) {
        let zero = Arc::new(QComplex::zero());
        let z = zero.clone();
        self.insert(s, zero, |t, a| ChainMapQ::zero(&t.objects[a], &z), |t, b| ChainMapQ::zero(&z, &t.objects[b]));
    }

    /// Replaces `X_y` by `X_y ⊕ E`. Maps into `y` gain the components `extra_in(a)` (absent = zero);
    /// maps out of `y` gain `extra_out(b)` on `E` (absent = zero).
    fn enlarge(
        &mut self,
        y: usize,
        e: &QComplex,
        extra_in: &HashMap<usize, BTreeMap<i32, QMatrix>>,
        extra_out: &HashMap<usize, BTreeMap<i32, QMatrix>>,
    ) {
        let old = self.objects[y].clone();
        let new = Arc::new(old.direct_sum(e));
        for a in 0..self.elements.len() {
            if self.lt(a, y) {
                let f = &self.maps[&(a, y)];
                let src = self.objects[a].clone();
                let blocks = degrees(&src)
                    .map(|k| {
                        let lower = extra_in
                            .get(&a)
                            .and_then(|b| b.get(&k).cloned())
                            .unwrap_or_else(|| QMatrix::zeros(e.dim(k), src.dim(k)));
                        (k, f.block(k).vstack(&lower))
                    })
                    .collect();
                self.maps.insert((a, y), ChainMapQ::new_unchecked(src, new.clone(), blocks));
            } else if self.lt(y, a) {
                let f = &self.maps[&(y, a)];
                let tgt = self.objects[a].clone();
                let blocks = degrees(&new)
                    .map(|k| {
                        let right = extra_out
                            .get(&a)
                            .and_then(|b| b.get(&k).cloned())
                            .unwrap_or_else(|| QMatrix::zeros(tgt.dim(k), e.dim(k)));
                        (k, f.block(k).hstack(&right))
                    })
                    .collect();
                self.maps.insert((y, a), ChainMapQ::new_unchecked(new.clone(), tgt, blocks));
            }
        }
        self.objects[y] = new;
    }

    fn induced_covers(&self, set: &[usize]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for &a in set {
            for &b in set {
                if self.lt(a, b) && !set.iter().any(|&c| c != a && c != b && self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

fn degrees(c: &QComplex) -> std::ops::RangeInclusive<i32> {
    let (lo, hi) = c.range().unwrap_or((1, 0));
    lo..=hi
}

fn span(table: &Table, set: &[usize]) -> Option<(i32, i32)> {
    let ranges: Vec<(i32, i32)> = set.iter().filter_map(|&y| table.objects[y].range()).collect();
    Some((ranges.iter().map(|r| r.0).min()?, ranges.iter().map(|r| r.1).max()?))
}

/// Block offsets of `⊕_{y ∈ set} X_y` in degree `k`.
fn offsets(table: &Table, set: &[usize], k: i32) -> (Vec<usize>, usize) {
    let mut off = Vec::with_capacity(set.len());
    let mut total = 0;
    for &y in set {
        off.push(total);
        total += table.objects[y].dim(k);
    }
    (off, total)
}

fn block_diagonal_d(table: &Table, set: &[usize], k: i32) -> QMatrix {
    let (top, tdim) = offsets(table, set, k);
    let (bot, bdim) = offsets(table, set, k - 1);
    let mut d = QMatrix::zeros(bdim, tdim);
    for (i, &y) in set.iter().enumerate() {
        d.set_block(bot[i], top[i], &table.objects[y].d(k));
    }
    d
}

/// Strict limit over `set`, as compatible families inside `⊕ X_y`.
struct Limit {
    obj: Arc<QComplex>,
    kernel: BTreeMap<i32, QMatrix>,
}

fn limit(table: &Table, set: &[usize]) -> Limit {
    let Some((lo, hi)) = span(table, set) else {
        return Limit { obj: Arc::new(QComplex::zero()), kernel: BTreeMap::new() };
    };
    let covers = table.induced_covers(set);
    let pos: HashMap<usize, usize> = set.iter().enumerate().map(|(i, &y)| (y, i)).collect();
    let mut kernel = BTreeMap::new();
    for k in lo..=hi {
        let (off, total) = offsets(table, set, k);
        let rows: usize = covers.iter().map(|&(_, b)| table.objects[b].dim(k)).sum();
        let mut c = QMatrix::zeros(rows, total);
        let mut r = 0;
        for &(a, b) in &covers {
            let f = table.maps[&(a, b)].block(k);
            c.set_block(r, off[pos[&a]], &f);
            c.set_block(r, off[pos[&b]], &QMatrix::identity(f.rows()).neg());
            r += f.rows();
        }
        kernel.insert(k, if rows == 0 { QMatrix::identity(total) } else { qkernel_basis(&c) });
    }
    let dim = |k: i32| kernel.get(&k).map_or(0, QMatrix::cols);
    let obj = QComplex::build(lo, hi, dim, |k| {
        let dk = block_diagonal_d(table, set, k).mul(&kernel[&k]);
        kernel[&(k - 1)].solve(&dk).expect("compatible families are closed under d")
    })
    .expect("limit of complexes");
    Limit { obj: Arc::new(obj), kernel }
}

impl Limit {
    fn projection_block(&self, table: &Table, set: &[usize], y: usize, k: i32) -> QMatrix {
        let Some(kern) = self.kernel.get(&k) else { return QMatrix::zeros(table.objects[y].dim(k), 0) };
        let (off, _) = offsets(table, set, k);
        let i = set.iter().position(|&z| z == y).expect("member");
        kern.block(off[i], 0, table.objects[y].dim(k), kern.cols())
    }

    /// The map into the limit induced by a compatible cone `legs(y): A_k -> X_y[k]`.
    fn factor(&self, table: &Table, set: &[usize], a: &QComplex, legs: impl Fn(usize, i32) -> QMatrix) -> BTreeMap<i32, QMatrix> {
        let mut out = BTreeMap::new();
        for k in degrees(a) {
            let Some(kern) = self.kernel.get(&k) else { continue };
            let (off, total) = offsets(table, set, k);
            let mut g = QMatrix::zeros(total, a.dim(k));
            for (i, &y) in set.iter().enumerate() {
                g.set_block(off[i], 0, &legs(y, k));
            }
            out.insert(k, kern.solve(&g).expect("cone factors through the limit"));
        }
        out
    }
}

/// Strict colimit over `set`, as a quotient of `⊕ X_y`.
struct Colimit {
    obj: Arc<QComplex>,
    quotient: BTreeMap<i32, QMatrix>,
    section: BTreeMap<i32, QMatrix>,
}

fn colimit(table: &Table, set: &[usize]) -> Colimit {
    let Some((lo, hi)) = span(table, set) else {
        return Colimit { obj: Arc::new(QComplex::zero()), quotient: BTreeMap::new(), section: BTreeMap::new() };
    };
    let covers = table.induced_covers(set);
    let pos: HashMap<usize, usize> = set.iter().enumerate().map(|(i, &y)| (y, i)).collect();
    let mut quotient = BTreeMap::new();
    let mut section = BTreeMap::new();
    for k in lo..=hi {
        let (off, total) = offsets(table, set, k);
        let cols: usize = covers.iter().map(|&(a, _)| table.objects[a].dim(k)).sum();
        let mut rel = QMatrix::zeros(total, cols);
        let mut c = 0;
        for &(a, b) in &covers {
            let f = table.maps[&(a, b)].block(k);
            rel.set_block(off[pos[&a]], c, &QMatrix::identity(f.cols()));
            rel.set_block(off[pos[&b]], c, &f.neg());
            c += f.cols();
        }
        let pi = if cols == 0 { QMatrix::identity(total) } else { qkernel_basis(&rel.transpose()).transpose() };
        let s = pi.solve(&QMatrix::identity(pi.rows())).expect("quotient maps are surjective");
        quotient.insert(k, pi);
        section.insert(k, s);
    }
    let dim = |k: i32| quotient.get(&k).map_or(0, QMatrix::rows);
    let obj = QComplex::build(lo, hi, dim, |k| quotient[&(k - 1)].mul(&block_diagonal_d(table, set, k)).mul(&section[&k]))
        .expect("colimit of complexes");
    Colimit { obj: Arc::new(obj), quotient, section }
}

impl Colimit {
    fn coprojection_block(&self, table: &Table, set: &[usize], y: usize, k: i32) -> QMatrix {
        let Some(pi) = self.quotient.get(&k) else { return QMatrix::zeros(0, table.objects[y].dim(k)) };
        let (off, _) = offsets(table, set, k);
        let i = set.iter().position(|&z| z == y).expect("member");
        pi.block(0, off[i], pi.rows(), table.objects[y].dim(k))
    }

    /// The map out of the colimit induced by a compatible cocone `legs(y): X_y[k] -> B_k`.
    fn factor(&self, table: &Table, set: &[usize], b: &QComplex, legs: impl Fn(usize, i32) -> QMatrix) -> BTreeMap<i32, QMatrix> {
        let mut out = BTreeMap::new();
        for (&k, s) in &self.section {
            let (off, total) = offsets(table, set, k);
            let mut g = QMatrix::zeros(b.dim(k), total);
            for (i, &y) in set.iter().enumerate() {
                g.set_block(0, off[i], &legs(y, k));
            }
            out.insert(k, g.mul(s));
        }
        out
    }
}

fn unit_column(len: usize, i: usize) -> QMatrix {
    let mut v = QMatrix::zeros(len, 1);
    v[(i, 0)] = BigRational::one();
    v
}

/// Direct sum of disks; `tops[j]` is the upper degree of disk `j`.
fn disks(tops: &[i32]) -> QComplex {
    tops.iter().fold(QComplex::zero(), |acc, &t| acc.direct_sum(&QComplex::disk(t - 1)))
}

/// Index of disk `j`'s basis vector in degree `k` of [`disks`], if present.
fn disk_slot(tops: &[i32], j: usize, k: i32) -> Option<usize> {
    let present = |t: i32| t == k || t - 1 == k;
    present(tops[j]).then(|| tops[..j].iter().filter(|&&t| present(t)).count())
}

/// Makes every matching map `X_y -> lim_{z > y} X_z` with `y` in the up-closed `set` surjective.
fn reedy_fibrant(table: &mut Table, set: &[usize]) {
    let mut order = set.to_vec();
    order.sort_by(|&a, &b| table.elements[b].cmp(&table.elements[a]));
    for &y in &order {
        let above: Vec<usize> = set.iter().copied().filter(|&z| table.lt(y, z)).collect();
        let lim = limit(table, &above);
        let Some((lo, hi)) = lim.obj.range() else { continue };
        let obj = table.objects[y].clone();
        let phi = lim.factor(table, &above, &obj, |z, k| table.maps[&(y, z)].block(k));
        let mut tops: Vec<i32> = Vec::new();
        let mut vecs: Vec<QMatrix> = Vec::new();
        for k in (lo..=hi).rev() {
            let dim_m = lim.obj.dim(k);
            let mut image = phi.get(&k).cloned().unwrap_or_else(|| QMatrix::zeros(dim_m, obj.dim(k)));
            for (t, b) in tops.iter().zip(&vecs) {
                if *t == k + 1 {
                    image = image.hstack(&lim.obj.d(k + 1).mul(b));
                }
            }
            let mut rank = qrank(&image);
            for i in 0..dim_m {
                if rank == dim_m {
                    break;
                }
                let e = unit_column(dim_m, i);
                let trial = image.hstack(&e);
                let r = qrank(&trial);
                if r > rank {
                    image = trial;
                    rank = r;
                    tops.push(k);
                    vecs.push(e);
                }
            }
        }
        if tops.is_empty() {
            continue;
        }
        let e = disks(&tops);
        // ψ: E -> lim, then project to each z above y
        let psi = |k: i32| -> QMatrix {
            let mut m = QMatrix::zeros(lim.obj.dim(k), e.dim(k));
            for (j, (&t, b)) in tops.iter().zip(&vecs).enumerate() {
                if let Some(c) = disk_slot(&tops, j, k) {
                    let col = if t == k { b.clone() } else { lim.obj.d(k + 1).mul(b) };
                    m.set_block(0, c, &col);
                }
            }
            m
        };
        let extra_out: HashMap<usize, BTreeMap<i32, QMatrix>> = above
            .iter()
            .map(|&z| (z, degrees(&e).map(|k| (k, lim.projection_block(table, &above, z, k).mul(&psi(k)))).collect()))
            .collect();
        table.enlarge(y, &e, &HashMap::new(), &extra_out);
    }
}

/// Makes every latching map `colim_{z < y} X_z -> X_y` with `y` in the down-closed `set` injective.
fn reedy_cofibrant(table: &mut Table, set: &[usize]) {
    let mut order = set.to_vec();
    order.sort_by(|&a, &b| table.elements[a].cmp(&table.elements[b]));
    for &y in &order {
        let below: Vec<usize> = set.iter().copied().filter(|&z| table.lt(z, y)).collect();
        let col = colimit(table, &below);
        let Some((lo, hi)) = col.obj.range() else { continue };
        let obj = table.objects[y].clone();
        let ell = col.factor(table, &below, &obj, |z, k| table.maps[&(z, y)].block(k));
        // disk j has bottom degree bottoms[j]; its functional λ_j lives on colim_{bottoms[j]}
        let mut bottoms: Vec<i32> = Vec::new();
        let mut lambdas: Vec<QMatrix> = Vec::new();
        for k in lo..=hi {
            let dim_l = col.obj.dim(k);
            let mut stacked = ell.get(&k).cloned().unwrap_or_else(|| QMatrix::zeros(obj.dim(k), dim_l));
            for (b, l) in bottoms.iter().zip(&lambdas) {
                if *b + 1 == k {
                    stacked = stacked.vstack(&l.mul(&col.obj.d(k)));
                }
            }
            loop {
                let ker = qkernel_basis(&stacked);
                if ker.cols() == 0 {
                    break;
                }
                let i = (0..dim_l).find(|&i| !ker[(i, 0)].is_zero()).expect("nonzero kernel vector");
                let lambda = unit_column(dim_l, i).transpose();
                stacked = stacked.vstack(&lambda);
                bottoms.push(k);
                lambdas.push(lambda);
            }
        }
        if bottoms.is_empty() {
            continue;
        }
        let tops: Vec<i32> = bottoms.iter().map(|b| b + 1).collect();
        let e = disks(&tops);
        // φ: colim -> E, composed with each coprojection
        let phi = |k: i32| -> QMatrix {
            let mut m = QMatrix::zeros(e.dim(k), col.obj.dim(k));
            for (j, (&b, l)) in bottoms.iter().zip(&lambdas).enumerate() {
                if let Some(r) = disk_slot(&tops, j, k) {
                    let row = if b == k { l.clone() } else { l.mul(&col.obj.d(k)) };
                    m.set_block(r, 0, &row);
                }
            }
            m
        };
        let extra_in: HashMap<usize, BTreeMap<i32, QMatrix>> = below
            .iter()
            .map(|&z| {
                let src = table.objects[z].clone();
                (z, degrees(&src).map(|k| (k, phi(k).mul(&col.coprojection_block(table, &below, z, k)))).collect())
            })
            .collect();
        table.enlarge(y, &e, &extra_in, &HashMap::new());
    }
}

/// Inserts `x` with value the homotopy limit over everything above it.
fn insert_holim(table: &mut Table, x: Simplex) {
    let above: Vec<usize> = (0..table.elements.len()).filter(|&y| x.le(&table.elements[y]) && table.elements[y] != x).collect();
    reedy_fibrant(table, &above);
    let lim = limit(table, &above);
    let obj = lim.obj.clone();
    let proj: HashMap<usize, ChainMapQ> = above
        .iter()
        .map(|&y| {
            let blocks = degrees(&obj).map(|k| (k, lim.projection_block(table, &above, y, k))).collect();
            (y, ChainMapQ::new_unchecked(obj.clone(), table.objects[y].clone(), blocks))
        })
        .collect();
    let o2 = obj.clone();
    table.insert(
        x,
        obj,
        |t, a| {
            let src = t.objects[a].clone();
            let blocks = lim.factor(t, &above, &src, |y, k| t.maps[&(a, y)].block(k));
            ChainMapQ::new_unchecked(src, o2.clone(), blocks)
        },
        |_, b| proj[&b].clone(),
    );
}

/// Inserts `x` with value the homotopy colimit over everything below it.
fn insert_hocolim(table: &mut Table, x: Simplex) {
    let below: Vec<usize> = (0..table.elements.len()).filter(|&y| table.elements[y].le(&x) && table.elements[y] != x).collect();
    reedy_cofibrant(table, &below);
    let col = colimit(table, &below);
    let obj = col.obj.clone();
    let coproj: HashMap<usize, ChainMapQ> = below
        .iter()
        .map(|&y| {
            let src = table.objects[y].clone();
            let blocks = degrees(&src).map(|k| (k, col.coprojection_block(table, &below, y, k))).collect();
            (y, ChainMapQ::new_unchecked(src, obj.clone(), blocks))
        })
        .collect();
    let o2 = obj.clone();
    table.insert(
        x,
        obj,
        |_, a| coproj[&a].clone(),
        |t, b| {
            let tgt = t.objects[b].clone();
            let blocks = col.factor(t, &below, &tgt, |y, k| t.maps[&(y, b)].block(k));
            ChainMapQ::new_unchecked(o2.clone(), tgt, blocks)
        },
    );
}

fn check_hull_data(s: &Slice, data: &PosetDiagram) -> Result<BTreeSet<Simplex>, SConstrError> {
    let hull = convex_hull(s);
    if data.m() != s.m() || data.n() != s.n() || !data.elements().iter().eq(hull.iter()) {
        return Err(SConstrError::Shape(format!("data must be indexed by the convex hull of {s}")));
    }
    for (i, e) in data.elements().iter().enumerate() {
        if e.is_degenerate() && !data.object_at(i).is_acyclic() {
            return Err(SConstrError::DegenerateNotAcyclic(e.clone()));
        }
    }
    Ok(hull)
}

/// Transports data on `hull(S)` across one mutation. The new vertex is the homotopy limit
/// (backward move) or colimit (forward move) of the rest of the distinguished cube, which
/// makes that cube biCartesian; the other objects are kept up to quasi-isomorphism.
pub fn mutate_data(s: &Slice, data: &PosetDiagram, mv: &MutationMove) -> Result<PosetDiagram, SConstrError> {
    check_hull_data(s, data)?;
    let s2 = mutate(s, mv)?;
    let mut table = Table::from_diagram(data);
    let base = match mv.direction {
        Direction::Forward => mv.pivot.clone(),
        Direction::Backward => mv.pivot.shifted_down().expect("admissible move"),
    };
    let cube = ar_cube(&base).expect("admissible move");
    let new_vertex = match mv.direction {
        Direction::Forward => cube.top().clone(),
        Direction::Backward => cube.bottom().clone(),
    };
    for v in cube.vertices() {
        if *v != new_vertex && table.position(v).is_none() {
            table.insert_zero(v.clone());
        }
    }
    let hull2 = convex_hull(&s2);
    let mut fresh: Vec<Simplex> = hull2.iter().filter(|x| table.position(x).is_none()).cloned().collect();
    match mv.direction {
        Direction::Backward => {
            fresh.sort_by(|a, b| b.cmp(a));
            for x in fresh {
                insert_holim(&mut table, x);
            }
        }
        Direction::Forward => {
            fresh.sort();
            for x in fresh {
                insert_hocolim(&mut table, x);
            }
        }
    }
    Ok(table.into_diagram(&hull2))
}

/// A shortest sequence of backward moves from `s` to the initial slice.
pub fn backward_path(s: &Slice, cap: usize) -> Result<Vec<MutationMove>, SConstrError> {
    let target = initial_slice(s.m(), s.n());
    let mut prev: HashMap<Slice, (Slice, MutationMove)> = HashMap::new();
    let mut seen: BTreeSet<Slice> = BTreeSet::from([s.clone()]);
    let mut queue = VecDeque::from([s.clone()]);
    while let Some(cur) = queue.pop_front() {
        if cur == target {
            let mut path = Vec::new();
            let mut at = cur;
            while let Some((p, mv)) = prev.get(&at) {
                path.push(mv.clone());
                at = p.clone();
            }
            path.reverse();
            return Ok(path);
        }
        for mv in admissible_moves(&cur).into_iter().filter(|mv| mv.direction == Direction::Backward) {
            let next = mutate(&cur, &mv)?;
            if seen.insert(next.clone()) {
                if seen.len() > cap {
                    return Err(SConstrError::NoPathFound { from: s.to_string(), cap });
                }
                prev.insert(next.clone(), (cur.clone(), mv));
                queue.push_back(next);
            }
        }
    }
    Err(SConstrError::NoPathFound { from: s.to_string(), cap })
}

/// Extends data on `hull(S)` to all of `Δ(m,n)`: backward mutations down to the initial
/// slice, zero on the rest of `P(m,n)`, then [`knit_from_corner`].
pub fn knit_from_slice(s: &Slice, data: &PosetDiagram) -> Result<PosetDiagram, SConstrError> {
    check_hull_data(s, data)?;
    let mut cur_slice = s.clone();
    let mut cur = data.clone();
    for mv in backward_path(s, 100_000)? {
        cur = mutate_data(&cur_slice, &cur, &mv)?;
        cur_slice = mutate(&cur_slice, &mv)?;
    }
    let mut table = Table::from_diagram(&cur);
    let corner: BTreeSet<Simplex> = corner_poset(s.m(), s.n()).into_iter().collect();
    for p in &corner {
        if table.position(p).is_none() {
            table.insert_zero(p.clone());
        }
    }
    knit_from_corner(&table.into_diagram(&corner))
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::intlat::QMatrix;
    use crate::sconstr::{check_membership, random_indicator_data};

    fn s(v: &[usize], n: usize) -> Simplex {
        Simplex::of(v, n)
    }

    #[test]
    fn fibre_of_identity_is_acyclic() {
        let sl = Slice::new(1, 2, [s(&[0, 2], 2), s(&[1, 2], 2)]);
        let q = Arc::new(QComplex::concentrated(0, 1));
        let id = ChainMapQ::new(q.clone(), q.clone(), [(0, QMatrix::identity(1))].into()).unwrap();
        let data = PosetDiagram::new(
            1,
            2,
            convex_hull(&sl),
            [(s(&[0, 2], 2), (*q).clone()), (s(&[1, 2], 2), (*q).clone())].into(),
            [((s(&[0, 2], 2), s(&[1, 2], 2)), id)].into(),
        )
        .unwrap();
        let x = knit_from_slice(&sl, &data).unwrap();
        assert!(x.object(&s(&[0, 1], 2)).unwrap().is_acyclic());
        assert!(check_membership(&x).passes());
    }

    #[test]
    fn mesh_mutation_m1() {
        // X_01 -> X_02 ⊕ X_11 -> X_12: forward at (0,1) from the slice {01, 02} of n = 2
        let sl = initial_slice(1, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let data = random_indicator_data(1, 2, &convex_hull(&sl).into_iter().collect::<Vec<_>>(), &mut rng);
            let mv = MutationMove::forward(s(&[0, 1], 2));
            let out = mutate_data(&sl, &data, &mv).unwrap();
            let back = mutate_data(&mutate(&sl, &mv).unwrap(), &out, &MutationMove::backward(s(&[1, 2], 2))).unwrap();
            assert_eq!(back.betti_table(), data.betti_table());
        }
    }

    #[test]
    fn backward_paths_reach_the_initial_slice() {
        let start = mutate(&initial_slice(2, 4), &MutationMove::forward(s(&[0, 1, 2], 4))).unwrap();
        let path = backward_path(&start, 1000).unwrap();
        assert_eq!(path, vec![MutationMove::backward(s(&[1, 2, 3], 4))]);
        assert!(backward_path(&initial_slice(2, 4), 10).unwrap().is_empty());
    }
}
