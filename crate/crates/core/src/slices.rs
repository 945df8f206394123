//! Slices in `Δ(m,n)`: the initial slice, slice mutation, mutation orbits,
//! and convex hulls.
//!
//! A slice is, operationally, any member of the mutation orbit of the initial
//! slice. For `m = 1` an independent description (one element per diagonal,
//! consecutive diagonals joined by an arrow) is available in
//! [`brute_force_slices_m1`].

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::simplex::{ar_cube, binomial, enumerate_nondegenerate, enumerate_simplices, Cube, Simplex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SliceError {
    #[error("{0} is not in the slice")]
    NotInSlice(Simplex),
    #[error("cannot mutate at {pivot}: {reason}")]
    NotMutable { pivot: Simplex, reason: String },
    #[error("orbit exceeded the cap of {cap} slices")]
    CapExceeded { cap: usize, partial: Box<OrbitGraph> },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slice {
    m: usize,
    n: usize,
    members: BTreeSet<Simplex>,
}

impl Slice {
    pub fn new(m: usize, n: usize, members: impl IntoIterator<Item = Simplex>) -> Self {
        Slice { m, n, members: members.into_iter().collect() }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &BTreeSet<Simplex> {
        &self.members
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.members.contains(s)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Sorted member keys joined by spaces, e.g. `"0,1 0,2"`.
    pub fn label(&self) -> String {
        self.members.iter().map(Simplex::key).collect::<Vec<_>>().join(" ")
    }
}

impl fmt::Display for Slice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members.iter().map(|s| s.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MutationMove {
    pub pivot: Simplex,
    pub direction: Direction,
}

impl MutationMove {
    pub fn forward(pivot: Simplex) -> Self {
        MutationMove { pivot, direction: Direction::Forward }
    }

    pub fn backward(pivot: Simplex) -> Self {
        MutationMove { pivot, direction: Direction::Backward }
    }
}

/// `{σ nondegenerate : σ₀ = 0}`.
pub fn initial_slice(m: usize, n: usize) -> Slice {
    Slice::new(m, n, enumerate_nondegenerate(m, n).into_iter().filter(|s| s.at(0) == 0))
}

fn shift_down(s: &Simplex) -> Option<Simplex> {
    if s.at(0) == 0 {
        return None;
    }
    Simplex::new(s.values().iter().map(|x| x - 1).collect(), s.cod()).ok()
}

fn shift_up(s: &Simplex) -> Option<Simplex> {
    Simplex::new(s.values().iter().map(|x| x + 1).collect(), s.cod()).ok()
}

/// The simplex replacing the pivot, after checking admissibility.
fn replacement(s: &Slice, mv: &MutationMove) -> Result<Simplex, SliceError> {
    let pivot = &mv.pivot;
    if !s.contains(pivot) {
        return Err(SliceError::NotInSlice(pivot.clone()));
    }
    let not_mutable = |reason: String| SliceError::NotMutable { pivot: pivot.clone(), reason };
    let (base, new) = match mv.direction {
        Direction::Forward => {
            let up = shift_up(pivot).ok_or_else(|| not_mutable(format!("last vertex equals n = {}", s.n)))?;
            (pivot.clone(), up)
        }
        Direction::Backward => {
            let down = shift_down(pivot).ok_or_else(|| not_mutable("first vertex is 0".into()))?;
            (down.clone(), down)
        }
    };
    if s.contains(&new) {
        return Err(not_mutable(format!("{new} is already in the slice")));
    }
    let cube = ar_cube(&base).expect("nondegenerate base");
    for mask in 1..(1usize << cube.dim()) - 1 {
        let v = cube.vertex(mask);
        if !v.is_degenerate() && !s.contains(v) {
            return Err(not_mutable(format!("intermediate vertex {v} is neither degenerate nor in the slice")));
        }
    }
    Ok(new)
}

/// Exchanges the pivot for `pivot ± (1,…,1)`.
pub fn mutate(s: &Slice, mv: &MutationMove) -> Result<Slice, SliceError> {
    let new = replacement(s, mv)?;
    let mut members = s.members.clone();
    members.remove(&mv.pivot);
    members.insert(new);
    Ok(Slice { m: s.m, n: s.n, members })
}

/// Every admissible move, members in order, forward before backward.
pub fn admissible_moves(s: &Slice) -> Vec<MutationMove> {
    let mut out = Vec::new();
    for p in &s.members {
        for mv in [MutationMove::forward(p.clone()), MutationMove::backward(p.clone())] {
            if replacement(s, &mv).is_ok() {
                out.push(mv);
            }
        }
    }
    out
}

/// `{τ : s ≤ τ ≤ s′ for some s, s′ ∈ S}`, degenerate `τ` included.
pub fn convex_hull(s: &Slice) -> BTreeSet<Simplex> {
    hull_of(s.m, s.n, s.members.iter())
}

pub(crate) fn hull_of<'a>(m: usize, n: usize, set: impl Iterator<Item = &'a Simplex> + Clone) -> BTreeSet<Simplex> {
    enumerate_simplices(m, n)
        .into_iter()
        .filter(|t| set.clone().any(|a| a.leq(t).unwrap_or(false)) && set.clone().any(|b| t.leq(b).unwrap_or(false)))
        .collect()
}

/// `hull(S ∪ S′)` together with the distinguished cube of the move.
pub fn diamond_poset(s: &Slice, mv: &MutationMove) -> Result<(BTreeSet<Simplex>, Cube), SliceError> {
    let s2 = mutate(s, mv)?;
    let poset = hull_of(s.m, s.n, s.members.iter().chain(s2.members.iter()));
    let base = match mv.direction {
        Direction::Forward => mv.pivot.clone(),
        Direction::Backward => shift_down(&mv.pivot).expect("admissible"),
    };
    Ok((poset, ar_cube(&base).expect("admissible")))
}

/// A forward mutation edge `from -> to` at `pivot`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitEdge {
    pub from: usize,
    pub to: usize,
    pub pivot: String,
}

/// Breadth-first mutation orbit of the initial slice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitGraph {
    pub m: usize,
    pub n: usize,
    pub nodes: Vec<Slice>,
    pub edges: Vec<OrbitEdge>,
    /// False when the cap stopped the search early.
    pub complete: bool,
}

impl OrbitGraph {
    /// Always true: every node was reached from the initial slice.
    pub fn connected(&self) -> bool {
        true
    }

    pub fn index_of(&self, s: &Slice) -> Option<usize> {
        self.nodes.iter().position(|x| x == s)
    }

    pub fn to_dot(&self) -> String {
        let mut out = format!("digraph orbit_{}_{} {{\n", self.m, self.n);
        for (i, s) in self.nodes.iter().enumerate() {
            out.push_str(&format!("  n{i} [label=\"{}\"];\n", s.label().replace(' ', "\\n")));
        }
        for e in &self.edges {
            out.push_str(&format!("  n{} -> n{} [label=\"{}\"];\n", e.from, e.to, e.pivot));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let nodes: Vec<Vec<String>> = self.nodes.iter().map(|s| s.members.iter().map(Simplex::key).collect()).collect();
        serde_json::json!({
            "m": self.m,
            "n": self.n,
            "nodes": nodes,
            "edges": self.edges,
            "connected": self.connected(),
            "partial": !self.complete,
        })
    }
}

/// Orbit of [`initial_slice`] under all admissible moves, at most `cap` slices.
pub fn mutation_orbit(m: usize, n: usize, cap: usize) -> Result<OrbitGraph, SliceError> {
    let start = initial_slice(m, n);
    let mut index: HashMap<Slice, usize> = HashMap::from([(start.clone(), 0)]);
    let mut graph = OrbitGraph { m, n, nodes: vec![start], edges: vec![], complete: true };
    let mut queue = VecDeque::from([0usize]);
    let mut forward_seen = BTreeSet::new();
    while let Some(i) = queue.pop_front() {
        let cur = graph.nodes[i].clone();
        for mv in admissible_moves(&cur) {
            let next = mutate(&cur, &mv).expect("admissible");
            let j = match index.get(&next) {
                Some(&j) => j,
                None => {
                    if graph.nodes.len() >= cap {
                        graph.complete = false;
                        return Err(SliceError::CapExceeded { cap, partial: Box::new(graph) });
                    }
                    let j = graph.nodes.len();
                    index.insert(next.clone(), j);
                    graph.nodes.push(next);
                    queue.push_back(j);
                    j
                }
            };
            let edge = match mv.direction {
                Direction::Forward => (i, j, mv.pivot.key()),
                Direction::Backward => (j, i, shift_down(&mv.pivot).expect("admissible").key()),
            };
            if forward_seen.insert(edge.clone()) {
                graph.edges.push(OrbitEdge { from: edge.0, to: edge.1, pivot: edge.2 });
            }
        }
    }
    Ok(graph)
}

/// All `m = 1` slices of `Δ(1,n)` from the section description: exactly one
/// simplex `(i,j)` per length `j - i`, consecutive lengths joined by an arrow
/// `(i,j) -> (i,j+1)` or `(i,j) -> (i+1,j)`. Exhaustive over `n`-subsets.
pub fn brute_force_slices_m1(n: usize) -> BTreeSet<Slice> {
    let all = enumerate_nondegenerate(1, n);
    let mut out = BTreeSet::new();
    let mut chosen = Vec::with_capacity(n);
    subsets(&all, n, 0, &mut chosen, &mut |set: &[Simplex]| {
        let mut by_len: Vec<Option<&Simplex>> = vec![None; n + 1];
        for s in set {
            let l = s.at(1) - s.at(0);
            if by_len[l].replace(s).is_some() {
                return;
            }
        }
        let adjacent = (1..n).all(|l| {
            let (a, b) = (by_len[l].unwrap(), by_len[l + 1].unwrap());
            (b.at(0) == a.at(0) && b.at(1) == a.at(1) + 1) || (b.at(0) + 1 == a.at(0) && b.at(1) == a.at(1))
        });
        if adjacent {
            out.insert(Slice::new(1, n, set.iter().cloned()));
        }
    });
    out
}

fn subsets(all: &[Simplex], k: usize, start: usize, chosen: &mut Vec<Simplex>, f: &mut impl FnMut(&[Simplex])) {
    if chosen.len() == k {
        f(chosen);
        return;
    }
    for i in start..all.len() {
        if all.len() - i < k - chosen.len() {
            break;
        }
        chosen.push(all[i].clone());
        subsets(all, k, i + 1, chosen, f);
        chosen.pop();
    }
}

/// `C(n, m)`, the size of every slice.
pub fn slice_size(m: usize, n: usize) -> usize {
    binomial(n, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[usize], n: usize) -> Simplex {
        Simplex::of(v, n)
    }

    fn slice(m: usize, n: usize, v: &[&[usize]]) -> Slice {
        Slice::new(m, n, v.iter().map(|x| s(x, n)))
    }

    #[test]
    fn initial_slice_examples() {
        assert_eq!(initial_slice(1, 3), slice(1, 3, &[&[0, 1], &[0, 2], &[0, 3]]));
        let i24 = initial_slice(2, 4);
        assert_eq!(i24.len(), 6);
        assert_eq!(
            i24,
            slice(2, 4, &[&[0, 1, 2], &[0, 1, 3], &[0, 1, 4], &[0, 2, 3], &[0, 2, 4], &[0, 3, 4]])
        );
        assert_eq!(initial_slice(2, 2), slice(2, 2, &[&[0, 1, 2]]));
    }

    #[test]
    fn initial_slice_move_at_012() {
        let start = initial_slice(2, 4);
        let next = mutate(&start, &MutationMove::forward(s(&[0, 1, 2], 4))).unwrap();
        let mut want = start.members().clone();
        want.remove(&s(&[0, 1, 2], 4));
        want.insert(s(&[1, 2, 3], 4));
        assert_eq!(next.members(), &want);
    }

    #[test]
    fn mutate_examples() {
        let s12 = slice(1, 2, &[&[0, 1], &[0, 2]]);
        let got = mutate(&s12, &MutationMove::forward(s(&[0, 1], 2))).unwrap();
        assert_eq!(got, slice(1, 2, &[&[1, 2], &[0, 2]]));
        let err = mutate(&initial_slice(1, 3), &MutationMove::forward(s(&[0, 3], 3))).unwrap_err();
        assert!(matches!(err, SliceError::NotMutable { .. }));
        let err = mutate(&s12, &MutationMove::forward(s(&[1, 2], 2))).unwrap_err();
        assert!(matches!(err, SliceError::NotInSlice(_)));
        // (1,2,3) is an intermediate vertex outside the slice
        let err = mutate(&initial_slice(2, 4), &MutationMove::forward(s(&[0, 1, 3], 4))).unwrap_err();
        assert!(matches!(err, SliceError::NotMutable { .. }));
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(mutation_orbit(1, 3, 10_000).unwrap().nodes.len(), 4);
        assert_eq!(mutation_orbit(1, 4, 10_000).unwrap().nodes.len(), 8);
        let g = mutation_orbit(2, 2, 10_000).unwrap();
        assert_eq!((g.nodes.len(), g.edges.len()), (1, 0));
    }

    #[test]
    fn orbit_cap() {
        match mutation_orbit(2, 4, 3) {
            Err(SliceError::CapExceeded { cap, partial }) => {
                assert_eq!(cap, 3);
                assert_eq!(partial.nodes.len(), 3);
                assert!(!partial.complete);
            }
            other => panic!("expected CapExceeded, got {other:?}"),
        }
    }

    #[test]
    fn orbit_matches_brute_force_for_m1() {
        for n in 1..=5 {
            let orbit: BTreeSet<Slice> = mutation_orbit(1, n, 10_000).unwrap().nodes.into_iter().collect();
            let brute = brute_force_slices_m1(n);
            assert_eq!(brute.len(), 1 << (n - 1));
            assert_eq!(orbit, brute, "n = {n}");
        }
    }

    #[test]
    fn hull_examples() {
        let h = convex_hull(&slice(1, 2, &[&[0, 1], &[0, 2]]));
        assert_eq!(h, [s(&[0, 1], 2), s(&[0, 2], 2)].into_iter().collect());
        let h = convex_hull(&slice(1, 2, &[&[0, 1], &[1, 2]]));
        assert_eq!(h, [s(&[0, 1], 2), s(&[0, 2], 2), s(&[1, 1], 2), s(&[1, 2], 2)].into_iter().collect());
        let single = slice(2, 3, &[&[0, 1, 3]]);
        assert_eq!(convex_hull(&single), single.members().clone());
    }

    #[test]
    fn diamond_examples() {
        let s12 = slice(1, 2, &[&[0, 1], &[0, 2]]);
        let mv = MutationMove::forward(s(&[0, 1], 2));
        let (poset, cube) = diamond_poset(&s12, &mv).unwrap();
        let verts: Vec<Simplex> = cube.vertices().to_vec();
        assert_eq!(verts, vec![s(&[0, 1], 2), s(&[1, 1], 2), s(&[0, 2], 2), s(&[1, 2], 2)]);
        let s2 = mutate(&s12, &mv).unwrap();
        assert!(s12.members().iter().chain(s2.members()).all(|x| poset.contains(x)));

        let start = initial_slice(2, 4);
        let mv = MutationMove::forward(s(&[0, 1, 2], 4));
        let (_, cube) = diamond_poset(&start, &mv).unwrap();
        assert_eq!(cube.bottom(), &s(&[0, 1, 2], 4));
        assert_eq!(cube.top(), &s(&[1, 2, 3], 4));
    }

    #[test]
    fn json_and_dot() {
        let g = mutation_orbit(1, 3, 100).unwrap();
        let j = g.to_json();
        assert_eq!(j["nodes"].as_array().unwrap().len(), 4);
        assert_eq!(j["partial"], serde_json::json!(false));
        assert!(g.to_dot().contains("n0 -> "));
    }
}
