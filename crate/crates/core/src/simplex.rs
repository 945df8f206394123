//! The simplex category: monotone maps `[m] -> [n]`, the posets `Δ(m,n)`,
//! faces, and the two hypercube families (Euler cubes and Auslander–Reiten
//! cubes) that index the exactness conditions downstream.
//!
//! Simplices are stored as dense value tuples. An `m`-simplex in `Δ^n` is a
//! [`MonotoneMap`] with domain `m` and codomain `n`.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplexError {
    #[error("domain mismatch: codomain of inner map is {inner_cod}, domain of outer map is {outer_dom}")]
    DomainMismatch { inner_cod: usize, outer_dom: usize },
    #[error("index {index} out of range for [{n}]")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("values {values:?} do not define a monotone map into [{cod}]")]
    NotMonotone { values: Vec<usize>, cod: usize },
    #[error("a 0-simplex has no faces")]
    ZeroSimplexHasNoFaces,
    #[error("simplices of different shapes cannot be compared")]
    ShapeMismatch,
    #[error("simplex {0} is degenerate")]
    DegenerateInput(MonotoneMap),
    #[error("simplex {0} has last vertex equal to n; σ + (1,…,1) leaves Δ^n")]
    OutOfRange(MonotoneMap),
}

/// A monotone map `[dom] -> [cod]`, stored by its values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonotoneMap {
    cod: usize,
    values: Vec<usize>,
}

/// An `m`-simplex of `Δ^n`.
pub type Simplex = MonotoneMap;

impl MonotoneMap {
    pub fn new(values: Vec<usize>, cod: usize) -> Result<Self, SimplexError> {
        let monotone = values.windows(2).all(|w| w[0] <= w[1]);
        if values.is_empty() || !monotone || values.last().is_some_and(|&v| v > cod) {
            return Err(SimplexError::NotMonotone { values, cod });
        }
        Ok(MonotoneMap { cod, values })
    }

    /// Panicking constructor for literals in tests and examples.
    pub fn of(values: &[usize], cod: usize) -> Self {
        Self::new(values.to_vec(), cod).expect("invalid monotone map literal")
    }

    pub fn identity(n: usize) -> Self {
        MonotoneMap { cod: n, values: (0..=n).collect() }
    }

    pub fn dom(&self) -> usize {
        self.values.len() - 1
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn at(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0
            && *self.values.last().unwrap() == self.cod
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    pub fn is_identity(&self) -> bool {
        self.cod == self.dom() && self.is_injective()
    }

    /// A simplex is degenerate when its underlying map is not injective.
    pub fn is_degenerate(&self) -> bool {
        !self.is_injective()
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &MonotoneMap) -> Result<MonotoneMap, SimplexError> {
        if f.cod != self.dom() {
            return Err(SimplexError::DomainMismatch { inner_cod: f.cod, outer_dom: self.dom() });
        }
        Ok(MonotoneMap {
            cod: self.cod,
            values: f.values.iter().map(|&j| self.values[j]).collect(),
        })
    }

    /// The unique factorization `self = mono ∘ epi`.
    pub fn epi_mono_factor(&self) -> (MonotoneMap, MonotoneMap) {
        let mut image = self.values.clone();
        image.dedup();
        let k = image.len() - 1;
        let mut epi = Vec::with_capacity(self.values.len());
        let mut idx = 0;
        for &v in &self.values {
            while image[idx] != v {
                idx += 1;
            }
            epi.push(idx);
        }
        (MonotoneMap { cod: k, values: epi }, MonotoneMap { cod: self.cod, values: image })
    }

    /// Faces `d_0(σ), …, d_m(σ)`: entry `i` deletes coordinate `i`.
    pub fn faces(&self) -> Result<Vec<Simplex>, SimplexError> {
        if self.dom() == 0 {
            return Err(SimplexError::ZeroSimplexHasNoFaces);
        }
        Ok((0..self.values.len()).map(|i| self.face(i)).collect())
    }

    /// `d_i(σ)`; panics on a 0-simplex or out-of-range `i`.
    pub fn face(&self, i: usize) -> Simplex {
        assert!(self.dom() > 0 && i < self.values.len());
        let mut values = self.values.clone();
        values.remove(i);
        MonotoneMap { cod: self.cod, values }
    }

    /// Coordinatewise order on `Δ(m,n)`.
    pub fn leq(&self, other: &Simplex) -> Result<bool, SimplexError> {
        if self.cod != other.cod || self.values.len() != other.values.len() {
            return Err(SimplexError::ShapeMismatch);
        }
        Ok(self.values.iter().zip(&other.values).all(|(a, b)| a <= b))
    }

    /// Unchecked variant of [`leq`](Self::leq) for simplices known to share a shape.
    pub(crate) fn le(&self, other: &Simplex) -> bool {
        self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    /// Adds a 0/1 vector given as a bitmask (bit `i` is coordinate `i`).
    pub(crate) fn shifted(&self, mask: usize) -> Option<Simplex> {
        let values: Vec<usize> =
            self.values.iter().enumerate().map(|(i, &x)| x + ((mask >> i) & 1)).collect();
        MonotoneMap::new(values, self.cod).ok()
    }

    /// `σ - (1,…,1)`, when it exists.
    pub(crate) fn shifted_down(&self) -> Option<Simplex> {
        if self.values[0] == 0 {
            return None;
        }
        Some(MonotoneMap { cod: self.cod, values: self.values.iter().map(|x| x - 1).collect() })
    }

    /// Comma-joined values, the key format used by the JSON interchange.
    pub fn key(&self) -> String {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        parts.join(",")
    }

    pub fn parse_key(key: &str, cod: usize) -> Result<Simplex, SimplexError> {
        let values: Result<Vec<usize>, _> = key.split(',').map(|s| s.trim().parse()).collect();
        match values {
            Ok(values) => MonotoneMap::new(values, cod),
            Err(_) => Err(SimplexError::NotMonotone { values: vec![], cod }),
        }
    }
}

/// Serialized as its comma-joined key.
impl serde::Serialize for MonotoneMap {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.key())
    }
}

impl PartialOrd for MonotoneMap {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order on value tuples; this fixes every generator indexing.
impl Ord for MonotoneMap {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.values.len(), &self.values, self.cod).cmp(&(other.values.len(), &other.values, other.cod))
    }
}

impl fmt::Display for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.key())
    }
}

impl fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:[{}]→[{}]", self, self.dom(), self.cod)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorKind {
    Coface,
    Codegeneracy,
}

/// Coface `δ_i: [n-1] -> [n]` (omits `i`) or codegeneracy `σ_i: [n+1] -> [n]`
/// (repeats `i`).
pub fn generator(kind: GeneratorKind, n: usize, i: usize) -> Result<MonotoneMap, SimplexError> {
    if i > n {
        return Err(SimplexError::IndexOutOfRange { index: i, n });
    }
    match kind {
        GeneratorKind::Coface => {
            if n == 0 {
                return Err(SimplexError::IndexOutOfRange { index: i, n });
            }
            Ok(MonotoneMap { cod: n, values: (0..=n).filter(|&j| j != i).collect() })
        }
        GeneratorKind::Codegeneracy => {
            let values = (0..=n + 1).map(|j| if j <= i { j } else { j - 1 }).collect();
            Ok(MonotoneMap { cod: n, values })
        }
    }
}

pub fn coface(n: usize, i: usize) -> MonotoneMap {
    generator(GeneratorKind::Coface, n, i).expect("coface index")
}

pub fn codegeneracy(n: usize, i: usize) -> MonotoneMap {
    generator(GeneratorKind::Codegeneracy, n, i).expect("codegeneracy index")
}

/// All of `Δ(m,n)` in lexicographic order.
pub fn enumerate_simplices(m: usize, n: usize) -> Vec<Simplex> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; m + 1];
    loop {
        out.push(MonotoneMap { cod: n, values: cur.clone() });
        // next non-decreasing tuple in lex order
        let mut i = m as isize;
        while i >= 0 && cur[i as usize] == n {
            i -= 1;
        }
        if i < 0 {
            break;
        }
        let v = cur[i as usize] + 1;
        for x in &mut cur[i as usize..] {
            *x = v;
        }
    }
    out
}

pub fn enumerate_nondegenerate(m: usize, n: usize) -> Vec<Simplex> {
    enumerate_simplices(m, n).into_iter().filter(|s| !s.is_degenerate()).collect()
}

/// Covers of `σ` in `Δ(m,n)`: single coordinates raised by one.
pub fn upper_covers(s: &Simplex) -> Vec<Simplex> {
    (0..s.values.len()).filter_map(|i| s.shifted(1 << i)).collect()
}

/// A hypercube `{0,1}^dim -> Δ(m,n)`. Vertex `v` is stored at the index whose
/// bit `i` is `v_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cube {
    dim: usize,
    vertices: Vec<Simplex>,
}

impl Cube {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex(&self, mask: usize) -> &Simplex {
        &self.vertices[mask]
    }

    pub fn vertices(&self) -> &[Simplex] {
        &self.vertices
    }

    /// The vertex at a coordinate vector `v`.
    pub fn vertex_at(&self, v: &[u8]) -> &Simplex {
        let mask = v.iter().enumerate().fold(0, |acc, (i, &b)| acc | ((b as usize & 1) << i));
        &self.vertices[mask]
    }

    pub fn top(&self) -> &Simplex {
        &self.vertices[(1 << self.dim) - 1]
    }

    pub fn bottom(&self) -> &Simplex {
        &self.vertices[0]
    }
}

/// The cube `q(v)_i = ρ_{i+v_i}` of a nondegenerate `(m+1)`-simplex `ρ`.
pub fn euler_cube(rho: &Simplex) -> Result<Cube, SimplexError> {
    if rho.is_degenerate() || rho.dom() == 0 {
        return Err(SimplexError::DegenerateInput(rho.clone()));
    }
    let dim = rho.dom();
    let vertices = (0..1usize << dim)
        .map(|mask| {
            let values = (0..dim).map(|i| rho.values[i + ((mask >> i) & 1)]).collect();
            MonotoneMap { cod: rho.cod, values }
        })
        .collect();
    Ok(Cube { dim, vertices })
}

/// The cube `q(v)_i = σ_i + v_i` of a nondegenerate `m`-simplex with `σ_m < n`.
pub fn ar_cube(sigma: &Simplex) -> Result<Cube, SimplexError> {
    if sigma.is_degenerate() {
        return Err(SimplexError::DegenerateInput(sigma.clone()));
    }
    if *sigma.values.last().unwrap() >= sigma.cod {
        return Err(SimplexError::OutOfRange(sigma.clone()));
    }
    let dim = sigma.values.len();
    let vertices = (0..1usize << dim).map(|mask| sigma.shifted(mask).expect("monotone shift")).collect();
    Ok(Cube { dim, vertices })
}

/// DOT rendering of the Hasse diagram of `Δ(m,n)`.
pub fn hasse_dot(m: usize, n: usize, highlight_nondegenerate: bool) -> String {
    let mut out = format!("digraph delta_{m}_{n} {{\n  rankdir=LR;\n");
    for s in enumerate_simplices(m, n) {
        let style = if highlight_nondegenerate && !s.is_degenerate() {
            ", style=filled, fillcolor=lightblue"
        } else {
            ""
        };
        out.push_str(&format!("  \"{}\" [label=\"{}\"{}];\n", s.key(), s.key(), style));
    }
    for s in enumerate_simplices(m, n) {
        for t in upper_covers(&s) {
            out.push_str(&format!("  \"{}\" -> \"{}\";\n", s.key(), t.key()));
        }
    }
    out.push_str("}\n");
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}
