use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::intlat::IntMatrix;
use crate::simplex::{codegeneracy, coface, enumerate_simplices, MonotoneMap};

use super::group::kron_identity;
use super::{FgAb, GroupHom, SimpAbError};

/// A simplicial abelian group truncated at level `L`: levels `0..=L`, faces
/// `d_i: X_n -> X_{n-1}` and degeneracies `s_i: X_n -> X_{n+1}` for `n < L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialAb {
    levels: Vec<FgAb>,
    faces: Vec<Vec<GroupHom>>,
    degeneracies: Vec<Vec<GroupHom>>,
}

impl SimplicialAb {
    /// `faces[n]` holds `d_0..d_n` out of level `n` (empty for `n = 0`);
    /// `degeneracies[n]` holds `s_0..s_n` out of level `n < L`.
    pub fn new(levels: Vec<FgAb>, faces: Vec<Vec<GroupHom>>, degeneracies: Vec<Vec<GroupHom>>) -> Result<Self, SimpAbError> {
        let len = levels.len();
        if len == 0 || faces.len() != len || degeneracies.len() != len - 1 {
            return Err(SimpAbError::ShapeMismatch("inconsistent truncation".into()));
        }
        for n in 0..len {
            let expected = if n == 0 { 0 } else { n + 1 };
            if faces[n].len() != expected {
                return Err(SimpAbError::ShapeMismatch(format!("level {n} needs {expected} face maps")));
            }
            for d in &faces[n] {
                if d.source() != &levels[n] || d.target() != &levels[n - 1] {
                    return Err(SimpAbError::ShapeMismatch(format!("face out of level {n} has wrong groups")));
                }
            }
            if n + 1 < len {
                if degeneracies[n].len() != n + 1 {
                    return Err(SimpAbError::ShapeMismatch(format!("level {n} needs {} degeneracies", n + 1)));
                }
                for s in &degeneracies[n] {
                    if s.source() != &levels[n] || s.target() != &levels[n + 1] {
                        return Err(SimpAbError::ShapeMismatch(format!("degeneracy out of level {n} has wrong groups")));
                    }
                }
            }
        }
        Ok(SimplicialAb { levels, faces, degeneracies })
    }

    /// Builds the object from its action `α ↦ X(α)` on cofaces and codegeneracies.
    pub(crate) fn from_action(levels: Vec<FgAb>, act: impl Fn(&MonotoneMap) -> IntMatrix) -> Self {
        let l = levels.len() - 1;
        let faces = (0..=l)
            .map(|n| {
                if n == 0 {
                    return vec![];
                }
                (0..=n)
                    .map(|i| GroupHom::new_unchecked(levels[n].clone(), levels[n - 1].clone(), act(&coface(n, i))))
                    .collect()
            })
            .collect();
        let degeneracies = (0..l)
            .map(|n| {
                (0..=n)
                    .map(|i| GroupHom::new_unchecked(levels[n].clone(), levels[n + 1].clone(), act(&codegeneracy(n, i))))
                    .collect()
            })
            .collect();
        SimplicialAb { levels, faces, degeneracies }
    }

    pub fn truncation(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &FgAb {
        &self.levels[n]
    }

    pub fn levels(&self) -> &[FgAb] {
        &self.levels
    }

    /// `d_i` out of level `n`.
    pub fn face(&self, n: usize, i: usize) -> &GroupHom {
        &self.faces[n][i]
    }

    /// `s_i` out of level `n`.
    pub fn degeneracy(&self, n: usize, i: usize) -> &GroupHom {
        &self.degeneracies[n][i]
    }

    /// Replaces a face map; used to inject faults in tests and demos.
    pub fn with_face(mut self, n: usize, i: usize, map: GroupHom) -> Self {
        self.faces[n][i] = map;
        self
    }

    pub fn with_degeneracy(mut self, n: usize, i: usize, map: GroupHom) -> Self {
        self.degeneracies[n][i] = map;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IdentityKind {
    /// `d_i d_j = d_{j-1} d_i` for `i < j`.
    FaceFace,
    /// The three `d_i s_j` families.
    FaceDegeneracy,
    /// `s_i s_j = s_{j+1} s_i` for `i ≤ j`.
    DegeneracyDegeneracy,
}

impl fmt::Display for IdentityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            IdentityKind::FaceFace => "(d,d)",
            IdentityKind::FaceDegeneracy => "(d,s)",
            IdentityKind::DegeneracyDegeneracy => "(s,s)",
        };
        write!(f, "{s}")
    }
}

/// One failing instance: identity family, source level, and indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub identity: IdentityKind,
    pub n: usize,
    pub i: usize,
    pub j: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every simplicial identity whose two sides live inside the truncation.
pub fn check_simplicial_identities(x: &SimplicialAb) -> Report {
    let l = x.truncation();
    let mut violations = Vec::new();
    let c = |a: &GroupHom, b: &GroupHom| a.compose(b).expect("levels match");
    for n in 2..=l {
        for j in 0..=n {
            for i in 0..j {
                if !c(x.face(n - 1, i), x.face(n, j)).equals(&c(x.face(n - 1, j - 1), x.face(n, i))) {
                    violations.push(Violation { identity: IdentityKind::FaceFace, n, i, j });
                }
            }
        }
    }
    for n in 0..l {
        for j in 0..=n {
            for i in 0..=n + 1 {
                let lhs = c(x.face(n + 1, i), x.degeneracy(n, j));
                let rhs = if i < j {
                    c(x.degeneracy(n - 1, j - 1), x.face(n, i))
                } else if i == j || i == j + 1 {
                    GroupHom::identity(x.level(n))
                } else {
                    c(x.degeneracy(n - 1, j), x.face(n, i - 1))
                };
                if !lhs.equals(&rhs) {
                    violations.push(Violation { identity: IdentityKind::FaceDegeneracy, n, i, j });
                }
            }
        }
    }
    for n in 0..l.saturating_sub(1) {
        for j in 0..=n {
            for i in 0..=j {
                if !c(x.degeneracy(n + 1, i), x.degeneracy(n, j)).equals(&c(x.degeneracy(n + 1, j + 1), x.degeneracy(n, i))) {
                    violations.push(Violation { identity: IdentityKind::DegeneracyDegeneracy, n, i, j });
                }
            }
        }
    }
    Report { violations }
}

/// Surjections `[n] ↠ [m]` in lexicographic order.
pub fn surjections(n: usize, m: usize) -> Vec<MonotoneMap> {
    if n < m {
        return vec![];
    }
    enumerate_simplices(n, m).into_iter().filter(MonotoneMap::is_surjective).collect()
}

/// The Dold–Kan object `Γ(A[m])` truncated at `L`: level `n` is `A` to the
/// number of surjections `[n] ↠ [m]`.
pub fn gamma(a: &FgAb, m: usize, l: usize) -> SimplicialAb {
    let surj: Vec<Vec<MonotoneMap>> = (0..=l + 1).map(|n| surjections(n, m)).collect();
    let levels = (0..=l).map(|n| a.power(surj[n].len())).collect();
    SimplicialAb::from_action(levels, |alpha| {
        let (src, dst) = (&surj[alpha.cod()], &surj[alpha.dom()]);
        let mut p = IntMatrix::zeros(dst.len(), src.len());
        for (col, eta) in src.iter().enumerate() {
            let c = eta.compose(alpha).expect("composable");
            if c.is_surjective() {
                let row = dst.binary_search(&c).expect("surjection listed");
                p[(row, col)] = 1.into();
            }
        }
        kron_identity(&p, a)
    })
}

/// Arrays `(a_ij)` with the Euler relation, stored by `(a_01, …, a_0n)`.
pub fn na1(a: &FgAb, l: usize) -> SimplicialAb {
    let levels = (0..=l).map(|n| a.power(n)).collect();
    SimplicialAb::from_action(levels, |alpha| {
        let (n_src, n_dst) = (alpha.cod(), alpha.dom());
        let mut p = IntMatrix::zeros(n_dst, n_src);
        let base = alpha.at(0);
        for k in 1..=n_dst {
            if alpha.at(k) > 0 {
                p[(k - 1, alpha.at(k) - 1)] += BigInt::from(1);
            }
            if base > 0 {
                p[(k - 1, base - 1)] -= BigInt::from(1);
            }
        }
        kron_identity(&p, a)
    })
}

/// Levelwise maps `na1(A, L) -> gamma(A, 1, L)`: the component of the
/// surjection whose first `1` sits at position `j` receives `a_0j - a_0(j-1)`.
pub fn na1_to_gamma(a: &FgAb, l: usize) -> Vec<GroupHom> {
    (0..=l)
        .map(|n| {
            let surj = surjections(n, 1);
            let mut p = IntMatrix::zeros(surj.len(), n);
            for (row, eta) in surj.iter().enumerate() {
                let j = eta.values().iter().position(|&v| v == 1).expect("surjective");
                p[(row, j - 1)] += BigInt::from(1);
                if j >= 2 {
                    p[(row, j - 2)] -= BigInt::from(1);
                }
            }
            GroupHom::new_unchecked(a.power(n), a.power(surj.len()), kron_identity(&p, a))
        })
        .collect()
}

/// Whether `maps` is a levelwise isomorphism `X -> Y` commuting with every
/// face and degeneracy.
pub fn compare_via(x: &SimplicialAb, y: &SimplicialAb, maps: &[GroupHom]) -> Result<bool, SimpAbError> {
    let l = x.truncation().min(y.truncation());
    if maps.len() != l + 1 {
        return Err(SimpAbError::ShapeMismatch(format!("expected {} level maps, got {}", l + 1, maps.len())));
    }
    for (n, f) in maps.iter().enumerate() {
        if f.source() != x.level(n) || f.target() != y.level(n) {
            return Err(SimpAbError::ShapeMismatch(format!("level map {n} has the wrong groups")));
        }
    }
    if !maps.iter().all(GroupHom::is_isomorphism) {
        return Ok(false);
    }
    let c = |a: &GroupHom, b: &GroupHom| a.compose(b).expect("levels match");
    for n in 1..=l {
        for i in 0..=n {
            if !c(&maps[n - 1], x.face(n, i)).equals(&c(y.face(n, i), &maps[n])) {
                return Ok(false);
            }
        }
    }
    for n in 0..l {
        for i in 0..=n {
            if !c(&maps[n + 1], x.degeneracy(n, i)).equals(&c(y.degeneracy(n, i), &maps[n])) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Serialize, Deserialize)]
struct SimplicialJson {
    truncation: usize,
    levels: Vec<Vec<u64>>,
    faces: Vec<Vec<Vec<Vec<i64>>>>,
    degeneracies: Vec<Vec<Vec<Vec<i64>>>>,
}

fn matrix_rows(m: &IntMatrix) -> Vec<Vec<i64>> {
    m.row_iter().map(|r| r.iter().map(|x| x.to_i64().expect("entry fits in i64")).collect()).collect()
}

fn hom_from_rows(src: &FgAb, dst: &FgAb, rows: &[Vec<i64>]) -> Result<GroupHom, SimpAbError> {
    if rows.len() != dst.ngens() || rows.iter().any(|r| r.len() != src.ngens()) {
        return Err(SimpAbError::Parse("matrix shape does not match the levels".into()));
    }
    GroupHom::new(src.clone(), dst.clone(), IntMatrix::from_rows(rows, src.ngens()))
}

impl SimplicialAb {
    /// JSON with level orders and face/degeneracy matrices. Reduced
    /// coordinates are listed in ascending generator order.
    pub fn to_json(&self) -> serde_json::Value {
        let mats = |maps: &Vec<Vec<GroupHom>>| maps.iter().map(|v| v.iter().map(|h| matrix_rows(h.matrix())).collect()).collect();
        let doc = SimplicialJson {
            truncation: self.truncation(),
            levels: self.levels.iter().map(|g| g.orders().to_vec()).collect(),
            faces: mats(&self.faces),
            degeneracies: mats(&self.degeneracies),
        };
        serde_json::to_value(doc).expect("serializable")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, SimpAbError> {
        let doc: SimplicialJson = serde_json::from_value(value.clone()).map_err(|e| SimpAbError::Parse(e.to_string()))?;
        let levels: Vec<FgAb> = doc.levels.into_iter().map(FgAb::new).collect();
        if levels.len() != doc.truncation + 1 || doc.faces.len() != levels.len() || doc.degeneracies.len() != doc.truncation {
            return Err(SimpAbError::Parse("truncation does not match the stored levels".into()));
        }
        let mut faces = Vec::new();
        for (n, fs) in doc.faces.iter().enumerate() {
            let mut row = Vec::new();
            for m in fs {
                if n == 0 {
                    return Err(SimpAbError::Parse("level 0 has no faces".into()));
                }
                row.push(hom_from_rows(&levels[n], &levels[n - 1], m)?);
            }
            faces.push(row);
        }
        let mut degeneracies = Vec::new();
        for (n, ss) in doc.degeneracies.iter().enumerate() {
            degeneracies.push(ss.iter().map(|m| hom_from_rows(&levels[n], &levels[n + 1], m)).collect::<Result<Vec<_>, _>>()?);
        }
        SimplicialAb::new(levels, faces, degeneracies)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> FgAb {
        FgAb::z()
    }

    #[test]
    fn gamma_level_sizes() {
        let g = gamma(&z(), 1, 4);
        for n in 0..=4 {
            assert_eq!(g.level(n).ngens(), n);
        }
        assert_eq!(gamma(&z(), 2, 2).level(2).ngens(), 1);
        assert_eq!(gamma(&FgAb::cyclic(3), 2, 4).level(4), &FgAb::new(vec![3; 6]));
    }

    #[test]
    fn identities_hold_for_constructions() {
        assert!(check_simplicial_identities(&gamma(&FgAb::cyclic(2), 1, 4)).is_empty());
        assert!(check_simplicial_identities(&gamma(&FgAb::new(vec![0, 2]), 2, 5)).is_empty());
        assert!(check_simplicial_identities(&na1(&z(), 4)).is_empty());
    }

    #[test]
    fn corrupted_face_is_reported() {
        let g = gamma(&z(), 1, 3);
        let d = g.face(2, 1);
        let neg = GroupHom::new(d.source().clone(), d.target().clone(), {
            let mut m = d.matrix().clone();
            for i in 0..m.rows() {
                m.negate_row(i);
            }
            m
        })
        .unwrap();
        let bad = g.with_face(2, 1, neg);
        let report = check_simplicial_identities(&bad);
        assert!(report.violations.iter().any(|v| v.identity == IdentityKind::FaceFace));
    }

    #[test]
    fn na1_reduced_coordinate_examples() {
        let x = na1(&FgAb::cyclic(3), 3);
        assert_eq!(x.level(2), &FgAb::new(vec![3, 3]));
        assert_eq!(x.face(2, 0).matrix(), &IntMatrix::from_rows(&[[-1, 1]], 2));
        assert_eq!(x.degeneracy(1, 0).matrix(), &IntMatrix::from_rows(&[[0], [1]], 1));
    }

    /// Full-array oracle: build `a_ij = a_0j - a_0i`, apply the index map, and read back row 0.
    #[test]
    fn na1_matches_array_oracle() {
        let x = na1(&z(), 4);
        let sample = [3i64, -1, 7, 2];
        for n in 1..=4 {
            let a0: Vec<i64> = std::iter::once(0).chain(sample[..n].iter().copied()).collect();
            let full = |i: usize, j: usize| a0[j] - a0[i];
            for i in 0..=n {
                let delta = coface(n, i);
                let want: Vec<i64> = (1..n).map(|k| full(delta.at(0), delta.at(k))).collect();
                let got = x.face(n, i).matrix().mul(&IntMatrix::from_rows(&sample[..n].iter().map(|&v| [v]).collect::<Vec<_>>(), 1)).unwrap();
                let got: Vec<i64> = got.row_iter().map(|r| r[0].to_i64().unwrap()).collect();
                assert_eq!(got, want, "d_{i} at level {n}");
            }
        }
    }

    #[test]
    fn compare_examples() {
        let g = gamma(&z(), 1, 3);
        let ids: Vec<GroupHom> = g.levels().iter().map(GroupHom::identity).collect();
        assert!(compare_via(&g, &g, &ids).unwrap());

        let a = FgAb::cyclic(4);
        let x = na1(&a, 3);
        let y = gamma(&a, 1, 3);
        let maps = na1_to_gamma(&a, 3);
        assert!(compare_via(&x, &y, &maps).unwrap());

        let mut flipped = maps.clone();
        let f = &flipped[2];
        let mut m = f.matrix().clone();
        m.negate_row(0);
        flipped[2] = GroupHom::new(f.source().clone(), f.target().clone(), m).unwrap();
        assert!(!compare_via(&x, &y, &flipped).unwrap());
        assert!(compare_via(&x, &y, &maps[..2]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = gamma(&FgAb::new(vec![0, 2]), 1, 3);
        let back = SimplicialAb::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
    }
}
