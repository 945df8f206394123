//! The acceptance suite, shared by `deltak verify` and the `acceptance` test target.

use std::cell::Cell;
use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::grothendieck::{canonical_iso_to_gamma, hom_into, k0_invariants, lattices_agree};
use crate::intlat::{hermite_normal_form, hnf, smith_normal_form, IntMatrix};
use crate::sconstr::{
    check_membership, corner_poset, knit_from_corner, knit_from_slice, random_corner_data, random_indicator_data, reindex,
    SDiagram,
};
use crate::simpab::{compare_via, gamma, homotopy_group, na1, na1_to_gamma, FgAb};
use crate::simplex::{binomial, codegeneracy, coface, MonotoneMap, Simplex};
use crate::slices::{brute_force_slices_m1, convex_hull, initial_slice, mutate, mutation_orbit, MutationMove, Slice};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    /// Reduced sizes, for a fast smoke run.
    Quick,
    /// The stated acceptance ranges.
    Full,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl std::fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "criterion {:>2} [{}] {} ({:.2}s): {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.seconds,
            self.detail
        )
    }
}

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "Eilenberg-Mac Lane property"),
    (2, "K0 ranks"),
    (3, "AR relations generate Euler relations"),
    (4, "array model vs Dold-Kan"),
    (5, "Hom(K0, A) vs Gamma"),
    (6, "knitting from the corner"),
    (7, "slice equivalence shadow"),
    (8, "mutation combinatorics"),
    (9, "simplicial and recollement identities"),
    (10, "normal-form kernel"),
];

type Outcome = Result<String, String>;

thread_local! {
    static SEEDED_FAULT: Cell<bool> = const { Cell::new(false) };
}

pub fn run_criterion(id: u8, profile: Profile) -> CriterionResult {
    run_criterion_seeded(id, profile, false)
}

/// With `seed_fault`, the first check of the criterion is forced to fail, which
/// exercises the reporting path end to end.
pub fn run_criterion_seeded(id: u8, profile: Profile, seed_fault: bool) -> CriterionResult {
    SEEDED_FAULT.with(|f| f.set(seed_fault));
    let start = Instant::now();
    let outcome = match id {
        1 => eilenberg_mac_lane(),
        2 => k0_ranks(profile),
        3 => ar_generates_euler(profile),
        4 => array_model(),
        5 => hom_k0(),
        6 => knitting(profile),
        7 => slice_shadow(profile),
        8 => mutation_combinatorics(),
        9 => simplicial_identities(profile),
        10 => normal_forms(profile),
        _ => Err(format!("no criterion {id}")),
    };
    let name = CRITERIA.iter().find(|c| c.0 == id).map_or("unknown", |c| c.1);
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionResult { id, name, passed, detail, seconds: start.elapsed().as_secs_f64() }
}

/// Runs every criterion in its own thread.
pub fn run_all(profile: Profile) -> Vec<CriterionResult> {
    run_all_seeded(profile, None)
}

pub fn run_all_seeded(profile: Profile, seeded: Option<u8>) -> Vec<CriterionResult> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = CRITERIA
            .iter()
            .map(|&(id, _)| scope.spawn(move || run_criterion_seeded(id, profile, seeded == Some(id))))
            .collect();
        handles.into_iter().map(|h| h.join().expect("criterion thread")).collect()
    })
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if SEEDED_FAULT.with(|f| f.replace(false)) {
        return Err(format!("seeded fault at the first check ({})", if ok { "which passes unseeded".to_string() } else { msg() }));
    }
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn eilenberg_mac_lane() -> Outcome {
    let groups = ["Z", "Z/2", "Z/4", "Z/6"];
    let start = Instant::now();
    let mut checked = 0;
    for g in groups {
        let a: FgAb = g.parse().map_err(|e| format!("{e}"))?;
        for m in 1..=3 {
            let l = m + 3;
            let x = gamma(&a, m, l);
            for n in 0..l {
                let pi = homotopy_group(&x, n).map_err(|e| e.to_string())?;
                let want = if n == m { a.canonical() } else { FgAb::zero() };
                ensure(pi.canonical() == want, || format!("π_{n}(Γ({g}[{m}])) = {pi}, expected {want}"))?;
                checked += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 10.0, || format!("took {secs:.1}s, limit 10s"))?;
    Ok(format!("{checked} homotopy groups exact"))
}

fn k0_ranks(profile: Profile) -> Outcome {
    let top = if profile == Profile::Full { 8 } else { 6 };
    let start = Instant::now();
    let mut checked = 0;
    for m in 1..=3 {
        for n in m..=top {
            let (rank, torsion) = k0_invariants(m, n);
            ensure(rank == binomial(n, m) && torsion.is_empty(), || {
                format!("K0({m},{n}) = (rank {rank}, torsion {torsion:?}), expected ({}, [])", binomial(n, m))
            })?;
            checked += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1}s, limit 60s"))?;
    Ok(format!("{checked} presentations, n ≤ {top}"))
}

fn ar_generates_euler(profile: Profile) -> Outcome {
    let top = if profile == Profile::Full { 7 } else { 5 };
    let mut checked = 0;
    for m in 1..=3 {
        for n in m..=top {
            ensure(lattices_agree(m, n), || format!("AR and Euler lattices differ at ({m},{n})"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} lattice pairs equal, n ≤ {top}"))
}

fn array_model() -> Outcome {
    for g in ["Z", "Z/4"] {
        let a: FgAb = g.parse().map_err(|e| format!("{e}"))?;
        let ok = compare_via(&na1(&a, 5), &gamma(&a, 1, 5), &na1_to_gamma(&a, 5)).map_err(|e| e.to_string())?;
        ensure(ok, || format!("array model and Γ({g}[1]) disagree"))?;
    }
    Ok("A ∈ {Z, Z/4}, L = 5".into())
}

fn hom_k0() -> Outcome {
    for (m, l, g) in [(1, 4, "Z/2"), (2, 4, "Z/2"), (2, 5, "Z")] {
        let a: FgAb = g.parse().map_err(|e| format!("{e}"))?;
        let maps = canonical_iso_to_gamma(&a, m, l).map_err(|e| e.to_string())?;
        let hom = hom_into(&a, m, l).map_err(|e| e.to_string())?;
        let ok = compare_via(&hom, &gamma(&a, m, l), &maps).map_err(|e| e.to_string())?;
        ensure(ok, || format!("Hom(K0, {g}) and Γ({g}[{m}]) disagree at L = {l}"))?;
    }
    Ok("(1,4,Z/2), (2,4,Z/2), (2,5,Z)".into())
}

fn knitting(profile: Profile) -> Outcome {
    let samples = if profile == Profile::Full { 50 } else { 10 };
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b6e6974);
    for (m, n) in [(1, 3), (1, 4), (2, 3), (2, 4)] {
        let corner = corner_poset(m, n);
        for i in 0..samples {
            let data = random_corner_data(m, n, &mut rng);
            let x = knit_from_corner(&data).map_err(|e| format!("({m},{n}) sample {i}: {e}"))?;
            ensure(x.restrict(&corner) == data, || format!("({m},{n}) sample {i}: restriction differs from input"))?;
            let report = check_membership(&x);
            ensure(report.passes(), || format!("({m},{n}) sample {i}: {report:?}"))?;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 120.0, || format!("took {secs:.1}s, limit 120s"))?;
    Ok(format!("{samples} random inputs at each of 4 shapes"))
}

fn slice_shadow(profile: Profile) -> Outcome {
    let samples = if profile == Profile::Full { 3 } else { 1 };
    let mut rng = ChaCha8Rng::seed_from_u64(0x736c6963);
    let mut slices = 0;
    for (m, n) in [(1, 3), (2, 3), (2, 4)] {
        let orbit = mutation_orbit(m, n, 10_000).map_err(|e| e.to_string())?;
        for s in &orbit.nodes {
            let hull: Vec<Simplex> = convex_hull(s).into_iter().collect();
            for _ in 0..samples {
                let data = random_indicator_data(m, n, &hull, &mut rng);
                let x = knit_from_slice(s, &data).map_err(|e| format!("{s}: {e}"))?;
                let report = check_membership(&x);
                ensure(report.passes(), || format!("{s}: {report:?}"))?;
                for h in &hull {
                    let (got, want) = (x.object(h).expect("full").betti(), data.object(h).expect("hull").betti());
                    ensure(got == want, || format!("{s}: Betti at {h} is {got:?}, input {want:?}"))?;
                }
            }
            slices += 1;
        }
    }
    Ok(format!("{slices} slices, {samples} random inputs each"))
}

fn mutation_combinatorics() -> Outcome {
    for n in 1..=5 {
        let orbit = mutation_orbit(1, n, 10_000).map_err(|e| e.to_string())?;
        ensure(orbit.nodes.len() == 1 << (n - 1), || format!("orbit (1,{n}) has {} slices", orbit.nodes.len()))?;
        let nodes: BTreeSet<Slice> = orbit.nodes.iter().cloned().collect();
        ensure(nodes == brute_force_slices_m1(n), || format!("orbit (1,{n}) differs from the brute-force enumeration"))?;
    }
    let mut edges = 0;
    for (m, n) in [(1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (3, 5)] {
        let orbit = mutation_orbit(m, n, 10_000).map_err(|e| e.to_string())?;
        for e in &orbit.edges {
            let (from, to) = (&orbit.nodes[e.from], &orbit.nodes[e.to]);
            let old: Vec<&Simplex> = from.members().difference(to.members()).collect();
            let new: Vec<&Simplex> = to.members().difference(from.members()).collect();
            ensure(old.len() == 1 && new.len() == 1, || format!("edge {from} -> {to} changes more than one simplex"))?;
            let fwd = mutate(from, &MutationMove::forward(old[0].clone())).map_err(|e| e.to_string())?;
            let back = mutate(to, &MutationMove::backward(new[0].clone())).map_err(|e| e.to_string())?;
            ensure(&fwd == to && &back == from, || format!("edge {from} -> {to} is not involutive"))?;
            edges += 1;
        }
    }
    let start = initial_slice(2, 4);
    let next = mutate(&start, &MutationMove::forward(Simplex::of(&[0, 1, 2], 4))).map_err(|e| e.to_string())?;
    let keys: Vec<String> = next.members().iter().map(Simplex::key).collect();
    let want = ["0,1,3", "0,1,4", "0,2,3", "0,2,4", "0,3,4", "1,2,3"];
    ensure(keys == want, || format!("the (2,4) move at (0,1,2) produced {keys:?}"))?;
    Ok(format!("orbit sizes 1,2,4,8,16 match brute force; {edges} edges involutive; (2,4) move at (0,1,2) reproduced"))
}

/// Checks every simplicial identity of `reindex` on a diagram over `[n]`, plus
/// `d_i s_i = d_{i+1} s_i = id`. Returns a description of the first failure.
pub fn check_reindex_identities(x: &SDiagram) -> Result<usize, String> {
    let n = x.n();
    let r = |d: &SDiagram, a: &MonotoneMap| reindex(d, a).map_err(|e| e.to_string());
    let face = |d: &SDiagram, i: usize| r(d, &coface(d.n(), i));
    let degen = |d: &SDiagram, i: usize| r(d, &codegeneracy(d.n(), i));
    let mut checked = 0;
    ensure(r(x, &MonotoneMap::identity(n))? == *x, || "reindex along the identity changed the diagram".into())?;
    for i in 0..=n {
        let s = degen(x, i)?;
        ensure(face(&s, i)? == *x && face(&s, i + 1)? == *x, || format!("d_i s_i or d_(i+1) s_i ≠ id at i = {i}"))?;
        checked += 2;
        for j in i..=n {
            ensure(degen(&degen(x, j)?, i)? == degen(&s, j + 1)?, || format!("s_i s_j at ({i},{j})"))?;
            checked += 1;
        }
        for j in 0..=n + 1 {
            let want = if j < i {
                degen(&face(x, j)?, i - 1)?
            } else if j > i + 1 {
                degen(&face(x, j - 1)?, i)?
            } else {
                continue;
            };
            ensure(face(&s, j)? == want, || format!("d_j s_i at ({i},{j})"))?;
            checked += 1;
        }
    }
    if n >= 2 {
        for j in 0..=n {
            for i in 0..j {
                let lhs = face(&face(x, j)?, i)?;
                let rhs = face(&face(x, i)?, j - 1)?;
                ensure(lhs == rhs, || format!("d_i d_j at ({i},{j})"))?;
                checked += 1;
            }
        }
    }
    for i in 0..=n {
        let f = if n >= 1 { Some(face(x, i)?) } else { None };
        let s = degen(x, i)?;
        for d in f.iter().chain(std::iter::once(&s)) {
            let report = check_membership(d);
            ensure(report.passes(), || format!("reindexing lost membership: {report:?}"))?;
        }
    }
    Ok(checked)
}

fn simplicial_identities(profile: Profile) -> Outcome {
    let samples = if profile == Profile::Full { 3 } else { 1 };
    let mut rng = ChaCha8Rng::seed_from_u64(0x7265636f);
    let mut checked = 0;
    for m in 1..=2 {
        for n in m..=4 {
            for _ in 0..samples {
                let x = knit_from_corner(&random_corner_data(m, n, &mut rng)).map_err(|e| e.to_string())?;
                checked += check_reindex_identities(&x).map_err(|e| format!("({m},{n}): {e}"))?;
            }
        }
    }
    Ok(format!("{checked} identities exact"))
}

/// A random integer matrix: dense small entries, sparse, or a low-rank product.
pub fn random_int_matrix<R: Rng>(rng: &mut R, max_dim: usize) -> IntMatrix {
    let (r, c) = (rng.gen_range(1..=max_dim), rng.gen_range(1..=max_dim));
    let kind = rng.gen_range(0..3);
    let entry = |rng: &mut R| -> i64 {
        match kind {
            0 => rng.gen_range(-9..=9),
            1 => {
                if rng.gen_bool(0.15) {
                    rng.gen_range(-50..=50)
                } else {
                    0
                }
            }
            _ => rng.gen_range(-3..=3),
        }
    };
    if kind == 2 {
        let k = rng.gen_range(1..=r.min(c));
        let a: Vec<Vec<i64>> = (0..r).map(|_| (0..k).map(|_| entry(rng)).collect()).collect();
        let b: Vec<Vec<i64>> = (0..k).map(|_| (0..c).map(|_| entry(rng)).collect()).collect();
        IntMatrix::from_rows(&a, k).mul(&IntMatrix::from_rows(&b, c)).expect("shapes agree")
    } else {
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| entry(rng)).collect()).collect();
        IntMatrix::from_rows(&rows, c)
    }
}

/// Checks `U·M·V = S`, unimodularity, the divisibility chain, `H = U·M` and HNF idempotence.
pub fn check_normal_forms(m: &IntMatrix) -> Result<(), String> {
    let snf = smith_normal_form(m);
    let prod = snf.u.mul(m).and_then(|x| x.mul(&snf.v)).map_err(|e| e.to_string())?;
    ensure(prod == snf.s, || "U·M·V ≠ S".into())?;
    ensure(snf.u.is_unimodular() && snf.v.is_unimodular(), || "SNF transform not unimodular".into())?;
    let (rows, cols) = snf.s.shape();
    for i in 0..rows {
        for j in 0..cols {
            ensure(i == j || snf.s[(i, j)].is_zero(), || format!("S has an off-diagonal entry at ({i},{j})"))?;
        }
    }
    let diag: Vec<BigInt> = (0..rows.min(cols)).map(|i| snf.s[(i, i)].clone()).collect();
    let rank = diag.iter().take_while(|d| !d.is_zero()).count();
    ensure(diag[rank..].iter().all(Zero::is_zero), || "zeros interleaved on the diagonal".into())?;
    ensure(diag[..rank].iter().all(Signed::is_positive), || "non-positive invariant factor".into())?;
    for w in diag[..rank].windows(2) {
        ensure(w[1].is_multiple_of(&w[0]), || format!("{} does not divide {}", w[0], w[1]))?;
    }
    let (h, u) = hermite_normal_form(m);
    ensure(u.mul(m).map_err(|e| e.to_string())? == h, || "H ≠ U·M".into())?;
    ensure(u.is_unimodular(), || "HNF transform not unimodular".into())?;
    ensure(hnf(&h) == h, || "HNF is not idempotent".into())?;
    Ok(())
}

fn normal_forms(profile: Profile) -> Outcome {
    let (count, max_dim) = if profile == Profile::Full { (1000, 40) } else { (200, 20) };
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x736e66);
    for i in 0..count {
        let m = random_int_matrix(&mut rng, max_dim);
        check_normal_forms(&m).map_err(|e| format!("matrix {i} ({}×{}): {e}", m.rows(), m.cols()))?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 30.0, || format!("took {secs:.1}s, limit 30s"))?;
    Ok(format!("{count} random matrices up to {max_dim}×{max_dim}, zero failures"))
}
