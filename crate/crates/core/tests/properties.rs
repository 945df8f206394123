use deltak::grothendieck::{cosimplicial_structure, hom_into};
use deltak::intlat::{hnf, lattice_equal, qrank, smith_normal_form, IntMatrix, QMatrix};
use deltak::sconstr::{
    check_membership, corner_poset, knit_from_corner, random_corner_data, reindex, SDiagram,
};
use deltak::simpab::{check_simplicial_identities, gamma, moore_complex, na1, FgAb};
use deltak::simplex::{
    binomial, codegeneracy, coface, enumerate_nondegenerate, enumerate_simplices, euler_cube, MonotoneMap, Simplex,
};
use deltak::slices::{diamond_poset, mutate, mutation_orbit, MutationMove};
use deltak::verify::{check_normal_forms, check_reindex_identities};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn int_matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c).prop_map(move |v| {
            let rows: Vec<Vec<i64>> = v.chunks(c).map(<[i64]>::to_vec).collect();
            IntMatrix::from_rows(&rows, c)
        })
    })
}

fn monotone(dom: usize, cod: usize) -> impl Strategy<Value = MonotoneMap> {
    prop::collection::vec(0..=cod, dom + 1).prop_map(move |mut v| {
        v.sort_unstable();
        MonotoneMap::of(&v, cod)
    })
}

fn knitted(m: usize, n: usize, seed: u64) -> SDiagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    knit_from_corner(&random_corner_data(m, n, &mut rng)).expect("random corner data knits")
}

fn shape() -> impl Strategy<Value = (usize, usize)> {
    prop_oneof![Just((1, 2)), Just((1, 3)), Just((1, 4)), Just((2, 3)), Just((2, 4))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn smith_and_hermite_forms_hold(m in int_matrix(40, 50)) {
        prop_assert_eq!(check_normal_forms(&m), Ok(()));
    }

    #[test]
    fn lattice_equality_is_an_equivalence(a in int_matrix(6, 9), coeffs in prop::collection::vec(-5i64..=5, 6)) {
        prop_assert!(lattice_equal(&a, &a).unwrap());
        let h = hnf(&a);
        prop_assert!(lattice_equal(&a, &h).unwrap() && lattice_equal(&h, &a).unwrap());
        let mut extra = vec![BigInt::from(0); a.cols()];
        for (i, c) in coeffs.iter().take(a.rows()).enumerate() {
            for (j, x) in a.row(i).iter().enumerate() {
                extra[j] += x * c;
            }
        }
        let mut rows: Vec<Vec<BigInt>> = a.row_iter().map(<[BigInt]>::to_vec).collect();
        rows.push(extra);
        let bigger = IntMatrix::from_big_rows(rows, a.cols());
        prop_assert!(lattice_equal(&a, &bigger).unwrap());
        prop_assert!(lattice_equal(&bigger, &h).unwrap());
    }

    #[test]
    fn rational_rank_matches_smith_rank(m in int_matrix(8, 6), scale in 1i64..=7) {
        let q = QMatrix::from_int_matrix(&m).scale(&num_rational::BigRational::new(1.into(), scale.into()));
        prop_assert_eq!(qrank(&q), smith_normal_form(&m).rank());
    }

    #[test]
    fn composition_is_associative(a in monotone(2, 4), b in monotone(3, 2), c in monotone(1, 3)) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn faces_commute(m in 2usize..=4, extra in 0usize..=2, pick in any::<prop::sample::Index>()) {
        let n = (m + extra).min(6);
        let all = enumerate_simplices(m, n);
        let sigma = pick.get(&all);
        for j in 0..=m {
            for i in 0..j {
                prop_assert_eq!(sigma.face(j).face(i), sigma.face(i).face(j - 1));
            }
        }
    }

    #[test]
    fn euler_cube_is_monotone(n in 2usize..=6, m in 1usize..=3, pick in any::<prop::sample::Index>()) {
        prop_assume!(m < n);
        let rhos = enumerate_nondegenerate(m + 1, n);
        let cube = euler_cube(pick.get(&rhos)).unwrap();
        for v in 0..1usize << cube.dim() {
            for i in 0..cube.dim() {
                let w = v | 1 << i;
                prop_assert!(cube.vertex(v).leq(cube.vertex(w)).unwrap());
            }
        }
    }

    #[test]
    fn reindex_is_contravariant((m, n) in shape(), seed in any::<u64>(), alpha in monotone(3, 4), beta in monotone(2, 3)) {
        let x = knitted(m, n, seed);
        let alpha = MonotoneMap::of(&alpha.values().iter().map(|&v| v.min(n)).collect::<Vec<_>>(), n);
        let once = reindex(&x, &alpha.compose(&beta).unwrap()).unwrap();
        let twice = reindex(&reindex(&x, &alpha).unwrap(), &beta).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn knit_restricts_to_input_and_is_a_member((m, n) in shape(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let data = random_corner_data(m, n, &mut rng);
        let x = knit_from_corner(&data).unwrap();
        prop_assert_eq!(x.restrict(&corner_poset(m, n)), data);
        prop_assert!(check_membership(&x).passes());
    }

    #[test]
    fn euler_characteristics_cancel_over_euler_cubes((m, n) in shape(), seed in any::<u64>()) {
        let x = knitted(m, n, seed);
        for rho in enumerate_nondegenerate(m + 1, n) {
            let cube = euler_cube(&rho).unwrap();
            let sum: i64 = (0..1usize << cube.dim())
                .map(|v| {
                    let chi = x.object(cube.vertex(v)).unwrap().euler_characteristic();
                    if v.count_ones() % 2 == 0 { chi } else { -chi }
                })
                .sum();
            prop_assert_eq!(sum, 0, "Euler cube of {}", rho);
        }
    }

    #[test]
    fn euler_and_ar_failures_agree((m, n) in shape(), seed in any::<u64>(), pick in any::<prop::sample::Index>(), degree in -1i32..=1) {
        let x = knitted(m, n, seed);
        let nondeg = enumerate_nondegenerate(m, n);
        let corrupted = x.with_skyscraper(pick.get(&nondeg), degree);
        for d in [&x, &corrupted] {
            let r = check_membership(d);
            prop_assert!(r.degenerate_ok);
            prop_assert_eq!(r.euler_failures.is_empty(), r.ar_failures.is_empty(), "{:?}", r);
        }
        prop_assert!(!check_membership(&corrupted).passes());
    }

    #[test]
    fn reindexing_satisfies_simplicial_identities((m, n) in prop_oneof![Just((1, 1)), Just((1, 2)), Just((2, 2)), Just((2, 3))], seed in any::<u64>()) {
        let x = knitted(m, n, seed);
        prop_assert!(check_reindex_identities(&x).is_ok());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn dold_kan_objects_are_simplicial(orders in prop::collection::vec(prop_oneof![Just(0u64), 2u64..=6], 1..=2), m in 1usize..=2) {
        let a = FgAb::new(orders);
        let l = m + 2;
        let x = gamma(&a, m, l);
        prop_assert!(check_simplicial_identities(&x).is_empty());
        prop_assert!(moore_complex(&x).is_ok());
        for k in 0..=l {
            prop_assert_eq!(x.level(k).ngens(), binomial(k, m) * a.ngens());
        }
        let y = na1(&a, l);
        prop_assert!(check_simplicial_identities(&y).is_empty());
        prop_assert!(check_simplicial_identities(&hom_into(&a, m, l).unwrap()).is_empty());
    }
}

#[test]
fn simplicial_identities_for_generators() {
    let comp = |f: MonotoneMap, g: MonotoneMap| f.compose(&g).unwrap();
    for n in 2..=6 {
        for j in 0..=n {
            for i in 0..j {
                assert_eq!(comp(coface(n, j), coface(n - 1, i)), comp(coface(n, i), coface(n - 1, j - 1)));
            }
        }
        for j in 0..n {
            for i in 0..=j {
                assert_eq!(comp(codegeneracy(n - 1, j), codegeneracy(n, i)), comp(codegeneracy(n - 1, i), codegeneracy(n, j + 1)));
            }
        }
        for j in 0..n {
            for i in 0..=n {
                let lhs = comp(codegeneracy(n - 1, j), coface(n, i));
                let want = match i {
                    _ if i < j => comp(coface(n - 1, i), codegeneracy(n - 2, j - 1)),
                    _ if i == j || i == j + 1 => MonotoneMap::identity(n - 1),
                    _ => comp(coface(n - 1, i - 1), codegeneracy(n - 2, j)),
                };
                assert_eq!(lhs, want, "σ_{j} δ_{i} at n = {n}");
            }
        }
    }
}

#[test]
fn simplex_counts() {
    for m in 0..=3 {
        for n in 0..=6 {
            assert_eq!(enumerate_simplices(m, n).len(), binomial(n + m + 1, m + 1));
            assert_eq!(enumerate_nondegenerate(m, n).len(), binomial(n + 1, m + 1));
        }
    }
}

#[test]
fn cosimplicial_k0_structure_is_cosimplicial() {
    for (m, l) in [(1, 4), (2, 5), (3, 5)] {
        assert!(cosimplicial_structure(m, l).unwrap().identity_violations().is_empty());
    }
}

#[test]
fn orbit_slices_have_the_right_size_and_diamonds() {
    for (m, n) in [(1, 4), (2, 4), (2, 5), (3, 5)] {
        let orbit = mutation_orbit(m, n, 500).unwrap();
        for s in &orbit.nodes {
            assert_eq!(s.len(), binomial(n, m));
        }
        for e in &orbit.edges {
            let (from, to) = (&orbit.nodes[e.from], &orbit.nodes[e.to]);
            let pivot = Simplex::parse_key(&e.pivot, n).unwrap();
            let mv = MutationMove::forward(pivot.clone());
            assert_eq!(&mutate(from, &mv).unwrap(), to);
            let (_, cube) = diamond_poset(from, &mv).unwrap();
            let top = (1usize << cube.dim()) - 1;
            assert!(from.contains(cube.vertex(0)));
            assert!(to.contains(cube.vertex(top)));
            for v in 1..top {
                let x = cube.vertex(v);
                assert!(x.is_degenerate() || (from.contains(x) && to.contains(x)), "{x} in the diamond of {pivot}");
            }
        }
    }
}
