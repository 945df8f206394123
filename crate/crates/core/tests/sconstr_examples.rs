use std::collections::BTreeMap;
use std::sync::Arc;

use deltak::intlat::QMatrix;
use deltak::sconstr::{
    check_membership, cone, corner_poset, diagram_betti, knit_from_corner, knit_from_slice, mutate_data,
    random_corner_data, random_indicator_data, reindex, ChainMapQ, PosetDiagram, QComplex,
};
use deltak::simplex::{coface, enumerate_simplices, MonotoneMap, Simplex};
use deltak::slices::{convex_hull, initial_slice, mutate, mutation_orbit, MutationMove};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn s(v: &[usize], n: usize) -> Simplex {
    Simplex::of(v, n)
}

fn q() -> Arc<QComplex> {
    Arc::new(QComplex::concentrated(0, 1))
}

fn scalar(x: i64) -> ChainMapQ {
    ChainMapQ::new(q(), q(), [(0, QMatrix::from_ints(&[[x]], 1))].into()).unwrap()
}

fn cone_fixture(x: i64) -> PosetDiagram {
    let objects = BTreeMap::from([(s(&[0, 1], 2), (*q()).clone()), (s(&[0, 2], 2), (*q()).clone())]);
    let arrows = BTreeMap::from([((s(&[0, 1], 2), s(&[0, 2], 2)), scalar(x))]);
    PosetDiagram::new(1, 2, corner_poset(1, 2), objects, arrows).unwrap()
}

#[test]
fn betti_numbers() {
    assert_eq!(q().betti_list(), vec![1]);
    assert_eq!(cone(&scalar(0)).betti_list(), vec![1, 1]);
    assert!(cone(&scalar(1)).is_acyclic());
    assert!(QComplex::disk(3).betti().is_empty());
    let from_zero = ChainMapQ::zero(&Arc::new(QComplex::zero()), &q());
    assert_eq!(cone(&from_zero), *q());
}

#[test]
fn reindex_along_the_identity_and_a_coface() {
    let x = knit_from_corner(&cone_fixture(0)).unwrap();
    assert_eq!(reindex(&x, &MonotoneMap::identity(2)).unwrap(), x);
    let d0 = reindex(&x, &coface(2, 0)).unwrap();
    for (tau, sigma) in [("0,0", "1,1"), ("0,1", "1,2"), ("1,1", "2,2")] {
        let (tau, sigma) = (Simplex::parse_key(tau, 1).unwrap(), Simplex::parse_key(sigma, 2).unwrap());
        assert_eq!(d0.object(&tau), x.object(&sigma));
    }
    assert_eq!(d0.map(&s(&[0, 0], 1), &s(&[0, 1], 1)), x.map(&s(&[1, 1], 2), &s(&[1, 2], 2)));
    assert!(check_membership(&d0).passes());
}

#[test]
fn injected_faults_are_reported() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let x = loop {
        let x = knit_from_corner(&random_corner_data(2, 3, &mut rng)).unwrap();
        if !x.object(&s(&[0, 2, 3], 3)).unwrap().is_acyclic() {
            break x;
        }
    };
    let corner = x.restrict(&corner_poset(2, 3)).zero_out(&s(&[0, 2, 3], 3));
    let reknitted = knit_from_corner(&corner).unwrap();
    assert!(check_membership(&reknitted).passes());
    let mixed = x.zero_out(&s(&[3, 3, 3], 3)).with_skyscraper(&s(&[1, 2, 3], 3), 0);
    let report = check_membership(&mixed);
    assert!(!report.passes());
    assert!(report.euler_failures.contains(&s(&[0, 1, 2, 3], 3)));
    assert!(report.ar_failures.contains(&s(&[0, 1, 2], 3)));
}

#[test]
fn full_m2_n4_diagrams_are_members() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..5 {
        let x = knit_from_corner(&random_corner_data(2, 4, &mut rng)).unwrap();
        assert_eq!(x.elements(), enumerate_simplices(2, 4).as_slice());
        assert!(check_membership(&x).passes());
    }
}

#[test]
fn knitting_from_the_initial_slice_is_knitting_from_the_corner() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for (m, n) in [(1, 3), (2, 3), (2, 4)] {
        let sl = initial_slice(m, n);
        let hull: Vec<Simplex> = convex_hull(&sl).into_iter().collect();
        let data = random_indicator_data(m, n, &hull, &mut rng);
        let from_slice = knit_from_slice(&sl, &data).unwrap();
        let padded = knit_from_corner(&data_on(&data, &corner_poset(m, n))).unwrap();
        assert_eq!(diagram_betti(&from_slice), diagram_betti(&padded));
    }
}

fn data_on(data: &PosetDiagram, elements: &[Simplex]) -> PosetDiagram {
    let objects = data.elements().iter().map(|e| (e.clone(), (**data.object(e).unwrap()).clone())).collect();
    let mut arrows = BTreeMap::new();
    for (a, b, f) in data.cover_arrows() {
        arrows.insert((a.clone(), b.clone()), f.clone());
    }
    PosetDiagram::new(data.m(), data.n(), elements.iter().cloned(), objects, arrows).unwrap()
}

#[test]
fn data_mutation_at_012_matches_knitting() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let sl = initial_slice(2, 4);
    let hull: Vec<Simplex> = convex_hull(&sl).into_iter().collect();
    for _ in 0..5 {
        let data = random_indicator_data(2, 4, &hull, &mut rng);
        let mv = MutationMove::forward(s(&[0, 1, 2], 4));
        let out = mutate_data(&sl, &data, &mv).unwrap();
        let next = mutate(&sl, &mv).unwrap();
        assert_eq!(out.elements(), convex_hull(&next).into_iter().collect::<Vec<_>>().as_slice());
        let knitted = knit_from_corner(&data_on(&data, &corner_poset(2, 4))).unwrap();
        let target = s(&[1, 2, 3], 4);
        assert_eq!(out.object(&target).unwrap().betti(), knitted.object(&target).unwrap().betti());
        for kept in next.members() {
            if kept != &target {
                assert_eq!(out.object(kept).unwrap().betti(), data.object(kept).unwrap().betti(), "{kept}");
            }
        }
    }
}

#[test]
fn data_round_trips_along_every_orbit_edge() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for (m, n) in [(1, 3), (2, 4)] {
        let orbit = mutation_orbit(m, n, 1000).unwrap();
        for e in &orbit.edges {
            let from = &orbit.nodes[e.from];
            let pivot = Simplex::parse_key(&e.pivot, n).unwrap();
            let hull: Vec<Simplex> = convex_hull(from).into_iter().collect();
            let data = random_indicator_data(m, n, &hull, &mut rng);
            let mv = MutationMove::forward(pivot.clone());
            let there = mutate_data(from, &data, &mv).unwrap();
            let up = Simplex::of(&pivot.values().iter().map(|v| v + 1).collect::<Vec<_>>(), n);
            let back = mutate_data(&orbit.nodes[e.to], &there, &MutationMove::backward(up)).unwrap();
            assert_eq!(back.betti_table(), data.betti_table(), "edge {} -> {}", e.from, e.to);
        }
    }
}

#[test]
fn slice_knitting_reproduces_the_hull() {
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let sl = mutate(&initial_slice(2, 3), &MutationMove::forward(s(&[0, 1, 2], 3))).unwrap();
    let hull: Vec<Simplex> = convex_hull(&sl).into_iter().collect();
    for _ in 0..5 {
        let data = random_indicator_data(2, 3, &hull, &mut rng);
        let x = knit_from_slice(&sl, &data).unwrap();
        assert!(check_membership(&x).passes());
        for h in &hull {
            assert_eq!(x.object(h).unwrap().betti(), data.object(h).unwrap().betti());
        }
    }
}
