//! The slice mutation of the (2,4) initial slice at (0,1,2), on combinatorics and on data,
//! followed by knitting from the mutated slice.

use deltak::sconstr::{check_membership, knit_from_slice, mutate_data, random_indicator_data};
use deltak::simplex::Simplex;
use deltak::slices::{convex_hull, diamond_poset, initial_slice, mutate, MutationMove};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let start = initial_slice(2, 4);
    let mv = MutationMove::forward(Simplex::of(&[0, 1, 2], 4));
    let next = mutate(&start, &mv)?;
    println!("S  = {start}\nS' = {next}");
    let (_, cube) = diamond_poset(&start, &mv)?;
    println!("distinguished cube: {}", cube.vertices().iter().map(Simplex::key).collect::<Vec<_>>().join(" | "));

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let hull: Vec<Simplex> = convex_hull(&start).into_iter().collect();
    let pivot = Simplex::of(&[0, 1, 2], 4);
    let data = loop {
        let d = random_indicator_data(2, 4, &hull, &mut rng);
        if !d.object(&pivot).unwrap().is_zero() {
            break d;
        }
    };
    let moved = mutate_data(&start, &data, &mv)?;
    let new = Simplex::of(&[1, 2, 3], 4);
    println!("X_(0,1,2) Betti {:?} -> X_(1,2,3) Betti {:?}", data.object(&pivot).unwrap().betti(), moved.object(&new).unwrap().betti());

    let x = knit_from_slice(&next, &moved)?;
    println!("knitted from S': membership passes = {}", check_membership(&x).passes());
    Ok(())
}
