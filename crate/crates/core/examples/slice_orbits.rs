//! Mutation orbits of slices, with the m = 1 cross-check against the direct enumeration.
//!
//! `cargo run --example slice_orbits -- 2 5 > orbit.dot`

use deltak::slices::{brute_force_slices_m1, mutation_orbit};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<usize> = std::env::args().skip(1).map(|s| s.parse()).collect::<Result<_, _>>()?;
    for n in 1..=6 {
        let orbit = mutation_orbit(1, n, 10_000)?;
        eprintln!("(1,{n}): {} slices, brute force {}", orbit.nodes.len(), brute_force_slices_m1(n).len());
    }
    let (m, n) = (args.first().copied().unwrap_or(2), args.get(1).copied().unwrap_or(4));
    let orbit = mutation_orbit(m, n, 10_000)?;
    eprintln!("({m},{n}): {} slices, {} forward mutations", orbit.nodes.len(), orbit.edges.len());
    for s in &orbit.nodes {
        eprintln!("  {s}");
    }
    print!("{}", orbit.to_dot());
    Ok(())
}
