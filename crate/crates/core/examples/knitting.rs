//! Knitting a diagram on Δ(m,n) from its corner P(m,n) and checking membership.

use deltak::sconstr::{check_membership, corner_poset, diagram_to_json, knit_from_corner, random_corner_data};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let (m, n) = (2, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let data = random_corner_data(m, n, &mut rng);
    let x = knit_from_corner(&data).expect("corner data is functorial");
    assert_eq!(x.restrict(&corner_poset(m, n)), data);
    println!("Betti numbers of the knitted diagram on Δ({m},{n}):");
    for (s, betti) in x.betti_table() {
        let marker = if s.at(0) == 0 { "corner" } else if s.is_degenerate() { "degenerate" } else { "knitted" };
        println!("  {:<8} {:<11} {betti:?}", s.key(), marker);
    }
    let report = check_membership(&x);
    println!("membership: {}", serde_json::to_string(&report).unwrap());
    let json = diagram_to_json(&x);
    println!("JSON size: {} bytes", json.to_string().len());
}
