//! K0 of higher Auslander algebras of type A from the Euler and AR presentations.

use deltak::grothendieck::{k0_invariants, k0_presentation, lattices_agree, quotient_basis, Flavor};
use deltak::simplex::{binomial, Simplex};

fn main() {
    println!("{:>3} {:>3} {:>6} {:>8} {:>8}", "m", "n", "rank", "C(n,m)", "AR=Euler");
    for m in 1..=3 {
        for n in m..=6 {
            let (rank, torsion) = k0_invariants(m, n);
            assert!(torsion.is_empty());
            println!("{m:>3} {n:>3} {rank:>6} {:>8} {:>8}", binomial(n, m), lattices_agree(m, n));
        }
    }
    let p = k0_presentation(2, 3, Flavor::Ar);
    println!("\nAR relations for (m,n) = (2,3), columns {}", p.generators.iter().map(Simplex::key).collect::<Vec<_>>().join(" "));
    print!("{}", p.relations.to_text());
    let basis: Vec<String> = quotient_basis(2, 3).iter().map(Simplex::key).collect();
    println!("basis of K0: {}", basis.join(" "));
}
