//! Smith and Hermite normal forms with their unimodular transforms.

use deltak::intlat::{cokernel_invariants, hermite_normal_form, smith_normal_form, IntMatrix};

fn main() {
    let m = IntMatrix::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]], 3);
    let snf = smith_normal_form(&m);
    println!("M =\n{}", m.to_text());
    println!("S = U·M·V =\n{}", snf.s.to_text());
    println!("U =\n{}V =\n{}", snf.u.to_text(), snf.v.to_text());
    assert_eq!(snf.u.mul(&m).and_then(|x| x.mul(&snf.v)).unwrap(), snf.s);
    println!("invariant factors {:?}", snf.invariant_factors().iter().map(ToString::to_string).collect::<Vec<_>>());
    let (h, u) = hermite_normal_form(&m);
    println!("H = U·M =\n{}with U =\n{}", h.to_text(), u.to_text());
    let (free, torsion) = cokernel_invariants(&m.transpose());
    println!("coker: Z^{free} ⊕ {:?}", torsion.iter().map(|t| format!("Z/{t}")).collect::<Vec<_>>());
}
