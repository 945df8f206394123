//! The array model N(A[1]) and Hom(K0(A^(m)_•), A) compared with Γ(A[m]) through explicit maps.

use deltak::grothendieck::{canonical_iso_to_gamma, hom_into};
use deltak::simpab::{check_simplicial_identities, compare_via, gamma, na1, na1_to_gamma, FgAb};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for spec in ["Z", "Z/4", "Z+Z/2"] {
        let a: FgAb = spec.parse()?;
        let l = 5;
        let model = na1(&a, l);
        assert!(check_simplicial_identities(&model).is_empty());
        let ok = compare_via(&model, &gamma(&a, 1, l), &na1_to_gamma(&a, l))?;
        println!("N({spec}[1]) ≅ Γ({spec}[1]) up to level {l}: {ok}");
        for m in 1..=2 {
            let hom = hom_into(&a, m, l)?;
            let ok = compare_via(&hom, &gamma(&a, m, l), &canonical_iso_to_gamma(&a, m, l)?)?;
            println!("Hom(K0, {spec}) ≅ Γ({spec}[{m}]) up to level {l}: {ok}");
        }
    }
    Ok(())
}
