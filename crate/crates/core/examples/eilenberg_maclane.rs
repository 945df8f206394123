//! Homotopy groups of the Dold-Kan objects Γ(A[m]).
//!
//! `cargo run --example eilenberg_maclane -- Z/6 2`

use deltak::simpab::{gamma, homotopy_group, moore_complex, FgAb};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let a: FgAb = args.next().unwrap_or_else(|| "Z+Z/4".into()).parse()?;
    let m: usize = args.next().map_or(Ok(2), |s| s.parse())?;
    let l = m + 3;
    let x = gamma(&a, m, l);
    println!("Γ({a}[{m}]) truncated at level {l}");
    for n in 0..=l {
        println!("  level {n}: {}", x.level(n));
    }
    let moore = moore_complex(&x)?;
    for n in 0..l {
        println!("  π_{n} = {}   (Moore group N_{n} = {})", homotopy_group(&x, n)?, moore.group(n));
    }
    Ok(())
}
