//! Runs the acceptance suite in the quick profile and prints one line per criterion.

use deltak::verify::{run_all, Profile};

fn main() {
    let profile = if std::env::args().any(|a| a == "--full") { Profile::Full } else { Profile::Quick };
    let results = run_all(profile);
    for r in &results {
        println!("{r}");
    }
    std::process::exit(if results.iter().all(|r| r.passed) { 0 } else { 1 });
}
