//! Prints one PASS/FAIL line per acceptance criterion.
//!
//! Set `ACCEPTANCE_VERBOSE=1` to also print every sub-claim.

use taut_core::regression::run_all;
use taut_core::Engine;

fn main() {
    let verbose = std::env::var_os("ACCEPTANCE_VERBOSE").is_some();
    let checks = run_all(&Engine::default());
    for c in &checks {
        println!("criterion {:>2} {}: {} ({:.2?})", c.id, c.status(), c.title, c.elapsed);
        for n in &c.notes {
            if verbose || !n.starts_with("ok ") {
                println!("    {n}");
            }
        }
    }
    let passed = checks.iter().filter(|c| c.pass).count();
    println!("acceptance: {passed}/{} criteria pass", checks.len());
}
