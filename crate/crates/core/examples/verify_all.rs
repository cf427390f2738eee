//! Checks every synthesized circuit against the automaton on all basis
//! states, for every reversible (rule, n, boundary) up to the given size.
//!
//!     cargo run --release --example verify_all -- 12
use eca_circuits::simulator::verification_report;
use eca_circuits::{reversibility_predicate, BoundaryCondition, Rule, REVERSIBLE_RULES};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n_max: usize = std::env::args().nth(1).map_or(Ok(12), |s| s.parse())?;
    let (mut circuits, mut states, mut failures) = (0u64, 0u64, 0u64);
    for &code in &REVERSIBLE_RULES {
        let rule = Rule::from_code(code);
        for bc in BoundaryCondition::ALL {
            for n in 4..=n_max {
                if !reversibility_predicate(rule, n, bc) {
                    continue;
                }
                let r = verification_report(rule, n, bc)?;
                circuits += 1;
                states += r.states_checked;
                if !r.verified {
                    failures += 1;
                    println!("FAIL rule {code} n={n} {bc}: {} mismatches", r.mismatches);
                }
            }
        }
    }
    println!("{circuits} circuits, {states} basis states, {failures} failures");
    if failures > 0 {
        std::process::exit(1);
    }
    Ok(())
}
