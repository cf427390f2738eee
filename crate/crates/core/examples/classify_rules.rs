//! Exhaustive injectivity scan of all 256 rules, compared against the closed
//! form predicate.
//!
//!     cargo run --release --example classify_rules -- 4 14
use eca_circuits::{scan_all_rules, BoundaryCondition};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n_min: usize = args.next().map_or(Ok(4), |s| s.parse())?;
    let n_max: usize = args.next().map_or(Ok(14), |s| s.parse())?;

    let report = scan_all_rules(n_min, n_max)?;
    let reversible = report.reversible_rules();
    println!("{} rules reversible for some n in {n_min}..={n_max}", reversible.len());

    for rule in &reversible {
        let mut line = format!("{:>3}", rule.code());
        for bc in BoundaryCondition::ALL {
            let ns: Vec<String> = report
                .entries(*rule)
                .iter()
                .filter(|e| e.bc == bc && e.reversible)
                .map(|e| e.n.to_string())
                .collect();
            line += &format!("  {bc}: [{}]", ns.join(","));
        }
        println!("{line}");
    }

    let mismatches = report.predicate_mismatches();
    if mismatches.is_empty() {
        println!("predicate agrees with brute force on every case");
    } else {
        for (rule, n, bc) in mismatches {
            println!("mismatch: rule {rule} n={n} {bc}");
        }
    }
    Ok(())
}
