//! Runs a few generations of an elementary automaton and prints them as rows.
//!
//!     cargo run --example step_automaton -- 150 31 periodic
use eca_circuits::{rule_truth_table, step, BoundaryCondition, Configuration, Rule};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let rule = Rule::new(args.next().map_or(Ok(90), |s| s.parse())?)?;
    let n: usize = args.next().map_or(Ok(31), |s| s.parse())?;
    let bc: BoundaryCondition = args.next().map_or(Ok(BoundaryCondition::Periodic), |s| s.parse())?;

    let table = rule_truth_table(rule);
    println!("rule {rule}, {bc} boundary");
    for (k, out) in table.iter().enumerate().rev() {
        println!("  {:03b} -> {out}", k);
    }

    let mut bits = vec![false; n];
    bits[n / 2] = true;
    let mut cfg = Configuration::new(bits)?;
    for _ in 0..n / 2 + 1 {
        let row: String = cfg.bits().iter().map(|&b| if b { '#' } else { '.' }).collect();
        println!("{row}");
        cfg = step(&cfg, rule, bc);
    }
    Ok(())
}
