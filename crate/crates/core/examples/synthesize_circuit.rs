//! Builds the circuit for one reversible rule, prints its diagram and gate
//! statistics, and writes the JSON form to stdout.
//!
//!     cargo run --example synthesize_circuit -- 166 9 periodic
use eca_circuits::{render_ascii, synthesize, BoundaryCondition, Rule, SynthesisRequest};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let rule = Rule::new(args.next().map_or(Ok(166), |s| s.parse())?)?;
    let n: usize = args.next().map_or(Ok(9), |s| s.parse())?;
    let bc: BoundaryCondition = args.next().map_or(Ok(BoundaryCondition::Periodic), |s| s.parse())?;

    let circuit = match synthesize(&SynthesisRequest::new(rule, n, bc)?) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(1);
        }
    };
    let stats = circuit.stats();
    eprintln!("rule {rule}, n = {n}, {bc}: {} gates, max arity {}", stats.gate_count, stats.max_arity);
    eprint!("{}", render_ascii(&circuit));
    println!("{}", circuit.to_json());
    Ok(())
}
