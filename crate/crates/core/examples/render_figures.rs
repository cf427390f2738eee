//! Diagrams for the base constructions at the sizes commonly drawn.
use eca_circuits::{render_ascii, synthesize, BoundaryCondition, Rule, SynthesisRequest};

fn main() -> eca_circuits::Result<()> {
    let cases = [
        (170, 5, BoundaryCondition::Periodic),
        (60, 5, BoundaryCondition::Fixed),
        (90, 8, BoundaryCondition::Fixed),
        (150, 7, BoundaryCondition::Periodic),
        (166, 9, BoundaryCondition::Periodic),
    ];
    for (code, n, bc) in cases {
        let c = synthesize(&SynthesisRequest::new(Rule::from_code(code), n, bc)?)?;
        println!("rule {code}, n = {n}, {bc} ({} gates)", c.len());
        println!("{}", render_ascii(&c));
    }
    Ok(())
}
