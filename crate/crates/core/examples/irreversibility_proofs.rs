//! Collision pairs for irreversible cases, from the closed-form families
//! where one exists and from exhaustive search otherwise.
use eca_circuits::{
    is_reversible_bruteforce, proof_family_witness, BoundaryCondition, CollisionWitness, Rule,
};

fn show(label: &str, rule: Rule, bc: BoundaryCondition, w: &CollisionWitness) {
    println!(
        "rule {rule:>3} {bc:<8} n={:<2} {label:<7} {} , {} -> {}",
        w.first.len(),
        w.first,
        w.second,
        w.image
    );
    assert!(w.is_valid(rule, bc));
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    use BoundaryCondition::*;

    let families = [(90, Fixed, 7), (150, Periodic, 9), (150, Fixed, 8), (166, Periodic, 6)];
    for (code, bc, n) in families {
        let rule = Rule::from_code(code);
        show("family", rule, bc, &proof_family_witness(rule, bc, n)?);
    }

    for (code, bc, n) in [(30, Periodic, 8), (110, Fixed, 10), (90, Fixed, 7)] {
        let rule = Rule::from_code(code);
        let v = is_reversible_bruteforce(rule, n, bc)?;
        match &v.witness {
            Some(w) => show("search", rule, bc, w),
            None => println!("rule {rule:>3} {bc:<8} n={n:<2} injective"),
        }
    }

    // Rule 60 is injective under fixed boundary for every n.
    let v = is_reversible_bruteforce(Rule::from_code(60), 12, Fixed)?;
    println!("rule  60 fixed    n=12 reversible: {}", v.reversible);
    Ok(())
}
