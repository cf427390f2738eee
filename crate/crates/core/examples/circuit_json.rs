//! Hand-written circuit in JSON, parsed, mirrored, stripped of negative
//! controls and written back.
use eca_circuits::{circuit_permutation, render_ascii, Circuit};

const SOURCE: &str = r#"{
  "n": 4,
  "gates": [
    {"kind": "mcx", "targets": [3], "controls": [{"wire": 0, "positive": false}, {"wire": 1, "positive": true}]},
    {"kind": "swap", "targets": [1, 2]},
    {"kind": "x", "targets": [0]}
  ]
}"#;

fn main() -> eca_circuits::Result<()> {
    let c = Circuit::from_json(SOURCE)?;
    print!("parsed\n{}", render_ascii(&c));
    print!("mirrored\n{}", render_ascii(&c.reversed()));

    let d = c.decompose_negative_controls();
    print!("positive controls only\n{}", render_ascii(&d));
    assert_eq!(circuit_permutation(&c)?, circuit_permutation(&d)?);

    match Circuit::from_json(r#"{"n": 2, "gates": [{"kind": "x", "targets": [5]}]}"#) {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
    println!("{}", d.to_json());
    Ok(())
}
