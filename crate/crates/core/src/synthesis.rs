//! Circuits implementing every reversible elementary cellular automaton.
//!
//! Five rules have direct constructions: 170 (a chain of swaps), 60 (a CNOT
//! staircase), and 90, 150 and 166, which share a three-stage layout:
//!
//! 1. local gates applied from the bottom wire upwards leave
//!    `a'_i = a*_{i-1}` on wires `2..N`;
//! 2. a few wider gates put `a*_{N-1}` on wire 0 and `a*_0` on wire 1
//!    without disturbing wires `2..N`;
//! 3. a left circular shift moves everything into place.
//!
//! The other 17 rules are obtained from these by appending an X layer
//! (complement rules `255 - r`), mirroring wire indices, or conjugating
//! with X layers.

use crate::circuit::{Circuit, Control, Gate};
use crate::eca::{BoundaryCondition, Rule};
use crate::error::{Error, Result};
use crate::reversibility::{is_reversible_bruteforce, reversibility_predicate};

/// Above this size [`synthesize`] does not search for a collision witness
/// when refusing an irreversible request.
pub const WITNESS_SEARCH_LIMIT: usize = 14;

/// Rules whose circuits are built from the rule 166 construction and carry
/// gates wider than three wires.
pub const RULE166_FAMILY: [u8; 8] = [45, 75, 89, 101, 154, 166, 180, 210];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SynthesisRequest {
    pub rule: Rule,
    pub n: usize,
    pub bc: BoundaryCondition,
}

impl SynthesisRequest {
    pub fn new(rule: Rule, n: usize, bc: BoundaryCondition) -> Result<Self> {
        if n < 3 {
            return Err(Error::domain(format!("synthesis needs at least 3 cells, got {n}")));
        }
        Ok(SynthesisRequest { rule, n, bc })
    }
}

fn unsupported(rule: u8, n: usize, bc: BoundaryCondition) -> Error {
    Error::Unsupported(format!(
        "rule {rule} has no construction for n = {n} at {bc} boundary"
    ))
}

fn circuit(n: usize, gates: impl IntoIterator<Item = Gate>) -> Circuit {
    Circuit::from_gates(n, gates.into_iter().collect()).expect("builders only emit in-range gates")
}

/// `SWAP(0,1), SWAP(1,2), ..., SWAP(n-2,n-1)`: a circular left shift
/// (`a*_i = a_{i+1}`), i.e. rule 170 at periodic boundary.
pub fn left_shift_circuit(n: usize) -> Result<Circuit> {
    if n < 2 {
        return Err(Error::domain(format!("left shift needs at least 2 wires, got {n}")));
    }
    Ok(circuit(n, (0..n - 1).map(|i| Gate::Swap(i, i + 1))))
}

fn check_n(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::domain(format!("synthesis needs at least 3 cells, got {n}")));
    }
    Ok(())
}

/// Rule 60 (`a*_i = a_{i-1} ^ a_i`), fixed boundary: `CNOT(i, i+1)` for
/// `i = n-2` down to 0, so no wire is used as a control after it changed.
pub fn synth_rule60(n: usize, bc: BoundaryCondition) -> Result<Circuit> {
    check_n(n)?;
    if bc != BoundaryCondition::Fixed {
        return Err(unsupported(60, n, bc));
    }
    Ok(circuit(n, (0..n - 1).rev().map(|i| Gate::cnot(i, i + 1))))
}

/// Rule 90 (`a*_i = a_{i-1} ^ a_{i+1}`), fixed boundary, even `n`.
pub fn synth_rule90(n: usize, bc: BoundaryCondition) -> Result<Circuit> {
    check_n(n)?;
    if bc != BoundaryCondition::Fixed || n % 2 == 1 {
        return Err(unsupported(90, n, bc));
    }
    let mut gates = Vec::new();
    // a'_i = a_{i-2} ^ a_i
    gates.extend((0..n - 2).rev().map(|i| Gate::cnot(i, i + 2)));
    // a'_0 ^= a'_{n-2} ^ a'_{n-4} ^ ... ^ a'_2, which telescopes to a_0 ^ a_{n-2}.
    gates.extend((2..=n - 2).rev().step_by(2).map(|i| Gate::cnot(i, 0)));
    gates.extend(left_shift_circuit(n)?.gates().iter().cloned());
    Ok(circuit(n, gates))
}

/// Rule 150 (`a*_i = a_{i-1} ^ a_i ^ a_{i+1}`): periodic with `n % 3 != 0`
/// or fixed with `n % 3 != 2`.
pub fn synth_rule150(n: usize, bc: BoundaryCondition) -> Result<Circuit> {
    check_n(n)?;
    let mut gates = Vec::new();
    for i in (2..n).rev() {
        gates.push(Gate::cnot(i - 2, i));
        gates.push(Gate::cnot(i - 1, i));
    }
    // Wire-0 and wire-1 fix-ups select on (n - i) mod 3.
    let onto0 = |lo: usize| (lo..n).rev().filter(move |i| (n - i) % 3 != 2).map(|i| Gate::cnot(i, 0));
    let onto1 = || (2..n).rev().filter(move |i| (n - i) % 3 != 0).map(|i| Gate::cnot(i, 1));
    match (bc, n % 3) {
        (BoundaryCondition::Periodic, 1) => {
            gates.extend(onto0(1));
            gates.extend(onto1());
        }
        (BoundaryCondition::Periodic, 2) => {
            gates.push(Gate::Swap(0, 1));
            gates.extend(onto0(2));
            gates.extend(onto1());
        }
        (BoundaryCondition::Fixed, 0 | 1) => {
            gates.push(Gate::cnot(0, 1));
            gates.extend(onto0(1));
        }
        _ => return Err(unsupported(150, n, bc)),
    }
    gates.extend(left_shift_circuit(n)?.gates().iter().cloned());
    Ok(circuit(n, gates))
}

/// Rule 166 (`a*_i = a_{i+1} ^ (!a_{i-1} & a_i)`), periodic boundary, odd `n`.
///
/// The second stage uses two gate families, for `k = 0, 1, ...` while the
/// negative control stays on the register:
///
/// * negative control `2k+2`, positive controls `2k+3, 2k+5, ..., n-2` and
///   wire 0, target wire 1;
/// * negative control `2k+1`, positive controls `2k+2, 2k+4, ..., n-1`,
///   target wire 0.
///
/// The widest gates act on `n/2 + 2` wires.
pub fn synth_rule166(n: usize, bc: BoundaryCondition) -> Result<Circuit> {
    check_n(n)?;
    if bc != BoundaryCondition::Periodic || n % 2 == 0 {
        return Err(unsupported(166, n, bc));
    }
    let mut gates = Vec::new();
    for i in (2..n).rev() {
        gates.push(Gate::Mcx {
            controls: vec![Control::neg(i - 2), Control::pos(i - 1)],
            targets: vec![i],
        });
    }
    for k in 0..=n / 2 {
        let neg = 2 * k + 2;
        if neg >= n {
            break;
        }
        let mut controls = vec![Control::neg(neg)];
        controls.extend((neg + 1..=n - 2).step_by(2).map(Control::pos));
        controls.push(Control::pos(0));
        gates.push(Gate::Mcx {
            controls,
            targets: vec![1],
        });
    }
    for k in 0..=n / 2 {
        let neg = 2 * k + 1;
        if neg >= n {
            break;
        }
        let mut controls = vec![Control::neg(neg)];
        controls.extend((neg + 1..n).step_by(2).map(Control::pos));
        gates.push(Gate::Mcx {
            controls,
            targets: vec![0],
        });
    }
    gates.extend(left_shift_circuit(n)?.gates().iter().cloned());
    Ok(circuit(n, gates))
}

/// Builds the circuit for any reversible `(rule, n, bc)`.
///
/// Fails with [`Error::NotReversible`] when the rule is not injective for
/// these parameters (with a collision witness for `n <= 14`), and with
/// [`Error::Unsupported`] for the handful of rules that happen to be injective
/// at `n = 3` but belong to none of the 22 reversible families.
pub fn synthesize(req: &SynthesisRequest) -> Result<Circuit> {
    let SynthesisRequest { rule, n, bc } = *req;
    check_n(n)?;
    if !reversibility_predicate(rule, n, bc) {
        if n <= WITNESS_SEARCH_LIMIT {
            let verdict = is_reversible_bruteforce(rule, n, bc)?;
            if verdict.reversible {
                return Err(Error::Unsupported(format!(
                    "rule {rule} is injective for n = {n} at {bc} boundary but has no general construction"
                )));
            }
            return Err(Error::NotReversible {
                rule,
                n,
                bc,
                witness: verdict.witness.map(Box::new),
            });
        }
        return Err(Error::NotReversible {
            rule,
            n,
            bc,
            witness: None,
        });
    }
    build(rule.code(), n, bc)
}

fn build(code: u8, n: usize, bc: BoundaryCondition) -> Result<Circuit> {
    let x_layer = || Circuit::x_layer(n);
    match code {
        204 => Circuit::new(n),
        51 => x_layer(),
        170 => left_shift_circuit(n),
        60 => synth_rule60(n, bc),
        90 => synth_rule90(n, bc),
        150 => synth_rule150(n, bc),
        166 => synth_rule166(n, bc),
        240 => Ok(build(170, n, bc)?.reversed()),
        102 => Ok(build(60, n, bc)?.reversed()),
        180 => Ok(build(166, n, bc)?.reversed()),
        210 => Ok(build(154, n, bc)?.reversed()),
        154 => x_layer()?.then(&build(166, n, bc)?)?.then(&x_layer()?),
        15 | 45 | 75 | 85 | 89 | 101 | 105 | 153 | 165 | 195 => {
            Ok(build(255 - code, n, bc)?.with_x_layer())
        }
        _ => Err(unsupported(code, n, bc)),
    }
}
