//! Reversible elementary cellular automata and the quantum circuits that
//! implement them.
//!
//! An elementary cellular automaton (ECA) on `N` cells can be run by a
//! quantum circuit acting on computational basis states exactly when its
//! one-step map is injective. This crate
//!
//! * evaluates ECA steps for any Wolfram code and periodic or fixed boundary
//!   ([`eca`]);
//! * decides injectivity by exhaustive search, classifies all 256 rules and
//!   produces collision pairs for the irreversible ones ([`reversibility`]);
//! * builds explicit circuits of X, SWAP and mixed-polarity multi-controlled X
//!   gates for each of the 22 reversible rules ([`synthesis`], [`circuit`]);
//! * runs circuits on basis states and state vectors and checks them against
//!   the classical step ([`simulator`]).
//!
//! ```
//! use eca_circuits::{synthesize, verify_implementation, BoundaryCondition, Rule, SynthesisRequest};
//!
//! let req = SynthesisRequest::new(Rule::from_code(150), 7, BoundaryCondition::Periodic).unwrap();
//! let circuit = synthesize(&req).unwrap();
//! assert_eq!(circuit.n(), 7);
//! assert!(verify_implementation(req.rule, req.n, req.bc).unwrap());
//! ```
//!
//! Basis states use the encoding `sum 2^i a_i`: cell (and wire) 0 is the
//! least significant bit.

pub mod circuit;
pub mod cli;
pub mod eca;
pub mod error;
pub mod reversibility;
pub mod simulator;
pub mod synthesis;

pub use circuit::{apply_gate_to_bits, render_ascii, Circuit, CircuitStats, Control, Gate};
pub use eca::{
    formula_step, rule_truth_table, step, step_naive, BoundaryCondition, Configuration, Rule,
    StepKernel, REVERSIBLE_RULES,
};
pub use error::{Error, Result};
pub use reversibility::{
    is_reversible_bruteforce, proof_family_witness, reversibility_predicate, scan_all_rules,
    ClassificationReport, CollisionWitness, ReversibilityVerdict,
};
pub use simulator::{
    circuit_permutation, simulate_basis, simulate_statevector, verify_implementation,
    Permutation, StateVector,
};
pub use synthesis::{
    left_shift_circuit, synth_rule150, synth_rule166, synth_rule60, synth_rule90, synthesize,
    SynthesisRequest,
};
