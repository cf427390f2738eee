//! Running circuits on basis states and state vectors.
//!
//! Basis state `|a_0 ... a_{N-1}>` has index `sum 2^i a_i`, so wire 0 (the
//! top wire in diagrams) is the least significant bit. Every gate here is a
//! classical reversible primitive, so a circuit acts on a state vector by
//! moving amplitudes between indices; no arithmetic touches the amplitudes.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;
use crate::eca::{BoundaryCondition, Configuration, Rule, StepKernel};
use crate::error::{Error, Result};
use crate::synthesis::{synthesize, SynthesisRequest};

/// Resource guard for [`circuit_permutation`].
pub const MAX_PERMUTATION_WIRES: usize = 20;
/// Resource guard for state vectors and [`verify_implementation`].
pub const MAX_STATEVECTOR_QUBITS: usize = 16;

pub fn simulate_basis(c: &Circuit, b: &Configuration) -> Result<Configuration> {
    if b.len() != c.n() {
        return Err(Error::domain(format!(
            "configuration has {} cells but the circuit has {} wires",
            b.len(),
            c.n()
        )));
    }
    let mut out = b.clone();
    c.apply_in_place(out.bits_mut());
    Ok(out)
}

/// A bijection on `[0, 2^n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    n: usize,
    image: Vec<u32>,
}

impl Permutation {
    /// Checks bijectivity before accepting `image`.
    pub fn new(n: usize, image: Vec<u32>) -> Result<Self> {
        if n > MAX_PERMUTATION_WIRES {
            return Err(Error::Capacity {
                what: "wires",
                requested: n,
                limit: MAX_PERMUTATION_WIRES,
            });
        }
        let size = 1usize << n;
        if image.len() != size {
            return Err(Error::domain(format!(
                "permutation on {n} bits needs {size} entries, got {}",
                image.len()
            )));
        }
        let mut hit = vec![false; size];
        for (k, &v) in image.iter().enumerate() {
            let slot = hit.get_mut(v as usize).ok_or_else(|| {
                Error::domain(format!("image[{k}] = {v} is outside [0, {size})"))
            })?;
            if std::mem::replace(slot, true) {
                return Err(Error::domain(format!("value {v} appears twice in the image")));
            }
        }
        Ok(Permutation { n, image })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Permutation::new(n, (0..1u32 << n).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn image(&self) -> &[u32] {
        &self.image
    }

    pub fn apply(&self, k: usize) -> usize {
        self.image[k] as usize
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &Permutation) -> Result<Permutation> {
        if self.n != next.n {
            return Err(Error::domain("cannot compose permutations of different sizes"));
        }
        Ok(Permutation {
            n: self.n,
            image: self.image.iter().map(|&k| next.image[k as usize]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.image.len()];
        for (k, &v) in self.image.iter().enumerate() {
            inv[v as usize] = k as u32;
        }
        Permutation {
            n: self.n,
            image: inv,
        }
    }
}

/// The basis-state permutation induced by `c`.
pub fn circuit_permutation(c: &Circuit) -> Result<Permutation> {
    let n = c.n();
    if n > MAX_PERMUTATION_WIRES {
        return Err(Error::Capacity {
            what: "wires",
            requested: n,
            limit: MAX_PERMUTATION_WIRES,
        });
    }
    let compiled = c.compile().expect("n <= 20 fits in a word");
    let image: Vec<u32> = (0..1u64 << n)
        .into_par_iter()
        .map(|k| compiled.apply(k) as u32)
        .collect();
    Permutation::new(n, image)
        .map_err(|e| Error::Invariant(format!("circuit did not induce a bijection: {e}")))
}

/// Amplitudes over the `2^n` computational basis states.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amplitudes: Vec<Complex64>,
}

fn check_qubits(n: usize) -> Result<()> {
    if n > MAX_STATEVECTOR_QUBITS {
        return Err(Error::Capacity {
            what: "qubits",
            requested: n,
            limit: MAX_STATEVECTOR_QUBITS,
        });
    }
    if n == 0 {
        return Err(Error::domain("state vector needs at least one qubit"));
    }
    Ok(())
}

impl StateVector {
    pub fn new(n: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_qubits(n)?;
        if amplitudes.len() != 1 << n {
            return Err(Error::domain(format!(
                "{n} qubits need {} amplitudes, got {}",
                1usize << n,
                amplitudes.len()
            )));
        }
        Ok(StateVector { n, amplitudes })
    }

    pub fn basis(n: usize, k: usize) -> Result<Self> {
        check_qubits(n)?;
        if k >> n != 0 {
            return Err(Error::domain(format!("basis index {k} out of range for {n} qubits")));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n];
        amplitudes[k] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n, amplitudes })
    }

    /// `|a>` for a classical configuration.
    pub fn from_configuration(a: &Configuration) -> Result<Self> {
        StateVector::basis(a.len(), a.to_index()? as usize)
    }

    pub fn uniform(n: usize) -> Result<Self> {
        check_qubits(n)?;
        let amp = Complex64::new(1.0 / ((1u64 << n) as f64).sqrt(), 0.0);
        Ok(StateVector {
            n,
            amplitudes: vec![amp; 1 << n],
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Euclidean norm.
    ///
    /// Squared magnitudes are summed in ascending order, so the result depends
    /// only on the multiset of amplitudes and is unchanged bit for bit by any
    /// permutation of them.
    pub fn norm(&self) -> f64 {
        let mut sq: Vec<f64> = self.amplitudes.iter().map(|a| a.norm_sqr()).collect();
        sq.sort_by(f64::total_cmp);
        sq.iter().sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> Result<Self> {
        let norm = self.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::domain("cannot normalize a zero or non-finite state"));
        }
        Ok(StateVector {
            n: self.n,
            amplitudes: self.amplitudes.iter().map(|a| a / norm).collect(),
        })
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm() * self.norm() - 1.0).abs() <= tol
    }

    /// `Some(k)` if the state is exactly the basis vector `e_k`.
    pub fn as_basis_index(&self) -> Option<usize> {
        let zero = Complex64::new(0.0, 0.0);
        let mut found = None;
        for (k, a) in self.amplitudes.iter().enumerate() {
            if *a == Complex64::new(1.0, 0.0) && found.is_none() {
                found = Some(k);
            } else if *a != zero {
                return None;
            }
        }
        found
    }

    pub fn to_json(&self) -> String {
        let record = StateRecord {
            n: self.n,
            amplitudes: self.amplitudes.iter().map(|a| [a.re, a.im]).collect(),
        };
        serde_json::to_string_pretty(&record).expect("state serialization cannot fail")
    }

    /// Reads `{"n": int, "amplitudes": [[re, im], ...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let record: StateRecord = serde_json::from_str(text).map_err(|e| {
            Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string())
        })?;
        let amplitudes = record
            .amplitudes
            .into_iter()
            .map(|[re, im]| Complex64::new(re, im))
            .collect();
        StateVector::new(record.n, amplitudes)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateRecord {
    n: usize,
    amplitudes: Vec<[f64; 2]>,
}

/// Applies `c` to a state vector by relocating amplitudes: the output
/// amplitude at `image[k]` is the input amplitude at `k`.
pub fn simulate_statevector(c: &Circuit, v: &StateVector) -> Result<StateVector> {
    if v.n != c.n() {
        return Err(Error::domain(format!(
            "state has {} qubits but the circuit has {} wires",
            v.n,
            c.n()
        )));
    }
    check_qubits(v.n)?;
    let perm = circuit_permutation(c)?;
    let mut out = vec![Complex64::new(0.0, 0.0); v.amplitudes.len()];
    for (k, amp) in v.amplitudes.iter().enumerate() {
        out[perm.apply(k)] = *amp;
    }
    Ok(StateVector {
        n: v.n,
        amplitudes: out,
    })
}

/// Outcome of an exhaustive circuit-versus-automaton comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub rule: Rule,
    pub n: usize,
    pub bc: BoundaryCondition,
    pub verified: bool,
    pub states_checked: u64,
    pub mismatches: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<Configuration>,
}

/// Synthesizes the circuit for `(rule, n, bc)` and compares it with the
/// automaton step on all `2^n` basis states.
pub fn verify_implementation(rule: Rule, n: usize, bc: BoundaryCondition) -> Result<bool> {
    Ok(verification_report(rule, n, bc)?.verified)
}

pub fn verification_report(
    rule: Rule,
    n: usize,
    bc: BoundaryCondition,
) -> Result<VerificationReport> {
    if n > MAX_STATEVECTOR_QUBITS {
        return Err(Error::Capacity {
            what: "cells",
            requested: n,
            limit: MAX_STATEVECTOR_QUBITS,
        });
    }
    let circuit = synthesize(&SynthesisRequest::new(rule, n, bc)?)?;
    let compiled = circuit.compile().expect("n <= 16 fits in a word");
    let kernel = StepKernel::new(rule, n, bc);
    let total = 1u64 << n;
    let bad: Vec<u64> = (0..total)
        .into_par_iter()
        .filter(|&x| compiled.apply(x) != kernel.apply(x))
        .collect();
    Ok(VerificationReport {
        rule,
        n,
        bc,
        verified: bad.is_empty(),
        states_checked: total,
        mismatches: bad.len() as u64,
        first_mismatch: bad
            .first()
            .map(|&x| Configuration::from_index(x, n))
            .transpose()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Gate;
    use crate::synthesis::{left_shift_circuit, synth_rule60};

    use BoundaryCondition::{Fixed, Periodic};

    fn cfg(s: &str) -> Configuration {
        s.parse().unwrap()
    }

    #[test]
    fn basis_examples() {
        let c170 = left_shift_circuit(5).unwrap();
        assert_eq!(simulate_basis(&c170, &cfg("10000")).unwrap(), cfg("00001"));
        let empty = Circuit::new(4).unwrap();
        assert_eq!(simulate_basis(&empty, &cfg("1011")).unwrap(), cfg("1011"));
        let c51 = Circuit::x_layer(3).unwrap();
        assert_eq!(simulate_basis(&c51, &cfg("010")).unwrap(), cfg("101"));
        assert!(simulate_basis(&c51, &cfg("0101")).is_err());
    }

    #[test]
    fn permutation_examples() {
        let p = circuit_permutation(&Circuit::new(2).unwrap()).unwrap();
        assert_eq!(p.image(), &[0, 1, 2, 3]);
        let x = Circuit::from_gates(1, vec![Gate::X(0)]).unwrap();
        assert_eq!(circuit_permutation(&x).unwrap().image(), &[1, 0]);
        let p = circuit_permutation(&left_shift_circuit(3).unwrap()).unwrap();
        assert_eq!(p.apply(1), 4);
        assert!(matches!(
            circuit_permutation(&Circuit::new(21).unwrap()),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(1, vec![0, 0]).is_err());
        assert!(Permutation::new(1, vec![0, 2]).is_err());
        assert!(Permutation::new(2, vec![0, 1]).is_err());
        let p = Permutation::new(2, vec![2, 0, 3, 1]).unwrap();
        assert_eq!(p.then(&p.inverse()).unwrap(), Permutation::identity(2).unwrap());
    }

    #[test]
    fn statevector_examples() {
        let c60 = synth_rule60(4, Fixed).unwrap();
        for k in 0..16 {
            let a = Configuration::from_index(k as u64, 4).unwrap();
            let out = simulate_statevector(&c60, &StateVector::basis(4, k).unwrap()).unwrap();
            let expected = crate::eca::step(&a, Rule::from_code(60), Fixed);
            assert_eq!(out.as_basis_index(), Some(expected.to_index().unwrap() as usize));
        }

        let u = StateVector::uniform(3).unwrap();
        let out = simulate_statevector(&synth_rule60(3, Fixed).unwrap(), &u).unwrap();
        assert_eq!(out, u);

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let zero = Complex64::new(0.0, 0.0);
        let amp = Complex64::new(h, 0.0);
        // (|00> + |01>)/sqrt 2 ; config [0,1] has index 2.
        let v = StateVector::new(2, vec![amp, zero, amp, zero]).unwrap();
        let out = simulate_statevector(&left_shift_circuit(2).unwrap(), &v).unwrap();
        assert_eq!(out.amplitudes(), &[amp, amp, zero, zero]);
    }

    #[test]
    fn statevector_errors_and_json() {
        assert!(StateVector::new(2, vec![Complex64::new(1.0, 0.0); 3]).is_err());
        assert!(matches!(StateVector::uniform(17), Err(Error::Capacity { .. })));
        assert!(simulate_statevector(&Circuit::new(3).unwrap(), &StateVector::uniform(2).unwrap())
            .is_err());
        let v = StateVector::new(
            1,
            vec![Complex64::new(0.6, 0.0), Complex64::new(0.0, -0.8)],
        )
        .unwrap();
        assert!(v.is_normalized(1e-12));
        let back = StateVector::from_json(&v.to_json()).unwrap();
        assert_eq!(back, v);
        assert!(StateVector::from_json(r#"{"n": 1, "amplitudes": [[1, 0]]}"#).is_err());
    }

    #[test]
    fn normalization() {
        let v = StateVector::new(1, vec![Complex64::new(3.0, 0.0), Complex64::new(0.0, 4.0)])
            .unwrap()
            .normalized()
            .unwrap();
        assert!(v.is_normalized(1e-12));
        assert!(StateVector::new(1, vec![Complex64::new(0.0, 0.0); 2])
            .unwrap()
            .normalized()
            .is_err());
    }

    #[test]
    fn verify_examples() {
        assert!(verify_implementation(Rule::from_code(150), 7, Periodic).unwrap());
        assert!(verify_implementation(Rule::from_code(166), 9, Periodic).unwrap());
        assert!(verify_implementation(Rule::from_code(90), 8, Fixed).unwrap());
        assert!(matches!(
            verify_implementation(Rule::from_code(90), 7, Fixed),
            Err(Error::NotReversible { .. })
        ));
        assert!(matches!(
            verify_implementation(Rule::from_code(204), 17, Fixed),
            Err(Error::Capacity { .. })
        ));
    }
}
