//! Reversible circuits over `n` wires built from X, SWAP and mixed-polarity
//! multi-controlled X gates.
//!
//! Gates execute in list order. A matrix product such as `X^{⊗N} · U` acts
//! right to left, so it corresponds to the gates of `U` followed by an X layer.

mod json;
mod render;

use std::collections::HashSet;

use crate::eca::Configuration;
use crate::error::{Error, Result};

pub use render::render_ascii;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Control {
    pub wire: usize,
    /// `true` fires on 1, `false` fires on 0.
    pub positive: bool,
}

impl Control {
    pub const fn pos(wire: usize) -> Self {
        Control {
            wire,
            positive: true,
        }
    }

    pub const fn neg(wire: usize) -> Self {
        Control {
            wire,
            positive: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    X(usize),
    Swap(usize, usize),
    /// Flips every target when every control matches its polarity.
    Mcx {
        controls: Vec<Control>,
        targets: Vec<usize>,
    },
}

impl Gate {
    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::Mcx {
            controls: vec![Control::pos(control)],
            targets: vec![target],
        }
    }

    /// Multi-controlled X; at least one control and one target, all wires distinct.
    pub fn mcx(controls: Vec<Control>, targets: Vec<usize>) -> Result<Self> {
        let gate = Gate::Mcx { controls, targets };
        gate.check_shape()?;
        Ok(gate)
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Gate::X(_) => "x",
            Gate::Swap(..) => "swap",
            Gate::Mcx { .. } => "mcx",
        }
    }

    pub fn targets(&self) -> Vec<usize> {
        match self {
            Gate::X(t) => vec![*t],
            Gate::Swap(a, b) => vec![*a, *b],
            Gate::Mcx { targets, .. } => targets.clone(),
        }
    }

    pub fn controls(&self) -> &[Control] {
        match self {
            Gate::Mcx { controls, .. } => controls,
            _ => &[],
        }
    }

    /// Every wire the gate touches, controls first.
    pub fn wires(&self) -> Vec<usize> {
        let mut w: Vec<usize> = self.controls().iter().map(|c| c.wire).collect();
        w.extend(self.targets());
        w
    }

    /// Number of wires the gate acts on.
    pub fn arity(&self) -> usize {
        self.controls().len() + self.targets().len()
    }

    fn check_shape(&self) -> Result<()> {
        if let Gate::Mcx { controls, targets } = self {
            if controls.is_empty() {
                return Err(Error::domain("mcx gate needs at least one control (use x instead)"));
            }
            if targets.is_empty() {
                return Err(Error::domain("mcx gate needs at least one target"));
            }
        }
        let wires = self.wires();
        let distinct: HashSet<_> = wires.iter().collect();
        if distinct.len() != wires.len() {
            return Err(Error::domain(format!("gate wires {wires:?} are not distinct")));
        }
        Ok(())
    }

    /// Checks the gate invariants against a circuit of `n` wires.
    pub fn validate(&self, n: usize) -> Result<()> {
        self.check_shape()?;
        if let Some(&w) = self.wires().iter().find(|&&w| w >= n) {
            return Err(Error::domain(format!(
                "wire {w} is out of range for {n} wires"
            )));
        }
        Ok(())
    }

    fn map_wires(&self, f: impl Fn(usize) -> usize) -> Gate {
        match self {
            Gate::X(t) => Gate::X(f(*t)),
            Gate::Swap(a, b) => Gate::Swap(f(*a), f(*b)),
            Gate::Mcx { controls, targets } => Gate::Mcx {
                controls: controls
                    .iter()
                    .map(|c| Control {
                        wire: f(c.wire),
                        positive: c.positive,
                    })
                    .collect(),
                targets: targets.iter().map(|&t| f(t)).collect(),
            },
        }
    }

    fn apply_unchecked(&self, bits: &mut [bool]) {
        match self {
            Gate::X(t) => bits[*t] = !bits[*t],
            Gate::Swap(a, b) => bits.swap(*a, *b),
            Gate::Mcx { controls, targets } => {
                if controls.iter().all(|c| bits[c.wire] == c.positive) {
                    for &t in targets {
                        bits[t] = !bits[t];
                    }
                }
            }
        }
    }
}

/// Applies one gate to a basis state.
pub fn apply_gate_to_bits(gate: &Gate, bits: &Configuration) -> Result<Configuration> {
    gate.validate(bits.len())?;
    let mut out = bits.clone();
    gate.apply_unchecked(out.bits_mut());
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CircuitStats {
    pub gate_count: usize,
    pub max_arity: usize,
}

/// An ordered gate list over `n` wires. Every gate is valid for `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Circuit {
    n: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("circuit needs at least one wire"));
        }
        Ok(Circuit {
            n,
            gates: Vec::new(),
        })
    }

    pub fn from_gates(n: usize, gates: Vec<Gate>) -> Result<Self> {
        let mut c = Circuit::new(n)?;
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    /// One X gate on every wire.
    pub fn x_layer(n: usize) -> Result<Self> {
        Circuit::from_gates(n, (0..n).map(Gate::X).collect())
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.n)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// This circuit followed by `next`.
    pub fn then(mut self, next: &Circuit) -> Result<Circuit> {
        if next.n != self.n {
            return Err(Error::domain(format!(
                "cannot compose circuits on {} and {} wires",
                self.n, next.n
            )));
        }
        self.gates.extend(next.gates.iter().cloned());
        Ok(self)
    }

    /// Mirrors every wire index `i -> n - 1 - i`, keeping gate order and polarities.
    pub fn reversed(&self) -> Circuit {
        let n = self.n;
        Circuit {
            n,
            gates: self.gates.iter().map(|g| g.map_wires(|w| n - 1 - w)).collect(),
        }
    }

    /// Appends an X gate on every wire.
    pub fn with_x_layer(mut self) -> Circuit {
        self.gates.extend((0..self.n).map(Gate::X));
        self
    }

    /// Rewrites each negative control as X, positive control, X on that wire.
    pub fn decompose_negative_controls(&self) -> Circuit {
        let mut gates = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            match g {
                Gate::Mcx { controls, targets } if controls.iter().any(|c| !c.positive) => {
                    let flipped: Vec<usize> =
                        controls.iter().filter(|c| !c.positive).map(|c| c.wire).collect();
                    gates.extend(flipped.iter().map(|&w| Gate::X(w)));
                    gates.push(Gate::Mcx {
                        controls: controls.iter().map(|c| Control::pos(c.wire)).collect(),
                        targets: targets.clone(),
                    });
                    gates.extend(flipped.iter().map(|&w| Gate::X(w)));
                }
                other => gates.push(other.clone()),
            }
        }
        Circuit { n: self.n, gates }
    }

    pub fn stats(&self) -> CircuitStats {
        CircuitStats {
            gate_count: self.gates.len(),
            max_arity: self.gates.iter().map(Gate::arity).max().unwrap_or(0),
        }
    }

    pub fn has_negative_controls(&self) -> bool {
        self.gates
            .iter()
            .any(|g| g.controls().iter().any(|c| !c.positive))
    }

    /// Lowers the circuit to word operations on `sum 2^i a_i` encodings.
    /// Returns `None` for more than 64 wires.
    pub fn compile(&self) -> Option<CompiledCircuit> {
        if self.n > 64 {
            return None;
        }
        let ops = self
            .gates
            .iter()
            .map(|g| match g {
                Gate::X(t) => WordOp::Flip(1 << t),
                Gate::Swap(a, b) => WordOp::Swap(*a as u32, *b as u32),
                Gate::Mcx { controls, targets } => {
                    let mask = controls.iter().fold(0u64, |m, c| m | 1 << c.wire);
                    let value = controls
                        .iter()
                        .filter(|c| c.positive)
                        .fold(0u64, |m, c| m | 1 << c.wire);
                    let flip = targets.iter().fold(0u64, |m, &t| m | 1 << t);
                    WordOp::Conditional { mask, value, flip }
                }
            })
            .collect();
        Some(CompiledCircuit { n: self.n, ops })
    }

    pub(crate) fn apply_in_place(&self, bits: &mut [bool]) {
        for g in &self.gates {
            g.apply_unchecked(bits);
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum WordOp {
    Flip(u64),
    Swap(u32, u32),
    Conditional { mask: u64, value: u64, flip: u64 },
}

/// A circuit lowered to bit operations on integer-encoded basis states.
#[derive(Clone, Debug)]
pub struct CompiledCircuit {
    n: usize,
    ops: Vec<WordOp>,
}

impl CompiledCircuit {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn apply(&self, mut state: u64) -> u64 {
        for op in &self.ops {
            match *op {
                WordOp::Flip(m) => state ^= m,
                WordOp::Swap(a, b) => {
                    let d = ((state >> a) ^ (state >> b)) & 1;
                    state ^= (d << a) | (d << b);
                }
                WordOp::Conditional { mask, value, flip } => {
                    if state & mask == value {
                        state ^= flip;
                    }
                }
            }
        }
        state
    }
}
