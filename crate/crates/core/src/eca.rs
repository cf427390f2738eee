//! Classical semantics of elementary cellular automata.
//!
//! A configuration `a = [a_0, ..., a_{N-1}]` is updated by
//! `a*_i = f(a_{i-1}, a_i, a_{i+1})`, where `f` is read off the rule's Wolfram
//! code: bit `4l + 2c + r` of the code is `f(l, c, r)`.
//!
//! Configurations are encoded as integers with `a_0` in the least significant
//! bit (`sum 2^i a_i`). [`StepKernel`] steps such words with a handful of
//! shifted-word boolean operations; [`step_naive`] evaluates cell by cell and
//! is the reference the fast path is tested against.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An elementary cellular automaton rule, identified by its Wolfram code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Rule(u8);

impl Rule {
    pub const fn from_code(code: u8) -> Self {
        Rule(code)
    }

    /// Builds a rule from an arbitrary integer, rejecting codes outside `[0, 255]`.
    pub fn new(code: i64) -> Result<Self> {
        u8::try_from(code)
            .map(Rule)
            .map_err(|_| Error::domain(format!("rule code {code} is outside [0, 255]")))
    }

    pub const fn code(self) -> u8 {
        self.0
    }

    /// `f(l, c, r)` for this rule.
    #[inline]
    pub const fn apply(self, left: bool, center: bool, right: bool) -> bool {
        let idx = ((left as u8) << 2) | ((center as u8) << 1) | (right as u8);
        (self.0 >> idx) & 1 == 1
    }

    /// The rule whose outputs are the complement of this one (`255 - code`).
    pub const fn complement(self) -> Self {
        Rule(255 - self.0)
    }

    /// The rule obtained by exchanging the roles of the left and right neighbours.
    pub fn mirror(self) -> Self {
        let mut code = 0u8;
        for idx in 0..8u8 {
            let (l, c, r) = (idx >> 2 & 1, idx >> 1 & 1, idx & 1);
            let swapped = (r << 2) | (c << 1) | l;
            code |= ((self.0 >> swapped) & 1) << idx;
        }
        Rule(code)
    }

    /// Iterates over all 256 rules in ascending order.
    pub fn all() -> impl Iterator<Item = Rule> {
        (0..=255u8).map(Rule)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl From<u8> for Rule {
    fn from(code: u8) -> Self {
        Rule(code)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryCondition {
    /// `a_0` and `a_{N-1}` are neighbours.
    Periodic,
    /// Virtual zero cells sit beyond both ends.
    Fixed,
}

impl BoundaryCondition {
    pub const ALL: [BoundaryCondition; 2] = [BoundaryCondition::Periodic, BoundaryCondition::Fixed];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundaryCondition::Periodic => "periodic",
            BoundaryCondition::Fixed => "fixed",
        }
    }
}

impl fmt::Display for BoundaryCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for BoundaryCondition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "periodic" => Ok(BoundaryCondition::Periodic),
            "fixed" => Ok(BoundaryCondition::Fixed),
            other => Err(Error::domain(format!(
                "unknown boundary condition {other:?} (expected periodic or fixed)"
            ))),
        }
    }
}

/// Cell states `a_0 .. a_{N-1}`, leftmost first. Always holds at least one cell.
///
/// Serialized as an array of 0/1 integers; displayed as a bit string such as `10100`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct Configuration {
    bits: Vec<bool>,
}

impl Configuration {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::domain("configuration must have at least one cell"));
        }
        Ok(Configuration { bits })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(vec![false; n])
    }

    /// Builds a configuration from 0/1 values.
    pub fn from_values(values: &[u8]) -> Result<Self> {
        let bits = values
            .iter()
            .enumerate()
            .map(|(i, &v)| match v {
                0 => Ok(false),
                1 => Ok(true),
                _ => Err(Error::domain(format!("cell {i} has value {v}, expected 0 or 1"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(bits)
    }

    /// Decodes `index = sum 2^i a_i` into `n` cells.
    pub fn from_index(index: u64, n: usize) -> Result<Self> {
        if n == 0 || n > 64 {
            return Err(Error::domain(format!(
                "integer encoding supports 1..=64 cells, got {n}"
            )));
        }
        if n < 64 && index >> n != 0 {
            return Err(Error::domain(format!("index {index} does not fit in {n} cells")));
        }
        Ok(Configuration {
            bits: (0..n).map(|i| (index >> i) & 1 == 1).collect(),
        })
    }

    /// Encodes as `sum 2^i a_i`. Fails for more than 64 cells.
    pub fn to_index(&self) -> Result<u64> {
        if self.bits.len() > 64 {
            return Err(Error::domain(format!(
                "configuration of {} cells does not fit in a 64-bit word",
                self.bits.len()
            )));
        }
        Ok(self
            .bits
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | ((b as u64) << i)))
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub(crate) fn bits_mut(&mut self) -> &mut [bool] {
        &mut self.bits
    }

    /// Cell order reversed (`a_i -> a_{N-1-i}`).
    pub fn reversed(&self) -> Self {
        let mut bits = self.bits.clone();
        bits.reverse();
        Configuration { bits }
    }

    pub fn complemented(&self) -> Self {
        Configuration {
            bits: self.bits.iter().map(|b| !b).collect(),
        }
    }

    pub fn to_values(&self) -> Vec<u8> {
        self.bits.iter().map(|&b| b as u8).collect()
    }
}

impl TryFrom<Vec<u8>> for Configuration {
    type Error = Error;

    fn try_from(values: Vec<u8>) -> Result<Self> {
        Configuration::from_values(&values)
    }
}

impl From<Configuration> for Vec<u8> {
    fn from(c: Configuration) -> Self {
        c.to_values()
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Configuration {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .trim()
            .chars()
            .enumerate()
            .map(|(i, ch)| match ch {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::parse(
                    format!("character {i}"),
                    format!("expected '0' or '1', found {ch:?}"),
                )),
            })
            .collect::<Result<Vec<_>>>()?;
        Configuration::new(bits)
    }
}

/// Truth table of `rule`; entry `4l + 2c + r` is `f(l, c, r)`.
pub fn rule_truth_table(rule: Rule) -> [u8; 8] {
    std::array::from_fn(|k| (rule.code() >> k) & 1)
}

/// Inverse of [`rule_truth_table`]. Every entry must be 0 or 1.
pub fn rule_from_truth_table(table: &[u8; 8]) -> Result<Rule> {
    let mut code = 0u8;
    for (k, &v) in table.iter().enumerate() {
        match v {
            0 => {}
            1 => code |= 1 << k,
            _ => return Err(Error::domain(format!("truth table entry {k} is {v}"))),
        }
    }
    Ok(Rule(code))
}

/// One step of the automaton, cell by cell.
pub fn step_naive(config: &Configuration, rule: Rule, bc: BoundaryCondition) -> Configuration {
    let a = config.bits();
    let n = a.len();
    let bits = (0..n)
        .map(|i| {
            let (left, right) = match bc {
                BoundaryCondition::Periodic => (a[(i + n - 1) % n], a[(i + 1) % n]),
                BoundaryCondition::Fixed => (
                    i.checked_sub(1).map(|j| a[j]).unwrap_or(false),
                    a.get(i + 1).copied().unwrap_or(false),
                ),
            };
            rule.apply(left, a[i], right)
        })
        .collect();
    Configuration { bits }
}

/// One step of the automaton. Uses the word-parallel kernel when the
/// configuration fits in a machine word.
pub fn step(config: &Configuration, rule: Rule, bc: BoundaryCondition) -> Configuration {
    let n = config.len();
    if n <= 64 {
        let word = config.to_index().expect("n <= 64");
        let out = StepKernel::new(rule, n, bc).apply(word);
        Configuration::from_index(out, n).expect("kernel output is masked to n bits")
    } else {
        step_naive(config, rule, bc)
    }
}

/// Word-parallel stepping of integer-encoded configurations of up to 64 cells.
#[derive(Clone, Debug)]
pub struct StepKernel {
    n: usize,
    bc: BoundaryCondition,
    mask: u64,
    // Neighbourhood indices whose truth-table entry is 1.
    minterms: Vec<u8>,
    complement: bool,
}

impl StepKernel {
    /// Panics unless `1 <= n <= 64`.
    pub fn new(rule: Rule, n: usize, bc: BoundaryCondition) -> Self {
        assert!((1..=64).contains(&n), "StepKernel supports 1..=64 cells");
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        // Evaluate whichever of f / !f has fewer minterms.
        let ones = rule.code().count_ones();
        let complement = ones > 4;
        let minterms = (0..8u8)
            .filter(|&k| ((rule.code() >> k) & 1 == 1) != complement)
            .collect();
        StepKernel {
            n,
            bc,
            mask,
            minterms,
            complement,
        }
    }

    pub fn cells(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn apply(&self, word: u64) -> u64 {
        let c = word & self.mask;
        // Bit i of `left` is a_{i-1}; bit i of `right` is a_{i+1}.
        let (left, right) = match self.bc {
            BoundaryCondition::Fixed => ((c << 1) & self.mask, c >> 1),
            BoundaryCondition::Periodic => (
                ((c << 1) | (c >> (self.n - 1))) & self.mask,
                ((c >> 1) | (c << (self.n - 1))) & self.mask,
            ),
        };
        let mut out = 0u64;
        for &k in &self.minterms {
            let l = if k & 4 != 0 { left } else { !left };
            let m = if k & 2 != 0 { c } else { !c };
            let r = if k & 1 != 0 { right } else { !right };
            out |= l & m & r;
        }
        if self.complement {
            out = !out;
        }
        out & self.mask
    }
}

/// The 22 rules that are reversible for some cell count and boundary condition.
pub const REVERSIBLE_RULES: [u8; 22] = [
    15, 45, 51, 60, 75, 85, 89, 90, 101, 102, 105, 150, 153, 154, 165, 166, 170, 180, 195, 204,
    210, 240,
];

type CellFormula = fn(bool, bool, bool) -> bool;

/// Closed-form update `(a_{i-1}, a_i, a_{i+1}) -> a*_i` for each reversible rule.
fn closed_form(rule: Rule) -> Option<CellFormula> {
    let f: CellFormula = match rule.code() {
        15 => |l, _, _| !l,
        45 => |l, c, r| !(l ^ (!c & r)),
        51 => |_, c, _| !c,
        60 => |l, c, _| l ^ c,
        75 => |l, c, r| !(l ^ (!r & c)),
        85 => |_, _, r| !r,
        89 => |l, c, r| !(r ^ (!l & c)),
        90 => |l, _, r| l ^ r,
        101 => |l, c, r| !(r ^ (!c & l)),
        102 => |_, c, r| c ^ r,
        105 => |l, c, r| !(l ^ c ^ r),
        150 => |l, c, r| l ^ c ^ r,
        153 => |_, c, r| !(c ^ r),
        154 => |l, c, r| r ^ (!c & l),
        165 => |l, _, r| !(l ^ r),
        166 => |l, c, r| r ^ (!l & c),
        170 => |_, _, r| r,
        180 => |l, c, r| l ^ (!r & c),
        // Often printed as l ^ c ^ r, which is rule 150; the code decodes to this.
        195 => |l, c, _| !(l ^ c),
        204 => |_, c, _| c,
        210 => |l, c, r| l ^ (!c & r),
        240 => |l, _, _| l,
        _ => return None,
    };
    Some(f)
}

/// Steps using the closed-form boolean formula of a reversible rule.
///
/// Only defined for the 22 rules in [`REVERSIBLE_RULES`]; it exists as an
/// independent cross-check of [`step`].
pub fn formula_step(
    config: &Configuration,
    rule: Rule,
    bc: BoundaryCondition,
) -> Result<Configuration> {
    let f = closed_form(rule).ok_or_else(|| {
        Error::Unsupported(format!("rule {rule} has no closed-form reversible formula"))
    })?;
    let a = config.bits();
    let n = a.len();
    let bits = (0..n)
        .map(|i| {
            let left = match (bc, i) {
                (BoundaryCondition::Fixed, 0) => false,
                _ => a[(i + n - 1) % n],
            };
            let right = match bc {
                BoundaryCondition::Fixed if i + 1 == n => false,
                _ => a[(i + 1) % n],
            };
            f(left, a[i], right)
        })
        .collect();
    Ok(Configuration { bits })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(s: &str) -> Configuration {
        s.parse().unwrap()
    }

    #[test]
    fn truth_tables() {
        assert_eq!(rule_truth_table(Rule(0)), [0; 8]);
        assert_eq!(rule_truth_table(Rule(90)), [0, 1, 0, 1, 1, 0, 1, 0]);
        let t204 = rule_truth_table(Rule(204));
        for k in 0..8 {
            assert_eq!(t204[k], (k as u8 >> 1) & 1, "f(l,c,r) = c");
        }
        for rule in Rule::all() {
            assert_eq!(rule_from_truth_table(&rule_truth_table(rule)).unwrap(), rule);
        }
    }

    #[test]
    fn rule_range_is_checked() {
        assert!(Rule::new(256).is_err());
        assert!(Rule::new(-1).is_err());
        assert_eq!(Rule::new(255).unwrap().code(), 255);
    }

    #[test]
    fn mirror_pairs() {
        assert_eq!(Rule(60).mirror(), Rule(102));
        assert_eq!(Rule(166).mirror(), Rule(180));
        assert_eq!(Rule(154).mirror(), Rule(210));
        assert_eq!(Rule(170).mirror(), Rule(240));
        assert_eq!(Rule(150).mirror(), Rule(150));
    }

    #[test]
    fn step_examples() {
        assert_eq!(step(&cfg("00100"), Rule(90), BoundaryCondition::Fixed), cfg("01010"));
        assert_eq!(step(&cfg("10000"), Rule(170), BoundaryCondition::Periodic), cfg("00001"));
        let c = cfg("0110100");
        for bc in BoundaryCondition::ALL {
            assert_eq!(step(&c, Rule(204), bc), c);
            assert_eq!(step(&c, Rule(51), bc), c.complemented());
        }
    }

    #[test]
    fn formula_examples() {
        let fixed = BoundaryCondition::Fixed;
        let periodic = BoundaryCondition::Periodic;
        assert_eq!(formula_step(&cfg("110"), Rule(60), fixed).unwrap(), cfg("101"));
        assert_eq!(formula_step(&cfg("000"), Rule(51), periodic).unwrap(), cfg("111"));
        assert_eq!(formula_step(&cfg("000"), Rule(51), fixed).unwrap(), cfg("111"));
        assert_eq!(formula_step(&cfg("101"), Rule(150), periodic).unwrap(), cfg("000"));
        assert!(matches!(
            formula_step(&cfg("101"), Rule(110), periodic),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn formula_matches_step_exhaustively() {
        for &code in &REVERSIBLE_RULES {
            for bc in BoundaryCondition::ALL {
                for n in 1..=10 {
                    for idx in 0..(1u64 << n) {
                        let c = Configuration::from_index(idx, n).unwrap();
                        assert_eq!(
                            formula_step(&c, Rule(code), bc).unwrap(),
                            step_naive(&c, Rule(code), bc),
                            "rule {code} {bc} {c}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn kernel_matches_naive_for_small_n() {
        for rule in Rule::all() {
            for bc in BoundaryCondition::ALL {
                for n in 1..=12 {
                    let kernel = StepKernel::new(rule, n, bc);
                    for idx in 0..(1u64 << n) {
                        let c = Configuration::from_index(idx, n).unwrap();
                        let naive = step_naive(&c, rule, bc).to_index().unwrap();
                        assert_eq!(kernel.apply(idx), naive, "rule {rule} {bc} n={n} {c}");
                    }
                }
            }
        }
    }

    #[test]
    fn rule170_rotates_the_encoding() {
        let n = 9;
        let kernel = StepKernel::new(Rule(170), n, BoundaryCondition::Periodic);
        let mask = (1u64 << n) - 1;
        for idx in 0..(1u64 << n) {
            let rotated = ((idx >> 1) | (idx << (n - 1))) & mask;
            assert_eq!(kernel.apply(idx), rotated);
        }
    }

    #[test]
    fn single_cell_edge_cases() {
        // n = 1: both neighbours are the cell itself (periodic) or zero (fixed).
        let one = cfg("1");
        assert_eq!(step(&one, Rule(128), BoundaryCondition::Periodic), cfg("1"));
        assert_eq!(step(&one, Rule(128), BoundaryCondition::Fixed), cfg("0"));
        assert_eq!(step(&one, Rule(2), BoundaryCondition::Fixed), cfg("0"));
    }

    #[test]
    fn encoding_round_trip_and_errors() {
        let c = cfg("1011");
        assert_eq!(c.to_index().unwrap(), 0b1101);
        assert_eq!(Configuration::from_index(0b1101, 4).unwrap(), c);
        assert!(Configuration::from_index(16, 4).is_err());
        assert!(Configuration::from_index(0, 0).is_err());
        assert!("".parse::<Configuration>().is_err());
        assert!("10a".parse::<Configuration>().is_err());
        let wide = Configuration::new(vec![true; 65]).unwrap();
        assert!(wide.to_index().is_err());
        assert_eq!(Configuration::from_index(u64::MAX, 64).unwrap().len(), 64);
    }

    #[test]
    fn wide_configurations_use_naive_path() {
        let mut bits = vec![false; 100];
        bits[50] = true;
        let c = Configuration::new(bits).unwrap();
        let s = step(&c, Rule(90), BoundaryCondition::Periodic);
        assert!(s.get(49) && s.get(51) && !s.get(50));
    }

    #[test]
    fn configuration_json_is_a_bit_array() {
        let c = cfg("1010");
        assert_eq!(serde_json::to_string(&c).unwrap(), "[1,0,1,0]");
        let back: Configuration = serde_json::from_str("[1,0,1,0]").unwrap();
        assert_eq!(back, c);
        assert!(serde_json::from_str::<Configuration>("[2]").is_err());
        assert!(serde_json::from_str::<Configuration>("[]").is_err());
    }
}
