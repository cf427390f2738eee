//! Reversibility of elementary cellular automata.
//!
//! A rule is reversible at a given cell count and boundary condition when its
//! one-step map on all `2^N` configurations is injective. That is exactly the
//! condition for a quantum circuit to implement it: an injective map on basis
//! states is a permutation matrix, hence unitary.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eca::{step, BoundaryCondition, Configuration, Rule, StepKernel};
use crate::error::{Error, Result};

/// Largest cell count accepted by [`is_reversible_bruteforce`].
pub const MAX_BRUTEFORCE_CELLS: usize = 24;

/// Smallest and largest cell counts accepted by [`scan_all_rules`].
pub const SCAN_MIN_CELLS: usize = 4;
pub const SCAN_MAX_CELLS: usize = 20;

/// Two distinct configurations with the same successor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollisionWitness {
    pub first: Configuration,
    pub second: Configuration,
    /// The common successor.
    pub image: Configuration,
}

impl CollisionWitness {
    /// Checks the witness against [`step`].
    pub fn is_valid(&self, rule: Rule, bc: BoundaryCondition) -> bool {
        self.first != self.second
            && self.first.len() == self.second.len()
            && step(&self.first, rule, bc) == self.image
            && step(&self.second, rule, bc) == self.image
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReversibilityVerdict {
    pub rule: Rule,
    pub n: usize,
    pub bc: BoundaryCondition,
    pub reversible: bool,
    /// Present exactly when `reversible` is false.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<CollisionWitness>,
}

/// Fixed-size bitset over `2^n` encoded configurations.
struct Occupancy {
    words: Vec<u64>,
}

impl Occupancy {
    fn new(n: usize) -> Self {
        let len = ((1usize << n) + 63) / 64;
        Occupancy {
            words: vec![0; len],
        }
    }

    /// Sets the bit, returning whether it was already set.
    #[inline]
    fn insert(&mut self, k: u64) -> bool {
        let (w, b) = ((k >> 6) as usize, k & 63);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] |= 1 << b;
        was
    }

    #[inline]
    fn contains(&self, k: u64) -> bool {
        self.words[(k >> 6) as usize] >> (k & 63) & 1 == 1
    }
}

/// Exhaustively decides injectivity of the one-step map on `n` cells.
///
/// On failure the witness is the lexicographically smallest colliding pair
/// `(x, y)`, `x < y`, by integer encoding: the smallest `x` sharing its image
/// with any other configuration, paired with the smallest such partner.
pub fn is_reversible_bruteforce(
    rule: Rule,
    n: usize,
    bc: BoundaryCondition,
) -> Result<ReversibilityVerdict> {
    bruteforce_with_limit(rule, n, bc, MAX_BRUTEFORCE_CELLS)
}

/// [`is_reversible_bruteforce`] with a caller-chosen resource guard (at most 32 cells).
pub fn bruteforce_with_limit(
    rule: Rule,
    n: usize,
    bc: BoundaryCondition,
    limit: usize,
) -> Result<ReversibilityVerdict> {
    if n == 0 {
        return Err(Error::domain("cell count must be at least 1"));
    }
    let limit = limit.min(32);
    if n > limit {
        return Err(Error::Capacity {
            what: "cells",
            requested: n,
            limit,
        });
    }
    let kernel = StepKernel::new(rule, n, bc);
    let total = 1u64 << n;

    // Pass 1: mark every image, and separately every image hit more than once.
    let mut seen = Occupancy::new(n);
    let mut repeated = Occupancy::new(n);
    let mut any_repeat = false;
    for x in 0..total {
        let img = kernel.apply(x);
        if seen.insert(img) {
            repeated.insert(img);
            any_repeat = true;
        }
    }
    let verdict = |witness: Option<CollisionWitness>| ReversibilityVerdict {
        rule,
        n,
        bc,
        reversible: witness.is_none(),
        witness,
    };
    if !any_repeat {
        return Ok(verdict(None));
    }

    // Pass 2: smallest x whose image is shared, then its smallest partner.
    let x = (0..total)
        .find(|&x| repeated.contains(kernel.apply(x)))
        .ok_or_else(|| Error::Invariant("repeated image without a preimage".into()))?;
    let img = kernel.apply(x);
    let y = (x + 1..total)
        .find(|&y| kernel.apply(y) == img)
        .ok_or_else(|| Error::Invariant("repeated image with a single preimage".into()))?;

    Ok(verdict(Some(CollisionWitness {
        first: Configuration::from_index(x, n)?,
        second: Configuration::from_index(y, n)?,
        image: Configuration::from_index(img, n)?,
    })))
}

/// Closed-form reversibility condition for the 22 reversible rules.
///
/// Exact for every `n >= 4`. At `n = 3` it is sound for the listed rules but
/// some further rules happen to be injective there (e.g. rule 27 periodic),
/// for which this returns false.
pub fn reversibility_predicate(rule: Rule, n: usize, bc: BoundaryCondition) -> bool {
    let periodic = bc == BoundaryCondition::Periodic;
    match rule.code() {
        51 | 204 => true,
        15 | 85 | 170 | 240 => periodic,
        45 | 75 | 89 | 101 | 154 | 166 | 180 | 210 => periodic && n % 2 == 1,
        105 | 150 => {
            if periodic {
                n % 3 != 0
            } else {
                n % 3 != 2
            }
        }
        60 | 102 | 153 | 195 => !periodic,
        90 | 165 => !periodic && n % 2 == 0,
        _ => false,
    }
}

/// One `(n, bc)` cell of a classification scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub n: usize,
    pub bc: BoundaryCondition,
    pub reversible: bool,
    #[serde(skip)]
    pub witness: Option<CollisionWitness>,
}

/// Brute-force verdicts for every rule over a range of cell counts, both boundaries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub rules: BTreeMap<u8, Vec<ScanEntry>>,
}

impl ClassificationReport {
    /// Rules with at least one reversible entry.
    pub fn reversible_rules(&self) -> Vec<Rule> {
        self.rules
            .iter()
            .filter(|(_, entries)| entries.iter().any(|e| e.reversible))
            .map(|(&code, _)| Rule::from_code(code))
            .collect()
    }

    /// Entries whose brute-force verdict disagrees with [`reversibility_predicate`].
    pub fn predicate_mismatches(&self) -> Vec<(Rule, usize, BoundaryCondition)> {
        self.rules
            .iter()
            .flat_map(|(&code, entries)| {
                let rule = Rule::from_code(code);
                entries
                    .iter()
                    .filter(move |e| e.reversible != reversibility_predicate(rule, e.n, e.bc))
                    .map(move |e| (rule, e.n, e.bc))
            })
            .collect()
    }

    pub fn entries(&self, rule: Rule) -> &[ScanEntry] {
        self.rules.get(&rule.code()).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string())
        })
    }

    /// Line-oriented summary: one line per (rule, boundary) with a reversible cell count.
    pub fn to_text(&self) -> String {
        let mut out = String::from("# rule bc reversible_n\n");
        for (code, entries) in &self.rules {
            for bc in BoundaryCondition::ALL {
                let ns: Vec<String> = entries
                    .iter()
                    .filter(|e| e.bc == bc && e.reversible)
                    .map(|e| e.n.to_string())
                    .collect();
                if !ns.is_empty() {
                    let _ = writeln!(out, "{code} {bc} {}", ns.join(","));
                }
            }
        }
        let _ = writeln!(
            out,
            "# {} of {} rules reversible for some n",
            self.reversible_rules().len(),
            self.rules.len()
        );
        out
    }
}

/// Runs the brute-force check for all 256 rules, both boundary conditions and
/// every `n` in `n_min..=n_max`. Cells are evaluated in parallel.
pub fn scan_all_rules(n_min: usize, n_max: usize) -> Result<ClassificationReport> {
    if !(SCAN_MIN_CELLS <= n_min && n_min <= n_max && n_max <= SCAN_MAX_CELLS) {
        return Err(Error::domain(format!(
            "scan range [{n_min}, {n_max}] must satisfy {SCAN_MIN_CELLS} <= n_min <= n_max <= {SCAN_MAX_CELLS}"
        )));
    }
    let cells: Vec<(Rule, usize, BoundaryCondition)> = Rule::all()
        .flat_map(|rule| {
            (n_min..=n_max)
                .flat_map(move |n| BoundaryCondition::ALL.into_iter().map(move |bc| (rule, n, bc)))
        })
        .collect();
    let verdicts = cells
        .into_par_iter()
        .map(|(rule, n, bc)| is_reversible_bruteforce(rule, n, bc))
        .collect::<Result<Vec<_>>>()?;

    let mut rules: BTreeMap<u8, Vec<ScanEntry>> = BTreeMap::new();
    for v in verdicts {
        rules.entry(v.rule.code()).or_default().push(ScanEntry {
            n: v.n,
            bc: v.bc,
            reversible: v.reversible,
            witness: v.witness,
        });
    }
    Ok(ClassificationReport { rules })
}

/// Closed-form collision pairs for the rules whose reversibility depends on
/// `n` modulo 2 or 3:
///
/// | rule | bc       | n            | pair                                  |
/// |------|----------|--------------|---------------------------------------|
/// | 90   | fixed    | odd          | `0^n`, `(10)^k 1`                     |
/// | 150  | periodic | `0 mod 3`    | `0^n`, `(110)^k`                      |
/// | 150  | fixed    | `2 mod 3`    | `0^n`, `(110)^k 11`                   |
/// | 166  | periodic | even         | `(10)^k`, `(01)^k`                    |
///
/// The pair is checked against [`step`] before it is returned.
pub fn proof_family_witness(
    rule: Rule,
    bc: BoundaryCondition,
    n: usize,
) -> Result<CollisionWitness> {
    use BoundaryCondition::*;
    let repeat = |pattern: &[u8], times: usize, tail: &[u8]| -> Vec<u8> {
        let mut v: Vec<u8> = pattern.iter().copied().cycle().take(pattern.len() * times).collect();
        v.extend_from_slice(tail);
        v
    };
    let (first, second) = match (rule.code(), bc) {
        (90, Fixed) if n % 2 == 1 => (vec![0; n], repeat(&[1, 0], n / 2, &[1])),
        (150, Periodic) if n % 3 == 0 && n > 0 => (vec![0; n], repeat(&[1, 1, 0], n / 3, &[])),
        (150, Fixed) if n % 3 == 2 => (vec![0; n], repeat(&[1, 1, 0], n / 3, &[1, 1])),
        (166, Periodic) if n % 2 == 0 && n > 0 => {
            (repeat(&[1, 0], n / 2, &[]), repeat(&[0, 1], n / 2, &[]))
        }
        _ => {
            return Err(Error::Unsupported(format!(
                "no parametric collision family for rule {rule} at {bc} boundary with n = {n}"
            )))
        }
    };
    let first = Configuration::from_values(&first)?;
    let second = Configuration::from_values(&second)?;
    let image = step(&first, rule, bc);
    let witness = CollisionWitness {
        first,
        second,
        image,
    };
    if !witness.is_valid(rule, bc) {
        return Err(Error::Invariant(format!(
            "collision family for rule {rule} ({bc}, n = {n}) failed validation"
        )));
    }
    Ok(witness)
}
