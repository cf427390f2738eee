//! JSON form of a circuit:
//!
//! ```text
//! {"n": 3, "gates": [
//!   {"kind": "swap", "targets": [0, 1]},
//!   {"kind": "mcx", "targets": [2], "controls": [{"wire": 0, "positive": false}]}
//! ]}
//! ```

use serde::{Deserialize, Serialize};

use super::{Circuit, Control, Gate};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CircuitRecord {
    n: usize,
    gates: Vec<GateRecord>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GateRecord {
    kind: String,
    targets: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    controls: Option<Vec<ControlRecord>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ControlRecord {
    wire: usize,
    positive: bool,
}

impl From<&Gate> for GateRecord {
    fn from(g: &Gate) -> Self {
        let controls = match g {
            Gate::Mcx { controls, .. } => Some(
                controls
                    .iter()
                    .map(|c| ControlRecord {
                        wire: c.wire,
                        positive: c.positive,
                    })
                    .collect(),
            ),
            _ => None,
        };
        GateRecord {
            kind: g.kind().to_string(),
            targets: g.targets(),
            controls,
        }
    }
}

impl GateRecord {
    fn into_gate(self, at: &str) -> Result<Gate> {
        let controls = self.controls.unwrap_or_default();
        let arity = |want: usize| -> Result<()> {
            if self.targets.len() != want {
                return Err(Error::parse(
                    format!("{at}.targets"),
                    format!("{} gate takes {want} target(s), got {}", self.kind, self.targets.len()),
                ));
            }
            if !controls.is_empty() {
                return Err(Error::parse(
                    format!("{at}.controls"),
                    format!("{} gate takes no controls", self.kind),
                ));
            }
            Ok(())
        };
        match self.kind.as_str() {
            "x" => {
                arity(1)?;
                Ok(Gate::X(self.targets[0]))
            }
            "swap" => {
                arity(2)?;
                Ok(Gate::Swap(self.targets[0], self.targets[1]))
            }
            "mcx" => Ok(Gate::Mcx {
                controls: controls
                    .into_iter()
                    .map(|c| Control {
                        wire: c.wire,
                        positive: c.positive,
                    })
                    .collect(),
                targets: self.targets,
            }),
            other => Err(Error::parse(
                format!("{at}.kind"),
                format!("unknown gate kind {other:?} (expected x, swap or mcx)"),
            )),
        }
    }
}

impl Circuit {
    pub fn to_json(&self) -> String {
        let record = CircuitRecord {
            n: self.n,
            gates: self.gates.iter().map(GateRecord::from).collect(),
        };
        serde_json::to_string_pretty(&record).expect("circuit serialization cannot fail")
    }

    /// Parses and validates a circuit. Errors name the offending location,
    /// either a line/column or a path such as `gates[3].targets`.
    pub fn from_json(text: &str) -> Result<Circuit> {
        let record: CircuitRecord = serde_json::from_str(text).map_err(|e| {
            Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string())
        })?;
        let mut circuit =
            Circuit::new(record.n).map_err(|e| Error::parse("n", e.to_string()))?;
        for (i, g) in record.gates.into_iter().enumerate() {
            let at = format!("gates[{i}]");
            let gate = g.into_gate(&at)?;
            circuit
                .push(gate)
                .map_err(|e| Error::parse(at.clone(), e.to_string()))?;
        }
        Ok(circuit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let c = Circuit::from_gates(
            4,
            vec![
                Gate::X(3),
                Gate::Swap(0, 1),
                Gate::mcx(vec![Control::neg(0), Control::pos(2)], vec![1, 3]).unwrap(),
            ],
        )
        .unwrap();
        let text = c.to_json();
        assert_eq!(Circuit::from_json(&text).unwrap(), c);
    }

    #[test]
    fn controls_omitted_for_x_and_swap() {
        let c = Circuit::from_gates(2, vec![Gate::X(0), Gate::Swap(0, 1)]).unwrap();
        assert!(!c.to_json().contains("controls"));
    }

    #[test]
    fn empty_gate_list() {
        let c = Circuit::from_json(r#"{"n": 3, "gates": []}"#).unwrap();
        assert_eq!(c.n(), 3);
        assert!(c.is_empty());
    }

    #[test]
    fn rejects_bad_input() {
        let err = Circuit::from_json(r#"{"n": 2, "gates": [{"kind": "HADAMARD", "targets": [0]}]}"#)
            .unwrap_err();
        match err {
            Error::Parse { location, .. } => assert_eq!(location, "gates[0].kind"),
            other => panic!("unexpected {other:?}"),
        }
        let err = Circuit::from_json(r#"{"n": 2, "gates": [{"kind": "x", "targets": [5]}]}"#)
            .unwrap_err();
        assert!(matches!(err, Error::Parse { ref location, .. } if location == "gates[0]"));
        let err = Circuit::from_json("{\"n\": 2,\n \"gates\": [").unwrap_err();
        assert!(matches!(err, Error::Parse { ref location, .. } if location.starts_with("line 2")));
        assert!(Circuit::from_json(
            r#"{"n": 2, "gates": [{"kind": "mcx", "targets": [1], "controls": []}]}"#
        )
        .is_err());
        assert!(Circuit::from_json(
            r#"{"n": 2, "gates": [{"kind": "x", "targets": [1], "controls": [{"wire": 0, "positive": true}]}]}"#
        )
        .is_err());
        assert!(Circuit::from_json(r#"{"n": 0, "gates": []}"#).is_err());
    }
}
