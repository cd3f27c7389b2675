//! JSON circuit files.
//!
//! ```json
//! {
//!   "qudit_dim": 2,
//!   "wires": 3,
//!   "gates": [{"name": "x", "wires": 1, "matrix": [[0,0],[1,0],[1,0],[0,0]]}],
//!   "ops": [{"gate": "cnot", "lens": [0, 1]}, {"gate": "x", "lens": [2]}]
//! }
//! ```
//!
//! `qudit_dim` defaults to 2 and `gates` to empty. A custom gate's `matrix`
//! lists `[re, im]` pairs column by column, columns indexed by the input
//! basis tuple with the first wire most significant.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::circuits::Circuit;
use crate::dpstate::C64;
use crate::error::{Error, Result};
use crate::gates::Gate;
use crate::lens::Lens;

fn default_dim() -> usize {
    2
}

fn is_default_dim(q: &usize) -> bool {
    *q == 2
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitFile {
    #[serde(default = "default_dim", skip_serializing_if = "is_default_dim")]
    pub qudit_dim: usize,
    pub wires: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gates: Vec<GateDef>,
    pub ops: Vec<OpDef>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateDef {
    pub name: String,
    pub wires: usize,
    pub matrix: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpDef {
    pub gate: String,
    pub lens: Vec<usize>,
}

impl CircuitFile {
    pub fn from_circuit(c: &Circuit) -> Self {
        let gates = c
            .custom_gates()
            .iter()
            .map(|(name, g)| GateDef {
                name: name.clone(),
                wires: g.m(),
                matrix: g.to_column_major().iter().map(|a| [a.re, a.im]).collect(),
            })
            .collect();
        let ops = c
            .steps()
            .iter()
            .map(|s| OpDef {
                gate: s.gate.clone(),
                lens: s.lens.indices().to_vec(),
            })
            .collect();
        CircuitFile {
            qudit_dim: c.q(),
            wires: c.n(),
            gates,
            ops,
        }
    }

    /// Validates lenses and gate names and builds the circuit.
    pub fn to_circuit(&self) -> Result<Circuit> {
        if self.qudit_dim < 2 {
            return Err(Error::Parse {
                location: "qudit_dim".into(),
                message: format!("must be at least 2, got {}", self.qudit_dim),
            });
        }
        let mut c = Circuit::new(self.wires, self.qudit_dim);
        for (k, def) in self.gates.iter().enumerate() {
            let entries: Vec<C64> = def
                .matrix
                .iter()
                .map(|[re, im]| C64::new(*re, *im))
                .collect();
            Gate::from_column_major(def.wires, def.wires, self.qudit_dim, &entries)
                .and_then(|g| c.define_gate(&def.name, g))
                .map_err(|e| e.at(format!("gates[{k}] ({})", def.name)))?;
        }
        for (k, op) in self.ops.iter().enumerate() {
            let lens = Lens::new(self.wires, op.lens.clone())
                .map_err(|e| e.at(format!("ops[{k}].lens")))?;
            c.push(lens, &op.gate)
                .map_err(|e| e.at(format!("ops[{k}] ({})", op.gate)))?;
        }
        Ok(c)
    }
}

pub fn parse_circuit_str(text: &str) -> Result<Circuit> {
    let file: CircuitFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        location: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    file.to_circuit()
}

pub fn parse_circuit(path: impl AsRef<Path>) -> Result<Circuit> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        location: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_circuit_str(&text)
}

/// Pretty JSON with one gate definition or op per line.
pub fn emit_circuit(c: &Circuit) -> String {
    fn list<T: Serialize>(key: &str, items: &[T]) -> String {
        let lines: Vec<String> = items
            .iter()
            .map(|x| {
                format!(
                    "    {}",
                    serde_json::to_string(x).expect("plain data serializes")
                )
            })
            .collect();
        if lines.is_empty() {
            format!("  \"{key}\": []")
        } else {
            format!("  \"{key}\": [\n{}\n  ]", lines.join(",\n"))
        }
    }
    let file = CircuitFile::from_circuit(c);
    let mut fields = Vec::new();
    if !is_default_dim(&file.qudit_dim) {
        fields.push(format!("  \"qudit_dim\": {}", file.qudit_dim));
    }
    fields.push(format!("  \"wires\": {}", file.wires));
    if !file.gates.is_empty() {
        fields.push(list("gates", &file.gates));
    }
    fields.push(list("ops", &file.ops));
    format!("{{\n{}\n}}", fields.join(",\n"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::{bit_flip_enc, ghz, rev_circuit, shor_code};
    use crate::dpstate::DPState;

    #[test]
    fn parses_bit_flip_encoder() {
        let c = parse_circuit_str(
            r#"{"wires":3,"ops":[{"gate":"cnot","lens":[0,1]},{"gate":"cnot","lens":[0,2]}]}"#,
        )
        .unwrap();
        assert_eq!(c, bit_flip_enc());
    }

    #[test]
    fn semantic_errors_carry_locations() {
        let err =
            parse_circuit_str(r#"{"wires":3,"ops":[{"gate":"cnot","lens":[0,0]}]}"#).unwrap_err();
        assert_eq!(err.root(), &Error::DuplicateIndex { index: 0 });
        assert!(err.to_string().contains("ops[0].lens"));

        let err =
            parse_circuit_str(r#"{"wires":3,"ops":[{"gate":"cnot","lens":[0]}]}"#).unwrap_err();
        assert_eq!(
            err.root(),
            &Error::ArityMismatch {
                expected: 2,
                found: 1
            }
        );

        let err = parse_circuit_str(r#"{"wires":2,"ops":[{"gate":"h","lens":[2]}]}"#).unwrap_err();
        assert_eq!(err.root(), &Error::IndexOutOfRange { index: 2, bound: 2 });

        let err =
            parse_circuit_str(r#"{"wires":2,"ops":[{"gate":"frob","lens":[1]}]}"#).unwrap_err();
        assert_eq!(err.root(), &Error::UnknownGate("frob".into()));
        assert!(err.to_string().contains("ops[0]"));
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let err = parse_circuit_str(
            "{\n  \"wires\": 3,\n  \"ops\": [\n    {\"gate\": \"cnot\" \"lens\": []}\n  ]\n}",
        )
        .unwrap_err();
        match err {
            Error::Parse { location, .. } => assert!(location.starts_with("line 4"), "{location}"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_circuit_str(r#"{"wires":1,"ops":[],"extra":1}"#).is_err());
    }

    #[test]
    fn custom_gates() {
        let text = r#"{
            "wires": 2,
            "gates": [{"name": "x", "wires": 1, "matrix": [[0,0],[1,0],[1,0],[0,0]]}],
            "ops": [{"gate": "x", "lens": [1]}]
        }"#;
        let c = parse_circuit_str(text).unwrap();
        let out = c.run(&DPState::qubits(&[0, 0]).unwrap()).unwrap();
        assert_eq!(out, DPState::qubits(&[0, 1]).unwrap());

        let bad = r#"{"wires":1,"gates":[{"name":"x","wires":1,"matrix":[[1,0]]}],"ops":[]}"#;
        let err = parse_circuit_str(bad).unwrap_err();
        assert!(matches!(err.root(), Error::ShapeMismatch(_)));
        assert!(err.to_string().contains("gates[0]"));
    }

    #[test]
    fn qutrit_circuit() {
        // Cyclic shift |k⟩ -> |k+1 mod 3⟩, columns listed in order.
        let text = r#"{
            "qudit_dim": 3,
            "wires": 2,
            "gates": [{"name": "shift", "wires": 1,
                       "matrix": [[0,0],[1,0],[0,0], [0,0],[0,0],[1,0], [1,0],[0,0],[0,0]]}],
            "ops": [{"gate": "shift", "lens": [0]}, {"gate": "identity", "lens": [1]}]
        }"#;
        let c = parse_circuit_str(text).unwrap();
        let k = DPState::ket(&vec![2, 1].into(), 3).unwrap();
        assert_eq!(
            c.run(&k).unwrap(),
            DPState::ket(&vec![0, 1].into(), 3).unwrap()
        );
        assert!(parse_circuit_str(&emit_circuit(&c)).unwrap() == c);
    }

    #[test]
    fn emit_round_trips_examples() {
        for c in [bit_flip_enc(), ghz(4), rev_circuit(5), shor_code()] {
            let text = emit_circuit(&c);
            assert_eq!(parse_circuit_str(&text).unwrap(), c);
        }
    }

    #[test]
    fn emitted_layout() {
        let text = emit_circuit(&rev_circuit(5));
        assert_eq!(
            text,
            "{\n  \"wires\": 5,\n  \"ops\": [\n    {\"gate\":\"swap\",\"lens\":[0,4]},\n    {\"gate\":\"swap\",\"lens\":[1,3]}\n  ]\n}"
        );
        assert_eq!(
            emit_circuit(&rev_circuit(1)),
            "{\n  \"wires\": 1,\n  \"ops\": []\n}"
        );
    }

    #[test]
    fn reads_from_disk() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ghz.json");
        std::fs::write(&path, emit_circuit(&ghz(2))).unwrap();
        assert_eq!(parse_circuit(&path).unwrap(), ghz(2));
        assert!(matches!(
            parse_circuit(dir.path().join("missing.json")),
            Err(Error::Parse { .. })
        ));
    }
}
