//! Circuit JSON v1.
//!
//! ```text
//! {"version":1,"num_qubits":N,"label":"...","gates":[
//!   {"name":"fanout","qubits":[0,1,2,3]},
//!   {"name":"rz","qubits":[2],"params":[0.5]},
//!   {"name":"mcx_fanout","qubits":[0,1],"polarities":[0,1],"targets":[3,4]},
//!   {"name":"u","qubits":[1],"matrix":[[re,im],[re,im],[re,im],[re,im]]}]}
//! ```
//!
//! For `mcx_fanout`, `qubits` lists only the controls and `targets` the targets.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::CircuitError;
use super::{Circuit, Gate, GateKind, GateName};
use crate::linalg::ComplexMatrix;

pub const FORMAT_VERSION: u32 = 1;

/// Wire form of one gate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateRecord {
    pub name: String,
    pub qubits: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polarities: Option<Vec<u8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub targets: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<[f64; 2]>>,
}

#[derive(Serialize, Deserialize)]
struct CircuitDoc {
    version: u32,
    num_qubits: usize,
    #[serde(default)]
    label: String,
    gates: Vec<GateRecord>,
}

impl GateRecord {
    pub fn from_gate(gate: &Gate) -> GateRecord {
        let mut rec = GateRecord {
            name: gate.name().as_str().to_string(),
            qubits: gate.qubits.clone(),
            params: gate.kind.params(),
            polarities: None,
            targets: None,
            matrix: None,
        };
        match &gate.kind {
            GateKind::McxFanout(pol) => {
                rec.qubits = gate.controls().to_vec();
                rec.polarities = Some(pol.iter().map(|&p| p as u8).collect());
                rec.targets = Some(gate.targets().to_vec());
            }
            GateKind::U(m) => {
                rec.matrix = Some(m.entries().iter().map(|v| [v.re, v.im]).collect());
            }
            _ => {}
        }
        rec
    }

    /// Converts to a gate; `index` is used for error messages only.
    pub fn to_gate(&self, index: usize) -> Result<Gate, CircuitError> {
        let name = GateName::parse(&self.name).ok_or_else(|| CircuitError::UnknownGate {
            index,
            name: self.name.clone(),
        })?;
        let malformed = |message: &str| CircuitError::Malformed {
            index,
            message: message.to_string(),
        };
        let one_param = || -> Result<f64, CircuitError> {
            match self.params.as_slice() {
                [a] => Ok(*a),
                _ => Err(malformed("expected exactly one angle in `params`")),
            }
        };
        if name != GateName::McxFanout && (self.polarities.is_some() || self.targets.is_some()) {
            return Err(malformed("`polarities`/`targets` only apply to mcx_fanout"));
        }
        if name != GateName::U && self.matrix.is_some() {
            return Err(malformed("`matrix` only applies to u"));
        }
        if !matches!(name, GateName::Rz | GateName::P | GateName::Ry) && !self.params.is_empty() {
            return Err(malformed("this gate takes no `params`"));
        }
        let kind = match name {
            GateName::X => GateKind::X,
            GateName::H => GateKind::H,
            GateName::T => GateKind::T,
            GateName::Tdg => GateKind::Tdg,
            GateName::Rz => GateKind::Rz(one_param()?),
            GateName::P => GateKind::P(one_param()?),
            GateName::Ry => GateKind::Ry(one_param()?),
            GateName::U => {
                let m = self
                    .matrix
                    .as_ref()
                    .ok_or_else(|| malformed("u requires `matrix`"))?;
                if m.len() != 4 {
                    return Err(malformed("u `matrix` must have 4 entries"));
                }
                let data = m.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
                GateKind::U(ComplexMatrix::from_vec(2, 2, data).expect("4 entries"))
            }
            GateName::Cnot => GateKind::Cnot,
            GateName::Swap => GateKind::Swap,
            GateName::Ccx => GateKind::Ccx,
            GateName::Cswap => GateKind::Cswap,
            GateName::Fanout => GateKind::Fanout,
            GateName::McxFanout => {
                let pol = self
                    .polarities
                    .as_ref()
                    .ok_or_else(|| malformed("mcx_fanout requires `polarities`"))?;
                if pol.len() != self.qubits.len() {
                    return Err(malformed("one polarity per control qubit required"));
                }
                if pol.iter().any(|&p| p > 1) {
                    return Err(malformed("polarities must be 0 or 1"));
                }
                if self.targets.as_ref().is_none_or(|t| t.is_empty()) {
                    return Err(malformed("mcx_fanout requires non-empty `targets`"));
                }
                GateKind::McxFanout(pol.iter().map(|&p| p == 1).collect())
            }
            GateName::Measure => GateKind::Measure,
        };
        let mut qubits = self.qubits.clone();
        if let Some(t) = &self.targets {
            qubits.extend_from_slice(t);
        }
        let gate = Gate { kind, qubits };
        gate.check_shape().map_err(|message| {
            if message.starts_with("arity") {
                CircuitError::Arity { index, message }
            } else {
                CircuitError::Malformed { index, message }
            }
        })?;
        Ok(gate)
    }
}

pub fn to_json(circuit: &Circuit) -> String {
    let doc = CircuitDoc {
        version: FORMAT_VERSION,
        num_qubits: circuit.num_qubits,
        label: circuit.label.clone(),
        gates: circuit.gates.iter().map(GateRecord::from_gate).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("circuit serialization cannot fail")
}

pub fn from_json(text: &str) -> Result<Circuit, CircuitError> {
    let doc: CircuitDoc = serde_json::from_str(text).map_err(CircuitError::from_serde)?;
    if doc.version != FORMAT_VERSION {
        return Err(CircuitError::Version(doc.version));
    }
    let gates = doc
        .gates
        .iter()
        .enumerate()
        .map(|(i, r)| r.to_gate(i))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Circuit {
        num_qubits: doc.num_qubits,
        gates,
        label: doc.label,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn fanout_record_format() {
        let rec = GateRecord::from_gate(&Gate::fanout(0, &[1, 2, 3]));
        assert_eq!(
            serde_json::to_string(&rec).unwrap(),
            r#"{"name":"fanout","qubits":[0,1,2,3]}"#
        );
    }

    #[test]
    fn cx_with_one_qubit_is_arity_error() {
        let text =
            r#"{"version":1,"num_qubits":2,"label":"","gates":[{"name":"cx","qubits":[0]}]}"#;
        assert!(matches!(
            from_json(text),
            Err(CircuitError::Arity { index: 0, .. })
        ));
    }

    #[test]
    fn unknown_gate_is_rejected() {
        let text = r#"{"version":1,"num_qubits":1,"gates":[{"name":"zz","qubits":[0]}]}"#;
        assert!(matches!(
            from_json(text),
            Err(CircuitError::UnknownGate { index: 0, .. })
        ));
    }

    #[test]
    fn syntax_error_reports_position() {
        let text = "{\n \"version\": 1,\n \"num_qubits\": 2 \"gates\": []}";
        match from_json(text) {
            Err(CircuitError::Parse { line, column, .. }) => {
                assert_eq!(line, 3);
                assert!(column > 0);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn wrong_version_rejected() {
        let text = r#"{"version":2,"num_qubits":1,"gates":[]}"#;
        assert!(matches!(from_json(text), Err(CircuitError::Version(2))));
    }

    #[test]
    fn round_trip_all_kinds() {
        let u = crate::linalg::mat2::ry(0.123456789012345);
        let c = Circuit::from_gates(
            5,
            vec![
                Gate::x(0),
                Gate::h(1),
                Gate::t(2),
                Gate::tdg(3),
                Gate::rz(0, PI / 7.0),
                Gate::p(1, -1.0 / 3.0),
                Gate::ry(2, 1e-17),
                Gate::u(3, u),
                Gate::cx(0, 1),
                Gate::swap(1, 2),
                Gate::ccx(0, 1, 2),
                Gate::cswap(0, 3, 4),
                Gate::fanout(4, &[0, 1, 2]),
                Gate::mcx_fanout(&[(0, false), (1, true)], &[2, 4]),
                Gate::measure(0),
            ],
        )
        .with_label("all kinds");
        let back = from_json(&to_json(&c)).unwrap();
        assert_eq!(back, c);
    }
}
