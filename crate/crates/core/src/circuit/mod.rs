//! Circuit intermediate representation shared by every pass.
//!
//! A [`Circuit`] is an ordered gate list over a fixed number of qubits. Gate
//! qubit lists put controls before targets. Basis states are little-endian:
//! qubit 0 is the least significant bit of a basis index.

pub mod json;
mod unitary;

use std::fmt;

use thiserror::Error;

use crate::linalg::ComplexMatrix;

pub use json::{from_json, to_json, GateRecord};
pub use unitary::{gate_unitary, LocalOp};

#[derive(Debug, Error)]
pub enum CircuitError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported format version {0}")]
    Version(u32),
    #[error("gate {index}: unknown gate name `{name}`")]
    UnknownGate { index: usize, name: String },
    #[error("gate {index}: {message}")]
    Arity { index: usize, message: String },
    #[error("gate {index}: {message}")]
    Malformed { index: usize, message: String },
}

impl CircuitError {
    pub(crate) fn from_serde(e: serde_json::Error) -> Self {
        CircuitError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

/// Tolerance used when checking that a `U` gate matrix is unitary.
pub const UNITARY_TOL: f64 = 1e-10;

/// What a gate does, including its angle or matrix payload.
#[derive(Clone, Debug, PartialEq)]
pub enum GateKind {
    X,
    H,
    T,
    Tdg,
    Rz(f64),
    P(f64),
    Ry(f64),
    U(ComplexMatrix),
    Cnot,
    Swap,
    Ccx,
    Cswap,
    /// One control, any number of X targets, applied as a single step.
    Fanout,
    /// Polarized controls (true = closed, false = open), any number of X targets.
    McxFanout(Vec<bool>),
    Measure,
}

/// Payload-free tag of a [`GateKind`]; used for exclusion sets and names.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateName {
    X,
    H,
    T,
    Tdg,
    Rz,
    P,
    Ry,
    U,
    Cnot,
    Swap,
    Ccx,
    Cswap,
    Fanout,
    McxFanout,
    Measure,
}

impl GateName {
    pub const ALL: [GateName; 15] = [
        GateName::X,
        GateName::H,
        GateName::T,
        GateName::Tdg,
        GateName::Rz,
        GateName::P,
        GateName::Ry,
        GateName::U,
        GateName::Cnot,
        GateName::Swap,
        GateName::Ccx,
        GateName::Cswap,
        GateName::Fanout,
        GateName::McxFanout,
        GateName::Measure,
    ];

    /// Name used in the JSON format.
    pub fn as_str(self) -> &'static str {
        match self {
            GateName::X => "x",
            GateName::H => "h",
            GateName::T => "t",
            GateName::Tdg => "tdg",
            GateName::Rz => "rz",
            GateName::P => "p",
            GateName::Ry => "ry",
            GateName::U => "u",
            GateName::Cnot => "cx",
            GateName::Swap => "swap",
            GateName::Ccx => "ccx",
            GateName::Cswap => "cswap",
            GateName::Fanout => "fanout",
            GateName::McxFanout => "mcx_fanout",
            GateName::Measure => "measure",
        }
    }

    pub fn parse(name: &str) -> Option<GateName> {
        GateName::ALL.into_iter().find(|g| g.as_str() == name)
    }

    pub fn is_single_qubit(self) -> bool {
        matches!(
            self,
            GateName::X
                | GateName::H
                | GateName::T
                | GateName::Tdg
                | GateName::Rz
                | GateName::P
                | GateName::Ry
                | GateName::U
        )
    }

    /// Diagonal in the computational basis.
    pub fn is_diagonal(self) -> bool {
        matches!(
            self,
            GateName::T | GateName::Tdg | GateName::Rz | GateName::P
        )
    }
}

impl fmt::Display for GateName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl GateKind {
    pub fn name(&self) -> GateName {
        match self {
            GateKind::X => GateName::X,
            GateKind::H => GateName::H,
            GateKind::T => GateName::T,
            GateKind::Tdg => GateName::Tdg,
            GateKind::Rz(_) => GateName::Rz,
            GateKind::P(_) => GateName::P,
            GateKind::Ry(_) => GateName::Ry,
            GateKind::U(_) => GateName::U,
            GateKind::Cnot => GateName::Cnot,
            GateKind::Swap => GateName::Swap,
            GateKind::Ccx => GateName::Ccx,
            GateKind::Cswap => GateName::Cswap,
            GateKind::Fanout => GateName::Fanout,
            GateKind::McxFanout(_) => GateName::McxFanout,
            GateKind::Measure => GateName::Measure,
        }
    }

    /// Angle parameters, in radians.
    pub fn params(&self) -> Vec<f64> {
        match self {
            GateKind::Rz(a) | GateKind::P(a) | GateKind::Ry(a) => vec![*a],
            _ => Vec::new(),
        }
    }

    /// The 2×2 matrix of a single-qubit kind.
    pub fn matrix_2x2(&self) -> Option<ComplexMatrix> {
        use crate::linalg::mat2;
        Some(match self {
            GateKind::X => mat2::x(),
            GateKind::H => mat2::h(),
            GateKind::T => mat2::t(),
            GateKind::Tdg => mat2::tdg(),
            GateKind::Rz(a) => mat2::rz(*a),
            GateKind::P(a) => mat2::p(*a),
            GateKind::Ry(a) => mat2::ry(*a),
            GateKind::U(m) => m.clone(),
            _ => return None,
        })
    }
}

/// A gate application. Qubits are ordered controls-first.
#[derive(Clone, Debug, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
}

impl Gate {
    pub fn new(kind: GateKind, qubits: Vec<usize>) -> Self {
        Self { kind, qubits }
    }

    pub fn x(q: usize) -> Self {
        Self::new(GateKind::X, vec![q])
    }

    pub fn h(q: usize) -> Self {
        Self::new(GateKind::H, vec![q])
    }

    pub fn t(q: usize) -> Self {
        Self::new(GateKind::T, vec![q])
    }

    pub fn tdg(q: usize) -> Self {
        Self::new(GateKind::Tdg, vec![q])
    }

    pub fn rz(q: usize, theta: f64) -> Self {
        Self::new(GateKind::Rz(theta), vec![q])
    }

    pub fn p(q: usize, phi: f64) -> Self {
        Self::new(GateKind::P(phi), vec![q])
    }

    pub fn ry(q: usize, theta: f64) -> Self {
        Self::new(GateKind::Ry(theta), vec![q])
    }

    pub fn u(q: usize, matrix: ComplexMatrix) -> Self {
        Self::new(GateKind::U(matrix), vec![q])
    }

    pub fn cx(control: usize, target: usize) -> Self {
        Self::new(GateKind::Cnot, vec![control, target])
    }

    pub fn swap(a: usize, b: usize) -> Self {
        Self::new(GateKind::Swap, vec![a, b])
    }

    pub fn ccx(c0: usize, c1: usize, target: usize) -> Self {
        Self::new(GateKind::Ccx, vec![c0, c1, target])
    }

    pub fn cswap(control: usize, a: usize, b: usize) -> Self {
        Self::new(GateKind::Cswap, vec![control, a, b])
    }

    pub fn fanout(control: usize, targets: &[usize]) -> Self {
        let mut qubits = Vec::with_capacity(targets.len() + 1);
        qubits.push(control);
        qubits.extend_from_slice(targets);
        Self::new(GateKind::Fanout, qubits)
    }

    /// Fan-out that degenerates to a CNOT for a single target.
    pub fn cx_or_fanout(control: usize, targets: &[usize]) -> Self {
        match targets {
            [t] => Self::cx(control, *t),
            _ => Self::fanout(control, targets),
        }
    }

    /// `controls` pairs each control qubit with its polarity (true = activates on |1⟩).
    pub fn mcx_fanout(controls: &[(usize, bool)], targets: &[usize]) -> Self {
        let polarities = controls.iter().map(|&(_, p)| p).collect();
        let qubits = controls
            .iter()
            .map(|&(q, _)| q)
            .chain(targets.iter().copied())
            .collect();
        Self::new(GateKind::McxFanout(polarities), qubits)
    }

    pub fn measure(q: usize) -> Self {
        Self::new(GateKind::Measure, vec![q])
    }

    pub fn name(&self) -> GateName {
        self.kind.name()
    }

    /// Number of leading qubits that act as controls.
    pub fn num_controls(&self) -> usize {
        match &self.kind {
            GateKind::Cnot | GateKind::Fanout | GateKind::Cswap => 1,
            GateKind::Ccx => 2,
            GateKind::McxFanout(p) => p.len(),
            _ => 0,
        }
    }

    pub fn controls(&self) -> &[usize] {
        &self.qubits[..self.num_controls().min(self.qubits.len())]
    }

    pub fn targets(&self) -> &[usize] {
        &self.qubits[self.num_controls().min(self.qubits.len())..]
    }

    /// Gates whose non-target qubits are pure controls (X-type or swap targets).
    pub fn is_controlled(&self) -> bool {
        self.num_controls() > 0
    }

    pub fn is_single_qubit(&self) -> bool {
        self.name().is_single_qubit()
    }

    pub fn acts_on(&self, q: usize) -> bool {
        self.qubits.contains(&q)
    }

    pub fn shares_qubit(&self, other: &Gate) -> bool {
        self.qubits.iter().any(|q| other.qubits.contains(q))
    }

    /// Copy of this gate with every qubit index mapped through `f`.
    pub fn map_qubits(&self, f: impl Fn(usize) -> usize) -> Gate {
        Gate {
            kind: self.kind.clone(),
            qubits: self.qubits.iter().map(|&q| f(q)).collect(),
        }
    }

    /// Checks arity and payload against the kind, independent of circuit width.
    pub fn check_shape(&self) -> Result<(), String> {
        let n = self.qubits.len();
        let expected = match &self.kind {
            GateKind::Cnot | GateKind::Swap => Some(2),
            GateKind::Ccx | GateKind::Cswap => Some(3),
            GateKind::Fanout | GateKind::McxFanout(_) => None,
            _ => Some(1),
        };
        if let Some(e) = expected {
            if n != e {
                return Err(format!(
                    "arity mismatch: `{}` expects {e} qubits, got {n}",
                    self.name()
                ));
            }
        }
        match &self.kind {
            GateKind::Fanout if n < 2 => {
                return Err("fanout needs one control and at least one target".into())
            }
            GateKind::McxFanout(p) if p.is_empty() => {
                return Err("mcx_fanout needs at least one control".into())
            }
            GateKind::McxFanout(p) if n <= p.len() => {
                return Err("mcx_fanout needs at least one target".into())
            }
            GateKind::U(m) if m.rows() != 2 || m.cols() != 2 => {
                return Err("u matrix must be 2x2".into())
            }
            GateKind::U(m) if !m.is_unitary(UNITARY_TOL) => {
                return Err("u matrix is not unitary".into())
            }
            GateKind::Rz(a) | GateKind::P(a) | GateKind::Ry(a) if !a.is_finite() => {
                return Err("angle is not finite".into())
            }
            _ => {}
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())?;
        let params = self.kind.params();
        if !params.is_empty() {
            write!(f, "({})", params[0])?;
        }
        write!(f, " {:?}", self.qubits)
    }
}

/// One validation finding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub gate_index: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gate {}: {}", self.gate_index, self.message)
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Circuit {
    pub num_qubits: usize,
    pub gates: Vec<Gate>,
    pub label: String,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Self {
            num_qubits,
            gates: Vec::new(),
            label: String::new(),
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn from_gates(num_qubits: usize, gates: Vec<Gate>) -> Self {
        Self {
            num_qubits,
            gates,
            label: String::new(),
        }
    }

    pub fn push(&mut self, gate: Gate) -> &mut Self {
        self.gates.push(gate);
        self
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> &mut Self {
        self.gates.extend(gates);
        self
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn has_measurement(&self) -> bool {
        self.gates.iter().any(|g| g.kind == GateKind::Measure)
    }

    /// Relabels qubit `q` as `q + offset` in a circuit of width `num_qubits`.
    pub fn shifted(&self, offset: usize, num_qubits: usize) -> Circuit {
        Circuit {
            num_qubits,
            gates: self
                .gates
                .iter()
                .map(|g| g.map_qubits(|q| q + offset))
                .collect(),
            label: self.label.clone(),
        }
    }

    /// Every violated invariant, tagged with its gate index. Empty means valid.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        for (i, g) in self.gates.iter().enumerate() {
            let mut push = |message: String| {
                out.push(Diagnostic {
                    gate_index: i,
                    message,
                })
            };
            if let Err(e) = g.check_shape() {
                push(e);
            }
            for (j, &q) in g.qubits.iter().enumerate() {
                if q >= self.num_qubits {
                    push(format!(
                        "qubit out of range: {q} >= num_qubits {}",
                        self.num_qubits
                    ));
                }
                if g.qubits[..j].contains(&q) {
                    push(format!("duplicate qubit in gate {i}"));
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }
}
