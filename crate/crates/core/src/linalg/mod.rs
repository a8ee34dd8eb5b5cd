//! Dense complex linear algebra and the brute-force simulator used as the
//! correctness oracle for every synthesis pass.

mod matrix;
pub mod random;
mod state;

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::circuit::{Circuit, Gate, GateKind, LocalOp};

pub use matrix::{mat2, ComplexMatrix};
pub use state::{apply_gate, fidelity, sample, StateVector};

/// Largest register for which a dense unitary is built (4096 × 4096).
pub const MAX_UNITARY_QUBITS: usize = 12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("expected {expected} entries, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("measurement has no unitary")]
    Measurement,
    #[error("{0} qubits exceeds the dense-unitary limit of {MAX_UNITARY_QUBITS}")]
    TooManyQubits(usize),
    #[error("qubit out of range: {qubit} >= num_qubits {num_qubits}")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },
    #[error("duplicate qubit {0} within one gate")]
    DuplicateQubit(usize),
    #[error("malformed gate: {0}")]
    MalformedGate(String),
    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Checks that `gate` is well formed and fits in `num_qubits`.
pub fn check_gate_qubits(gate: &Gate, num_qubits: usize) -> Result<(), LinalgError> {
    for (i, &q) in gate.qubits.iter().enumerate() {
        if q >= num_qubits {
            return Err(LinalgError::QubitOutOfRange {
                qubit: q,
                num_qubits,
            });
        }
        if gate.qubits[..i].contains(&q) {
            return Err(LinalgError::DuplicateQubit(q));
        }
    }
    gate.check_shape().map_err(LinalgError::MalformedGate)
}

/// Ordered product of gate unitaries; gate 0 acts first.
pub fn circuit_unitary(circuit: &Circuit) -> Result<ComplexMatrix, LinalgError> {
    let n = circuit.num_qubits;
    if n > MAX_UNITARY_QUBITS {
        return Err(LinalgError::TooManyQubits(n));
    }
    let mut ops = Vec::with_capacity(circuit.gates.len());
    for g in &circuit.gates {
        if g.kind == GateKind::Measure {
            return Err(LinalgError::Measurement);
        }
        check_gate_qubits(g, n)?;
        ops.push((LocalOp::for_gate(g)?, g.qubits.as_slice()));
    }
    let dim = 1usize << n;
    let columns: Vec<Vec<Complex64>> = (0..dim)
        .into_par_iter()
        .map(|col| {
            let mut v = vec![Complex64::new(0.0, 0.0); dim];
            v[col] = Complex64::new(1.0, 0.0);
            for (op, qubits) in &ops {
                op.apply(qubits, &mut v);
            }
            v
        })
        .collect();
    let mut out = ComplexMatrix::zeros(dim, dim);
    for (col, v) in columns.iter().enumerate() {
        out.set_column(col, v);
    }
    Ok(out)
}

/// Max-entry distance `|m1 − e^{iφ} m2|` with φ aligning the largest entry of `m2`.
pub fn phase_distance(m1: &ComplexMatrix, m2: &ComplexMatrix) -> Result<f64, LinalgError> {
    m1.check_same_shape(m2)?;
    if m2.entries().is_empty() {
        return Ok(0.0);
    }
    let k = m2.argmax_abs();
    let a = m1.entries()[k];
    let b = m2.entries()[k];
    let phase = if a.norm() == 0.0 || b.norm() == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        let r = a / b;
        r / r.norm()
    };
    Ok(m1
        .entries()
        .iter()
        .zip(m2.entries())
        .map(|(x, y)| (x - phase * y).norm())
        .fold(0.0, f64::max))
}

/// Equality up to a global phase, within `tol` on every entry.
pub fn equiv_global_phase(
    m1: &ComplexMatrix,
    m2: &ComplexMatrix,
    tol: f64,
) -> Result<bool, LinalgError> {
    Ok(phase_distance(m1, m2)? <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn empty_circuit_is_identity() {
        let u = circuit_unitary(&Circuit::new(2)).unwrap();
        assert_eq!(u, ComplexMatrix::identity(4));
    }

    #[test]
    fn x_then_fanout_maps_zero_to_all_ones() {
        let c = Circuit::from_gates(3, vec![Gate::x(0), Gate::fanout(0, &[1, 2])]);
        let u = circuit_unitary(&c).unwrap();
        assert_eq!(u[(0b111, 0)], Complex64::new(1.0, 0.0));
        let mut s = StateVector::zero(3);
        for g in &c.gates {
            s.apply(g).unwrap();
        }
        assert!((s.amplitudes()[0b111] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn global_phase_equivalence() {
        let m = mat2::ry(0.4).kron(&mat2::h());
        let shifted = m.scale(Complex64::from_polar(1.0, PI / 7.0));
        assert!(equiv_global_phase(&m, &m, 1e-12).unwrap());
        assert!(equiv_global_phase(&m, &shifted, 1e-12).unwrap());
        assert!(equiv_global_phase(&shifted, &m, 1e-12).unwrap());
    }

    #[test]
    fn cnot_is_not_swap() {
        let cx = circuit_unitary(&Circuit::from_gates(2, vec![Gate::cx(0, 1)])).unwrap();
        let sw = circuit_unitary(&Circuit::from_gates(2, vec![Gate::swap(0, 1)])).unwrap();
        assert!(!equiv_global_phase(&cx, &sw, 1e-6).unwrap());
    }

    #[test]
    fn measurement_and_size_guards() {
        let c = Circuit::from_gates(1, vec![Gate::measure(0)]);
        assert_eq!(circuit_unitary(&c), Err(LinalgError::Measurement));
        assert_eq!(
            circuit_unitary(&Circuit::new(13)),
            Err(LinalgError::TooManyQubits(13))
        );
    }

    #[test]
    fn dimension_mismatch_is_error() {
        let a = ComplexMatrix::identity(2);
        let b = ComplexMatrix::identity(4);
        assert!(equiv_global_phase(&a, &b, 1e-9).is_err());
    }
}
