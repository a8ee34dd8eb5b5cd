//! Embedding of local gate actions into the full `2^n`-dimensional space.
//!
//! Each gate is described by a [`LocalOp`] over its own qubits, where local bit
//! `i` corresponds to `gate.qubits[i]`. This path is deliberately generic: it
//! knows nothing about the specialised statevector kernels in `linalg`.

use num_complex::Complex64;

use super::{Gate, GateKind};
use crate::linalg::{ComplexMatrix, LinalgError};

/// Action of a gate on its own qubits.
#[derive(Clone, Debug)]
pub enum LocalOp {
    /// Dense `2^k × 2^k` matrix.
    Dense(ComplexMatrix),
    /// Basis permutation: local index `l` maps to `perm[l]`.
    Permutation(Vec<usize>),
}

impl LocalOp {
    pub fn for_gate(gate: &Gate) -> Result<LocalOp, LinalgError> {
        let k = gate.qubits.len();
        if let Some(m) = gate.kind.matrix_2x2() {
            return Ok(LocalOp::Dense(m));
        }
        let perm = |f: &dyn Fn(usize) -> usize| -> LocalOp {
            LocalOp::Permutation((0..1usize << k).map(f).collect())
        };
        Ok(match &gate.kind {
            GateKind::Cnot => perm(&|l| if l & 1 == 1 { l ^ 0b10 } else { l }),
            GateKind::Swap => perm(&|l| ((l & 1) << 1) | ((l >> 1) & 1)),
            GateKind::Ccx => perm(&|l| if l & 0b11 == 0b11 { l ^ 0b100 } else { l }),
            GateKind::Cswap => perm(&|l| {
                if l & 1 == 1 {
                    let a = (l >> 1) & 1;
                    let b = (l >> 2) & 1;
                    1 | (b << 1) | (a << 2)
                } else {
                    l
                }
            }),
            GateKind::Fanout => {
                let all_targets = ((1usize << k) - 1) & !1;
                perm(&|l| if l & 1 == 1 { l ^ all_targets } else { l })
            }
            GateKind::McxFanout(pol) => {
                let nc = pol.len();
                let target_mask = ((1usize << k) - 1) & !((1usize << nc) - 1);
                let want: usize = pol
                    .iter()
                    .enumerate()
                    .map(|(i, &p)| (p as usize) << i)
                    .sum();
                let cmask = (1usize << nc) - 1;
                perm(&|l| {
                    if l & cmask == want {
                        l ^ target_mask
                    } else {
                        l
                    }
                })
            }
            GateKind::Measure => return Err(LinalgError::Measurement),
            _ => unreachable!("single-qubit kinds handled above"),
        })
    }

    /// Applies this op to `state`, interpreting local bit `i` as `qubits[i]`.
    pub fn apply(&self, qubits: &[usize], state: &mut [Complex64]) {
        let k = qubits.len();
        let dim = 1usize << k;
        let gate_mask: usize = qubits.iter().map(|&q| 1usize << q).sum();
        // offset of local index l within the full index
        let offsets: Vec<usize> = (0..dim)
            .map(|l| {
                qubits
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| l >> i & 1 == 1)
                    .map(|(_, &q)| 1usize << q)
                    .sum()
            })
            .collect();
        let mut local = vec![Complex64::new(0.0, 0.0); dim];
        for base in 0..state.len() {
            if base & gate_mask != 0 {
                continue;
            }
            for l in 0..dim {
                local[l] = state[base | offsets[l]];
            }
            match self {
                LocalOp::Dense(m) => {
                    for r in 0..dim {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for c in 0..dim {
                            acc += m[(r, c)] * local[c];
                        }
                        state[base | offsets[r]] = acc;
                    }
                }
                LocalOp::Permutation(p) => {
                    for l in 0..dim {
                        state[base | offsets[p[l]]] = local[l];
                    }
                }
            }
        }
    }
}

/// Full `2^n × 2^n` matrix of `gate` embedded in an `num_qubits`-qubit register.
pub fn gate_unitary(gate: &Gate, num_qubits: usize) -> Result<ComplexMatrix, LinalgError> {
    if num_qubits > crate::linalg::MAX_UNITARY_QUBITS {
        return Err(LinalgError::TooManyQubits(num_qubits));
    }
    crate::linalg::check_gate_qubits(gate, num_qubits)?;
    let op = LocalOp::for_gate(gate)?;
    let dim = 1usize << num_qubits;
    let mut out = ComplexMatrix::identity(dim);
    for col in 0..dim {
        let mut v = out.column(col);
        op.apply(&gate.qubits, &mut v);
        out.set_column(col, &v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{equiv_global_phase, mat2};

    #[test]
    fn hadamard_on_one_qubit() {
        let u = gate_unitary(&Gate::h(0), 1).unwrap();
        assert!(u.max_abs_diff(&mat2::h()).unwrap() < 1e-15);
    }

    #[test]
    fn single_target_fanout_is_cnot() {
        let f = gate_unitary(&Gate::fanout(0, &[1]), 2).unwrap();
        let c = gate_unitary(&Gate::cx(0, 1), 2).unwrap();
        assert_eq!(f, c);
    }

    #[test]
    fn cnot_maps_01_to_11() {
        // little-endian: |01> means qubit0 = 1, index 1
        let c = gate_unitary(&Gate::cx(0, 1), 2).unwrap();
        assert_eq!(c[(3, 1)], Complex64::new(1.0, 0.0));
        assert_eq!(c[(1, 3)], Complex64::new(1.0, 0.0));
        assert_eq!(c[(0, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(c[(2, 2)], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn cswap_equals_cnot_ccx_cnot_product() {
        // CSWAP(c=0; a=1, b=2) = CX(2->1) · CCX(0,1->2) · CX(2->1)
        let n = 3;
        let outer = gate_unitary(&Gate::cx(2, 1), n).unwrap();
        let mid = gate_unitary(&Gate::ccx(0, 1, 2), n).unwrap();
        let product = &(&outer * &mid) * &outer;
        let direct = gate_unitary(&Gate::cswap(0, 1, 2), n).unwrap();
        assert!(equiv_global_phase(&direct, &product, 1e-12).unwrap());
        assert!(direct.max_abs_diff(&product).unwrap() < 1e-15);
    }

    #[test]
    fn measurement_has_no_unitary() {
        assert!(matches!(
            gate_unitary(&Gate::measure(0), 1),
            Err(LinalgError::Measurement)
        ));
    }

    #[test]
    fn mcx_fanout_respects_polarity() {
        // open control on q0, closed on q1, targets q2,q3
        let g = Gate::mcx_fanout(&[(0, false), (1, true)], &[2, 3]);
        let u = gate_unitary(&g, 4).unwrap();
        // index 0b0010 (q1=1, q0=0) -> 0b1110
        assert_eq!(u[(0b1110, 0b0010)], Complex64::new(1.0, 0.0));
        // index 0b0011 untouched
        assert_eq!(u[(0b0011, 0b0011)], Complex64::new(1.0, 0.0));
    }
}
