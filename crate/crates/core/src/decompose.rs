//! Gate decompositions: ZYZ Euler angles, the ABC construction for controlled
//! single-qubit gates, the Clifford+T Toffoli network and SWAP/Fredkin networks.

use num_complex::Complex64;
use thiserror::Error;

use crate::circuit::{Circuit, Gate, GateKind, UNITARY_TOL};
use crate::linalg::{mat2, ComplexMatrix};

/// Below this `|V10|` (resp. `|V00|`) the Euler decomposition is treated as degenerate.
const DEGENERATE_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DecomposeError {
    #[error("matrix is not a 2x2 unitary")]
    NonUnitary,
    #[error("duplicate qubit {0}")]
    DuplicateQubit(usize),
}

/// `U = e^{iα} Rz(β) Ry(γ) Rz(δ)` with `γ ∈ [0, π]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZyzAngles {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
}

impl ZyzAngles {
    pub fn to_matrix(&self) -> ComplexMatrix {
        let m = &(&mat2::rz(self.beta) * &mat2::ry(self.gamma)) * &mat2::rz(self.delta);
        m.scale(Complex64::from_polar(1.0, self.alpha))
    }
}

pub fn zyz(u: &ComplexMatrix) -> Result<ZyzAngles, DecomposeError> {
    if u.rows() != 2 || u.cols() != 2 || !u.is_unitary(UNITARY_TOL) {
        return Err(DecomposeError::NonUnitary);
    }
    let alpha = u.determinant_2x2().arg() / 2.0;
    let v = u.scale(Complex64::from_polar(1.0, -alpha));
    let (v00, v10, v11) = (v[(0, 0)], v[(1, 0)], v[(1, 1)]);
    let gamma = 2.0 * v10.norm().atan2(v00.norm());
    let (beta, delta) = if v10.norm() < DEGENERATE_TOL {
        // only β+δ is fixed
        (2.0 * v11.arg(), 0.0)
    } else if v00.norm() < DEGENERATE_TOL {
        // only β−δ is fixed
        (0.0, -2.0 * v10.arg())
    } else {
        let sum = 2.0 * v11.arg();
        let diff = 2.0 * v10.arg();
        ((sum + diff) / 2.0, (sum - diff) / 2.0)
    };
    Ok(ZyzAngles {
        alpha,
        beta,
        gamma,
        delta,
    })
}

/// Single-qubit gates with `A·B·C = I` and `e^{iα}·A·X·B·X·C = U`.
#[derive(Clone, Debug, PartialEq)]
pub struct AbcDecomposition {
    pub a: ComplexMatrix,
    pub b: ComplexMatrix,
    pub c: ComplexMatrix,
    pub alpha: f64,
}

pub fn abc(u: &ComplexMatrix) -> Result<AbcDecomposition, DecomposeError> {
    let ZyzAngles {
        alpha,
        beta,
        gamma,
        delta,
    } = zyz(u)?;
    Ok(AbcDecomposition {
        a: &mat2::rz(beta) * &mat2::ry(gamma / 2.0),
        b: &mat2::ry(-gamma / 2.0) * &mat2::rz(-(delta + beta) / 2.0),
        c: mat2::rz((delta - beta) / 2.0),
        alpha,
    })
}

impl AbcDecomposition {
    /// `C(t), CX(c→t), B(t), CX(c→t), A(t), P(α)(c)`: exactly controlled-U.
    pub fn controlled_gates(&self, control: usize, target: usize) -> Vec<Gate> {
        vec![
            Gate::u(target, self.c.clone()),
            Gate::cx(control, target),
            Gate::u(target, self.b.clone()),
            Gate::cx(control, target),
            Gate::u(target, self.a.clone()),
            Gate::p(control, self.alpha),
        ]
    }
}

/// Fifteen-gate Clifford+T Toffoli on controls `a`, `b` and target `c`.
pub fn toffoli_gates(a: usize, b: usize, c: usize) -> Vec<Gate> {
    vec![
        Gate::h(c),
        Gate::cx(b, c),
        Gate::tdg(c),
        Gate::cx(a, c),
        Gate::t(c),
        Gate::cx(b, c),
        Gate::tdg(c),
        Gate::cx(a, c),
        Gate::t(c),
        Gate::cx(a, b),
        Gate::h(c),
        Gate::tdg(b),
        Gate::cx(a, b),
        Gate::t(a),
        Gate::t(b),
    ]
}

/// [`toffoli_gates`] on qubits 0, 1 (controls) and 2 (target).
pub fn toffoli_network() -> Circuit {
    Circuit::from_gates(3, toffoli_gates(0, 1, 2)).with_label("toffoli")
}

/// Controlled-SWAP gate list. With `controlled_outer = false` the outer pair is
/// plain CNOTs: `CX(b→a)·CCX(control,a→b)·CX(b→a)`.
pub fn cswap_gates(
    control: usize,
    a: usize,
    b: usize,
    controlled_outer: bool,
) -> Result<Vec<Gate>, DecomposeError> {
    if control == a || control == b {
        return Err(DecomposeError::DuplicateQubit(control));
    }
    if a == b {
        return Err(DecomposeError::DuplicateQubit(a));
    }
    let outer = || {
        if controlled_outer {
            Gate::ccx(control, b, a)
        } else {
            Gate::cx(b, a)
        }
    };
    Ok(vec![outer(), Gate::ccx(control, a, b), outer()])
}

pub fn cswap_network(
    control: usize,
    a: usize,
    b: usize,
    controlled_outer: bool,
) -> Result<Circuit, DecomposeError> {
    let gates = cswap_gates(control, a, b, controlled_outer)?;
    let width = control.max(a).max(b) + 1;
    Ok(Circuit::from_gates(width, gates).with_label("cswap"))
}

/// Rewrites SWAP, CCX and CSWAP into single-qubit gates and CNOTs. FANOUT and
/// MCX_FANOUT are kept as primitives.
pub fn expand(circuit: &Circuit) -> Circuit {
    let mut out = Circuit::new(circuit.num_qubits).with_label(circuit.label.clone());
    for g in &circuit.gates {
        expand_gate(g, &mut out.gates);
    }
    out
}

fn expand_gate(g: &Gate, out: &mut Vec<Gate>) {
    let q = &g.qubits;
    match g.kind {
        GateKind::Swap => out.extend([
            Gate::cx(q[0], q[1]),
            Gate::cx(q[1], q[0]),
            Gate::cx(q[0], q[1]),
        ]),
        GateKind::Ccx => out.extend(toffoli_gates(q[0], q[1], q[2])),
        GateKind::Cswap => {
            for inner in cswap_gates(q[0], q[1], q[2], false).expect("validated gate") {
                expand_gate(&inner, out);
            }
        }
        _ => out.push(g.clone()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::gate_unitary;
    use crate::linalg::{circuit_unitary, equiv_global_phase};
    use crate::linalg::{random::haar_2x2, StateVector};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn close(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> bool {
        a.max_abs_diff(b).unwrap() <= tol
    }

    #[test]
    fn zyz_identity() {
        let z = zyz(&mat2::identity()).unwrap();
        assert_eq!((z.alpha, z.beta, z.gamma, z.delta), (0.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn zyz_rz_canonical() {
        let theta = 0.81;
        let z = zyz(&mat2::rz(theta)).unwrap();
        assert!(z.alpha.abs() < 1e-15 && z.gamma.abs() < 1e-15 && z.delta == 0.0);
        assert!((z.beta - theta).abs() < 1e-12);
        assert!(close(&z.to_matrix(), &mat2::rz(theta), 1e-12));
    }

    #[test]
    fn zyz_reconstructs_x_and_h() {
        for u in [mat2::x(), mat2::h(), mat2::ry(PI), mat2::z()] {
            let z = zyz(&u).unwrap();
            assert!((0.0..=PI).contains(&z.gamma));
            assert!(close(&z.to_matrix(), &u, 1e-12), "{u:?}");
        }
    }

    #[test]
    fn zyz_rejects_non_unitary() {
        assert_eq!(
            zyz(&ComplexMatrix::identity(2).scale(Complex64::new(2.0, 0.0))),
            Err(DecomposeError::NonUnitary)
        );
    }

    #[test]
    fn abc_of_rz() {
        let theta = -1.3;
        let d = abc(&mat2::rz(theta)).unwrap();
        assert!(close(&d.a, &mat2::rz(theta), 1e-12));
        assert!(close(&d.b, &mat2::rz(-theta / 2.0), 1e-12));
        assert!(close(&d.c, &mat2::rz(-theta / 2.0), 1e-12));
        assert!(d.alpha.abs() < 1e-15);
    }

    #[test]
    fn abc_invariants_on_haar_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let u = haar_2x2(&mut rng);
            let d = abc(&u).unwrap();
            let abc_prod = &(&d.a * &d.b) * &d.c;
            assert!(close(&abc_prod, &mat2::identity(), 1e-12));
            let x = mat2::x();
            let axbxc = &(&(&(&d.a * &x) * &d.b) * &x) * &d.c;
            let rebuilt = axbxc.scale(Complex64::from_polar(1.0, d.alpha));
            assert!(close(&rebuilt, &u, 1e-12));
        }
    }

    #[test]
    fn toffoli_network_is_ccx() {
        let net = circuit_unitary(&toffoli_network()).unwrap();
        let ccx = gate_unitary(&Gate::ccx(0, 1, 2), 3).unwrap();
        assert!(equiv_global_phase(&net, &ccx, 1e-9).unwrap());
        assert_eq!(toffoli_network().len(), 15);
        let mut s = StateVector::basis(3, 0b011);
        s.run(&toffoli_network()).unwrap();
        assert!((s.amplitudes()[0b111].norm() - 1.0).abs() < 1e-12);
        let mut s = StateVector::basis(3, 0b010);
        s.run(&toffoli_network()).unwrap();
        assert!((s.amplitudes()[0b010].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cswap_network_both_modes() {
        let target = gate_unitary(&Gate::cswap(0, 1, 2), 3).unwrap();
        for outer in [false, true] {
            let c = cswap_network(0, 1, 2, outer).unwrap();
            assert!(equiv_global_phase(&circuit_unitary(&c).unwrap(), &target, 1e-9).unwrap());
        }
        assert!(cswap_network(1, 1, 2, false).is_err());
    }

    #[test]
    fn expand_counts() {
        let one_swap = expand(&Circuit::from_gates(2, vec![Gate::swap(0, 1)]));
        assert_eq!(one_swap.len(), 3);
        assert!(one_swap.gates.iter().all(|g| g.kind == GateKind::Cnot));
        let one_ccx = expand(&Circuit::from_gates(3, vec![Gate::ccx(0, 1, 2)]));
        assert_eq!(one_ccx.len(), 15);
        let basis = Circuit::from_gates(3, vec![Gate::h(0), Gate::fanout(0, &[1, 2])]);
        assert_eq!(expand(&basis), basis);
    }
}
