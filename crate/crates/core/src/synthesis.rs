//! Controlled-U synthesis on a fan-out native gate set.
//!
//! Every ASAP layer of `U` is compiled with one of two fixed-depth templates: a
//! shared-control block for single-qubit layers (5 moments) and a
//! shared-control Toffoli block for CNOT layers (12 moments).

use std::f64::consts::FRAC_PI_4;

use thiserror::Error;

use crate::circuit::{Circuit, Gate, GateKind};
use crate::decompose::{abc, expand, DecomposeError};
use crate::linalg::ComplexMatrix;
use crate::schedule::{asap_schedule, block_sequential_schedule, ScheduledCircuit};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SynthesisError {
    #[error("control qubit {0} is also used by the target circuit")]
    ControlInCircuit(usize),
    #[error("qubit {0} used twice")]
    DuplicateQubit(usize),
    #[error("gate {index}: `{name}` is not a single-qubit gate or CNOT")]
    UnsupportedGate { index: usize, name: String },
    #[error("no target pairs given")]
    NoPairs,
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
}

/// `U` together with the qubit that controls it.
#[derive(Clone, Debug, PartialEq)]
pub struct ControlledUSpec {
    pub control: usize,
    pub u_circuit: Circuit,
}

impl ControlledUSpec {
    pub fn new(control: usize, u_circuit: Circuit) -> Result<Self, SynthesisError> {
        if u_circuit.gates.iter().any(|g| g.acts_on(control)) {
            return Err(SynthesisError::ControlInCircuit(control));
        }
        for (index, g) in u_circuit.gates.iter().enumerate() {
            if !(g.is_single_qubit() || g.kind == GateKind::Cnot) {
                return Err(SynthesisError::UnsupportedGate {
                    index,
                    name: g.name().to_string(),
                });
            }
        }
        Ok(Self { control, u_circuit })
    }

    /// Qubits used by control plus `U`; no ancillas are ever added.
    pub fn width(&self) -> usize {
        self.u_circuit.num_qubits.max(self.control + 1)
    }
}

fn check_distinct(qubits: impl IntoIterator<Item = usize>) -> Result<usize, SynthesisError> {
    let mut seen: Vec<usize> = Vec::new();
    for q in qubits {
        if seen.contains(&q) {
            return Err(SynthesisError::DuplicateQubit(q));
        }
        seen.push(q);
    }
    Ok(seen.iter().max().map_or(0, |m| m + 1))
}

/// Applies every `U_i` on `t_i`, all controlled by `control`, in 5 moments.
pub fn synth_shared_1q(
    control: usize,
    pairs: &[(usize, ComplexMatrix)],
) -> Result<ScheduledCircuit, SynthesisError> {
    if pairs.is_empty() {
        return Err(SynthesisError::NoPairs);
    }
    let width = check_distinct(std::iter::once(control).chain(pairs.iter().map(|p| p.0)))?;
    let parts = pairs
        .iter()
        .map(|(t, u)| Ok((*t, abc(u)?)))
        .collect::<Result<Vec<_>, SynthesisError>>()?;
    let targets: Vec<usize> = pairs.iter().map(|p| p.0).collect();
    let alpha: f64 = parts.iter().map(|(_, d)| d.alpha).sum();

    let mut s = ScheduledCircuit::new(width);
    s.push(
        parts
            .iter()
            .map(|(t, d)| Gate::u(*t, d.c.clone()))
            .collect(),
    );
    s.push(vec![Gate::cx_or_fanout(control, &targets)]);
    s.push(
        parts
            .iter()
            .map(|(t, d)| Gate::u(*t, d.b.clone()))
            .collect(),
    );
    s.push(vec![Gate::cx_or_fanout(control, &targets)]);
    let mut last: Vec<Gate> = parts
        .iter()
        .map(|(t, d)| Gate::u(*t, d.a.clone()))
        .collect();
    last.push(Gate::p(control, alpha));
    s.push(last);
    Ok(s)
}

/// Applies `CCX(shared, c_i → t_i)` for every pair in 12 moments.
pub fn synth_shared_toffoli(
    shared: usize,
    pairs: &[(usize, usize)],
) -> Result<ScheduledCircuit, SynthesisError> {
    if pairs.is_empty() {
        return Err(SynthesisError::NoPairs);
    }
    let width =
        check_distinct(std::iter::once(shared).chain(pairs.iter().flat_map(|&(c, t)| [c, t])))?;
    let cs: Vec<usize> = pairs.iter().map(|p| p.0).collect();
    let ts: Vec<usize> = pairs.iter().map(|p| p.1).collect();
    let r = pairs.len() as f64;
    let each_t = |f: fn(usize) -> Gate| ts.iter().map(|&t| f(t)).collect::<Vec<_>>();
    let cx_pairs = || {
        pairs
            .iter()
            .map(|&(c, t)| Gate::cx(c, t))
            .collect::<Vec<_>>()
    };

    let mut s = ScheduledCircuit::new(width);
    s.push(each_t(Gate::h));
    s.push(cx_pairs());
    s.push(each_t(Gate::tdg));
    s.push(vec![Gate::cx_or_fanout(shared, &ts)]);
    s.push(each_t(Gate::t));
    s.push(cx_pairs());
    s.push(each_t(Gate::tdg));
    s.push(vec![Gate::cx_or_fanout(shared, &ts)]);
    s.push(cs.iter().chain(&ts).map(|&q| Gate::t(q)).collect());
    s.push(vec![Gate::cx_or_fanout(shared, &cs)]);
    let mut m11 = vec![Gate::p(shared, r * FRAC_PI_4)];
    m11.extend(cs.iter().map(|&c| Gate::tdg(c)));
    m11.extend(ts.iter().map(|&t| Gate::h(t)));
    s.push(m11);
    s.push(vec![Gate::cx_or_fanout(shared, &cs)]);
    Ok(s)
}

/// Layer-by-layer synthesis of controlled-`U` with no ancillas.
pub fn synth_controlled_u(spec: &ControlledUSpec) -> Result<ScheduledCircuit, SynthesisError> {
    let spec = ControlledUSpec::new(spec.control, spec.u_circuit.clone())?;
    let mut out = ScheduledCircuit::new(spec.width());
    for layer in asap_schedule(&spec.u_circuit).moments {
        let mut singles = Vec::new();
        let mut cnots = Vec::new();
        for g in layer.gates {
            match g.kind {
                GateKind::Cnot => cnots.push((g.qubits[0], g.qubits[1])),
                ref k => singles.push((g.qubits[0], k.matrix_2x2().expect("validated"))),
            }
        }
        if !singles.is_empty() {
            out.append(synth_shared_1q(spec.control, &singles)?);
        }
        if !cnots.is_empty() {
            out.append(synth_shared_toffoli(spec.control, &cnots)?);
        }
    }
    out.num_qubits = spec.width();
    Ok(out)
}

/// Each gate of `U` replaced in order by its controlled version. Single-qubit
/// gates become ABC blocks and CNOTs become Toffolis.
pub fn reference_controlled_u(spec: &ControlledUSpec) -> Result<Circuit, SynthesisError> {
    let blocks = reference_blocks(spec)?;
    let mut out = Circuit::new(spec.width()).with_label("reference controlled-U");
    for b in blocks {
        out.extend(b.gates);
    }
    Ok(out)
}

/// One circuit per controlled gate, each over the full width and not expanded.
pub fn reference_blocks(spec: &ControlledUSpec) -> Result<Vec<Circuit>, SynthesisError> {
    let spec = ControlledUSpec::new(spec.control, spec.u_circuit.clone())?;
    let width = spec.width();
    spec.u_circuit
        .gates
        .iter()
        .map(|g| {
            let gates = match g.kind {
                GateKind::Cnot => vec![Gate::ccx(spec.control, g.qubits[0], g.qubits[1])],
                ref k => {
                    let d = abc(&k.matrix_2x2().expect("validated"))?;
                    d.controlled_gates(spec.control, g.qubits[0])
                }
            };
            Ok(Circuit::from_gates(width, gates))
        })
        .collect()
}

/// Serialized baseline: every controlled gate expanded and scheduled on its own.
pub fn serialized_schedule(spec: &ControlledUSpec) -> Result<ScheduledCircuit, SynthesisError> {
    let blocks: Vec<Circuit> = reference_blocks(spec)?.iter().map(expand).collect();
    let mut s = block_sequential_schedule(&blocks);
    s.num_qubits = spec.width();
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::gate_unitary;
    use crate::linalg::random::haar_2x2;
    use crate::linalg::{circuit_unitary, equiv_global_phase, mat2};
    use crate::schedule::depth;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn product_of(gates: &[Gate], n: usize) -> ComplexMatrix {
        circuit_unitary(&Circuit::from_gates(n, gates.to_vec())).unwrap()
    }

    #[test]
    fn one_controlled_x_is_cnot() {
        let s = synth_shared_1q(0, &[(1, mat2::x())]).unwrap();
        let u = circuit_unitary(&s.flatten()).unwrap();
        let cx = gate_unitary(&Gate::cx(0, 1), 2).unwrap();
        assert!(equiv_global_phase(&u, &cx, 1e-9).unwrap());
    }

    #[test]
    fn shared_1q_is_five_moments_and_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for r in 1..=4 {
            let pairs: Vec<_> = (1..=r).map(|t| (t, haar_2x2(&mut rng))).collect();
            let s = synth_shared_1q(0, &pairs).unwrap();
            assert_eq!(depth(&s, &[]), 5);
            let mut reference = Vec::new();
            for (t, u) in &pairs {
                reference.extend(abc(u).unwrap().controlled_gates(0, *t));
            }
            let a = circuit_unitary(&s.flatten()).unwrap();
            let b = product_of(&reference, r + 1);
            assert!(a.max_abs_diff(&b).unwrap() < 1e-9);
        }
    }

    #[test]
    fn shared_toffoli_single_pair_is_ccx() {
        let s = synth_shared_toffoli(0, &[(1, 2)]).unwrap();
        assert_eq!(s.len(), 12);
        let a = circuit_unitary(&s.flatten()).unwrap();
        let b = gate_unitary(&Gate::ccx(0, 1, 2), 3).unwrap();
        assert!(equiv_global_phase(&a, &b, 1e-9).unwrap());
    }

    #[test]
    fn collisions_rejected() {
        assert_eq!(
            synth_shared_toffoli(0, &[(1, 2), (2, 3)]),
            Err(SynthesisError::DuplicateQubit(2))
        );
        assert!(synth_shared_1q(1, &[(1, mat2::x())]).is_err());
        assert_eq!(synth_shared_toffoli(0, &[]), Err(SynthesisError::NoPairs));
    }

    #[test]
    fn identity_u_gives_no_moments() {
        let spec = ControlledUSpec::new(3, Circuit::new(3)).unwrap();
        assert!(synth_controlled_u(&spec).unwrap().is_empty());
    }

    #[test]
    fn unsupported_gate_rejected() {
        let u = Circuit::from_gates(3, vec![Gate::ccx(0, 1, 2)]);
        assert!(matches!(
            ControlledUSpec::new(3, u),
            Err(SynthesisError::UnsupportedGate { index: 0, .. })
        ));
        let u = Circuit::from_gates(2, vec![Gate::h(1)]);
        assert_eq!(
            ControlledUSpec::new(1, u),
            Err(SynthesisError::ControlInCircuit(1))
        );
    }
}
