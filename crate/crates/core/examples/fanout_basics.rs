//! A FANOUT gate against the CNOT chain it replaces, and the commutation
//! rules the scheduler relies on.

use fanout::linalg::{circuit_unitary, equiv_global_phase};
use fanout::schedule::{asap_schedule, commutes, depth};
use fanout::{Circuit, Gate, StateVector};

fn main() {
    let serial = Circuit::from_gates(4, vec![Gate::cx(0, 1), Gate::cx(0, 2), Gate::cx(0, 3)]);
    let fan = Circuit::from_gates(4, vec![Gate::fanout(0, &[1, 2, 3])]);

    let same = equiv_global_phase(
        &circuit_unitary(&serial).unwrap(),
        &circuit_unitary(&fan).unwrap(),
        1e-12,
    )
    .unwrap();
    println!("CNOT chain == FANOUT: {same}");
    println!(
        "depth: serial {}, fan-out {}",
        depth(&asap_schedule(&serial), &[]),
        depth(&asap_schedule(&fan), &[])
    );

    // GHZ preparation
    let mut s = StateVector::zero(4);
    s.apply(&Gate::h(0)).unwrap();
    s.run(&fan).unwrap();
    println!(
        "amplitudes of |0000> and |1111>: {:.4} {:.4}",
        s.amplitudes()[0],
        s.amplitudes()[15]
    );

    let pairs = [
        ("CX(0,1) / CX(0,2)", Gate::cx(0, 1), Gate::cx(0, 2)),
        ("CX(0,2) / CX(1,2)", Gate::cx(0, 2), Gate::cx(1, 2)),
        ("T(0) / CX(0,1)", Gate::t(0), Gate::cx(0, 1)),
        ("T(1) / CX(0,1)", Gate::t(1), Gate::cx(0, 1)),
        ("CX(0,1) / CX(1,2)", Gate::cx(0, 1), Gate::cx(1, 2)),
    ];
    for (name, a, b) in pairs {
        println!("{name:>18}: commute = {}", commutes(&a, &b));
    }
}
