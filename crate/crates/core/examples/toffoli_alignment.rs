//! Two Toffolis sharing a control: 21 moments when scheduled gate by gate,
//! 12 once the alignment pass merges CNOTs into fan-outs.

use fanout::decompose::toffoli_gates;
use fanout::linalg::{circuit_unitary, phase_distance};
use fanout::schedule::{asap_schedule, depth, fanout_align};
use fanout::{Circuit, GateKind};

fn main() {
    let mut gates = toffoli_gates(0, 1, 2);
    gates.extend(toffoli_gates(0, 3, 4));
    let c = Circuit::from_gates(5, gates);

    let before = asap_schedule(&c);
    let aligned = fanout_align(&c);
    let after = asap_schedule(&aligned);
    println!("fine-grained ASAP depth: {}", depth(&before, &[]));
    println!("after alignment:         {}", depth(&after, &[]));
    let fanouts = aligned
        .gates
        .iter()
        .filter(|g| g.kind == GateKind::Fanout)
        .count();
    println!("fan-outs introduced:     {fanouts}");

    let err = phase_distance(
        &circuit_unitary(&c).unwrap(),
        &circuit_unitary(&aligned).unwrap(),
    )
    .unwrap();
    println!("unitary deviation:       {err:.2e}");

    for (i, m) in after.moments.iter().enumerate() {
        let names: Vec<String> = m
            .gates
            .iter()
            .map(|g| format!("{}{:?}", g.name(), g.qubits))
            .collect();
        println!("{:>3}: {}", i + 1, names.join(" "));
    }
}
