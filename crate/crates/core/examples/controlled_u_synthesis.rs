//! Controlled-U synthesis of a small circuit: fan-out templates against the
//! serialized and fine-grained baselines.
//!
//! Reads a circuit JSON file if one is given, otherwise uses the bundled
//! four-qubit example.

use fanout::circuit::json::from_json;
use fanout::decompose::expand;
use fanout::linalg::{circuit_unitary, phase_distance};
use fanout::schedule::{asap_schedule, depth};
use fanout::synthesis::{
    reference_controlled_u, serialized_schedule, synth_controlled_u, ControlledUSpec,
};

const BUNDLED: &str = include_str!("data/four_qubit_u.json");

fn main() {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path).expect("readable input"),
        None => BUNDLED.to_string(),
    };
    let u = from_json(&text).expect("valid circuit JSON");
    let control = u.num_qubits;
    let spec = ControlledUSpec::new(control, u).expect("U uses 1q gates and CNOTs only");

    let sim = synth_controlled_u(&spec).unwrap();
    let serial = serialized_schedule(&spec).unwrap();
    let reference = reference_controlled_u(&spec).unwrap();
    let fine = asap_schedule(&expand(&reference));

    println!("U layers:      {}", asap_schedule(&spec.u_circuit).len());
    println!("simultaneous:  {} moments", depth(&sim, &[]));
    println!("fine-grained:  {} moments", depth(&fine, &[]));
    println!("serialized:    {} moments", depth(&serial, &[]));

    let dev = phase_distance(
        &circuit_unitary(&sim.flatten()).unwrap(),
        &circuit_unitary(&reference).unwrap(),
    )
    .unwrap();
    println!("max deviation from the reference: {dev:.2e}");

    for (i, m) in sim.moments.iter().enumerate() {
        let names: Vec<String> = m
            .gates
            .iter()
            .map(|g| format!("{}{:?}", g.name(), g.qubits))
            .collect();
        println!("{:>3}: {}", i + 1, names.join(" "));
    }
}
