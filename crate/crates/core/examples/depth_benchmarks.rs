//! Depth table over every benchmark family, followed by the gate-fidelity
//! product estimate for the five comparison circuits.

use fanout::benchmarks::{Family, FamilyOptions};
use fanout::noise::{build_fidelity_table, Scenario};
use fanout::report::{depth_rows, ordering_violations, suite_infidelity, Scheduler};

fn main() {
    let schedulers = [
        Scheduler::Simultaneous,
        Scheduler::Asap,
        Scheduler::Serialized,
    ];
    let opts = FamilyOptions::default();
    println!(
        "{:>28}  {:>4}  {:>12}  {:>6}  {:>10}",
        "family", "size", "simultaneous", "asap", "serialized"
    );
    for f in Family::ALL {
        let rows = depth_rows(f, &[1, 2, 3, 4], &schedulers, None, &opts).unwrap();
        assert!(ordering_violations(&rows).is_empty());
        for chunk in rows.chunks(3) {
            println!(
                "{:>28}  {:>4}  {:>12}  {:>6}  {:>10}",
                chunk[0].family, chunk[0].size, chunk[0].depth, chunk[1].depth, chunk[2].depth
            );
        }
    }

    println!();
    for sc in [Scenario::Current, Scenario::LowOverrotation] {
        let table = build_fidelity_table(sc, 20_000, 1).unwrap();
        println!(
            "{sc}: CNOT {:.5}, FANOUT(8) {:.5}",
            table.cnot, table.fanout[&8]
        );
        for r in suite_infidelity(&table, 0).unwrap() {
            println!(
                "  {:<32} infidelity {:.4} -> {:.4}  ({:.1}% lower)",
                r.benchmark,
                r.serial_infidelity,
                r.simultaneous_infidelity,
                100.0 * r.reduction
            );
        }
    }
}
