//! GHZ fidelity after fan-out on a trapped-ion noise model, one simultaneous
//! gate against N serial CNOTs, for the four parameter scenarios.
//!
//! Usage: trapped_ion_noise [shots]

use fanout::noise::{advantage, run_monte_carlo, Scenario};

fn main() {
    let shots: u64 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("shots"))
        .unwrap_or(20_000);
    let ns: Vec<usize> = (2..=8).collect();
    for sc in Scenario::ALL {
        let rows = run_monte_carlo(&ns, sc, shots, 2020).unwrap();
        println!("{sc} ({})", sc.label());
        for &n in &ns {
            let sim = rows
                .iter()
                .find(|r| r.n == n && r.mode.as_str() == "simultaneous")
                .unwrap();
            let ser = rows
                .iter()
                .find(|r| r.n == n && r.mode.as_str() == "serial")
                .unwrap();
            let (adv, se) = advantage(&rows, n).unwrap();
            println!(
                "  N={n}: simultaneous {:.5}  serial {:.5}  advantage {:+.5} ± {:.5}",
                sim.mean_fidelity, ser.mean_fidelity, adv, se
            );
        }
    }
}
