//! SWAP test: depth of the fan-out circuit against the baselines, and the
//! overlap estimate from the ancilla.

use fanout::benchmarks::{gen_swap_test, swap_test_exclusions, swap_test_fine_grained};
use fanout::linalg::random::random_state;
use fanout::linalg::sample;
use fanout::schedule::depth;
use fanout::StateVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let ex = swap_test_exclusions();
    println!(" k  fan-out  unoptimized  fine-grained  serialized");
    for k in 1..=6 {
        let b = gen_swap_test(k, true).unwrap();
        let u = gen_swap_test(k, false).unwrap();
        println!(
            "{k:>2}  {:>7}  {:>11}  {:>12}  {:>10}",
            depth(&b.simultaneous(), &ex),
            depth(&u.schedule, &ex),
            depth(&swap_test_fine_grained(k).unwrap(), &ex),
            depth(&b.serialized(), &ex)
        );
    }

    let k = 3;
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let a = random_state(k, &mut rng);
    let b = random_state(k, &mut rng);
    let overlap = a.inner(&b).unwrap().norm_sqr();

    let mut s = StateVector::product(&StateVector::zero(1), &StateVector::product(&a, &b));
    s.run(&gen_swap_test(k, true).unwrap().circuit()).unwrap();
    let p0 = s.prob_zero(0).unwrap();
    let shots = 100_000;
    let [zeros, _] = sample(&s, 0, shots, 7).unwrap();
    let est = 2.0 * zeros as f64 / shots as f64 - 1.0;

    println!("\n|<A|B>|^2 = {overlap:.6}");
    println!(
        "P(0)      = {p0:.6}  (expected {:.6})",
        (1.0 + overlap) / 2.0
    );
    println!("estimate from {shots} shots: {est:.4}");
}
