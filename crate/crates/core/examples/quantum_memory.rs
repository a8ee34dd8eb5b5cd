//! Explicit memory (controlled-swap tree) and implicit memory (one
//! multi-controlled fan-out per address) on small registers.

use fanout::benchmarks::{
    explicit_memory_depth, gen_explicit_memory, gen_implicit_memory, implicit_serial_depth,
    MemoryLayout,
};
use fanout::schedule::depth;
use fanout::StateVector;

fn main() {
    let n = 3;
    let layout = MemoryLayout::explicit(n, 1);
    let mem = gen_explicit_memory(&layout).unwrap();
    let cells = 0b0110_1001usize;
    println!("explicit memory, n = {n}, cells = {cells:08b} (m7..m0)");
    for addr in 0..1usize << n {
        let mut s = StateVector::basis(layout.num_qubits(), addr | cells << n);
        s.run(&mem.circuit()).unwrap();
        let out = s.amplitudes().iter().position(|a| a.norm() > 0.5).unwrap();
        let load = out >> layout.load_qubits[0] & 1;
        println!(
            "  b = {addr:03b}: load = {load} (m{addr} = {})",
            cells >> addr & 1
        );
    }
    for n in 1..=5 {
        let b = gen_explicit_memory(&MemoryLayout::explicit(n, 1)).unwrap();
        println!(
            "  n = {n}: fan-out depth {} (28n + 3 = {}), serialized {}",
            depth(&b.simultaneous(), &[]),
            explicit_memory_depth(n),
            depth(&b.serialized(), &[])
        );
    }

    let data = [2u64, 3, 5, 7];
    println!("\nimplicit memory, data = {data:?}");
    let mem = gen_implicit_memory(&data, 3).unwrap();
    for addr in 0..4usize {
        let mut s = StateVector::basis(5, addr);
        s.run(&mem.circuit()).unwrap();
        let out = s.amplitudes().iter().position(|a| a.norm() > 0.5).unwrap();
        println!("  b = {addr:02b}: output = {}", out >> 2);
    }
    for w in [3, 12] {
        let b = gen_implicit_memory(&data, w).unwrap();
        println!(
            "  W = {w:>2}: fan-out depth {}, serial {}",
            depth(&b.simultaneous(), &[]),
            implicit_serial_depth(&data)
        );
    }
}
