//! Application circuits: SWAP test, interference and Hadamard tests, and the
//! explicit and implicit quantum memories.
//!
//! Each generator returns a [`Benchmark`] holding the fan-out schedule together
//! with the data needed for the baseline schedulers.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::circuit::{Circuit, Gate, GateKind};
use crate::decompose::{cswap_gates, expand};
use crate::linalg::random::haar_2x2;
use crate::schedule::{
    asap_schedule, block_sequential_schedule, depth, pack_moments, ExcludeRule, ScheduledCircuit,
};
use crate::synthesis::{
    reference_blocks, synth_controlled_u, synth_shared_toffoli, ControlledUSpec, SynthesisError,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BenchError {
    #[error("invalid size: {0}")]
    Size(String),
    #[error("unknown circuit family `{0}`")]
    UnknownFamily(String),
    #[error("width mismatch: {0} vs {1}")]
    WidthMismatch(usize, usize),
    #[error("value {value} at address {address} does not fit in {width} bits")]
    Overflow {
        address: usize,
        value: u64,
        width: usize,
    },
    #[error(transparent)]
    Synthesis(#[from] SynthesisError),
}

/// A compiled application circuit plus what the baselines need.
#[derive(Clone, Debug)]
pub struct Benchmark {
    /// Fan-out schedule.
    pub schedule: ScheduledCircuit,
    /// Program-order circuit over high-level gates (CCX, CSWAP, ...).
    pub high_level: Circuit,
    /// One block per high-level operation for the serialized baseline.
    pub serial_blocks: Vec<Circuit>,
}

impl Benchmark {
    /// Gates of the fan-out schedule in moment order.
    pub fn circuit(&self) -> Circuit {
        self.schedule.flatten()
    }

    pub fn num_qubits(&self) -> usize {
        self.schedule.num_qubits
    }

    /// The fan-out schedule with whole moments packed earlier where they
    /// touch disjoint qubits. Falls back to [`Benchmark::asap`] when that is
    /// strictly shallower (chains of single-pair layers, where no fan-out
    /// applies).
    pub fn simultaneous(&self) -> ScheduledCircuit {
        let packed = pack_moments(&self.schedule);
        let fine = self.asap();
        if depth(&fine, &[]) < depth(&packed, &[]) {
            fine
        } else {
            packed
        }
    }

    /// Fine-grained baseline: the expanded high-level circuit, ASAP scheduled.
    pub fn asap(&self) -> ScheduledCircuit {
        asap_schedule(&expand(&self.high_level))
    }

    /// Every high-level operation expanded and scheduled on its own.
    pub fn serialized(&self) -> ScheduledCircuit {
        let blocks: Vec<Circuit> = self.serial_blocks.iter().map(expand).collect();
        let mut s = block_sequential_schedule(&blocks);
        s.num_qubits = self.num_qubits();
        s
    }
}

fn single(n: usize, g: Gate) -> Circuit {
    Circuit::from_gates(n, vec![g])
}

fn with_ancilla_frame(
    n: usize,
    body: ScheduledCircuit,
    high_level_body: Vec<Gate>,
    serial_body: Vec<Circuit>,
    label: &str,
) -> Benchmark {
    let mut schedule = ScheduledCircuit::new(n);
    schedule.push(vec![Gate::h(0)]);
    schedule.append(body);
    schedule.push(vec![Gate::h(0)]);
    schedule.push(vec![Gate::measure(0)]);
    schedule.num_qubits = n;

    let mut high_level = Circuit::new(n).with_label(label);
    high_level.push(Gate::h(0));
    high_level.extend(high_level_body);
    high_level.push(Gate::h(0));
    high_level.push(Gate::measure(0));

    let mut serial_blocks = vec![single(n, Gate::h(0))];
    serial_blocks.extend(serial_body);
    serial_blocks.push(single(n, Gate::h(0)));
    serial_blocks.push(single(n, Gate::measure(0)));
    Benchmark {
        schedule,
        high_level,
        serial_blocks,
    }
}

/// Qubit of the `i`-th element of register A (`a = true`) or B.
pub fn swap_test_qubit(k: usize, a: bool, i: usize) -> usize {
    if a {
        1 + i
    } else {
        1 + k + i
    }
}

/// SWAP test on ancilla 0 and registers `A = 1..=k`, `B = k+1..=2k`.
///
/// The optimized form drops the controls on the outer CNOTs of every Fredkin,
/// leaving one shared-control Toffoli block between two CNOT moments. The
/// unoptimized form synthesizes controlled-(register SWAP) with three
/// shared-control Toffoli blocks.
pub fn gen_swap_test(k: usize, optimized: bool) -> Result<Benchmark, BenchError> {
    if k < 1 {
        return Err(BenchError::Size("SWAP test needs k >= 1".into()));
    }
    let n = 2 * k + 1;
    let a = |i| swap_test_qubit(k, true, i);
    let b = |i| swap_test_qubit(k, false, i);
    let label = if optimized {
        "swap test"
    } else {
        "swap test (unoptimized)"
    };
    let fredkins: Vec<Gate> = (0..k).map(|i| Gate::cswap(0, a(i), b(i))).collect();
    let serial: Vec<Circuit> = fredkins.iter().map(|g| single(n, g.clone())).collect();
    let mut bench = if optimized {
        let outer: Vec<Gate> = (0..k).map(|i| Gate::cx(b(i), a(i))).collect();
        let mut body = ScheduledCircuit::new(n);
        body.push(outer.clone());
        body.append(synth_shared_toffoli(
            0,
            &(0..k).map(|i| (a(i), b(i))).collect::<Vec<_>>(),
        )?);
        body.push(outer.clone());
        let mut high = outer.clone();
        high.extend((0..k).map(|i| Gate::ccx(0, a(i), b(i))));
        high.extend(outer);
        with_ancilla_frame(n, body, high, serial, label)
    } else {
        let mut u = Circuit::new(n);
        for i in 0..k {
            u.push(Gate::cx(a(i), b(i)));
        }
        for i in 0..k {
            u.push(Gate::cx(b(i), a(i)));
        }
        for i in 0..k {
            u.push(Gate::cx(a(i), b(i)));
        }
        let body = synth_controlled_u(&ControlledUSpec::new(0, u)?)?;
        let high = (0..k)
            .flat_map(|i| cswap_gates(0, a(i), b(i), true).expect("distinct qubits"))
            .collect();
        with_ancilla_frame(n, body, high, serial, label)
    };
    bench.schedule.num_qubits = n;
    Ok(bench)
}

/// Layer-by-layer fine-grained baseline for the unoptimized SWAP test: each
/// layer of `k` doubly-controlled CNOTs is expanded and ASAP scheduled on its own.
pub fn swap_test_fine_grained(k: usize) -> Result<ScheduledCircuit, BenchError> {
    if k < 1 {
        return Err(BenchError::Size("SWAP test needs k >= 1".into()));
    }
    let n = 2 * k + 1;
    let a = |i| swap_test_qubit(k, true, i);
    let b = |i| swap_test_qubit(k, false, i);
    let layer = |flip: bool| {
        let gates = (0..k)
            .map(|i| {
                if flip {
                    Gate::ccx(0, b(i), a(i))
                } else {
                    Gate::ccx(0, a(i), b(i))
                }
            })
            .collect();
        expand(&Circuit::from_gates(n, gates))
    };
    Ok(block_sequential_schedule(&[
        single(n, Gate::h(0)),
        layer(true),
        layer(false),
        layer(true),
        single(n, Gate::h(0)),
        single(n, Gate::measure(0)),
    ]))
}

/// The depth convention for the SWAP test: Hadamards on the ancilla are not counted.
pub fn swap_test_exclusions() -> Vec<ExcludeRule> {
    vec![ExcludeRule::on(crate::circuit::GateName::H, 0)]
}

fn controlled_parts(
    u: &Circuit,
    n: usize,
) -> Result<(ScheduledCircuit, Vec<Gate>, Vec<Circuit>), BenchError> {
    let spec = ControlledUSpec::new(0, u.shifted(1, n))?;
    let body = synth_controlled_u(&spec)?;
    let blocks = reference_blocks(&spec)?;
    let high = blocks.iter().flat_map(|b| b.gates.clone()).collect();
    Ok((body, high, blocks))
}

/// Hadamard test of `u` with the ancilla on qubit 0 and `u` shifted up by one.
pub fn gen_hadamard_test(u: &Circuit) -> Result<Benchmark, BenchError> {
    let n = u.num_qubits + 1;
    let (body, high, blocks) = controlled_parts(u, n)?;
    let label = format!("hadamard test {}", u.label);
    Ok(with_ancilla_frame(n, body, high, blocks, label.trim()))
}

/// Interference circuit estimating `Re⟨B|A⟩` with `|A⟩ = U_A|0⟩`, `|B⟩ = U_B|0⟩`,
/// on `k + 1` qubits. The open control on `U_B` is realised with X conjugation.
pub fn gen_interference(u_a: &Circuit, u_b: &Circuit) -> Result<Benchmark, BenchError> {
    if u_a.num_qubits != u_b.num_qubits {
        return Err(BenchError::WidthMismatch(u_a.num_qubits, u_b.num_qubits));
    }
    let n = u_a.num_qubits + 1;
    let (body_a, high_a, blocks_a) = controlled_parts(u_a, n)?;
    let (body_b, high_b, blocks_b) = controlled_parts(u_b, n)?;

    let mut body = body_a;
    body.push(vec![Gate::x(0)]);
    body.append(body_b);
    body.push(vec![Gate::x(0)]);

    let mut high = high_a;
    high.push(Gate::x(0));
    high.extend(high_b);
    high.push(Gate::x(0));

    let mut blocks = blocks_a;
    blocks.push(single(n, Gate::x(0)));
    blocks.extend(blocks_b);
    blocks.push(single(n, Gate::x(0)));
    Ok(with_ancilla_frame(n, body, high, blocks, "interference"))
}

/// Families of target circuits for the Hadamard test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UFamily {
    Qft,
    Brickwork,
    HardwareEfficient,
    SwapNetwork,
}

impl UFamily {
    pub const ALL: [UFamily; 4] = [
        UFamily::Qft,
        UFamily::Brickwork,
        UFamily::HardwareEfficient,
        UFamily::SwapNetwork,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            UFamily::Qft => "qft",
            UFamily::Brickwork => "brickwork",
            UFamily::HardwareEfficient => "hardware_efficient",
            UFamily::SwapNetwork => "swap_network",
        }
    }
}

impl FromStr for UFamily {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, BenchError> {
        let norm = s.replace('-', "_");
        UFamily::ALL
            .into_iter()
            .find(|f| f.as_str() == norm)
            .ok_or_else(|| BenchError::UnknownFamily(s.to_string()))
    }
}

impl fmt::Display for UFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn push_cphase(c: &mut Circuit, control: usize, target: usize, phi: f64) {
    c.push(Gate::p(control, phi / 2.0));
    c.push(Gate::p(target, phi / 2.0));
    c.push(Gate::cx(control, target));
    c.push(Gate::p(target, -phi / 2.0));
    c.push(Gate::cx(control, target));
}

fn push_swap(c: &mut Circuit, a: usize, b: usize) {
    c.push(Gate::cx(a, b));
    c.push(Gate::cx(b, a));
    c.push(Gate::cx(a, b));
}

/// Deterministic target circuit over single-qubit gates and CNOTs.
///
/// `depth` counts layers for the random families and the swap network; the QFT
/// ignores it. `seed` only affects the random families.
pub fn gen_u_family(
    kind: UFamily,
    width: usize,
    depth: usize,
    seed: u64,
) -> Result<Circuit, BenchError> {
    if width < 1 {
        return Err(BenchError::Size("width must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = Circuit::new(width).with_label(format!("{kind} w{width}"));
    match kind {
        UFamily::Qft => {
            // most significant qubit first, then bit reversal
            for i in (0..width).rev() {
                c.push(Gate::h(i));
                for j in (0..i).rev() {
                    push_cphase(&mut c, j, i, PI / (1u64 << (i - j)) as f64);
                }
            }
            for i in 0..width / 2 {
                push_swap(&mut c, i, width - 1 - i);
            }
        }
        UFamily::Brickwork => {
            for layer in 0..depth {
                for q in 0..width {
                    c.push(Gate::u(q, haar_2x2(&mut rng)));
                }
                for q in (layer % 2..width.saturating_sub(1)).step_by(2) {
                    c.push(Gate::cx(q, q + 1));
                }
            }
        }
        UFamily::HardwareEfficient => {
            for _ in 0..depth {
                for q in 0..width {
                    c.push(Gate::ry(q, rng.random_range(0.0..2.0 * PI)));
                }
                for q in 0..width.saturating_sub(1) {
                    c.push(Gate::cx(q, q + 1));
                }
            }
            for q in 0..width {
                c.push(Gate::ry(q, rng.random_range(0.0..2.0 * PI)));
            }
        }
        UFamily::SwapNetwork => {
            for layer in 0..depth {
                for q in (layer % 2..width.saturating_sub(1)).step_by(2) {
                    push_swap(&mut c, q, q + 1);
                }
            }
        }
    }
    Ok(c)
}

/// Register assignment for the memories. Index bit `b_0` is the least significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MemoryLayout {
    pub n: usize,
    pub w: usize,
    pub index_qubits: Vec<usize>,
    /// Explicit memory only: `2^n` groups of `w` qubits.
    pub cell_qubits: Vec<Vec<usize>>,
    /// Load/store register (explicit) or output register (implicit).
    pub load_qubits: Vec<usize>,
}

impl MemoryLayout {
    /// `b_0..b_{n-1}`, then the cells `m_0..m_{2^n-1}`, then the load register.
    pub fn explicit(n: usize, w: usize) -> Self {
        let cells = 1usize << n;
        Self {
            n,
            w,
            index_qubits: (0..n).collect(),
            cell_qubits: (0..cells)
                .map(|i| (n + i * w..n + (i + 1) * w).collect())
                .collect(),
            load_qubits: (n + cells * w..n + cells * w + w).collect(),
        }
    }

    /// `b_0..b_{n-1}` followed by the `w`-bit output register; no ancillas.
    pub fn implicit(n: usize, w: usize) -> Self {
        Self {
            n,
            w,
            index_qubits: (0..n).collect(),
            cell_qubits: Vec::new(),
            load_qubits: (n..n + w).collect(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.index_qubits.len() + self.cell_qubits.iter().map(Vec::len).sum::<usize>() + self.w
    }
}

/// Controlled-swap columns of the explicit memory, from the most significant
/// index bit down. Column `k` swaps `m_j` with `m_{j + 2^k}` for `j < 2^k`.
fn explicit_columns(layout: &MemoryLayout) -> Vec<(usize, Vec<(usize, usize)>)> {
    (0..layout.n)
        .rev()
        .map(|k| {
            let half = 1usize << k;
            let pairs = (0..half)
                .map(|j| (layout.cell_qubits[j][0], layout.cell_qubits[j + half][0]))
                .collect();
            (layout.index_qubits[k], pairs)
        })
        .collect()
}

/// Explicit memory with `W = 1`: moves cell `b` into `m_0`, swaps it with the
/// load register and undoes the moves. The addressed cell ends up holding the
/// previous load contents; all other cells are restored.
pub fn gen_explicit_memory(layout: &MemoryLayout) -> Result<Benchmark, BenchError> {
    if layout.w != 1 {
        return Err(BenchError::Size(
            "explicit memory supports W = 1 only".into(),
        ));
    }
    if layout.n < 1 {
        return Err(BenchError::Size("explicit memory needs n >= 1".into()));
    }
    let nq = layout.num_qubits();
    let columns = explicit_columns(layout);
    let mut order: Vec<&(usize, Vec<(usize, usize)>)> = columns.iter().collect();
    let mirror: Vec<_> = columns.iter().rev().collect();

    let mut schedule = ScheduledCircuit::new(nq);
    let mut high = Circuit::new(nq).with_label(format!("explicit memory n{}", layout.n));
    let mut blocks = Vec::new();
    let emit_column = |col: &(usize, Vec<(usize, usize)>),
                       schedule: &mut ScheduledCircuit,
                       high: &mut Circuit,
                       blocks: &mut Vec<Circuit>|
     -> Result<(), BenchError> {
        let (control, pairs) = col;
        let outer: Vec<Gate> = pairs.iter().map(|&(lo, hi)| Gate::cx(hi, lo)).collect();
        schedule.push(outer.clone());
        schedule.append(synth_shared_toffoli(*control, pairs)?);
        schedule.push(outer);
        for &(lo, hi) in pairs {
            let g = Gate::cswap(*control, lo, hi);
            high.push(g.clone());
            blocks.push(single(nq, g));
        }
        Ok(())
    };
    for col in order.drain(..) {
        emit_column(col, &mut schedule, &mut high, &mut blocks)?;
    }
    let (m0, load) = (layout.cell_qubits[0][0], layout.load_qubits[0]);
    for g in [Gate::cx(m0, load), Gate::cx(load, m0), Gate::cx(m0, load)] {
        schedule.push(vec![g]);
    }
    high.push(Gate::swap(m0, load));
    blocks.push(single(nq, Gate::swap(m0, load)));
    for col in mirror {
        emit_column(col, &mut schedule, &mut high, &mut blocks)?;
    }
    schedule.num_qubits = nq;
    Ok(Benchmark {
        schedule,
        high_level: high,
        serial_blocks: blocks,
    })
}

/// Depth of the explicit-memory fan-out schedule: each column costs two CNOT
/// moments around a 12-moment Toffoli block, and the central swap costs 3.
pub fn explicit_memory_depth(n: usize) -> usize {
    28 * n + 3
}

fn bits_of(value: u64, width: usize) -> impl Iterator<Item = usize> {
    (0..width).filter(move |b| value >> b & 1 == 1)
}

/// Implicit memory (QROM): one multi-target gate per address with a nonzero
/// value. Zero-valued addresses need no gate.
pub fn gen_implicit_memory(data: &[u64], w: usize) -> Result<Benchmark, BenchError> {
    if data.len() < 2 || !data.len().is_power_of_two() {
        return Err(BenchError::Size(format!(
            "data length {} is not a power of two >= 2",
            data.len()
        )));
    }
    let n = data.len().trailing_zeros() as usize;
    for (address, &value) in data.iter().enumerate() {
        if w < 64 && value >> w != 0 {
            return Err(BenchError::Overflow {
                address,
                value,
                width: w,
            });
        }
    }
    let layout = MemoryLayout::implicit(n, w);
    let nq = layout.num_qubits();
    let mut schedule = ScheduledCircuit::new(nq);
    let mut high = Circuit::new(nq).with_label(format!("implicit memory n{n} w{w}"));
    let mut blocks = Vec::new();
    for (address, &value) in data.iter().enumerate() {
        let controls: Vec<(usize, bool)> = (0..n)
            .map(|j| (layout.index_qubits[j], address >> j & 1 == 1))
            .collect();
        let targets: Vec<usize> = bits_of(value, w).map(|b| layout.load_qubits[b]).collect();
        if targets.is_empty() {
            continue;
        }
        schedule.push(vec![Gate::mcx_fanout(&controls, &targets)]);
        for &t in &targets {
            let g = Gate::mcx_fanout(&controls, &[t]);
            high.push(g.clone());
            blocks.push(single(nq, g));
        }
    }
    Ok(Benchmark {
        schedule,
        high_level: high,
        serial_blocks: blocks,
    })
}

/// The first `count` primes, used as default memory contents.
pub fn first_primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut p = 2u64;
    while out.len() < count {
        if (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d)) {
            out.push(p);
        }
        p += 1;
    }
    out
}

/// Bits needed to store every value in `data` (at least 1).
pub fn bit_width(data: &[u64]) -> usize {
    data.iter()
        .map(|v| 64 - v.leading_zeros() as usize)
        .max()
        .unwrap_or(0)
        .max(1)
}

/// Single-target gate count of the implicit memory: `Σ popcount(data[i])`.
pub fn implicit_serial_depth(data: &[u64]) -> usize {
    data.iter().map(|v| v.count_ones() as usize).sum()
}

/// True if the circuit only uses kinds a Hadamard test target may contain.
pub fn is_basis_circuit(c: &Circuit) -> bool {
    c.gates
        .iter()
        .all(|g| g.is_single_qubit() || g.kind == GateKind::Cnot)
}

/// Benchmark families addressable by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    SwapTest,
    Interference,
    Hadamard(UFamily),
    ExplicitMemory,
    ImplicitMemory,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::SwapTest,
        Family::Interference,
        Family::Hadamard(UFamily::Qft),
        Family::Hadamard(UFamily::Brickwork),
        Family::Hadamard(UFamily::HardwareEfficient),
        Family::Hadamard(UFamily::SwapNetwork),
        Family::ExplicitMemory,
        Family::ImplicitMemory,
    ];

    pub fn name(self) -> String {
        match self {
            Family::SwapTest => "swap-test".into(),
            Family::Interference => "interference".into(),
            Family::Hadamard(u) => format!("hadamard-{}", u.as_str().replace('_', "-")),
            Family::ExplicitMemory => "explicit-memory".into(),
            Family::ImplicitMemory => "implicit-memory".into(),
        }
    }

    /// Depth exclusions used when none are requested.
    pub fn default_exclusions(self) -> Vec<ExcludeRule> {
        match self {
            Family::SwapTest => swap_test_exclusions(),
            _ => Vec::new(),
        }
    }
}

impl FromStr for Family {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, BenchError> {
        let norm = s.replace('_', "-");
        Family::ALL
            .into_iter()
            .find(|f| f.name() == norm)
            .ok_or_else(|| BenchError::UnknownFamily(s.to_string()))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Knobs shared by the generators.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyOptions {
    /// Layers for brickwork, hardware-efficient and swap-network circuits.
    pub depth: usize,
    pub seed: u64,
    /// Implicit memory bitwidth; defaults to the width of the largest value.
    pub bitwidth: Option<usize>,
    /// Implicit memory contents; defaults to the first `2^n` primes.
    pub data: Option<Vec<u64>>,
}

impl Default for FamilyOptions {
    fn default() -> Self {
        Self {
            depth: 2,
            seed: 0,
            bitwidth: None,
            data: None,
        }
    }
}

/// Builds `family` at `size`: `k` for the SWAP test, register width for the
/// interference and Hadamard tests, index bits `n` for the memories.
pub fn build(family: Family, size: usize, opts: &FamilyOptions) -> Result<Benchmark, BenchError> {
    if size < 1 {
        return Err(BenchError::Size(format!("{family} needs size >= 1")));
    }
    match family {
        Family::SwapTest => gen_swap_test(size, true),
        Family::Interference => {
            let u_a = gen_u_family(UFamily::Brickwork, size, opts.depth, opts.seed)?;
            let u_b = gen_u_family(UFamily::Brickwork, size, opts.depth, opts.seed + 1)?;
            gen_interference(&u_a, &u_b)
        }
        Family::Hadamard(kind) => {
            gen_hadamard_test(&gen_u_family(kind, size, opts.depth, opts.seed)?)
        }
        Family::ExplicitMemory => gen_explicit_memory(&MemoryLayout::explicit(size, 1)),
        Family::ImplicitMemory => {
            if size > 16 {
                return Err(BenchError::Size("implicit memory supports n <= 16".into()));
            }
            let data = match &opts.data {
                Some(d) => d.clone(),
                None => first_primes(1 << size),
            };
            if data.len() != 1 << size {
                return Err(BenchError::Size(format!(
                    "{} values given for n = {size}",
                    data.len()
                )));
            }
            let w = opts.bitwidth.unwrap_or_else(|| bit_width(&data));
            gen_implicit_memory(&data, w)
        }
    }
}

/// The five benchmarks used for the fidelity-product comparison, each at the
/// largest size whose fan-outs have at most 8 targets.
pub fn fidelity_suite(seed: u64) -> Result<Vec<(String, Benchmark)>, BenchError> {
    let opts = FamilyOptions {
        seed,
        ..FamilyOptions::default()
    };
    [
        Family::SwapTest,
        Family::Interference,
        Family::Hadamard(UFamily::Brickwork),
        Family::Hadamard(UFamily::HardwareEfficient),
        Family::Hadamard(UFamily::SwapNetwork),
    ]
    .into_iter()
    .map(|f| Ok((format!("{f} {}", 8), build(f, 8, &opts)?)))
    .collect()
}

/// Largest number of targets on any FANOUT in `s`.
pub fn max_fanout(s: &ScheduledCircuit) -> usize {
    s.gates()
        .filter(|g| g.kind == GateKind::Fanout)
        .map(|g| g.targets().len())
        .max()
        .unwrap_or(0)
}
