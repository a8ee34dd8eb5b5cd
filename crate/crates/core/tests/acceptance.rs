//! Acceptance criteria 1 to 10. Each test writes one `PASS`/`FAIL` line to
//! stderr (bypassing output capture) and panics on failure.

use std::io::Write;
use std::time::{Duration, Instant};

use fanout::benchmarks::{
    explicit_memory_depth, gen_explicit_memory, gen_hadamard_test, gen_implicit_memory,
    gen_interference, gen_swap_test, gen_u_family, swap_test_exclusions, swap_test_fine_grained,
    Family, FamilyOptions, MemoryLayout, UFamily,
};
use fanout::decompose::abc;
use fanout::linalg::random::{haar_2x2, random_state};
use fanout::linalg::{circuit_unitary, mat2, phase_distance, sample};
use fanout::noise::{advantage, build_fidelity_table, run_monte_carlo, Scenario};
use fanout::report::{formula_depth, suite_infidelity, Scheduler};
use fanout::schedule::{asap_schedule, depth, fanout_align};
use fanout::synthesis::{synth_shared_1q, synth_shared_toffoli};
use fanout::{Circuit, ComplexMatrix, Gate, StateVector};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn report(id: u32, name: &str, f: impl FnOnce() -> Outcome) {
    let start = Instant::now();
    let out = f();
    let secs = start.elapsed().as_secs_f64();
    let line = match &out {
        Ok(msg) => format!("criterion {id:>2} {name}: PASS ({msg}; {secs:.2} s)"),
        Err(msg) => format!("criterion {id:>2} {name}: FAIL ({msg}; {secs:.2} s)"),
    };
    let _ = writeln!(std::io::stderr().lock(), "{line}");
    if let Err(msg) = out {
        panic!("criterion {id} failed: {msg}");
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Dense matrix built column by column from a basis-state map, independent
/// of the gate library.
fn dense(num_qubits: usize, f: impl Fn(usize) -> Vec<Complex64>) -> ComplexMatrix {
    let dim = 1 << num_qubits;
    let mut m = ComplexMatrix::zeros(dim, dim);
    for col in 0..dim {
        m.set_column(col, &f(col));
    }
    m
}

/// Applies `u` to bit `t` of every amplitude whose `control` bit is set.
fn apply_controlled(v: &mut [Complex64], control: usize, t: usize, u: &ComplexMatrix) {
    for x in 0..v.len() {
        if x >> control & 1 == 1 && x >> t & 1 == 0 {
            let y = x | 1 << t;
            let (a, b) = (v[x], v[y]);
            v[x] = u[(0, 0)] * a + u[(0, 1)] * b;
            v[y] = u[(1, 0)] * a + u[(1, 1)] * b;
        }
    }
}

fn controlled_product_oracle(
    num_qubits: usize,
    control: usize,
    ops: &[(usize, ComplexMatrix)],
) -> ComplexMatrix {
    dense(num_qubits, |col| {
        let mut v = vec![zero(); 1 << num_qubits];
        v[col] = Complex64::new(1.0, 0.0);
        for (t, u) in ops {
            apply_controlled(&mut v, control, *t, u);
        }
        v
    })
}

/// Permutation matrix of `x ↦ perm(x)`.
fn permutation_oracle(num_qubits: usize, perm: impl Fn(usize) -> usize) -> ComplexMatrix {
    dense(num_qubits, |col| {
        let mut v = vec![zero(); 1 << num_qubits];
        v[perm(col)] = Complex64::new(1.0, 0.0);
        v
    })
}

fn toffolis(shared: usize, pairs: &[(usize, usize)]) -> impl Fn(usize) -> usize + '_ {
    move |mut x| {
        for &(c, t) in pairs {
            if x >> shared & 1 == 1 && x >> c & 1 == 1 {
                x ^= 1 << t;
            }
        }
        x
    }
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

#[test]
fn criterion_01_controlled_single_qubit() {
    report(1, "controlled single-qubit identity", || {
        let start = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (mut worst_cu, mut worst_abc) = (0.0f64, 0.0f64);
        for _ in 0..1000 {
            let u = haar_2x2(&mut rng);
            let d = abc(&u).map_err(|e| e.to_string())?;
            let c = Circuit::from_gates(2, d.controlled_gates(0, 1));
            let got = circuit_unitary(&c).map_err(|e| e.to_string())?;
            let want = controlled_product_oracle(2, 0, &[(1, u)]);
            worst_cu = worst_cu.max(phase_distance(&got, &want).unwrap());
            let prod = &(&d.a * &d.b) * &d.c;
            worst_abc = worst_abc.max(prod.max_abs_diff(&mat2::identity()).unwrap());
        }
        let elapsed = start.elapsed();
        check(worst_cu <= 1e-9, || {
            format!("controlled-U deviation {worst_cu:.2e}")
        })?;
        check(worst_abc <= 1e-10, || {
            format!("A·B·C deviation {worst_abc:.2e}")
        })?;
        check(elapsed < Duration::from_secs(10), || {
            format!("took {elapsed:?}")
        })?;
        Ok(format!(
            "max deviation {worst_cu:.1e}, A·B·C {worst_abc:.1e}"
        ))
    });
}

#[test]
fn criterion_02_shared_control_templates() {
    report(2, "shared-control templates", || {
        let start = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut worst = 0.0f64;
        for r in 1..=6 {
            let pairs: Vec<(usize, ComplexMatrix)> =
                (1..=r).map(|t| (t, haar_2x2(&mut rng))).collect();
            let s = synth_shared_1q(0, &pairs).map_err(|e| e.to_string())?;
            check(depth(&s, &[]) == 5, || {
                format!("1q r={r}: depth {}", depth(&s, &[]))
            })?;
            let mut c = s.flatten();
            c.num_qubits = r + 1;
            let got = circuit_unitary(&c).unwrap();
            let want = controlled_product_oracle(r + 1, 0, &pairs);
            worst = worst.max(phase_distance(&got, &want).unwrap());
        }
        for r in 1..=3 {
            let pairs: Vec<(usize, usize)> = (0..r).map(|i| (2 * i + 1, 2 * i + 2)).collect();
            let s = synth_shared_toffoli(0, &pairs).map_err(|e| e.to_string())?;
            check(depth(&s, &[]) == 12, || {
                format!("toffoli r={r}: depth {}", depth(&s, &[]))
            })?;
            let n = 2 * r + 1;
            let mut c = s.flatten();
            c.num_qubits = n;
            let got = circuit_unitary(&c).unwrap();
            let want = permutation_oracle(n, toffolis(0, &pairs));
            worst = worst.max(phase_distance(&got, &want).unwrap());
        }
        check(worst <= 1e-9, || format!("deviation {worst:.2e}"))?;
        let elapsed = start.elapsed();
        check(elapsed < Duration::from_secs(30), || {
            format!("took {elapsed:?}")
        })?;
        Ok(format!("depths 5 and 12, max deviation {worst:.1e}"))
    });
}

fn two_shared_toffolis() -> Circuit {
    fanout::decompose::expand(&Circuit::from_gates(
        5,
        vec![Gate::ccx(0, 1, 2), Gate::ccx(0, 3, 4)],
    ))
}

#[test]
fn criterion_03_fine_grained_pin() {
    report(3, "fine-grained baseline pin", || {
        let d = depth(&asap_schedule(&two_shared_toffolis()), &[]);
        check(d == 21, || format!("depth {d}"))?;
        Ok("21 moments".into())
    });
}

#[test]
fn criterion_04_alignment() {
    report(4, "alignment pass", || {
        let c = two_shared_toffolis();
        let aligned = fanout_align(&c);
        let d = depth(&asap_schedule(&aligned), &[]);
        check(d == 12, || format!("depth {d}"))?;
        let want = permutation_oracle(5, toffolis(0, &[(1, 2), (3, 4)]));
        let err = phase_distance(&circuit_unitary(&aligned).unwrap(), &want).unwrap();
        check(err <= 1e-9, || format!("deviation {err:.2e}"))?;
        Ok(format!("12 moments, deviation {err:.1e}"))
    });
}

#[test]
fn criterion_05_swap_test() {
    report(5, "SWAP test", || {
        let ex = swap_test_exclusions();
        for k in 1..=8 {
            let b = gen_swap_test(k, true).map_err(|e| e.to_string())?;
            let sim = depth(&b.simultaneous(), &ex);
            let ser = depth(&b.serialized(), &ex);
            check(sim == 14, || format!("k={k}: optimized depth {sim}"))?;
            check(ser == 14 * k, || format!("k={k}: serialized depth {ser}"))?;
        }
        let un = depth(&gen_swap_test(1, false).unwrap().schedule, &ex);
        check(un == 36, || format!("unoptimized depth {un}"))?;
        let fine = depth(&swap_test_fine_grained(2).unwrap(), &ex);
        check(fine == 63, || format!("fine-grained k=2 depth {fine}"))?;

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut worst = 0.0f64;
        let mut worst_z = 0.0f64;
        for trial in 0..100u64 {
            let k = 1 + (trial % 3) as usize;
            let a = random_state(k, &mut rng);
            let b = random_state(k, &mut rng);
            let overlap = inner(a.amplitudes(), b.amplitudes()).norm_sqr();
            let want = (1.0 + overlap) / 2.0;
            let mut s = StateVector::product(&StateVector::zero(1), &StateVector::product(&a, &b));
            s.run(&gen_swap_test(k, true).unwrap().circuit())
                .map_err(|e| e.to_string())?;
            let p0 = s.prob_zero(0).unwrap();
            worst = worst.max((p0 - want).abs());
            if trial % 10 == 0 {
                let shots = 100_000;
                let [zeros, _] = sample(&s, 0, shots, trial).unwrap();
                let sigma = (want * (1.0 - want) / shots as f64).sqrt().max(1e-12);
                let z = (zeros as f64 / shots as f64 - want).abs() / sigma;
                worst_z = worst_z.max(z);
            }
        }
        check(worst <= 1e-9, || format!("P(0) deviation {worst:.2e}"))?;
        check(worst_z <= 3.0, || {
            format!("sampled estimate off by {worst_z:.2}σ")
        })?;
        Ok(format!(
            "14 / 36 / 63 / 14k, P(0) deviation {worst:.1e}, sampling within {worst_z:.2}σ"
        ))
    });
}

#[test]
fn criterion_06_hadamard_interference() {
    report(6, "Hadamard and interference contracts", || {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut worst = 0.0f64;
        let mut cases = 0;
        for kind in UFamily::ALL {
            for width in 1..=4 {
                for seed in 0..3 {
                    let u = gen_u_family(kind, width, 2, seed).map_err(|e| e.to_string())?;
                    let b = gen_hadamard_test(&u).map_err(|e| e.to_string())?;
                    let psi = random_state(width, &mut rng);
                    let mut u_psi = psi.clone();
                    u_psi.run(&u).unwrap();
                    let want = (1.0 + inner(psi.amplitudes(), u_psi.amplitudes()).re) / 2.0;
                    let mut s = StateVector::product(&StateVector::zero(1), &psi);
                    s.run(&b.circuit()).unwrap();
                    worst = worst.max((s.prob_zero(0).unwrap() - want).abs());

                    let u_b = gen_u_family(kind, width, 2, seed + 100).unwrap();
                    let i = gen_interference(&u, &u_b).map_err(|e| e.to_string())?;
                    check(i.num_qubits() == width + 1, || {
                        format!("interference width {} for k={width}", i.num_qubits())
                    })?;
                    let (mut sa, mut sb) = (StateVector::zero(width), StateVector::zero(width));
                    sa.run(&u).unwrap();
                    sb.run(&u_b).unwrap();
                    let want_re = inner(sb.amplitudes(), sa.amplitudes()).re;
                    let mut s = StateVector::zero(width + 1);
                    s.run(&i.circuit()).unwrap();
                    worst = worst.max((2.0 * s.prob_zero(0).unwrap() - 1.0 - want_re).abs());
                    cases += 1;
                }
            }
        }
        check(worst <= 1e-9, || format!("deviation {worst:.2e}"))?;
        Ok(format!("{cases} cases, max deviation {worst:.1e}"))
    });
}

/// Expected explicit-memory output: the load register receives `m_b` and
/// cell `b` receives the previous load value.
fn explicit_oracle(layout: &MemoryLayout, x: usize) -> usize {
    let n = layout.n;
    let addr = x & ((1 << n) - 1);
    let cell = layout.cell_qubits[addr][0];
    let load = layout.load_qubits[0];
    let (m, l) = (x >> cell & 1, x >> load & 1);
    let y = x & !(1 << cell) & !(1 << load);
    y | l << cell | m << load
}

#[test]
fn criterion_07_explicit_memory() {
    report(7, "explicit memory", || {
        let n = 3;
        let layout = MemoryLayout::explicit(n, 1);
        let mem = gen_explicit_memory(&layout).map_err(|e| e.to_string())?;
        let circuit = mem.circuit();
        let nq = layout.num_qubits();
        for addr in 0..1usize << n {
            for cells in 0..1usize << (1 << n) {
                let x = addr | cells << n;
                let mut s = StateVector::basis(nq, x);
                s.run(&circuit).unwrap();
                let want = explicit_oracle(&layout, x);
                let amp = s.amplitudes()[want].norm();
                check((amp - 1.0).abs() <= 1e-9, || {
                    format!("address {addr:03b}, cells {cells:08b}: |amp| = {amp}")
                })?;
                let load = want >> layout.load_qubits[0] & 1;
                check(load == cells >> addr & 1, || {
                    format!("address {addr:03b}: wrong value loaded")
                })?;
            }
        }

        let cells = 0b1000_0000usize;
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut amps = vec![zero(); 1 << nq];
        amps[cells << n] = Complex64::new(h, 0.0);
        amps[0b111 | cells << n] = Complex64::new(h, 0.0);
        let mut s = StateVector::from_amplitudes(amps.clone()).unwrap();
        s.run(&circuit).unwrap();
        let mut want = vec![zero(); 1 << nq];
        for x in [cells << n, 0b111 | cells << n] {
            want[explicit_oracle(&layout, x)] = Complex64::new(h, 0.0);
        }
        let fid = inner(&want, s.amplitudes()).norm_sqr();
        check((fid - 1.0).abs() <= 1e-9, || {
            format!("superposed fidelity {fid}")
        })?;

        let d: Vec<usize> = (2..=4)
            .map(|n| {
                depth(
                    &gen_explicit_memory(&MemoryLayout::explicit(n, 1))
                        .unwrap()
                        .simultaneous(),
                    &[],
                )
            })
            .collect();
        let slope = d[1] as i64 - d[0] as i64;
        let residual = d[2] as i64 - d[1] as i64 - slope;
        check(residual == 0, || format!("depths {d:?} not affine"))?;
        for (i, n) in (2..=4).enumerate() {
            check(d[i] == explicit_memory_depth(n), || {
                format!(
                    "n={n}: depth {} vs per-level constant {}",
                    d[i],
                    explicit_memory_depth(n)
                )
            })?;
        }
        Ok(format!(
            "2048 basis cases exact, superposed fidelity {fid:.12}, depths {d:?} (slope {slope})"
        ))
    });
}

#[test]
fn criterion_08_implicit_memory() {
    report(8, "implicit memory", || {
        let data = [2u64, 3, 5, 7];
        let mem = gen_implicit_memory(&data, 3).map_err(|e| e.to_string())?;
        let layout = MemoryLayout::implicit(2, 3);
        for (addr, &value) in data.iter().enumerate() {
            let mut s = StateVector::basis(layout.num_qubits(), addr);
            s.run(&mem.circuit()).unwrap();
            let want = addr | (value as usize) << 2;
            let amp = s.amplitudes()[want].norm();
            check((amp - 1.0).abs() <= 1e-12, || {
                format!("address {addr}: output is not {value}")
            })?;
        }
        let mut depths = Vec::new();
        for w in [3, 12] {
            let b = gen_implicit_memory(&data, w).unwrap();
            let d = depth(&b.simultaneous(), &[]);
            check(d == 4, || format!("W={w}: depth {d}"))?;
            depths.push(d);
        }
        let serial = |w: usize| {
            let opts = FamilyOptions {
                bitwidth: Some(w),
                data: Some(data.to_vec()),
                ..FamilyOptions::default()
            };
            formula_depth(Family::ImplicitMemory, 2, Scheduler::FormulaQrom, &opts).unwrap()
        };
        let (s3, s12) = (serial(3), serial(12));
        check(s12 > s3, || {
            format!("serial line {s3} at W=3, {s12} at W=12")
        })?;
        Ok(format!(
            "outputs 2 3 5 7, depth {depths:?} at W = 3, 12, serial line {s3} -> {s12}"
        ))
    });
}

#[test]
fn criterion_09_noise_model() {
    report(9, "noise model", || {
        let start = Instant::now();
        let ns: Vec<usize> = (2..=8).collect();
        let (shots, seed) = (100_000, 2020);
        let mut summary = Vec::new();
        for scenario in Scenario::ALL {
            let rows = run_monte_carlo(&ns, scenario, shots, seed).map_err(|e| e.to_string())?;
            let mut prev: Option<(f64, f64)> = None;
            for &n in &ns {
                let (adv, se) = advantage(&rows, n).ok_or("missing row")?;
                check(adv >= -3.0 * se, || {
                    format!(
                        "(a) {}: N={n} advantage {adv:.5} ± {se:.5}",
                        scenario.as_str()
                    )
                })?;
                if let Some((p, pse)) = prev {
                    check(adv >= p - 3.0 * se.hypot(pse), || {
                        format!(
                            "(d) {}: N={n} advantage {adv:.5} < {p:.5}",
                            scenario.as_str()
                        )
                    })?;
                }
                prev = Some((adv, se));
            }
            let (adv8, _) = advantage(&rows, 8).unwrap();
            match scenario {
                Scenario::Current => check((0.003..=0.03).contains(&adv8), || {
                    format!("(b) current advantage at N=8 is {adv8:.5}")
                })?,
                Scenario::LongLaser => check(adv8 <= 0.003, || {
                    format!("(c) long_laser advantage at N=8 is {adv8:.5}")
                })?,
                _ => {}
            }
            summary.push(format!("{} {adv8:.4}", scenario.as_str()));
        }
        let elapsed = start.elapsed();
        check(elapsed < Duration::from_secs(600), || {
            format!("took {elapsed:?}")
        })?;
        Ok(format!("advantage at N=8: {}", summary.join(", ")))
    });
}

#[test]
fn criterion_10_fidelity_product() {
    report(10, "fidelity product", || {
        let (shots, seed) = (100_000, 2020);
        let table = |s| build_fidelity_table(s, shots, seed).map_err(|e| e.to_string());
        let cur = suite_infidelity(&table(Scenario::Current)?, 0).map_err(|e| e.to_string())?;
        let low =
            suite_infidelity(&table(Scenario::LowOverrotation)?, 0).map_err(|e| e.to_string())?;
        check(cur.len() == 5 && low.len() == 5, || {
            "expected five benchmarks".into()
        })?;
        let mut parts = Vec::new();
        for (c, l) in cur.iter().zip(&low) {
            check(c.reduction > 0.0, || {
                format!("{}: reduction {:.4}", c.benchmark, c.reduction)
            })?;
            check(l.reduction > c.reduction, || {
                format!(
                    "{}: low_overrotation {:.4} not above current {:.4}",
                    c.benchmark, l.reduction, c.reduction
                )
            })?;
            for r in [c.reduction, l.reduction] {
                check((0.02..=0.40).contains(&r), || {
                    format!("{}: reduction {r:.4} outside [0.02, 0.40]", c.benchmark)
                })?;
            }
            parts.push(format!(
                "{} {:.1}%/{:.1}%",
                c.benchmark,
                100.0 * c.reduction,
                100.0 * l.reduction
            ));
        }
        Ok(parts.join(", "))
    });
}
