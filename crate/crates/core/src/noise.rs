//! Trapped-ion noise model for fan-out: Mølmer–Sørensen overrotation plus laser
//! dephasing, compared between one simultaneous gate and N serial CNOTs.
//!
//! Given the control value, the entangling interaction is a product of
//! single-qubit X rotations and dephasing is diagonal, so a shot is tracked as
//! two branches of product states. That keeps a shot at O(N).

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{Gate, GateKind};
use crate::linalg::StateVector;
use crate::schedule::ScheduledCircuit;

pub const MAX_TARGETS: usize = 12;
pub const MIN_SHOTS: u64 = 1000;
pub const ONE_QUBIT_FIDELITY: f64 = 0.9999;
/// Largest fan-out with a table entry.
pub const TABLE_MAX_FANOUT: usize = 8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NoiseError {
    #[error("target count {0} outside 1..={MAX_TARGETS}")]
    TargetCount(usize),
    #[error("need at least {MIN_SHOTS} shots, got {0}")]
    Shots(u64),
    #[error("invalid noise parameters: {0}")]
    Params(String),
    #[error("no Monte Carlo data for {0}")]
    MissingData(String),
    #[error("no fidelity for gate class `{0}`")]
    UnknownClass(String),
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NoiseParams {
    /// Standard deviation of the relative overrotation ε.
    pub overrotation_sigma: f64,
    /// Seconds per entangling gate.
    pub gate_time: f64,
    /// Seconds.
    pub laser_coherence: f64,
    /// Seconds of the single-qubit corrections; adds dephasing on targets.
    pub single_qubit_time: f64,
    /// Use ε = `overrotation_sigma` on every gate instead of sampling it.
    pub systematic: bool,
    /// Dephase the control only; targets stay coherent.
    pub control_only_dephasing: bool,
}

impl NoiseParams {
    pub fn new(
        overrotation_sigma: f64,
        gate_time: f64,
        laser_coherence: f64,
    ) -> Result<Self, NoiseError> {
        let p = Self {
            overrotation_sigma,
            gate_time,
            laser_coherence,
            single_qubit_time: 0.0,
            systematic: false,
            control_only_dephasing: false,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), NoiseError> {
        let vals = [
            self.overrotation_sigma,
            self.gate_time,
            self.laser_coherence,
            self.single_qubit_time,
        ];
        if vals
            .iter()
            .any(|v| !(v.is_finite() || v.is_infinite() && *v > 0.0) || *v < 0.0)
        {
            return Err(NoiseError::Params(format!("{self:?}")));
        }
        if self.laser_coherence <= 0.0 {
            return Err(NoiseError::Params("laser_coherence must be > 0".into()));
        }
        Ok(())
    }

    /// Perfect gates.
    pub fn noiseless() -> Self {
        Self {
            overrotation_sigma: 0.0,
            gate_time: 0.0,
            laser_coherence: f64::INFINITY,
            single_qubit_time: 0.0,
            systematic: false,
            control_only_dephasing: false,
        }
    }

    fn dephasing_sigma(&self, duration: f64) -> f64 {
        (2.0 * duration / self.laser_coherence).sqrt()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scenario {
    Current,
    LowOverrotation,
    LongLaser,
    Both,
}

impl Scenario {
    pub const ALL: [Scenario; 4] = [
        Scenario::Current,
        Scenario::LowOverrotation,
        Scenario::LongLaser,
        Scenario::Both,
    ];

    pub fn params(self) -> NoiseParams {
        let mut p = NoiseParams::new(0.05, 100e-6, 80e-3).expect("valid constants");
        if matches!(self, Scenario::LowOverrotation | Scenario::Both) {
            p.overrotation_sigma /= 5.0;
        }
        if matches!(self, Scenario::LongLaser | Scenario::Both) {
            p.laser_coherence *= 5.0;
        }
        p
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Scenario::Current => "current",
            Scenario::LowOverrotation => "low_overrotation",
            Scenario::LongLaser => "long_laser",
            Scenario::Both => "both",
        }
    }

    /// Human-readable description used in CSV and plots.
    pub fn label(self) -> String {
        let p = self.params();
        format!(
            "{:.0}% overrotation, {:.0} ms laser coherence",
            p.overrotation_sigma * 100.0,
            p.laser_coherence * 1e3
        )
    }
}

impl FromStr for Scenario {
    type Err = NoiseError;

    fn from_str(s: &str) -> Result<Self, NoiseError> {
        let norm = s.replace('-', "_");
        Scenario::ALL
            .into_iter()
            .find(|x| x.as_str() == norm)
            .ok_or_else(|| NoiseError::UnknownScenario(s.to_string()))
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Simultaneous,
    Serial,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Simultaneous => "simultaneous",
            Mode::Serial => "serial",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `(|0⟩·amp[0]·⊗ targets[0] + |1⟩·amp[1]·⊗ targets[1])`, unnormalized branches.
struct Branches {
    amp: [Complex64; 2],
    targets: [Vec<[Complex64; 2]>; 2],
}

impl Branches {
    fn plus_control(n: usize) -> Self {
        let zero = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        let a = Complex64::new(FRAC_1_SQRT_2, 0.0);
        Self {
            amp: [a, a],
            targets: [vec![zero; n], vec![zero; n]],
        }
    }

    /// Entangling gate on `targets` with overrotation `eps`, followed by the
    /// ideal corrections `Rx(−π/2)` on the targets and `diag(1, i^{−m})` on the control.
    fn entangle(&mut self, targets: &[usize], eps: f64) {
        let theta = (1.0 + eps) * FRAC_PI_4;
        for (c, sign) in [(0usize, 1.0), (1, -1.0)] {
            let a = sign * theta - FRAC_PI_4;
            let (cos, sin) = (a.cos(), a.sin());
            for &t in targets {
                let [v0, v1] = self.targets[c][t];
                let mis = Complex64::new(0.0, -sin);
                self.targets[c][t] = [v0 * cos + v1 * mis, v0 * mis + v1 * cos];
            }
        }
        self.amp[1] *= Complex64::i().powu(4 - (targets.len() % 4) as u32);
    }

    fn dephase_control(&mut self, phi: f64) {
        self.amp[0] *= Complex64::from_polar(1.0, -phi / 2.0);
        self.amp[1] *= Complex64::from_polar(1.0, phi / 2.0);
    }

    fn dephase_target(&mut self, t: usize, phi: f64) {
        let (m, p) = (
            Complex64::from_polar(1.0, -phi / 2.0),
            Complex64::from_polar(1.0, phi / 2.0),
        );
        for c in 0..2 {
            self.targets[c][t][0] *= m;
            self.targets[c][t][1] *= p;
        }
    }

    /// `|⟨GHZ|ψ⟩|²`.
    fn ghz_fidelity(&self) -> f64 {
        let mut overlap = Complex64::new(0.0, 0.0);
        for c in 0..2 {
            let prod: Complex64 = self.targets[c].iter().map(|v| v[c]).product();
            overlap += self.amp[c] * prod;
        }
        (overlap * FRAC_1_SQRT_2).norm_sqr()
    }

    fn to_state(&self) -> StateVector {
        let n = self.targets[0].len();
        let amps = (0..1usize << (n + 1))
            .map(|x| {
                let c = x & 1;
                let prod: Complex64 = (0..n)
                    .map(|t| self.targets[c][t][x >> (t + 1) & 1])
                    .product();
                self.amp[c] * prod
            })
            .collect();
        StateVector::from_amplitudes(amps).expect("unitary evolution keeps the norm")
    }
}

fn simulate<R: Rng + ?Sized>(n: usize, params: &NoiseParams, mode: Mode, rng: &mut R) -> Branches {
    let eps_dist = Normal::new(0.0, params.overrotation_sigma).expect("validated sigma");
    let ctrl_dist = Normal::new(0.0, params.dephasing_sigma(params.gate_time)).expect("finite");
    let tgt_dist = Normal::new(
        0.0,
        params.dephasing_sigma(params.gate_time + params.single_qubit_time),
    )
    .expect("finite");
    let eps = |rng: &mut R| {
        if params.systematic {
            params.overrotation_sigma
        } else {
            eps_dist.sample(rng)
        }
    };
    let mut b = Branches::plus_control(n);
    let all: Vec<usize> = (0..n).collect();
    let groups: Vec<&[usize]> = match mode {
        Mode::Simultaneous => vec![&all[..]],
        Mode::Serial => all.chunks(1).collect(),
    };
    for targets in groups {
        b.entangle(targets, eps(rng));
        b.dephase_control(ctrl_dist.sample(rng));
        if !params.control_only_dephasing {
            for &t in targets {
                b.dephase_target(t, tgt_dist.sample(rng));
            }
        }
    }
    b
}

fn check_targets(n: usize) -> Result<(), NoiseError> {
    if (1..=MAX_TARGETS).contains(&n) {
        Ok(())
    } else {
        Err(NoiseError::TargetCount(n))
    }
}

/// One stochastic run of fan-out from qubit 0 onto qubits `1..=n`, starting
/// from `H(0)|0…0⟩`. Noiseless parameters give the GHZ state.
pub fn noisy_fanout_shot<R: Rng + ?Sized>(
    n: usize,
    params: &NoiseParams,
    mode: Mode,
    rng: &mut R,
) -> Result<StateVector, NoiseError> {
    check_targets(n)?;
    params.validate()?;
    Ok(simulate(n, params, mode, rng).to_state())
}

/// GHZ fidelity of one shot without building the state vector.
pub fn shot_fidelity<R: Rng + ?Sized>(
    n: usize,
    params: &NoiseParams,
    mode: Mode,
    rng: &mut R,
) -> Result<f64, NoiseError> {
    check_targets(n)?;
    params.validate()?;
    Ok(simulate(n, params, mode, rng).ghz_fidelity())
}

/// The ideal output `(|0…0⟩ + |1…1⟩)/√2` on `n + 1` qubits.
pub fn ghz_state(n: usize) -> StateVector {
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << (n + 1)];
    amps[0] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    amps[(1 << (n + 1)) - 1] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    StateVector::from_amplitudes(amps).expect("normalized")
}

/// One line of Monte Carlo output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct McRow {
    pub scenario: String,
    pub label: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub mode: Mode,
    pub shots: u64,
    pub mean_fidelity: f64,
    pub std_error: f64,
    pub seed: u64,
}

fn shot_rng(seed: u64, n: usize, mode: Mode, shot: u64) -> ChaCha8Rng {
    let key = (n as u64) << 1 | (mode == Mode::Serial) as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ key.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    rng.set_stream(shot);
    rng
}

/// Mean and standard error over `shots` runs. Each shot has its own RNG stream,
/// so the result does not depend on how rayon splits the work.
pub fn estimate(
    n: usize,
    params: &NoiseParams,
    mode: Mode,
    shots: u64,
    seed: u64,
) -> Result<(f64, f64), NoiseError> {
    check_targets(n)?;
    params.validate()?;
    let fids: Vec<f64> = (0..shots)
        .into_par_iter()
        .map(|shot| simulate(n, params, mode, &mut shot_rng(seed, n, mode, shot)).ghz_fidelity())
        .collect();
    let count = fids.len() as f64;
    let mean = fids.iter().sum::<f64>() / count;
    let var = fids.iter().map(|f| (f - mean).powi(2)).sum::<f64>() / (count - 1.0).max(1.0);
    Ok((mean, (var / count).sqrt()))
}

/// Both modes for every `n`, with custom parameters.
pub fn run_monte_carlo_with(
    ns: &[usize],
    name: &str,
    label: &str,
    params: &NoiseParams,
    shots: u64,
    seed: u64,
) -> Result<Vec<McRow>, NoiseError> {
    if shots < MIN_SHOTS {
        return Err(NoiseError::Shots(shots));
    }
    let mut rows = Vec::with_capacity(2 * ns.len());
    for &n in ns {
        for mode in [Mode::Simultaneous, Mode::Serial] {
            let (mean_fidelity, std_error) = estimate(n, params, mode, shots, seed)?;
            rows.push(McRow {
                scenario: name.to_string(),
                label: label.to_string(),
                n,
                mode,
                shots,
                mean_fidelity,
                std_error,
                seed,
            });
        }
    }
    Ok(rows)
}

pub fn run_monte_carlo(
    ns: &[usize],
    scenario: Scenario,
    shots: u64,
    seed: u64,
) -> Result<Vec<McRow>, NoiseError> {
    run_monte_carlo_with(
        ns,
        scenario.as_str(),
        &scenario.label(),
        &scenario.params(),
        shots,
        seed,
    )
}

fn find(rows: &[McRow], n: usize, mode: Mode) -> Option<&McRow> {
    rows.iter().find(|r| r.n == n && r.mode == mode)
}

/// `(mean_sim − mean_serial, combined standard error)` at `n`.
pub fn advantage(rows: &[McRow], n: usize) -> Option<(f64, f64)> {
    let s = find(rows, n, Mode::Simultaneous)?;
    let r = find(rows, n, Mode::Serial)?;
    Some((
        s.mean_fidelity - r.mean_fidelity,
        s.std_error.hypot(r.std_error),
    ))
}

/// Per-class gate fidelities.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FidelityTable {
    pub scenario: String,
    pub one_qubit: f64,
    pub cnot: f64,
    /// Keyed by target count, `2..=8`.
    pub fanout: BTreeMap<usize, f64>,
}

impl FidelityTable {
    /// Needs serial data at N=1 and simultaneous data at N=2..=8. FANOUT values
    /// are clamped to be non-increasing in N.
    pub fn from_rows(scenario: &str, rows: &[McRow]) -> Result<Self, NoiseError> {
        let cnot = find(rows, 1, Mode::Serial)
            .ok_or_else(|| NoiseError::MissingData("serial N=1".into()))?
            .mean_fidelity;
        let mut fanout = BTreeMap::new();
        let mut floor = cnot;
        for n in 2..=TABLE_MAX_FANOUT {
            let f = find(rows, n, Mode::Simultaneous)
                .ok_or_else(|| NoiseError::MissingData(format!("simultaneous N={n}")))?
                .mean_fidelity;
            floor = floor.min(f);
            fanout.insert(n, floor);
        }
        Ok(Self {
            scenario: scenario.to_string(),
            one_qubit: ONE_QUBIT_FIDELITY,
            cnot,
            fanout,
        })
    }

    /// `None` for gates that carry no cost (MEASURE).
    pub fn gate_fidelity(&self, g: &Gate) -> Result<Option<f64>, NoiseError> {
        match &g.kind {
            GateKind::Measure => Ok(None),
            GateKind::Cnot => Ok(Some(self.cnot)),
            GateKind::Fanout => {
                let n = g.targets().len();
                self.fanout
                    .get(&n)
                    .copied()
                    .map(Some)
                    .ok_or_else(|| NoiseError::UnknownClass(format!("fanout({n})")))
            }
            k if g.is_single_qubit() && k.matrix_2x2().is_some() => Ok(Some(self.one_qubit)),
            _ => Err(NoiseError::UnknownClass(g.name().to_string())),
        }
    }
}

pub fn build_fidelity_table(
    scenario: Scenario,
    shots: u64,
    seed: u64,
) -> Result<FidelityTable, NoiseError> {
    let ns: Vec<usize> = (1..=TABLE_MAX_FANOUT).collect();
    let rows = run_monte_carlo(&ns, scenario, shots, seed)?;
    FidelityTable::from_rows(scenario.as_str(), &rows)
}

/// Product of per-gate fidelities; MEASURE is skipped.
pub fn fidelity_product(s: &ScheduledCircuit, table: &FidelityTable) -> Result<f64, NoiseError> {
    s.gates().try_fold(1.0, |acc, g| {
        Ok(acc * table.gate_fidelity(g)?.unwrap_or(1.0))
    })
}
