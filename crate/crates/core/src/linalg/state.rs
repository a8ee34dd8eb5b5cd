use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use super::{check_gate_qubits, ComplexMatrix, LinalgError};
use crate::circuit::{Circuit, Gate, GateKind};

const NORM_TOL: f64 = 1e-10;

/// Pure state on `num_qubits` qubits; amplitude index bit `q` is qubit `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩`.
    pub fn zero(num_qubits: usize) -> Self {
        Self::basis(num_qubits, 0)
    }

    pub fn basis(num_qubits: usize, index: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << num_qubits];
        amps[index] = Complex64::new(1.0, 0.0);
        Self { num_qubits, amps }
    }

    /// Takes ownership of `amps`; the length must be a power of two and the
    /// vector normalized within `1e-10`.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self, LinalgError> {
        if amps.is_empty() || !amps.len().is_power_of_two() {
            return Err(LinalgError::InvalidArgument(format!(
                "amplitude count {} is not a power of two",
                amps.len()
            )));
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(LinalgError::NotNormalized(norm));
        }
        Ok(Self {
            num_qubits: amps.len().trailing_zeros() as usize,
            amps,
        })
    }

    /// Product state with `low` on the first qubits and `high` above them.
    pub fn product(low: &StateVector, high: &StateVector) -> Self {
        let mut amps = Vec::with_capacity(low.amps.len() * high.amps.len());
        for h in &high.amps {
            for l in &low.amps {
                amps.push(h * l);
            }
        }
        Self {
            num_qubits: low.num_qubits + high.num_qubits,
            amps,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64, LinalgError> {
        if self.num_qubits != other.num_qubits {
            return Err(LinalgError::DimensionMismatch {
                left: (self.amps.len(), 1),
                right: (other.amps.len(), 1),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Probability that `qubit` reads 0.
    pub fn prob_zero(&self, qubit: usize) -> Result<f64, LinalgError> {
        if qubit >= self.num_qubits {
            return Err(LinalgError::QubitOutOfRange {
                qubit,
                num_qubits: self.num_qubits,
            });
        }
        let m = 1usize << qubit;
        Ok(self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & m == 0)
            .map(|(_, a)| a.norm_sqr())
            .sum())
    }

    /// Applies one gate in place. `MEASURE` is terminal and leaves the state untouched.
    pub fn apply(&mut self, gate: &Gate) -> Result<(), LinalgError> {
        check_gate_qubits(gate, self.num_qubits)?;
        let q = &gate.qubits;
        match &gate.kind {
            GateKind::Measure => {}
            GateKind::Cnot | GateKind::Fanout => self.controlled_x(&[(q[0], true)], &q[1..]),
            GateKind::Ccx => self.controlled_x(&[(q[0], true), (q[1], true)], &q[2..]),
            GateKind::McxFanout(pol) => {
                let controls: Vec<(usize, bool)> =
                    q.iter().copied().zip(pol.iter().copied()).collect();
                self.controlled_x(&controls, &q[pol.len()..]);
            }
            GateKind::Swap => self.controlled_swap(None, q[0], q[1]),
            GateKind::Cswap => self.controlled_swap(Some(q[0]), q[1], q[2]),
            kind => {
                let m = kind.matrix_2x2().expect("single-qubit kind");
                self.apply_1q(q[0], &m);
            }
        }
        Ok(())
    }

    /// Applies every gate of `circuit` in order.
    pub fn run(&mut self, circuit: &Circuit) -> Result<(), LinalgError> {
        if circuit.num_qubits != self.num_qubits {
            return Err(LinalgError::InvalidArgument(format!(
                "circuit has {} qubits, state has {}",
                circuit.num_qubits, self.num_qubits
            )));
        }
        circuit.gates.iter().try_for_each(|g| self.apply(g))
    }

    /// Applies a 2×2 matrix to `qubit`. The caller guarantees the index is in range.
    pub fn apply_1q(&mut self, qubit: usize, m: &ComplexMatrix) {
        let (m00, m01, m10, m11) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
        let bit = 1usize << qubit;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let a0 = self.amps[i];
                let a1 = self.amps[i | bit];
                self.amps[i] = m00 * a0 + m01 * a1;
                self.amps[i | bit] = m10 * a0 + m11 * a1;
            }
        }
    }

    /// Multiplies amplitudes by `e^{iφ}` wherever `qubit` is 1.
    pub fn apply_phase(&mut self, qubit: usize, phi: f64) {
        let bit = 1usize << qubit;
        let f = Complex64::from_polar(1.0, phi);
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & bit != 0 {
                *a *= f;
            }
        }
    }

    fn controlled_x(&mut self, controls: &[(usize, bool)], targets: &[usize]) {
        let cmask: usize = controls.iter().map(|&(c, _)| 1usize << c).sum();
        let want: usize = controls
            .iter()
            .filter(|&&(_, p)| p)
            .map(|&(c, _)| 1usize << c)
            .sum();
        let tmask: usize = targets.iter().map(|&t| 1usize << t).sum();
        let first = 1usize << targets[0];
        for i in 0..self.amps.len() {
            if i & cmask == want && i & first == 0 {
                self.amps.swap(i, i ^ tmask);
            }
        }
    }

    fn controlled_swap(&mut self, control: Option<usize>, a: usize, b: usize) {
        let cbit = control.map_or(0, |c| 1usize << c);
        let (ba, bb) = (1usize << a, 1usize << b);
        for i in 0..self.amps.len() {
            if i & cbit == cbit && i & ba != 0 && i & bb == 0 {
                self.amps.swap(i, i ^ ba ^ bb);
            }
        }
    }
}

/// Returns the state after `gate`.
pub fn apply_gate(state: &StateVector, gate: &Gate) -> Result<StateVector, LinalgError> {
    let mut out = state.clone();
    out.apply(gate)?;
    Ok(out)
}

/// `|⟨ideal|noisy⟩|²`.
pub fn fidelity(ideal: &StateVector, noisy: &StateVector) -> Result<f64, LinalgError> {
    Ok(ideal.inner(noisy)?.norm_sqr().clamp(0.0, 1.0))
}

/// Draws `shots` measurements of `qubit`; returns `[zeros, ones]`.
pub fn sample(
    state: &StateVector,
    qubit: usize,
    shots: u64,
    seed: u64,
) -> Result<[u64; 2], LinalgError> {
    if shots == 0 {
        return Err(LinalgError::InvalidArgument("shots must be >= 1".into()));
    }
    let p0 = state.prob_zero(qubit)?.clamp(0.0, 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zeros = Binomial::new(shots, p0)
        .expect("p0 clamped to [0,1]")
        .sample(&mut rng);
    Ok([zeros, shots - zeros])
}
