use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::{ComplexMatrix, StateVector};

/// Haar-random element of U(2).
pub fn haar_2x2<R: Rng + ?Sized>(rng: &mut R) -> ComplexMatrix {
    let g: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
    let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
    let a = Complex64::new(g[0], g[1]) / norm;
    let b = Complex64::new(g[2], g[3]) / norm;
    let phase = Complex64::from_polar(1.0, rng.random_range(0.0..2.0 * PI));
    ComplexMatrix::from_rows([[a, -b.conj()], [b, a.conj()]]).scale(phase)
}

/// Uniformly random pure state on `num_qubits` qubits.
pub fn random_state<R: Rng + ?Sized>(num_qubits: usize, rng: &mut R) -> StateVector {
    let mut amps: Vec<Complex64> = (0..1usize << num_qubits)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut amps {
        *a /= norm;
    }
    StateVector::from_amplitudes(amps).expect("normalized by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn haar_samples_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            assert!(haar_2x2(&mut rng).is_unitary(1e-12));
        }
    }

    #[test]
    fn random_state_is_normalized() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let s = random_state(5, &mut rng);
        assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
    }
}
