//! Seeded random ensembles for tests and verification campaigns.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::cvar::DiscreteDistribution;
use crate::densesim::{DensityMatrix, DiagonalObservable};
use crate::pauli::{pauli_dim, PauliChannel};
use crate::{Error, Result};

/// SplitMix64 finalizer; decorrelates per-trial seeds drawn from one
/// campaign seed.
pub fn trial_seed(campaign_seed: u64, trial: u64) -> u64 {
    let mut z = campaign_seed
        .wrapping_add(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(trial.wrapping_mul(0xD1B5_4A32_D192_ED03));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform point on the probability simplex.
pub fn random_probability_vector<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<f64> {
    let raw: Vec<f64> = (0..len).map(|_| rng.sample(Exp1)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / total).collect()
}

/// Exponential weights with every non-identity entry scaled by one common
/// `u ~ U(0, 1)`, resampled until the identity entry is the largest.
pub fn random_identity_dominant_channel<R: Rng + ?Sized>(
    num_qubits: usize,
    rng: &mut R,
) -> Result<PauliChannel> {
    let d = pauli_dim(num_qubits);
    loop {
        let u: f64 = rng.random();
        let mut w: Vec<f64> = (0..d).map(|_| rng.sample::<f64, _>(Exp1)).collect();
        for x in &mut w[1..] {
            *x *= u;
        }
        let c = PauliChannel::from_weights(num_qubits, w)?;
        if c.is_identity_dominant() && c.identity_weight() > 0.0 {
            return Ok(c);
        }
    }
}

fn ginibre<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DMatrix<Complex64> {
    DMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// `G G† / Tr(G G†)` for a complex Gaussian `G`; full rank almost surely.
pub fn random_density_matrix<R: Rng + ?Sized>(num_qubits: usize, rng: &mut R) -> Result<DensityMatrix> {
    if num_qubits == 0 || num_qubits > crate::densesim::MAX_SIM_QUBITS {
        return Err(Error::DenseLimit(format!("{num_qubits} qubits")));
    }
    let g = ginibre(1 << num_qubits, rng);
    let mut m = &g * g.adjoint();
    let tr = m.trace();
    m /= tr;
    let herm = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
    DensityMatrix::new(num_qubits, herm)
}

/// Haar-random unitary from the QR decomposition of a Ginibre matrix, with
/// the phases of `R`'s diagonal moved into `Q`.
pub fn random_unitary<R: Rng + ?Sized>(num_qubits: usize, rng: &mut R) -> Result<DMatrix<Complex64>> {
    if num_qubits == 0 || num_qubits > crate::densesim::MAX_SIM_QUBITS {
        return Err(Error::DenseLimit(format!("{num_qubits} qubits")));
    }
    let qr = ginibre(1 << num_qubits, rng).qr();
    let r = qr.r();
    let mut q = qr.q();
    for (j, mut col) in q.column_iter_mut().enumerate() {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        col *= phase;
    }
    Ok(q)
}

/// Eigenvalues i.i.d. `U(−1, 1)`.
pub fn random_diagonal_observable<R: Rng + ?Sized>(
    num_qubits: usize,
    rng: &mut R,
) -> Result<DiagonalObservable> {
    let ev = (0..1usize << num_qubits)
        .map(|_| rng.random_range(-1.0..1.0))
        .collect();
    DiagonalObservable::new(num_qubits, ev)
}

/// `atoms` distinct values in `[−1, 1]` with simplex-uniform weights.
pub fn random_distribution<R: Rng + ?Sized>(atoms: usize, rng: &mut R) -> Result<DiscreteDistribution> {
    let probs = random_probability_vector(atoms, rng);
    let pairs = probs
        .into_iter()
        .map(|p| (rng.random_range(-1.0..1.0), p))
        .collect();
    DiscreteDistribution::new(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn seeds_are_distinct_and_stable() {
        let seeds: Vec<u64> = (0..1000).map(|t| trial_seed(42, t)).collect();
        let mut sorted = seeds.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), seeds.len());
        assert_eq!(trial_seed(42, 7), seeds[7]);
        assert_ne!(trial_seed(43, 7), seeds[7]);
    }

    #[test]
    fn channels_are_identity_dominant() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for n in 1..=2 {
            for _ in 0..200 {
                let c = random_identity_dominant_channel(n, &mut rng).unwrap();
                assert!(c.is_identity_dominant());
                assert!((c.probs().iter().sum::<f64>() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn states_are_physical() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..=4 {
            let rho = random_density_matrix(n, &mut rng).unwrap();
            assert!((rho.trace() - 1.0).abs() < 1e-12);
            assert!(rho.min_eigenvalue() > -1e-12);
        }
    }

    #[test]
    fn unitaries_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=3 {
            let u = random_unitary(n, &mut rng).unwrap();
            assert!(crate::densesim::gates::is_unitary(&u, 1e-12));
        }
    }

    #[test]
    fn observables_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let o = random_diagonal_observable(3, &mut rng).unwrap();
        assert!(o.eigenvalues().iter().all(|x| (-1.0..1.0).contains(x)));
    }
}
