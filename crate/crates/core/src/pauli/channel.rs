use serde::Serialize;

use super::transform::{self, is_power_of_four};
use super::{pauli_dim, CliffordPermutation, MAX_DENSE_QUBITS};
use crate::{Error, Result, NORMALIZATION_TOL};

/// Magnitude below which fast-transform round-off is snapped to zero.
const ROUNDOFF_FLOOR: f64 = 1e-14;

/// A Pauli channel `ρ ↦ Σ_i probs[i]·E_i ρ E_i†` on `num_qubits` qubits.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PauliChannel {
    num_qubits: usize,
    probs: Vec<f64>,
}

impl PauliChannel {
    /// Validates length `4^N`, nonnegativity and normalization within 1e-12.
    pub fn new(num_qubits: usize, probs: Vec<f64>) -> Result<Self> {
        Self::check_shape(num_qubits, &probs)?;
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::domain(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        Ok(Self { num_qubits, probs })
    }

    /// Builds a channel from nonnegative weights by explicit renormalization.
    pub fn from_weights(num_qubits: usize, weights: Vec<f64>) -> Result<Self> {
        Self::check_shape(num_qubits, &weights)?;
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(Error::Degenerate("weights sum to zero".into()));
        }
        let probs = weights.into_iter().map(|w| w / total).collect();
        Ok(Self { num_qubits, probs })
    }

    /// Infers `N` from a power-of-four length.
    pub fn from_probs(probs: Vec<f64>) -> Result<Self> {
        if !is_power_of_four(probs.len()) {
            return Err(Error::dim(format!(
                "length {} is not a power of four",
                probs.len()
            )));
        }
        let n = probs.len().trailing_zeros() as usize / 2;
        Self::new(n, probs)
    }

    fn check_shape(num_qubits: usize, probs: &[f64]) -> Result<()> {
        if num_qubits == 0 {
            return Err(Error::domain("a channel needs at least one qubit"));
        }
        if num_qubits > MAX_DENSE_QUBITS {
            return Err(Error::DenseLimit(format!(
                "{num_qubits} qubits exceeds the dense limit of {MAX_DENSE_QUBITS}"
            )));
        }
        if probs.len() != pauli_dim(num_qubits) {
            return Err(Error::dim(format!(
                "expected {} probabilities for {num_qubits} qubits, got {}",
                pauli_dim(num_qubits),
                probs.len()
            )));
        }
        if let Some((i, p)) = probs
            .iter()
            .enumerate()
            .find(|(_, p)| !p.is_finite() || **p < 0.0)
        {
            return Err(Error::domain(format!("entry {i} is {p}")));
        }
        Ok(())
    }

    /// The noiseless channel.
    pub fn identity(num_qubits: usize) -> Result<Self> {
        let mut probs = vec![0.0; pauli_dim(num_qubits)];
        probs[0] = 1.0;
        Self::new(num_qubits, probs)
    }

    /// `(1-p)·ρ + p·I/2^N`.
    pub fn depolarizing(spec: DepolarizingSpec) -> Result<Self> {
        let dim = pauli_dim(spec.num_qubits);
        let off = spec.param / dim as f64;
        let mut probs = vec![off; dim];
        probs[0] = 1.0 - spec.param * (1.0 - 1.0 / dim as f64);
        Self::new(spec.num_qubits, probs)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn into_probs(self) -> Vec<f64> {
        self.probs
    }

    pub fn dim(&self) -> usize {
        self.probs.len()
    }

    /// Coefficient `p_0` of the identity.
    pub fn identity_weight(&self) -> f64 {
        self.probs[0]
    }

    /// `p_0 ≥ p_i` for every `i`.
    pub fn is_identity_dominant(&self) -> bool {
        let p0 = self.probs[0];
        self.probs[1..].iter().all(|&p| p <= p0)
    }

    /// Scales entries to sum to exactly one.
    pub fn renormalized(&self) -> Self {
        let total: f64 = self.probs.iter().sum();
        Self {
            num_qubits: self.num_qubits,
            probs: self.probs.iter().map(|p| p / total).collect(),
        }
    }

    fn check_same_size(&self, other: &Self) -> Result<()> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::dim(format!(
                "channels act on {} and {} qubits",
                self.num_qubits, other.num_qubits
            )));
        }
        Ok(())
    }

    /// Sequential composition: the XOR convolution of the two vectors.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_same_size(other)?;
        let mut probs = transform::xor_convolve(&self.probs, &other.probs)?;
        for p in &mut probs {
            if *p < 0.0 && *p > -ROUNDOFF_FLOOR {
                *p = 0.0;
            }
        }
        Self::new(self.num_qubits, probs)
    }

    /// Channel on `self.num_qubits + other.num_qubits` qubits with `self` on
    /// the low qubits.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let n = self.num_qubits + other.num_qubits;
        if n > MAX_DENSE_QUBITS {
            return Err(Error::DenseLimit(format!(
                "tensor product on {n} qubits exceeds the dense limit"
            )));
        }
        let low = self.dim();
        let mut probs = vec![0.0; low * other.dim()];
        for (hi, &q) in other.probs.iter().enumerate() {
            for (lo, &p) in self.probs.iter().enumerate() {
                probs[hi * low + lo] = p * q;
            }
        }
        Ok(Self {
            num_qubits: n,
            probs,
        })
    }

    /// Transports each Pauli component through a Clifford:
    /// `result[i] = probs[g⁻¹(i)]`.
    pub fn conjugate(&self, g: &CliffordPermutation) -> Result<Self> {
        if g.num_qubits() != self.num_qubits {
            return Err(Error::dim(format!(
                "Clifford on {} qubits, channel on {}",
                g.num_qubits(),
                self.num_qubits
            )));
        }
        let mut probs = vec![0.0; self.dim()];
        for (i, &p) in self.probs.iter().enumerate() {
            probs[g.apply(i)] = p;
        }
        Ok(Self {
            num_qubits: self.num_qubits,
            probs,
        })
    }
}

/// Parameter of a depolarizing channel, validated to `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DepolarizingSpec {
    pub num_qubits: usize,
    pub param: f64,
}

impl DepolarizingSpec {
    pub fn new(num_qubits: usize, param: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&param) {
            return Err(Error::domain(format!(
                "depolarizing parameter {param} outside [0, 1]"
            )));
        }
        Ok(Self { num_qubits, param })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dep(n: usize, p: f64) -> PauliChannel {
        PauliChannel::depolarizing(DepolarizingSpec::new(n, p).unwrap()).unwrap()
    }

    #[test]
    fn depolarizing_tables() {
        let q = 0.3;
        let c = dep(2, q);
        assert!((c.probs()[0] - (1.0 - 15.0 * q / 16.0)).abs() < 1e-15);
        for &p in &c.probs()[1..] {
            assert!((p - q / 16.0).abs() < 1e-15);
        }
        assert_eq!(dep(1, 0.0).probs(), &[1.0, 0.0, 0.0, 0.0]);
        assert_eq!(dep(1, 1.0).probs(), &[0.25; 4]);
    }

    #[test]
    fn depolarizing_rejects_bad_param() {
        assert!(DepolarizingSpec::new(1, -0.1).is_err());
        assert!(DepolarizingSpec::new(1, 1.5).is_err());
    }

    #[test]
    fn validation() {
        assert!(PauliChannel::new(1, vec![0.5, 0.5, 0.0]).is_err());
        assert!(PauliChannel::new(1, vec![1.1, -0.1, 0.0, 0.0]).is_err());
        assert!(PauliChannel::new(1, vec![0.5, 0.4, 0.0, 0.0]).is_err());
        assert!(PauliChannel::from_probs(vec![0.0625; 16]).is_ok());
        assert!(PauliChannel::from_probs(vec![0.125; 8]).is_err());
        let c = PauliChannel::from_weights(1, vec![2.0, 1.0, 1.0, 0.0]).unwrap();
        assert_eq!(c.probs(), &[0.5, 0.25, 0.25, 0.0]);
    }

    #[test]
    fn compose_identity_and_depolarizing() {
        let c = PauliChannel::new(1, vec![0.7, 0.1, 0.15, 0.05]).unwrap();
        let id = PauliChannel::identity(1).unwrap();
        assert_eq!(id.compose(&c).unwrap(), c);

        let (p1, p2) = (0.1, 0.25);
        let composed = dep(1, p1).compose(&dep(1, p2)).unwrap();
        let expected = dep(1, 1.0 - (1.0 - p1) * (1.0 - p2));
        for (a, b) in composed.probs().iter().zip(expected.probs()) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!(dep(1, 0.1).compose(&dep(2, 0.1)).is_err());
    }

    #[test]
    fn tensor_places_self_low() {
        let a = PauliChannel::new(1, vec![0.9, 0.1, 0.0, 0.0]).unwrap();
        let b = PauliChannel::new(1, vec![0.8, 0.0, 0.2, 0.0]).unwrap();
        let ab = a.tensor(&b).unwrap();
        // (Z on qubit 0, X on qubit 1) = 1 + (2 << 2)
        assert!((ab.probs()[1 + 8] - 0.1 * 0.2).abs() < 1e-15);
        assert!((ab.probs()[1] - 0.1 * 0.8).abs() < 1e-15);
    }

    #[test]
    fn identity_dominance() {
        assert!(dep(2, 0.5).is_identity_dominant());
        assert!(dep(1, 1.0).is_identity_dominant());
        assert!(!PauliChannel::new(1, vec![0.3, 0.4, 0.2, 0.1])
            .unwrap()
            .is_identity_dominant());
    }
}
