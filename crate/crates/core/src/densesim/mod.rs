//! Exact density-matrix simulation for a handful of qubits.
//!
//! Basis index bit `j` is qubit `j`. Operators on a qubit range are embedded
//! as `I_high ⊗ U ⊗ I_low`. The simulator exists to check the effective
//! channel formulas against an actual circuit, so it shares no code with
//! [`crate::vcp`].

mod circuit;
pub mod gates;

pub use circuit::{
    bruteforce_mu_appendix_d, bruteforce_tau_grouped, sample_vcp_shots, vcp_circuit_expectations,
    CircuitExpectations, ShotEstimate, VcpCircuitSpec,
};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::cvar::DiscreteDistribution;
use crate::pauli::{PauliChannel, PauliIndex};
use crate::{Error, Result};

/// Largest register the dense simulator accepts (128×128 complex).
pub const MAX_SIM_QUBITS: usize = 7;

pub type CMatrix = DMatrix<Complex64>;

const STATE_TOL: f64 = 1e-12;
const PSD_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    num_qubits: usize,
    data: CMatrix,
}

fn check_size(num_qubits: usize) -> Result<usize> {
    if num_qubits == 0 || num_qubits > MAX_SIM_QUBITS {
        return Err(Error::DenseLimit(format!(
            "{num_qubits} qubits outside the simulator range 1..={MAX_SIM_QUBITS}"
        )));
    }
    Ok(1 << num_qubits)
}

impl DensityMatrix {
    /// Validates shape, Hermiticity, unit trace and positivity.
    pub fn new(num_qubits: usize, data: CMatrix) -> Result<Self> {
        let dim = check_size(num_qubits)?;
        if data.nrows() != dim || data.ncols() != dim {
            return Err(Error::dim(format!(
                "{}×{} matrix for {num_qubits} qubits",
                data.nrows(),
                data.ncols()
            )));
        }
        let rho = Self { num_qubits, data };
        if !rho.is_hermitian(STATE_TOL) {
            return Err(Error::domain("density matrix is not Hermitian"));
        }
        if (rho.trace() - 1.0).abs() > STATE_TOL {
            return Err(Error::domain(format!("trace is {}", rho.trace())));
        }
        if rho.min_eigenvalue() < -PSD_TOL {
            return Err(Error::domain("density matrix is not positive semidefinite"));
        }
        Ok(rho)
    }

    /// Skips validation; callers guarantee a physical state.
    pub(crate) fn from_raw(num_qubits: usize, data: CMatrix) -> Self {
        Self { num_qubits, data }
    }

    /// `|0…0⟩⟨0…0|`.
    pub fn zero_state(num_qubits: usize) -> Result<Self> {
        let dim = check_size(num_qubits)?;
        let mut data = CMatrix::zeros(dim, dim);
        data[(0, 0)] = Complex64::new(1.0, 0.0);
        Ok(Self { num_qubits, data })
    }

    /// `I/2^N`.
    pub fn maximally_mixed(num_qubits: usize) -> Result<Self> {
        let dim = check_size(num_qubits)?;
        let data = CMatrix::identity(dim, dim) / Complex64::new(dim as f64, 0.0);
        Ok(Self { num_qubits, data })
    }

    /// `|ψ⟩⟨ψ|` for a normalized state vector.
    pub fn pure(num_qubits: usize, amplitudes: &[Complex64]) -> Result<Self> {
        let dim = check_size(num_qubits)?;
        if amplitudes.len() != dim {
            return Err(Error::dim("state vector length"));
        }
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > STATE_TOL {
            return Err(Error::domain(format!("state vector norm² is {norm}")));
        }
        let v = nalgebra::DVector::from_column_slice(amplitudes);
        Ok(Self {
            num_qubits,
            data: &v * v.adjoint(),
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.data
    }

    pub fn trace(&self) -> f64 {
        self.data.trace().re
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let dim = self.dim();
        (0..dim).all(|r| (0..dim).all(|c| (self.data[(r, c)] - self.data[(c, r)].conj()).norm() <= tol))
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let herm = (&self.data + self.data.adjoint()) * Complex64::new(0.5, 0.0);
        herm.symmetric_eigenvalues().min()
    }

    /// Computational-basis probabilities `⟨z|ρ|z⟩`.
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.data[(i, i)].re).collect()
    }

    /// `low` on the low qubits, `high` above it.
    pub fn tensor(low: &Self, high: &Self) -> Result<Self> {
        let n = low.num_qubits + high.num_qubits;
        check_size(n)?;
        Ok(Self {
            num_qubits: n,
            data: high.data.kronecker(&low.data),
        })
    }

    /// `U ρ U†` for a full-register unitary.
    pub fn evolve(&self, u: &CMatrix) -> Result<Self> {
        if u.nrows() != self.dim() || u.ncols() != self.dim() {
            return Err(Error::dim("unitary does not match the register"));
        }
        Ok(Self {
            num_qubits: self.num_qubits,
            data: u * &self.data * u.adjoint(),
        })
    }

    /// Relabels basis states: `ρ'[r, c] = ρ[π(r), π(c)]` for an involutive `π`.
    pub(crate) fn permute_basis(&self, perm: impl Fn(usize) -> usize) -> Self {
        let dim = self.dim();
        let map: Vec<usize> = (0..dim).map(perm).collect();
        let data = CMatrix::from_fn(dim, dim, |r, c| self.data[(map[r], map[c])]);
        Self {
            num_qubits: self.num_qubits,
            data,
        }
    }
}

/// An observable diagonal in the computational basis, `O = Σ_z h(z)|z⟩⟨z|`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalObservable {
    num_qubits: usize,
    eigenvalues: Vec<f64>,
}

impl DiagonalObservable {
    pub fn new(num_qubits: usize, eigenvalues: Vec<f64>) -> Result<Self> {
        let dim = check_size(num_qubits)?;
        if eigenvalues.len() != dim {
            return Err(Error::dim(format!(
                "{} eigenvalues for {num_qubits} qubits",
                eigenvalues.len()
            )));
        }
        if eigenvalues.iter().any(|x| !x.is_finite()) {
            return Err(Error::domain("non-finite eigenvalue"));
        }
        Ok(Self {
            num_qubits,
            eigenvalues,
        })
    }

    /// Pauli Z on `qubit` of an `num_qubits` register.
    pub fn pauli_z(num_qubits: usize, qubit: usize) -> Result<Self> {
        let dim = check_size(num_qubits)?;
        let ev = (0..dim)
            .map(|z| if (z >> qubit) & 1 == 0 { 1.0 } else { -1.0 })
            .collect();
        Self::new(num_qubits, ev)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// `h(z)`.
    pub fn value(&self, z: usize) -> f64 {
        self.eigenvalues[z]
    }

    /// `Tr(O ρ)`.
    pub fn expectation(&self, rho: &DensityMatrix) -> Result<f64> {
        if rho.num_qubits() != self.num_qubits {
            return Err(Error::dim("observable and state sizes differ"));
        }
        Ok(rho
            .diagonal()
            .iter()
            .zip(&self.eigenvalues)
            .map(|(p, h)| p * h)
            .sum())
    }
}

/// `Σ_i p_i E_i ρ E_i†` with the channel on all qubits of `rho`.
pub fn apply_pauli_channel(rho: &DensityMatrix, c: &PauliChannel) -> Result<DensityMatrix> {
    if c.num_qubits() != rho.num_qubits() {
        return Err(Error::dim(format!(
            "channel on {} qubits, state on {}",
            c.num_qubits(),
            rho.num_qubits()
        )));
    }
    apply_pauli_channel_at(rho, c, 0)
}

/// Applies `c` to qubits `[offset, offset + c.num_qubits())` of `rho`.
pub fn apply_pauli_channel_at(
    rho: &DensityMatrix,
    c: &PauliChannel,
    offset: usize,
) -> Result<DensityMatrix> {
    let m = c.num_qubits();
    if offset + m > rho.num_qubits() {
        return Err(Error::dim(format!(
            "channel on qubits {offset}..{} of a {}-qubit state",
            offset + m,
            rho.num_qubits()
        )));
    }
    let reg = 1usize << m;
    // For a fixed X pattern x, Σ_z p_{x,z} sgn_z(r)·sgn_z(c) depends only on
    // the register bits of r ⊕ c; tabulate it once per x.
    let mut weights = vec![vec![0.0; reg]; reg];
    let mut active = vec![false; reg];
    for (idx, &p) in c.probs().iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        let pi = PauliIndex(idx);
        let (x, z) = (pi.x_mask(m), pi.z_mask(m));
        active[x] = true;
        for (t, w) in weights[x].iter_mut().enumerate() {
            let sign = if (t & z).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            *w += sign * p;
        }
    }
    let dim = rho.dim();
    let src = rho.matrix();
    let mask = reg - 1;
    let mut out = CMatrix::zeros(dim, dim);
    for x in (0..reg).filter(|&x| active[x]) {
        let shift = x << offset;
        let w = &weights[x];
        for col in 0..dim {
            for row in 0..dim {
                let t = ((row ^ col) >> offset) & mask;
                out[(row, col)] += src[(row ^ shift, col ^ shift)] * w[t];
            }
        }
    }
    Ok(DensityMatrix::from_raw(rho.num_qubits(), out))
}

/// Distribution of the outcome `h(z)` when measuring `rho` in the
/// computational basis.
pub fn measurement_distribution(
    rho: &DensityMatrix,
    obs: &DiagonalObservable,
) -> Result<DiscreteDistribution> {
    if rho.num_qubits() != obs.num_qubits() {
        return Err(Error::dim("observable and state sizes differ"));
    }
    let mut pairs = Vec::with_capacity(rho.dim());
    for (z, p) in rho.diagonal().into_iter().enumerate() {
        if p < -STATE_TOL {
            return Err(Error::domain(format!("negative population {p} at |{z}⟩")));
        }
        pairs.push((obs.value(z), p.max(0.0)));
    }
    DiscreteDistribution::new(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::DepolarizingSpec;
    use crate::sampling::{random_density_matrix, random_probability_vector};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn dep(n: usize, p: f64) -> PauliChannel {
        PauliChannel::depolarizing(DepolarizingSpec::new(n, p).unwrap()).unwrap()
    }

    /// Σ_i p_i P_i ρ P_i† with explicit Pauli matrices.
    fn naive_channel(rho: &DensityMatrix, c: &PauliChannel) -> CMatrix {
        let n = rho.num_qubits();
        let mut out = CMatrix::zeros(rho.dim(), rho.dim());
        for (i, &p) in c.probs().iter().enumerate() {
            let pm = gates::pauli_matrix(i, n);
            out += (&pm * rho.matrix() * pm.adjoint()) * Complex64::new(p, 0.0);
        }
        out
    }

    #[test]
    fn channel_matches_explicit_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..=3 {
            let rho = random_density_matrix(n, &mut rng).unwrap();
            let c = PauliChannel::new(n, random_probability_vector(crate::pauli::pauli_dim(n), &mut rng)).unwrap();
            let fast = apply_pauli_channel(&rho, &c).unwrap();
            let slow = naive_channel(&rho, &c);
            assert!((fast.matrix() - slow).camax() < 1e-13);
        }
    }

    #[test]
    fn channel_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let rho = random_density_matrix(2, &mut rng).unwrap();
        let same = apply_pauli_channel(&rho, &PauliChannel::identity(2).unwrap()).unwrap();
        assert!((same.matrix() - rho.matrix()).camax() < 1e-15);
        let mixed = apply_pauli_channel(&rho, &dep(2, 1.0)).unwrap();
        assert!((mixed.matrix() - DensityMatrix::maximally_mixed(2).unwrap().matrix()).camax() < 1e-15);

        let zero = DensityMatrix::zero_state(1).unwrap();
        let out = apply_pauli_channel(&zero, &dep(1, 0.2)).unwrap();
        let z = DiagonalObservable::pauli_z(1, 0).unwrap();
        assert!((z.expectation(&out).unwrap() - 0.8).abs() < 1e-15);
        let d = measurement_distribution(&out, &z).unwrap();
        assert!((d.prob_at(1.0) - 0.9).abs() < 1e-15);
        assert!((d.prob_at(-1.0) - 0.1).abs() < 1e-15);
    }

    #[test]
    fn channel_on_sub_register() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_density_matrix(1, &mut rng).unwrap();
        let b = random_density_matrix(2, &mut rng).unwrap();
        let c = PauliChannel::new(2, random_probability_vector(16, &mut rng)).unwrap();
        let joint = DensityMatrix::tensor(&a, &b).unwrap();
        let got = apply_pauli_channel_at(&joint, &c, 1).unwrap();
        let want = DensityMatrix::tensor(&a, &apply_pauli_channel(&b, &c).unwrap()).unwrap();
        assert!((got.matrix() - want.matrix()).camax() < 1e-14);
        assert!(apply_pauli_channel_at(&joint, &c, 2).is_err());
    }

    #[test]
    fn measurement_examples() {
        let z = DiagonalObservable::pauli_z(1, 0).unwrap();
        let d = measurement_distribution(&DensityMatrix::zero_state(1).unwrap(), &z).unwrap();
        assert_eq!(d.outcomes(), &[(1.0, 1.0)]);
        let d = measurement_distribution(&DensityMatrix::maximally_mixed(1).unwrap(), &z).unwrap();
        assert_eq!(d.outcomes(), &[(-1.0, 0.5), (1.0, 0.5)]);
        assert!(measurement_distribution(&DensityMatrix::zero_state(2).unwrap(), &z).is_err());
    }

    #[test]
    fn validation() {
        let bad = CMatrix::identity(2, 2);
        assert!(DensityMatrix::new(1, bad).is_err());
        assert!(DensityMatrix::zero_state(8).is_err());
        assert!(DiagonalObservable::new(1, vec![1.0]).is_err());
        let mut not_psd = CMatrix::zeros(2, 2);
        not_psd[(0, 0)] = Complex64::new(1.5, 0.0);
        not_psd[(1, 1)] = Complex64::new(-0.5, 0.0);
        assert!(DensityMatrix::new(1, not_psd).is_err());
    }
}
