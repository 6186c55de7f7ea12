//! The order-2 VCP circuit with noisy controlled-SWAPs.
//!
//! Register layout: copy 1 on qubits `0..N`, copy 2 on `N..2N`, the ancilla
//! on qubit `2N`. The circuit is
//!
//! ```text
//! |+⟩⟨+| ⊗ I/2^N ⊗ ρ
//!   → CSWAP → swap noise (E_ab) → C⊗C → q⊗q → swap noise (E_cd) → CSWAP
//! ```
//!
//! and the ancilla is read out in the X basis. `⟨X⊗O⊗I⟩ / ⟨X⊗I⊗I⟩` is the
//! post-selected estimate of `Tr(O ρ)`.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{apply_pauli_channel_at, gates, CMatrix, DensityMatrix, DiagonalObservable, MAX_SIM_QUBITS};
use crate::pauli::{pauli_dim, CliffordPermutation, PauliChannel};
use crate::vcp::SwapNoiseSpec;
use crate::{Error, Result};

/// Below this `|⟨X⊗I⊗I⟩|` the post-selected ratio is reported as undefined.
pub const POSTSELECTION_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone)]
pub struct VcpCircuitSpec {
    input: DensityMatrix,
    observable: DiagonalObservable,
    circuit_noise: PauliChannel,
    first_swap: PauliChannel,
    second_swap: PauliChannel,
    clifford: Option<(CMatrix, CliffordPermutation)>,
}

impl VcpCircuitSpec {
    /// Both CSWAP layers carry the same swap noise.
    pub fn new(
        input: DensityMatrix,
        observable: DiagonalObservable,
        circuit_noise: PauliChannel,
        swap_noise: &SwapNoiseSpec,
    ) -> Result<Self> {
        let n = input.num_qubits();
        if observable.num_qubits() != n || circuit_noise.num_qubits() != n {
            return Err(Error::dim("input, observable and circuit noise sizes differ"));
        }
        if swap_noise.order() != 2 || swap_noise.per_copy_qubits() != n {
            return Err(Error::dim(format!(
                "the circuit oracle needs order-2 swap noise on {n}-qubit copies"
            )));
        }
        if 2 * n + 1 > MAX_SIM_QUBITS {
            return Err(Error::DenseLimit(format!(
                "{} circuit qubits exceed the simulator limit of {MAX_SIM_QUBITS}",
                2 * n + 1
            )));
        }
        let joint = swap_noise.to_dense()?;
        Ok(Self {
            input,
            observable,
            circuit_noise,
            first_swap: joint.clone(),
            second_swap: joint,
            clifford: None,
        })
    }

    /// Replaces the noise of the second CSWAP layer.
    pub fn with_second_swap_noise(mut self, noise: PauliChannel) -> Result<Self> {
        if noise.num_qubits() != self.first_swap.num_qubits() {
            return Err(Error::dim("second swap noise size"));
        }
        self.second_swap = noise;
        Ok(self)
    }

    /// Runs the Clifford `u` on both copies between the CSWAP layers.
    pub fn with_clifford(mut self, u: CMatrix) -> Result<Self> {
        let g = gates::clifford_permutation_of(&u, self.system_qubits())?;
        self.clifford = Some((u, g));
        Ok(self)
    }

    pub fn order(&self) -> usize {
        2
    }

    pub fn system_qubits(&self) -> usize {
        self.input.num_qubits()
    }

    pub fn input(&self) -> &DensityMatrix {
        &self.input
    }

    pub fn observable(&self) -> &DiagonalObservable {
        &self.observable
    }

    pub fn circuit_noise(&self) -> &PauliChannel {
        &self.circuit_noise
    }

    pub fn first_swap_noise(&self) -> &PauliChannel {
        &self.first_swap
    }

    pub fn second_swap_noise(&self) -> &PauliChannel {
        &self.second_swap
    }

    pub fn clifford(&self) -> Option<&(CMatrix, CliffordPermutation)> {
        self.clifford.as_ref()
    }
}

fn cswap(rho: &DensityMatrix, n: usize) -> DensityMatrix {
    let anc = 1 << (2 * n);
    let mask = (1 << n) - 1;
    rho.permute_basis(|z| {
        if z & anc == 0 {
            z
        } else {
            let (c1, c2) = (z & mask, (z >> n) & mask);
            anc | (c1 << n) | c2
        }
    })
}

fn final_state(spec: &VcpCircuitSpec) -> Result<DensityMatrix> {
    let n = spec.system_qubits();
    let plus = DensityMatrix::pure(
        1,
        &[
            num_complex::Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
            num_complex::Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
        ],
    )?;
    let copies = DensityMatrix::tensor(&spec.input, &DensityMatrix::maximally_mixed(n)?)?;
    let mut rho = DensityMatrix::tensor(&copies, &plus)?;
    rho = cswap(&rho, n);
    rho = apply_pauli_channel_at(&rho, &spec.first_swap, 0)?;
    if let Some((u, _)) = &spec.clifford {
        let full = gates::identity(1).kronecker(&u.kronecker(u));
        rho = rho.evolve(&full)?;
    }
    rho = apply_pauli_channel_at(&rho, &spec.circuit_noise, 0)?;
    rho = apply_pauli_channel_at(&rho, &spec.circuit_noise, n)?;
    rho = apply_pauli_channel_at(&rho, &spec.second_swap, 0)?;
    Ok(cswap(&rho, n))
}

/// `⟨X⊗O⊗I⟩` and `⟨X⊗I⊗I⟩` at the end of the circuit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CircuitExpectations {
    pub num: f64,
    pub den: f64,
}

impl CircuitExpectations {
    /// `num/den`; errors when post-selection (almost) never succeeds.
    pub fn ratio(&self) -> Result<f64> {
        if self.den.abs() < POSTSELECTION_FLOOR {
            return Err(Error::Degenerate(format!(
                "post-selection failure: ⟨X⟩ = {}",
                self.den
            )));
        }
        Ok(self.num / self.den)
    }
}

pub fn vcp_circuit_expectations(spec: &VcpCircuitSpec) -> Result<CircuitExpectations> {
    let n = spec.system_qubits();
    let rho = final_state(spec)?;
    let m = rho.matrix();
    let anc = 1 << (2 * n);
    let mask = (1 << n) - 1;
    let (mut num, mut den) = (0.0, 0.0);
    for r in 0..rho.dim() {
        let v = m[(r ^ anc, r)].re;
        den += v;
        num += v * spec.observable.value(r & mask);
    }
    Ok(CircuitExpectations { num, den })
}

/// Shot-based estimate of the post-selected ratio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShotEstimate {
    pub shots: usize,
    pub seed: u64,
    /// Fraction of shots with ancilla outcome `+1`.
    pub plus_fraction: f64,
    pub num: f64,
    pub den: f64,
    pub num_stderr: f64,
    pub den_stderr: f64,
}

impl ShotEstimate {
    pub fn ratio(&self) -> Result<f64> {
        CircuitExpectations {
            num: self.num,
            den: self.den,
        }
        .ratio()
    }
}

/// Samples `shots` joint outcomes of the ancilla (X basis) and the first
/// copy (computational basis).
pub fn sample_vcp_shots(spec: &VcpCircuitSpec, shots: usize, seed: u64) -> Result<ShotEstimate> {
    if shots == 0 {
        return Err(Error::domain("shots must be positive"));
    }
    let n = spec.system_qubits();
    let rho = final_state(spec)?;
    let m = rho.matrix();
    let anc = 1 << (2 * n);
    let mask = (1 << n) - 1;
    // After H on the ancilla: P(b, r) = ½(ρ_r0,r0 + ρ_r1,r1) + (−1)^b Re ρ_r0,r1.
    let mut outcomes = Vec::with_capacity(2 * anc);
    let mut weights = Vec::with_capacity(2 * anc);
    for r in 0..anc {
        let mean = 0.5 * (m[(r, r)].re + m[(r | anc, r | anc)].re);
        let coh = m[(r, r | anc)].re;
        for (sign, w) in [(1.0, mean + coh), (-1.0, mean - coh)] {
            outcomes.push((sign, spec.observable.value(r & mask)));
            weights.push(w.max(0.0));
        }
    }
    let dist = WeightedIndex::new(&weights).map_err(|e| Error::Degenerate(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut s_a, mut s_aa, mut s_ao, mut s_aoao, mut plus) = (0.0, 0.0, 0.0, 0.0, 0usize);
    for _ in 0..shots {
        let (a, o) = outcomes[dist.sample(&mut rng)];
        if a > 0.0 {
            plus += 1;
        }
        s_a += a;
        s_aa += a * a;
        s_ao += a * o;
        s_aoao += a * o * a * o;
    }
    let t = shots as f64;
    let stderr = |s: f64, s2: f64| {
        let mean = s / t;
        ((s2 / t - mean * mean).max(0.0) / t).sqrt()
    };
    Ok(ShotEstimate {
        shots,
        seed,
        plus_fraction: plus as f64 / t,
        num: s_ao / t,
        den: s_a / t,
        num_stderr: stderr(s_ao, s_aoao),
        den_stderr: stderr(s_a, s_aa),
    })
}

/// The literal sum `τ_k = Σ_{a,b,c,d} p_ab p_cd q_{a⊕c⊕k} q_{b⊕d⊕k}` with
/// the same swap noise at both CSWAP layers.
pub fn bruteforce_mu_appendix_d(p: &[f64], q: &[f64]) -> Result<Vec<f64>> {
    bruteforce_tau_grouped(p, p, q)
}

/// As [`bruteforce_mu_appendix_d`] with `p1` before and `p2` after the
/// circuit layer: `τ_k = Σ p1_ab p2_cd q_{a⊕c⊕k} q_{b⊕d⊕k}`.
pub fn bruteforce_tau_grouped(p1: &[f64], p2: &[f64], q: &[f64]) -> Result<Vec<f64>> {
    let d = q.len();
    if d != pauli_dim(1) && d != pauli_dim(2) {
        return Err(Error::DenseLimit(format!(
            "brute-force sum supports 1 or 2 qubits per copy, got {d} circuit entries"
        )));
    }
    if p1.len() != d * d || p2.len() != d * d {
        return Err(Error::dim("swap noise must have (4^N)^2 entries"));
    }
    let mut tau = vec![0.0; d];
    for a in 0..d {
        for b in 0..d {
            let pab = p1[a + b * d];
            if pab == 0.0 {
                continue;
            }
            for c in 0..d {
                for dd in 0..d {
                    let w = pab * p2[c + dd * d];
                    if w == 0.0 {
                        continue;
                    }
                    for (k, t) in tau.iter_mut().enumerate() {
                        *t += w * q[a ^ c ^ k] * q[b ^ dd ^ k];
                    }
                }
            }
        }
    }
    Ok(tau)
}
