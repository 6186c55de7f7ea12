//! Effective channel of an order-`M` VCP circuit whose controlled-SWAP
//! network carries Pauli noise.
//!
//! With swap noise `p` on `M·N` qubits (copy `i` on Pauli bits
//! `[2Ni, 2N(i+1))`) applied once before and once after the circuit noise
//! `q^{⊗M}`, the unnormalized weights are
//!
//! `τ_k = Σ_{ā,b̄} p_ā p_b̄ Π_i q_{a_i⊕b_i⊕k}`,
//!
//! i.e. the `(k, …, k)` diagonal of the XOR convolution `p ⊛ q^{⊗M} ⊛ p`.
//! In the character domain that diagonal costs one pass over `4^{MN}`
//! spectral coefficients plus one `4^N` transform.

use serde::Serialize;

use crate::pauli::transform::{fwht_in_place, xor_autocorrelation};
use crate::pauli::{DepolarizingSpec, PauliChannel, MAX_DENSE_QUBITS};
use crate::{Error, Result};

/// Noise on the controlled-SWAP network.
#[derive(Debug, Clone, PartialEq)]
pub enum SwapNoise {
    /// Explicit joint channel on all `M·N` qubits.
    Dense { channel: PauliChannel },
    /// Depolarizing on all `M·N` qubits.
    Depolarizing { param: f64 },
    /// Tensor product of factors, lowest qubits first.
    Product { factors: Vec<PauliChannel> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SwapNoiseSpec {
    order: usize,
    per_copy_qubits: usize,
    noise: SwapNoise,
}

impl SwapNoiseSpec {
    fn check_shape(order: usize, per_copy_qubits: usize) -> Result<()> {
        if order < 2 {
            return Err(Error::domain(format!("VCP order {order} < 2")));
        }
        if per_copy_qubits == 0 || per_copy_qubits > MAX_DENSE_QUBITS {
            return Err(Error::domain(format!(
                "unsupported per-copy qubit count {per_copy_qubits}"
            )));
        }
        Ok(())
    }

    pub fn new(order: usize, per_copy_qubits: usize, noise: SwapNoise) -> Result<Self> {
        Self::check_shape(order, per_copy_qubits)?;
        let total = order * per_copy_qubits;
        match &noise {
            SwapNoise::Dense { channel } => {
                if channel.num_qubits() != total {
                    return Err(Error::dim(format!(
                        "dense swap noise on {} qubits, expected {total}",
                        channel.num_qubits()
                    )));
                }
            }
            SwapNoise::Depolarizing { param } => {
                DepolarizingSpec::new(total, *param)?;
            }
            SwapNoise::Product { factors } => {
                let n: usize = factors.iter().map(PauliChannel::num_qubits).sum();
                if n != total {
                    return Err(Error::dim(format!(
                        "product factors cover {n} qubits, expected {total}"
                    )));
                }
            }
        }
        Ok(Self {
            order,
            per_copy_qubits,
            noise,
        })
    }

    pub fn dense(order: usize, per_copy_qubits: usize, channel: PauliChannel) -> Result<Self> {
        Self::new(order, per_copy_qubits, SwapNoise::Dense { channel })
    }

    pub fn depolarizing(order: usize, per_copy_qubits: usize, param: f64) -> Result<Self> {
        Self::new(order, per_copy_qubits, SwapNoise::Depolarizing { param })
    }

    pub fn product(order: usize, per_copy_qubits: usize, factors: Vec<PauliChannel>) -> Result<Self> {
        Self::new(order, per_copy_qubits, SwapNoise::Product { factors })
    }

    /// Noiseless swap network.
    pub fn ideal(order: usize, per_copy_qubits: usize) -> Result<Self> {
        Self::depolarizing(order, per_copy_qubits, 0.0)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn per_copy_qubits(&self) -> usize {
        self.per_copy_qubits
    }

    pub fn total_qubits(&self) -> usize {
        self.order * self.per_copy_qubits
    }

    pub fn noise(&self) -> &SwapNoise {
        &self.noise
    }

    /// Expands to the joint probability vector over `4^{MN}` Paulis.
    pub fn to_dense(&self) -> Result<PauliChannel> {
        let total = self.total_qubits();
        if total > MAX_DENSE_QUBITS {
            return Err(Error::DenseLimit(format!(
                "swap noise on {total} qubits has 4^{total} entries; use a depolarizing or per-copy product spec"
            )));
        }
        match &self.noise {
            SwapNoise::Dense { channel } => Ok(channel.clone()),
            SwapNoise::Depolarizing { param } => {
                PauliChannel::depolarizing(DepolarizingSpec::new(total, *param)?)
            }
            SwapNoise::Product { factors } => {
                let mut it = factors.iter();
                let first = it.next().expect("validated nonempty").clone();
                it.try_fold(first, |acc, f| acc.tensor(f))
            }
        }
    }

    /// Groups product factors into one channel per copy when the factor
    /// boundaries line up with copy boundaries.
    fn per_copy_channels(&self) -> Option<Vec<PauliChannel>> {
        let SwapNoise::Product { factors } = &self.noise else {
            return None;
        };
        let mut copies = Vec::with_capacity(self.order);
        let mut current: Option<PauliChannel> = None;
        for f in factors {
            let next = match current.take() {
                None => f.clone(),
                Some(acc) => acc.tensor(f).ok()?,
            };
            match next.num_qubits().cmp(&self.per_copy_qubits) {
                std::cmp::Ordering::Less => current = Some(next),
                std::cmp::Ordering::Equal => copies.push(next),
                std::cmp::Ordering::Greater => return None,
            }
        }
        (current.is_none() && copies.len() == self.order).then_some(copies)
    }
}

/// Unnormalized weights `τ`, their sum and the normalized channel `μ`.
#[derive(Debug, Clone, PartialEq)]
pub struct EffectiveChannelResult {
    pub mu: PauliChannel,
    pub tau: Vec<f64>,
    /// `Σ_k τ_k`, the ancilla `⟨X⊗I⟩` signal of the circuit.
    pub normalization: f64,
}

impl EffectiveChannelResult {
    fn from_tau(num_qubits: usize, mut tau: Vec<f64>) -> Result<Self> {
        let scale = tau.iter().map(|t| t.abs()).fold(0.0, f64::max);
        for t in &mut tau {
            if *t < 0.0 {
                if *t < -1e-12 * scale {
                    return Err(Error::Degenerate(format!(
                        "negative effective weight {t}"
                    )));
                }
                *t = 0.0;
            }
        }
        let normalization: f64 = tau.iter().sum();
        if normalization <= 0.0 {
            return Err(Error::Degenerate(
                "effective weights vanish; post-selection never succeeds".into(),
            ));
        }
        let mu = PauliChannel::from_weights(num_qubits, tau.clone())?;
        Ok(Self {
            mu,
            tau,
            normalization,
        })
    }
}

fn check_circuit(swap: &SwapNoiseSpec, circuit: &PauliChannel, order: usize) -> Result<()> {
    if swap.order() != order {
        return Err(Error::dim(format!(
            "swap spec is for order {}, requested order {order}",
            swap.order()
        )));
    }
    if swap.per_copy_qubits() != circuit.num_qubits() {
        return Err(Error::dim(format!(
            "swap network copies have {} qubits, circuit noise has {}",
            swap.per_copy_qubits(),
            circuit.num_qubits()
        )));
    }
    Ok(())
}

/// Order-2 effective channel.
pub fn effective_mu_order2(
    swap: &SwapNoiseSpec,
    circuit: &PauliChannel,
) -> Result<EffectiveChannelResult> {
    effective_mu_order_m(swap, circuit, 2)
}

/// Order-`M` effective channel. Depolarizing and per-copy product swap
/// noise never materialize the `4^{MN}` joint vector.
pub fn effective_mu_order_m(
    swap: &SwapNoiseSpec,
    circuit: &PauliChannel,
    order: usize,
) -> Result<EffectiveChannelResult> {
    check_circuit(swap, circuit, order)?;
    let n = circuit.num_qubits();
    let tau = match swap.noise() {
        SwapNoise::Depolarizing { param } => tau_depolarizing(*param, circuit.probs(), order),
        SwapNoise::Product { .. } => match swap.per_copy_channels() {
            Some(copies) => tau_per_copy(&copies, &copies, circuit.probs()),
            None => {
                let joint = swap.to_dense()?;
                tau_spectral(joint.probs(), joint.probs(), circuit.probs(), order)
            }
        },
        SwapNoise::Dense { channel } => {
            tau_spectral(channel.probs(), channel.probs(), circuit.probs(), order)
        }
    };
    EffectiveChannelResult::from_tau(n, tau)
}

/// Effective channel when the noise before the circuit layer (`first`)
/// differs from the noise after it (`second`), as happens once swap noise
/// is conjugated through a Clifford.
pub fn effective_mu_grouped(
    first: &PauliChannel,
    second: &PauliChannel,
    circuit: &PauliChannel,
    order: usize,
) -> Result<EffectiveChannelResult> {
    let total = order * circuit.num_qubits();
    if order < 2 || first.num_qubits() != total || second.num_qubits() != total {
        return Err(Error::dim(format!(
            "grouped swap noise must act on {total} qubits"
        )));
    }
    let tau = tau_spectral(first.probs(), second.probs(), circuit.probs(), order);
    EffectiveChannelResult::from_tau(circuit.num_qubits(), tau)
}

/// The literal quadruple sum `Σ_{a,b,c,d} p_ab p_cd q_{a⊕c⊕k} q_{b⊕d⊕k}`
/// for single-qubit copies.
pub fn effective_mu_order2_direct(
    swap: &SwapNoiseSpec,
    circuit: &PauliChannel,
) -> Result<EffectiveChannelResult> {
    check_circuit(swap, circuit, 2)?;
    if circuit.num_qubits() != 1 {
        return Err(Error::DenseLimit(
            "the direct quadruple sum is limited to single-qubit copies".into(),
        ));
    }
    let joint = swap.to_dense()?;
    let (p, q) = (joint.probs(), circuit.probs());
    let mut tau = [0.0; 4];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let w = p[a | (b << 2)] * p[c | (d << 2)];
                    for (k, t) in tau.iter_mut().enumerate() {
                        *t += w * q[a ^ c ^ k] * q[b ^ d ^ k];
                    }
                }
            }
        }
    }
    EffectiveChannelResult::from_tau(1, tau.to_vec())
}

/// `τ_k = Σ_u A_u Π_i q_{u_i⊕k}` with `A` the XOR autocorrelation of the
/// joint swap vector.
pub fn tau_via_autocorrelation(joint: &PauliChannel, circuit: &PauliChannel, order: usize) -> Result<Vec<f64>> {
    let d = circuit.dim();
    if joint.dim() != d.pow(order as u32) {
        return Err(Error::dim("joint swap vector does not match order and circuit size"));
    }
    let auto = xor_autocorrelation(joint.probs())?;
    let q = circuit.probs();
    let bits = d.trailing_zeros();
    let tau = (0..d)
        .map(|k| {
            auto.iter()
                .enumerate()
                .map(|(u, &a)| {
                    (0..order)
                        .map(|i| q[((u >> (i as u32 * bits)) & (d - 1)) ^ k])
                        .product::<f64>()
                        * a
                })
                .sum()
        })
        .collect();
    Ok(tau)
}

fn tau_spectral(first: &[f64], second: &[f64], q: &[f64], order: usize) -> Vec<f64> {
    let d = q.len();
    let bits = d.trailing_zeros();
    let mut f1 = first.to_vec();
    fwht_in_place(&mut f1);
    let f2 = if std::ptr::eq(first, second) {
        None
    } else {
        let mut f2 = second.to_vec();
        fwht_in_place(&mut f2);
        Some(f2)
    };
    let mut qh = q.to_vec();
    fwht_in_place(&mut qh);

    let mut g = vec![0.0; d];
    for (chi, &a) in f1.iter().enumerate() {
        let b = f2.as_ref().map_or(a, |f2| f2[chi]);
        let mut w = a * b;
        let mut collapsed = 0;
        for i in 0..order as u32 {
            let part = (chi >> (i * bits)) & (d - 1);
            w *= qh[part];
            collapsed ^= part;
        }
        g[collapsed] += w;
    }
    fwht_in_place(&mut g);
    let scale = 1.0 / f1.len() as f64;
    g.iter_mut().for_each(|x| *x *= scale);
    g
}

fn tau_depolarizing(param: f64, q: &[f64], order: usize) -> Vec<f64> {
    // Spectrum of p ⊛ p is 1 at χ = 0 and (1-p)² elsewhere.
    let keep = (1.0 - param) * (1.0 - param);
    let flat = (1.0 - keep) * q.iter().sum::<f64>().powi(order as i32)
        / (q.len() as f64).powi(order as i32);
    q.iter().map(|&x| keep * x.powi(order as i32) + flat).collect()
}

fn tau_per_copy(first: &[PauliChannel], second: &[PauliChannel], q: &[f64]) -> Vec<f64> {
    let d = q.len();
    let mut qh = q.to_vec();
    fwht_in_place(&mut qh);
    let mut tau = vec![1.0; d];
    for (a, b) in first.iter().zip(second) {
        let mut ah = a.probs().to_vec();
        let mut bh = b.probs().to_vec();
        fwht_in_place(&mut ah);
        fwht_in_place(&mut bh);
        let mut f: Vec<f64> = (0..d).map(|x| ah[x] * bh[x] * qh[x]).collect();
        fwht_in_place(&mut f);
        for (t, v) in tau.iter_mut().zip(&f) {
            *t *= v / d as f64;
        }
    }
    tau
}

/// `μ_0` for depolarizing swap noise `p` (on four qubits) and depolarizing
/// circuit noise `q` (on two qubits), as a rational function.
pub fn mu0_depolarizing_closed_form(p: f64, q: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) || !(0.0..=1.0).contains(&q) {
        return Err(Error::domain(format!("(p, q) = ({p}, {q}) outside [0, 1]²")));
    }
    let omp2 = (1.0 - p) * (1.0 - p);
    let omq2 = (1.0 - q) * (1.0 - q);
    let num = 256.0 - 510.0 * p + 255.0 * p * p - 480.0 * omp2 * q + 225.0 * omp2 * q * q;
    let den = 16.0
        * (16.0 - 30.0 * p * omq2 + 15.0 * p * p * omq2 - 15.0 * (2.0 - q) * q);
    if den.abs() < f64::MIN_POSITIVE {
        return Err(Error::Degenerate(format!("denominator vanishes at ({p}, {q})")));
    }
    Ok(num / den)
}

/// Sufficient conditions under which noisy VCP still tightens the CVaR
/// bounds relative to the unpurified circuit noise `q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NoisyAdvantageCheck {
    pub mu0: f64,
    pub q0: f64,
    pub mu0_dominates: bool,
    pub ratios_dominated: bool,
    /// `max_i (μ_i/μ_0 − q_i/q_0)`; nonpositive when the ratio condition holds.
    pub worst_ratio_excess: f64,
}

impl NoisyAdvantageCheck {
    pub fn holds(&self) -> bool {
        self.mu0_dominates && self.ratios_dominated
    }
}

/// Checks `μ_0 ≥ q_0` and `μ_i/μ_0 ≤ q_i/q_0` for all `i ≥ 1`, within `tol`.
pub fn theorem6_conditions(mu: &PauliChannel, q: &PauliChannel, tol: f64) -> Result<NoisyAdvantageCheck> {
    if mu.num_qubits() != q.num_qubits() {
        return Err(Error::dim("μ and q act on different qubit counts"));
    }
    let (mu0, q0) = (mu.identity_weight(), q.identity_weight());
    if mu0 <= 0.0 || q0 <= 0.0 {
        return Err(Error::Degenerate("zero identity weight".into()));
    }
    let worst_ratio_excess = mu.probs()[1..]
        .iter()
        .zip(&q.probs()[1..])
        .map(|(m, qq)| m / mu0 - qq / q0)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(NoisyAdvantageCheck {
        mu0,
        q0,
        mu0_dominates: mu0 >= q0 - tol,
        ratios_dominated: worst_ratio_excess <= tol,
        worst_ratio_excess,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::pauli_dim;
    use crate::vcp::purify;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_channel(rng: &mut impl Rng, n: usize) -> PauliChannel {
        let w = (0..pauli_dim(n)).map(|_| rng.random::<f64>()).collect();
        PauliChannel::from_weights(n, w).unwrap()
    }

    fn dep(n: usize, p: f64) -> PauliChannel {
        PauliChannel::depolarizing(DepolarizingSpec::new(n, p).unwrap()).unwrap()
    }

    /// Σ over all (ā, b̄) of p_ā p_b̄ Π q_{a_i⊕b_i⊕k}, no shortcuts.
    fn tau_oracle(joint: &[f64], q: &[f64], order: usize) -> Vec<f64> {
        let d = q.len();
        let bits = d.trailing_zeros();
        let mut tau = vec![0.0; d];
        for (a, &pa) in joint.iter().enumerate() {
            for (b, &pb) in joint.iter().enumerate() {
                for (k, t) in tau.iter_mut().enumerate() {
                    let mut w = pa * pb;
                    for i in 0..order as u32 {
                        let ai = (a >> (i * bits)) & (d - 1);
                        let bi = (b >> (i * bits)) & (d - 1);
                        w *= q[ai ^ bi ^ k];
                    }
                    *t += w;
                }
            }
        }
        tau
    }

    fn assert_close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= tol, "{x} vs {y}");
        }
    }

    #[test]
    fn ideal_swap_reduces_to_purification() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..=2 {
            let q = random_channel(&mut rng, n);
            for order in 2..=3 {
                let swap = SwapNoiseSpec::ideal(order, n).unwrap();
                let got = effective_mu_order_m(&swap, &q, order).unwrap();
                let want = purify(&q, order as u32).unwrap();
                assert_close(got.mu.probs(), want.probs(), 1e-12);
            }
        }
        let id = PauliChannel::identity(1).unwrap();
        let got = effective_mu_order2(&SwapNoiseSpec::ideal(2, 1).unwrap(), &id).unwrap();
        assert_eq!(got.mu, id);
    }

    #[test]
    fn spectral_matches_quadruple_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let joint = random_channel(&mut rng, 2);
            let q = random_channel(&mut rng, 1);
            let swap = SwapNoiseSpec::dense(2, 1, joint.clone()).unwrap();
            let fast = effective_mu_order2(&swap, &q).unwrap();
            let direct = effective_mu_order2_direct(&swap, &q).unwrap();
            let oracle = tau_oracle(joint.probs(), q.probs(), 2);
            assert_close(&fast.tau, &oracle, 1e-12);
            assert_close(&direct.tau, &oracle, 1e-14);
            assert_close(fast.mu.probs(), direct.mu.probs(), 1e-12);
        }
    }

    #[test]
    fn order3_matches_sextuple_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let factors: Vec<_> = (0..3).map(|_| random_channel(&mut rng, 1)).collect();
            let q = random_channel(&mut rng, 1);
            let swap = SwapNoiseSpec::product(3, 1, factors).unwrap();
            let structured = effective_mu_order_m(&swap, &q, 3).unwrap();
            let joint = swap.to_dense().unwrap();
            let dense = effective_mu_order_m(&SwapNoiseSpec::dense(3, 1, joint.clone()).unwrap(), &q, 3).unwrap();
            let oracle = tau_oracle(joint.probs(), q.probs(), 3);
            assert_close(&structured.tau, &oracle, 1e-12);
            assert_close(&dense.tau, &oracle, 1e-12);
            let auto = tau_via_autocorrelation(&joint, &q, 3).unwrap();
            assert_close(&auto, &oracle, 1e-12);
        }
    }

    #[test]
    fn structured_paths_match_dense() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for (order, n) in [(2, 1), (2, 2), (3, 1), (4, 1), (2, 3)] {
            let q = random_channel(&mut rng, n);
            let p = rng.random::<f64>();
            let dep_spec = SwapNoiseSpec::depolarizing(order, n, p).unwrap();
            let dense = SwapNoiseSpec::dense(order, n, dep_spec.to_dense().unwrap()).unwrap();
            let a = effective_mu_order_m(&dep_spec, &q, order).unwrap();
            let b = effective_mu_order_m(&dense, &q, order).unwrap();
            assert_close(&a.tau, &b.tau, 1e-12);

            // one-qubit factors regroup into per-copy channels
            let factors: Vec<_> = (0..order * n).map(|_| random_channel(&mut rng, 1)).collect();
            let prod = SwapNoiseSpec::product(order, n, factors).unwrap();
            assert!(prod.per_copy_channels().is_some());
            let dense = SwapNoiseSpec::dense(order, n, prod.to_dense().unwrap()).unwrap();
            let a = effective_mu_order_m(&prod, &q, order).unwrap();
            let b = effective_mu_order_m(&dense, &q, order).unwrap();
            assert_close(&a.tau, &b.tau, 1e-12);
        }
    }

    #[test]
    fn misaligned_product_falls_back_to_dense() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let factors = vec![random_channel(&mut rng, 1), random_channel(&mut rng, 2), random_channel(&mut rng, 1)];
        let swap = SwapNoiseSpec::product(2, 2, factors).unwrap();
        assert!(swap.per_copy_channels().is_none());
        let q = random_channel(&mut rng, 2);
        let got = effective_mu_order2(&swap, &q).unwrap();
        let oracle = tau_oracle(swap.to_dense().unwrap().probs(), q.probs(), 2);
        assert_close(&got.tau, &oracle, 1e-12);
    }

    #[test]
    fn structured_beyond_dense_limit() {
        let q = dep(3, 0.05);
        let swap = SwapNoiseSpec::depolarizing(3, 3, 0.02).unwrap();
        assert!(matches!(swap.to_dense(), Err(Error::DenseLimit(_))));
        let out = effective_mu_order_m(&swap, &q, 3).unwrap();
        assert!(out.mu.identity_weight() > q.identity_weight());
    }

    #[test]
    fn closed_form_matches_dense_pipeline() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        assert_eq!(mu0_depolarizing_closed_form(0.0, 0.0).unwrap(), 1.0);
        for _ in 0..50 {
            let (p, q) = (rng.random::<f64>(), rng.random::<f64>());
            let swap = SwapNoiseSpec::dense(2, 2, dep(4, p)).unwrap();
            let out = effective_mu_order2(&swap, &dep(2, q)).unwrap();
            let cf = mu0_depolarizing_closed_form(p, q).unwrap();
            assert!((out.mu.identity_weight() - cf).abs() < 1e-9);
        }
        for _ in 0..100 {
            let q = rng.random::<f64>();
            let a = (16.0 - 15.0 * q).powi(2);
            let want = a / (a + 15.0 * q * q);
            assert!((mu0_depolarizing_closed_form(0.0, q).unwrap() - want).abs() < 1e-12);
        }
        assert!(mu0_depolarizing_closed_form(1.2, 0.0).is_err());
    }

    #[test]
    fn depolarizing_closure() {
        let out = effective_mu_order2(&SwapNoiseSpec::depolarizing(2, 2, 0.2).unwrap(), &dep(2, 0.3)).unwrap();
        let rest = &out.mu.probs()[1..];
        let spread = rest.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
            - rest.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!(spread <= 1e-12);
    }

    #[test]
    fn order_and_size_mismatch() {
        let swap = SwapNoiseSpec::depolarizing(3, 1, 0.1).unwrap();
        assert!(effective_mu_order2(&swap, &dep(1, 0.1)).is_err());
        assert!(effective_mu_order_m(&swap, &dep(2, 0.1), 3).is_err());
        assert!(SwapNoiseSpec::dense(2, 1, dep(3, 0.1)).is_err());
        assert!(SwapNoiseSpec::depolarizing(1, 1, 0.1).is_err());
    }

    #[test]
    fn ideal_swap_satisfies_advantage_conditions() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        while checked < 50 {
            let q = random_channel(&mut rng, 1);
            if !q.is_identity_dominant() {
                continue;
            }
            let mu = effective_mu_order2(&SwapNoiseSpec::ideal(2, 1).unwrap(), &q).unwrap().mu;
            assert!(theorem6_conditions(&mu, &q, 1e-12).unwrap().holds());
            checked += 1;
        }
    }
}
