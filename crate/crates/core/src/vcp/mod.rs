//! Virtual channel purification.
//!
//! Order-`L` purification of a Pauli channel keeps the Pauli support and
//! raises every weight to the `L`-th power before renormalizing. With a
//! noisy controlled-SWAP network the realized channel is no longer a pure
//! power; [`effective`] computes it exactly.

mod effective;
mod order;

pub use effective::{
    effective_mu_grouped, effective_mu_order2, effective_mu_order2_direct, effective_mu_order_m,
    mu0_depolarizing_closed_form, tau_via_autocorrelation, theorem6_conditions,
    EffectiveChannelResult, NoisyAdvantageCheck, SwapNoise, SwapNoiseSpec,
};
pub use order::{
    alpha_vector, order_condition, order_condition_report, order_condition_report_with,
    order_condition_with, OrderConditionReport, OrderRule, OrderVector,
};

use crate::pauli::PauliChannel;
use crate::{Error, Result};

/// Entrywise `L`-th power, renormalized.
pub fn purify(channel: &PauliChannel, order: u32) -> Result<PauliChannel> {
    if order == 0 {
        return Err(Error::domain("purification order must be at least 1"));
    }
    if order == 1 {
        return Ok(channel.clone());
    }
    // Scale by the largest entry first so high orders do not underflow.
    let max = channel.probs().iter().cloned().fold(0.0, f64::max);
    let weights = channel
        .probs()
        .iter()
        .map(|&p| (p / max).powi(order as i32))
        .collect();
    PauliChannel::from_weights(channel.num_qubits(), weights)
}

/// Acceptance level `α_L = p_0^L / Σ_i p_i^L`.
///
/// Requires an identity-dominant channel.
pub fn alpha_level(channel: &PauliChannel, order: u32) -> Result<f64> {
    if !channel.is_identity_dominant() {
        return Err(Error::Precondition(
            "acceptance levels need an identity-dominant channel".into(),
        ));
    }
    Ok(purify(channel, order)?.identity_weight())
}
