//! Lower and upper conditional value-at-risk of finite distributions.
//!
//! The lower CVaR at level `α ∈ (0, 1]` is the mean of the bottom
//! `α`-fraction of the distribution, with the atom at the quantile
//! `x_α = inf{x : F(x) ≥ α}` weighted fractionally:
//!
//! `CVaR_α[X] = α⁻¹ (E[X; X < x_α] + x_α (α − P(X < x_α)))`.
//!
//! The upper CVaR is `−CVaR_α[−X]`, the mean of the top `α`-fraction.

mod distribution;
mod lemma;

pub use distribution::{DiscreteDistribution, SampleSet};
pub use lemma::{
    check_lemma1_conditions, verify_chain, worst_case_distribution, ChainValues, Lemma1Check,
    Lemma1Violation, Lemma1Witness, ViolationKind, LEMMA1_TOL,
};

use crate::{Error, Result};

/// Which algebraic form of the lower CVaR to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CvarForm {
    /// `α⁻¹ (E[X; X < x_α] + x_α (α − P(X < x_α)))`.
    #[default]
    Standard,
    /// `α⁻¹ E[X; X ≤ x_α] + x_α (1 − P(X ≤ x_α))`, kept for comparison only.
    /// It does not reduce to the tail mean and does not obey the
    /// three-distribution ordering.
    Alternative,
}

fn check_level(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::domain(format!("CVaR level {alpha} outside (0, 1]")));
    }
    Ok(())
}

/// Lower CVaR in the standard form.
pub fn cvar_exact(d: &DiscreteDistribution, alpha: f64) -> Result<f64> {
    check_level(alpha)?;
    Ok(tail_mean(d.outcomes().iter().copied(), alpha))
}

/// Lower CVaR in the requested form.
pub fn cvar_with_form(d: &DiscreteDistribution, alpha: f64, form: CvarForm) -> Result<f64> {
    match form {
        CvarForm::Standard => cvar_exact(d, alpha),
        CvarForm::Alternative => {
            check_level(alpha)?;
            let x_alpha = d.quantile(alpha)?;
            let (mut below, mut mass) = (0.0, 0.0);
            for &(v, p) in d.outcomes().iter().take_while(|(v, _)| *v <= x_alpha) {
                below += v * p;
                mass += p;
            }
            Ok(below / alpha + x_alpha * (1.0 - mass))
        }
    }
}

/// Upper CVaR, `−CVaR_α[−X]`.
pub fn upper_cvar_exact(d: &DiscreteDistribution, alpha: f64) -> Result<f64> {
    check_level(alpha)?;
    let top = d.outcomes().iter().rev().map(|&(v, p)| (-v, p));
    Ok(-tail_mean(top, alpha))
}

/// Mean of the first `alpha` of probability mass in iteration order.
fn tail_mean(atoms: impl Iterator<Item = (f64, f64)>, alpha: f64) -> f64 {
    let mut remaining = alpha;
    let mut acc = 0.0;
    let mut last = 0.0;
    for (v, p) in atoms {
        last = v;
        let take = p.min(remaining);
        acc += v * take;
        remaining -= take;
        if remaining <= 0.0 {
            break;
        }
    }
    // Round-off can leave a sliver when alpha = 1; it belongs to the last atom.
    if remaining > 0.0 {
        acc += last * remaining;
    }
    acc / alpha
}

/// Empirical lower CVaR: mean of the lowest `α·n` order statistics, the
/// boundary sample weighted fractionally.
pub fn cvar_empirical(s: &SampleSet, alpha: f64) -> Result<f64> {
    check_level(alpha)?;
    let sorted = s.sorted();
    Ok(empirical_tail(&sorted, alpha))
}

/// [`cvar_empirical`] on already sorted samples, for sweeping several levels.
pub fn cvar_empirical_sorted(sorted: &[f64], alpha: f64) -> Result<f64> {
    check_level(alpha)?;
    if sorted.is_empty() {
        return Err(Error::domain("no samples"));
    }
    Ok(empirical_tail(sorted, alpha))
}

fn empirical_tail(sorted: &[f64], alpha: f64) -> f64 {
    let n = sorted.len() as f64;
    let target = alpha * n;
    let full = (target.floor() as usize).min(sorted.len());
    let frac = target - full as f64;
    let mut acc: f64 = sorted[..full].iter().sum();
    if frac > 0.0 && full < sorted.len() {
        acc += frac * sorted[full];
    }
    acc / target
}

/// Empirical upper CVaR.
pub fn upper_cvar_empirical(s: &SampleSet, alpha: f64) -> Result<f64> {
    check_level(alpha)?;
    let negated: Vec<f64> = s.sorted().into_iter().rev().map(|x| -x).collect();
    Ok(-empirical_tail(&negated, alpha))
}
