//! Seeded verification campaigns.
//!
//! Every trial draws its own RNG stream from `trial_seed(seed, trial)`, so a
//! report depends only on its configuration, never on scheduling.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cvar::{
    check_lemma1_conditions, cvar_exact, upper_cvar_exact, worst_case_distribution, ChainValues,
    DiscreteDistribution, Lemma1Witness,
};
use crate::densesim::{
    apply_pauli_channel, bruteforce_mu_appendix_d, measurement_distribution,
    vcp_circuit_expectations, DensityMatrix, DiagonalObservable, VcpCircuitSpec,
};
use crate::pauli::{pauli_dim, DepolarizingSpec, PauliChannel};
use crate::regions::{p_critical, q_boundary};
use crate::sampling::{
    random_density_matrix, random_diagonal_observable, random_distribution,
    random_identity_dominant_channel, random_probability_vector, random_unitary, trial_seed,
};
use crate::vcp::{
    alpha_level, alpha_vector, effective_mu_order2, order_condition_with, purify, theorem6_conditions,
    OrderRule, OrderVector, SwapNoiseSpec,
};
use crate::{Error, Result};

/// Slack on exact inequality chains.
pub const DEFAULT_SLACK: f64 = 1e-12;
/// Circuit simulation against the effective-channel formula.
pub const ORACLE_TOL: f64 = 1e-10;
/// Literal sum against the fast effective-channel path.
pub const BRUTEFORCE_TOL: f64 = 1e-12;
/// Largest system size for exact distributions.
pub const MAX_VERIFY_QUBITS: usize = 3;

const LAYERS: usize = 3;
const MAX_ORDER: u32 = 4;
const MAX_REJECTIONS: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    Lemma1,
    Thm1,
    Thm2,
    Thm3,
    Thm6,
    Thm4Oracle,
}

impl TheoremId {
    pub const ALL: [TheoremId; 6] = [
        TheoremId::Lemma1,
        TheoremId::Thm1,
        TheoremId::Thm2,
        TheoremId::Thm3,
        TheoremId::Thm6,
        TheoremId::Thm4Oracle,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Lemma1 => "lemma1",
            TheoremId::Thm1 => "thm1",
            TheoremId::Thm2 => "thm2",
            TheoremId::Thm3 => "thm3",
            TheoremId::Thm6 => "thm6",
            TheoremId::Thm4Oracle => "thm4-oracle",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::domain(format!("unknown check {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub theorem: TheoremId,
    pub trials: u64,
    pub seed: u64,
    pub num_qubits: usize,
    pub slack: f64,
    /// Admissibility rule for `thm3` order pairs.
    pub order_rule: OrderRule,
}

impl VerifyConfig {
    pub fn new(theorem: TheoremId, trials: u64, seed: u64, num_qubits: usize) -> Self {
        Self {
            theorem,
            trials,
            seed,
            num_qubits,
            slack: DEFAULT_SLACK,
            order_rule: OrderRule::default(),
        }
    }

    pub fn with_order_rule(mut self, rule: OrderRule) -> Self {
        self.order_rule = rule;
        self
    }

    pub fn with_slack(mut self, slack: f64) -> Self {
        self.slack = slack;
        self
    }
}

/// One trial. For inequality checks `values` is the five-term chain; for
/// `thm4-oracle` it is `[circuit ratio, formula ratio, brute-force ratio]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub seed: u64,
    pub num_qubits: usize,
    pub values: Vec<f64>,
    pub max_violation: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub theorem: TheoremId,
    pub trials: u64,
    pub seed: u64,
    pub num_qubits: usize,
    pub slack: f64,
    /// Largest chain violation (or oracle discrepancy) over all trials.
    pub max_violation: f64,
    /// Samples discarded because they did not meet the check's hypotheses.
    pub rejected_samples: u64,
    pub failures: Vec<TrialRecord>,
    pub pass: bool,
}

pub fn run(config: &VerifyConfig) -> Result<VerificationReport> {
    if config.trials == 0 {
        return Err(Error::domain("at least one trial is required"));
    }
    let n = config.num_qubits;
    let limit = match config.theorem {
        TheoremId::Thm4Oracle => 2,
        _ => MAX_VERIFY_QUBITS,
    };
    if n == 0 || n > limit {
        return Err(Error::DenseLimit(format!(
            "{} supports 1..={limit} qubits, got {n}",
            config.theorem
        )));
    }
    if !(config.slack >= 0.0) {
        return Err(Error::domain("slack must be nonnegative"));
    }
    let outcomes: Vec<(TrialRecord, u64)> = (0..config.trials)
        .into_par_iter()
        .map(|t| run_trial(config, t))
        .collect();
    let max_violation = outcomes
        .iter()
        .map(|(r, _)| r.max_violation)
        .fold(f64::NEG_INFINITY, f64::max);
    let rejected_samples = outcomes.iter().map(|(_, k)| k).sum();
    let failures: Vec<TrialRecord> = outcomes
        .into_iter()
        .filter_map(|(r, _)| (!r.pass).then_some(r))
        .collect();
    Ok(VerificationReport {
        theorem: config.theorem,
        trials: config.trials,
        seed: config.seed,
        num_qubits: n,
        slack: config.slack,
        max_violation,
        rejected_samples,
        pass: failures.is_empty(),
        failures,
    })
}

/// Runs a single trial; errors become failing records.
pub fn run_trial(config: &VerifyConfig, trial: u64) -> (TrialRecord, u64) {
    let seed = trial_seed(config.seed, trial);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = config.num_qubits;
    let outcome = match config.theorem {
        TheoremId::Lemma1 => lemma1_trial(&mut rng, config.slack),
        TheoremId::Thm1 => thm1_trial(n, &mut rng, config.slack),
        TheoremId::Thm2 => thm2_trial(n, &mut rng, config.slack),
        TheoremId::Thm3 => thm3_trial(n, &mut rng, config.slack, config.order_rule),
        TheoremId::Thm6 => thm6_trial(n, &mut rng, config.slack),
        TheoremId::Thm4Oracle => oracle_trial(n, &mut rng),
    };
    let (outcome, rejected) = match outcome {
        Ok((o, k)) => (o, k),
        Err(e) => (
            Outcome {
                values: Vec::new(),
                max_violation: f64::INFINITY,
                pass: false,
                note: Some(e.to_string()),
            },
            0,
        ),
    };
    (
        TrialRecord {
            trial,
            seed,
            num_qubits: n,
            values: outcome.values,
            max_violation: outcome.max_violation,
            pass: outcome.pass,
            note: outcome.note,
        },
        rejected,
    )
}

struct Outcome {
    values: Vec<f64>,
    max_violation: f64,
    pass: bool,
    note: Option<String>,
}

impl Outcome {
    fn chain(c: ChainValues, slack: f64, note: Option<String>) -> Self {
        Self {
            values: c.as_array().to_vec(),
            max_violation: c.max_violation(),
            pass: c.holds(slack),
            note,
        }
    }
}

/// `CVaR_{α1}[X1] ≤ CVaR_{α2}[X2] ≤ E[X] ≤ ¯CVaR_{α2}[X2] ≤ ¯CVaR_{α1}[X1]`.
pub fn cvar_chain(
    px: &DiscreteDistribution,
    outer: (&DiscreteDistribution, f64),
    inner: (&DiscreteDistribution, f64),
) -> Result<ChainValues> {
    Ok(ChainValues {
        lower_outer: cvar_exact(outer.0, outer.1)?,
        lower_inner: cvar_exact(inner.0, inner.1)?,
        expectation: px.mean(),
        upper_inner: upper_cvar_exact(inner.0, inner.1)?,
        upper_outer: upper_cvar_exact(outer.0, outer.1)?,
    })
}

struct Instance {
    rho: DensityMatrix,
    obs: DiagonalObservable,
    px: DiscreteDistribution,
}

fn random_instance(n: usize, rng: &mut ChaCha8Rng) -> Result<Instance> {
    let rho = random_density_matrix(n, rng)?;
    let obs = random_diagonal_observable(n, rng)?;
    let px = measurement_distribution(&rho, &obs)?;
    Ok(Instance { rho, obs, px })
}

fn measured(inst: &Instance, c: &PauliChannel) -> Result<DiscreteDistribution> {
    measurement_distribution(&apply_pauli_channel(&inst.rho, c)?, &inst.obs)
}

fn mix(a: &DiscreteDistribution, b: &DiscreteDistribution, lambda: f64) -> Result<DiscreteDistribution> {
    let pairs = a
        .outcomes()
        .iter()
        .map(|&(v, p)| (v, lambda * p))
        .chain(b.outcomes().iter().map(|&(v, p)| (v, (1.0 - lambda) * p)))
        .collect();
    DiscreteDistribution::from_weights(pairs)
}

/// A feasible triple: `X1` leans on `X` by construction, and `X2` is a
/// random convex combination of the two extreme feasible distributions.
fn lemma1_trial(rng: &mut ChaCha8Rng, slack: f64) -> Result<(Outcome, u64)> {
    let atoms = rng.random_range(2..=8);
    let px = random_distribution(atoms, rng)?;
    let alpha2 = rng.random_range(0.05..=1.0);
    let alpha1 = alpha2 * rng.random_range(0.05..=1.0);
    let w = Lemma1Witness::from_levels(alpha1, alpha2)?;
    let spread = random_probability_vector(atoms, rng);
    let px1 = DiscreteDistribution::from_weights(
        px.outcomes()
            .iter()
            .zip(&spread)
            .map(|(&(v, p), s)| (v, p * alpha1 + (1.0 - alpha1) * s))
            .collect(),
    )?;
    let low = worst_case_distribution(&px, &px1, &w)?;
    let high = worst_case_distribution(&px.negate(), &px1.negate(), &w)?.negate();
    let px2 = mix(&low, &high, rng.random())?;
    let check = check_lemma1_conditions(&px, &px1, &px2, &w);
    let chain = cvar_chain(&px, (&px1, alpha1), (&px2, alpha2))?;
    let mut out = Outcome::chain(chain, slack, None);
    if !check.holds {
        out.pass = false;
        out.note = Some(format!("constructed triple infeasible: {:?}", check.violations));
    }
    Ok((out, 0))
}

fn thm1_trial(n: usize, rng: &mut ChaCha8Rng, slack: f64) -> Result<(Outcome, u64)> {
    let c = random_identity_dominant_channel(n, rng)?;
    let order = rng.random_range(2..=MAX_ORDER);
    let inst = random_instance(n, rng)?;
    let noisy = measured(&inst, &c)?;
    let vcp = measured(&inst, &purify(&c, order)?)?;
    let chain = cvar_chain(
        &inst.px,
        (&noisy, c.identity_weight()),
        (&vcp, alpha_level(&c, order)?),
    )?;
    Ok((Outcome::chain(chain, slack, Some(format!("L = {order}"))), 0))
}

fn thm2_trial(n: usize, rng: &mut ChaCha8Rng, slack: f64) -> Result<(Outcome, u64)> {
    let c = random_identity_dominant_channel(n, rng)?;
    let l = rng.random_range(1..MAX_ORDER);
    let m = rng.random_range(l + 1..=MAX_ORDER);
    let inst = random_instance(n, rng)?;
    let xl = measured(&inst, &purify(&c, l)?)?;
    let xm = measured(&inst, &purify(&c, m)?)?;
    let chain = cvar_chain(&inst.px, (&xl, alpha_level(&c, l)?), (&xm, alpha_level(&c, m)?))?;
    Ok((Outcome::chain(chain, slack, Some(format!("L = {l}, M = {m}"))), 0))
}

fn random_orders(rng: &mut ChaCha8Rng) -> OrderVector {
    let v = (0..LAYERS).map(|_| rng.random_range(1..=MAX_ORDER)).collect();
    OrderVector::new(v).expect("orders are positive")
}

/// Layered circuit `ρ = U_1 ∘ … ∘ U_k(ρ_0)` with each `U_i` followed by the
/// purified noise `E_i^{(l_i)}`; order pairs are drawn until they pass
/// the order condition under `rule`.
fn thm3_trial(
    n: usize,
    rng: &mut ChaCha8Rng,
    slack: f64,
    rule: OrderRule,
) -> Result<(Outcome, u64)> {
    let channels: Vec<PauliChannel> = (0..LAYERS)
        .map(|_| random_identity_dominant_channel(n, rng))
        .collect::<Result<_>>()?;
    let mut rejected = 0;
    let (l, m) = loop {
        let (l, m) = (random_orders(rng), random_orders(rng));
        if l != m && order_condition_with(&channels, &l, &m, rule)? {
            break (l, m);
        }
        rejected += 1;
        if rejected > MAX_REJECTIONS {
            return Err(Error::Degenerate("no admissible order pair found".into()));
        }
    };
    let unitaries = (0..LAYERS)
        .map(|_| random_unitary(n, rng))
        .collect::<Result<Vec<_>>>()?;
    let rho0 = random_density_matrix(n, rng)?;
    let obs = random_diagonal_observable(n, rng)?;

    let run_layers = |orders: Option<&OrderVector>| -> Result<DensityMatrix> {
        let mut rho = rho0.clone();
        for i in (0..LAYERS).rev() {
            rho = rho.evolve(&unitaries[i])?;
            if let Some(o) = orders {
                rho = apply_pauli_channel(&rho, &purify(&channels[i], o.as_slice()[i])?)?;
            }
        }
        Ok(rho)
    };
    let px = measurement_distribution(&run_layers(None)?, &obs)?;
    let xl = measurement_distribution(&run_layers(Some(&l))?, &obs)?;
    let xm = measurement_distribution(&run_layers(Some(&m))?, &obs)?;
    let (al, am) = (alpha_vector(&channels, &l)?, alpha_vector(&channels, &m)?);
    let hypotheses = match Lemma1Witness::from_levels(al, am) {
        Ok(w) => check_lemma1_conditions(&px, &xl, &xm, &w).holds.to_string(),
        Err(_) => "false (α_m < α_l)".to_string(),
    };
    let chain = cvar_chain(&px, (&xl, al), (&xm, am))?;
    let note = format!(
        "l = {:?}, m = {:?}, pointwise hypotheses hold: {hypotheses}",
        l.as_slice(),
        m.as_slice()
    );
    Ok((Outcome::chain(chain, slack, Some(note)), rejected))
}

fn depolarizing(n: usize, param: f64) -> Result<PauliChannel> {
    PauliChannel::depolarizing(DepolarizingSpec::new(n, param)?)
}

/// Two-qubit copies draw `(p, q)` uniformly inside the closed-form region;
/// other sizes draw from the unit square and keep pairs meeting the
/// hypotheses `μ_0 ≥ q_0`, `μ_i/μ_0 ≤ q_i/q_0`.
fn thm6_trial(n: usize, rng: &mut ChaCha8Rng, slack: f64) -> Result<(Outcome, u64)> {
    let mut rejected = 0;
    let (p, q, mu, circuit) = loop {
        let (p, q) = if n == 2 {
            let p = rng.random_range(0.0..=p_critical());
            let (lo, hi) = q_boundary(p)?;
            (p, rng.random_range(lo..=hi.min(1.0)))
        } else {
            (rng.random(), rng.random())
        };
        let circuit = depolarizing(n, q)?;
        let mu = effective_mu_order2(&SwapNoiseSpec::depolarizing(2, n, p)?, &circuit)?.mu;
        if n == 2 || theorem6_conditions(&mu, &circuit, 0.0)?.holds() {
            break (p, q, mu, circuit);
        }
        rejected += 1;
        if rejected > MAX_REJECTIONS {
            return Err(Error::Degenerate("no admissible (p, q) found".into()));
        }
    };
    let hyp = theorem6_conditions(&mu, &circuit, slack)?;
    let inst = random_instance(n, rng)?;
    let noisy = measured(&inst, &circuit)?;
    let vcp = measured(&inst, &mu)?;
    let chain = cvar_chain(&inst.px, (&noisy, hyp.q0), (&vcp, hyp.mu0))?;
    let mut out = Outcome::chain(chain, slack, Some(format!("p = {p}, q = {q}")));
    if !hyp.holds() {
        out.pass = false;
        out.note = Some(format!("p = {p}, q = {q}: hypotheses fail {hyp:?}"));
    }
    Ok((out, rejected))
}

fn formula_ratio(inst: &Instance, mu: &PauliChannel) -> Result<f64> {
    inst.obs.expectation(&apply_pauli_channel(&inst.rho, mu)?)
}

/// Circuit simulation, fast effective channel and literal sum on one
/// random instance.
fn oracle_trial(n: usize, rng: &mut ChaCha8Rng) -> Result<(Outcome, u64)> {
    let p = PauliChannel::new(2 * n, random_probability_vector(pauli_dim(2 * n), rng))?;
    let q = PauliChannel::new(n, random_probability_vector(pauli_dim(n), rng))?;
    let inst = random_instance(n, rng)?;
    let swap = SwapNoiseSpec::dense(2, n, p.clone())?;
    let fast = effective_mu_order2(&swap, &q)?;
    let tau = bruteforce_mu_appendix_d(p.probs(), q.probs())?;
    let brute = PauliChannel::from_weights(n, tau)?;
    let spec = VcpCircuitSpec::new(inst.rho.clone(), inst.obs.clone(), q, &swap)?;
    let circuit = vcp_circuit_expectations(&spec)?.ratio()?;
    let formula = formula_ratio(&inst, &fast.mu)?;
    let brute = formula_ratio(&inst, &brute)?;
    let (d_circ, d_brute) = ((circuit - formula).abs(), (brute - formula).abs());
    Ok((
        Outcome {
            values: vec![circuit, formula, brute],
            max_violation: d_circ.max(d_brute),
            pass: d_circ <= ORACLE_TOL && d_brute <= BRUTEFORCE_TOL,
            note: None,
        },
        0,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(theorem: TheoremId, n: usize) -> VerificationReport {
        run(&VerifyConfig::new(theorem, 50, 7, n)).unwrap()
    }

    #[test]
    fn ids_round_trip() {
        for t in TheoremId::ALL {
            assert_eq!(t.as_str().parse::<TheoremId>().unwrap(), t);
        }
        assert!("thm5".parse::<TheoremId>().is_err());
    }

    #[test]
    fn proven_chains_hold() {
        for t in [TheoremId::Lemma1, TheoremId::Thm1, TheoremId::Thm2, TheoremId::Thm6] {
            for n in 1..=2 {
                let r = quick(t, n);
                assert!(r.pass, "{t} N={n}: {:?}", r.failures.first());
            }
        }
    }

    #[test]
    fn identity_inclusive_orders_hold() {
        for n in 1..=2 {
            let cfg = VerifyConfig::new(TheoremId::Thm3, 50, 7, n)
                .with_order_rule(OrderRule::IdentityInclusive);
            let r = run(&cfg).unwrap();
            assert!(r.pass, "N={n}: {:?}", r.failures.first());
        }
    }

    #[test]
    fn oracle_agrees() {
        let r = quick(TheoremId::Thm4Oracle, 1);
        assert!(r.pass && r.max_violation <= ORACLE_TOL);
    }

    #[test]
    fn reports_are_deterministic() {
        let cfg = VerifyConfig::new(TheoremId::Thm3, 20, 3, 1);
        assert_eq!(run(&cfg).unwrap(), run(&cfg).unwrap());
    }

    #[test]
    fn config_validation() {
        assert!(run(&VerifyConfig::new(TheoremId::Thm1, 0, 0, 1)).is_err());
        assert!(run(&VerifyConfig::new(TheoremId::Thm1, 1, 0, 4)).is_err());
        assert!(run(&VerifyConfig::new(TheoremId::Thm4Oracle, 1, 0, 3)).is_err());
    }
}
