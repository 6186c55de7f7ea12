use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result, NORMALIZATION_TOL};

/// A finite real-valued distribution with strictly increasing support.
///
/// Duplicate values are merged and zero-probability atoms dropped on
/// construction.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDistribution {
    outcomes: Vec<(f64, f64)>,
}

impl DiscreteDistribution {
    pub fn new(pairs: Vec<(f64, f64)>) -> Result<Self> {
        let d = Self::build(pairs)?;
        let total: f64 = d.outcomes.iter().map(|(_, p)| p).sum();
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::domain(format!(
                "distribution mass is {total}, not 1"
            )));
        }
        Ok(d)
    }

    /// Renormalizes nonnegative weights.
    pub fn from_weights(pairs: Vec<(f64, f64)>) -> Result<Self> {
        let total: f64 = pairs.iter().map(|(_, w)| w).sum();
        if !(total > 0.0) {
            return Err(Error::Degenerate("weights sum to zero".into()));
        }
        Self::build(pairs.into_iter().map(|(v, w)| (v, w / total)).collect())
    }

    fn build(mut pairs: Vec<(f64, f64)>) -> Result<Self> {
        if let Some(&(v, p)) = pairs
            .iter()
            .find(|(v, p)| !v.is_finite() || !p.is_finite() || *p < 0.0)
        {
            return Err(Error::domain(format!("invalid atom ({v}, {p})")));
        }
        pairs.retain(|(_, p)| *p > 0.0);
        if pairs.is_empty() {
            return Err(Error::Degenerate("distribution has no mass".into()));
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut outcomes: Vec<(f64, f64)> = Vec::with_capacity(pairs.len());
        for (v, p) in pairs {
            match outcomes.last_mut() {
                Some(last) if last.0 == v => last.1 += p,
                _ => outcomes.push((v, p)),
            }
        }
        Ok(Self { outcomes })
    }

    pub fn point(value: f64) -> Self {
        Self {
            outcomes: vec![(value, 1.0)],
        }
    }

    /// `(value, probability)` pairs in increasing value order.
    pub fn outcomes(&self) -> &[(f64, f64)] {
        &self.outcomes
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.outcomes.iter().map(|(v, _)| *v)
    }

    pub fn mean(&self) -> f64 {
        self.outcomes.iter().map(|(v, p)| v * p).sum()
    }

    pub fn min_value(&self) -> f64 {
        self.outcomes[0].0
    }

    pub fn max_value(&self) -> f64 {
        self.outcomes[self.outcomes.len() - 1].0
    }

    /// Probability of exactly `value` (zero off the support).
    pub fn prob_at(&self, value: f64) -> f64 {
        self.outcomes
            .binary_search_by(|(v, _)| v.total_cmp(&value))
            .map_or(0.0, |i| self.outcomes[i].1)
    }

    /// Right-continuous CDF `P(X ≤ x)`.
    pub fn cdf(&self, x: f64) -> f64 {
        self.outcomes
            .iter()
            .take_while(|(v, _)| *v <= x)
            .map(|(_, p)| p)
            .sum()
    }

    /// `x_α = inf{x : F(x) ≥ α}`.
    pub fn quantile(&self, alpha: f64) -> Result<f64> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::domain(format!("quantile level {alpha} outside (0, 1]")));
        }
        let mut acc = 0.0;
        for &(v, p) in &self.outcomes {
            acc += p;
            if acc >= alpha {
                return Ok(v);
            }
        }
        Ok(self.max_value())
    }

    /// Distribution of `−X`.
    pub fn negate(&self) -> Self {
        Self {
            outcomes: self.outcomes.iter().rev().map(|&(v, p)| (-v, p)).collect(),
        }
    }

    /// Sorted union of the supports of several distributions.
    pub fn support_union(dists: &[&DiscreteDistribution]) -> Vec<f64> {
        let mut values: Vec<f64> = dists.iter().flat_map(|d| d.values()).collect();
        values.sort_by(f64::total_cmp);
        values.dedup();
        values
    }

    /// `n` i.i.d. draws from a ChaCha8 stream seeded with `seed`.
    pub fn sample(&self, n: usize, seed: u64) -> Result<SampleSet> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let index = WeightedIndex::new(self.outcomes.iter().map(|(_, p)| *p))
            .map_err(|e| Error::Degenerate(e.to_string()))?;
        let samples = (0..n)
            .map(|_| self.outcomes[index.sample(&mut rng)].0)
            .collect();
        SampleSet::new(samples, seed)
    }
}

/// Samples plus the seed that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    samples: Vec<f64>,
    seed: u64,
}

impl SampleSet {
    pub fn new(samples: Vec<f64>, seed: u64) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::domain("sample set is empty"));
        }
        if samples.iter().any(|x| !x.is_finite()) {
            return Err(Error::domain("non-finite sample"));
        }
        Ok(Self { samples, seed })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / self.samples.len() as f64
    }

    pub fn sorted(&self) -> Vec<f64> {
        let mut s = self.samples.clone();
        s.sort_unstable_by(f64::total_cmp);
        s
    }
}
