//! Ordering of CVaR values across three related distributions.
//!
//! If `P_X/C1 ≤ P_{X1}` and `P_X/C2 ≤ P_{X2} ≤ (C1/C2)·P_{X1}` pointwise, with
//! `C1 ≥ C2 ≥ 1`, then at `α1 = 1/C1`, `α2 = 1/C2`
//!
//! `CVaR_{α1}[X1] ≤ CVaR_{α2}[X2] ≤ E[X] ≤ ¯CVaR_{α2}[X2] ≤ ¯CVaR_{α1}[X1]`.

use serde::Serialize;

use super::DiscreteDistribution;
use crate::{Error, Result};

/// Absolute slack on the pointwise probability inequalities.
pub const LEMMA1_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lemma1Witness {
    c1: f64,
    c2: f64,
}

impl Lemma1Witness {
    pub fn new(c1: f64, c2: f64) -> Result<Self> {
        if !(c2 >= 1.0 && c1 >= c2 && c1.is_finite()) {
            return Err(Error::domain(format!(
                "need C1 ≥ C2 ≥ 1, got C1 = {c1}, C2 = {c2}"
            )));
        }
        Ok(Self { c1, c2 })
    }

    /// From levels `α1 ≤ α2` in `(0, 1]`.
    pub fn from_levels(alpha1: f64, alpha2: f64) -> Result<Self> {
        if !(alpha1 > 0.0 && alpha2 > 0.0) {
            return Err(Error::domain("levels must be positive"));
        }
        Self::new(1.0 / alpha1, 1.0 / alpha2)
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }

    pub fn c2(&self) -> f64 {
        self.c2
    }

    pub fn alpha1(&self) -> f64 {
        1.0 / self.c1
    }

    pub fn alpha2(&self) -> f64 {
        1.0 / self.c2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ViolationKind {
    /// `P_X(x)/C1 > P_{X1}(x)`
    OuterLower,
    /// `P_X(x)/C2 > P_{X2}(x)`
    InnerLower,
    /// `P_{X2}(x) > (C1/C2)·P_{X1}(x)`
    InnerUpper,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Lemma1Violation {
    pub value: f64,
    pub kind: ViolationKind,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Lemma1Check {
    pub holds: bool,
    pub violations: Vec<Lemma1Violation>,
}

/// Checks the three pointwise conditions over the union of supports.
pub fn check_lemma1_conditions(
    px: &DiscreteDistribution,
    px1: &DiscreteDistribution,
    px2: &DiscreteDistribution,
    w: &Lemma1Witness,
) -> Lemma1Check {
    let mut violations = Vec::new();
    let ratio = w.c1 / w.c2;
    for x in DiscreteDistribution::support_union(&[px, px1, px2]) {
        let (p, p1, p2) = (px.prob_at(x), px1.prob_at(x), px2.prob_at(x));
        let checks = [
            (ViolationKind::OuterLower, p / w.c1, p1),
            (ViolationKind::InnerLower, p / w.c2, p2),
            (ViolationKind::InnerUpper, p2, ratio * p1),
        ];
        for (kind, lhs, rhs) in checks {
            if lhs > rhs + LEMMA1_TOL {
                violations.push(Lemma1Violation {
                    value: x,
                    kind,
                    lhs,
                    rhs,
                });
            }
        }
    }
    Lemma1Check {
        holds: violations.is_empty(),
        violations,
    }
}

/// The five quantities of a CVaR ordering chain, left to right.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChainValues {
    pub lower_outer: f64,
    pub lower_inner: f64,
    pub expectation: f64,
    pub upper_inner: f64,
    pub upper_outer: f64,
}

impl ChainValues {
    pub fn as_array(&self) -> [f64; 5] {
        [
            self.lower_outer,
            self.lower_inner,
            self.expectation,
            self.upper_inner,
            self.upper_outer,
        ]
    }

    /// Largest amount by which a link `left ≤ right` fails (≤ 0 when ordered).
    pub fn max_violation(&self) -> f64 {
        self.as_array()
            .windows(2)
            .map(|w| w[0] - w[1])
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn holds(&self, slack: f64) -> bool {
        self.max_violation() <= slack
    }
}

/// `lower_outer ≤ lower_inner ≤ expectation ≤ upper_inner ≤ upper_outer`,
/// each link within `slack`.
pub fn verify_chain(
    lower_outer: f64,
    lower_inner: f64,
    expectation: f64,
    upper_inner: f64,
    upper_outer: f64,
    slack: f64,
) -> bool {
    ChainValues {
        lower_outer,
        lower_inner,
        expectation,
        upper_inner,
        upper_outer,
    }
    .holds(slack)
}

/// The feasible `P_{X2}` with the smallest lower CVaR at `α2`.
///
/// Every point starts at its lower bound `P_X/C2`; the remaining mass then
/// fills the upper bounds `(C1/C2)·P_{X1}` from the smallest value upward,
/// splitting the last atom so the total is exactly one. The result has the
/// pointwise largest CDF among feasible distributions.
pub fn worst_case_distribution(
    px: &DiscreteDistribution,
    px1: &DiscreteDistribution,
    w: &Lemma1Witness,
) -> Result<DiscreteDistribution> {
    let support = DiscreteDistribution::support_union(&[px, px1]);
    if let Some(x) = support
        .iter()
        .find(|&&x| px.prob_at(x) / w.c1 > px1.prob_at(x) + LEMMA1_TOL)
    {
        return Err(Error::Precondition(format!(
            "P_X/C1 exceeds P_X1 at x = {x}"
        )));
    }
    let ratio = w.c1 / w.c2;
    let lower: Vec<f64> = support.iter().map(|&x| px.prob_at(x) / w.c2).collect();
    let mut remaining = 1.0 - lower.iter().sum::<f64>();
    let mut pairs = Vec::with_capacity(support.len());
    for (&x, lo) in support.iter().zip(lower) {
        let room = (ratio * px1.prob_at(x) - lo).max(0.0);
        let add = room.min(remaining.max(0.0));
        remaining -= add;
        pairs.push((x, lo + add));
    }
    DiscreteDistribution::new(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cvar::{cvar_exact, upper_cvar_exact};

    fn dist(pairs: &[(f64, f64)]) -> DiscreteDistribution {
        DiscreteDistribution::new(pairs.to_vec()).unwrap()
    }

    #[test]
    fn witness_validation() {
        assert!(Lemma1Witness::new(2.0, 1.0).is_ok());
        assert!(Lemma1Witness::new(1.0, 2.0).is_err());
        assert!(Lemma1Witness::new(0.5, 0.5).is_err());
        let w = Lemma1Witness::from_levels(0.25, 0.5).unwrap();
        assert_eq!((w.c1(), w.c2()), (4.0, 2.0));
    }

    #[test]
    fn trivial_feasible_triples() {
        let px = dist(&[(-1.0, 0.2), (0.5, 0.5), (2.0, 0.3)]);
        let w1 = Lemma1Witness::new(1.0, 1.0).unwrap();
        assert!(check_lemma1_conditions(&px, &px, &px, &w1).holds);
        let w2 = Lemma1Witness::new(2.0, 2.0).unwrap();
        assert!(check_lemma1_conditions(&px, &px, &px, &w2).holds);
    }

    #[test]
    fn reports_violation_point() {
        let px = dist(&[(0.0, 0.5), (1.0, 0.5)]);
        let px1 = dist(&[(0.0, 1.0)]);
        let w = Lemma1Witness::new(1.5, 1.0).unwrap();
        let check = check_lemma1_conditions(&px, &px1, &px, &w);
        assert!(!check.holds);
        let outer: Vec<_> = check
            .violations
            .iter()
            .filter(|v| v.kind == ViolationKind::OuterLower)
            .collect();
        assert_eq!(outer.len(), 1);
        assert_eq!(outer[0].value, 1.0);
        assert!((outer[0].lhs - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn chain_checker() {
        assert!(verify_chain(1.0, 2.0, 3.0, 4.0, 5.0, 0.0));
        assert!(!verify_chain(2.0, 1.0, 3.0, 4.0, 5.0, 0.0));
        assert!(verify_chain(1.0 + 1e-13, 1.0, 1.0, 1.0, 1.0, 1e-12));
    }

    #[test]
    fn worst_case_degenerate_witnesses() {
        let px = dist(&[(-1.0, 0.3), (0.0, 0.3), (1.0, 0.4)]);
        let out = worst_case_distribution(&px, &px, &Lemma1Witness::new(1.0, 1.0).unwrap()).unwrap();
        assert_eq!(out, px);

        let two = dist(&[(0.0, 0.5), (1.0, 0.5)]);
        let out = worst_case_distribution(&two, &two, &Lemma1Witness::new(2.0, 1.0).unwrap()).unwrap();
        // Grid search over feasible two-point distributions: P2 ≥ P_X forces P2 = P_X.
        let mut feasible = Vec::new();
        for i in 0..=1000 {
            let a = i as f64 / 1000.0;
            let cand = DiscreteDistribution::new(vec![(0.0, a), (1.0, 1.0 - a)]);
            if let Ok(c) = cand {
                if check_lemma1_conditions(&two, &two, &c, &Lemma1Witness::new(2.0, 1.0).unwrap()).holds {
                    feasible.push(c);
                }
            }
        }
        assert_eq!(feasible.len(), 1);
        assert_eq!(out, feasible[0]);
    }

    #[test]
    fn worst_case_is_feasible_and_ordered() {
        let px = dist(&[(-1.0, 0.1), (-0.2, 0.4), (0.3, 0.2), (0.9, 0.3)]);
        let px1 = dist(&[(-1.0, 0.3), (-0.2, 0.2), (0.3, 0.2), (0.9, 0.3)]);
        let w = Lemma1Witness::new(2.0, 1.25).unwrap();
        let p2 = worst_case_distribution(&px, &px1, &w).unwrap();
        assert!(check_lemma1_conditions(&px, &px1, &p2, &w).holds);
        let chain = ChainValues {
            lower_outer: cvar_exact(&px1, w.alpha1()).unwrap(),
            lower_inner: cvar_exact(&p2, w.alpha2()).unwrap(),
            expectation: px.mean(),
            upper_inner: upper_cvar_exact(&p2, w.alpha2()).unwrap(),
            upper_outer: upper_cvar_exact(&px1, w.alpha1()).unwrap(),
        };
        assert!(chain.holds(1e-12), "{chain:?}");
    }

    #[test]
    fn worst_case_rejects_infeasible() {
        let px = dist(&[(0.0, 0.5), (1.0, 0.5)]);
        let px1 = dist(&[(0.0, 1.0)]);
        assert!(worst_case_distribution(&px, &px1, &Lemma1Witness::new(1.5, 1.0).unwrap()).is_err());
    }
}
