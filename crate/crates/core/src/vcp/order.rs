use super::alpha_level;
use crate::pauli::PauliChannel;
use crate::{Error, Result};

/// Per-layer purification orders `(l_1, …, l_k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderVector(Vec<u32>);

impl OrderVector {
    pub fn new(orders: Vec<u32>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::domain("order vector is empty"));
        }
        if orders.contains(&0) {
            return Err(Error::domain("orders must be at least 1"));
        }
        Ok(Self(orders))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

fn check_layers(channels: &[PauliChannel], orders: &OrderVector) -> Result<()> {
    if channels.len() != orders.len() {
        return Err(Error::dim(format!(
            "{} channels but {} orders",
            channels.len(),
            orders.len()
        )));
    }
    if let Some(first) = channels.first() {
        if channels.iter().any(|c| c.num_qubits() != first.num_qubits()) {
            return Err(Error::dim("layers act on different qubit counts"));
        }
    }
    Ok(())
}

/// Product of per-layer acceptance levels.
pub fn alpha_vector(channels: &[PauliChannel], orders: &OrderVector) -> Result<f64> {
    check_layers(channels, orders)?;
    channels
        .iter()
        .zip(orders.as_slice())
        .try_fold(1.0, |acc, (c, &l)| Ok(acc * alpha_level(c, l)?))
}

/// Which index tuples the order condition ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrderRule {
    /// Every `j_i ≥ 1`, as the condition is usually stated.
    #[default]
    NonIdentity,
    /// Tuples may also pick the identity in some layers. This is the range
    /// the layered expansion actually needs; components with zero
    /// probability carry no weight and are skipped.
    IdentityInclusive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderConditionReport {
    pub holds: bool,
    /// `Π_i max_{j_i} (p_{i,j_i}/p_{i,0})^{m_i - l_i}` over the rule's tuples.
    pub worst_product: f64,
    pub diagnostic: Option<String>,
}

/// Whether `Π_i (p_{i,j_i}/p_{i,0})^{m_i-l_i} ≤ 1` for every tuple of
/// non-identity indices.
pub fn order_condition(
    channels: &[PauliChannel],
    l: &OrderVector,
    m: &OrderVector,
) -> Result<bool> {
    Ok(order_condition_report(channels, l, m)?.holds)
}

/// [`order_condition`] with the extremal product and a diagnostic.
///
/// Each factor is maximized independently: the largest ratio for a positive
/// exponent, the smallest for a negative one. A zero component under a
/// negative exponent makes that factor unbounded and fails the check.
pub fn order_condition_report(
    channels: &[PauliChannel],
    l: &OrderVector,
    m: &OrderVector,
) -> Result<OrderConditionReport> {
    order_condition_report_with(channels, l, m, OrderRule::NonIdentity)
}

/// [`order_condition`] under an explicit [`OrderRule`].
pub fn order_condition_with(
    channels: &[PauliChannel],
    l: &OrderVector,
    m: &OrderVector,
    rule: OrderRule,
) -> Result<bool> {
    Ok(order_condition_report_with(channels, l, m, rule)?.holds)
}

pub fn order_condition_report_with(
    channels: &[PauliChannel],
    l: &OrderVector,
    m: &OrderVector,
    rule: OrderRule,
) -> Result<OrderConditionReport> {
    check_layers(channels, l)?;
    check_layers(channels, m)?;
    let mut product = 1.0;
    for (layer, c) in channels.iter().enumerate() {
        let p0 = c.identity_weight();
        if p0 <= 0.0 {
            return Err(Error::Degenerate(format!(
                "layer {layer} has zero identity coefficient"
            )));
        }
        if !c.is_identity_dominant() {
            return Err(Error::Precondition(format!(
                "layer {layer} is not identity-dominant"
            )));
        }
        let exponent = m.as_slice()[layer] as i32 - l.as_slice()[layer] as i32;
        let start = match rule {
            OrderRule::NonIdentity => 1,
            OrderRule::IdentityInclusive => 0,
        };
        let ratios = c.probs()[start..]
            .iter()
            .filter(|&&p| rule == OrderRule::NonIdentity || p > 0.0)
            .map(|&p| p / p0);
        let factor = match exponent.signum() {
            0 => 1.0,
            1 => ratios.fold(0.0, f64::max).powi(exponent),
            _ => {
                let min = ratios.fold(f64::INFINITY, f64::min);
                if min == 0.0 {
                    return Ok(OrderConditionReport {
                        holds: false,
                        worst_product: f64::INFINITY,
                        diagnostic: Some(format!(
                            "layer {layer}: zero Pauli component under negative exponent {exponent}"
                        )),
                    });
                }
                min.powi(exponent)
            }
        };
        product *= factor;
    }
    Ok(OrderConditionReport {
        holds: product <= 1.0,
        worst_product: product,
        diagnostic: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch(p: &[f64]) -> PauliChannel {
        PauliChannel::from_weights(1, p.to_vec()).unwrap()
    }

    #[test]
    fn alpha_vector_products() {
        let c = ch(&[0.9, 0.1, 0.0, 0.0]);
        let one = OrderVector::new(vec![2]).unwrap();
        assert_eq!(alpha_vector(&[c.clone()], &one).unwrap(), alpha_level(&c, 2).unwrap());
        let two = OrderVector::new(vec![1, 2]).unwrap();
        let got = alpha_vector(&[c.clone(), c.clone()], &two).unwrap();
        assert!((got - 0.9 * 0.81 / 0.82).abs() < 1e-15);
        let same = OrderVector::new(vec![3, 3, 3]).unwrap();
        let got = alpha_vector(&[c.clone(), c.clone(), c.clone()], &same).unwrap();
        assert!((got - alpha_level(&c, 3).unwrap().powi(3)).abs() < 1e-15);
        assert!(alpha_vector(&[c], &two).is_err());
    }

    #[test]
    fn order_vector_validation() {
        assert!(OrderVector::new(vec![]).is_err());
        assert!(OrderVector::new(vec![1, 0]).is_err());
    }

    #[test]
    fn dominating_orders_pass() {
        let cs = vec![ch(&[0.7, 0.1, 0.1, 0.1]), ch(&[0.9, 0.05, 0.03, 0.02])];
        let l = OrderVector::new(vec![1, 2]).unwrap();
        let m = OrderVector::new(vec![3, 2]).unwrap();
        assert!(order_condition(&cs, &l, &m).unwrap());
        assert!(order_condition(&cs, &l, &l).unwrap());
    }

    #[test]
    fn mixed_orders_match_enumeration() {
        let cs = vec![ch(&[0.9, 0.1, 0.05, 0.05]), ch(&[0.9, 0.1, 0.05, 0.05])];
        let l = OrderVector::new(vec![2, 1]).unwrap();
        let m = OrderVector::new(vec![1, 2]).unwrap();
        let mut worst = 0.0f64;
        for j1 in 1..4 {
            for j2 in 1..4 {
                let r1 = cs[0].probs()[j1] / cs[0].probs()[0];
                let r2 = cs[1].probs()[j2] / cs[1].probs()[0];
                worst = worst.max(r1.powi(-1) * r2.powi(1));
            }
        }
        let report = order_condition_report(&cs, &l, &m).unwrap();
        assert!((report.worst_product - worst).abs() < 1e-12);
        assert_eq!(report.holds, worst <= 1.0);
        // smallest ratio 0.05/0.9 inverted times largest 0.1/0.9 = 2
        assert!(!report.holds);
    }

    #[test]
    fn zero_component_under_negative_exponent() {
        let cs = vec![ch(&[0.9, 0.1, 0.0, 0.0])];
        let l = OrderVector::new(vec![3]).unwrap();
        let m = OrderVector::new(vec![1]).unwrap();
        let report = order_condition_report(&cs, &l, &m).unwrap();
        assert!(!report.holds);
        assert!(report.diagnostic.is_some());
    }

    #[test]
    fn identity_inclusive_rule() {
        // Passes the non-identity rule but not the inclusive one: picking the
        // identity in layer 2 leaves the first factor (0.2/0.4)^{-1} = 2.
        let eps = 1e-3;
        let cs = vec![
            ch(&[0.4, 0.2, 0.2, 0.2]),
            ch(&[1.0 - 3.0 * eps, eps, eps, eps]),
        ];
        let l = OrderVector::new(vec![2, 1]).unwrap();
        let m = OrderVector::new(vec![1, 4]).unwrap();
        assert!(order_condition(&cs, &l, &m).unwrap());
        let inclusive = order_condition_report_with(&cs, &l, &m, OrderRule::IdentityInclusive).unwrap();
        assert!(!inclusive.holds);
        assert!((inclusive.worst_product - 2.0).abs() < 1e-12);
        // Brute force over all tuples, identity included.
        let mut worst = 0.0f64;
        for j1 in 0..4 {
            for j2 in 0..4 {
                let r1 = cs[0].probs()[j1] / cs[0].probs()[0];
                let r2 = cs[1].probs()[j2] / cs[1].probs()[0];
                worst = worst.max(r1.powi(-1) * r2.powi(3));
            }
        }
        assert!((inclusive.worst_product - worst).abs() < 1e-12);
        // Componentwise m ≥ l always passes both rules.
        let up = OrderVector::new(vec![2, 3]).unwrap();
        assert!(order_condition_with(&cs, &l, &up, OrderRule::IdentityInclusive).unwrap());
        // A zero component is skipped rather than treated as unbounded.
        let sparse = vec![ch(&[0.9, 0.1, 0.0, 0.0])];
        let (hi, lo) = (OrderVector::new(vec![3]).unwrap(), OrderVector::new(vec![1]).unwrap());
        assert!(!order_condition_with(&sparse, &hi, &lo, OrderRule::IdentityInclusive).unwrap());
        assert!(order_condition_report_with(&sparse, &hi, &lo, OrderRule::IdentityInclusive)
            .unwrap()
            .diagnostic
            .is_none());
    }

    #[test]
    fn zero_identity_rejected() {
        let cs = vec![PauliChannel::new(1, vec![0.0, 1.0, 0.0, 0.0]).unwrap()];
        let l = OrderVector::new(vec![1]).unwrap();
        assert!(order_condition(&cs, &l, &l).is_err());
    }
}
