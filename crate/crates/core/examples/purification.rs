//! Purified channels, acceptance levels and the layered order condition.

use vcplab::pauli::PauliChannel;
use vcplab::vcp::{
    alpha_level, alpha_vector, order_condition_report_with, purify, OrderRule, OrderVector,
};

fn main() -> vcplab::Result<()> {
    let noise = PauliChannel::new(1, vec![0.85, 0.05, 0.06, 0.04])?;
    println!("{:>2} {:>9} {:>9}  purified", "M", "alpha", "p0");
    for m in 1..=5 {
        let p = purify(&noise, m)?;
        let probs: Vec<String> = p.probs().iter().map(|x| format!("{x:.2e}")).collect();
        println!("{m:>2} {:>9.6} {:>9.6}  [{}]", alpha_level(&noise, m)?, p.identity_weight(), probs.join(", "));
    }

    // Two layers: the stated rule accepts this pair, the identity-inclusive
    // rule does not, because a tuple with the identity in layer 2 keeps
    // the (p_1/p_0)^{-1} factor of layer 1.
    let layers = vec![
        PauliChannel::new(1, vec![0.4, 0.2, 0.2, 0.2])?,
        PauliChannel::new(1, vec![0.997, 0.001, 0.001, 0.001])?,
    ];
    let l = OrderVector::new(vec![2, 1])?;
    let m = OrderVector::new(vec![1, 4])?;
    println!();
    println!("alpha_l = {:.6}, alpha_m = {:.6}", alpha_vector(&layers, &l)?, alpha_vector(&layers, &m)?);
    for rule in [OrderRule::NonIdentity, OrderRule::IdentityInclusive] {
        let r = order_condition_report_with(&layers, &l, &m, rule)?;
        println!("{rule:?}: holds = {}, worst product = {:.4e}", r.holds, r.worst_product);
    }
    Ok(())
}
