//! Effective channel of order-2 VCP when the controlled-SWAPs are noisy.

use vcplab::pauli::{DepolarizingSpec, PauliChannel};
use vcplab::vcp::{
    effective_mu_order2, mu0_depolarizing_closed_form, theorem6_conditions, SwapNoiseSpec,
};

fn main() -> vcplab::Result<()> {
    println!("{:>5} {:>5} {:>10} {:>10} {:>10}  advantage", "p", "q", "mu0", "closed", "q0");
    for (p, q) in [(0.0, 0.3), (0.1, 0.3), (0.3, 0.3), (0.5, 0.5), (0.7, 0.5)] {
        let swap = SwapNoiseSpec::depolarizing(2, 2, p)?;
        let circuit = PauliChannel::depolarizing(DepolarizingSpec::new(2, q)?)?;
        let eff = effective_mu_order2(&swap, &circuit)?;
        let check = theorem6_conditions(&eff.mu, &circuit, 1e-12)?;
        println!(
            "{p:>5} {q:>5} {:>10.6} {:>10.6} {:>10.6}  {}",
            eff.mu.identity_weight(),
            mu0_depolarizing_closed_form(p, q)?,
            circuit.identity_weight(),
            check.holds()
        );
    }
    Ok(())
}
