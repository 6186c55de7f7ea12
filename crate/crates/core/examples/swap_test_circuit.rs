//! Density-matrix simulation of the noisy order-2 swap-test circuit,
//! compared with the effective-channel prediction and a shot estimate.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vcplab::densesim::{
    apply_pauli_channel, sample_vcp_shots, vcp_circuit_expectations, DiagonalObservable,
    VcpCircuitSpec,
};
use vcplab::pauli::PauliChannel;
use vcplab::sampling::random_density_matrix;
use vcplab::vcp::{effective_mu_order2, SwapNoiseSpec};

fn main() -> vcplab::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let rho = random_density_matrix(2, &mut rng)?;
    let obs = DiagonalObservable::pauli_z(2, 0)?;
    let q = PauliChannel::from_weights(2, (0..16).map(|i| if i == 0 { 40.0 } else { 1.0 + i as f64 / 8.0 }).collect())?;
    let swap = SwapNoiseSpec::depolarizing(2, 2, 0.05)?;

    let spec = VcpCircuitSpec::new(rho.clone(), obs.clone(), q.clone(), &swap)?;
    let exact = vcp_circuit_expectations(&spec)?;
    let mu = effective_mu_order2(&swap, &q)?;
    let formula = obs.expectation(&apply_pauli_channel(&rho, &mu.mu)?)?;
    let shots = sample_vcp_shots(&spec, 200_000, 3)?;

    println!("circuit num/den   {:.6} / {:.6}", exact.num, exact.den);
    println!("sum of tau        {:.6}", mu.normalization);
    println!("circuit ratio     {:.10}", exact.ratio()?);
    println!("Tr(O E_mu(rho))   {:.10}", formula);
    println!("shot estimate     {:.4} (den ± {:.4})", shots.ratio()?, shots.den_stderr);
    println!("unmitigated       {:.6}", obs.expectation(&apply_pauli_channel(&rho, &q)?)?);
    println!("noiseless         {:.6}", obs.expectation(&rho)?);
    Ok(())
}
