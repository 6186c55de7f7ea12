//! Where noisy order-2 VCP still helps under depolarizing noise, and how
//! many IID gates a circuit may have for that to hold.

use vcplab::regions::{iid_gate_bounds, in_advantage_region, p_critical, q_boundary};

fn main() -> vcplab::Result<()> {
    println!("p_c = {:.7}", p_critical());
    println!("{:>5} {:>10} {:>10}", "p", "q_lower", "q_upper");
    for i in 0..=11 {
        let p = 0.05 * i as f64;
        let (lo, hi) = q_boundary(p)?;
        println!("{p:>5.2} {lo:>10.6} {hi:>10.6}");
    }

    let pt = in_advantage_region(0.2, 0.4)?;
    println!("\n(0.2, 0.4): mu0 = {:.6}, q0 = {:.6}, advantageous = {}", pt.mu0, pt.q0, pt.advantageous);

    println!("\n{:>5} {:>7} {:>6} {:>6}", "p", "q", "n_min", "n_max");
    for p in [0.05, 0.2, 0.4] {
        for q in [1e-3, 1e-2] {
            let b = iid_gate_bounds(p, q)?;
            let max = b.n_max.map_or("inf".to_string(), |n| n.to_string());
            println!("{p:>5} {q:>7} {:>6} {:>6}", b.n_min, max);
        }
    }
    Ok(())
}
