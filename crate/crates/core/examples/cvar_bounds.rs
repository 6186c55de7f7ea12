//! Lower/upper CVaR bounds on an expectation, and the worst-case middle
//! distribution allowed by the pointwise constraints.

use vcplab::cvar::{
    cvar_empirical, cvar_exact, upper_cvar_exact, worst_case_distribution, DiscreteDistribution,
    Lemma1Witness,
};

fn main() -> vcplab::Result<()> {
    let px = DiscreteDistribution::new(vec![(-1.0, 0.1), (-0.2, 0.3), (0.4, 0.4), (1.0, 0.2)])?;
    let (a1, a2) = (0.6, 0.8);
    // P_X1 puts extra weight on the outcomes to leave room for P_X/C1.
    let px1 = DiscreteDistribution::from_weights(vec![(-1.0, 0.3), (-0.2, 0.3), (0.4, 0.3), (1.0, 0.2)])?;
    let w = Lemma1Witness::from_levels(a1, a2)?;
    let px2 = worst_case_distribution(&px, &px1, &w)?;

    println!("E[X]                 {:.6}", px.mean());
    println!("CVaR_a1[X1]          {:.6}", cvar_exact(&px1, a1)?);
    println!("CVaR_a2[X2] (worst)  {:.6}", cvar_exact(&px2, a2)?);
    println!("upper CVaR_a2[X2]    {:.6}", upper_cvar_exact(&px2, a2)?);
    println!("upper CVaR_a1[X1]    {:.6}", upper_cvar_exact(&px1, a1)?);

    let samples = px1.sample(200_000, 7)?;
    println!("empirical CVaR_a1[X1] from 2e5 shots {:.6}", cvar_empirical(&samples, a1)?);
    Ok(())
}
