//! Damped Rabi oscillation of the excited-state population.
//!
//! P(e, τ) oscillates at Ω/ε = 2ξ₀ under a Gaussian envelope set by the
//! separation of the two momentum branches, and settles at 1/2.

use osg_rabi::analytic;
use osg_rabi::params::{derive_params, PhysicalConfig};

fn main() -> osg_rabi::Result<()> {
    let params = derive_params(&PhysicalConfig::default())?;
    println!("Rabi frequency (units of ε): {:.6}", params.rabi_frequency());
    println!("{:>6} {:>12} {:>12}", "tau", "P_e", "envelope");
    for i in 0..=24 {
        let tau = 1.25 * i as f64;
        println!(
            "{tau:>6.2} {:>12.8} {:>12.4e}",
            analytic::excited_population(&params, tau)?,
            analytic::overlap_envelope(&params, tau)
        );
    }

    // Without a Rabi phase the decay is monotone.
    let node = osg_rabi::ModelParams::dimensionless(params.eta, 0.0, 0.0, params.delta_xi0)?;
    let series: Vec<f64> = (0..=30)
        .map(|i| analytic::excited_population(&node, i as f64))
        .collect::<osg_rabi::Result<_>>()?;
    let monotone = series.windows(2).all(|w| w[1] <= w[0]);
    println!("xi0 = 0: P_e(0) = {}, P_e(30) = {:.12}, monotone = {monotone}", series[0], series[30]);
    Ok(())
}
