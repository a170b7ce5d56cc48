//! How well the linear coupling approximates the standing-wave profile.
//!
//! Propagates both branches in the full sin ξ potential and in its
//! linearization, and reports |c_sin − c_lin| at τ = 10 for packets centered
//! at several distances from the node.

use osg_rabi::grid::{self, GridSpec, PotentialKind};
use osg_rabi::params::{derive_params, ConfigFile};

fn main() -> osg_rabi::Result<()> {
    let tau = 10.0;
    for x0 in [0.0, 0.025, 0.05, 0.1] {
        let cfg = ConfigFile {
            x0_over_lambda: Some(x0),
            ..Default::default()
        }
        .to_physical();
        let params = derive_params(&cfg)?;
        // a coarser step is ample here: the splitting error is ~1e-12
        let spec = GridSpec { d_tau: 0.01, ..GridSpec::default_for(&params) };
        let lin = grid::overlap(&grid::propagate(&params, spec, PotentialKind::Linear, tau)?);
        let sin = grid::overlap(&grid::propagate(&params, spec, PotentialKind::Sinusoidal, tau)?);
        println!(
            "x0/λ = {x0:<5}: c_lin = {:+.6e}{:+.6e}i, c_sin = {:+.6e}{:+.6e}i, gap = {:.4e}",
            lin.re,
            lin.im,
            sin.re,
            sin.im,
            (sin - lin).norm()
        );
    }
    Ok(())
}
