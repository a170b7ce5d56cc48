//! Split-operator propagation of both branches compared with the closed form.
//!
//! With the linear potential the grid overlap, momentum amplitudes and
//! centroids agree with the analytic expressions to near machine precision.

use osg_rabi::analytic::{self, BranchLabel};
use osg_rabi::grid::{self, GridSpec, PotentialKind, Propagator};
use osg_rabi::params::{derive_params, PhysicalConfig};

fn main() -> osg_rabi::Result<()> {
    let params = derive_params(&PhysicalConfig::default())?;
    let spec = GridSpec::default_for(&params);
    let prop = Propagator::new(&params, spec, PotentialKind::Linear)?;
    let mut state = grid::init_gaussian(&params, spec)?;
    println!("n = {}, dxi = {:.4e}, d_tau = {}", spec.n_points, spec.dxi(), spec.d_tau);
    for tau in [1.0, 2.5, 5.0, 10.0] {
        prop.advance_to(&mut state, tau)?;
        let g = grid::overlap(&state);
        let a = analytic::branch_overlap(&params, tau)?;
        println!(
            "tau = {tau:>4}: grid {:+.12e} {:+.12e}i, |grid - analytic| = {:.2e}",
            g.re,
            g.im,
            (g - a).norm()
        );
    }
    let qs = [-12.0, -10.0, -8.0, 8.0, 10.0, 12.0];
    for b in BranchLabel::BOTH {
        let amps = grid::momentum_amplitude_at(&state, b, &qs);
        let err = qs
            .iter()
            .zip(&amps)
            .map(|(q, z)| (analytic::branch_momentum_amplitude(&params, *q, 10.0, b) - z).norm())
            .fold(0.0, f64::max);
        println!("{b:?} branch amplitude error at tau = 10: {err:.2e}");
    }
    let (np, nm) = state.norms();
    println!("norm drift: {:.2e}, {:.2e}", np - 1.0, nm - 1.0);
    println!("boundary leak: {:.2e}", grid::boundary_leak(&state)?);
    Ok(())
}
