//! Momentum distribution of the atom at several interaction times.
//!
//! Each internal branch is a Gaussian of width Δq₀ whose center moves to
//! q = ∓τ; the printed per-branch peaks and column norms show this.
//! Pass a path to also write the full table as CSV.
//!
//!     cargo run --example momentum_distribution -- fig1.csv

use osg_rabi::analytic::{self, BranchLabel};
use osg_rabi::report::{self, Scenario};

fn main() -> osg_rabi::Result<()> {
    let scenario = Scenario::default();
    let params = scenario.validate()?;
    let qs = scenario.q_grid();
    println!("delta_q0 = {:.6}", params.delta_q0);
    for &tau in &scenario.taus {
        let peak = |b: BranchLabel| {
            qs.iter()
                .copied()
                .max_by(|x, y| {
                    analytic::branch_momentum_density(&params, *x, tau, b)
                        .total_cmp(&analytic::branch_momentum_density(&params, *y, tau, b))
                })
                .unwrap()
        };
        println!(
            "tau = {tau:>4}: peak(+) = {:>6.2}, peak(-) = {:>6.2}",
            peak(BranchLabel::Plus),
            peak(BranchLabel::Minus)
        );
    }

    let (table, _) = report::cmd_momentum_dist(&scenario)?;
    for (k, v) in &table.summary {
        println!("{k} = {v}");
    }
    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(&path, table.to_csv())?;
        println!("wrote {path}");
    }
    Ok(())
}
