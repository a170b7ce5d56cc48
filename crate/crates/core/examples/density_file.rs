//! Reading and writing two-qubit density matrices and applying both criteria.
//!
//! Writes the model's reduced density at τ = 1.25 and a Bell state to
//! temporary files, reads them back and evaluates M(ρ) and the PT test.
//! The same files can be fed to `osg criteria --density <file>`.

use num_complex::Complex64;
use osg_rabi::analytic;
use osg_rabi::entanglement::{self, TwoQubitDensity};
use osg_rabi::params::{derive_params, PhysicalConfig};

fn main() -> osg_rabi::Result<()> {
    let params = derive_params(&PhysicalConfig::default())?;
    let model = entanglement::reduced_density(analytic::branch_overlap(&params, 1.25)?)?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let z = Complex64::new(0.0, 0.0);
    let bell = TwoQubitDensity::pure([Complex64::new(s, 0.0), z, z, Complex64::new(s, 0.0)])?;

    let dir = std::env::temp_dir();
    for (name, rho) in [("model", model), ("bell", bell)] {
        let path = dir.join(format!("osg_{name}_density.txt"));
        entanglement::write_density(&path, &rho)?;
        let back = entanglement::read_density(&path)?;
        let m = entanglement::horodecki_m(&back)?;
        let pt = entanglement::separability_test(&back);
        println!(
            "{name:>5}: M = {:.6}, violates CHSH = {}, min PT eigenvalue = {:+.6}, file {}",
            m.m_value,
            m.violates_chsh,
            pt.min_pt_eigenvalue,
            path.display()
        );
    }
    print!("{}", entanglement::format_density(model.entries()));
    Ok(())
}
