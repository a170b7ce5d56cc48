//! Dressed "spin" operators of the one-excitation sector.
//!
//! `μx = (a†S₋ + aS₊)/(2√N)`, `μy = i(a†S₋ − aS₊)/(2√N)` and `μz = Sz`,
//! with `N = a†a + Sz + ½`, restricted to the sector spanned by `|e,0⟩` and
//! `|g,1⟩` (where `N = 1`). Outside that sector all three vanish.

use num_complex::Complex64;

use super::{Matrix4, E0, G1};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `[μx, μy, μz]` in the module's product basis.
pub fn mu_operators() -> [Matrix4; 3] {
    let mut x = [[ZERO; 4]; 4];
    let mut y = [[ZERO; 4]; 4];
    let mut z = [[ZERO; 4]; 4];
    // a†S₋|e,0⟩ = |g,1⟩ and aS₊|g,1⟩ = |e,0⟩, both at N = 1
    x[G1][E0] = Complex64::new(0.5, 0.0);
    x[E0][G1] = Complex64::new(0.5, 0.0);
    y[G1][E0] = Complex64::new(0.0, 0.5);
    y[E0][G1] = Complex64::new(0.0, -0.5);
    z[E0][E0] = Complex64::new(0.5, 0.0);
    z[G1][G1] = Complex64::new(-0.5, 0.0);
    [x, y, z]
}

/// Dressed states `|χ±⟩ = (|e,0⟩ ± |g,1⟩)/√2`.
pub fn dressed_states() -> [[Complex64; 4]; 2] {
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut plus = [ZERO; 4];
    let mut minus = [ZERO; 4];
    plus[E0] = s;
    plus[G1] = s;
    minus[E0] = s;
    minus[G1] = -s;
    [plus, minus]
}

pub fn commutator(a: &Matrix4, b: &Matrix4) -> Matrix4 {
    let ab = super::matmul4(a, b);
    let ba = super::matmul4(b, a);
    std::array::from_fn(|i| std::array::from_fn(|j| ab[i][j] - ba[i][j]))
}
