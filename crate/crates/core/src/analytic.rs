//! Closed-form evolution of the two dressed branches.
//!
//! In the one-excitation sector the Hamiltonian is block diagonal in the
//! dressed basis `|χ±⟩`, and each translational component obeys
//!
//! ```text
//! i ∂τ φ± = [ η q²/2 ± ξ ] φ±        (ξ = i ∂q in the momentum representation)
//! ```
//!
//! Integrating along the momentum characteristics `dq/dτ = ∓1` gives
//!
//! ```text
//! φ±(q, τ) = φ(q ± τ, 0) · exp{ −i η [ (q²τ ± qτ²)/2 + τ³/6 ] }
//! ```
//!
//! The `τ³/6` term is common to both branches and drops out of every
//! inner product; it is kept so that amplitudes agree with a direct
//! numerical propagation.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::params::ModelParams;

pub type ComplexScalar = Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BranchLabel {
    /// `|χ⁺⟩`, interaction energy `+ε/2`; pushed toward negative momentum.
    Plus,
    /// `|χ⁻⟩`, interaction energy `−ε/2`; pushed toward positive momentum.
    Minus,
}

impl BranchLabel {
    pub const BOTH: [BranchLabel; 2] = [BranchLabel::Plus, BranchLabel::Minus];

    /// Sign of the branch potential `±ξ`.
    pub fn sign(self) -> f64 {
        match self {
            BranchLabel::Plus => 1.0,
            BranchLabel::Minus => -1.0,
        }
    }
}

/// Point in dimensionless phase space: `ξ = kx`, `q = p/ħk`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseSpacePoint {
    pub xi: f64,
    pub q: f64,
}

/// Mean position and momentum of one branch.
///
/// `q(τ) = q₀ ∓ τ` and `ξ(τ) = ξ₀ + η q₀ τ ∓ η τ²/2`; the `η q₀ τ` drift only
/// appears for a moving packet.
pub fn branch_centroid(params: &ModelParams, tau: f64, branch: BranchLabel) -> PhaseSpacePoint {
    let s = branch.sign();
    PhaseSpacePoint {
        xi: params.xi0 + params.eta * params.q0 * tau - s * params.eta * tau * tau / 2.0,
        q: params.q0 - s * tau,
    }
}

/// Momentum-space amplitude of the initial minimum-uncertainty packet.
///
/// This is the unitary Fourier transform (`e^{−iqξ}/√2π` kernel) of
/// `(2πΔξ₀²)^{-1/4} exp[−(ξ−ξ₀)²/(4Δξ₀²) + i q₀ ξ]`.
pub fn initial_momentum_amplitude(params: &ModelParams, q: f64) -> ComplexScalar {
    let dq = params.delta_q0;
    let u = q - params.q0;
    let modulus = (2.0 * PI * dq * dq).powf(-0.25) * (-u * u / (4.0 * dq * dq)).exp();
    Complex64::from_polar(modulus, -u * params.xi0)
}

pub fn branch_momentum_amplitude(
    params: &ModelParams,
    q: f64,
    tau: f64,
    branch: BranchLabel,
) -> ComplexScalar {
    let s = branch.sign();
    let shifted = initial_momentum_amplitude(params, q + s * tau);
    let phase = -params.eta * ((q * q * tau + s * q * tau * tau) / 2.0 + tau.powi(3) / 6.0);
    shifted * Complex64::from_polar(1.0, phase)
}

/// `|φ±(q,τ)|²`, a rigid translation of the initial density.
pub fn branch_momentum_density(params: &ModelParams, q: f64, tau: f64, branch: BranchLabel) -> f64 {
    let dq = params.delta_q0;
    let u = q + branch.sign() * tau - params.q0;
    (-u * u / (2.0 * dq * dq)).exp() / (2.0 * PI * dq * dq).sqrt()
}

/// Atomic momentum distribution `½(|φ⁺|² + |φ⁻|²)` on the given momenta.
pub fn momentum_distribution(params: &ModelParams, q_grid: &[f64], tau: f64) -> Vec<f64> {
    q_grid
        .iter()
        .map(|&q| {
            0.5 * (branch_momentum_density(params, q, tau, BranchLabel::Plus)
                + branch_momentum_density(params, q, tau, BranchLabel::Minus))
        })
        .collect()
}

/// Damping envelope `|⟨φ⁻|φ⁺⟩| = exp[−τ²/(2Δq₀²) − η²τ⁴/(8Δξ₀²)]`.
///
/// The two terms are the momentum and position separations of the branch
/// centroids, `2τ` and `ητ²`, weighed against the packet widths.
pub fn overlap_envelope(params: &ModelParams, tau: f64) -> f64 {
    let dq = params.delta_q0;
    let dxi = params.delta_xi0;
    let sep_xi = params.eta * tau * tau;
    (-tau * tau / (2.0 * dq * dq) - sep_xi * sep_xi / (8.0 * dxi * dxi)).exp()
}

/// `⟨φ⁻(τ)|φ⁺(τ)⟩ = e^{−iΩτ} · envelope(τ)` with `Ω = 2ξ₀` (units of ε).
///
/// Only defined here for packets at rest; use the grid engine otherwise.
pub fn branch_overlap(params: &ModelParams, tau: f64) -> Result<ComplexScalar> {
    if params.q0 != 0.0 {
        return Err(Error::Unsupported(format!(
            "closed-form overlap requires zero mean momentum (q0 = {}); use the grid engine",
            params.q0
        )));
    }
    if tau == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    Ok(Complex64::from_polar(
        overlap_envelope(params, tau),
        -params.rabi_frequency() * tau,
    ))
}

/// Probability of finding the atom excited, `½[1 + Re⟨φ⁻|φ⁺⟩]`.
pub fn excited_population(params: &ModelParams, tau: f64) -> Result<f64> {
    Ok(0.5 * (1.0 + branch_overlap(params, tau)?.re))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{derive_params, PhysicalConfig};
    use approx::assert_abs_diff_eq;

    fn fig() -> ModelParams {
        derive_params(&PhysicalConfig::default()).unwrap()
    }

    /// Trapezoid rule on a uniform grid.
    fn trapz(h: f64, ys: &[f64]) -> f64 {
        h * (ys.iter().sum::<f64>() - 0.5 * (ys[0] + ys[ys.len() - 1]))
    }

    fn uniform(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
    }

    #[test]
    fn centroids() {
        let p = fig();
        for b in BranchLabel::BOTH {
            let c = branch_centroid(&p, 0.0, b);
            assert_eq!((c.xi, c.q), (p.xi0, p.q0));
        }
        assert_eq!(branch_centroid(&p, 10.0, BranchLabel::Plus).q, -10.0);
        assert_eq!(branch_centroid(&p, 10.0, BranchLabel::Minus).q, 10.0);
        let xi = branch_centroid(&p, 10.0, BranchLabel::Minus).xi;
        assert_abs_diff_eq!(xi, 0.628_318_530_7 + 2.081_641_3e-3, epsilon = 1e-9);
    }

    #[test]
    fn amplitude_is_a_rigid_shift() {
        let p = fig();
        let peak = (2.0 * PI * p.delta_q0 * p.delta_q0).powf(-0.25);
        for b in BranchLabel::BOTH {
            assert_abs_diff_eq!(branch_momentum_amplitude(&p, 0.0, 0.0, b).norm(), peak, epsilon = 1e-15);
        }
        let a = branch_momentum_amplitude(&p, -10.0, 10.0, BranchLabel::Plus);
        assert_abs_diff_eq!(a.norm(), peak, epsilon = 1e-15);
        let a = branch_momentum_amplitude(&p, 0.0, 5.0, BranchLabel::Plus);
        let dq = p.delta_q0;
        let direct = (-25.0 / (2.0 * dq * dq)).exp() / (2.0 * PI * dq * dq).sqrt();
        assert_abs_diff_eq!(a.norm_sqr(), direct, epsilon = 1e-15);
    }

    /// Characteristics solution checked against a finite-difference residual
    /// of `i ∂τ φ = η q²/2 φ ± i ∂q φ`.
    #[test]
    fn amplitude_solves_momentum_schrodinger_equation() {
        let p = ModelParams::dimensionless(0.3, 0.7, 0.4, 0.5).unwrap();
        let h = 1e-5;
        for b in BranchLabel::BOTH {
            for &(q, tau) in &[(0.3, 0.8), (-1.1, 2.0), (0.0, 1.5)] {
                let f = |q: f64, t: f64| branch_momentum_amplitude(&p, q, t, b);
                let dt = (f(q, tau + h) - f(q, tau - h)) / (2.0 * h);
                let dq = (f(q + h, tau) - f(q - h, tau)) / (2.0 * h);
                let lhs = Complex64::i() * dt;
                let rhs = f(q, tau) * (p.eta * q * q / 2.0) + Complex64::i() * dq * b.sign();
                assert!((lhs - rhs).norm() < 1e-7, "{b:?} q={q} tau={tau}: {}", (lhs - rhs).norm());
            }
        }
    }

    #[test]
    fn distribution_normalized() {
        let p = fig();
        for tau in [0.0, 1.0, 5.0, 10.0, 15.0] {
            let half = tau + 8.0 * p.delta_q0;
            let n = 20001;
            let q = uniform(-half, half, n);
            let rho = momentum_distribution(&p, &q, tau);
            let norm = trapz(2.0 * half / (n - 1) as f64, &rho);
            assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn resolved_peaks_at_tau_15() {
        let p = fig();
        let peak0 = momentum_distribution(&p, &[0.0], 0.0)[0];
        let d = momentum_distribution(&p, &[-15.0, 15.0, 0.0], 15.0);
        assert_abs_diff_eq!(d[0], peak0 / 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(d[1], peak0 / 2.0, epsilon = 1e-12);
        assert!(d[2] < 1e-3 * peak0);
    }

    #[test]
    fn double_hump_at_tau_5() {
        let p = fig();
        let q = uniform(-10.0, 10.0, 2001);
        let d = momentum_distribution(&p, &q, 5.0);
        let mid = d[1000];
        let max = d.iter().cloned().fold(0.0, f64::max);
        assert!(mid < max, "expected a dip at q = 0");
    }

    /// Direct quadrature of ⟨φ⁻|φ⁺⟩ from the momentum amplitudes.
    fn overlap_by_quadrature(p: &ModelParams, tau: f64) -> Complex64 {
        let half = tau + 12.0 * p.delta_q0;
        let n = 40001;
        let h = 2.0 * half / (n - 1) as f64;
        (0..n)
            .map(|i| {
                let q = -half + h * i as f64;
                let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
                branch_momentum_amplitude(p, q, tau, BranchLabel::Minus).conj()
                    * branch_momentum_amplitude(p, q, tau, BranchLabel::Plus)
                    * w
            })
            .sum::<Complex64>()
            * h
    }

    #[test]
    fn closed_form_overlap_matches_quadrature() {
        let p = fig();
        for tau in [0.5, 1.25, 2.5, 5.0, 10.0] {
            let c = branch_overlap(&p, tau).unwrap();
            let o = overlap_by_quadrature(&p, tau);
            assert!((c - o).norm() < 1e-12, "tau={tau}: {c} vs {o}");
        }
        // exaggerated recoil so the position term matters
        let p = ModelParams::dimensionless(0.2, 0.3, 0.0, 0.4).unwrap();
        for tau in [0.5, 1.0, 2.0] {
            let c = branch_overlap(&p, tau).unwrap();
            let o = overlap_by_quadrature(&p, tau);
            assert!((c - o).norm() < 1e-12, "tau={tau}: {c} vs {o}");
        }
    }

    #[test]
    fn overlap_values() {
        let p = fig();
        assert_eq!(branch_overlap(&p, 0.0).unwrap(), Complex64::new(1.0, 0.0));
        let c = branch_overlap(&p, 10.0).unwrap();
        assert_abs_diff_eq!(c.norm(), 0.042_493_225_708, epsilon = 1e-11);
        // Ωτ = 4π: back to a real positive overlap
        assert_abs_diff_eq!(c.im, 0.0, epsilon = 1e-14);
        assert!(c.re > 0.0);
    }

    #[test]
    fn overlap_rejects_moving_packet() {
        let p = ModelParams::dimensionless(1e-4, 0.6, 1.0, 0.1).unwrap();
        assert!(matches!(branch_overlap(&p, 1.0), Err(Error::Unsupported(_))));
        assert!(excited_population(&p, 1.0).is_err());
    }

    #[test]
    fn population_values() {
        let p = fig();
        assert_eq!(excited_population(&p, 0.0).unwrap(), 1.0);
        assert_abs_diff_eq!(excited_population(&p, 30.0).unwrap(), 0.5, epsilon = 1e-6);
        assert_abs_diff_eq!(excited_population(&p, 2.5).unwrap(), 0.089_565_861_263, epsilon = 1e-10);
    }

    #[test]
    fn envelope_monotone_and_population_bounded() {
        let p = fig();
        let mut prev = 1.0;
        for i in 0..=3000 {
            let tau = i as f64 * 0.01;
            let c = branch_overlap(&p, tau).unwrap();
            assert!(c.norm() <= prev + 1e-15);
            prev = c.norm();
            let pe = excited_population(&p, tau).unwrap();
            assert!((0.0..=1.0).contains(&pe));
        }
    }

    #[test]
    fn node_centered_packet_decays_without_oscillation() {
        let p = derive_params(&PhysicalConfig {
            x0: 0.0,
            ..Default::default()
        })
        .unwrap();
        let mut prev = 1.0;
        for i in 1..=3000 {
            let tau = i as f64 * 0.01;
            let c = branch_overlap(&p, tau).unwrap();
            assert_eq!(c.im, 0.0);
            assert!(c.re > 0.0 || c.re == 0.0);
            let pe = excited_population(&p, tau).unwrap();
            assert!(pe <= prev);
            prev = pe;
        }
        assert!((prev - 0.5).abs() < 1e-6);
    }
}
