//! Physical configuration and the dimensionless parameters derived from it.
//!
//! Everything downstream works in natural units of the problem: lengths in
//! `1/k`, momenta in `ħk`, times in `1/ε`. In those units the one-excitation
//! Hamiltonian of each dressed branch reads `η q²/2 ± ξ` with a single
//! dimensionless recoil-to-coupling ratio `η = ħk²/(mε)`.

use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Reduced Planck constant in J·s.
pub const HBAR: f64 = 1.0545718e-34;

/// Packets wider than this fraction of the wavelength are rejected.
pub const MAX_WIDTH_OVER_LAMBDA: f64 = 0.25;
/// Packets wider than this fraction of the wavelength trigger a warning.
pub const WARN_WIDTH_OVER_LAMBDA: f64 = 0.1;

/// Experiment description in SI units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConfig {
    /// Atomic mass, kg.
    pub mass: f64,
    /// Wavelength of the resonant cavity mode, m.
    pub wavelength: f64,
    /// Atom-field coupling constant, 1/s.
    pub coupling_epsilon: f64,
    /// Initial position spread of the minimum-uncertainty packet, m.
    pub delta_x0: f64,
    /// Packet center along the cavity axis, measured from a node, m.
    pub x0: f64,
    /// Initial mean momentum along the cavity axis, kg·m/s.
    pub p0: f64,
    /// Interaction (cavity flight) time, s.
    pub interaction_time: f64,
}

impl Default for PhysicalConfig {
    /// m = 1e-26 kg, λ = 10 µm, ε = 1e8 /s, Δx₀ = λ/50, x₀ = λ/10, p₀ = 0, εT = 30.
    fn default() -> Self {
        let wavelength = 1e-5;
        let coupling_epsilon = 1e8;
        Self {
            mass: 1e-26,
            wavelength,
            coupling_epsilon,
            delta_x0: wavelength / 50.0,
            x0: wavelength / 10.0,
            p0: 0.0,
            interaction_time: 30.0 / coupling_epsilon,
        }
    }
}

impl PhysicalConfig {
    pub fn wavenumber(&self) -> f64 {
        2.0 * PI / self.wavelength
    }

    /// Momentum spread of the minimum-uncertainty packet, `ħ/(2Δx₀)`.
    pub fn delta_p0(&self) -> f64 {
        HBAR / (2.0 * self.delta_x0)
    }

    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        let positive = [
            ("mass", self.mass),
            ("wavelength", self.wavelength),
            ("coupling_epsilon", self.coupling_epsilon),
            ("delta_x0", self.delta_x0),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                problems.push(format!("{name} must be positive and finite, got {v}"));
            }
        }
        for (name, v) in [("x0", self.x0), ("p0", self.p0)] {
            if !v.is_finite() {
                problems.push(format!("{name} must be finite, got {v}"));
            }
        }
        if !(self.interaction_time.is_finite() && self.interaction_time >= 0.0) {
            problems.push(format!(
                "interaction_time must be non-negative, got {}",
                self.interaction_time
            ));
        }
        if problems.is_empty() {
            let ratio = self.delta_x0 / self.wavelength;
            if ratio >= MAX_WIDTH_OVER_LAMBDA {
                problems.push(format!(
                    "delta_x0/wavelength = {ratio} is not narrow (must be < {MAX_WIDTH_OVER_LAMBDA})"
                ));
            } else if ratio > WARN_WIDTH_OVER_LAMBDA {
                log::warn!(
                    "delta_x0/wavelength = {ratio}: the linear mode-function approximation is poor"
                );
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Config(problems.join("; ")))
        }
    }
}

/// Dimensionless parameters consumed by the analytic and grid engines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Recoil-to-coupling ratio `ħk²/(mε)`.
    pub eta: f64,
    /// Packet center `k·x₀`.
    pub xi0: f64,
    /// Mean momentum `p₀/(ħk)`.
    pub q0: f64,
    /// Position spread `k·Δx₀`.
    pub delta_xi0: f64,
    /// Momentum spread `Δp₀/(ħk)`.
    pub delta_q0: f64,
    /// Mode wavenumber `2π/λ`, 1/m.
    pub k: f64,
    /// Mean branch acceleration `ħkε/m`, m/s².
    pub accel: f64,
    /// Coupling constant, 1/s. Sets the time unit.
    pub epsilon: f64,
    /// Interaction time `εT`.
    pub tau_max: f64,
}

impl ModelParams {
    /// Rabi frequency of the linearized model in units of ε, `Ω/ε = 2ξ₀`.
    pub fn rabi_frequency(&self) -> f64 {
        2.0 * self.xi0
    }

    pub fn mass(&self) -> f64 {
        HBAR * self.k * self.k / (self.eta * self.epsilon)
    }

    /// Converts back to SI.
    pub fn to_physical(&self) -> PhysicalConfig {
        PhysicalConfig {
            mass: self.mass(),
            wavelength: 2.0 * PI / self.k,
            coupling_epsilon: self.epsilon,
            delta_x0: self.delta_xi0 / self.k,
            x0: self.xi0 / self.k,
            p0: self.q0 * HBAR * self.k,
            interaction_time: self.tau_max / self.epsilon,
        }
    }

    /// Builds a parameter set directly in dimensionless units, for studies
    /// that do not start from SI values. `delta_q0` is fixed by minimum
    /// uncertainty. The SI anchor (`k`, `epsilon`) is set to 1.
    pub fn dimensionless(eta: f64, xi0: f64, q0: f64, delta_xi0: f64) -> Result<Self> {
        if !(eta.is_finite() && eta > 0.0) {
            return Err(Error::Config(format!("eta must be positive, got {eta}")));
        }
        if !(delta_xi0.is_finite() && delta_xi0 > 0.0) {
            return Err(Error::Config(format!(
                "delta_xi0 must be positive, got {delta_xi0}"
            )));
        }
        if !(xi0.is_finite() && q0.is_finite()) {
            return Err(Error::Config("xi0 and q0 must be finite".into()));
        }
        Ok(Self {
            eta,
            xi0,
            q0,
            delta_xi0,
            delta_q0: 0.5 / delta_xi0,
            k: 1.0,
            accel: eta,
            epsilon: 1.0,
            tau_max: 0.0,
        })
    }
}

pub fn derive_params(cfg: &PhysicalConfig) -> Result<ModelParams> {
    cfg.validate()?;
    let k = cfg.wavenumber();
    let delta_xi0 = k * cfg.delta_x0;
    Ok(ModelParams {
        eta: HBAR * k * k / (cfg.mass * cfg.coupling_epsilon),
        xi0: k * cfg.x0,
        q0: cfg.p0 / (HBAR * k),
        delta_xi0,
        // ħ/(2Δx₀) divided by ħk
        delta_q0: 0.5 / delta_xi0,
        k,
        accel: HBAR * k * cfg.coupling_epsilon / cfg.mass,
        epsilon: cfg.coupling_epsilon,
        tau_max: cfg.interaction_time * cfg.coupling_epsilon,
    })
}

/// Flat key-value configuration file. Missing keys fall back to
/// [`PhysicalConfig::default`].
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub mass_kg: Option<f64>,
    pub wavelength_m: Option<f64>,
    pub epsilon_per_s: Option<f64>,
    pub delta_x0_over_lambda: Option<f64>,
    pub x0_over_lambda: Option<f64>,
    pub p0_over_hbar_k: Option<f64>,
    pub t_max_epsilon_units: Option<f64>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    pub fn to_physical(&self) -> PhysicalConfig {
        let d = PhysicalConfig::default();
        let wavelength = self.wavelength_m.unwrap_or(d.wavelength);
        let epsilon = self.epsilon_per_s.unwrap_or(d.coupling_epsilon);
        let k = 2.0 * PI / wavelength;
        PhysicalConfig {
            mass: self.mass_kg.unwrap_or(d.mass),
            wavelength,
            coupling_epsilon: epsilon,
            delta_x0: self.delta_x0_over_lambda.unwrap_or(1.0 / 50.0) * wavelength,
            x0: self.x0_over_lambda.unwrap_or(1.0 / 10.0) * wavelength,
            p0: self.p0_over_hbar_k.unwrap_or(0.0) * HBAR * k,
            interaction_time: self.t_max_epsilon_units.unwrap_or(30.0) / epsilon,
        }
    }

    /// Inverse of [`ConfigFile::to_physical`], with every key present.
    pub fn from_physical(cfg: &PhysicalConfig) -> Self {
        Self {
            mass_kg: Some(cfg.mass),
            wavelength_m: Some(cfg.wavelength),
            epsilon_per_s: Some(cfg.coupling_epsilon),
            delta_x0_over_lambda: Some(cfg.delta_x0 / cfg.wavelength),
            x0_over_lambda: Some(cfg.x0 / cfg.wavelength),
            p0_over_hbar_k: Some(cfg.p0 / (HBAR * cfg.wavenumber())),
            t_max_epsilon_units: Some(cfg.interaction_time * cfg.coupling_epsilon),
        }
    }
}
