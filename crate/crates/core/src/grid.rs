//! Split-operator propagation of the two dressed-branch wavefunctions on a
//! uniform periodic position grid.
//!
//! Each branch obeys `i ∂τ ψ± = [−(η/2) ∂²ξ ± V(ξ)] ψ±` with `V(ξ) = ξ` for
//! the linearized mode function or `V(ξ) = sin ξ` for the full standing
//! wave (node at `ξ = 0`, positive slope). The branches never couple, so
//! they are stepped independently with symmetric Strang splitting:
//! half potential kick, full kinetic phase in momentum space, half kick.
//!
//! This engine shares no code with [`crate::analytic`] and serves as its
//! independent check.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analytic::{BranchLabel, ComplexScalar, PhaseSpacePoint};
use crate::error::{Error, Result};
use crate::fft::Radix2Fft;
use crate::params::ModelParams;

pub const MIN_POINTS: usize = 256;
/// Allowed probability in the outer bands of either grid.
pub const BOUNDARY_TOLERANCE: f64 = 1e-12;
/// Allowed peak density at the position edges of a fresh packet.
pub const INIT_TAIL_TOLERANCE: f64 = 1e-14;

pub const DEFAULT_POINTS: usize = 4096;
pub const DEFAULT_HALF_WIDTH: f64 = 60.0;
pub const DEFAULT_D_TAU: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub n_points: usize,
    pub xi_min: f64,
    pub xi_max: f64,
    pub d_tau: f64,
}

impl GridSpec {
    /// 4096 points over `ξ₀ ± 60`, `dτ = 10⁻³`.
    pub fn default_for(params: &ModelParams) -> Self {
        Self::centered(params.xi0, DEFAULT_HALF_WIDTH, DEFAULT_POINTS, DEFAULT_D_TAU)
    }

    pub fn centered(center: f64, half_width: f64, n_points: usize, d_tau: f64) -> Self {
        Self {
            n_points,
            xi_min: center - half_width,
            xi_max: center + half_width,
            d_tau,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_points < MIN_POINTS || !self.n_points.is_power_of_two() {
            return Err(Error::Grid(format!(
                "n_points = {} must be a power of two ≥ {MIN_POINTS}",
                self.n_points
            )));
        }
        if !(self.xi_min.is_finite() && self.xi_max.is_finite() && self.xi_max > self.xi_min) {
            return Err(Error::Grid(format!(
                "invalid range [{}, {}]",
                self.xi_min, self.xi_max
            )));
        }
        if !(self.d_tau.is_finite() && self.d_tau > 0.0) {
            return Err(Error::Grid(format!("d_tau = {} must be positive", self.d_tau)));
        }
        Ok(())
    }

    pub fn dxi(&self) -> f64 {
        (self.xi_max - self.xi_min) / self.n_points as f64
    }

    pub fn xi(&self, j: usize) -> f64 {
        self.xi_min + j as f64 * self.dxi()
    }

    pub fn positions(&self) -> Vec<f64> {
        (0..self.n_points).map(|j| self.xi(j)).collect()
    }

    pub fn dq(&self) -> f64 {
        2.0 * PI / (self.xi_max - self.xi_min)
    }

    /// Momentum of FFT bin `m`, in `[−π/dξ, π/dξ)`.
    pub fn momentum_of_bin(&self, m: usize) -> f64 {
        let n = self.n_points as i64;
        let mi = m as i64;
        let signed = if mi < n / 2 { mi } else { mi - n };
        signed as f64 * self.dq()
    }

    /// Momenta in ascending order (the FFT bins rotated by `n/2`).
    pub fn momenta_sorted(&self) -> Vec<f64> {
        let n = self.n_points;
        (0..n).map(|i| self.momentum_of_bin((i + n / 2) % n)).collect()
    }

    fn edge_band(&self) -> usize {
        (self.n_points / 32).max(1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PotentialKind {
    /// `V(ξ) = ξ`.
    Linear,
    /// `V(ξ) = sin ξ`.
    Sinusoidal,
    /// No potential. Used to check the kinetic propagator alone.
    Free,
}

impl PotentialKind {
    pub fn value(self, xi: f64) -> f64 {
        match self {
            PotentialKind::Linear => xi,
            PotentialKind::Sinusoidal => xi.sin(),
            PotentialKind::Free => 0.0,
        }
    }
}

impl std::str::FromStr for PotentialKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "linear" => Ok(Self::Linear),
            "sinusoidal" | "sin" => Ok(Self::Sinusoidal),
            "free" => Ok(Self::Free),
            _ => Err(Error::Config(format!("unknown potential {s:?}"))),
        }
    }
}

impl std::fmt::Display for PotentialKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PotentialKind::Linear => "linear",
            PotentialKind::Sinusoidal => "sinusoidal",
            PotentialKind::Free => "free",
        })
    }
}

/// The `|φ±⟩` wavefunctions sampled on the position grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchGridState {
    pub psi_plus: Vec<Complex64>,
    pub psi_minus: Vec<Complex64>,
    pub spec: GridSpec,
    pub tau: f64,
}

impl BranchGridState {
    pub fn branch(&self, b: BranchLabel) -> &[Complex64] {
        match b {
            BranchLabel::Plus => &self.psi_plus,
            BranchLabel::Minus => &self.psi_minus,
        }
    }

    /// Discrete `Σ|ψ|² dξ` per branch.
    pub fn norms(&self) -> (f64, f64) {
        let h = self.spec.dxi();
        let n = |v: &[Complex64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>() * h;
        (n(&self.psi_plus), n(&self.psi_minus))
    }
}

/// Both branches start as the same normalized Gaussian
/// `(2πΔξ₀²)^{-1/4} exp[−(ξ−ξ₀)²/(4Δξ₀²) + i q₀ ξ]`, encoding
/// `|e,0⟩ = (|χ⁺⟩ + |χ⁻⟩)/√2`.
pub fn init_gaussian(params: &ModelParams, spec: GridSpec) -> Result<BranchGridState> {
    spec.validate()?;
    let w = params.delta_xi0;
    let norm = (2.0 * PI * w * w).powf(-0.25);
    let psi: Vec<Complex64> = (0..spec.n_points)
        .map(|j| {
            let xi = spec.xi(j);
            let u = xi - params.xi0;
            Complex64::from_polar(norm * (-u * u / (4.0 * w * w)).exp(), params.q0 * xi)
        })
        .collect();
    let band = spec.edge_band();
    let tail = psi[..band]
        .iter()
        .chain(&psi[spec.n_points - band..])
        .map(|z| z.norm_sqr())
        .fold(0.0, f64::max);
    if tail > INIT_TAIL_TOLERANCE {
        return Err(Error::Grid(format!(
            "initial packet reaches the grid edges (density {tail:e}); widen the range"
        )));
    }
    Ok(BranchGridState {
        psi_plus: psi.clone(),
        psi_minus: psi,
        spec,
        tau: 0.0,
    })
}

/// Precomputed Strang-step phase factors for one grid, potential and step.
#[derive(Debug, Clone)]
pub struct Propagator {
    spec: GridSpec,
    eta: f64,
    potential: PotentialKind,
    fft: Radix2Fft,
    kinetic: Vec<Complex64>,
    half_kick_plus: Vec<Complex64>,
    half_kick_minus: Vec<Complex64>,
}

impl Propagator {
    pub fn new(params: &ModelParams, spec: GridSpec, potential: PotentialKind) -> Result<Self> {
        spec.validate()?;
        let fft = Radix2Fft::new(spec.n_points)?;
        let (kinetic, half_kick_plus, half_kick_minus) =
            phase_tables(&spec, params.eta, potential, spec.d_tau);
        Ok(Self {
            spec,
            eta: params.eta,
            potential,
            fft,
            kinetic,
            half_kick_plus,
            half_kick_minus,
        })
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn potential(&self) -> PotentialKind {
        self.potential
    }

    /// Advances both branches by one `d_tau`.
    pub fn step(&self, state: &mut BranchGridState) {
        self.check_state(state);
        let (plus, minus) = (&mut state.psi_plus, &mut state.psi_minus);
        rayon::join(
            || strang(&self.fft, plus, &self.half_kick_plus, &self.kinetic),
            || strang(&self.fft, minus, &self.half_kick_minus, &self.kinetic),
        );
        state.tau += self.spec.d_tau;
    }

    pub fn advance(&self, state: &mut BranchGridState, steps: usize) {
        let start = state.tau;
        for _ in 0..steps {
            self.step(state);
        }
        state.tau = start + steps as f64 * self.spec.d_tau;
    }

    /// Propagates to `target`, finishing with one shorter step when the
    /// remaining time is not a whole number of `d_tau`.
    pub fn advance_to(&self, state: &mut BranchGridState, target: f64) -> Result<()> {
        let remaining = target - state.tau;
        if remaining < -1e-12 {
            return Err(Error::Grid(format!(
                "cannot propagate backwards from {} to {target}",
                state.tau
            )));
        }
        let ratio = remaining.max(0.0) / self.spec.d_tau;
        let nearest = ratio.round();
        let (full, rest) = if (ratio - nearest).abs() < 1e-9 {
            (nearest as usize, 0.0)
        } else {
            let f = ratio.floor();
            (f as usize, remaining - f * self.spec.d_tau)
        };
        self.advance(state, full);
        if rest > 0.0 {
            let (kin, hp, hm) = phase_tables(&self.spec, self.eta, self.potential, rest);
            self.check_state(state);
            strang(&self.fft, &mut state.psi_plus, &hp, &kin);
            strang(&self.fft, &mut state.psi_minus, &hm, &kin);
        }
        state.tau = target;
        Ok(())
    }

    fn check_state(&self, state: &BranchGridState) {
        assert_eq!(state.spec.n_points, self.spec.n_points, "grid mismatch");
        assert_eq!(state.psi_plus.len(), self.spec.n_points);
        assert_eq!(state.psi_minus.len(), self.spec.n_points);
    }

    /// Physical momentum amplitude `φ(q) = (1/√2π) ∫ ψ(ξ) e^{−iqξ} dξ` on the
    /// sorted momentum grid.
    pub fn momentum_amplitudes(&self, state: &BranchGridState, b: BranchLabel) -> (Vec<f64>, Vec<Complex64>) {
        momentum_amplitudes_with(&self.fft, state, b)
    }
}

fn phase_tables(
    spec: &GridSpec,
    eta: f64,
    potential: PotentialKind,
    h: f64,
) -> (Vec<Complex64>, Vec<Complex64>, Vec<Complex64>) {
    let kinetic = (0..spec.n_points)
        .map(|m| {
            let q = spec.momentum_of_bin(m);
            Complex64::from_polar(1.0, -0.5 * eta * q * q * h)
        })
        .collect();
    let kick = |sign: f64| {
        (0..spec.n_points)
            .map(|j| Complex64::from_polar(1.0, -0.5 * h * sign * potential.value(spec.xi(j))))
            .collect()
    };
    (kinetic, kick(1.0), kick(-1.0))
}

fn strang(fft: &Radix2Fft, psi: &mut [Complex64], half_kick: &[Complex64], kinetic: &[Complex64]) {
    for (z, k) in psi.iter_mut().zip(half_kick) {
        *z *= k;
    }
    fft.forward(psi);
    for (z, k) in psi.iter_mut().zip(kinetic) {
        *z *= k;
    }
    fft.inverse(psi);
    for (z, k) in psi.iter_mut().zip(half_kick) {
        *z *= k;
    }
}

fn momentum_amplitudes_with(
    fft: &Radix2Fft,
    state: &BranchGridState,
    b: BranchLabel,
) -> (Vec<f64>, Vec<Complex64>) {
    let spec = &state.spec;
    let n = spec.n_points;
    let mut buf = state.branch(b).to_vec();
    fft.forward(&mut buf);
    let scale = spec.dxi() / (2.0 * PI).sqrt();
    let mut q = Vec::with_capacity(n);
    let mut amp = Vec::with_capacity(n);
    for i in 0..n {
        let m = (i + n / 2) % n;
        let qm = spec.momentum_of_bin(m);
        q.push(qm);
        amp.push(buf[m] * Complex64::from_polar(scale, -qm * spec.xi_min));
    }
    (q, amp)
}

/// Momentum amplitudes without a prebuilt propagator.
pub fn momentum_amplitudes(state: &BranchGridState, b: BranchLabel) -> Result<(Vec<f64>, Vec<Complex64>)> {
    let fft = Radix2Fft::new(state.spec.n_points)?;
    Ok(momentum_amplitudes_with(&fft, state, b))
}

/// Momentum amplitude at arbitrary momenta by direct summation of the
/// discrete transform (the grid's trigonometric interpolant).
pub fn momentum_amplitude_at(state: &BranchGridState, b: BranchLabel, qs: &[f64]) -> Vec<Complex64> {
    let spec = &state.spec;
    let psi = state.branch(b);
    let h = spec.dxi();
    let scale = h / (2.0 * PI).sqrt();
    qs.iter()
        .map(|&q| {
            let mut w = Complex64::from_polar(1.0, -q * spec.xi_min);
            let rot = Complex64::from_polar(1.0, -q * h);
            let mut acc = Complex64::new(0.0, 0.0);
            for z in psi {
                acc += z * w;
                w *= rot;
            }
            acc * scale
        })
        .collect()
}

/// One Strang step, building the phase tables on the fly. Prefer
/// [`Propagator`] for repeated stepping.
pub fn step(state: &BranchGridState, params: &ModelParams, potential: PotentialKind) -> Result<BranchGridState> {
    let prop = Propagator::new(params, state.spec, potential)?;
    let mut next = state.clone();
    prop.step(&mut next);
    Ok(next)
}

/// Discrete `⟨ψ⁻|ψ⁺⟩ = Σ ψ⁻* ψ⁺ dξ`.
pub fn overlap(state: &BranchGridState) -> ComplexScalar {
    let s: Complex64 = state
        .psi_minus
        .iter()
        .zip(&state.psi_plus)
        .map(|(m, p)| m.conj() * p)
        .sum();
    s * state.spec.dxi()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Observables {
    pub tau: f64,
    pub overlap_re: f64,
    pub overlap_im: f64,
    pub excited_population: f64,
    pub visibility: f64,
    /// Sorted momentum grid.
    pub q: Vec<f64>,
    /// `½(|φ⁺|² + |φ⁻|²)` on `q`.
    pub momentum_density: Vec<f64>,
    pub density_plus: Vec<f64>,
    pub density_minus: Vec<f64>,
    pub centroid_plus: PhaseSpacePoint,
    pub centroid_minus: PhaseSpacePoint,
}

pub fn observables(state: &BranchGridState) -> Result<Observables> {
    let fft = Radix2Fft::new(state.spec.n_points)?;
    let c = overlap(state);
    let h = state.spec.dxi();
    let (q, amp_p) = momentum_amplitudes_with(&fft, state, BranchLabel::Plus);
    let (_, amp_m) = momentum_amplitudes_with(&fft, state, BranchLabel::Minus);
    let density_plus: Vec<f64> = amp_p.iter().map(|z| z.norm_sqr()).collect();
    let density_minus: Vec<f64> = amp_m.iter().map(|z| z.norm_sqr()).collect();
    let momentum_density = density_plus
        .iter()
        .zip(&density_minus)
        .map(|(a, b)| 0.5 * (a + b))
        .collect();
    let dq = state.spec.dq();
    let centroid = |psi: &[Complex64], dens: &[f64]| {
        let norm_x: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>() * h;
        let xi = psi
            .iter()
            .enumerate()
            .map(|(j, z)| state.spec.xi(j) * z.norm_sqr())
            .sum::<f64>()
            * h
            / norm_x;
        let norm_q: f64 = dens.iter().sum::<f64>() * dq;
        let qm = q.iter().zip(dens).map(|(a, b)| a * b).sum::<f64>() * dq / norm_q;
        PhaseSpacePoint { xi, q: qm }
    };
    Ok(Observables {
        tau: state.tau,
        overlap_re: c.re,
        overlap_im: c.im,
        excited_population: 0.5 * (1.0 + c.re),
        visibility: c.norm(),
        centroid_plus: centroid(&state.psi_plus, &density_plus),
        centroid_minus: centroid(&state.psi_minus, &density_minus),
        q,
        momentum_density,
        density_plus,
        density_minus,
    })
}

/// Largest probability found in the outer `n/32` cells of either the
/// position or the momentum grid, over both branches.
pub fn boundary_leak(state: &BranchGridState) -> Result<f64> {
    let fft = Radix2Fft::new(state.spec.n_points)?;
    let n = state.spec.n_points;
    let band = state.spec.edge_band();
    let h = state.spec.dxi();
    let dq = state.spec.dq();
    let mut worst = 0.0f64;
    for b in BranchLabel::BOTH {
        let psi = state.branch(b);
        let mass = |s: &[Complex64], w: f64| s.iter().map(|z| z.norm_sqr()).sum::<f64>() * w;
        worst = worst.max(mass(&psi[..band], h) + mass(&psi[n - band..], h));
        let (_, amp) = momentum_amplitudes_with(&fft, state, b);
        worst = worst.max(mass(&amp[..band], dq) + mass(&amp[n - band..], dq));
    }
    Ok(worst)
}

pub fn check_boundaries(state: &BranchGridState) -> Result<()> {
    let leak = boundary_leak(state)?;
    if leak > BOUNDARY_TOLERANCE {
        return Err(Error::Grid(format!(
            "probability {leak:e} at the grid boundary at tau = {}; enlarge the grid",
            state.tau
        )));
    }
    Ok(())
}

pub const SNAPSHOT_COLUMNS: &str = "xi,re_psi_plus,im_psi_plus,re_psi_minus,im_psi_minus";

pub fn format_snapshot(state: &BranchGridState) -> String {
    let s = &state.spec;
    let mut out = String::new();
    let _ = writeln!(out, "# tau={:e}", state.tau);
    let _ = writeln!(out, "# n_points={}", s.n_points);
    let _ = writeln!(out, "# xi_min={:e}", s.xi_min);
    let _ = writeln!(out, "# xi_max={:e}", s.xi_max);
    let _ = writeln!(out, "# d_tau={:e}", s.d_tau);
    let _ = writeln!(out, "{SNAPSHOT_COLUMNS}");
    for j in 0..s.n_points {
        let (p, m) = (state.psi_plus[j], state.psi_minus[j]);
        let _ = writeln!(out, "{:e},{:e},{:e},{:e},{:e}", s.xi(j), p.re, p.im, m.re, m.im);
    }
    out
}

pub fn parse_snapshot(text: &str) -> Result<BranchGridState> {
    let mut meta = std::collections::HashMap::new();
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    let mut header_seen = false;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix('#') {
            if let Some((k, v)) = rest.trim().split_once('=') {
                meta.insert(k.trim().to_string(), v.trim().to_string());
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        if !header_seen {
            if line != SNAPSHOT_COLUMNS {
                return Err(Error::Parse(format!("unexpected snapshot header {line:?}")));
            }
            header_seen = true;
            continue;
        }
        let vals: Vec<f64> = line
            .split(',')
            .map(|f| f.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
        if vals.len() != 5 {
            return Err(Error::Parse(format!("line {}: expected 5 columns", lineno + 1)));
        }
        plus.push(Complex64::new(vals[1], vals[2]));
        minus.push(Complex64::new(vals[3], vals[4]));
    }
    let get = |k: &str| -> Result<f64> {
        meta.get(k)
            .ok_or_else(|| Error::Parse(format!("missing `# {k}=` line")))?
            .parse::<f64>()
            .map_err(|e| Error::Parse(format!("{k}: {e}")))
    };
    let spec = GridSpec {
        n_points: get("n_points")? as usize,
        xi_min: get("xi_min")?,
        xi_max: get("xi_max")?,
        d_tau: get("d_tau")?,
    };
    spec.validate()?;
    if plus.len() != spec.n_points {
        return Err(Error::Parse(format!(
            "snapshot has {} rows, header says {}",
            plus.len(),
            spec.n_points
        )));
    }
    Ok(BranchGridState {
        psi_plus: plus,
        psi_minus: minus,
        spec,
        tau: get("tau")?,
    })
}

pub fn write_snapshot(path: &Path, state: &BranchGridState) -> Result<()> {
    std::fs::write(path, format_snapshot(state))?;
    Ok(())
}

pub fn read_snapshot(path: &Path) -> Result<BranchGridState> {
    parse_snapshot(&std::fs::read_to_string(path)?)
}

/// Propagates a fresh packet to `tau` and returns the final state.
pub fn propagate(
    params: &ModelParams,
    spec: GridSpec,
    potential: PotentialKind,
    tau: f64,
) -> Result<BranchGridState> {
    let prop = Propagator::new(params, spec, potential)?;
    let mut state = init_gaussian(params, spec)?;
    prop.advance_to(&mut state, tau)?;
    Ok(state)
}
