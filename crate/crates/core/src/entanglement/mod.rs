//! Two-qubit density matrices for the atom (internal levels) and the cavity
//! field (0 or 1 photon), with the Horodecki CHSH criterion and the Peres
//! partial-transpose test.
//!
//! Basis and Pauli convention, used everywhere in this module:
//!
//! | index | state  | atom σz | field σz |
//! |-------|--------|---------|----------|
//! | 0     | \|e,0⟩ | +1      | +1       |
//! | 1     | \|e,1⟩ | +1      | −1       |
//! | 2     | \|g,0⟩ | −1      | +1       |
//! | 3     | \|g,1⟩ | −1      | −1       |
//!
//! i.e. the ordered product basis `{|e⟩,|g⟩} ⊗ {|0⟩,|1⟩}` with the atom as
//! the first factor.

pub mod eigen;
mod io;
pub mod spin;

pub use io::{parse_density, read_density, write_density, format_density};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analytic::ComplexScalar;
use crate::complementarity::MODULUS_TOLERANCE;
use crate::error::{Error, Result};

pub type Matrix4 = [[Complex64; 4]; 4];
pub type Matrix2 = [[Complex64; 2]; 2];

pub const HERMITICITY_TOLERANCE: f64 = 1e-12;
pub const TRACE_TOLERANCE: f64 = 1e-12;
pub const POSITIVITY_TOLERANCE: f64 = 1e-10;
/// `M(ρ)` must exceed `1 + BELL_TOLERANCE` to count as a violation.
pub const BELL_TOLERANCE: f64 = 1e-10;
/// Imaginary residue allowed on `tr(ρ σn⊗σm)`.
pub const TRACE_IMAG_TOLERANCE: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

pub const E0: usize = 0;
pub const E1: usize = 1;
pub const G0: usize = 2;
pub const G1: usize = 3;

/// Validated 4×4 density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitDensity {
    entries: Matrix4,
}

impl TwoQubitDensity {
    /// Validates hermiticity, unit trace and positivity, reporting every
    /// broken invariant at once.
    pub fn new(entries: Matrix4) -> Result<Self> {
        let mut problems = Vec::new();
        let mut herm = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                herm = herm.max((entries[i][j] - entries[j][i].conj()).norm());
            }
        }
        if !herm.is_finite() || herm > HERMITICITY_TOLERANCE {
            problems.push(format!("not Hermitian: max |ρ_ij − ρ_ji*| = {herm:e}"));
        }
        let tr: Complex64 = (0..4).map(|i| entries[i][i]).sum();
        if (tr - ONE).norm() > TRACE_TOLERANCE {
            problems.push(format!("trace is {tr}, expected 1"));
        }
        if problems.is_empty() {
            let min = eigen::hermitian_eigenvalues4(&entries)[0];
            if min < -POSITIVITY_TOLERANCE {
                problems.push(format!("not positive semidefinite: minimum eigenvalue {min:e}"));
            }
        }
        if problems.is_empty() {
            Ok(Self { entries })
        } else {
            Err(Error::InvalidDensity(problems))
        }
    }

    pub fn entries(&self) -> &Matrix4 {
        &self.entries
    }

    pub fn maximally_mixed() -> Self {
        let mut m = [[ZERO; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = Complex64::new(0.25, 0.0);
        }
        Self { entries: m }
    }

    /// Projector on a normalized pure state.
    pub fn pure(state: [Complex64; 4]) -> Result<Self> {
        let n: f64 = state.iter().map(|c| c.norm_sqr()).sum();
        let m = std::array::from_fn(|i| std::array::from_fn(|j| state[i] * state[j].conj() / n));
        Self::new(m)
    }

    pub fn eigenvalues(&self) -> [f64; 4] {
        eigen::hermitian_eigenvalues4(&self.entries)
    }

    pub fn purity(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                s += (self.entries[i][j] * self.entries[j][i]).re;
            }
        }
        s
    }
}

/// Reduced atom-field state after tracing out the translational motion:
///
/// ```text
/// ρ = ½ [ |χ⁺⟩⟨χ⁺| + |χ⁻⟩⟨χ⁻| + (c |χ⁺⟩⟨χ⁻| + h.c.) ],   c = ⟨φ⁻|φ⁺⟩
/// ```
///
/// with `|χ±⟩ = (|e,0⟩ ± |g,1⟩)/√2`. On `{|e,0⟩, |g,1⟩}` this is
/// `½ [[1 + Re c, −i Im c], [i Im c, 1 − Re c]]`; everything else is zero.
pub fn reduced_density(overlap: ComplexScalar) -> Result<TwoQubitDensity> {
    let m = overlap.norm();
    if !m.is_finite() || m > 1.0 + MODULUS_TOLERANCE {
        return Err(Error::OverlapOutOfRange(m));
    }
    let (a, b) = (overlap.re, overlap.im);
    let mut r = [[ZERO; 4]; 4];
    r[E0][E0] = Complex64::new(0.5 * (1.0 + a), 0.0);
    r[G1][G1] = Complex64::new(0.5 * (1.0 - a), 0.0);
    r[E0][G1] = Complex64::new(0.0, -0.5 * b);
    r[G1][E0] = Complex64::new(0.0, 0.5 * b);
    Ok(TwoQubitDensity { entries: r })
}

pub fn pauli(n: usize) -> Matrix2 {
    match n {
        0 => [[ONE, ZERO], [ZERO, ONE]],
        1 => [[ZERO, ONE], [ONE, ZERO]],
        2 => [[ZERO, -I], [I, ZERO]],
        3 => [[ONE, ZERO], [ZERO, -ONE]],
        _ => panic!("Pauli index {n} out of range"),
    }
}

/// `a ⊗ b` with the first factor on the high index bit.
pub fn kron(a: &Matrix2, b: &Matrix2) -> Matrix4 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[i / 2][j / 2] * b[i % 2][j % 2]))
}

pub fn matmul4(a: &Matrix4, b: &Matrix4) -> Matrix4 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..4).map(|k| a[i][k] * b[k][j]).sum()))
}

pub fn trace4(a: &Matrix4) -> Complex64 {
    (0..4).map(|i| a[i][i]).sum()
}

/// `t_nm = tr(ρ σn ⊗ σm)`, `n, m ∈ {x, y, z}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelationMatrix {
    pub entries: [[f64; 3]; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BellVerdict {
    pub m_value: f64,
    pub violates_chsh: bool,
    pub lambda1: f64,
    pub lambda2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeparabilityVerdict {
    pub min_pt_eigenvalue: f64,
    pub separable: bool,
}

pub fn pauli_correlation_matrix(rho: &TwoQubitDensity) -> Result<CorrelationMatrix> {
    let mut t = [[0.0; 3]; 3];
    let mut worst = 0.0f64;
    for n in 0..3 {
        for m in 0..3 {
            let op = kron(&pauli(n + 1), &pauli(m + 1));
            let tr = trace4(&matmul4(&rho.entries, &op));
            worst = worst.max(tr.im.abs());
            t[n][m] = tr.re;
        }
    }
    if worst > TRACE_IMAG_TOLERANCE {
        return Err(Error::InvalidDensity(vec![format!(
            "correlation trace has imaginary part {worst:e}"
        )]));
    }
    Ok(CorrelationMatrix { entries: t })
}

/// Horodecki criterion: `M(ρ)` is the sum of the two largest eigenvalues of
/// `TᵀT`; some CHSH inequality is violated iff `M(ρ) > 1`.
pub fn horodecki_m(rho: &TwoQubitDensity) -> Result<BellVerdict> {
    let t = pauli_correlation_matrix(rho)?.entries;
    let u: [[f64; 3]; 3] =
        std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| t[k][i] * t[k][j]).sum()));
    let (vals, _) = eigen::symmetric_eigen(&u);
    let (lambda1, lambda2) = (vals[2], vals[1]);
    let m_value = lambda1 + lambda2;
    Ok(BellVerdict {
        m_value,
        violates_chsh: m_value > 1.0 + BELL_TOLERANCE,
        lambda1,
        lambda2,
    })
}

/// `M(ρ) = 1 + (Im c)²` for the reduced atom-field family.
pub fn m_closed_form(overlap: ComplexScalar) -> f64 {
    1.0 + overlap.im * overlap.im
}

/// Transposes the field (second factor) indices.
pub fn partial_transpose(rho: &TwoQubitDensity) -> Matrix4 {
    let r = &rho.entries;
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let (a, n) = (i / 2, i % 2);
            let (b, m) = (j / 2, j % 2);
            r[2 * a + m][2 * b + n]
        })
    })
}

/// Peres test: separable iff the partial transpose has no negative
/// eigenvalue (beyond [`POSITIVITY_TOLERANCE`]).
///
/// For the reduced atom-field family the smallest eigenvalue is `−|Im c|/2`,
/// so the state is entangled whenever `Im c ≠ 0`.
pub fn separability_test(rho: &TwoQubitDensity) -> SeparabilityVerdict {
    let min_pt_eigenvalue = eigen::hermitian_eigenvalues4(&partial_transpose(rho))[0];
    SeparabilityVerdict {
        min_pt_eigenvalue,
        separable: min_pt_eigenvalue >= -POSITIVITY_TOLERANCE,
    }
}
