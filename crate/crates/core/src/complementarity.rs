//! Visibility and distinguishability of the two quantum paths.
//!
//! The detector here is the translational state, which starts pure, so both
//! quantities are functions of the branch overlap modulus alone.

use serde::{Deserialize, Serialize};

use crate::analytic::ComplexScalar;
use crate::error::{Error, Result};

/// Moduli this far above 1 are treated as rounding and clamped.
pub const MODULUS_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualityPair {
    pub visibility: f64,
    pub distinguishability: f64,
}

fn checked_modulus(overlap: ComplexScalar) -> Result<f64> {
    let m = overlap.norm();
    if !m.is_finite() || m > 1.0 + MODULUS_TOLERANCE {
        return Err(Error::OverlapOutOfRange(m));
    }
    Ok(m.min(1.0))
}

pub fn visibility(overlap: ComplexScalar) -> Result<f64> {
    checked_modulus(overlap)
}

pub fn distinguishability(overlap: ComplexScalar) -> Result<f64> {
    let v = checked_modulus(overlap)?;
    Ok((1.0 - v * v).sqrt())
}

pub fn duality_pair(overlap: ComplexScalar) -> Result<DualityPair> {
    Ok(DualityPair {
        visibility: visibility(overlap)?,
        distinguishability: distinguishability(overlap)?,
    })
}

/// `D² + V² − 1`. Not validated: an overlap above unit modulus shows up
/// as a positive residual instead of an error.
pub fn duality_identity_residual(overlap: ComplexScalar) -> f64 {
    let v = overlap.norm();
    let d = (1.0 - v * v).max(0.0).sqrt();
    d * d + v * v - 1.0
}
