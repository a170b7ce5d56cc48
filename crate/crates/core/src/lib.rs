//! Intrinsic damping of Rabi oscillations in the one-excitation optical
//! Stern-Gerlach model.
//!
//! An atom crossing a cavity near a node of the standing wave sees a
//! mode function that is linear in position. In the dressed basis the two
//! translational components `|φ±⟩` feel opposite constant forces, split in
//! momentum, and their overlap `⟨φ⁻|φ⁺⟩` decays. That overlap controls the
//! excited-state population, the visibility/distinguishability pair, the
//! Horodecki CHSH measure and the partial-transpose spectrum of the
//! atom-field state.
//!
//! - [`params`]: SI configuration and dimensionless parameters.
//! - [`analytic`]: closed-form branch amplitudes and overlap.
//! - [`complementarity`]: visibility and distinguishability.
//! - [`entanglement`]: two-qubit density matrices, Bell and PPT criteria.
//! - [`grid`]: split-operator propagation used as an independent check.
//! - [`report`]: CSV/JSON tables behind the `osg` command.

pub mod analytic;
pub mod complementarity;
pub mod entanglement;
pub mod error;
pub mod fft;
pub mod grid;
pub mod params;
pub mod report;

pub use analytic::{BranchLabel, ComplexScalar, PhaseSpacePoint};
pub use error::{Error, Result};
pub use params::{derive_params, ModelParams, PhysicalConfig};
