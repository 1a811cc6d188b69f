//! Quantum synchronization of coupled continuous-variable oscillators.
//!
//! The crate integrates the semiclassical means and linearized Gaussian
//! fluctuations of driven optomechanical resonators coupled by phonon
//! tunneling, and evaluates complete and phase synchronization measures,
//! their quantum bounds, Gaussian discord and logarithmic negativity.
//!
//! Module map:
//!
//! - [`gaussian`]: covariance matrices, mode extraction, rotations, symplectic spectra.
//! - [`sync`]: `S_c`, `S_p`, bound checks, time averages.
//! - [`correlations`]: logarithmic negativity and Gaussian discord.
//! - [`model`]: parameters, classical vector field, drift and diffusion matrices.
//! - [`dynamics`]: joint RK4 propagation, recorders, the anti-symmetric mode model.
//! - [`experiments`]: configuration, figure-level experiments and CSV output.

pub mod correlations;
pub mod dynamics;
pub mod experiments;
pub mod error;
pub mod gaussian;
pub mod model;
pub mod sync;

pub use error::{Error, Result};
