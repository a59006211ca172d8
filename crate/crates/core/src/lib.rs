//! Spontaneous decay of a two-level atom at the center of a three-layer
//! spherical microcavity with a dispersing, absorbing wall.
//!
//! The wall is a single-resonance Lorentz dielectric; the inner and outer
//! layers are vacuum. Everything observable is driven by the layered-sphere
//! scattering coefficients of the classical Green tensor, evaluated at the
//! cavity center where only the electric-dipole (n = 1) channel survives.
//!
//! Units: `hbar = epsilon_0 = c = 1` and the medium resonance frequency
//! `omega_t = 1`. Lengths are measured in `c/omega_t`; helpers accept
//! lengths in wall-resonance wavelengths (`lambda_t = 2 pi c / omega_t`)
//! and convert by multiplying with `2 pi`.
//!
//! Module map:
//! - [`medium`]: Lorentz permittivity and complex refractive index
//! - [`specfun`]: complex-argument spherical Bessel/Hankel functions
//! - [`green`]: layer-matching and scattering coefficients, relative decay
//!   rate `abar`, center-of-cavity Green-tensor quantities
//! - [`resonances`]: line finding, widths, analytic estimates, radius tuning
//! - [`dynamics`]: memory kernel, Volterra solver, Markov and
//!   single-resonance models
//! - [`observables`]: far-field pattern, emitted-light spectra, escaped
//!   energy fraction
//!
//! The crate is `no_std`-compatible (with `alloc`); the default `std`
//! feature only switches the float backend.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod dynamics;
pub mod error;
pub mod green;
pub mod medium;
pub mod observables;
pub mod resonances;
pub mod specfun;

pub use error::{Error, Result, Warning};
pub use medium::LorentzMedium;

/// Wavelength of the wall resonance in internal length units (`2 pi c / omega_t`).
pub const LAMBDA_T: f64 = 2.0 * core::f64::consts::PI;
