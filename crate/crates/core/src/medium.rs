//! Single-resonance Lorentz dielectric of the cavity wall.

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Lorentz-oscillator wall material. All frequencies are in units of the
/// resonance frequency `omega_t`, which the unit system fixes to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzMedium {
    /// Resonance frequency of the medium (1 in the internal unit system).
    pub omega_t: f64,
    /// Plasma frequency; coupling strength between polarization and field.
    pub omega_p: f64,
    /// Absorption linewidth of the medium resonance.
    pub gamma: f64,
}

impl LorentzMedium {
    /// A wall with plasma frequency `omega_p` and linewidth `gamma`,
    /// both in units of `omega_t`.
    pub fn new(omega_p: f64, gamma: f64) -> Result<Self> {
        if !(omega_p >= 0.0) || !omega_p.is_finite() {
            return Err(Error::Domain("omega_p must be finite and >= 0"));
        }
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::Domain("gamma must be finite and > 0"));
        }
        Ok(Self {
            omega_t: 1.0,
            omega_p,
            gamma,
        })
    }

    /// Vacuum "wall" (`omega_p = 0`); keeps a positive `gamma` so the
    /// passivity convention `Im eps > 0` stays well defined.
    pub fn vacuum() -> Self {
        Self {
            omega_t: 1.0,
            omega_p: 0.0,
            gamma: 1e-6,
        }
    }

    /// Longitudinal frequency `omega_l = sqrt(omega_t^2 + omega_p^2)`,
    /// the upper edge of the band gap.
    pub fn omega_l(&self) -> f64 {
        (self.omega_t * self.omega_t + self.omega_p * self.omega_p).sqrt()
    }

    /// The band gap `(omega_t, omega_l)`: the interval where the real part
    /// of the permittivity is negative and waves are evanescent in the wall.
    pub fn band_gap(&self) -> (f64, f64) {
        (self.omega_t, self.omega_l())
    }

    /// Complex permittivity
    /// `eps(omega) = 1 + omega_p^2 / (omega_t^2 - omega^2 - i omega gamma)`.
    ///
    /// The imaginary part is strictly positive for `gamma > 0` (passivity).
    pub fn permittivity(&self, omega: f64) -> Result<Complex64> {
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(Error::Domain("permittivity requires omega > 0"));
        }
        let den = Complex64::new(
            self.omega_t * self.omega_t - omega * omega,
            -omega * self.gamma,
        );
        Ok(1.0 + self.omega_p * self.omega_p / den)
    }

    /// Complex refractive index, the principal square root of the
    /// permittivity. Since `Im eps > 0` the argument of `eps` lies in
    /// `(0, pi)`, so both the real and imaginary parts are positive.
    pub fn refractive_index(&self, omega: f64) -> Result<Complex64> {
        Ok(self.permittivity(omega)?.sqrt())
    }
}
