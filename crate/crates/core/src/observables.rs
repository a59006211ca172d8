//! Far-field emission pattern, emitted-light spectrum, and the fraction of
//! emitted energy escaping the cavity.
//!
//! All intensities and spectra are normalized: the constant prefactor
//! `(k_A^2 mu / 4 pi eps0)^2` is divided out (the dipole moment enters the
//! physics only through `A0`), and the detector distance appears as
//! `rho_hat = rho / lambda_t`.

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::dynamics::{kernel_plan, markov_parameters, AtomConfig, KernelOptions};
use crate::error::{Error, Result};
use crate::green::{abar, farfield_transmission, CavityGeometry};
use crate::medium::LorentzMedium;

/// Far-zone detector position. The azimuth is irrelevant by symmetry of
/// the z-oriented dipole at the center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldPoint {
    /// Distance from the cavity center, internal length units.
    pub rho: f64,
    /// Polar angle from the dipole axis.
    pub theta: f64,
    /// Azimuthal angle (unused).
    pub phi: f64,
}

impl FieldPoint {
    pub fn new(rho: f64, theta: f64) -> Result<Self> {
        if !(rho > 0.0) {
            return Err(Error::Domain("field point requires rho > 0"));
        }
        if !(0.0..=core::f64::consts::PI).contains(&theta) {
            return Err(Error::Domain("theta must lie in [0, pi]"));
        }
        Ok(Self {
            rho,
            theta,
            phi: 0.0,
        })
    }

    /// Normalized angular/distance factor `sin^2(theta) / rho_hat^2`.
    fn pattern_factor(&self) -> f64 {
        let rho_hat = self.rho / crate::LAMBDA_T;
        let s = self.theta.sin();
        s * s / (rho_hat * rho_hat)
    }
}

/// Spectral-apparatus setting: analyzer frequency and operating time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumRequest {
    pub omega_s: f64,
    pub t_window: f64,
}

impl SpectrumRequest {
    pub fn new(omega_s: f64, t_window: f64) -> Result<Self> {
        if !(t_window > 0.0) {
            return Err(Error::Domain("spectrum operating time must be positive"));
        }
        Ok(Self { omega_s, t_window })
    }
}

/// Normalized far-field intensity in the Markov regime (retardation
/// ignored): `sin^2(theta)/rho_hat^2 |A13_N(omega_a)|^2 e^{-A t}`.
pub fn emission_pattern_markov(
    point: &FieldPoint,
    t: f64,
    atom: &AtomConfig,
    geometry: &CavityGeometry,
    medium: &LorentzMedium,
) -> Result<f64> {
    if point.rho <= geometry.r1 {
        return Err(Error::Domain("far zone requires rho > r1"));
    }
    let a13 = farfield_transmission(atom.omega_a, geometry, medium)?;
    let rate = abar(atom.omega_a, geometry, medium)? * atom.a0;
    Ok(point.pattern_factor() * a13.norm_sqr() * (-rate * t).exp())
}

/// Normalized free-space far-field intensity with the retardation step:
/// `sin^2(theta)/rho_hat^2 e^{-A0 (t - rho/c)} Theta(t - rho/c)`.
pub fn emission_pattern_freespace(point: &FieldPoint, t: f64, atom: &AtomConfig) -> f64 {
    let retarded = t - point.rho;
    if retarded < 0.0 {
        0.0
    } else {
        point.pattern_factor() * (-atom.a0 * retarded).exp()
    }
}

/// Finite-time Markov spectrum from precomputed pattern weight, decay
/// rate, and line shift:
/// `ff2 |(e^{(-A/2 + iX) T} - 1)/(X + iA/2)|^2` with
/// `X = omega_s - (omega_a - shift/2)`.
pub fn spectrum_markov_with(
    req: &SpectrumRequest,
    atom: &AtomConfig,
    ff2: f64,
    rate: f64,
    shift: f64,
) -> f64 {
    let x = req.omega_s - (atom.omega_a - 0.5 * shift);
    let num = (Complex64::new(-0.5 * rate, x) * req.t_window).exp() - 1.0;
    let den = Complex64::new(x, 0.5 * rate);
    ff2 * (num / den).norm_sqr()
}

/// Finite-time power spectrum of the emitted light in the Markov regime.
/// Recomputes rate and shift per call; sweeps should use
/// [`markov_parameters`] and [`spectrum_markov_with`] directly.
pub fn spectrum_markov(
    req: &SpectrumRequest,
    point: &FieldPoint,
    atom: &AtomConfig,
    geometry: &CavityGeometry,
    medium: &LorentzMedium,
) -> Result<f64> {
    if point.rho <= geometry.r1 {
        return Err(Error::Domain("far zone requires rho > r1"));
    }
    let plan = kernel_plan(atom, geometry, medium)?;
    let (rate, shift) = markov_parameters(
        atom,
        geometry,
        medium,
        plan.window,
        KernelOptions::default(),
    )?;
    let a13 = farfield_transmission(atom.omega_a, geometry, medium)?;
    let ff2 = point.pattern_factor() * a13.norm_sqr();
    Ok(spectrum_markov_with(req, atom, ff2, rate, shift))
}

/// Long-time free-space spectrum, the Lorentzian
/// `sin^2(theta)/rho_hat^2 / ((omega_s - (omega_a - shift/2))^2 + A0^2/4)`.
pub fn spectrum_freespace_limit(
    omega_s: f64,
    point: &FieldPoint,
    atom: &AtomConfig,
    shift: f64,
) -> f64 {
    let x = omega_s - (atom.omega_a - 0.5 * shift);
    point.pattern_factor() / (x * x + 0.25 * atom.a0 * atom.a0)
}

/// Fraction of the emitted energy observed outside the cavity:
/// `W/W0 = |A13_N(omega_a)|^2 / (1 + Re C33_N(omega_a))`.
pub fn energy_ratio(
    atom: &AtomConfig,
    geometry: &CavityGeometry,
    medium: &LorentzMedium,
) -> Result<f64> {
    let a13 = farfield_transmission(atom.omega_a, geometry, medium)?;
    let ab = abar(atom.omega_a, geometry, medium)?;
    if !(ab > 0.0) {
        return Err(Error::Inconsistent("abar(omega_a) must be positive"));
    }
    Ok(a13.norm_sqr() / ab)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::LAMBDA_T;

    fn reference_geometry() -> CavityGeometry {
        CavityGeometry::from_lambda(30.0, 1.0).unwrap()
    }

    fn far_point(theta: f64) -> FieldPoint {
        FieldPoint::new(1000.0 * LAMBDA_T, theta).unwrap()
    }

    #[test]
    fn freespace_pattern_causality_and_shape() {
        let atom = AtomConfig::new(1.0, 1e-4).unwrap();
        let p = far_point(core::f64::consts::FRAC_PI_2);
        assert_eq!(emission_pattern_freespace(&p, 0.5 * p.rho, &atom), 0.0);
        let onset = emission_pattern_freespace(&p, p.rho + 1e-9, &atom);
        assert!((onset - 1.0 / (1000.0f64 * 1000.0)).abs() < 1e-9);
        // dipole axis null for all times
        let axis = far_point(0.0);
        for &t in &[0.0, p.rho, 3.0 * p.rho] {
            assert_eq!(emission_pattern_freespace(&axis, t, &atom), 0.0);
        }
    }

    #[test]
    fn freespace_pattern_time_integral_scales_inversely_with_rate() {
        let p = far_point(1.0);
        let integral = |a0: f64| {
            let atom = AtomConfig::new(1.0, a0).unwrap();
            let dt = 0.01 / a0;
            let mut sum = 0.0;
            for j in 0..4000 {
                sum += emission_pattern_freespace(&p, p.rho + (j as f64 + 0.5) * dt, &atom) * dt;
            }
            sum
        };
        let ratio = integral(1e-3) / integral(2e-3);
        assert!((ratio - 2.0).abs() < 1e-3);
    }

    #[test]
    fn markov_pattern_reduces_to_free_space_shape() {
        let atom = AtomConfig::new(1.0464, 1e-5).unwrap();
        let geom = reference_geometry();
        let med = LorentzMedium::new(0.0, 1e-3).unwrap();
        let p = far_point(1.2);
        for &t in &[0.0, 100.0, 5000.0] {
            let got = emission_pattern_markov(&p, t, &atom, &geom, &med).unwrap();
            let expect = p.pattern_factor() * (-atom.a0 * t).exp();
            assert!((got - expect).abs() <= 1e-10 * expect);
        }
    }

    #[test]
    fn markov_pattern_suppressed_in_gap() {
        let geom = reference_geometry();
        let med = LorentzMedium::new(0.5, 1e-2).unwrap();
        let p = far_point(core::f64::consts::FRAC_PI_2);
        let in_gap = AtomConfig::new(1.05, 1e-6).unwrap();
        let below = AtomConfig::new(0.98, 1e-6).unwrap();
        let gap_val = emission_pattern_markov(&p, 0.0, &in_gap, &geom, &med).unwrap();
        let out_val = emission_pattern_markov(&p, 0.0, &below, &geom, &med).unwrap();
        assert!(gap_val < 1e-4 * out_val);
    }

    #[test]
    fn near_zone_is_rejected() {
        let atom = AtomConfig::new(1.05, 1e-6).unwrap();
        let geom = reference_geometry();
        let med = LorentzMedium::new(0.5, 1e-2).unwrap();
        let p = FieldPoint::new(0.5 * geom.r1, 1.0).unwrap();
        assert!(emission_pattern_markov(&p, 0.0, &atom, &geom, &med).is_err());
    }

    #[test]
    fn solid_angle_integral_of_pattern() {
        // integral of sin^2 theta over the sphere is 8 pi / 3; the pattern
        // total is theta-independent and decays as e^{-A t}.
        let atom = AtomConfig::new(1.0, 1e-4).unwrap();
        let geom = reference_geometry();
        let med = LorentzMedium::new(0.0, 1e-3).unwrap();
        let rho = 1000.0 * LAMBDA_T;
        let t = 2000.0;
        let n = 20_001;
        let h = core::f64::consts::PI / (n - 1) as f64;
        let mut sum = 0.0;
        for j in 0..n {
            let theta = j as f64 * h;
            let p = FieldPoint::new(rho, theta).unwrap();
            // composite Simpson weights: 1, 4, 2, ..., 4, 1 over h/3
            let w = if j == 0 || j == n - 1 {
                1.0
            } else if j % 2 == 1 {
                4.0
            } else {
                2.0
            };
            sum += w * emission_pattern_markov(&p, t, &atom, &geom, &med).unwrap() * theta.sin();
        }
        sum *= h / 3.0 * 2.0 * core::f64::consts::PI;
        let rho_hat = rho / LAMBDA_T;
        let expect = 8.0 * core::f64::consts::PI / 3.0 / (rho_hat * rho_hat) * (-atom.a0 * t).exp();
        assert!((sum - expect).abs() / expect < 1e-6, "{sum} vs {expect}");
    }

    #[test]
    fn spectrum_limits() {
        let atom = AtomConfig::new(1.0, 1e-4).unwrap();
        let p = far_point(core::f64::consts::FRAC_PI_2);
        let ff2 = 1.0 / (1000.0f64 * 1000.0);
        // T -> 0 kills the spectrum
        let tiny = SpectrumRequest::new(1.0, 1e-12).unwrap();
        assert!(spectrum_markov_with(&tiny, &atom, ff2, atom.a0, 0.0) < 1e-20);
        // long-time peak value 4 ff2 / A^2 at the shifted line center
        let long = SpectrumRequest::new(1.0, 1e9).unwrap();
        let peak = spectrum_markov_with(&long, &atom, ff2, atom.a0, 0.0);
        assert!((peak - 4.0 * ff2 / (atom.a0 * atom.a0)).abs() / peak < 1e-6);
        // half maximum at detuning A/2
        let half = SpectrumRequest::new(1.0 + 0.5 * atom.a0, 1e9).unwrap();
        let hv = spectrum_markov_with(&half, &atom, ff2, atom.a0, 0.0);
        assert!((hv / peak - 0.5).abs() < 1e-6);
        let _ = p;
    }

    #[test]
    fn finite_time_spectrum_approaches_lorentzian() {
        let atom = AtomConfig::new(1.0, 1e-4).unwrap();
        let p = far_point(core::f64::consts::FRAC_PI_2);
        let ff2 = p.pattern_factor();
        let t_window = 50.0 / atom.a0;
        for k in -50..=50 {
            let omega_s = atom.omega_a + 0.1 * k as f64 * atom.a0;
            let req = SpectrumRequest::new(omega_s, t_window).unwrap();
            let finite = spectrum_markov_with(&req, &atom, ff2, atom.a0, 0.0);
            let limit = spectrum_freespace_limit(omega_s, &p, &atom, 0.0);
            assert!(
                (finite - limit).abs() / limit < 0.05,
                "omega_s - omega_a = {}",
                omega_s - atom.omega_a
            );
        }
    }

    #[test]
    fn freespace_lorentzian_shape() {
        let atom = AtomConfig::new(1.0, 1e-4).unwrap();
        let p = far_point(core::f64::consts::FRAC_PI_2);
        let shift = 2e-4;
        let center = atom.omega_a - 0.5 * shift;
        let peak = spectrum_freespace_limit(center, &p, &atom, shift);
        assert!(spectrum_freespace_limit(center + 1e-5, &p, &atom, shift) < peak);
        let half = spectrum_freespace_limit(center + 0.5 * atom.a0, &p, &atom, shift);
        assert!((half / peak - 0.5).abs() < 1e-9);
        // zero shift peaks at omega_a itself
        let p0 = spectrum_freespace_limit(atom.omega_a, &p, &atom, 0.0);
        assert!(p0 >= spectrum_freespace_limit(atom.omega_a + 1e-6, &p, &atom, 0.0));
    }

    #[test]
    fn energy_ratio_vacuum_and_gap() {
        let geom = reference_geometry();
        let vac = LorentzMedium::new(0.0, 1e-2).unwrap();
        let atom = AtomConfig::new(1.05, 1e-6).unwrap();
        let w0 = energy_ratio(&atom, &geom, &vac).unwrap();
        assert!((w0 - 1.0).abs() < 1e-12);

        let med = LorentzMedium::new(0.5, 1e-2).unwrap();
        for k in 0..60 {
            let atom = AtomConfig::new(0.9 + 0.3 * k as f64 / 59.0, 1e-6).unwrap();
            let w = energy_ratio(&atom, &geom, &med).unwrap();
            assert!((0.0..=1.0 + 1e-6).contains(&w), "W/W0 = {w}");
        }
    }
}
