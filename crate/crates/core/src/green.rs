//! Reflection/transmission coefficients of the three-layer sphere, the
//! scattering coefficients `A13` and `C33`, the relative decay rate
//! `abar(omega)`, and the center-of-cavity Green-tensor quantities.
//!
//! Layer indexing: layer 1 is the outer vacuum (`r > R1`), layer 2 the
//! absorbing wall (`R2 <= r <= R1`), layer 3 the inner vacuum. Interface 1
//! sits at `R1` between layers 1 and 2; interface 2 at `R2` between layers
//! 2 and 3. A coefficient subscript pair `(i, l)` means the spherical
//! function is taken at `k_i R_l`.
//!
//! The coefficient quotients are evaluated literally, term by term, in
//! exponent-scaled arithmetic: the wall arguments `k_2 R_{1,2}` carry
//! imaginary parts of a few hundred (band-gap regime) up to several
//! thousand (near-resonance dispersive regime), so the individual
//! reflection/transmission coefficients span factors like `e^(+-2 Im k2 R)`
//! that overflow f64 even though the final combinations are moderate.

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::medium::LorentzMedium;
use crate::specfun::{h1_scaled, j_scaled, riccati_scaled, BesselKind, Scaled};

/// Radii of the three-layer sphere, in internal length units (`c/omega_t`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityGeometry {
    /// Outer wall radius.
    pub r1: f64,
    /// Inner wall radius (cavity radius).
    pub r2: f64,
}

impl CavityGeometry {
    pub fn new(r1: f64, r2: f64) -> Result<Self> {
        if !(r2 > 0.0) || !(r1 > r2) || !r1.is_finite() {
            return Err(Error::Domain("cavity geometry requires r1 > r2 > 0"));
        }
        Ok(Self { r1, r2 })
    }

    /// Geometry from the cavity radius and wall thickness in units of the
    /// wall-resonance wavelength `lambda_t = 2 pi c / omega_t`.
    pub fn from_lambda(r2_lambda: f64, d_lambda: f64) -> Result<Self> {
        let r2 = r2_lambda * crate::LAMBDA_T;
        let r1 = (r2_lambda + d_lambda) * crate::LAMBDA_T;
        Self::new(r1, r2)
    }

    /// Wall thickness `d = r1 - r2`.
    pub fn thickness(&self) -> f64 {
        self.r1 - self.r2
    }
}

/// Wavenumbers of the three layers at a given frequency (`c = 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LayerWavenumbers {
    pub k1: Complex64,
    pub k2: Complex64,
    pub k3: Complex64,
}

/// `k1 = k3 = omega`, `k2 = n(omega) omega`.
pub fn layer_wavenumbers(omega: f64, medium: &LorentzMedium) -> Result<LayerWavenumbers> {
    let n = medium.refractive_index(omega)?;
    Ok(LayerWavenumbers {
        k1: Complex64::new(omega, 0.0),
        k2: n * omega,
        k3: Complex64::new(omega, 0.0),
    })
}

/// Wave polarization label of the vector spherical harmonics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarization {
    M,
    N,
}

/// Interface of the layered sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interface {
    /// Interface 1 at `R1`, between the outer vacuum and the wall.
    Outer,
    /// Interface 2 at `R2`, between the wall and the inner vacuum.
    Inner,
}

/// The four layer-matching coefficients of one interface, polarization,
/// and order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceCoefficients {
    pub r_p: Complex64,
    pub r_f: Complex64,
    pub t_p: Complex64,
    pub t_f: Complex64,
}

/// Spherical-function values entering one interface: `(value, riccati)`
/// pairs of `j` and `h` at `k_a R` and `k_b R`.
struct InterfaceFunctions {
    jaa: Scaled,
    jba: Scaled,
    haa: Scaled,
    hba: Scaled,
    djaa: Scaled,
    djba: Scaled,
    dhaa: Scaled,
    dhba: Scaled,
    ka: Complex64,
    kb: Complex64,
}

impl InterfaceFunctions {
    fn eval(n: i32, ka: Complex64, kb: Complex64, radius: f64) -> Self {
        let za = ka * radius;
        let zb = kb * radius;
        Self {
            jaa: j_scaled(n, za),
            jba: j_scaled(n, zb),
            haa: h1_scaled(n, za),
            hba: h1_scaled(n, zb),
            djaa: riccati_scaled(n, BesselKind::First, za),
            djba: riccati_scaled(n, BesselKind::First, zb),
            dhaa: riccati_scaled(n, BesselKind::Hankel, za),
            dhba: riccati_scaled(n, BesselKind::Hankel, zb),
            ka,
            kb,
        }
    }
}

/// `kb * x * y - ka * u * v` in scaled arithmetic.
fn comb(kb: Complex64, x: Scaled, y: Scaled, ka: Complex64, u: Scaled, v: Scaled) -> Scaled {
    x.mul(y).scale(kb).sub(u.mul(v).scale(ka))
}

/// The literal matching-coefficient quotients for one interface.
fn interface_scaled(
    n: i32,
    pol: Polarization,
    fx: &InterfaceFunctions,
    omega: f64,
) -> Result<[Scaled; 4]> {
    let InterfaceFunctions {
        jaa,
        jba,
        haa,
        hba,
        djaa,
        djba,
        dhaa,
        dhba,
        ka,
        kb,
    } = *fx;
    let (rp_num, rp_den, rf_num, rf_den, tp_num, tf_num) = match pol {
        Polarization::M => (
            comb(kb, dhba, haa, ka, dhaa, hba),
            comb(kb, jaa, dhba, ka, djaa, hba),
            comb(kb, djba, jaa, ka, djaa, jba),
            comb(kb, djba, haa, ka, jba, dhaa),
            jba.mul(dhba).sub(djba.mul(hba)).scale(kb),
            djba.mul(hba).sub(jba.mul(dhba)).scale(kb),
        ),
        Polarization::N => (
            comb(kb, hba, dhaa, ka, haa, dhba),
            comb(kb, djaa, hba, ka, jaa, dhba),
            comb(kb, jba, djaa, ka, jaa, djba),
            comb(kb, jba, dhaa, ka, djba, haa),
            djba.mul(hba).sub(jba.mul(dhba)).scale(kb),
            jba.mul(dhba).sub(djba.mul(hba)).scale(kb),
        ),
    };
    let _ = n;
    if rp_den.is_zero() || rf_den.is_zero() {
        return Err(Error::Pole { omega });
    }
    Ok([
        rp_num.div(rp_den),
        rf_num.div(rf_den),
        tp_num.div(rp_den),
        tf_num.div(rf_den),
    ])
}

fn interface_for(
    n: i32,
    pol: Polarization,
    f: Interface,
    omega: f64,
    geometry: &CavityGeometry,
    medium: &LorentzMedium,
) -> Result<[Scaled; 4]> {
    let k = layer_wavenumbers(omega, medium)?;
    let (ka, kb, radius) = match f {
        Interface::Outer => (k.k1, k.k2, geometry.r1),
        Interface::Inner => (k.k2, k.k3, geometry.r2),
    };
    let fx = InterfaceFunctions::eval(n, ka, kb, radius);
    interface_scaled(n, pol, &fx, omega)
}

/// Layer-matching coefficients `(R_P, R_F, T_P, T_F)` of one interface in
/// plain precision.
///
/// For strongly absorbing walls individual transmission coefficients grow
/// like `e^(Im k2 R)` and can saturate to infinity here even though every
/// downstream combination is finite; use [`scattering_coefficients`] for
/// those.
pub fn interface_coefficients(
    n: u32,
    pol: Polarization,
    f: Interface,
    omega: f64,
    geometry: &CavityGeometry,
    medium: &LorentzMedium,
) -> Result<InterfaceCoefficients> {
    if n > 3 {
        return Err(Error::Domain("interface coefficients support orders 0..=3"));
    }
    let [rp, rf, tp, tf] = interface_for(n as i32, pol, f, omega, geometry, medium)?;
    Ok(InterfaceCoefficients {
        r_p: rp.to_c(),
        r_f: rf.to_c(),
        t_p: tp.to_c(),
        t_f: tf.to_c(),
    })
}

fn scattering_scaled(
    n: i32,
    pol: Polarization,
    omega: f64,
    geometry: &CavityGeometry,
    medium: &LorentzMedium,
) -> Result<(Scaled, Scaled)> {
    let [rp1, _rf1, tp1, tf1] = interface_for(n, pol, Interface::Outer, omega, geometry, medium)?;
    let [rp2, rf2, tp2, tf2] = interface_for(n, pol, Interface::Inner, omega, geometry, medium)?;
    let den = tp1.add(tf1.mul(rp1).mul(rf2));
    if den.is_zero() || tp2.is_zero() || tf1.is_zero() || tp1.is_zero() {
        return Err(Error::Pole { omega });
    }
    let a13 = tf1.mul(tf2).mul(tp1).div(den);
    let c33 = a13.div(tp2).mul(rp2.div(tf1).add(rp1.div(tp1)));
    Ok((a13, c33))
}

/// Scattering coefficients `(A13, C33)` of the three-layer sphere for a
/// given order and polarization. `A13` weights the transmitted field
/// outside the cavity, `C33` the field reflected back onto a source in the
/// inner vacuum; neither depends on the azimuthal index.
pub fn scattering_coefficients(
    n: u32,
    pol: Polarization,
    omega: f64,
    geometry: &CavityGeometry,
    medium: &LorentzMedium,
) -> Result<(Complex64, Complex64)> {
    if n == 0 || n > 3 {
        return Err(Error::Domain(
            "scattering coefficients support orders 1..=3",
        ));
    }
    let (a13, c33) = scattering_scaled(n as i32, pol, omega, geometry, medium)?;
    Ok((a13.to_c(), c33.to_c()))
}

/// Relative decay rate `abar(omega) = 1 + Re C33_N(n = 1)`: the decay rate
/// of a center atom divided by its free-space rate. Plays the role of the
/// cavity-modified density of modes.
pub fn abar(omega: f64, geometry: &CavityGeometry, medium: &LorentzMedium) -> Result<f64> {
    let (_, c33) = scattering_scaled(1, Polarization::N, omega, geometry, medium)?;
    Ok(1.0 + c33.to_c().re)
}

/// Thick-wall approximation of `abar`:
/// `Re[(n - i tan(R2 omega/c)) / (1 - i n tan(R2 omega/c))]`,
/// valid for `R2 omega/c >> 1` and `exp(-n_I d omega/c) << 1`. Evaluated in
/// the equivalent `(n cos - i sin)/(cos - i n sin)` form, which passes
/// smoothly through the tangent poles (limit value `Re(1/n)`).
pub fn abar_thick_wall(
    omega: f64,
    geometry: &CavityGeometry,
    medium: &LorentzMedium,
) -> Result<f64> {
    let n = medium.refractive_index(omega)?;
    let x = geometry.r2 * omega;
    let (s, c) = (x.sin(), x.cos());
    let i = Complex64::i();
    Ok(((n * c - i * s) / (c - i * n * s)).re)
}

/// Scalar reflected Green function at the cavity center:
/// `G_R = (i omega / 6 pi c) C33_N(omega)`; the full tensor is `G_R * I`.
pub fn reflected_green_center(
    omega: f64,
    geometry: &CavityGeometry,
    medium: &LorentzMedium,
) -> Result<Complex64> {
    let (_, c33) = scattering_scaled(1, Polarization::N, omega, geometry, medium)?;
    Ok(Complex64::i() * omega / (6.0 * core::f64::consts::PI) * c33.to_c())
}

/// The transmission coefficient `A13_N(n = 1, omega)`, the only scattering
/// quantity entering the far-field pattern and the escaped-energy fraction.
pub fn farfield_transmission(
    omega: f64,
    geometry: &CavityGeometry,
    medium: &LorentzMedium,
) -> Result<Complex64> {
    let (a13, _) = scattering_scaled(1, Polarization::N, omega, geometry, medium)?;
    Ok(a13.to_c())
}
