//! Spherical Bessel and Hankel functions of complex argument, plus the
//! Riccati-type derivative combination `(1/rho) d[rho z_n(rho)]/drho`
//! entering the layer-matching coefficients.
//!
//! Two evaluation tiers:
//!
//! * Plain closed forms ([`spherical_j`], [`spherical_h1`],
//!   [`riccati_derivative`]) for orders 0..=3, guarded at `|Im z| <= 50`
//!   where every intermediate stays comfortably inside f64 range.
//! * Exponent-scaled forms ([`Scaled`], `*_scaled`) used by the scattering
//!   pipeline, where wall arguments `k_2 R` carry `|Im z|` in the hundreds
//!   to thousands and the raw function values over/underflow f64 while the
//!   final coefficient combinations stay moderate.
//!
//! Closed forms are used instead of recurrences: only orders up to 3 are
//! needed (the center-of-cavity problem uses just n = 1) and they are
//! stable at these argument scales. `j_n` switches to a 6-term ascending
//! series below `|z| = 1e-2`.

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Maximum `|Im z|` accepted by the plain-precision entry points.
pub const IM_GUARD: f64 = 50.0;

/// Small-argument threshold below which `j_n` uses its ascending series.
pub const SERIES_THRESHOLD: f64 = 1e-2;

/// Which radial function a derivative combination refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BesselKind {
    /// Spherical Bessel function of the first kind, `j_n`.
    First,
    /// Spherical Hankel function of the first kind, `h_n^(1)`.
    Hankel,
}

fn check_order(n: u32) -> Result<()> {
    if n > 3 {
        Err(Error::Domain("spherical functions support orders 0..=3"))
    } else {
        Ok(())
    }
}

fn check_guard(z: Complex64) -> Result<()> {
    if z.im.abs() > IM_GUARD {
        Err(Error::ArgumentTooLarge { im: z.im })
    } else {
        Ok(())
    }
}

/// Spherical Bessel function `j_n(z)` for `n` in 0..=3.
pub fn spherical_j(n: u32, z: Complex64) -> Result<Complex64> {
    check_order(n)?;
    check_guard(z)?;
    Ok(j_closed(n as i32, z))
}

/// Spherical Hankel function of the first kind `h_n^(1)(z)` for `n` in 0..=3.
pub fn spherical_h1(n: u32, z: Complex64) -> Result<Complex64> {
    check_order(n)?;
    check_guard(z)?;
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::Singular("h_n^(1) at z = 0"));
    }
    Ok(h1_closed(n as i32, z))
}

/// `(1/rho) d[rho z_n(rho)]/drho` at `rho = z`, i.e.
/// `z_{n-1}(z) - n z_n(z)/z`.
pub fn riccati_derivative(n: u32, kind: BesselKind, z: Complex64) -> Result<Complex64> {
    check_order(n)?;
    check_guard(z)?;
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::Singular("riccati derivative at z = 0"));
    }
    let n = n as i32;
    Ok(match kind {
        BesselKind::First => j_closed(n - 1, z) - (n as f64) * j_closed(n, z) / z,
        BesselKind::Hankel => h1_closed(n - 1, z) - (n as f64) * h1_closed(n, z) / z,
    })
}

/// Series switch point per order: the trig closed forms cancel
/// `(2n-1)!!/|z|^{n+1}`-sized terms down to `|z|^n`, so higher orders need
/// the series earlier to hold 1e-12 relative accuracy.
fn series_threshold(n: i32) -> f64 {
    match n {
        2 => 0.6,
        3 => 1.2,
        _ => SERIES_THRESHOLD,
    }
}

/// `j_n` closed form (trig basis) with the series branch at small `|z|`.
/// Supports the internal order -1 (`cos z / z`) used by the derivative
/// combination.
fn j_closed(n: i32, z: Complex64) -> Complex64 {
    if n >= 0 && z.norm() < series_threshold(n) {
        return j_series(n, z);
    }
    let s = z.sin();
    let c = z.cos();
    let zi = 1.0 / z;
    match n {
        -1 => c * zi,
        0 => s * zi,
        1 => s * zi * zi - c * zi,
        2 => (3.0 * zi * zi * zi - zi) * s - 3.0 * zi * zi * c,
        3 => (15.0 * zi * zi * zi * zi - 6.0 * zi * zi) * s - (15.0 * zi * zi * zi - zi) * c,
        _ => unreachable!(),
    }
}

/// Ascending series `j_n(z) = z^n/(2n+1)!! sum_k (-z^2/2)^k / (k! prod)`,
/// terminated once terms fall below 1e-17 of the running sum (four to six
/// terms at `|z| = 1e-2`, still fast at the larger order-2/3 thresholds).
fn j_series(n: i32, z: Complex64) -> Complex64 {
    debug_assert!(n >= 0);
    let mut lead = Complex64::new(1.0, 0.0);
    let mut dfact = 1.0;
    for k in 0..n {
        lead *= z;
        dfact *= (2 * k + 3) as f64;
    }
    let q = -0.5 * z * z;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for k in 1..30 {
        term = term * q / ((k * (2 * n + 2 * k + 1)) as f64);
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    lead / dfact * sum
}

/// `h_n^(1)` closed form: `e^{iz}/z` times a polynomial in `1/z`.
/// Supports the internal order -1 (`e^{iz}/z`).
fn h1_closed(n: i32, z: Complex64) -> Complex64 {
    let e = (Complex64::i() * z).exp() / z;
    e * h1_poly(n, 1.0 / z)
}

/// The polynomial factor of `h_n^(1)(z) = (e^{iz}/z) P_n(1/z)`.
fn h1_poly(n: i32, zi: Complex64) -> Complex64 {
    let i = Complex64::i();
    match n {
        -1 => Complex64::new(1.0, 0.0),
        0 => -i,
        1 => -(1.0 + i * zi),
        2 => i + zi * (-3.0 + zi * Complex64::new(0.0, -3.0)),
        3 => 1.0 + zi * (6.0 * i + zi * (-15.0 + zi * Complex64::new(0.0, -15.0))),
        _ => unreachable!(),
    }
}

/// Mirror of [`h1_poly`] for `h_n^(2)(z) = (e^{-iz}/z) conj-pattern(1/z)`:
/// every explicit `i` flips sign.
fn h2_poly(n: i32, zi: Complex64) -> Complex64 {
    let i = Complex64::i();
    match n {
        -1 => Complex64::new(1.0, 0.0),
        0 => i,
        1 => -(1.0 - i * zi),
        2 => -i + zi * (-3.0 + zi * Complex64::new(0.0, 3.0)),
        3 => 1.0 + zi * (-6.0 * i + zi * (-15.0 + zi * Complex64::new(0.0, 15.0))),
        _ => unreachable!(),
    }
}

// ---------------------------------------------------------------------------
// Exponent-scaled arithmetic
// ---------------------------------------------------------------------------

/// A complex number `m * exp(e)` with `|m| = 1` (or `m = 0`), keeping the
/// magnitude in a separate natural-log exponent so that products and
/// quotients of exponentially large and small factors never leave f64 range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    pub mantissa: Complex64,
    pub exponent: f64,
}

impl Scaled {
    pub const ZERO: Scaled = Scaled {
        mantissa: Complex64::new(0.0, 0.0),
        exponent: 0.0,
    };

    pub fn new(mantissa: Complex64, exponent: f64) -> Self {
        Self { mantissa, exponent }.normalized()
    }

    pub fn from_c(value: Complex64) -> Self {
        Self::new(value, 0.0)
    }

    fn normalized(self) -> Self {
        let a = self.mantissa.norm();
        if a == 0.0 {
            Scaled::ZERO
        } else {
            Scaled {
                mantissa: self.mantissa / a,
                exponent: self.exponent + a.ln(),
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa == Complex64::new(0.0, 0.0)
    }

    /// Collapse to a plain complex number; saturates to 0 or infinity when
    /// the exponent leaves f64 range.
    pub fn to_c(self) -> Complex64 {
        if self.is_zero() {
            Complex64::new(0.0, 0.0)
        } else {
            self.mantissa * self.exponent.exp()
        }
    }

    pub fn mul(self, rhs: Scaled) -> Scaled {
        Scaled {
            mantissa: self.mantissa * rhs.mantissa,
            exponent: self.exponent + rhs.exponent,
        }
        .normalized()
    }

    pub fn div(self, rhs: Scaled) -> Scaled {
        Scaled {
            mantissa: self.mantissa / rhs.mantissa,
            exponent: self.exponent - rhs.exponent,
        }
        .normalized()
    }

    pub fn add(self, rhs: Scaled) -> Scaled {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (hi, lo) = if self.exponent >= rhs.exponent {
            (self, rhs)
        } else {
            (rhs, self)
        };
        // exp argument <= 0; underflow of the small term is the right answer
        let m = hi.mantissa + lo.mantissa * (lo.exponent - hi.exponent).exp();
        Scaled {
            mantissa: m,
            exponent: hi.exponent,
        }
        .normalized()
    }

    pub fn sub(self, rhs: Scaled) -> Scaled {
        self.add(rhs.neg())
    }

    pub fn neg(self) -> Scaled {
        Scaled {
            mantissa: -self.mantissa,
            exponent: self.exponent,
        }
    }

    pub fn scale(self, factor: Complex64) -> Scaled {
        Scaled {
            mantissa: self.mantissa * factor,
            exponent: self.exponent,
        }
        .normalized()
    }
}

/// `e^{iz}` with the magnitude `e^{-Im z}` kept in the exponent.
fn exp_iz_scaled(z: Complex64) -> Scaled {
    Scaled {
        mantissa: Complex64::from_polar(1.0, z.re),
        exponent: -z.im,
    }
}

/// `|Im z|` above which the scaled `j_n` switches from the trig closed form
/// to the Hankel-pair combination. At this size the pair members differ by
/// `e^{2 * 30}` and their sum has no cancellation.
const J_SPLIT: f64 = 30.0;

/// Exponent-scaled `j_n(z)`, orders -1..=3.
pub fn j_scaled(n: i32, z: Complex64) -> Scaled {
    debug_assert!((-1..=3).contains(&n));
    if z.im.abs() <= J_SPLIT {
        Scaled::from_c(j_closed(n, z))
    } else {
        let zi = 1.0 / z;
        let p = exp_iz_scaled(z).scale(h1_poly(n, zi) * zi);
        let m = exp_iz_scaled(-z).scale(h2_poly(n, zi) * zi);
        p.add(m).scale(Complex64::new(0.5, 0.0))
    }
}

/// Exponent-scaled `h_n^(1)(z)`, orders -1..=3.
pub fn h1_scaled(n: i32, z: Complex64) -> Scaled {
    debug_assert!((-1..=3).contains(&n));
    exp_iz_scaled(z).scale(h1_poly(n, 1.0 / z) / z)
}

/// Exponent-scaled Riccati derivative `z_{n-1}(z) - n z_n(z)/z`,
/// orders 0..=3.
pub fn riccati_scaled(n: i32, kind: BesselKind, z: Complex64) -> Scaled {
    debug_assert!((0..=3).contains(&n));
    let nf = Complex64::new(n as f64, 0.0);
    match kind {
        BesselKind::First => j_scaled(n - 1, z).sub(j_scaled(n, z).scale(nf / z)),
        BesselKind::Hankel => h1_scaled(n - 1, z).sub(h1_scaled(n, z).scale(nf / z)),
    }
}
