//! Memory kernel of the upper-state amplitude, the Volterra equation of the
//! second kind that propagates it, and the Markov and single-resonance
//! analytic models.
//!
//! The running kernel is
//!
//! ```text
//! K(tau) = -A0/2 + (A0/2pi) Int_window dw (w/w_A) Re C33_N(w) phi(w - w_A, tau),
//! phi(D, tau) = (exp(-i D tau) - 1)/(i D) = -tau exp(-i D tau/2) sinc(D tau/2)
//! ```
//!
//! The `-A0/2` constant is the Markov-treated vacuum part; everything else
//! comes through the reflected Green function at the center, i.e. through
//! `Re C33_N`.
//!
//! Tabulation strategy: the frequency weight `w(omega)` is sampled once on
//! an adaptive grid (panels refined to a local relative tolerance, with
//! forced refinement across every resonance line in the window), and each
//! panel is then integrated against the oscillatory factor in closed form.
//! Writing `phi(D, tau) = -Int_0^tau exp(-i D t') dt'` reduces the kernel
//! to the running time integral of the window Fourier transform of `w`,
//! which is accumulated exactly per panel with phase recursion along the
//! tau grid. Cost is O(panels * steps) with no tau-dependent refinement,
//! so the tabulation stays cheap even at `tau ~ 1e6`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result, Warning};
use crate::green::{abar, CavityGeometry};
use crate::medium::LorentzMedium;
use crate::resonances::{
    find_resonances_lenient, scan_points_for, ResonanceLine, DEFAULT_STRICTNESS,
};

const TWO_PI: f64 = 2.0 * core::f64::consts::PI;

/// Two-level atom at the cavity center with a z-oriented dipole.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomConfig {
    /// Transition frequency, units of `omega_t`.
    pub omega_a: f64,
    /// Free-space decay rate `A0`, units of `omega_t`.
    pub a0: f64,
}

impl AtomConfig {
    pub fn new(omega_a: f64, a0: f64) -> Result<Self> {
        if !(omega_a > 0.0) || !(a0 > 0.0) {
            return Err(Error::Domain("atom requires omega_a > 0 and a0 > 0"));
        }
        Ok(Self { omega_a, a0 })
    }

    /// From the normalized rate `a0_hat = A0 lambda_t / (2 c)`, the
    /// parameterization used for decay traces: `A0 = a0_hat omega_t / pi`.
    pub fn from_hat(omega_a: f64, a0_hat: f64) -> Result<Self> {
        Self::new(omega_a, a0_hat / core::f64::consts::PI)
    }
}

/// Numeric controls of the kernel quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelOptions {
    /// Local relative tolerance of the adaptive frequency grid.
    pub quadrature_tol: f64,
    /// Replace the `omega/omega_a` prefactor of the spectral weight by 1
    /// (sensitivity studies only).
    pub prefactor_flat: bool,
}

impl Default for KernelOptions {
    fn default() -> Self {
        Self {
            quadrature_tol: 1e-4,
            prefactor_flat: false,
        }
    }
}

/// Tabulated running kernel on a uniform tau grid.
#[derive(Debug, Clone)]
pub struct KernelTable {
    pub atom: AtomConfig,
    /// Grid spacing; `values[j]` is the kernel at `tau = j * dtau`.
    pub dtau: f64,
    pub values: Vec<Complex64>,
    /// Frequency window of the spectral integral.
    pub window: (f64, f64),
    pub quadrature_tol: f64,
    pub warnings: Vec<Warning>,
}

impl KernelTable {
    pub fn tau_max(&self) -> f64 {
        (self.values.len() - 1) as f64 * self.dtau
    }
}

/// Upper-state amplitude trace on a uniform time grid.
#[derive(Debug, Clone)]
pub struct DecayTrace {
    /// Grid spacing; `cu[j]` is the amplitude at `t = j * dt`.
    pub dt: f64,
    pub cu: Vec<Complex64>,
    pub warnings: Vec<Warning>,
}

impl DecayTrace {
    /// Upper-state populations `|C_u|^2`.
    pub fn populations(&self) -> Vec<f64> {
        self.cu.iter().map(|c| c.norm_sqr()).collect()
    }

    pub fn time(&self, j: usize) -> f64 {
        j as f64 * self.dt
    }
}

/// Spec-default window, step, and horizon for a kernel run, derived from
/// the resonance line nearest to the atomic frequency.
#[derive(Debug, Clone)]
pub struct KernelPlan {
    pub window: (f64, f64),
    pub dt: f64,
    pub t_max: f64,
    /// Lines found within the search reach around `omega_a`.
    pub lines: Vec<ResonanceLine>,
}

/// Compute the default kernel window `omega_a +- max(0.05, 300 hwhm)`
/// (clamped to `(1e-6, 5)`), the step `dt = min(0.1/halfwidth,
/// 0.02 * 2pi/Omega)`, and the horizon `t_max = 5/max(hwhm, A0 abar/2)`.
pub fn kernel_plan(
    atom: &AtomConfig,
    geometry: &CavityGeometry,
    medium: &LorentzMedium,
) -> Result<KernelPlan> {
    let reach = (
        (atom.omega_a - 0.25).max(1e-6),
        (atom.omega_a + 0.25).min(5.0),
    );
    let scan = find_resonances_lenient(
        reach,
        geometry,
        medium,
        scan_points_for(reach),
        atom.a0,
        DEFAULT_STRICTNESS,
    )?;
    let nearest = scan.lines.iter().min_by(|a, b| {
        (a.omega_m - atom.omega_a)
            .abs()
            .partial_cmp(&(b.omega_m - atom.omega_a).abs())
            .unwrap()
    });
    let halfwidth = match nearest {
        Some(line) => (300.0 * line.hwhm).max(0.05),
        None => 0.05,
    };
    let window = (
        (atom.omega_a - halfwidth).max(1e-6),
        (atom.omega_a + halfwidth).min(5.0),
    );
    let mut dt = 0.1 / halfwidth;
    if let Some(line) = nearest {
        if line.rabi > 0.0 {
            dt = dt.min(0.02 * TWO_PI / line.rabi);
        }
    }
    let abar_a = abar(atom.omega_a, geometry, medium)?;
    let markov_rate = 0.5 * atom.a0 * abar_a.max(0.0);
    let floor = nearest.map_or(0.0, |l| l.hwhm).max(markov_rate).max(1e-300);
    Ok(KernelPlan {
        window,
        dt,
        t_max: 5.0 / floor,
        lines: scan.lines,
    })
}

// ---------------------------------------------------------------------------
// Adaptive frequency grid of the spectral weight
// ---------------------------------------------------------------------------

/// `w(omega) = (omega/omega_a) Re C33_N(omega)` sampled on an adaptive grid
/// that resolves every resonance line in the window.
#[derive(Debug, Clone)]
pub(crate) struct WeightGrid {
    pub omega_a: f64,
    /// Ascending frequencies; the atomic frequency is always a node.
    pub nodes: Vec<f64>,
    pub values: Vec<f64>,
}

const REFINE_DEPTH: u32 = 46;

impl WeightGrid {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn build(
        omega_a: f64,
        geometry: &CavityGeometry,
        medium: &LorentzMedium,
        window: (f64, f64),
        quadrature_tol: f64,
        prefactor_flat: bool,
        lines: &[ResonanceLine],
        unmeasured: &[f64],
    ) -> Result<Self> {
        let (lo, hi) = window;
        if !(lo > 0.0 && lo < omega_a && omega_a < hi) {
            return Err(Error::Domain("kernel window must strictly contain omega_a"));
        }
        let weight = |w: f64| -> Result<f64> {
            let factor = if prefactor_flat { 1.0 } else { w / omega_a };
            Ok(factor * (abar(w, geometry, medium)? - 1.0))
        };

        let mut seeds = vec![lo, hi, omega_a];
        for line in lines {
            if line.omega_m <= lo || line.omega_m >= hi {
                continue;
            }
            let mut m = 0.5;
            seeds.push(line.omega_m);
            while m <= 512.0 {
                for s in [-1.0, 1.0] {
                    let x = line.omega_m + s * m * line.hwhm;
                    if x > lo && x < hi {
                        seeds.push(x);
                    }
                }
                m *= 2.0;
            }
        }
        // lines of unknown width: geometric seed ladder so the adaptive
        // refinement locks onto the structure whatever its scale
        for &omega_m in unmeasured {
            seeds.push(omega_m);
            let mut w = 1e-7;
            while w <= 1e-2 {
                for s in [-1.0, 1.0] {
                    let x = omega_m + s * w;
                    if x > lo && x < hi {
                        seeds.push(x);
                    }
                }
                w *= 3.0;
            }
        }
        seeds.sort_by(|a, b| a.partial_cmp(b).unwrap());
        seeds.dedup_by(|a, b| (*a - *b).abs() < 1e-13);

        let seed_values: Vec<f64> = {
            let mut v = Vec::with_capacity(seeds.len());
            for &s in &seeds {
                v.push(weight(s)?);
            }
            v
        };
        let floor = 1e-3
            * seed_values
                .iter()
                .fold(0.0f64, |acc, v| acc.max(v.abs()))
                .max(1e-30);

        let mut nodes = Vec::new();
        let mut values = Vec::new();
        nodes.push(seeds[0]);
        values.push(seed_values[0]);
        for i in 0..seeds.len() - 1 {
            refine_panel(
                &weight,
                seeds[i],
                seed_values[i],
                seeds[i + 1],
                seed_values[i + 1],
                quadrature_tol,
                floor,
                REFINE_DEPTH,
                &mut nodes,
                &mut values,
            )?;
            nodes.push(seeds[i + 1]);
            values.push(seed_values[i + 1]);
        }
        Ok(Self {
            omega_a,
            nodes,
            values,
        })
    }

    /// Window Fourier transform `W(tau) = Int w(omega) e^{-i(omega -
    /// omega_a) tau} domega`, each panel integrated in closed form.
    #[cfg_attr(not(test), allow(dead_code))]
    pub(crate) fn fourier_at(&self, tau: f64) -> Complex64 {
        let mut sum = Complex64::new(0.0, 0.0);
        for i in 0..self.nodes.len() - 1 {
            let h = self.nodes[i + 1] - self.nodes[i];
            let da = self.nodes[i] - self.omega_a;
            let ua = Complex64::from_polar(1.0, -da * tau);
            let theta = h * tau;
            let e = Complex64::from_polar(1.0, -theta);
            sum += panel_integral(self.values[i], self.values[i + 1], h, ua, e, theta);
        }
        sum
    }
}

#[allow(clippy::too_many_arguments)]
fn refine_panel<F>(
    weight: &F,
    a: f64,
    wa: f64,
    b: f64,
    wb: f64,
    tol: f64,
    floor: f64,
    depth: u32,
    nodes: &mut Vec<f64>,
    values: &mut Vec<f64>,
) -> Result<()>
where
    F: Fn(f64) -> Result<f64>,
{
    let mid = 0.5 * (a + b);
    if depth == 0 || b - a < 1e-12 {
        return Ok(());
    }
    let wm = weight(mid)?;
    if (wm - 0.5 * (wa + wb)).abs() <= tol * (wm.abs() + floor) {
        return Ok(());
    }
    refine_panel(weight, a, wa, mid, wm, tol, floor, depth - 1, nodes, values)?;
    nodes.push(mid);
    values.push(wm);
    refine_panel(weight, mid, wm, b, wb, tol, floor, depth - 1, nodes, values)
}

/// Exact integral of the linear interpolant times `e^{-i(omega-omega_a)tau}`
/// over one panel: `h * ua * [wa (mu0 - mu1) + wb mu1]` with
/// `mu0 = (1 - E)/(i theta)`, `mu1 = (mu0 - E)/(i theta)`, `E = e^{-i theta}`,
/// `theta = h tau`.
#[inline]
fn panel_integral(wa: f64, wb: f64, h: f64, ua: Complex64, e: Complex64, theta: f64) -> Complex64 {
    let (mu0, mu1) = if theta.abs() < 1e-3 {
        let it = Complex64::new(0.0, -theta);
        let mu0 = 1.0 + it * (0.5 + it * (1.0 / 6.0 + it / 24.0));
        let mu1 = 0.5 + it * (1.0 / 3.0 + it * (0.125 + it / 30.0));
        (mu0, mu1)
    } else {
        let it = Complex64::new(0.0, theta);
        let mu0 = (1.0 - e) / it;
        let mu1 = (mu0 - e) / it;
        (mu0, mu1)
    };
    h * ua * (wa * (mu0 - mu1) + wb * mu1)
}

/// The regular part of `phi`: `phi(delta, tau) = -tau mu0(delta tau)` in
/// the stable product form `mu0(theta) = e^{-i theta/2} sinc(theta/2)`.
pub fn phi(delta: f64, tau: f64) -> Complex64 {
    let x = 0.5 * delta * tau;
    let sinc = if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    };
    -tau * sinc * Complex64::from_polar(1.0, -x)
}

// ---------------------------------------------------------------------------
// Kernel tabulation and the Volterra march
// ---------------------------------------------------------------------------

fn window_lines(
    atom: &AtomConfig,
    geometry: &CavityGeometry,
    medium: &LorentzMedium,
    window: (f64, f64),
) -> Result<(Vec<ResonanceLine>, Vec<f64>, Vec<Warning>)> {
    let (lo, hi) = window;
    // Search beyond the window so that lines excluded by a narrow window
    // but still within ten half-widths of the atom are seen and warned
    // about.
    let inflate = 0.25 * (hi - lo);
    let reach = (
        (lo - inflate).min(atom.omega_a - 0.02).max(1e-6),
        (hi + inflate).max(atom.omega_a + 0.02).min(5.0),
    );
    let scan = find_resonances_lenient(
        reach,
        geometry,
        medium,
        scan_points_for(reach),
        atom.a0,
        DEFAULT_STRICTNESS,
    )?;
    let mut warnings = scan.warnings;
    let mut inside = Vec::new();
    for line in scan.lines {
        if line.omega_m > lo && line.omega_m < hi {
            inside.push(line);
        } else if (line.omega_m - atom.omega_a).abs() <= 10.0 * line.hwhm {
            warnings.push(Warning::WindowExcludesLine {
                omega_m: line.omega_m,
            });
        }
    }
    let mut unmeasured = Vec::new();
    for omega_m in scan.skipped {
        if omega_m > lo && omega_m < hi {
            warnings.push(Warning::UnmeasuredLine { omega_m });
            unmeasured.push(omega_m);
        }
    }
    // candidates the scan could not isolate still get generic grid seeds
    for w in &warnings {
        if let Warning::GridTooCoarse { omega_m } = w {
            if *omega_m > lo && *omega_m < hi {
                unmeasured.push(*omega_m);
            }
        }
    }
    Ok((inside, unmeasured, warnings))
}

/// Tabulate the running kernel on `tau = 0, dtau, ..., >= tau_max`.
///
/// `window` must contain the atomic frequency; `dtau` must resolve the
/// window half-width (`dtau <= 1/(4 hw)`). The tabulated value at zero is
/// exactly `-A0/2`.
pub fn tabulate_kernel(
    atom: &AtomConfig,
    geometry: &CavityGeometry,
    medium: &LorentzMedium,
    tau_max: f64,
    dtau: f64,
    window: (f64, f64),
    options: KernelOptions,
) -> Result<KernelTable> {
    let (lo, hi) = window;
    if !(lo > 0.0 && lo < atom.omega_a && atom.omega_a < hi) {
        return Err(Error::Domain("kernel window must strictly contain omega_a"));
    }
    if !(dtau > 0.0) || !(tau_max >= dtau) {
        return Err(Error::StepSize("need 0 < dtau <= tau_max"));
    }
    let halfwidth = (atom.omega_a - lo).max(hi - atom.omega_a);
    if dtau > 1.0 / (4.0 * halfwidth) * (1.0 + 1e-12) {
        return Err(Error::StepSize("dtau too coarse for the window bandwidth"));
    }

    let (lines, unmeasured, warnings) = window_lines(atom, geometry, medium, window)?;
    let grid = WeightGrid::build(
        atom.omega_a,
        geometry,
        medium,
        window,
        options.quadrature_tol,
        options.prefactor_flat,
        &lines,
        &unmeasured,
    )?;

    let steps = (tau_max / dtau).ceil() as usize;
    let panels = grid.nodes.len() - 1;
    // Phase state per node, advanced by one fixed rotation per step.
    let mut u: Vec<Complex64> = vec![Complex64::new(1.0, 0.0); panels + 1];
    let rot: Vec<Complex64> = grid
        .nodes
        .iter()
        .map(|&x| Complex64::from_polar(1.0, -(x - atom.omega_a) * dtau))
        .collect();

    let scale = atom.a0 / TWO_PI;
    let mut values = Vec::with_capacity(steps + 1);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut prev = Complex64::new(0.0, 0.0);
    for j in 0..=steps {
        let tau = j as f64 * dtau;
        let mut ft = Complex64::new(0.0, 0.0);
        for i in 0..panels {
            let h = grid.nodes[i + 1] - grid.nodes[i];
            let e = u[i + 1] * u[i].conj();
            ft += panel_integral(grid.values[i], grid.values[i + 1], h, u[i], e, h * tau);
        }
        if j > 0 {
            acc += 0.5 * (prev + ft) * dtau;
        }
        prev = ft;
        values.push(Complex64::new(-0.5 * atom.a0, 0.0) - scale * acc);
        for (ui, ri) in u.iter_mut().zip(rot.iter()) {
            *ui *= ri;
        }
        if j % 8192 == 8191 {
            for ui in u.iter_mut() {
                *ui /= ui.norm();
            }
        }
    }

    Ok(KernelTable {
        atom: *atom,
        dtau,
        values,
        window,
        quadrature_tol: options.quadrature_tol,
        warnings,
    })
}

/// March the Volterra equation `C(t) = 1 + Int_0^t K(t - t') C(t') dt'`
/// with the trapezoidal rule, solving the implicit diagonal term at each
/// step. `dt` must equal the kernel grid spacing and `t_max` stay within
/// the tabulated horizon.
pub fn volterra_solve(kernel: &KernelTable, t_max: f64, dt: f64) -> Result<DecayTrace> {
    if ((dt - kernel.dtau) / kernel.dtau).abs() > 1e-9 {
        return Err(Error::Domain(
            "volterra step must equal the kernel grid step",
        ));
    }
    let steps = (t_max / dt + 1e-9).floor() as usize;
    if steps + 1 > kernel.values.len() {
        return Err(Error::Domain("t_max exceeds the tabulated kernel horizon"));
    }
    let k0 = kernel.values[0];
    let denom = Complex64::new(1.0, 0.0) - 0.5 * dt * k0;
    if denom.norm() < 1e-8 {
        return Err(Error::StepSize("implicit diagonal term is singular"));
    }

    let kr: Vec<f64> = kernel.values[..=steps].iter().map(|k| k.re).collect();
    let ki: Vec<f64> = kernel.values[..=steps].iter().map(|k| k.im).collect();
    let mut cr = Vec::with_capacity(steps + 1);
    let mut ci = Vec::with_capacity(steps + 1);
    cr.push(1.0f64);
    ci.push(0.0f64);
    for j in 1..=steps {
        // half-weight boundary term at t' = 0 (C = 1)
        let mut sr = 0.5 * kr[j];
        let mut si = 0.5 * ki[j];
        for i in 1..j {
            let (a, b) = (kr[j - i], ki[j - i]);
            let (x, y) = (cr[i], ci[i]);
            sr += a * x - b * y;
            si += a * y + b * x;
        }
        let rhs = Complex64::new(1.0 + dt * sr, dt * si);
        let c = rhs / denom;
        cr.push(c.re);
        ci.push(c.im);
    }

    let cu: Vec<Complex64> = cr
        .iter()
        .zip(ci.iter())
        .map(|(&x, &y)| Complex64::new(x, y))
        .collect();
    let max_pop = cu.iter().fold(0.0f64, |m, c| m.max(c.norm_sqr()));
    let mut warnings = Vec::new();
    if max_pop > 1.0 + 1e-3 {
        warnings.push(Warning::PopulationBound { max: max_pop });
    }
    Ok(DecayTrace { dt, cu, warnings })
}

// ---------------------------------------------------------------------------
// Markov model
// ---------------------------------------------------------------------------

/// Cavity-modified decay rate `A = abar(omega_a) A0` and line shift
/// `delta_omega` for the Markov amplitude; the shift comes from
/// [`lamb_shift`] over the given window.
pub fn markov_parameters(
    atom: &AtomConfig,
    geometry: &CavityGeometry,
    medium: &LorentzMedium,
    window: (f64, f64),
    options: KernelOptions,
) -> Result<(f64, f64)> {
    let rate = abar(atom.omega_a, geometry, medium)? * atom.a0;
    let shift = lamb_shift(atom, geometry, medium, window, options)?;
    Ok((rate, shift))
}

/// Markov upper-state amplitude `exp[-(A - i delta_omega) t / 2]` from
/// precomputed rate and shift.
pub fn markov_amplitude_with(rate: f64, shift: f64, t: f64) -> Complex64 {
    (Complex64::new(-0.5 * rate, 0.5 * shift) * t).exp()
}

/// Markov upper-state amplitude at time `t`, using the default kernel
/// window. Recomputes rate and shift on every call; for sweeps use
/// [`markov_parameters`] plus [`markov_amplitude_with`].
pub fn markov_amplitude(
    atom: &AtomConfig,
    geometry: &CavityGeometry,
    medium: &LorentzMedium,
    t: f64,
) -> Result<Complex64> {
    let plan = kernel_plan(atom, geometry, medium)?;
    let (rate, shift) = markov_parameters(
        atom,
        geometry,
        medium,
        plan.window,
        KernelOptions::default(),
    )?;
    Ok(markov_amplitude_with(rate, shift, t))
}

/// Lamb shift restricted to the reflected Green function:
/// `(A0/pi) PV Int_window dw (w/w_A) Re C33_N(w)/(w - w_A)`, computed by
/// singularity subtraction on the adaptive weight grid plus the exact
/// logarithmic end correction.
pub fn lamb_shift(
    atom: &AtomConfig,
    geometry: &CavityGeometry,
    medium: &LorentzMedium,
    window: (f64, f64),
    options: KernelOptions,
) -> Result<f64> {
    let (lo, hi) = window;
    let margin = 1e-9 * (hi - lo);
    if !(lo > 0.0) || atom.omega_a - lo < margin || hi - atom.omega_a < margin {
        return Err(Error::Domain("omega_a must lie strictly inside the window"));
    }
    let (lines, unmeasured, _) = window_lines(atom, geometry, medium, window)?;
    let grid = WeightGrid::build(
        atom.omega_a,
        geometry,
        medium,
        window,
        options.quadrature_tol,
        options.prefactor_flat,
        &lines,
        &unmeasured,
    )?;
    Ok(lamb_from_grid(&grid, window, atom.a0))
}

fn lamb_from_grid(grid: &WeightGrid, window: (f64, f64), a0: f64) -> f64 {
    let wa_idx = grid
        .nodes
        .iter()
        .position(|&x| (x - grid.omega_a).abs() < 1e-13)
        .expect("omega_a is always a grid node");
    let fa = grid.values[wa_idx];
    let mut total = 0.0;
    for i in 0..grid.nodes.len() - 1 {
        let d1 = grid.nodes[i] - grid.omega_a;
        let d2 = grid.nodes[i + 1] - grid.omega_a;
        let (f1, f2) = (grid.values[i], grid.values[i + 1]);
        let h = d2 - d1;
        let s = (f2 - f1) / h;
        if i == wa_idx || i + 1 == wa_idx {
            // interval touching the singular node: the subtracted linear
            // interpolant reduces to the slope contribution
            total += s * h;
        } else {
            total += (f1 - fa - s * d1) * (d2 / d1).ln() + s * h;
        }
    }
    total += fa * ((window.1 - grid.omega_a) / (grid.omega_a - window.0)).ln();
    a0 / core::f64::consts::PI * total
}

// ---------------------------------------------------------------------------
// Single-resonance model
// ---------------------------------------------------------------------------

/// Differential kernel of the single-line approximation:
/// `K(tau) = -(A0/2) abar_peak hwhm e^{-i(omega_m - omega_a) tau - hwhm |tau|}`.
pub fn single_resonance_kernel(line: &ResonanceLine, atom: &AtomConfig, tau: f64) -> Complex64 {
    let amp = -0.5 * atom.a0 * line.abar_peak * line.hwhm;
    let phase = -(line.omega_m - atom.omega_a) * tau;
    amp * (-line.hwhm * tau.abs()).exp() * Complex64::from_polar(1.0, phase)
}

/// Closed-form damped-oscillator amplitude of the single-line model:
/// roots `s_pm = [-(i D + hwhm) +- sqrt((i D + hwhm)^2 - Omega^2)]/2` with
/// `D = omega_m - omega_a`, initial conditions `C(0) = 1`, `C'(0) = 0`.
pub fn single_resonance_amplitude(line: &ResonanceLine, atom: &AtomConfig, t: f64) -> Complex64 {
    let omega = crate::resonances::rabi_frequency(line.abar_peak, line.hwhm, atom.a0);
    let p = Complex64::new(line.hwhm, line.omega_m - atom.omega_a);
    let disc = (p * p - omega * omega).sqrt();
    let s_plus = 0.5 * (-p + disc);
    let s_minus = 0.5 * (-p - disc);
    let split = (s_plus - s_minus).norm();
    if split < 1e-12 * s_plus.norm().max(s_minus.norm()) || split == 0.0 {
        let s = -0.5 * p;
        (1.0 - s * t) * (s * t).exp()
    } else {
        (s_plus * (s_minus * t).exp() - s_minus * (s_plus * t).exp()) / (s_plus - s_minus)
    }
}

/// Least-squares time shift aligning a model population curve with an
/// exact trace: minimizes `sum_j (model(t_j - shift) - exact_j)^2` over
/// `shift` in `[0, shift_max]` (the model is frozen at its initial value
/// for `t < shift`). Returns the fitted shift and the maximum absolute
/// deviation at that shift.
pub fn fit_time_shift<F>(exact: &[f64], dt: f64, model: F, shift_max: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let sse = |shift: f64| -> f64 {
        exact
            .iter()
            .enumerate()
            .map(|(j, &p)| {
                let m = model((j as f64 * dt - shift).max(0.0));
                (m - p) * (m - p)
            })
            .sum()
    };
    let coarse = 128usize;
    let mut best_k = 0usize;
    let mut best = f64::INFINITY;
    for k in 0..=coarse {
        let s = shift_max * k as f64 / coarse as f64;
        let v = sse(s);
        if v < best {
            best = v;
            best_k = k;
        }
    }
    let mut a = shift_max * best_k.saturating_sub(1) as f64 / coarse as f64;
    let mut b = shift_max * (best_k + 1).min(coarse) as f64 / coarse as f64;
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (sse(c), sse(d));
    for _ in 0..70 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = sse(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = sse(d);
        }
    }
    let shift = 0.5 * (a + b);
    let max_dev = exact
        .iter()
        .enumerate()
        .map(|(j, &p)| (model((j as f64 * dt - shift).max(0.0)) - p).abs())
        .fold(0.0f64, f64::max);
    (shift, max_dev)
}
