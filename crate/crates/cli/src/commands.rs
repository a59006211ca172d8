//! Subcommand implementations: each produces one CSV stream.

use cavity_core::dynamics::{
    kernel_plan, markov_amplitude_with, markov_parameters, tabulate_kernel, volterra_solve,
    KernelOptions,
};
use cavity_core::green::abar;
use cavity_core::observables::{
    emission_pattern_freespace, emission_pattern_markov, energy_ratio, spectrum_markov_with,
    FieldPoint, SpectrumRequest,
};
use cavity_core::resonances::{find_resonances, solve_radius_for_resonance};
use cavity_core::{Warning, LAMBDA_T};

use crate::config::RunConfig;

pub enum CmdError {
    Config(String),
    Numeric(cavity_core::Error),
}

impl From<cavity_core::Error> for CmdError {
    fn from(e: cavity_core::Error) -> Self {
        CmdError::Numeric(e)
    }
}

pub struct CommandOutput {
    pub csv: String,
    pub warnings: Vec<Warning>,
}

/// 12 significant digits, `.` decimal separator.
fn sig(x: f64) -> String {
    format!("{:.11e}", x)
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let step = (hi - lo) / (n - 1) as f64;
    (0..n).map(move |i| if i == n - 1 { hi } else { lo + i as f64 * step })
}

pub const SUBCOMMANDS: &[&str] = &[
    "epsilon",
    "abar",
    "resonances",
    "decay",
    "markov",
    "spectrum",
    "pattern",
    "energy",
    "solve-radius",
];

pub fn run(name: &str, cfg: &RunConfig) -> Result<CommandOutput, CmdError> {
    match name {
        "epsilon" => epsilon(cfg),
        "abar" => abar_sweep(cfg),
        "resonances" => resonances(cfg),
        "decay" => decay(cfg),
        "markov" => markov(cfg),
        "spectrum" => spectrum(cfg),
        "pattern" => pattern(cfg),
        "energy" => energy(cfg),
        "solve-radius" => solve_radius(cfg),
        _ => Err(CmdError::Config(format!(
            "unknown subcommand `{name}`; expected one of: {}",
            SUBCOMMANDS.join(", ")
        ))),
    }
}

fn kernel_options(cfg: &RunConfig) -> KernelOptions {
    KernelOptions {
        quadrature_tol: cfg.quadrature_tol,
        prefactor_flat: cfg.prefactor_flat,
    }
}

fn epsilon(cfg: &RunConfig) -> Result<CommandOutput, CmdError> {
    let med = cfg.medium().map_err(CmdError::Config)?;
    let mut csv = String::from("omega,eps_re,eps_im,n_re,n_im\n");
    for w in linspace(cfg.scan_min, cfg.scan_max, cfg.scan_count()) {
        let eps = med.permittivity(w)?;
        let n = med.refractive_index(w)?;
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            sig(w),
            sig(eps.re),
            sig(eps.im),
            sig(n.re),
            sig(n.im)
        ));
    }
    Ok(CommandOutput {
        csv,
        warnings: Vec::new(),
    })
}

fn abar_sweep(cfg: &RunConfig) -> Result<CommandOutput, CmdError> {
    let med = cfg.medium().map_err(CmdError::Config)?;
    let geom = cfg.geometry().map_err(CmdError::Config)?;
    let mut csv = String::from("omega,abar\n");
    for w in linspace(cfg.scan_min, cfg.scan_max, cfg.scan_count()) {
        csv.push_str(&format!("{},{}\n", sig(w), sig(abar(w, &geom, &med)?)));
    }
    Ok(CommandOutput {
        csv,
        warnings: Vec::new(),
    })
}

fn resonances(cfg: &RunConfig) -> Result<CommandOutput, CmdError> {
    let med = cfg.medium().map_err(CmdError::Config)?;
    let geom = cfg.geometry().map_err(CmdError::Config)?;
    let atom = cfg.atom().map_err(CmdError::Config)?;
    let scan = find_resonances(
        (cfg.scan_min, cfg.scan_max),
        &geom,
        &med,
        cfg.scan_count().max(1000),
        atom.a0,
        cfg.strictness,
    )?;
    let mut csv = String::from("omega_m,abar_peak,hwhm,rabi,in_gap,strong\n");
    for line in &scan.lines {
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            sig(line.omega_m),
            sig(line.abar_peak),
            sig(line.hwhm),
            sig(line.rabi),
            u8::from(line.in_gap),
            u8::from(line.strong_coupling)
        ));
    }
    Ok(CommandOutput {
        csv,
        warnings: scan.warnings,
    })
}

/// Window, step, and horizon: explicit values override the plan defaults.
struct Schedule {
    window: (f64, f64),
    dt: f64,
    t_max: f64,
}

fn schedule(cfg: &RunConfig) -> Result<Schedule, CmdError> {
    let med = cfg.medium().map_err(CmdError::Config)?;
    let geom = cfg.geometry().map_err(CmdError::Config)?;
    let atom = cfg.atom().map_err(CmdError::Config)?;
    let plan = kernel_plan(&atom, &geom, &med)?;
    let window = if cfg.window_halfwidth > 0.0 {
        (
            (atom.omega_a - cfg.window_halfwidth).max(1e-6),
            (atom.omega_a + cfg.window_halfwidth).min(5.0),
        )
    } else {
        plan.window
    };
    let mut dt = if cfg.dtau > 0.0 {
        cfg.dtau
    } else {
        // step rule for the effective bandwidth: resolve the window and
        // the Rabi period of the nearest line
        let halfwidth = (atom.omega_a - window.0).max(window.1 - atom.omega_a);
        let mut dt = 0.1 / halfwidth;
        let nearest = plan.lines.iter().min_by(|a, b| {
            (a.omega_m - atom.omega_a)
                .abs()
                .partial_cmp(&(b.omega_m - atom.omega_a).abs())
                .unwrap()
        });
        if let Some(line) = nearest {
            if line.rabi > 0.0 {
                dt = dt.min(0.02 * 2.0 * std::f64::consts::PI / line.rabi);
            }
        }
        dt
    };
    if cfg.dt > 0.0 {
        if cfg.dtau > 0.0 && ((cfg.dt - cfg.dtau) / cfg.dtau).abs() > 1e-12 {
            return Err(CmdError::Config(
                "`dt` must equal `dtau` (shared kernel/Volterra grid)".into(),
            ));
        }
        dt = cfg.dt;
    }
    let t_max = if cfg.t_max > 0.0 {
        cfg.t_max
    } else {
        plan.t_max
    };
    Ok(Schedule { window, dt, t_max })
}

fn decay(cfg: &RunConfig) -> Result<CommandOutput, CmdError> {
    let med = cfg.medium().map_err(CmdError::Config)?;
    let geom = cfg.geometry().map_err(CmdError::Config)?;
    let atom = cfg.atom().map_err(CmdError::Config)?;
    let sched = schedule(cfg)?;
    let steps = sched.t_max / sched.dt;
    if steps > 4e6 {
        return Err(CmdError::Config(format!(
            "t_max/dtau = {steps:.1e} steps; reduce `t_max` or increase `dtau`"
        )));
    }
    let table = tabulate_kernel(
        &atom,
        &geom,
        &med,
        sched.t_max,
        sched.dt,
        sched.window,
        kernel_options(cfg),
    )?;
    let trace = volterra_solve(&table, sched.t_max, sched.dt)?;
    let mut warnings = table.warnings.clone();
    warnings.extend(trace.warnings.iter().cloned());
    let mut csv = String::from("t,a0t,re_cu,im_cu,pop\n");
    for (j, c) in trace.cu.iter().enumerate() {
        let t = trace.time(j);
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            sig(t),
            sig(atom.a0 * t),
            sig(c.re),
            sig(c.im),
            sig(c.norm_sqr())
        ));
    }
    Ok(CommandOutput { csv, warnings })
}

fn markov(cfg: &RunConfig) -> Result<CommandOutput, CmdError> {
    let med = cfg.medium().map_err(CmdError::Config)?;
    let geom = cfg.geometry().map_err(CmdError::Config)?;
    let atom = cfg.atom().map_err(CmdError::Config)?;
    let sched = schedule(cfg)?;
    let (rate, shift) = markov_parameters(&atom, &geom, &med, sched.window, kernel_options(cfg))?;
    let mut csv = String::from("t,a0t,re_cu,im_cu,pop\n");
    for t in linspace(0.0, sched.t_max, cfg.t_points) {
        let c = markov_amplitude_with(rate, shift, t);
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            sig(t),
            sig(atom.a0 * t),
            sig(c.re),
            sig(c.im),
            sig(c.norm_sqr())
        ));
    }
    Ok(CommandOutput {
        csv,
        warnings: Vec::new(),
    })
}

fn spectrum(cfg: &RunConfig) -> Result<CommandOutput, CmdError> {
    let med = cfg.medium().map_err(CmdError::Config)?;
    let geom = cfg.geometry().map_err(CmdError::Config)?;
    let atom = cfg.atom().map_err(CmdError::Config)?;
    let point = FieldPoint::new(cfg.rho_lambda * LAMBDA_T, cfg.theta)
        .map_err(|e| CmdError::Config(e.to_string()))?;
    if point.rho <= geom.r1 {
        return Err(CmdError::Config(
            "`rho_lambda` must put the detector outside the cavity".into(),
        ));
    }
    let sched = schedule(cfg)?;
    let (rate, shift) = markov_parameters(&atom, &geom, &med, sched.window, kernel_options(cfg))?;
    // normalized pattern weight including |A13|^2
    let ff2 = emission_pattern_markov(&point, 0.0, &atom, &geom, &med)?;
    let t_window = if cfg.t_window > 0.0 {
        cfg.t_window
    } else {
        50.0 / rate
    };
    let lo = if cfg.omega_s_min > 0.0 {
        cfg.omega_s_min
    } else {
        atom.omega_a - 8.0 * rate
    };
    let hi = if cfg.omega_s_max > 0.0 {
        cfg.omega_s_max
    } else {
        atom.omega_a + 8.0 * rate
    };
    if hi <= lo {
        return Err(CmdError::Config("empty spectrum frequency range".into()));
    }
    let mut csv = String::from("omega_s,s\n");
    for omega_s in linspace(lo, hi, cfg.spectrum_points) {
        let req = SpectrumRequest::new(omega_s, t_window)?;
        let s = spectrum_markov_with(&req, &atom, ff2, rate, shift);
        csv.push_str(&format!("{},{}\n", sig(omega_s), sig(s)));
    }
    Ok(CommandOutput {
        csv,
        warnings: Vec::new(),
    })
}

fn pattern(cfg: &RunConfig) -> Result<CommandOutput, CmdError> {
    let med = cfg.medium().map_err(CmdError::Config)?;
    let geom = cfg.geometry().map_err(CmdError::Config)?;
    let atom = cfg.atom().map_err(CmdError::Config)?;
    let rho = cfg.rho_lambda * LAMBDA_T;
    if !cfg.pattern_freespace && rho <= geom.r1 {
        return Err(CmdError::Config(
            "`rho_lambda` must put the detector outside the cavity".into(),
        ));
    }
    let t = cfg.pattern_t;
    let mut csv = String::from("theta,t,intensity\n");
    for theta in linspace(0.0, std::f64::consts::PI, cfg.pattern_points) {
        let point = FieldPoint::new(rho, theta).map_err(|e| CmdError::Config(e.to_string()))?;
        let intensity = if cfg.pattern_freespace {
            emission_pattern_freespace(&point, t, &atom)
        } else {
            emission_pattern_markov(&point, t, &atom, &geom, &med)?
        };
        csv.push_str(&format!("{},{},{}\n", sig(theta), sig(t), sig(intensity)));
    }
    Ok(CommandOutput {
        csv,
        warnings: Vec::new(),
    })
}

fn energy(cfg: &RunConfig) -> Result<CommandOutput, CmdError> {
    let med = cfg.medium().map_err(CmdError::Config)?;
    let geom = cfg.geometry().map_err(CmdError::Config)?;
    let a0 = cfg.atom().map_err(CmdError::Config)?.a0;
    let mut csv = String::from("omega_a,w_ratio\n");
    for omega_a in linspace(cfg.energy_min, cfg.energy_max, cfg.energy_points) {
        let atom = cavity_core::dynamics::AtomConfig::new(omega_a, a0)?;
        csv.push_str(&format!(
            "{},{}\n",
            sig(omega_a),
            sig(energy_ratio(&atom, &geom, &med)?)
        ));
    }
    Ok(CommandOutput {
        csv,
        warnings: Vec::new(),
    })
}

fn solve_radius(cfg: &RunConfig) -> Result<CommandOutput, CmdError> {
    let med = cfg.medium().map_err(CmdError::Config)?;
    let sol = solve_radius_for_resonance(
        cfg.omega_target,
        &med,
        cfg.r2_hint_lambda * LAMBDA_T,
        cfg.d_lambda * LAMBDA_T,
    )?;
    let mut csv = String::from("omega_target,r2_eq38_lambda,r2_tuned_lambda\n");
    csv.push_str(&format!(
        "{},{},{}\n",
        sig(cfg.omega_target),
        sig(sol.eq_root / LAMBDA_T),
        sig(sol.tuned / LAMBDA_T)
    ));
    Ok(CommandOutput {
        csv,
        warnings: Vec::new(),
    })
}
