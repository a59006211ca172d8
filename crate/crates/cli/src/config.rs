//! Key=value run configuration with command-line overrides.
//!
//! One `key = value` per line, `#` comments, unknown keys rejected. The
//! defaults reproduce the canonical decay-rate sweep of the default cavity
//! (`r2_lambda = 30`, `d_lambda = 1`, `omega_p = 0.5`, `gamma = 1e-2`).
//! Numeric-control keys accept 0 for "choose automatically".

use std::fmt::Write as _;

use cavity_core::dynamics::AtomConfig;
use cavity_core::green::CavityGeometry;
use cavity_core::medium::LorentzMedium;

#[derive(Debug, Clone)]
pub struct RunConfig {
    // wall material
    pub omega_p: f64,
    pub gamma: f64,
    // geometry, in wall-resonance wavelengths
    pub r2_lambda: f64,
    pub d_lambda: f64,
    // atom
    pub omega_a: f64,
    pub a0_hat: f64,
    // frequency scans (abar, epsilon, resonances)
    pub scan_min: f64,
    pub scan_max: f64,
    pub scan_points: usize, // 0 = auto (20000 per unit interval)
    // kernel and Volterra controls
    pub window_halfwidth: f64, // 0 = auto
    pub dtau: f64,             // 0 = auto
    pub dt: f64,               // 0 = dtau
    pub t_max: f64,            // 0 = auto
    pub quadrature_tol: f64,
    pub prefactor_flat: bool,
    pub strictness: f64,
    pub t_points: usize, // sampling of the closed-form markov trace
    // observation point
    pub theta: f64,
    pub rho_lambda: f64,
    // pattern
    pub pattern_t: f64,
    pub pattern_points: usize,
    pub pattern_freespace: bool,
    // spectrum
    pub omega_s_min: f64, // 0 = auto
    pub omega_s_max: f64, // 0 = auto
    pub spectrum_points: usize,
    pub t_window: f64, // 0 = auto (50 / decay rate)
    // escaped-energy sweep
    pub energy_min: f64,
    pub energy_max: f64,
    pub energy_points: usize,
    // radius tuning
    pub omega_target: f64,
    pub r2_hint_lambda: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            omega_p: 0.5,
            gamma: 1e-2,
            r2_lambda: 30.0,
            d_lambda: 1.0,
            omega_a: 1.046448,
            a0_hat: 1e-6,
            scan_min: 0.95,
            scan_max: 1.2,
            scan_points: 0,
            window_halfwidth: 0.0,
            dtau: 0.0,
            dt: 0.0,
            t_max: 0.0,
            quadrature_tol: 1e-4,
            prefactor_flat: false,
            strictness: 3.0,
            t_points: 2001,
            theta: std::f64::consts::FRAC_PI_2,
            rho_lambda: 1000.0,
            pattern_t: 0.0,
            pattern_points: 181,
            pattern_freespace: false,
            omega_s_min: 0.0,
            omega_s_max: 0.0,
            spectrum_points: 1001,
            t_window: 0.0,
            energy_min: 0.9,
            energy_max: 1.2,
            energy_points: 3001,
            omega_target: 0.9999,
            r2_hint_lambda: 30.0,
        }
    }
}

pub const KEYS: &[&str] = &[
    "omega_p",
    "gamma",
    "r2_lambda",
    "d_lambda",
    "omega_a",
    "a0_hat",
    "scan_min",
    "scan_max",
    "scan_points",
    "window_halfwidth",
    "dtau",
    "dt",
    "t_max",
    "quadrature_tol",
    "prefactor_flat",
    "strictness",
    "t_points",
    "theta",
    "rho_lambda",
    "pattern_t",
    "pattern_points",
    "pattern_freespace",
    "omega_s_min",
    "omega_s_max",
    "spectrum_points",
    "t_window",
    "energy_min",
    "energy_max",
    "energy_points",
    "omega_target",
    "r2_hint_lambda",
];

fn parse_f64(key: &str, value: &str) -> Result<f64, String> {
    value
        .parse::<f64>()
        .map_err(|_| format!("key `{key}`: `{value}` is not a number"))
}

fn parse_usize(key: &str, value: &str) -> Result<usize, String> {
    value
        .parse::<usize>()
        .map_err(|_| format!("key `{key}`: `{value}` is not a nonnegative integer"))
}

fn parse_bool(key: &str, value: &str) -> Result<bool, String> {
    match value {
        "true" | "1" => Ok(true),
        "false" | "0" => Ok(false),
        _ => Err(format!(
            "key `{key}`: `{value}` is not a boolean (true/false/1/0)"
        )),
    }
}

impl RunConfig {
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        match key {
            "omega_p" => self.omega_p = parse_f64(key, value)?,
            "gamma" => self.gamma = parse_f64(key, value)?,
            "r2_lambda" => self.r2_lambda = parse_f64(key, value)?,
            "d_lambda" => self.d_lambda = parse_f64(key, value)?,
            "omega_a" => self.omega_a = parse_f64(key, value)?,
            "a0_hat" => self.a0_hat = parse_f64(key, value)?,
            "scan_min" => self.scan_min = parse_f64(key, value)?,
            "scan_max" => self.scan_max = parse_f64(key, value)?,
            "scan_points" => self.scan_points = parse_usize(key, value)?,
            "window_halfwidth" => self.window_halfwidth = parse_f64(key, value)?,
            "dtau" => self.dtau = parse_f64(key, value)?,
            "dt" => self.dt = parse_f64(key, value)?,
            "t_max" => self.t_max = parse_f64(key, value)?,
            "quadrature_tol" => self.quadrature_tol = parse_f64(key, value)?,
            "prefactor_flat" => self.prefactor_flat = parse_bool(key, value)?,
            "strictness" => self.strictness = parse_f64(key, value)?,
            "t_points" => self.t_points = parse_usize(key, value)?,
            "theta" => self.theta = parse_f64(key, value)?,
            "rho_lambda" => self.rho_lambda = parse_f64(key, value)?,
            "pattern_t" => self.pattern_t = parse_f64(key, value)?,
            "pattern_points" => self.pattern_points = parse_usize(key, value)?,
            "pattern_freespace" => self.pattern_freespace = parse_bool(key, value)?,
            "omega_s_min" => self.omega_s_min = parse_f64(key, value)?,
            "omega_s_max" => self.omega_s_max = parse_f64(key, value)?,
            "spectrum_points" => self.spectrum_points = parse_usize(key, value)?,
            "t_window" => self.t_window = parse_f64(key, value)?,
            "energy_min" => self.energy_min = parse_f64(key, value)?,
            "energy_max" => self.energy_max = parse_f64(key, value)?,
            "energy_points" => self.energy_points = parse_usize(key, value)?,
            "omega_target" => self.omega_target = parse_f64(key, value)?,
            "r2_hint_lambda" => self.r2_hint_lambda = parse_f64(key, value)?,
            _ => {
                let mut msg = format!("unknown key `{key}`; valid keys:");
                for k in KEYS {
                    let _ = write!(msg, " {k}");
                }
                return Err(msg);
            }
        }
        Ok(())
    }

    /// Parse `key = value` lines (with `#` comments) on top of the
    /// defaults.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut cfg = RunConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                format!("line {}: expected `key = value`, got `{raw}`", lineno + 1)
            })?;
            let (key, value) = (key.trim(), value.trim());
            if value.is_empty() {
                return Err(format!("line {}: empty value for `{key}`", lineno + 1));
            }
            cfg.set(key, value)
                .map_err(|e| format!("line {}: {e}", lineno + 1))?;
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), String> {
        let positive = [
            ("gamma", self.gamma),
            ("r2_lambda", self.r2_lambda),
            ("d_lambda", self.d_lambda),
            ("omega_a", self.omega_a),
            ("a0_hat", self.a0_hat),
            ("scan_min", self.scan_min),
            ("quadrature_tol", self.quadrature_tol),
            ("strictness", self.strictness),
            ("rho_lambda", self.rho_lambda),
            ("energy_min", self.energy_min),
            ("omega_target", self.omega_target),
            ("r2_hint_lambda", self.r2_hint_lambda),
        ];
        for (name, v) in positive {
            if !(v > 0.0) || !v.is_finite() {
                return Err(format!("`{name}` must be positive and finite, got {v}"));
            }
        }
        let nonnegative = [
            ("omega_p", self.omega_p),
            ("window_halfwidth", self.window_halfwidth),
            ("dtau", self.dtau),
            ("dt", self.dt),
            ("t_max", self.t_max),
            ("pattern_t", self.pattern_t),
            ("omega_s_min", self.omega_s_min),
            ("omega_s_max", self.omega_s_max),
            ("t_window", self.t_window),
        ];
        for (name, v) in nonnegative {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(format!("`{name}` must be >= 0 and finite, got {v}"));
            }
        }
        if self.scan_max <= self.scan_min {
            return Err("`scan_max` must exceed `scan_min`".into());
        }
        if self.energy_max <= self.energy_min {
            return Err("`energy_max` must exceed `energy_min`".into());
        }
        if !(0.0..=std::f64::consts::PI).contains(&self.theta) {
            return Err(format!("`theta` must lie in [0, pi], got {}", self.theta));
        }
        for (name, n) in [
            ("t_points", self.t_points),
            ("pattern_points", self.pattern_points),
            ("spectrum_points", self.spectrum_points),
            ("energy_points", self.energy_points),
        ] {
            if n < 2 {
                return Err(format!("`{name}` must be at least 2, got {n}"));
            }
        }
        Ok(())
    }

    pub fn medium(&self) -> Result<LorentzMedium, String> {
        LorentzMedium::new(self.omega_p, self.gamma).map_err(|e| e.to_string())
    }

    pub fn geometry(&self) -> Result<CavityGeometry, String> {
        CavityGeometry::from_lambda(self.r2_lambda, self.d_lambda).map_err(|e| e.to_string())
    }

    pub fn atom(&self) -> Result<AtomConfig, String> {
        AtomConfig::from_hat(self.omega_a, self.a0_hat).map_err(|e| e.to_string())
    }

    /// Scan-point count: explicit value, or the default density of 20000
    /// points per unit frequency interval (at least 1000).
    pub fn scan_count(&self) -> usize {
        if self.scan_points > 0 {
            self.scan_points.max(2)
        } else {
            cavity_core::resonances::scan_points_for((self.scan_min, self.scan_max))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid_and_match_the_reference_cavity() {
        let cfg = RunConfig::parse("").unwrap();
        cfg.validate().unwrap();
        assert_eq!(cfg.r2_lambda, 30.0);
        assert_eq!(cfg.d_lambda, 1.0);
        assert_eq!(cfg.omega_p, 0.5);
        assert_eq!(cfg.gamma, 1e-2);
    }

    #[test]
    fn file_parsing_and_overrides() {
        let cfg = RunConfig::parse("# comment\n gamma = 1e-4 \n\nomega_p=0.5 # inline\n").unwrap();
        assert_eq!(cfg.gamma, 1e-4);
        let mut cfg = cfg;
        cfg.set("gamma", "2e-2").unwrap();
        assert_eq!(cfg.gamma, 2e-2);
    }

    #[test]
    fn errors_carry_line_numbers_and_key_lists() {
        let err = RunConfig::parse("gamma = 1e-3\nnot a line\n").unwrap_err();
        assert!(err.contains("line 2"), "{err}");
        let err = RunConfig::parse("gamme = 1e-3\n").unwrap_err();
        assert!(
            err.contains("unknown key") && err.contains("gamma"),
            "{err}"
        );
    }

    #[test]
    fn validation_rejects_nonphysical_values() {
        let mut cfg = RunConfig::default();
        cfg.set("gamma", "-1").unwrap();
        assert!(cfg.validate().is_err());
        let mut cfg = RunConfig::default();
        cfg.set("theta", "4.0").unwrap();
        assert!(cfg.validate().is_err());
    }
}
