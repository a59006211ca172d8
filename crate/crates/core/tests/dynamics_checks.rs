//! Cross-model consistency checks that tie the Volterra dynamics to the
//! Markov solution and the resonance lines to their Lorentzian idealization.

use cavity_core::dynamics::{
    markov_amplitude_with, markov_parameters, tabulate_kernel, volterra_solve, AtomConfig,
    KernelOptions,
};
use cavity_core::green::{abar, CavityGeometry};
use cavity_core::medium::LorentzMedium;
use cavity_core::resonances::{find_resonances, scan_points_for, DEFAULT_STRICTNESS};

fn gap_line(
    geometry: &CavityGeometry,
    medium: &LorentzMedium,
    a0: f64,
) -> cavity_core::resonances::ResonanceLine {
    let range = (1.04, 1.053);
    let scan = find_resonances(
        range,
        geometry,
        medium,
        scan_points_for(range),
        a0,
        DEFAULT_STRICTNESS,
    )
    .unwrap();
    *scan
        .lines
        .iter()
        .max_by(|a, b| a.abar_peak.partial_cmp(&b.abar_peak).unwrap())
        .expect("gap line")
}

#[test]
fn weak_coupling_volterra_matches_markov_at_half_life() {
    // Rabi-to-linewidth ratio just below 0.3: exponential decay at the
    // cavity-modified rate should hold to 5% at the half-life.
    let geom = CavityGeometry::from_lambda(30.0, 1.0).unwrap();
    let med = LorentzMedium::new(0.5, 1e-2).unwrap();
    let a0 = 3.6e-7;
    let line = gap_line(&geom, &med, a0);
    assert!(line.rabi / line.hwhm < 0.3, "not weakly coupled");
    let atom = AtomConfig::new(line.omega_m, a0).unwrap();

    let rate_est = atom.a0 * line.abar_peak;
    let t_half = 2.0f64.ln() / rate_est;
    let halfwidth = (300.0 * line.hwhm).max(0.05);
    let window = (atom.omega_a - halfwidth, atom.omega_a + halfwidth);
    let dt = 0.1 / halfwidth;
    let table = tabulate_kernel(
        &atom,
        &geom,
        &med,
        t_half,
        dt,
        window,
        KernelOptions::default(),
    )
    .unwrap();
    let trace = volterra_solve(&table, t_half, dt).unwrap();

    let (rate, shift) =
        markov_parameters(&atom, &geom, &med, window, KernelOptions::default()).unwrap();
    let j = trace.cu.len() - 1;
    let exact = trace.cu[j].norm();
    let markov = markov_amplitude_with(rate, shift, trace.time(j)).norm();
    let rel = (exact - markov).abs() / markov;
    assert!(rel < 0.05, "|C| {exact} vs markov {markov} ({rel:.3})");
}

#[test]
fn gap_line_is_lorentzian_within_five_half_widths() {
    let geom = CavityGeometry::from_lambda(30.0, 1.0).unwrap();
    let med = LorentzMedium::new(0.5, 1e-4).unwrap();
    let line = gap_line(&geom, &med, 1e-6);
    let excess = line.abar_peak - 1.0;
    for k in -40..=40 {
        let delta = 5.0 * line.hwhm * k as f64 / 40.0;
        let expect = excess / (1.0 + (delta / line.hwhm).powi(2));
        let got = abar(line.omega_m + delta, &geom, &med).unwrap() - 1.0;
        let rel = (got - expect).abs() / expect;
        assert!(
            rel < 0.05,
            "delta = {k}/40 of 5 hwhm: {got} vs {expect} ({rel:.3})"
        );
    }
}
