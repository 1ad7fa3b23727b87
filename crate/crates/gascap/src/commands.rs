use std::fmt::Write;

use gascap_core::capacity::{capacity_point, fracture_locator, reference_temperatures, CapacityCurve};
use gascap_core::series::{
    capacity_expansion, capacity_series_bits, fermion_advantage_condition, spectral_sums, systematics_condition,
};
use gascap_core::spectrum::TrapDescriptor;
use gascap_core::Species;

use crate::config::RunConfig;
use crate::error::{CliError, Result};
use crate::output::{self, num};
use crate::sweep;

pub fn curve(cfg: &RunConfig) -> Result<CapacityCurve> {
    let spectrum = cfg.spectrum()?;
    sweep::capacity_curve(&spectrum, cfg.species, cfg.n, &cfg.temperatures(), cfg.t_ref, cfg.threads)
        .map_err(CliError::from_solve)
}

fn fracture_preamble(cfg: &RunConfig, derivative: &[(f64, f64)]) -> Result<Option<String>> {
    if !cfg.fracture {
        return Ok(None);
    }
    let (ts, ds): (Vec<f64>, Vec<f64>) = derivative.iter().copied().unzip();
    let at = fracture_locator(&ts, &ds).map_err(|e| CliError::usage(format!("fracture report: {e}")))?;
    let report = cfg
        .kink
        .evaluate(&ts, &ds)
        .map_err(|e| CliError::usage(format!("fracture report: {e}")))?;
    Ok(Some(output::kink_lines(at / cfg.t_ref, &report, cfg.t_ref)))
}

/// Capacity table, or the derivative table when the derivative toggle is on.
pub fn capacity(cfg: &RunConfig) -> Result<String> {
    if cfg.derivative {
        return derivative(cfg);
    }
    Ok(output::capacity_table(&curve(cfg)?))
}

pub fn derivative(cfg: &RunConfig) -> Result<String> {
    let c = curve(cfg)?;
    let d = c.capacity_derivative()?;
    let pre = fracture_preamble(cfg, &d)?;
    Ok(output::derivative_table(&d, cfg.t_ref, pre.as_deref()))
}

pub fn energy(cfg: &RunConfig) -> Result<String> {
    let c = curve(cfg)?;
    if !cfg.derivative {
        return Ok(output::energy_table(&c, None, None));
    }
    let d = c.energy_derivative()?;
    let pre = fracture_preamble(cfg, &d)?;
    Ok(output::energy_table(&c, Some(&d), pre.as_deref()))
}

pub fn reference_temps(trap: &TrapDescriptor, n: f64, g: u32) -> Result<String> {
    let refs = reference_temperatures(trap, n, g)?;
    let entries = refs.entries();
    if entries.is_empty() {
        return Err(CliError::usage("no reference temperature is defined for this trap"));
    }
    Ok(entries
        .into_iter()
        .map(|(k, v)| format!("{k}={}\n", output::decimal(v)))
        .collect())
}

/// Exact and third-order series capacities of spinless bosons and fermions
/// at high temperature, with the coefficient values and the two conditions.
/// Only `γ = 2` (the harmonic trap, `d ≤ 3`) has a discrete spectrum here;
/// other exponents print the conditions alone.
pub fn series_check(gamma: f64, d: u32, n: f64, temps: &[f64], cutoff: Option<u32>) -> Result<String> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(CliError::usage("--gamma must be a positive number"));
    }
    if d == 0 {
        return Err(CliError::usage("--dim must be at least 1"));
    }
    if !(n > 0.0 && n.is_finite()) {
        return Err(CliError::usage("--n must be a positive number"));
    }
    let advantage = fermion_advantage_condition(gamma, d)?;
    let systematics = systematics_condition(gamma, d)?;
    let mut out = String::new();
    writeln!(out, "# gamma={gamma} d={d} N={n}").unwrap();
    writeln!(out, "# fermion_advantage_condition={}", advantage.holds).unwrap();
    writeln!(out, "# systematics_condition={systematics}").unwrap();
    if !(advantage.holds && systematics) {
        writeln!(
            out,
            "# caveat: the conditions fail for this trap, so the expansion does not order the fermion and boson capacities"
        )
        .unwrap();
    }
    if gamma != 2.0 || d > 3 {
        writeln!(out, "# note: no discrete spectrum for this (gamma, d); exact columns omitted").unwrap();
        return Ok(out);
    }
    if temps.is_empty() || temps.iter().any(|&t| !(t > 0.0 && t.is_finite())) {
        return Err(CliError::usage("--temps needs positive temperatures"));
    }
    let tmax = temps.iter().copied().fold(0.0, f64::max);
    let cutoff = cutoff.unwrap_or_else(|| ((40.0 * tmax).ceil() as u32).max(60));
    let trap = TrapDescriptor::isotropic_harmonic(d as usize, cutoff);
    let levels = trap.levels()?;
    let fermion = Species::fermion(1);
    if n >= levels.state_count() as f64 {
        return Err(CliError::usage("N does not fit below the cutoff"));
    }

    writeln!(
        out,
        "T,y,Cb_exact,Cb_series,Cf_exact,Cf_series,Cf_minus_Cb,alpha1,alpha2_boson,alpha2_fermion,alpha3,beta1"
    )
    .unwrap();
    for &t in temps {
        let beta = 1.0 / t;
        let exact = |sp| {
            capacity_point(&levels, sp, n, t)
                .map(|s| s.capacity_bits)
                .map_err(|e| CliError::from_solve(gascap_core::capacity::at_temperature(t, e)))
        };
        let (cb, cf) = (exact(Species::Boson)?, exact(fermion)?);
        let (sb, y) = capacity_series_bits(&levels, Species::Boson, n, beta)?;
        let (sf, _) = capacity_series_bits(&levels, fermion, n, beta)?;
        let sums = spectral_sums(&levels.shift_to_zero(), beta, 3)?;
        let b = capacity_expansion(&sums, Species::Boson)?;
        let f = capacity_expansion(&sums, fermion)?;
        let cells = [t, y, cb, sb, cf, sf, cf - cb, b.alpha[0], b.alpha[1], f.alpha[1], b.alpha[2], b.beta_log[0]];
        writeln!(out, "{}", cells.iter().map(|&v| num(v)).collect::<Vec<_>>().join(",")).unwrap();
    }
    Ok(out)
}
