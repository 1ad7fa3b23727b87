//! CSV tables with fixed 12-significant-digit numbers, so identical runs
//! produce identical bytes.

use std::fmt::Write;

use gascap_core::capacity::{CapacityCurve, KinkReport};

pub const CAPACITY_HEADER: &str = "T,T_over_Tref,capacity_bits,energy,mu,z,ground_fraction";
pub const DERIVATIVE_HEADER: &str = "T,T_over_Tref,dC_dT";
pub const ENERGY_HEADER: &str = "T,T_over_Tref,energy,dE_dT";
pub const ENERGY_ONLY_HEADER: &str = "T,T_over_Tref,energy";

/// Scientific notation with 12 significant digits.
pub fn num(x: f64) -> String {
    // Normalize -0 so that sign noise cannot leak into golden files.
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}

/// Plain decimal with 12 significant digits, for `key=value` reports.
pub fn decimal(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).clamp(0, 30) as usize;
    format!("{x:.decimals$}")
}

fn row(out: &mut String, values: &[f64]) {
    let cells: Vec<String> = values.iter().map(|&v| num(v)).collect();
    writeln!(out, "{}", cells.join(",")).unwrap();
}

pub fn capacity_table(curve: &CapacityCurve) -> String {
    let mut out = String::new();
    writeln!(out, "{CAPACITY_HEADER}").unwrap();
    for s in &curve.samples {
        row(&mut out, &[s.t, s.t_over_ref(), s.capacity_bits, s.energy, s.mu, s.z, s.ground_fraction]);
    }
    out
}

/// Comment lines describing the fracture, placed above the header.
pub fn kink_lines(fracture_t_over_ref: f64, report: &KinkReport, t_ref: f64) -> String {
    format!(
        "# kink_T_over_Tref={}\n# kink_criterion={} peak_T_over_Tref={} peak_over_median={}\n",
        num(fracture_t_over_ref),
        report.is_kink,
        num(report.t / t_ref),
        num(report.peak_ratio())
    )
}

pub fn derivative_table(derivative: &[(f64, f64)], t_ref: f64, preamble: Option<&str>) -> String {
    let mut out = String::from(preamble.unwrap_or(""));
    writeln!(out, "{DERIVATIVE_HEADER}").unwrap();
    for &(t, d) in derivative {
        row(&mut out, &[t, t / t_ref, d]);
    }
    out
}

/// With `derivative` the rows are the interior nodes; otherwise every node
/// without the `dE_dT` column.
pub fn energy_table(curve: &CapacityCurve, derivative: Option<&[(f64, f64)]>, preamble: Option<&str>) -> String {
    let mut out = String::from(preamble.unwrap_or(""));
    match derivative {
        Some(d) => {
            writeln!(out, "{ENERGY_HEADER}").unwrap();
            let offset = (curve.len() - d.len()) / 2;
            for (s, &(t, de)) in curve.samples[offset..].iter().zip(d) {
                debug_assert_eq!(s.t, t);
                row(&mut out, &[s.t, s.t_over_ref(), s.energy, de]);
            }
        }
        None => {
            writeln!(out, "{ENERGY_ONLY_HEADER}").unwrap();
            for s in &curve.samples {
                row(&mut out, &[s.t, s.t_over_ref(), s.energy]);
            }
        }
    }
    out
}
