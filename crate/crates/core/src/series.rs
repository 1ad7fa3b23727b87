//! High-temperature expansion of the fugacity and the capacity in powers of
//! `y = N/S₁`, plus the continuum moment ratios of power-law traps.
//!
//! With `S_k = Σ e^{−kβε}` and `D_k = Σ βε e^{−kβε}` on a zero-shifted
//! spectrum, the number constraint `N = Σ_k (±1)^{k+1} z^k S_k` inverts to
//! `z = y + c₂y² + c₃y³ + …` and the entropy in nats,
//! `ln Z − N ln z + βE`, expands to
//!
//! ```text
//! C / log₂e = α₁y + α₂y² + α₃y³ + β₁ y ln y + β₂ y² ln y + O(y⁴)
//! ```
//!
//! Bosons and fermions share `α₁ = S₁ + D₁`, `α₃`, and `β₁ = −S₁`; `α₂`
//! flips sign between them. `N ln z = S₁ y ln z` only produces a `y ln y`
//! term, so `β₂ = 0` for both species.

use alloc::vec::Vec;
use core::f64::consts::LOG2_E;

use crate::error::{Error, Result};
use crate::math;
use crate::spectrum::LevelList;
use crate::statmech::{solve_fugacity, Species};

/// `S_k` and `D_k` for `k = 1..=kmax` (index 0 holds `k = 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralSums {
    pub s: Vec<f64>,
    pub d: Vec<f64>,
    pub beta: f64,
}

impl SpectralSums {
    pub fn s(&self, k: usize) -> f64 {
        self.s[k - 1]
    }

    pub fn d(&self, k: usize) -> f64 {
        self.d[k - 1]
    }

    pub fn kmax(&self) -> usize {
        self.s.len()
    }

    fn require(&self, k: usize) -> Result<()> {
        if self.kmax() < k {
            Err(Error::InvalidArgument("spectral sums need kmax >= 3"))
        } else {
            Ok(())
        }
    }
}

/// Degeneracy-weighted `S_k` and `D_k` over the stored energies (the caller
/// passes a zero-shifted spectrum).
pub fn spectral_sums(spectrum: &LevelList, beta: f64, kmax: usize) -> Result<SpectralSums> {
    if kmax == 0 {
        return Err(Error::InvalidArgument("kmax must be at least 1"));
    }
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::InvalidArgument("beta must be positive and finite"));
    }
    let mut s = alloc::vec![0.0; kmax];
    let mut d = alloc::vec![0.0; kmax];
    for l in spectrum.levels() {
        let x = beta * l.energy;
        let g = l.degeneracy as f64;
        for k in 1..=kmax {
            let w = g * math::exp(-(k as f64) * x);
            s[k - 1] += w;
            d[k - 1] += x * w;
        }
    }
    Ok(SpectralSums { s, d, beta })
}

/// `(c₁, c₂, c₃)` of `z = c₁y + c₂y² + c₃y³`: `c₁ = 1`, `c₂ = ∓S₂/S₁`
/// (boson −, fermion +), `c₃ = (2S₂² − S₁S₃)/S₁²`.
pub fn fugacity_coefficients(sums: &SpectralSums, species: Species) -> Result<[f64; 3]> {
    sums.require(3)?;
    let (s1, s2, s3) = (sums.s(1), sums.s(2), sums.s(3));
    let sign = species_sign(species)?;
    Ok([1.0, -sign * s2 / s1, (2.0 * s2 * s2 - s1 * s3) / (s1 * s1)])
}

/// +1 for bosons, −1 for spinless fermions.
fn species_sign(species: Species) -> Result<f64> {
    match species {
        Species::Boson => Ok(1.0),
        Species::Fermion { g: 1 } => Ok(-1.0),
        Species::Fermion { .. } => Err(Error::InvalidArgument(
            "the series expansion covers spinless fermions only",
        )),
        Species::Photonlike => Err(Error::InvalidArgument("photon-like gases have no fugacity series")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionCoefficients {
    pub species: Species,
    pub fugacity: [f64; 3],
    /// Coefficients of `y`, `y²`, `y³`.
    pub alpha: [f64; 3],
    /// Coefficients of `y ln y` and `y² ln y`.
    pub beta_log: [f64; 2],
}

impl ExpansionCoefficients {
    /// Third-order fugacity `z(y)`.
    pub fn fugacity_at(&self, y: f64) -> f64 {
        let [c1, c2, c3] = self.fugacity;
        y * (c1 + y * (c2 + y * c3))
    }

    /// Truncated capacity in bits at `y = N/S₁`; `log₂e` is applied here
    /// and never stored in the coefficients.
    pub fn capacity_bits(&self, y: f64) -> f64 {
        let [a1, a2, a3] = self.alpha;
        let [b1, b2] = self.beta_log;
        let ln_y = math::ln(y);
        LOG2_E * (a1 * y + a2 * y * y + a3 * y * y * y + b1 * y * ln_y + b2 * y * y * ln_y)
    }
}

/// Capacity expansion coefficients to third order in `N/S₁`.
pub fn capacity_expansion(sums: &SpectralSums, species: Species) -> Result<ExpansionCoefficients> {
    let fugacity = fugacity_coefficients(sums, species)?;
    let sign = species_sign(species)?;
    let (s1, s2, s3) = (sums.s(1), sums.s(2), sums.s(3));
    let (d1, d2, d3) = (sums.d(1), sums.d(2), sums.d(3));
    let b3 = fugacity[2];
    let alpha1 = s1 + d1;
    let alpha2 = sign * (s2 / 2.0 - s2 / s1 * d1 + d2);
    let alpha3 = -s2 * s2 / (2.0 * s1) + s3 / 3.0 + b3 * d1 - 2.0 * s2 / s1 * d2 + d3;
    Ok(ExpansionCoefficients {
        species,
        fugacity,
        alpha: [alpha1, alpha2, alpha3],
        beta_log: [-s1, 0.0],
    })
}

/// Series fugacity against the bisection solution at the same `(N, β)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FugacityComparison {
    /// `N/S₁`
    pub y: f64,
    pub z_series: f64,
    pub z_exact: f64,
    /// `|z_series − z_exact| / z_exact`
    pub gap: f64,
    /// `y < 0.1`; outside this the expansion is not expected to hold.
    pub in_series_regime: bool,
}

impl FugacityComparison {
    pub fn abs_gap(&self) -> f64 {
        self.gap * self.z_exact
    }
}

pub const SERIES_REGIME: f64 = 0.1;

pub fn series_vs_exact_fugacity(spectrum: &LevelList, species: Species, n: f64, beta: f64) -> Result<FugacityComparison> {
    let shifted = spectrum.shift_to_zero();
    let sums = spectral_sums(&shifted, beta, 3)?;
    let coeffs = capacity_expansion(&sums, species)?;
    let y = n / sums.s(1);
    let z_series = coeffs.fugacity_at(y);
    let z_exact = solve_fugacity(&shifted, species, n, beta)?.z();
    Ok(FugacityComparison {
        y,
        z_series,
        z_exact,
        gap: math::abs(z_series - z_exact) / z_exact,
        in_series_regime: y < SERIES_REGIME,
    })
}

/// Third-order series capacity at `(N, β)` together with `y = N/S₁`.
pub fn capacity_series_bits(spectrum: &LevelList, species: Species, n: f64, beta: f64) -> Result<(f64, f64)> {
    let shifted = spectrum.shift_to_zero();
    let sums = spectral_sums(&shifted, beta, 3)?;
    let y = n / sums.s(1);
    Ok((capacity_expansion(&sums, species)?.capacity_bits(y), y))
}

fn check_power_law(gamma: f64, d: u32) -> Result<()> {
    if !(gamma > 0.0) || d == 0 {
        return Err(Error::InvalidArgument("power law needs gamma > 0 and d >= 1"));
    }
    Ok(())
}

/// Density-of-states exponent `η = d/γ + (d−2)/2` of `V = r^γ` in `d`
/// dimensions. `γ = ∞` is the hard box.
pub fn dos_exponent(gamma: f64, d: u32) -> f64 {
    d as f64 / gamma + (d as f64 - 2.0) / 2.0
}

/// Continuum `D_k/S_k = (η + 1)/k = (d/γ + d/2)/k`.
pub fn moment_ratio_analytic(gamma: f64, d: u32, k: u32) -> Result<f64> {
    check_power_law(gamma, d)?;
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1"));
    }
    let eta = dos_exponent(gamma, d);
    if !(eta > -1.0) {
        return Err(Error::InvalidArgument("density of states is not integrable at zero energy"));
    }
    Ok((eta + 1.0) / k as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdvantagePrediction {
    /// `1/γ + 1/2 > 1/d`
    pub holds: bool,
    /// Sign of `α₂ᵇ = (S₂/2)[1 − (d/γ + d/2)]` in the continuum: −1, 0 or +1.
    pub alpha2_boson_sign: f64,
}

/// Whether spinless fermions out-carry spinless bosons at high temperature
/// in a `V = r^γ` trap.
pub fn fermion_advantage_condition(gamma: f64, d: u32) -> Result<AdvantagePrediction> {
    check_power_law(gamma, d)?;
    let holds = 1.0 / gamma + 0.5 > 1.0 / d as f64;
    let m = 1.0 - (d as f64 / gamma + d as f64 / 2.0);
    let alpha2_boson_sign = if m > 0.0 {
        1.0
    } else if m < 0.0 {
        -1.0
    } else {
        0.0
    };
    Ok(AdvantagePrediction {
        holds,
        alpha2_boson_sign,
    })
}

/// Orders of the expansion terms increase in `β`:
/// `2d/γ + d > d/γ + d/2 > 1 > 0`.
pub fn systematics_condition(gamma: f64, d: u32) -> Result<bool> {
    check_power_law(gamma, d)?;
    let a = d as f64 / gamma + d as f64 / 2.0;
    Ok(2.0 * a > a && a > 1.0)
}
