//! Capacity curves over temperature grids and their diagnostics.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::math;
use crate::spectrum::{LevelList, TrapDescriptor, TrapKind};
use crate::statmech::{solve_fugacity, GasState, Species};
use crate::{ZETA_2, ZETA_3, ZETA_3_2};

/// Uniform grid `min, …, max` with `points` nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TempGrid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl TempGrid {
    pub fn new(min: f64, max: f64, points: usize) -> Result<Self> {
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(Error::InvalidArgument("grid needs finite min < max"));
        }
        if points == 0 {
            return Err(Error::InvalidArgument("grid needs at least one point"));
        }
        Ok(TempGrid { min, max, points })
    }

    pub fn step(&self) -> f64 {
        if self.points > 1 {
            (self.max - self.min) / (self.points - 1) as f64
        } else {
            0.0
        }
    }

    pub fn node(&self, i: usize) -> f64 {
        if i + 1 == self.points && self.points > 1 {
            self.max
        } else {
            self.min + i as f64 * self.step()
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.points).map(|i| self.node(i)).collect()
    }

    /// Same grid multiplied by `factor` (e.g. `T/T_c` to `T`).
    pub fn scaled(&self, factor: f64) -> TempGrid {
        TempGrid {
            min: self.min * factor,
            max: self.max * factor,
            points: self.points,
        }
    }
}

/// One node of a capacity curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    pub t: f64,
    /// Normalizing temperature (`T_c`, `T_f`, or 1).
    pub t_ref: f64,
    pub capacity_bits: f64,
    pub energy: f64,
    pub mu: f64,
    pub z: f64,
    pub ground_fraction: f64,
    /// Mean particle number of the state (the target for massive species).
    pub n: f64,
}

impl CurveSample {
    pub fn t_over_ref(&self) -> f64 {
        self.t / self.t_ref
    }

    fn from_state(state: &GasState<'_>, t: f64) -> Self {
        CurveSample {
            t,
            t_ref: 1.0,
            capacity_bits: state.entropy_bits(),
            energy: state.energy(),
            mu: state.mu(),
            z: state.z(),
            ground_fraction: state.ground_fraction(),
            n: state.total_number(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CapacityCurve {
    pub samples: Vec<CurveSample>,
}

impl CapacityCurve {
    pub fn new(samples: Vec<CurveSample>) -> Result<Self> {
        if samples.windows(2).any(|w| w[1].t <= w[0].t) {
            return Err(Error::InvalidArgument("curve temperatures must be strictly increasing"));
        }
        Ok(CapacityCurve { samples })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn temperatures(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.t).collect()
    }

    pub fn capacities(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.capacity_bits).collect()
    }

    pub fn energies(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.energy).collect()
    }

    /// `dC/dT` at interior nodes as `(T, value)` pairs.
    pub fn capacity_derivative(&self) -> Result<Vec<(f64, f64)>> {
        derivative_curve(&self.temperatures(), &self.capacities())
    }

    /// `dE/dT` at interior nodes.
    pub fn energy_derivative(&self) -> Result<Vec<(f64, f64)>> {
        derivative_curve(&self.temperatures(), &self.energies())
    }
}

/// Solves the fugacity at `(n, t)` and reports the capacity, which is both
/// the classical and the quantum capacity of the channel. Photon-like
/// species ignore `n`.
pub fn capacity_point(spectrum: &LevelList, species: Species, n: f64, t: f64) -> Result<CurveSample> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidArgument("temperature must be positive"));
    }
    if species == Species::Photonlike {
        return photon_capacity_point(spectrum, t);
    }
    let state = solve_fugacity(spectrum, species, n, 1.0 / t)?;
    Ok(CurveSample::from_state(&state, t))
}

/// Capacity with `z = 1` and no number constraint; needs `ε₀ > 0`.
pub fn photon_capacity_point(spectrum: &LevelList, t: f64) -> Result<CurveSample> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidArgument("temperature must be positive"));
    }
    let state = GasState::photonlike(spectrum, 1.0 / t)?;
    Ok(CurveSample::from_state(&state, t))
}

/// Evaluates [`capacity_point`] at every node of a strictly increasing grid.
/// The first failure aborts with its temperature attached.
pub fn capacity_curve(spectrum: &LevelList, species: Species, n: f64, ts: &[f64], t_ref: f64) -> Result<CapacityCurve> {
    if ts.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument("temperature grid must be strictly increasing"));
    }
    let samples = ts
        .iter()
        .map(|&t| {
            capacity_point(spectrum, species, n, t)
                .map(|s| CurveSample { t_ref, ..s })
                .map_err(|e| at_temperature(t, e))
        })
        .collect::<Result<Vec<_>>>()?;
    CapacityCurve::new(samples)
}

pub fn at_temperature(t: f64, e: Error) -> Error {
    Error::AtTemperature {
        t,
        source: Box::new(e),
    }
}

fn check_uniform(xs: &[f64]) -> Result<f64> {
    if xs.len() < 2 {
        return Err(Error::TooFewSamples { needed: 2, got: xs.len() });
    }
    let h = (xs[xs.len() - 1] - xs[0]) / (xs.len() - 1) as f64;
    if !(h > 0.0) {
        return Err(Error::NonUniformGrid);
    }
    let tol = 1e-9 * h;
    if xs.windows(2).any(|w| math::abs((w[1] - w[0]) - h) > tol) {
        return Err(Error::NonUniformGrid);
    }
    Ok(h)
}

fn stencil(ys: &[f64], i: usize, h: f64) -> f64 {
    (ys[i - 2] - 8.0 * ys[i - 1] + 8.0 * ys[i + 1] - ys[i + 2]) / (12.0 * h)
}

/// Fourth-order central difference
/// `[f(x−2h) − 8f(x−h) + 8f(x+h) − f(x+2h)] / 12h` at node `index`.
pub fn four_point_derivative(xs: &[f64], ys: &[f64], index: usize) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::InvalidArgument("x and y lengths differ"));
    }
    if index < 2 || index + 2 >= xs.len() {
        return Err(Error::StencilOutOfRange { index, len: xs.len() });
    }
    let h = check_uniform(xs)?;
    Ok(stencil(ys, index, h))
}

/// Applies the four-point stencil at every interior node.
pub fn derivative_curve(xs: &[f64], ys: &[f64]) -> Result<Vec<(f64, f64)>> {
    if xs.len() != ys.len() {
        return Err(Error::InvalidArgument("x and y lengths differ"));
    }
    if xs.len() < 5 {
        return Err(Error::TooFewSamples { needed: 5, got: xs.len() });
    }
    let h = check_uniform(xs)?;
    Ok((2..xs.len() - 2).map(|i| (xs[i], stencil(ys, i, h))).collect())
}

/// Closed-form condensation and Fermi temperatures in natural units.
/// Entries that do not apply to the trap are `None`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ReferenceTemperatures {
    pub tc_3d_harmonic: Option<f64>,
    pub tc_2d_harmonic: Option<f64>,
    pub tc_1d_harmonic: Option<f64>,
    pub tc_3d_box: Option<f64>,
    pub tf_harmonic: Option<f64>,
    pub tf_3d_box: Option<f64>,
}

impl ReferenceTemperatures {
    /// The condensation temperature for whichever trap was described.
    pub fn tc(&self) -> Option<f64> {
        self.tc_3d_harmonic
            .or(self.tc_2d_harmonic)
            .or(self.tc_1d_harmonic)
            .or(self.tc_3d_box)
    }

    pub fn tf(&self) -> Option<f64> {
        self.tf_harmonic.or(self.tf_3d_box)
    }

    /// `(key, value)` pairs of the entries that are present.
    pub fn entries(&self) -> Vec<(&'static str, f64)> {
        [
            ("tc_3d_harmonic", self.tc_3d_harmonic),
            ("tc_2d_harmonic", self.tc_2d_harmonic),
            ("tc_1d_harmonic", self.tc_1d_harmonic),
            ("tc_3d_box", self.tc_3d_box),
            ("tf_harmonic", self.tf_harmonic),
            ("tf_3d_box", self.tf_3d_box),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| (k, v)))
        .collect()
    }
}

/// Harmonic traps use `ω_ho` = geometric mean of the frequency ratios; the
/// box uses its own energy unit `(2πħ)²/(2mL²)`.
pub fn reference_temperatures(trap: &TrapDescriptor, n: f64, g: u32) -> Result<ReferenceTemperatures> {
    if !(n > 0.0 && n.is_finite()) {
        return Err(Error::InvalidArgument("particle number must be positive"));
    }
    if g == 0 {
        return Err(Error::InvalidArgument("spin degeneracy must be >= 1"));
    }
    trap.validate()?;
    let mut out = ReferenceTemperatures::default();
    match &trap.kind {
        TrapKind::Harmonic { ratios } => {
            let d = ratios.len();
            let product: f64 = ratios.iter().map(|&r| r as f64).product();
            let omega = math::powf(product, 1.0 / d as f64);
            match d {
                3 => {
                    out.tc_3d_harmonic = Some(omega * math::cbrt(n / ZETA_3));
                    out.tf_harmonic = Some(omega * math::cbrt(6.0 * n / g as f64));
                }
                2 => out.tc_2d_harmonic = Some(omega * math::sqrt(n / ZETA_2)),
                _ => {
                    if n <= 1.0 {
                        return Err(Error::InvalidArgument("1D condensation temperature needs N > 1"));
                    }
                    out.tc_1d_harmonic = Some(omega * n / math::ln(2.0 * n));
                }
            }
        }
        TrapKind::BoxPeriodic => {
            out.tc_3d_box = Some(math::powf(n / ZETA_3_2, 2.0 / 3.0) / PI);
            out.tf_3d_box = Some(math::powf(3.0 * n / (4.0 * PI * g as f64), 2.0 / 3.0));
        }
        TrapKind::PowerLaw { .. } => {}
    }
    Ok(out)
}

fn second_differences(values: &[f64]) -> Vec<f64> {
    values
        .windows(3)
        .map(|w| math::abs(w[0] - 2.0 * w[1] + w[2]))
        .collect()
}

/// Temperature at which `|Δ²(dC/dT)|` peaks: the location of the
/// condensation fracture on a finite grid.
pub fn fracture_locator(ts: &[f64], derivative: &[f64]) -> Result<f64> {
    if ts.len() != derivative.len() {
        return Err(Error::InvalidArgument("x and y lengths differ"));
    }
    if ts.len() < 7 {
        return Err(Error::TooFewSamples { needed: 7, got: ts.len() });
    }
    check_uniform(ts)?;
    let sd = second_differences(derivative);
    let (i, _) = sd
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |(bi, bv), (i, &v)| if v > bv { (i, v) } else { (bi, bv) });
    Ok(ts[i + 1])
}

/// Null test for a kink in a derivative curve.
///
/// The curve has a kink when the largest `|Δ²|` away from the grid edges is
/// a strict local maximum and exceeds `ratio` times the median `|Δ²|` over
/// the same interior. Edge nodes are excluded because discrete spectra make
/// `|Δ²|` largest at the cold end of the grid even without condensation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KinkCriterion {
    pub ratio: f64,
    /// Fraction of the second-difference samples ignored at each end.
    pub guard_fraction: f64,
}

impl Default for KinkCriterion {
    fn default() -> Self {
        KinkCriterion {
            ratio: 3.0,
            guard_fraction: 0.1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KinkReport {
    /// Location of the interior peak.
    pub t: f64,
    /// Interior peak of `|Δ²|`.
    pub peak: f64,
    /// Global maximum of `|Δ²|` (the kink magnitude).
    pub magnitude: f64,
    pub median: f64,
    pub is_kink: bool,
}

impl KinkReport {
    pub fn peak_ratio(&self) -> f64 {
        self.peak / self.median
    }
}

impl KinkCriterion {
    pub fn evaluate(&self, ts: &[f64], derivative: &[f64]) -> Result<KinkReport> {
        if ts.len() != derivative.len() {
            return Err(Error::InvalidArgument("x and y lengths differ"));
        }
        if ts.len() < 7 {
            return Err(Error::TooFewSamples { needed: 7, got: ts.len() });
        }
        check_uniform(ts)?;
        let sd = second_differences(derivative);
        let guard = ((sd.len() as f64 * self.guard_fraction) as usize).max(1);
        if 2 * guard >= sd.len() {
            return Err(Error::TooFewSamples {
                needed: 2 * guard + 1,
                got: sd.len(),
            });
        }
        let interior = &sd[guard..sd.len() - guard];
        let (j, peak) = interior
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |(bj, bv), (j, &v)| if v > bv { (j, v) } else { (bj, bv) });
        let i = j + guard;
        let median = math::median(interior);
        let local_max = peak > sd[i - 1] && peak > sd[i + 1];
        Ok(KinkReport {
            t: ts[i + 1],
            peak,
            magnitude: sd.iter().copied().fold(0.0, f64::max),
            median,
            is_kink: local_max && peak > self.ratio * median,
        })
    }
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::InvalidArgument("x and y lengths differ"));
    }
    if xs.iter().chain(ys).any(|&v| !(v > 0.0)) {
        return Err(Error::InvalidArgument("log-log fit needs positive values"));
    }
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|&x| math::ln(x)).collect();
    let ly: Vec<f64> = ys.iter().map(|&y| math::ln(y)).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    if !(sxx > 0.0) {
        return Err(Error::InvalidArgument("log-log fit needs distinct x values"));
    }
    Ok(sxy / sxx)
}

/// Fitted exponent `p` in `C ∝ T^p` over samples with `lo ≤ T ≤ hi`.
pub fn scaling_exponent(curve: &CapacityCurve, lo: f64, hi: f64) -> Result<f64> {
    let (ts, cs): (Vec<f64>, Vec<f64>) = curve
        .samples
        .iter()
        .filter(|s| s.t >= lo && s.t <= hi)
        .map(|s| (s.t, s.capacity_bits))
        .unzip();
    if ts.len() < 5 {
        return Err(Error::TooFewSamples { needed: 5, got: ts.len() });
    }
    log_log_slope(&ts, &cs)
}
