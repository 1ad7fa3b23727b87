//! Grand-canonical thermodynamics of ideal quantum gases over a [`LevelList`].
//!
//! Every per-level quantity is written in terms of `u = βε − ln z`, which is
//! positive for bosons below condensation and sign-free for fermions. The
//! forms below stay accurate both for `u → 0` and for deep Fermi seas where
//! `z e^{−βε}` is astronomically large.

use alloc::borrow::Cow;
use core::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::math;
use crate::spectrum::LevelList;

const MAX_BISECTIONS: usize = 200;
const MAX_BRACKET_STEPS: usize = 1000;
/// Relative residual accepted by [`solve_fugacity`].
pub const SOLVE_TOLERANCE: f64 = 1e-10;
/// Upper clamp for the boson fugacity on a zero-shifted spectrum.
pub const BOSON_Z_MAX: f64 = 1.0 - 1.0 / (1u64 << 50) as f64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Species {
    Boson,
    /// Spin degeneracy `g = 2s + 1`.
    Fermion { g: u32 },
    /// No number constraint, `z = 1`.
    Photonlike,
}

impl Species {
    pub fn fermion(g: u32) -> Self {
        Species::Fermion { g }
    }

    /// Internal degeneracy multiplying every spatial sublevel.
    pub fn spin_degeneracy(&self) -> f64 {
        match self {
            Species::Fermion { g } => *g as f64,
            _ => 1.0,
        }
    }

    pub fn is_fermion(&self) -> bool {
        matches!(self, Species::Fermion { .. })
    }

    fn check(&self) -> Result<()> {
        match self {
            Species::Fermion { g: 0 } => Err(Error::InvalidArgument("fermion spin degeneracy must be >= 1")),
            _ => Ok(()),
        }
    }
}

// ---- per-sublevel kernels in terms of u = βε − ln z ----

fn occupation_u(species: Species, u: f64) -> f64 {
    match species {
        Species::Fermion { g } => g as f64 / (math::exp(u) + 1.0),
        _ => 1.0 / math::exp_m1(u),
    }
}

/// `−ln(1 − e^{−u})` for bosons, `g ln(1 + e^{−u})` for fermions.
fn log_partition_u(species: Species, u: f64) -> f64 {
    match species {
        Species::Fermion { g } => {
            let a = math::abs(u);
            g as f64 * (math::ln_1p(math::exp(-a)) + if u < 0.0 { a } else { 0.0 })
        }
        _ => -math::ln(-math::exp_m1(-u)),
    }
}

/// Entropy in nats of one spatial sublevel.
fn entropy_u(species: Species, u: f64) -> f64 {
    match species {
        Species::Fermion { g } => {
            // Binary entropy is symmetric under p ↔ 1 − p, i.e. u ↔ −u.
            let a = math::abs(u);
            let e = math::exp(-a);
            let s = math::ln_1p(e) + if a > 0.0 { a * e / (1.0 + e) } else { 0.0 };
            g as f64 * s
        }
        _ => {
            let tail = if u.is_finite() { u / math::exp_m1(u) } else { 0.0 };
            -math::ln(-math::exp_m1(-u)) + tail
        }
    }
}

fn level_u(beta: f64, eps: f64, ln_z: f64) -> f64 {
    beta * eps - ln_z
}

fn check_beta(beta: f64) -> Result<()> {
    if beta > 0.0 && beta.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument("beta must be positive and finite"))
    }
}

fn check_z(z: f64) -> Result<f64> {
    if z > 0.0 && z.is_finite() {
        Ok(math::ln(z))
    } else {
        Err(Error::InvalidArgument("fugacity must be positive and finite"))
    }
}

/// Checks the bosonic bound on the lowest level (`u_0 > 0`) and the photon
/// requirement of a strictly positive ground level.
fn check_domain(spectrum: &LevelList, species: Species, beta: f64, ln_z: f64) -> Result<()> {
    species.check()?;
    check_beta(beta)?;
    let e0 = spectrum.ground().energy;
    match species {
        Species::Photonlike if e0 <= 0.0 => Err(Error::DivergentPhotonlike { lowest: e0 }),
        Species::Boson | Species::Photonlike if level_u(beta, e0, ln_z) <= 0.0 => Err(Error::CondensationBound),
        _ => Ok(()),
    }
}

fn sum_levels(spectrum: &LevelList, beta: f64, ln_z: f64, mut f: impl FnMut(f64, f64) -> f64) -> f64 {
    math::compensated_sum(
        spectrum
            .levels()
            .iter()
            .map(|l| l.degeneracy as f64 * f(l.energy, level_u(beta, l.energy, ln_z))),
    )
}

fn effective_ln_z(species: Species, z: f64) -> Result<f64> {
    match species {
        Species::Photonlike => Ok(0.0),
        _ => check_z(z),
    }
}

/// Mean occupation of one spatial sublevel at energy `eps` (fermions include
/// the spin factor `g`; the caller multiplies by spatial degeneracy).
/// Photon-like particles ignore `z` and use 1.
pub fn mean_occupation(species: Species, eps: f64, beta: f64, z: f64) -> Result<f64> {
    species.check()?;
    check_beta(beta)?;
    let ln_z = effective_ln_z(species, z)?;
    let u = level_u(beta, eps, ln_z);
    if !species.is_fermion() && u <= 0.0 {
        return Err(Error::CondensationBound);
    }
    Ok(occupation_u(species, u))
}

/// `Σ degeneracy · n̄`.
pub fn total_number(spectrum: &LevelList, species: Species, beta: f64, z: f64) -> Result<f64> {
    let ln_z = effective_ln_z(species, z)?;
    check_domain(spectrum, species, beta, ln_z)?;
    Ok(number_ln(spectrum, species, beta, ln_z))
}

fn number_ln(spectrum: &LevelList, species: Species, beta: f64, ln_z: f64) -> f64 {
    sum_levels(spectrum, beta, ln_z, |_, u| occupation_u(species, u))
}

fn energy_ln(spectrum: &LevelList, species: Species, beta: f64, ln_z: f64) -> f64 {
    let shifted = sum_levels(spectrum, beta, ln_z, |e, u| e * occupation_u(species, u));
    if spectrum.offset() != 0.0 {
        shifted + spectrum.offset() * number_ln(spectrum, species, beta, ln_z)
    } else {
        shifted
    }
}

fn log_partition_ln(spectrum: &LevelList, species: Species, beta: f64, ln_z: f64) -> f64 {
    sum_levels(spectrum, beta, ln_z, |_, u| log_partition_u(species, u))
}

fn entropy_bits_ln(spectrum: &LevelList, species: Species, beta: f64, ln_z: f64) -> f64 {
    sum_levels(spectrum, beta, ln_z, |_, u| entropy_u(species, u)) / LN_2
}

/// Mean energy `Σ degeneracy · ε · n̄`, with `offset · N` added back when
/// the spectrum was shifted.
pub fn total_energy(spectrum: &LevelList, species: Species, beta: f64, z: f64) -> Result<f64> {
    let ln_z = effective_ln_z(species, z)?;
    check_domain(spectrum, species, beta, ln_z)?;
    Ok(energy_ln(spectrum, species, beta, ln_z))
}

/// Natural log of the grand partition function (relative to the stored
/// energies).
pub fn log_partition(spectrum: &LevelList, species: Species, beta: f64, z: f64) -> Result<f64> {
    let ln_z = effective_ln_z(species, z)?;
    check_domain(spectrum, species, beta, ln_z)?;
    Ok(log_partition_ln(spectrum, species, beta, ln_z))
}

/// Von Neumann entropy of the grand-canonical state in bits; this is the
/// channel capacity.
pub fn entropy_bits(spectrum: &LevelList, species: Species, beta: f64, z: f64) -> Result<f64> {
    let ln_z = effective_ln_z(species, z)?;
    check_domain(spectrum, species, beta, ln_z)?;
    Ok(entropy_bits_ln(spectrum, species, beta, ln_z))
}

/// Per-level entropy contributions in bits (degeneracy included).
pub fn entropy_terms_bits(spectrum: &LevelList, species: Species, beta: f64, z: f64) -> Result<alloc::vec::Vec<f64>> {
    let ln_z = effective_ln_z(species, z)?;
    check_domain(spectrum, species, beta, ln_z)?;
    Ok(spectrum
        .levels()
        .iter()
        .map(|l| l.degeneracy as f64 * entropy_u(species, level_u(beta, l.energy, ln_z)) / LN_2)
        .collect())
}

/// A solved grand-canonical state. The spectrum is stored zero-shifted
/// (except for photon-like gases), so `z` is relative to the lowest level.
#[derive(Debug, Clone)]
pub struct GasState<'a> {
    spectrum: Cow<'a, LevelList>,
    species: Species,
    beta: f64,
    ln_z: f64,
}

impl<'a> GasState<'a> {
    /// Photon-like state: `z = 1` on the unshifted spectrum.
    pub fn photonlike(spectrum: &'a LevelList, beta: f64) -> Result<Self> {
        check_domain(spectrum, Species::Photonlike, beta, 0.0)?;
        Ok(GasState {
            spectrum: Cow::Borrowed(spectrum),
            species: Species::Photonlike,
            beta,
            ln_z: 0.0,
        })
    }

    pub fn spectrum(&self) -> &LevelList {
        &self.spectrum
    }

    pub fn species(&self) -> Species {
        self.species
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn temperature(&self) -> f64 {
        1.0 / self.beta
    }

    pub fn ln_z(&self) -> f64 {
        self.ln_z
    }

    /// Fugacity relative to the stored (zero-shifted) spectrum. May be
    /// `inf` for extremely degenerate fermions; use [`ln_z`](Self::ln_z).
    pub fn z(&self) -> f64 {
        math::exp(self.ln_z)
    }

    /// Chemical potential on the physical (unshifted) energy scale.
    pub fn mu(&self) -> f64 {
        self.spectrum.offset() + self.ln_z / self.beta
    }

    pub fn total_number(&self) -> f64 {
        number_ln(&self.spectrum, self.species, self.beta, self.ln_z)
    }

    pub fn energy(&self) -> f64 {
        energy_ln(&self.spectrum, self.species, self.beta, self.ln_z)
    }

    pub fn log_partition(&self) -> f64 {
        log_partition_ln(&self.spectrum, self.species, self.beta, self.ln_z)
    }

    pub fn entropy_bits(&self) -> f64 {
        entropy_bits_ln(&self.spectrum, self.species, self.beta, self.ln_z)
    }

    /// Mean occupation of one spatial sublevel of level `i`.
    pub fn occupation(&self, i: usize) -> f64 {
        let e = self.spectrum.levels()[i].energy;
        occupation_u(self.species, level_u(self.beta, e, self.ln_z))
    }

    /// `deg₀ · n̄₀ / N`.
    pub fn ground_fraction(&self) -> f64 {
        let n = self.total_number();
        if n > 0.0 {
            self.spectrum.ground().degeneracy as f64 * self.occupation(0) / n
        } else {
            0.0
        }
    }

    pub fn relative_residual(&self, target: f64) -> f64 {
        math::abs(self.total_number() - target) / target
    }

    /// Relative violation of `ln Z = S ln 2 − β(E − μN)`.
    pub fn gibbs_residual(&self) -> f64 {
        gibbs_residual(self)
    }
}

/// `|S ln 2 − (ln Z + β(E − μN))| / max(1, S ln 2)`.
pub fn gibbs_residual(state: &GasState<'_>) -> f64 {
    let s = state.entropy_bits() * LN_2;
    let rhs = state.log_partition() + state.beta * (state.energy() - state.mu() * state.total_number());
    math::abs(s - rhs) / s.max(1.0)
}

/// Solves `Σ deg · n̄(z) = n` for the fugacity by bisection.
///
/// The spectrum is zero-shifted first. Bosons bisect `z` on
/// `(0, 1 − 2⁻⁵⁰)`; fermions grow a bracket in `z` by doubling/halving and
/// bisect geometrically. Bisection continues until the bracket stops
/// shrinking, then the `1e-10` residual gate applies.
pub fn solve_fugacity(spectrum: &LevelList, species: Species, n: f64, beta: f64) -> Result<GasState<'_>> {
    species.check()?;
    check_beta(beta)?;
    if !(n > 0.0 && n.is_finite()) {
        return Err(Error::InvalidArgument("particle number must be positive and finite"));
    }
    let spectrum: Cow<'_, LevelList> = if spectrum.is_zero_shifted() {
        Cow::Borrowed(spectrum)
    } else {
        Cow::Owned(spectrum.shift_to_zero())
    };
    let count = |ln_z: f64| number_ln(&spectrum, species, beta, ln_z);

    let ln_z = match species {
        Species::Photonlike => {
            return Err(Error::InvalidArgument("photon-like gases have no number constraint"));
        }
        Species::Boson => {
            let sup = count(math::ln(BOSON_Z_MAX));
            if n > sup {
                return Err(Error::UnreachableN { requested: n, supremum: sup });
            }
            let (mut lo, mut hi) = (0.0f64, BOSON_Z_MAX);
            for _ in 0..MAX_BISECTIONS {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if count(math::ln(mid)) < n {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            closest(&count, n, math::ln(lo.max(f64::MIN_POSITIVE)), math::ln(hi))
        }
        Species::Fermion { g } => {
            let sup = g as f64 * spectrum.state_count() as f64;
            if n >= sup {
                return Err(Error::UnreachableN { requested: n, supremum: sup });
            }
            // The bracket step doubles, so deep Fermi seas (ln z ~ βε_F in
            // the thousands) are reached in a few dozen steps.
            let (mut lo, mut hi) = (0.0f64, 0.0f64);
            let (mut steps, mut step) = (0, LN_2);
            if count(0.0) < n {
                while count(hi) < n {
                    lo = hi;
                    hi += step;
                    step *= 2.0;
                    steps += 1;
                    if steps > MAX_BRACKET_STEPS {
                        return Err(Error::NoConvergence { iterations: steps, residual: 1.0 - count(hi) / n });
                    }
                }
            } else {
                while count(lo) >= n {
                    hi = lo;
                    lo -= step;
                    step *= 2.0;
                    steps += 1;
                    if steps > MAX_BRACKET_STEPS {
                        return Err(Error::NoConvergence { iterations: steps, residual: count(lo) / n - 1.0 });
                    }
                }
            }
            for _ in 0..MAX_BISECTIONS {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if count(mid) < n {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            closest(&count, n, lo, hi)
        }
    };

    let residual = math::abs(count(ln_z) - n) / n;
    if !(residual <= SOLVE_TOLERANCE) {
        return Err(Error::NoConvergence {
            iterations: MAX_BISECTIONS,
            residual,
        });
    }
    Ok(GasState {
        spectrum,
        species,
        beta,
        ln_z,
    })
}

fn closest(count: &impl Fn(f64) -> f64, n: f64, lo: f64, hi: f64) -> f64 {
    if math::abs(count(lo) - n) <= math::abs(count(hi) - n) {
        lo
    } else {
        hi
    }
}
