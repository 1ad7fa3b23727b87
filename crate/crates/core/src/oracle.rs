//! Brute-force grand-canonical ensembles of tiny systems.
//!
//! Every occupation tuple over the spatial sublevels (bosons, `0..=M` each)
//! or the spin-resolved sublevels (fermions, `0` or `1` each) is listed with
//! its weight `z^{Σn} e^{−βΣnε}`. Entropy and moments computed from the
//! table are independent of the per-mode closed forms in `statmech`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::math;
use crate::spectrum::LevelList;
use crate::statmech::Species;

/// Largest number of sublevels the enumerator accepts.
pub const MAX_SUBLEVELS: usize = 6;
/// Largest table the enumerator builds.
pub const MAX_ENTRIES: u128 = 1 << 24;
pub const DEFAULT_TRUNCATION: u32 = 60;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Configuration {
    pub total_n: u64,
    pub total_e: f64,
    /// `ln(z^n e^{−βE})`
    pub log_weight: f64,
}

impl Configuration {
    pub fn weight(&self) -> f64 {
        math::exp(self.log_weight)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigurationTable {
    pub entries: Vec<Configuration>,
    /// Per-sublevel maximum occupation.
    pub truncation: u32,
}

impl ConfigurationTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `ln Σ weights`
    pub fn log_norm(&self) -> f64 {
        math::log_sum_exp(self.entries.iter().map(|c| c.log_weight))
    }

    /// Normalized probabilities.
    pub fn probabilities(&self) -> Vec<f64> {
        let norm = self.log_norm();
        self.entries.iter().map(|c| math::exp(c.log_weight - norm)).collect()
    }
}

/// Enumerates all occupation tuples. Fermions always use `M = 1` per
/// spin-resolved sublevel.
pub fn enumerate(spectrum: &LevelList, species: Species, beta: f64, z: f64, truncation: u32) -> Result<ConfigurationTable> {
    if truncation == 0 {
        return Err(Error::InvalidArgument("truncation must be at least 1"));
    }
    if !(beta >= 0.0 && beta.is_finite()) || !(z > 0.0 && z.is_finite()) {
        return Err(Error::InvalidArgument("need finite beta >= 0 and z > 0"));
    }
    let (copies, m) = match species {
        Species::Fermion { g } if g >= 1 => (g as u64, 1u32),
        Species::Fermion { .. } => return Err(Error::InvalidArgument("fermion spin degeneracy must be >= 1")),
        Species::Boson => (1, truncation),
        Species::Photonlike => (1, truncation),
    };
    let ln_z = if species == Species::Photonlike { 0.0 } else { math::ln(z) };

    let energies: Vec<f64> = spectrum
        .levels()
        .iter()
        .flat_map(|l| core::iter::repeat_n(l.energy, (l.degeneracy * copies) as usize))
        .collect();
    let sublevels = energies.len();
    let entries = (m as u128 + 1).checked_pow(sublevels as u32).unwrap_or(u128::MAX);
    if sublevels > MAX_SUBLEVELS || entries > MAX_ENTRIES {
        return Err(Error::TableTooLarge { sublevels, entries });
    }

    let mut table = Vec::with_capacity(entries as usize);
    let mut occ = vec![0u32; sublevels];
    loop {
        let total_n: u64 = occ.iter().map(|&n| n as u64).sum();
        let total_e: f64 = occ.iter().zip(&energies).map(|(&n, &e)| n as f64 * e).sum();
        table.push(Configuration {
            total_n,
            total_e,
            log_weight: total_n as f64 * ln_z - beta * total_e,
        });
        // Odometer increment.
        let mut i = 0;
        loop {
            if i == sublevels {
                return Ok(ConfigurationTable {
                    entries: table,
                    truncation: m,
                });
            }
            if occ[i] < m {
                occ[i] += 1;
                break;
            }
            occ[i] = 0;
            i += 1;
        }
    }
}

/// Shannon entropy of the normalized weights, in bits.
pub fn brute_force_entropy_bits(table: &ConfigurationTable) -> f64 {
    let norm = table.log_norm();
    -table
        .entries
        .iter()
        .map(|c| {
            let lp = c.log_weight - norm;
            let p = math::exp(lp);
            if p > 0.0 {
                p * lp
            } else {
                0.0
            }
        })
        .sum::<f64>()
        / LN_2
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub mean_n: f64,
    pub mean_e: f64,
    pub log_norm: f64,
}

pub fn brute_force_moments(table: &ConfigurationTable) -> Moments {
    let log_norm = table.log_norm();
    let (mut mean_n, mut mean_e) = (0.0, 0.0);
    for c in &table.entries {
        let p = math::exp(c.log_weight - log_norm);
        mean_n += p * c.total_n as f64;
        mean_e += p * c.total_e;
    }
    Moments {
        mean_n,
        mean_e,
        log_norm,
    }
}

/// Upper bound on the boson truncation error of the entropy: the neglected
/// geometric tail `x^{M+1}` per sublevel, weighted by the largest
/// log-contribution it can carry.
pub fn boson_tail_bound(spectrum: &LevelList, beta: f64, z: f64, truncation: u32) -> f64 {
    spectrum
        .levels()
        .iter()
        .map(|l| {
            let x = z * math::exp(-beta * l.energy);
            let m = truncation as f64 + 1.0;
            let tail = math::powf(x, m);
            // Tail entropy is x^{M+1}[(M+1)|ln x| + |ln(1−x)| + x|ln x|/(1−x)], the
            // last term ≤ 1; renormalizing the kept part costs at most one more x^{M+1}.
            let per = tail * (m * math::abs(math::ln(x)) + math::abs(math::ln_1p(-x)) + 2.0) / (1.0 - tail);
            l.degeneracy as f64 * per / LN_2
        })
        .sum()
}
