//! Discrete trap spectra as grouped `(energy, degeneracy)` lists.
//!
//! Energies are dimensionless. Harmonic traps use the common frequency
//! quantum `ħω` (frequencies are integer multiples `r_j ω`, no zero-point
//! energy); the periodic cubic box uses `(2πħ)²/(2mL²)`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    pub energy: f64,
    pub degeneracy: u64,
}

impl Level {
    pub const fn new(energy: f64, degeneracy: u64) -> Self {
        Level { energy, degeneracy }
    }
}

/// Strictly increasing, non-empty list of levels.
///
/// `offset` is the energy that [`LevelList::shift_to_zero`] subtracted; the
/// physical energy of level `i` is `levels[i].energy + offset`.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelList {
    levels: Vec<Level>,
    offset: f64,
    // Energies before the last shift, kept so the shift can be undone exactly.
    unshifted: Option<Vec<f64>>,
}

impl LevelList {
    pub fn new(levels: Vec<Level>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidArgument("level list is empty"));
        }
        if levels.iter().any(|l| l.degeneracy == 0) {
            return Err(Error::InvalidArgument("degeneracy must be at least 1"));
        }
        if levels.iter().any(|l| !l.energy.is_finite()) {
            return Err(Error::InvalidArgument("energies must be finite"));
        }
        if levels.windows(2).any(|w| w[1].energy <= w[0].energy) {
            return Err(Error::InvalidArgument("energies must be strictly increasing"));
        }
        Ok(LevelList {
            levels,
            offset: 0.0,
            unshifted: None,
        })
    }

    /// Builds from `(energy, degeneracy)` pairs.
    pub fn from_pairs(pairs: &[(f64, u64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(e, g)| Level::new(e, g)).collect())
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn ground(&self) -> Level {
        self.levels[0]
    }

    pub fn is_zero_shifted(&self) -> bool {
        self.levels[0].energy == 0.0
    }

    /// Number of single-particle states, `Σ degeneracy`.
    pub fn state_count(&self) -> u64 {
        self.levels.iter().map(|l| l.degeneracy).sum()
    }

    /// Subtracts the lowest energy from every level and accumulates it
    /// into `offset`.
    pub fn shift_to_zero(&self) -> LevelList {
        let e0 = self.levels[0].energy;
        if e0 == 0.0 {
            return self.clone();
        }
        let unshifted = self.levels.iter().map(|l| l.energy).collect();
        let levels = self
            .levels
            .iter()
            .map(|l| Level::new(l.energy - e0, l.degeneracy))
            .collect();
        LevelList {
            levels,
            offset: self.offset + e0,
            unshifted: Some(unshifted),
        }
    }

    /// Undoes the most recent [`shift_to_zero`](Self::shift_to_zero),
    /// reproducing the pre-shift energies bit for bit.
    pub fn restore_offset(&self) -> LevelList {
        match &self.unshifted {
            None => self.clone(),
            Some(raw) => {
                let levels: Vec<Level> = raw
                    .iter()
                    .zip(&self.levels)
                    .map(|(&e, l)| Level::new(e, l.degeneracy))
                    .collect();
                LevelList {
                    offset: self.offset - (levels[0].energy - self.levels[0].energy),
                    levels,
                    unshifted: None,
                }
            }
        }
    }

    /// Returns a copy with `c` added to every energy (offset untouched).
    pub fn add_constant(&self, c: f64) -> LevelList {
        LevelList {
            levels: self
                .levels
                .iter()
                .map(|l| Level::new(l.energy + c, l.degeneracy))
                .collect(),
            offset: self.offset,
            unshifted: None,
        }
    }

    /// Writes `energy,degeneracy` rows with a header line.
    pub fn write_csv<W: fmt::Write>(&self, out: &mut W) -> fmt::Result {
        writeln!(out, "energy,degeneracy")?;
        for l in &self.levels {
            writeln!(out, "{},{}", l.energy, l.degeneracy)?;
        }
        Ok(())
    }
}

/// Groups a dense multiplicity table indexed by integer energy.
fn from_counts(counts: &[u64], unit: f64) -> LevelList {
    let levels = counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(e, &c)| Level::new(e as f64 * unit, c))
        .collect();
    LevelList {
        levels,
        offset: 0.0,
        unshifted: None,
    }
}

/// Levels `Σ_j r_j n_j` for `0 ≤ n_j ≤ cutoff`, grouped exactly.
///
/// `ratios` are the integer frequency ratios `p:q:r` of the axes; their
/// count is the dimension.
pub fn harmonic_levels(ratios: &[u32], cutoff: u32) -> Result<LevelList> {
    if ratios.is_empty() || ratios.len() > 3 {
        return Err(Error::InvalidArgument("harmonic trap dimension must be 1, 2 or 3"));
    }
    if ratios.contains(&0) {
        return Err(Error::InvalidArgument("frequency ratios must be positive"));
    }
    if cutoff == 0 {
        return Err(Error::InvalidArgument("cutoff must be at least 1"));
    }
    let mut counts = vec![1u64];
    for &r in ratios {
        let (r, c) = (r as usize, cutoff as usize);
        let mut next = vec![0u64; counts.len() + r * c];
        for (e, &m) in counts.iter().enumerate().filter(|(_, &m)| m > 0) {
            for n in 0..=c {
                next[e + r * n] += m;
            }
        }
        counts = next;
    }
    Ok(from_counts(&counts, 1.0))
}

/// Levels `n_x² + n_y² + n_z²` for `n_i ∈ {−cutoff, …, cutoff}`.
pub fn box_levels_3d(cutoff: u32) -> Result<LevelList> {
    if cutoff == 0 {
        return Err(Error::InvalidArgument("cutoff must be at least 1"));
    }
    let c = cutoff as usize;
    // Sparse one-axis table: n² with multiplicity 1 (n = 0) or 2 (±n).
    let axis: Vec<(usize, u64)> = (0..=c).map(|n| (n * n, if n == 0 { 1 } else { 2 })).collect();
    let mut pair = vec![0u64; 2 * c * c + 1];
    for &(a, ma) in &axis {
        for &(b, mb) in &axis {
            pair[a + b] += ma * mb;
        }
    }
    let mut counts = vec![0u64; 3 * c * c + 1];
    for (e, &m) in pair.iter().enumerate().filter(|(_, &m)| m > 0) {
        for &(a, ma) in &axis {
            counts[e + a] += m * ma;
        }
    }
    Ok(from_counts(&counts, 1.0))
}

#[derive(Debug, Clone, PartialEq)]
pub enum TrapKind {
    /// Integer frequency ratios, one per axis (1 to 3 axes).
    Harmonic { ratios: Vec<u32> },
    /// Cubic box with periodic boundary conditions.
    BoxPeriodic,
    /// `V = r^γ` in `d` dimensions. Only the series module uses it.
    PowerLaw { gamma: f64, d: u32 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrapDescriptor {
    pub kind: TrapKind,
    pub cutoff: u32,
}

impl TrapDescriptor {
    pub fn harmonic(ratios: &[u32], cutoff: u32) -> Self {
        TrapDescriptor {
            kind: TrapKind::Harmonic {
                ratios: ratios.to_vec(),
            },
            cutoff,
        }
    }

    pub fn isotropic_harmonic(d: usize, cutoff: u32) -> Self {
        Self::harmonic(&[1, 1, 1][..d.min(3)], cutoff)
    }

    pub fn box_periodic(cutoff: u32) -> Self {
        TrapDescriptor {
            kind: TrapKind::BoxPeriodic,
            cutoff,
        }
    }

    pub fn power_law(gamma: f64, d: u32) -> Self {
        TrapDescriptor {
            kind: TrapKind::PowerLaw { gamma, d },
            cutoff: 1,
        }
    }

    pub fn dimension(&self) -> u32 {
        match &self.kind {
            TrapKind::Harmonic { ratios } => ratios.len() as u32,
            TrapKind::BoxPeriodic => 3,
            TrapKind::PowerLaw { d, .. } => *d,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.cutoff == 0 {
            return Err(Error::InvalidArgument("cutoff must be at least 1"));
        }
        match &self.kind {
            TrapKind::Harmonic { ratios } => {
                if ratios.is_empty() || ratios.len() > 3 {
                    return Err(Error::InvalidArgument("harmonic trap dimension must be 1, 2 or 3"));
                }
                if ratios.contains(&0) {
                    return Err(Error::InvalidArgument("frequency ratios must be positive"));
                }
            }
            TrapKind::BoxPeriodic => {}
            TrapKind::PowerLaw { gamma, d } => {
                if !(*gamma > 0.0) || *d == 0 {
                    return Err(Error::InvalidArgument("power law needs gamma > 0 and d >= 1"));
                }
            }
        }
        Ok(())
    }

    /// Generates the discrete spectrum (not available for power-law traps).
    pub fn levels(&self) -> Result<LevelList> {
        match &self.kind {
            TrapKind::Harmonic { ratios } => harmonic_levels(ratios, self.cutoff),
            TrapKind::BoxPeriodic => box_levels_3d(self.cutoff),
            TrapKind::PowerLaw { .. } => Err(Error::InvalidArgument(
                "power-law traps have no discrete spectrum",
            )),
        }
    }
}
