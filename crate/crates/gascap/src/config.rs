//! Run configuration: a TOML file whose keys mirror the command-line flags.
//! Flags win over the file; everything is validated before any solve.

use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use gascap_core::capacity::{reference_temperatures, KinkCriterion, ReferenceTemperatures, TempGrid};
use gascap_core::spectrum::{LevelList, TrapDescriptor};
use gascap_core::Species;
use serde::Deserialize;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum TrapChoice {
    Harmonic,
    Box,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SpeciesChoice {
    Boson,
    Fermion,
    Photonlike,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Normalize {
    Tc,
    Tf,
    None,
}

/// Every key is optional; missing ones fall back to flags, then defaults.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub trap: Option<TrapChoice>,
    pub dim: Option<usize>,
    pub ratios: Option<Vec<u32>>,
    pub cutoff: Option<u32>,
    pub species: Option<SpeciesChoice>,
    pub g: Option<u32>,
    pub n: Option<f64>,
    pub tmin: Option<f64>,
    pub tmax: Option<f64>,
    pub points: Option<usize>,
    pub normalize: Option<Normalize>,
    pub derivative: Option<bool>,
    pub fracture: Option<bool>,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
    pub kink_ratio: Option<f64>,
    pub kink_guard: Option<f64>,
    /// Spin degeneracy used for `T_f` when it should differ from `g`.
    pub ref_g: Option<u32>,
}

impl ConfigFile {
    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        toml::from_str(text).map_err(|e| CliError::ParseConfig {
            path: path.to_path_buf(),
            source: Box::new(e),
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| CliError::ReadConfig {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text, path)
    }

    /// Keys set in `top` replace those in `self`.
    pub fn overlay(self, top: ConfigFile) -> ConfigFile {
        macro_rules! pick {
            ($($f:ident),*) => { ConfigFile { $($f: top.$f.or(self.$f)),* } };
        }
        pick!(
            trap, dim, ratios, cutoff, species, g, n, tmin, tmax, points, normalize, derivative, fracture, out,
            threads, kink_ratio, kink_guard, ref_g
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub trap: TrapDescriptor,
    pub species: Species,
    pub n: f64,
    /// In units of the reference temperature.
    pub grid: TempGrid,
    pub normalize: Normalize,
    pub t_ref: f64,
    pub derivative: bool,
    pub fracture: bool,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
    pub kink: KinkCriterion,
}

pub const DEFAULT_HARMONIC_CUTOFF: u32 = 200;
pub const DEFAULT_BOX_CUTOFF: u32 = 30;

pub fn trap_from_parts(trap: TrapChoice, dim: Option<usize>, ratios: Option<Vec<u32>>, cutoff: Option<u32>) -> Result<TrapDescriptor> {
    let t = match trap {
        TrapChoice::Harmonic => {
            let ratios = match (ratios, dim) {
                (Some(r), Some(d)) if r.len() != d => {
                    return Err(CliError::usage(format!("--ratios has {} entries but --dim is {d}", r.len())))
                }
                (Some(r), _) => r,
                (None, d) => {
                    let d = d.unwrap_or(3);
                    if !(1..=3).contains(&d) {
                        return Err(CliError::usage("harmonic trap dimension must be 1, 2 or 3"));
                    }
                    vec![1; d]
                }
            };
            TrapDescriptor::harmonic(&ratios, cutoff.unwrap_or(DEFAULT_HARMONIC_CUTOFF))
        }
        TrapChoice::Box => {
            if dim.is_some_and(|d| d != 3) || ratios.is_some() {
                return Err(CliError::usage("the box trap is three-dimensional and takes no ratios"));
            }
            TrapDescriptor::box_periodic(cutoff.unwrap_or(DEFAULT_BOX_CUTOFF))
        }
    };
    t.validate()?;
    Ok(t)
}

pub fn species_from_parts(species: SpeciesChoice, g: Option<u32>) -> Result<Species> {
    match species {
        SpeciesChoice::Boson | SpeciesChoice::Photonlike if g.is_some_and(|g| g != 1) => {
            Err(CliError::usage("--g applies to fermions only"))
        }
        SpeciesChoice::Boson => Ok(Species::Boson),
        SpeciesChoice::Photonlike => Ok(Species::Photonlike),
        SpeciesChoice::Fermion => match g.unwrap_or(1) {
            0 => Err(CliError::usage("--g must be at least 1")),
            g => Ok(Species::fermion(g)),
        },
    }
}

impl RunConfig {
    /// Validates a merged configuration. `derivative_default` is the
    /// command's own default for the derivative toggle.
    pub fn resolve(c: ConfigFile, derivative_default: bool) -> Result<Self> {
        let trap = trap_from_parts(c.trap.unwrap_or(TrapChoice::Harmonic), c.dim, c.ratios, c.cutoff)?;
        let species = species_from_parts(c.species.unwrap_or(SpeciesChoice::Boson), c.g)?;

        let n = match (species, c.n) {
            (Species::Photonlike, _) => c.n.unwrap_or(0.0),
            (_, Some(n)) if n > 0.0 && n.is_finite() => n,
            (_, Some(_)) => return Err(CliError::usage("--n must be a positive number")),
            (_, None) => return Err(CliError::usage("--n is required for massive species")),
        };
        if let Species::Fermion { g } = species {
            let states = trap.levels()?.state_count() as f64 * g as f64;
            if n >= states {
                return Err(CliError::usage(format!(
                    "N={n} does not fit below the cutoff ({states} fermion states)"
                )));
            }
        }

        let tmin = c.tmin.unwrap_or(0.1);
        let tmax = c.tmax.unwrap_or(1.6);
        let points = c.points.unwrap_or(200);
        if !(tmin > 0.0 && tmin < tmax && tmax.is_finite()) {
            return Err(CliError::usage(format!("empty temperature range [{tmin}, {tmax}]")));
        }
        let grid = TempGrid::new(tmin, tmax, points).map_err(|e| CliError::usage(e.to_string()))?;

        let derivative = c.derivative.unwrap_or(derivative_default);
        let fracture = c.fracture.unwrap_or(false);
        if fracture && !derivative {
            return Err(CliError::usage("--fracture needs the derivative"));
        }
        if derivative && points < 7 {
            return Err(CliError::usage(format!("the derivative needs at least 7 grid points, got {points}")));
        }

        let normalize = c.normalize.unwrap_or(match species {
            Species::Boson => Normalize::Tc,
            Species::Fermion { .. } => Normalize::Tf,
            Species::Photonlike => Normalize::None,
        });
        let t_ref = reference_temperature(&trap, species, n, normalize, c.ref_g)?;

        if c.threads == Some(0) {
            return Err(CliError::usage("--threads must be at least 1"));
        }
        let kink = KinkCriterion {
            ratio: c.kink_ratio.unwrap_or(KinkCriterion::default().ratio),
            guard_fraction: c.kink_guard.unwrap_or(KinkCriterion::default().guard_fraction),
        };
        if !(kink.ratio > 0.0) || !(0.0..0.5).contains(&kink.guard_fraction) {
            return Err(CliError::usage("kink ratio must be positive and guard fraction in [0, 0.5)"));
        }

        Ok(RunConfig {
            trap,
            species,
            n,
            grid,
            normalize,
            t_ref,
            derivative,
            fracture,
            out: c.out,
            threads: c.threads,
            kink,
        })
    }

    /// Temperatures in natural units.
    pub fn temperatures(&self) -> Vec<f64> {
        self.grid.scaled(self.t_ref).values()
    }

    /// The spectrum the run solves on. Photon-like harmonic runs keep the
    /// zero-point energy so that the lowest mode is not at zero.
    pub fn spectrum(&self) -> Result<LevelList> {
        let levels = self.trap.levels()?;
        if self.species == Species::Photonlike {
            if let gascap_core::TrapKind::Harmonic { ratios } = &self.trap.kind {
                let zero_point = ratios.iter().map(|&r| r as f64).sum::<f64>() / 2.0;
                return Ok(levels.add_constant(zero_point));
            }
        }
        Ok(levels)
    }
}

fn reference_temperature(trap: &TrapDescriptor, species: Species, n: f64, normalize: Normalize, ref_g: Option<u32>) -> Result<f64> {
    if normalize == Normalize::None {
        return Ok(1.0);
    }
    if species == Species::Photonlike {
        return Err(CliError::usage("photon-like runs have no reference temperature; use --normalize none"));
    }
    let g = match (ref_g, species) {
        (Some(0), _) => return Err(CliError::usage("--ref-g must be at least 1")),
        (Some(g), _) => g,
        (None, Species::Fermion { g }) => g,
        (None, _) => 1,
    };
    let refs: ReferenceTemperatures = reference_temperatures(trap, n, g).map_err(|e| CliError::usage(e.to_string()))?;
    let (value, name) = match normalize {
        Normalize::Tc => (refs.tc(), "T_c"),
        _ => (refs.tf(), "T_f"),
    };
    value.ok_or_else(|| CliError::usage(format!("no {name} is defined for this trap; use another --normalize")))
}
