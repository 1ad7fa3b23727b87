//! Capacities of noiseless channels that carry trapped, noninteracting
//! bosons, fermions, and photon-like particles.
//!
//! The capacity of such a channel under average energy and average particle
//! number constraints is the entropy of the grand-canonical state, so the
//! crate is mostly ideal-gas thermodynamics over a discrete trap spectrum:
//!
//! * [`spectrum`] builds grouped `(energy, degeneracy)` level lists.
//! * [`statmech`] solves the fugacity and evaluates occupations, energy,
//!   the log partition function, and the entropy in bits.
//! * [`capacity`] samples capacity curves over temperature grids and runs
//!   the derivative, fracture, and scaling diagnostics.
//! * [`series`] is the high-temperature expansion in powers of `N/S_1`.
//! * [`oracle`] enumerates configurations of tiny systems as ground truth.
//!
//! Everything here is `no_std` (with `alloc`); IO lives in the `gascap` crate.

#![no_std]

extern crate alloc;

pub mod capacity;
pub mod error;
mod math;
pub mod oracle;
pub mod series;
pub mod spectrum;
pub mod statmech;

pub use capacity::{CapacityCurve, CurveSample, ReferenceTemperatures, TempGrid};
pub use error::{Error, Result};
pub use spectrum::{Level, LevelList, TrapDescriptor, TrapKind};
pub use statmech::{GasState, Species};

/// ζ(3/2)
pub const ZETA_3_2: f64 = 2.612_375_348_685_488;
/// ζ(2) = π²/6
pub const ZETA_2: f64 = core::f64::consts::PI * core::f64::consts::PI / 6.0;
/// ζ(3), Apéry's constant
pub const ZETA_3: f64 = 1.202_056_903_159_594_3;
