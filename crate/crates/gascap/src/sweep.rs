//! Parallel evaluation of capacity curves over grid nodes.

use gascap_core::capacity::{at_temperature, capacity_point, CapacityCurve, CurveSample};
use gascap_core::spectrum::LevelList;
use gascap_core::Species;
use rayon::prelude::*;

/// Same result as [`gascap_core::capacity::capacity_curve`], with the nodes
/// solved on a rayon pool. Samples stay in grid order and the reported
/// failure is the coldest failing node, whatever finished first.
pub fn capacity_curve(
    spectrum: &LevelList,
    species: Species,
    n: f64,
    ts: &[f64],
    t_ref: f64,
    threads: Option<usize>,
) -> gascap_core::Result<CapacityCurve> {
    let solve = || -> Vec<gascap_core::Result<CurveSample>> {
        ts.par_iter()
            .map(|&t| {
                capacity_point(spectrum, species, n, t)
                    .map(|s| CurveSample { t_ref, ..s })
                    .map_err(|e| at_temperature(t, e))
            })
            .collect()
    };
    let results = match threads {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .expect("thread pool")
            .install(solve),
        None => solve(),
    };
    CapacityCurve::new(results.into_iter().collect::<gascap_core::Result<Vec<_>>>()?)
}
