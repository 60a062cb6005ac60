use super::{assembly::model_id, refine_until, SolverConfig};
use crate::error::{Error, Result};
use crate::mass::OrderingParams;
use crate::par::map_slice;
use crate::potential::{Family, PotentialModel};
use log::warn;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub family: Family,
    pub model: String,
    pub mass: String,
    pub orderings: Vec<String>,
    pub v_m_suppressed: bool,
    /// Extrapolated lowest levels, one row per ordering.
    pub spectra: Vec<Vec<f64>>,
    /// `deviation[i][j] = max_n |E_n(i) − E_n(j)|`.
    pub deviation: Vec<Vec<f64>>,
    pub max_deviation: f64,
    /// Largest last-doubling change across orderings.
    pub convergence_estimate: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Rebuilds the model under each ordering, solves, and compares the lowest levels.
pub fn ordering_sweep(model: &PotentialModel, orderings: &[OrderingParams], cfg: &SolverConfig) -> Result<SweepReport> {
    if orderings.len() < 2 {
        return Err(Error::Parameter(format!("an ordering sweep needs at least 2 orderings, got {}", orderings.len())));
    }
    if model.is_complex() {
        return Err(Error::ComplexModel);
    }
    if model.mass().is_constant() {
        warn!("constant mass: every ordering gives the same Hamiltonian");
    }
    let k = match model.spectrum().bound_states {
        Some(count) => cfg.levels.min(count),
        None => cfg.levels,
    };
    let grid = cfg.grid_for(model)?;
    let runs = map_slice(orderings, cfg.parallelism, |o| {
        let m = model.with_ordering(*o);
        refine_until(&m, &grid, k, cfg.target_tol, crate::par::Parallelism::Sequential)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let spectra: Vec<Vec<f64>> = runs.iter().map(|r| r.best().to_vec()).collect();
    let deviation: Vec<Vec<f64>> = spectra
        .iter()
        .map(|a| spectra.iter().map(|b| a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)).collect())
        .collect();
    let max_deviation = deviation.iter().flatten().copied().fold(0.0, f64::max);
    let convergence_estimate =
        runs.iter().filter_map(|r| r.convergence.as_ref().map(|c| c.last_change)).fold(0.0, f64::max);
    let tolerance = cfg.tolerance.unwrap_or(1e-3);
    Ok(SweepReport {
        family: model.family(),
        model: model_id(model),
        mass: model.mass().kind().to_string(),
        orderings: orderings.iter().map(|o| o.to_string()).collect(),
        v_m_suppressed: model.v_m_suppressed(),
        spectra,
        deviation,
        max_deviation,
        convergence_estimate,
        tolerance,
        pass: max_deviation <= tolerance,
    })
}
