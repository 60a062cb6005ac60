//! Finite-difference solution of the von Roos Hamiltonian plus a constructed potential.

mod assembly;
mod eigen;
mod sweep;
mod transform;
mod validate;

pub use assembly::{discretize, kinetic, model_id, AssemblyMetadata, DiscretizedHamiltonian};
pub use eigen::{Eigenpairs, Tridiagonal, RESIDUAL_BOUND};
pub use sweep::{ordering_sweep, SweepReport};
pub use transform::{eigenvector_transform, TransformedState};
pub use validate::{offset_policy, validate_family, LevelComparison, OffsetPolicy, ValidationReport};

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::par::Parallelism;
use crate::potential::PotentialModel;
use log::debug;
use serde::{Deserialize, Serialize};

pub const MAX_DOUBLINGS: usize = 6;
const MIN_DOUBLINGS: usize = 2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverConfig {
    /// Points of the coarsest grid, end points included.
    pub points: usize,
    pub levels: usize,
    /// Refinement stops once successive grids move every level by less than this.
    pub target_tol: f64,
    /// Validation tolerance on relative error; `None` picks 1e-4 (constant mass) or 1e-3.
    pub tolerance: Option<f64>,
    /// Interval in `x`; `None` uses the family default.
    pub domain: Option<[f64; 2]>,
    pub parallelism: Parallelism,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            points: 1001,
            levels: 4,
            target_tol: 1e-5,
            tolerance: None,
            domain: None,
            parallelism: Parallelism::default(),
        }
    }
}

impl SolverConfig {
    pub fn grid_for(&self, model: &PotentialModel) -> Result<Grid> {
        let (lo, hi) = match self.domain {
            Some([lo, hi]) => (lo, hi),
            None => model.default_domain_for(self.levels)?,
        };
        Grid::new(lo, hi, self.points)
    }

    pub fn tolerance_for(&self, model: &PotentialModel) -> f64 {
        self.tolerance.unwrap_or(if model.mass().is_constant() { 1e-4 } else { 1e-3 })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Convergence {
    pub grids: Vec<usize>,
    /// Eigenvalues on each grid, coarsest first.
    pub history: Vec<Vec<f64>>,
    /// `(4 E_fine − E_coarse)/3` from the last two grids.
    pub richardson: Vec<f64>,
    pub observed_order: Option<f64>,
    pub last_change: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumResult {
    pub eigenvalues: Vec<f64>,
    pub residuals: Vec<f64>,
    pub norm: f64,
    pub grid: Grid,
    /// Interior points matching the eigenvector entries.
    #[serde(skip)]
    pub x: Vec<f64>,
    /// Normalized so that `Σ ψ² Δx = 1`.
    #[serde(skip)]
    pub eigenvectors: Vec<Vec<f64>>,
    /// Levels removed for lying at or above the continuum threshold.
    pub dropped: usize,
    pub convergence: Option<Convergence>,
}

impl SpectrumResult {
    /// Best available estimate: extrapolated if refinement ran, otherwise the raw eigenvalues.
    pub fn best(&self) -> &[f64] {
        self.convergence.as_ref().map_or(&self.eigenvalues, |c| &c.richardson)
    }
}

/// The `k` smallest eigenpairs of a discretized Hamiltonian.
pub fn eigen_lowest(h: &DiscretizedHamiltonian, k: usize, par: Parallelism) -> Result<SpectrumResult> {
    let pairs = h.matrix.lowest(k, par)?;
    let scale = 1.0 / h.dx.sqrt();
    let eigenvectors = pairs.vectors.into_iter().map(|v| v.into_iter().map(|c| c * scale).collect()).collect();
    Ok(SpectrumResult {
        eigenvalues: pairs.values,
        residuals: pairs.residuals,
        norm: pairs.norm,
        grid: h.metadata.grid,
        x: h.x.clone(),
        eigenvectors,
        dropped: 0,
        convergence: None,
    })
}

/// Assemble and solve on one grid, dropping levels at or above the continuum threshold.
pub fn solve(model: &PotentialModel, grid: &Grid, k: usize, par: Parallelism) -> Result<SpectrumResult> {
    let h = discretize(model, grid)?;
    let mut result = eigen_lowest(&h, k.min(h.dim()), par)?;
    if let Some(t) = model.continuum_threshold() {
        let keep = result.eigenvalues.iter().take_while(|&&e| e < t).count();
        let dropped = result.eigenvalues.len() - keep;
        if dropped > 0 {
            debug!("{}: {dropped} level(s) at or above the continuum threshold {t} dropped", assembly::model_id(model));
            result.eigenvalues.truncate(keep);
            result.residuals.truncate(keep);
            result.eigenvectors.truncate(keep);
            result.dropped = dropped;
        }
    }
    Ok(result)
}

fn max_change(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Doubles the grid until successive eigenvalue sets agree to `target_tol`.
pub fn refine_until(
    model: &PotentialModel,
    base: &Grid,
    k: usize,
    target_tol: f64,
    par: Parallelism,
) -> Result<SpectrumResult> {
    if !(target_tol >= 1e-8) {
        return Err(Error::Parameter(format!("target tolerance {target_tol} is below 1e-8")));
    }
    let mut grid = *base;
    let mut current = solve(model, &grid, k, par)?;
    let mut grids = vec![grid.n];
    let mut history = vec![current.eigenvalues.clone()];
    let mut last_change = f64::INFINITY;
    for doubling in 1..=MAX_DOUBLINGS {
        grid = grid.refined();
        let next = solve(model, &grid, k, par)?;
        last_change = max_change(&current.eigenvalues, &next.eigenvalues);
        grids.push(grid.n);
        history.push(next.eigenvalues.clone());
        current = next;
        if doubling >= MIN_DOUBLINGS && last_change < target_tol {
            current.convergence = Some(convergence(grids, history, last_change));
            return Ok(current);
        }
    }
    Err(Error::BudgetExceeded { doublings: MAX_DOUBLINGS, last_change })
}

fn convergence(grids: Vec<usize>, history: Vec<Vec<f64>>, last_change: f64) -> Convergence {
    let h = history.len();
    let (coarse, fine) = (&history[h - 2], &history[h - 1]);
    let richardson = fine.iter().zip(coarse).map(|(f, c)| (4.0 * f - c) / 3.0).collect();
    let observed_order = (h >= 3).then(|| {
        let d1 = max_change(&history[h - 3], &history[h - 2]);
        let d2 = max_change(&history[h - 2], &history[h - 1]);
        (d1 / d2).log2()
    });
    Convergence { grids, history, richardson, observed_order: observed_order.filter(|p| p.is_finite()), last_change }
}

#[cfg(test)]
mod tests;
