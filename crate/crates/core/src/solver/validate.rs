use super::{assembly::model_id, refine_until, SolverConfig};
use crate::error::{Error, Result};
use crate::potential::{Family, PotentialModel};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OffsetPolicy {
    /// Each analytic level is matched to the nearest numeric one, no shift allowed.
    Forbidden,
    /// Levels matched by index after subtracting their mean difference.
    Fitted,
}

pub fn offset_policy(family: Family) -> OffsetPolicy {
    match family {
        Family::Coulomb | Family::Morse => OffsetPolicy::Forbidden,
        _ => OffsetPolicy::Fitted,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelComparison {
    pub n: usize,
    #[serde(rename = "E_analytic")]
    pub e_analytic: f64,
    #[serde(rename = "E_numeric")]
    pub e_numeric: f64,
    pub abs_err: f64,
    pub rel_err: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub family: Family,
    pub trig: bool,
    pub model: String,
    pub mass: String,
    pub ordering: String,
    pub offset_policy: OffsetPolicy,
    pub offset: f64,
    pub tolerance: f64,
    pub levels: Vec<LevelComparison>,
    /// Analytic levels with no numeric partner within tolerance.
    pub unmatched: Vec<usize>,
    pub grid_n: usize,
    pub grids: Vec<usize>,
    pub observed_order: Option<f64>,
    pub pass: bool,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn check(&self) -> Result<()> {
        if self.pass {
            Ok(())
        } else {
            Err(Error::MatchFailure { unmatched: self.unmatched.clone() })
        }
    }
}

fn compare(n: usize, analytic: f64, numeric: f64) -> LevelComparison {
    let abs_err = (numeric - analytic).abs();
    let rel_err = if analytic == 0.0 { abs_err } else { abs_err / analytic.abs() };
    LevelComparison { n, e_analytic: analytic, e_numeric: numeric, abs_err, rel_err }
}

/// Solves the model numerically and matches its levels against the analytic spectrum.
pub fn validate_family(model: &PotentialModel, cfg: &SolverConfig) -> Result<ValidationReport> {
    if model.is_complex() {
        return Err(Error::ComplexModel);
    }
    let analytic = model.analytic_levels(cfg.levels);
    let grid = cfg.grid_for(model)?;
    let result = refine_until(model, &grid, analytic.len() + 2, cfg.target_tol, cfg.parallelism)?;
    let numeric = result.best();
    let tolerance = cfg.tolerance_for(model);
    let policy = offset_policy(model.family());
    let mut warnings = Vec::new();
    if numeric.len() < analytic.len() {
        warnings.push(format!("only {} numeric level(s) below the continuum threshold", numeric.len()));
    }

    let (offset, levels) = match policy {
        OffsetPolicy::Forbidden => {
            let levels = analytic
                .iter()
                .filter_map(|l| {
                    numeric
                        .iter()
                        .copied()
                        .min_by(|a, b| (a - l.energy).abs().total_cmp(&(b - l.energy).abs()))
                        .map(|e| compare(l.n, l.energy, e))
                })
                .collect::<Vec<_>>();
            (0.0, levels)
        }
        OffsetPolicy::Fitted => {
            let pairs: Vec<_> = analytic.iter().zip(numeric).collect();
            let offset = if pairs.is_empty() {
                0.0
            } else {
                pairs.iter().map(|(l, &e)| e - l.energy).sum::<f64>() / pairs.len() as f64
            };
            (offset, pairs.iter().map(|(l, &e)| compare(l.n, l.energy, e - offset)).collect())
        }
    };
    let mut unmatched: Vec<usize> = levels.iter().filter(|c| !(c.rel_err <= tolerance)).map(|c| c.n).collect();
    unmatched.extend(analytic.iter().skip(levels.len()).map(|l| l.n));
    if analytic.len() < cfg.levels && model.spectrum().bound_states.is_some() {
        warnings.push(format!("family has {} bound level(s), fewer than the {} requested", analytic.len(), cfg.levels));
    }
    let conv = result.convergence.as_ref();
    Ok(ValidationReport {
        family: model.family(),
        trig: model.params().trig,
        model: model_id(model),
        mass: model.mass().kind().to_string(),
        ordering: model.ordering().to_string(),
        offset_policy: policy,
        offset,
        tolerance,
        pass: unmatched.is_empty(),
        levels,
        unmatched,
        grid_n: result.grid.n,
        grids: conv.map(|c| c.grids.clone()).unwrap_or_default(),
        observed_order: conv.and_then(|c| c.observed_order),
        warnings,
    })
}
