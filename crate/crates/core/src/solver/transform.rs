use super::SpectrumResult;
use crate::error::{Error, Result};
use crate::potential::PotentialModel;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransformedState {
    pub n: usize,
    pub x: Vec<f64>,
    /// `ℜ(x) = −r'² ψ/(2 m r²)`.
    pub values: Vec<f64>,
    pub nodes: usize,
}

/// Sign changes, ignoring entries below `1e-8` of the peak magnitude.
pub fn count_nodes(v: &[f64]) -> usize {
    let peak = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut last = 0.0;
    let mut nodes = 0;
    for &x in v {
        if x.abs() <= 1e-8 * peak {
            continue;
        }
        if last != 0.0 && (x > 0.0) != (last > 0.0) {
            nodes += 1;
        }
        last = x;
    }
    nodes
}

/// Maps numeric eigenvectors `ψ` to the basis factor `ℜ`.
pub fn eigenvector_transform(result: &SpectrumResult, model: &PotentialModel) -> Result<Vec<TransformedState>> {
    if result.eigenvectors.is_empty() && !result.eigenvalues.is_empty() {
        return Err(Error::Parameter("spectrum result carries no eigenvectors".into()));
    }
    let map = model.selector().map;
    let factors = result
        .x
        .iter()
        .map(|&x| {
            let p = model.mass().evaluate(x)?;
            let jet = map.jet(model.mass().mapped_coordinate(x)?).to_x(&p);
            let f = -(jet.d1 * jet.d1) / (2.0 * p.m * jet.r * jet.r);
            if !(f.re.is_finite() && f.im.is_finite()) || jet.r.norm() == 0.0 {
                return Err(Error::SingularOnGrid { x });
            }
            if f.im.abs() > 1e-9 * f.norm() {
                return Err(Error::ComplexMap);
            }
            Ok(f.re)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(result
        .eigenvectors
        .iter()
        .enumerate()
        .map(|(n, psi)| {
            let values: Vec<f64> = psi.iter().zip(&factors).map(|(p, f)| p * f).collect();
            TransformedState { n, x: result.x.clone(), nodes: count_nodes(&values), values }
        })
        .collect())
}
