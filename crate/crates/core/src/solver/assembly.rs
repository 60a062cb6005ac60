use super::eigen::Tridiagonal;
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::mass::{MassKind, OrderingParams};
use crate::potential::PotentialModel;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AssemblyMetadata {
    pub ordering: OrderingParams,
    pub mass: String,
    pub model: String,
    pub grid: Grid,
    /// `max |T_ij − T_ji|` between the two independently assembled triangles.
    pub symmetry_defect: f64,
}

/// `H = T + diag(V)` on the interior points of a grid (Dirichlet rows removed).
#[derive(Debug, Clone, PartialEq)]
pub struct DiscretizedHamiltonian {
    pub matrix: Tridiagonal,
    /// Interior grid points, one per row.
    pub x: Vec<f64>,
    pub dx: f64,
    pub metadata: AssemblyMetadata,
}

impl DiscretizedHamiltonian {
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn norm(&self) -> f64 {
        self.matrix.norm()
    }
}

/// Kinetic part `−¼[m^η D m^ε D m^ρ + m^ρ D m^ε D m^η]`, with `m^ε` on half points.
pub fn kinetic(mass: &MassKind, ordering: &OrderingParams, grid: &Grid) -> (Tridiagonal, f64) {
    let (eta, eps, rho) = (ordering.eta(), ordering.epsilon(), ordering.rho());
    let h2 = grid.dx() * grid.dx();
    let n = grid.n;
    let m: Vec<f64> = grid.points().map(|x| mass.eval(x).m).collect();
    let w: Vec<f64> = (0..n - 1).map(|i| mass.eval(0.5 * (grid.x(i) + grid.x(i + 1))).m.powf(eps)).collect();
    let me: Vec<f64> = m.iter().map(|v| v.powf(eta)).collect();
    let mr: Vec<f64> = m.iter().map(|v| v.powf(rho)).collect();
    let diag = (1..n - 1).map(|i| 0.25 * (me[i] * mr[i] + mr[i] * me[i]) * (w[i] + w[i - 1]) / h2).collect();
    let upper: Vec<f64> = (1..n - 2).map(|i| -0.25 * w[i] * (me[i] * mr[i + 1] + mr[i] * me[i + 1]) / h2).collect();
    let lower: Vec<f64> = (1..n - 2).map(|i| -0.25 * w[i] * (mr[i + 1] * me[i] + me[i + 1] * mr[i]) / h2).collect();
    let defect = upper.iter().zip(&lower).map(|(u, l)| (u - l).abs()).fold(0.0, f64::max);
    (Tridiagonal::new(diag, upper), defect)
}

pub fn discretize(model: &PotentialModel, grid: &Grid) -> Result<DiscretizedHamiltonian> {
    if model.is_complex() {
        return Err(Error::ComplexModel);
    }
    let (lo, hi) = model.mass().domain();
    if grid.x_min < lo || grid.x_max > hi {
        return Err(Error::Domain { x: if grid.x_min < lo { grid.x_min } else { grid.x_max }, lo, hi });
    }
    let (mut t, defect) = kinetic(model.mass().kind(), model.ordering(), grid);
    let x: Vec<f64> = grid.interior().collect();
    for (d, &xi) in t.diag.iter_mut().zip(&x) {
        let v = match model.potential(xi) {
            Ok(v) if v.is_finite() => v,
            Ok(_) | Err(Error::SingularPoint { .. }) => return Err(Error::SingularOnGrid { x: xi }),
            Err(e) => return Err(e),
        };
        *d += v;
    }
    let metadata = AssemblyMetadata {
        ordering: *model.ordering(),
        mass: model.mass().kind().to_string(),
        model: model_id(model),
        grid: *grid,
        symmetry_defect: defect,
    };
    Ok(DiscretizedHamiltonian { matrix: t, x, dx: grid.dx(), metadata })
}

pub fn model_id(model: &PotentialModel) -> String {
    let s = model.spec();
    let mut id = format!("{}{}(alpha={}", s.family, if s.trig { "-trig" } else { "" }, s.alpha);
    for (name, v) in [("b", s.b), ("N", s.n), ("j", s.j), ("ze2", s.ze2)] {
        if let Some(v) = v {
            id.push_str(&format!(",{name}={v}"));
        }
    }
    if model.v_m_suppressed() {
        id.push_str(",v_m=off");
    }
    id.push(')');
    id
}
