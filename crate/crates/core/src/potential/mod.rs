//! Master potential and the catalog of exactly solvable families.
//!
//! Every family potential is `V(x) = V_fam(u(x)) + U_m(x)`, with `V_fam` the
//! constant-mass shape in the mapped coordinate. The master formula, evaluated with
//! `x`-derivatives through the chain rule, reproduces `V − E` for any mass profile.

mod family;
mod reference;

pub use family::{hyperbolic_potential, trig_potential, Family, FamilyParams, FamilySpec, Level, Realization};
pub use reference::{family_reference, formulas, FamilyInfo, Formulas, VariantInfo};

use crate::algebra::AlgebraSpec;
use crate::coordinate_map::{CoordinateMap, SINGULAR_MARGIN};
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::mass::{u_m_at, v_m_at, MassKind, MassProfile, OrderingParams};
use crate::par::{map_range, Parallelism};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Right-hand side of the master formula, `V(x) − E`, in complex arithmetic.
pub fn master_potential_complex(
    spec: &AlgebraSpec,
    map: &CoordinateMap,
    mass: &MassProfile,
    ordering: &OrderingParams,
    x: f64,
) -> Result<Complex64> {
    let p = mass.evaluate(x)?;
    let u = mass.mapped_coordinate(x)?;
    let jet_u = map.jet(u);
    if jet_u.singular_distance(spec.a) < SINGULAR_MARGIN {
        return Err(Error::SingularPoint { x, reason: "r = 0, r' = 0, pole of r, or 1 - a r^2 = 0" });
    }
    let jet = jet_u.to_x(&p);
    let (r, r1, r2, r3) = (jet.r, jet.d1, jet.d2, jet.d3);
    let (a, b, n, m) = (spec.a, spec.b, spec.rung, p.m);
    let t1 = if a == 0.0 {
        (2.0 * b * n + r * b * b) * r1 * r1 / (2.0 * m * r)
    } else {
        let q = 1.0 - a * r * r;
        (2.0 * b * n + r * (b * b + a * (4.0 * n * n - 1.0) + 2.0 * a * b * n * r)) * r1 * r1 / (2.0 * m * r * q * q)
    };
    let t2 = spec.casimir() * r1 * r1 / (2.0 * m * r * r);
    let t3 = 3.0 * r2 * r2 / (8.0 * m * r1 * r1) - r3 / (4.0 * m * r1);
    Ok(t1 + t2 + t3 + v_m_at(&p, ordering))
}

/// Real form of [`master_potential_complex`]; complex templates must give a real result.
pub fn master_potential(
    spec: &AlgebraSpec,
    map: &CoordinateMap,
    mass: &MassProfile,
    ordering: &OrderingParams,
    x: f64,
) -> Result<f64> {
    let v = master_potential_complex(spec, map, mass, ordering, x)?;
    if v.im.abs() > 1e-9 * (1.0 + v.re.abs()) {
        return Err(Error::ComplexModel);
    }
    Ok(v.re)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SelectorRoute {
    /// `a = 0`: `(λ₀ + λ₁/r + λ₂/r²) r_u² = 1`.
    Lambda {
        lambda: [f64; 3],
    },
    Template {
        a: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilySelector {
    pub family: Family,
    pub trig: bool,
    pub map: CoordinateMap,
    pub route: SelectorRoute,
}

impl FamilySelector {
    pub fn a(&self) -> f64 {
        match self.route {
            SelectorRoute::Lambda { .. } => 0.0,
            SelectorRoute::Template { a } => a,
        }
    }
}

/// `max |(λ₀ + λ₁/r + λ₂/r²) r_u² − 1|` over the samples.
pub fn lambda_condition_residual(selector: &FamilySelector, u_samples: &[f64]) -> Result<f64> {
    let SelectorRoute::Lambda { lambda: [l0, l1, l2] } = selector.route else {
        return Err(Error::WrongClass);
    };
    Ok(u_samples
        .iter()
        .map(|&u| {
            let jet = selector.map.jet(u);
            ((l0 + l1 / jet.r + l2 / (jet.r * jet.r)) * jet.d1 * jet.d1 - 1.0).norm()
        })
        .fold(0.0, f64::max))
}

/// Which quantum number runs with the level index and how many levels are bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumDescriptor {
    pub family: Family,
    pub trig: bool,
    pub mapping: &'static str,
    pub energy_formula: &'static str,
    /// `None` when the family has infinitely many levels.
    pub bound_states: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialRow {
    pub x: f64,
    pub u: f64,
    pub m: f64,
    pub v: Complex64,
    pub v_m: f64,
    pub u_m: f64,
}

/// A family potential on a mass profile under one kinetic ordering.
#[derive(Debug, Clone)]
pub struct PotentialModel {
    spec: FamilySpec,
    params: FamilyParams,
    selector: FamilySelector,
    realization: Realization,
    mass: MassProfile,
    ordering: OrderingParams,
    suppress_v_m: bool,
}

impl PotentialModel {
    pub fn new(spec: &FamilySpec, mass: MassProfile, ordering: OrderingParams) -> Result<Self> {
        let params = spec.resolve()?;
        let realization = params.realization();
        let route = match realization.lambda {
            Some(lambda) => SelectorRoute::Lambda { lambda },
            None => SelectorRoute::Template { a: realization.a },
        };
        let selector = FamilySelector { family: params.family, trig: params.trig, map: realization.map, route };
        let mut effective = spec.clone();
        effective.alpha = params.alpha;
        match params.family {
            Family::Coulomb => {
                effective.ze2 = Some(params.ze2);
                effective.j = Some(params.j);
            }
            Family::Oscillator | Family::Eckart | Family::Hulthen | Family::RosenMorse => effective.j = Some(params.j),
            _ => {}
        }
        Ok(Self { spec: effective, params, selector, realization, mass, ordering, suppress_v_m: false })
    }

    /// Same family with a mass profile whose domain covers the family's default `u` interval.
    pub fn with_default_mass(spec: &FamilySpec, kind: MassKind, ordering: OrderingParams) -> Result<Self> {
        let params = spec.resolve()?;
        let mass = MassProfile::covering(kind, params.default_u_domain())?;
        Self::new(spec, mass, ordering)
    }

    /// Drops `V_m` from the potential (negative control for ordering sweeps).
    pub fn with_v_m_suppressed(mut self, suppress: bool) -> Self {
        self.suppress_v_m = suppress;
        self
    }

    pub fn with_ordering(&self, ordering: OrderingParams) -> Self {
        Self { ordering, ..self.clone() }
    }

    pub fn family(&self) -> Family {
        self.params.family
    }

    /// Effective specification with defaults filled in.
    pub fn spec(&self) -> &FamilySpec {
        &self.spec
    }

    pub fn params(&self) -> &FamilyParams {
        &self.params
    }

    pub fn selector(&self) -> &FamilySelector {
        &self.selector
    }

    pub fn realization(&self) -> &Realization {
        &self.realization
    }

    pub fn algebra_spec(&self) -> AlgebraSpec {
        AlgebraSpec::new(self.realization.a, self.realization.b, self.realization.j, self.realization.rung)
    }

    pub fn mass(&self) -> &MassProfile {
        &self.mass
    }

    pub fn ordering(&self) -> &OrderingParams {
        &self.ordering
    }

    pub fn v_m_suppressed(&self) -> bool {
        self.suppress_v_m
    }

    pub fn is_complex(&self) -> bool {
        self.params.family.is_complex()
    }

    pub fn potential_complex(&self, x: f64) -> Result<Complex64> {
        let p = self.mass.evaluate(x)?;
        let u = self.mass.mapped_coordinate(x)?;
        let mut correction = u_m_at(&p, &self.ordering);
        if self.suppress_v_m {
            correction -= v_m_at(&p, &self.ordering);
        }
        let v = self.params.potential_u(u) + correction;
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::SingularPoint { x, reason: "potential is not finite" });
        }
        Ok(v)
    }

    /// The pieces of the potential at one point.
    pub fn row(&self, x: f64) -> Result<PotentialRow> {
        let p = self.mass.evaluate(x)?;
        Ok(PotentialRow {
            x,
            u: self.mass.mapped_coordinate(x)?,
            m: p.m,
            v: self.potential_complex(x)?,
            v_m: v_m_at(&p, &self.ordering),
            u_m: u_m_at(&p, &self.ordering),
        })
    }

    pub fn potential(&self, x: f64) -> Result<f64> {
        if self.is_complex() {
            return Err(Error::ComplexModel);
        }
        Ok(self.potential_complex(x)?.re)
    }

    /// Energy paired with the realization's `(b, N, j)`.
    pub fn closed_energy(&self) -> f64 {
        self.realization.energy
    }

    pub fn master_potential(&self, x: f64) -> Result<Complex64> {
        master_potential_complex(&self.algebra_spec(), &self.selector.map, &self.mass, &self.ordering, x)
    }

    pub fn spectrum(&self) -> SpectrumDescriptor {
        let f = formulas(self.params.family, self.params.trig);
        SpectrumDescriptor {
            family: self.params.family,
            trig: self.params.trig,
            mapping: f.mapping,
            energy_formula: f.energy,
            bound_states: self.params.bound_states(),
        }
    }

    pub fn level(&self, n: usize) -> Result<Level> {
        self.params.level(n).ok_or(Error::Index { index: n, count: self.params.bound_states().unwrap_or(0) })
    }

    pub fn analytic_energy(&self, n: usize) -> Result<f64> {
        Ok(self.level(n)?.energy)
    }

    /// Up to `k` analytic levels (fewer when the family runs out of bound states).
    pub fn analytic_levels(&self, k: usize) -> Vec<Level> {
        (0..k).map_while(|n| self.params.level(n)).collect()
    }

    pub fn continuum_threshold(&self) -> Option<f64> {
        self.params.continuum_threshold()
    }

    /// The family's default interval in `u`, mapped to `x`.
    pub fn default_domain(&self) -> Result<(f64, f64)> {
        self.default_domain_for(usize::MAX)
    }

    /// Default interval in `x` sized for the lowest `levels` levels, clipped to the mass coverage.
    pub fn default_domain_for(&self, levels: usize) -> Result<(f64, f64)> {
        let (u0, u1) = self.params.default_u_domain_for(levels.min(64));
        let (lo, hi) = self.mass.u_range();
        let (u0, u1) = (u0.max(lo), u1.min(hi));
        if !(u0 < u1) {
            return Err(Error::Parameter(format!("mass profile covers u in [{lo}, {hi}], outside the family window")));
        }
        Ok((self.mass.inverse_mapped_coordinate(u0)?, self.mass.inverse_mapped_coordinate(u1)?))
    }
}

/// `max |(V_closed(x) − E) − V_master(x)|` over the grid.
pub fn consistency_check(model: &PotentialModel, grid: &Grid) -> Result<f64> {
    consistency_check_with(model, grid, Parallelism::default())
}

pub fn consistency_check_with(model: &PotentialModel, grid: &Grid, par: Parallelism) -> Result<f64> {
    let e = model.closed_energy();
    let devs = map_range(grid.n, par, |i| -> Result<f64> {
        let x = grid.x(i);
        let closed = model.potential_complex(x)? - e;
        Ok((closed - model.master_potential(x)?).norm())
    });
    devs.into_iter().try_fold(0.0, |acc, d| Ok(f64::max(acc, d?)))
}

#[cfg(test)]
mod tests;
