//! su(1,1) generators realized as differential operators on the `x`-factor of the basis
//! `|jN⟩ = e^{−iNφ} ℜ(x)`.
//!
//! The `φ` dependence is resolved by rung bookkeeping: `J±` acting on a state with `J₀`
//! eigenvalue `M` produce a state with eigenvalue `M ± 1`, and on the `x`-factor they act as
//! `±h ∂ₓ ± g + f M + c`. The commutator `[J₊, J₋] = −2J₀` then reduces to the pair of
//! identities `h f' − f² = −1` and `h c' − f c = 0`, which hold for
//! `h = r/r'`, `f = (1 + a r²)/(1 − a r²)`, `c = −b r/(1 − a r²)`.

use crate::coordinate_map::{CoordinateMap, SINGULAR_MARGIN};
use crate::error::{Error, Result};
use crate::mass::MassProfile;
use crate::par::{map_range, map_slice, Parallelism};
use serde::{Deserialize, Serialize};

const MIN_POINTS: usize = 8;
/// Points dropped at each grid end before taking residual norms.
const EDGE_EXCLUSION: usize = 2;

/// Parameters `a, b, j, N` selecting the representation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub a: f64,
    pub b: f64,
    pub j: f64,
    /// `J₀` eigenvalue `N`.
    #[serde(rename = "N")]
    pub rung: f64,
}

impl AlgebraSpec {
    pub fn new(a: f64, b: f64, j: f64, rung: f64) -> Self {
        Self { a, b, j, rung }
    }

    pub fn casimir(&self) -> f64 {
        self.j * (self.j + 1.0)
    }

    /// `Some(n)` when `N = −j + n` with `n` a non-negative integer.
    pub fn ladder_index(&self) -> Option<u64> {
        let n = self.rung + self.j;
        (n >= -1e-12 && (n - n.round()).abs() < 1e-12).then(|| n.round() as u64)
    }
}

/// How the rung label `N` translates into the `J₀` eigenvalue of the basis state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RungConvention {
    /// `J₀|jN⟩ = N|jN⟩`.
    #[default]
    AsPrinted,
    /// `J₀ = −i∂_φ` applied to `e^{−iNφ}` gives `−N`.
    FromBasis,
}

impl RungConvention {
    fn eigenvalue(self, rung: f64) -> f64 {
        match self {
            RungConvention::AsPrinted => rung,
            RungConvention::FromBasis => -rung,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Raise,
    Lower,
}

/// Pointwise coefficient functions of the generators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorFunctions {
    pub h: f64,
    pub f: f64,
    pub c: f64,
    pub g: f64,
}

/// Samples on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    pub x0: f64,
    pub dx: f64,
    pub values: Vec<f64>,
}

impl GridFunction {
    pub fn sample<F: Fn(f64) -> f64>(x0: f64, x1: f64, points: usize, f: F) -> Self {
        let dx = (x1 - x0) / (points.max(2) - 1) as f64;
        Self { x0, dx, values: (0..points).map(|i| f(x0 + i as f64 * dx)).collect() }
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.dx
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn derivative(&self) -> Vec<f64> {
        let v = &self.values;
        let n = v.len();
        let mut d = vec![0.0; n];
        for i in 1..n - 1 {
            d[i] = (v[i + 1] - v[i - 1]) / (2.0 * self.dx);
        }
        d[0] = (v[1] - v[0]) / self.dx;
        d[n - 1] = (v[n - 1] - v[n - 2]) / self.dx;
        d
    }
}

/// `h, f, c` from the coordinate map and `g` from the mass-dependent gauge constraint.
pub fn generator_functions(
    spec: &AlgebraSpec,
    map: &CoordinateMap,
    mass: &MassProfile,
    x: f64,
) -> Result<GeneratorFunctions> {
    if map.is_complex() {
        return Err(Error::ComplexMap);
    }
    let p = mass.evaluate(x)?;
    let u = mass.mapped_coordinate(x)?;
    let jet_u = map.jet(u);
    if jet_u.singular_distance(spec.a) < SINGULAR_MARGIN {
        return Err(Error::SingularPoint { x, reason: "r = 0, r' = 0, pole of r, or 1 - a r^2 = 0" });
    }
    let jet = jet_u.to_x(&p);
    let (r, r1, r2) = (jet.r.re, jet.d1.re, jet.d2.re);
    let ar2 = spec.a * r * r;
    let q = 1.0 - ar2;
    Ok(GeneratorFunctions {
        h: r / r1,
        f: (1.0 + ar2) / q,
        c: -spec.b * r / q,
        g: (ar2 - 2.0) / (ar2 - 1.0) + p.dm * r / (2.0 * p.m * r1) - 1.5 * r * r2 / (r1 * r1),
    })
}

/// The pair `J±` bound to a map and mass profile.
#[derive(Debug, Clone)]
pub struct Generators<'a> {
    pub spec: AlgebraSpec,
    pub map: CoordinateMap,
    pub mass: &'a MassProfile,
    pub convention: RungConvention,
    /// Debug perturbation added to `g` in the raising generator only.
    pub raising_gauge_shift: f64,
    pub parallelism: Parallelism,
}

/// Generator coefficients tabulated on a grid.
#[derive(Debug, Clone)]
pub struct SampledGenerators {
    table: Vec<GeneratorFunctions>,
    gauge_shift: f64,
}

impl<'a> Generators<'a> {
    pub fn new(spec: AlgebraSpec, map: CoordinateMap, mass: &'a MassProfile) -> Self {
        Self {
            spec,
            map,
            mass,
            convention: RungConvention::default(),
            raising_gauge_shift: 0.0,
            parallelism: Parallelism::default(),
        }
    }

    pub fn with_convention(mut self, convention: RungConvention) -> Self {
        self.convention = convention;
        self
    }

    pub fn with_raising_gauge_shift(mut self, shift: f64) -> Self {
        self.raising_gauge_shift = shift;
        self
    }

    pub fn with_parallelism(mut self, parallelism: Parallelism) -> Self {
        self.parallelism = parallelism;
        self
    }

    pub fn sample(&self, grid: &GridFunction) -> Result<SampledGenerators> {
        if grid.len() < MIN_POINTS {
            return Err(Error::GridTooCoarse { points: grid.len(), min: MIN_POINTS });
        }
        if !(grid.dx > 0.0) {
            return Err(Error::InvalidGrid(format!("grid spacing {} is not positive", grid.dx)));
        }
        let table = map_range(grid.len(), self.parallelism, |i| {
            generator_functions(&self.spec, &self.map, self.mass, grid.x(i))
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
        Ok(SampledGenerators { table, gauge_shift: self.raising_gauge_shift })
    }

    /// φ-reduced action of `J±` on a function sitting on rung `N`.
    pub fn apply(&self, direction: Direction, rung: f64, fun: &GridFunction) -> Result<GridFunction> {
        let sampled = self.sample(fun)?;
        Ok(sampled.apply(direction, self.convention.eigenvalue(rung), fun))
    }

    /// `max |([J₊, J₋] + 2J₀) fn|` over the interior.
    pub fn commutator_residual(&self, rung: f64, fun: &GridFunction) -> Result<f64> {
        let sampled = self.sample(fun)?;
        let m = self.convention.eigenvalue(rung);
        let (pm, mp) = sampled.products(m, fun);
        Ok(interior_max(fun.len(), |i| pm[i] - mp[i] + 2.0 * m * fun.values[i]))
    }

    /// Difference between the two sign branches `−J₊J₋ + J₀² − J₀` and `−J₋J₊ + J₀² + J₀`.
    pub fn casimir_identity_residual(&self, rung: f64, fun: &GridFunction) -> Result<f64> {
        let sampled = self.sample(fun)?;
        let m = self.convention.eigenvalue(rung);
        let (pm, mp) = sampled.products(m, fun);
        Ok(interior_max(fun.len(), |i| {
            let v = fun.values[i];
            let upper = -pm[i] + m * m * v - m * v;
            let lower = -mp[i] + m * m * v + m * v;
            upper - lower
        }))
    }

    /// Residuals over a sequence of grids plus fitted convergence orders.
    pub fn convergence_study<F>(
        &self,
        rung: f64,
        domain: (f64, f64),
        test: F,
        sizes: &[usize],
    ) -> Result<ConvergenceStudy>
    where
        F: Fn(f64) -> f64 + Sync + Send,
    {
        let rows = map_slice(sizes, self.parallelism, |&n| -> Result<ResidualRow> {
            let fun = GridFunction::sample(domain.0, domain.1, n, &test);
            let sequential = Generators { parallelism: Parallelism::Sequential, ..self.clone() };
            Ok(ResidualRow {
                points: n,
                dx: fun.dx,
                commutator: sequential.commutator_residual(rung, &fun)?,
                casimir: sequential.casimir_identity_residual(rung, &fun)?,
            })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
        let order = |sel: fn(&ResidualRow) -> f64| fit_order(&rows.iter().map(|r| (r.dx, sel(r))).collect::<Vec<_>>());
        Ok(ConvergenceStudy { commutator_order: order(|r| r.commutator), casimir_order: order(|r| r.casimir), rows })
    }
}

impl SampledGenerators {
    pub fn apply(&self, direction: Direction, m: f64, fun: &GridFunction) -> GridFunction {
        let d = fun.derivative();
        let values = self
            .table
            .iter()
            .zip(fun.values.iter().zip(d))
            .map(|(gf, (&v, dv))| {
                let diag = gf.f * m + gf.c;
                match direction {
                    Direction::Raise => gf.h * dv + (gf.g + self.gauge_shift) * v + diag * v,
                    Direction::Lower => -gf.h * dv - gf.g * v + diag * v,
                }
            })
            .collect();
        GridFunction { x0: fun.x0, dx: fun.dx, values }
    }

    /// `(J₊J₋ fn, J₋J₊ fn)` for `fn` on the rung with `J₀` eigenvalue `m`.
    fn products(&self, m: f64, fun: &GridFunction) -> (Vec<f64>, Vec<f64>) {
        let lowered = self.apply(Direction::Lower, m, fun);
        let plus_minus = self.apply(Direction::Raise, m - 1.0, &lowered);
        let raised = self.apply(Direction::Raise, m, fun);
        let minus_plus = self.apply(Direction::Lower, m + 1.0, &raised);
        (plus_minus.values, minus_plus.values)
    }
}

fn interior_max<F: Fn(usize) -> f64>(n: usize, f: F) -> f64 {
    (EDGE_EXCLUSION..n - EDGE_EXCLUSION).map(|i| f(i).abs()).fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualRow {
    pub points: usize,
    pub dx: f64,
    pub commutator: f64,
    pub casimir: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceStudy {
    pub rows: Vec<ResidualRow>,
    pub commutator_order: f64,
    pub casimir_order: f64,
}

/// Least-squares slope of `log(err)` against `log(dx)`.
pub fn fit_order(samples: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> =
        samples.iter().filter(|(h, e)| *h > 0.0 && *e > 0.0).map(|(h, e)| (h.ln(), e.ln())).collect();
    if pts.len() < 2 {
        return f64::NAN;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}
