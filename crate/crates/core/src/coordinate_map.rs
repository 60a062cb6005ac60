//! Coordinate templates `r(u)` with closed-form derivatives in the mapped coordinate.

use crate::mass::MassPoint;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_4;

/// Minimum distance (in `u`) to a singular point before evaluation is refused.
pub const SINGULAR_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "template", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CoordinateMap {
    /// `r = u`
    Identity,
    /// `r = u²/2`
    HalfSquare,
    /// `r = e^{−αu}`
    Exponential { alpha: f64 },
    /// `r = phase · e^{−αu}`
    SignedExponential { alpha: f64, phase: Complex64 },
    /// `r = phase · e^{−iαu}`, the `α → iα` continuation of the exponential templates.
    Oscillating { alpha: f64, phase: Complex64 },
    /// `r = coth(αu/2)`
    CothHalf { alpha: f64 },
    /// `r = coth(αu/4)`
    CothQuarter { alpha: f64 },
    /// `r = cot(αu/2)`
    CotHalf { alpha: f64 },
    /// `r = coth(αu/2 + iπ/4)`
    CothShifted { alpha: f64 },
    /// `r = cot(αu/2 + π/4)`
    CotShifted { alpha: f64 },
}

/// `r` and its first three `u`-derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapJet {
    pub r: Complex64,
    pub d1: Complex64,
    pub d2: Complex64,
    pub d3: Complex64,
}

impl MapJet {
    pub fn is_finite(&self) -> bool {
        [self.r, self.d1, self.d2, self.d3].iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Newton-style estimate of the distance (in `u`) to the nearest zero of `r`, zero of `r'`,
    /// pole of `r`, or zero of `1 − a r²`.
    pub fn singular_distance(&self, a: f64) -> f64 {
        if !self.is_finite() {
            return 0.0;
        }
        let mut d = f64::INFINITY;
        let ratio = |num: Complex64, den: Complex64| {
            if den.norm() == 0.0 {
                if num.norm() == 0.0 {
                    0.0
                } else {
                    f64::INFINITY
                }
            } else {
                num.norm() / den.norm()
            }
        };
        // zeros and simple poles of r both give |r/r'| ~ distance
        d = d.min(ratio(self.r, self.d1));
        d = d.min(ratio(self.d1, self.d2));
        if a != 0.0 {
            let q = Complex64::new(1.0, 0.0) - a * self.r * self.r;
            d = d.min(ratio(q, 2.0 * a * self.r * self.d1));
        }
        d
    }

    /// Converts `u`-derivatives into `x`-derivatives through `du/dx = √m`.
    pub fn to_x(&self, mass: &MassPoint) -> MapJet {
        let s = mass.m.sqrt();
        let (m, dm, d2m) = (mass.m, mass.dm, mass.d2m);
        MapJet {
            r: self.r,
            d1: self.d1 * s,
            d2: self.d2 * m + self.d1 * (dm / (2.0 * s)),
            d3: self.d3 * (m * s) + self.d2 * (1.5 * dm) + self.d1 * (d2m / (2.0 * s) - dm * dm / (4.0 * m * s)),
        }
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn coth_jet(z: Complex64, scale: f64) -> MapJet {
    let t = z.cosh() / z.sinh();
    let one_m = c(1.0) - t * t;
    let d1 = one_m;
    let d2 = -2.0 * t * one_m;
    let d3 = one_m * (6.0 * t * t - 2.0);
    MapJet { r: t, d1: d1 * scale, d2: d2 * scale.powi(2), d3: d3 * scale.powi(3) }
}

fn cot_jet(z: f64, scale: f64) -> MapJet {
    let t = z.cos() / z.sin();
    let one_p = 1.0 + t * t;
    let d1 = -one_p;
    let d2 = 2.0 * t * one_p;
    let d3 = -one_p * (2.0 + 6.0 * t * t);
    MapJet { r: c(t), d1: c(d1 * scale), d2: c(d2 * scale.powi(2)), d3: c(d3 * scale.powi(3)) }
}

impl CoordinateMap {
    pub fn name(&self) -> &'static str {
        match self {
            CoordinateMap::Identity => "identity",
            CoordinateMap::HalfSquare => "half-square",
            CoordinateMap::Exponential { .. } => "exponential",
            CoordinateMap::SignedExponential { .. } => "signed-exponential",
            CoordinateMap::Oscillating { .. } => "oscillating",
            CoordinateMap::CothHalf { .. } => "coth-half",
            CoordinateMap::CothQuarter { .. } => "coth-quarter",
            CoordinateMap::CotHalf { .. } => "cot-half",
            CoordinateMap::CothShifted { .. } => "coth-shifted",
            CoordinateMap::CotShifted { .. } => "cot-shifted",
        }
    }

    /// True when `r(u)` takes complex values on the real axis.
    pub fn is_complex(&self) -> bool {
        match self {
            CoordinateMap::SignedExponential { phase, .. } => phase.im != 0.0,
            CoordinateMap::Oscillating { .. } | CoordinateMap::CothShifted { .. } => true,
            _ => false,
        }
    }

    pub fn jet(&self, u: f64) -> MapJet {
        match *self {
            CoordinateMap::Identity => MapJet { r: c(u), d1: c(1.0), d2: c(0.0), d3: c(0.0) },
            CoordinateMap::HalfSquare => MapJet { r: c(0.5 * u * u), d1: c(u), d2: c(1.0), d3: c(0.0) },
            CoordinateMap::Exponential { alpha } => {
                let r = (-alpha * u).exp();
                MapJet { r: c(r), d1: c(-alpha * r), d2: c(alpha * alpha * r), d3: c(-alpha.powi(3) * r) }
            }
            CoordinateMap::SignedExponential { alpha, phase } => {
                let r = phase * (-alpha * u).exp();
                MapJet { r, d1: -alpha * r, d2: alpha * alpha * r, d3: -alpha.powi(3) * r }
            }
            CoordinateMap::Oscillating { alpha, phase } => {
                let k = Complex64::new(0.0, -alpha);
                let r = phase * (k * u).exp();
                MapJet { r, d1: k * r, d2: k * k * r, d3: k * k * k * r }
            }
            CoordinateMap::CothHalf { alpha } => coth_jet(c(0.5 * alpha * u), 0.5 * alpha),
            CoordinateMap::CothQuarter { alpha } => coth_jet(c(0.25 * alpha * u), 0.25 * alpha),
            CoordinateMap::CotHalf { alpha } => cot_jet(0.5 * alpha * u, 0.5 * alpha),
            CoordinateMap::CothShifted { alpha } => coth_jet(Complex64::new(0.5 * alpha * u, FRAC_PI_4), 0.5 * alpha),
            CoordinateMap::CotShifted { alpha } => cot_jet(0.5 * alpha * u + FRAC_PI_4, 0.5 * alpha),
        }
    }
}
