//! Position-dependent mass models, the mapped coordinate `u(x) = ∫₀ˣ √m dx`,
//! and the ordering-dependent correction terms built from `m, m', m''`.
//!
//! Every profile is required to be C² on its domain; the closed-form evaluators
//! below supply the first two derivatives exactly.

use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadratureConfig};
use serde::{Deserialize, Serialize};
use std::fmt;

const POSITIVITY_SCAN: usize = 1000;
const KNOT_INTERVALS: usize = 256;
const INVERSION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MassKind {
    Constant {
        m0: f64,
    },
    /// `m0 (alpha + x²)² / (1 + x²)²`
    Rational {
        m0: f64,
        alpha: f64,
    },
    /// `m0 e^{λx}`
    Exponential {
        m0: f64,
        lambda: f64,
    },
    /// `m0 sech²(λx)`
    Soliton {
        m0: f64,
        lambda: f64,
    },
}

pub const MASS_KINDS: [&str; 4] = ["constant", "rational", "exponential", "soliton"];

impl MassKind {
    pub fn name(&self) -> &'static str {
        match self {
            MassKind::Constant { .. } => "constant",
            MassKind::Rational { .. } => "rational",
            MassKind::Exponential { .. } => "exponential",
            MassKind::Soliton { .. } => "soliton",
        }
    }

    pub fn m0(&self) -> f64 {
        match *self {
            MassKind::Constant { m0 }
            | MassKind::Rational { m0, .. }
            | MassKind::Exponential { m0, .. }
            | MassKind::Soliton { m0, .. } => m0,
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, MassKind::Constant { .. })
    }

    /// `(m, m', m'')` at `x`, no domain check.
    pub fn eval(&self, x: f64) -> MassPoint {
        match *self {
            MassKind::Constant { m0 } => MassPoint { m: m0, dm: 0.0, d2m: 0.0 },
            MassKind::Rational { m0, alpha } => {
                let s = 1.0 + x * x;
                let q = 1.0 + (alpha - 1.0) / s;
                let dq = -2.0 * x * (alpha - 1.0) / (s * s);
                let d2q = (alpha - 1.0) * (6.0 * x * x - 2.0) / (s * s * s);
                MassPoint { m: m0 * q * q, dm: 2.0 * m0 * q * dq, d2m: 2.0 * m0 * (dq * dq + q * d2q) }
            }
            MassKind::Exponential { m0, lambda } => {
                let m = m0 * (lambda * x).exp();
                MassPoint { m, dm: lambda * m, d2m: lambda * lambda * m }
            }
            MassKind::Soliton { m0, lambda } => {
                let t = (lambda * x).tanh();
                let sech2 = 1.0 - t * t;
                let m = m0 * sech2;
                MassPoint { m, dm: -2.0 * lambda * m * t, d2m: lambda * lambda * m * (4.0 * t * t - 2.0 * sech2) }
            }
        }
    }
}

impl fmt::Display for MassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MassKind::Constant { m0 } => write!(f, "constant(m0={m0})"),
            MassKind::Rational { m0, alpha } => write!(f, "rational(m0={m0},alpha={alpha})"),
            MassKind::Exponential { m0, lambda } => write!(f, "exponential(m0={m0},lambda={lambda})"),
            MassKind::Soliton { m0, lambda } => write!(f, "soliton(m0={m0},lambda={lambda})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassPoint {
    pub m: f64,
    pub dm: f64,
    pub d2m: f64,
}

/// JSON form of a mass profile, e.g.
/// `{"kind": "exponential", "m0": 1.0, "lambda": 0.5, "domain": [-8, 8]}`.
/// Without `domain` the caller picks one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MassSpec {
    pub kind: String,
    #[serde(default = "one")]
    pub m0: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<[f64; 2]>,
}

fn one() -> f64 {
    1.0
}

impl MassSpec {
    pub fn constant(m0: f64, domain: Option<[f64; 2]>) -> Self {
        Self { kind: "constant".into(), m0, lambda: None, alpha: None, domain }
    }

    pub fn from_kind(kind: &MassKind, domain: Option<[f64; 2]>) -> Self {
        let (lambda, alpha) = match *kind {
            MassKind::Constant { .. } => (None, None),
            MassKind::Rational { alpha, .. } => (None, Some(alpha)),
            MassKind::Exponential { lambda, .. } | MassKind::Soliton { lambda, .. } => (Some(lambda), None),
        };
        Self { kind: kind.name().into(), m0: kind.m0(), lambda, alpha, domain }
    }

    pub fn kind(&self) -> Result<MassKind> {
        let need = |name: &str, v: Option<f64>| {
            v.ok_or_else(|| Error::Config(format!("mass kind `{}` requires `{name}`", self.kind)))
        };
        let reject = |name: &str, v: Option<f64>| match v {
            Some(_) => Err(Error::Config(format!("mass kind `{}` does not take `{name}`", self.kind))),
            None => Ok(()),
        };
        let m0 = self.m0;
        match self.kind.as_str() {
            "constant" => {
                reject("lambda", self.lambda)?;
                reject("alpha", self.alpha)?;
                Ok(MassKind::Constant { m0 })
            }
            "rational" => {
                reject("lambda", self.lambda)?;
                Ok(MassKind::Rational { m0, alpha: need("alpha", self.alpha)? })
            }
            "exponential" => {
                reject("alpha", self.alpha)?;
                Ok(MassKind::Exponential { m0, lambda: need("lambda", self.lambda)? })
            }
            "soliton" => {
                reject("alpha", self.alpha)?;
                Ok(MassKind::Soliton { m0, lambda: need("lambda", self.lambda)? })
            }
            other => Err(Error::Config(format!("unknown mass kind `{other}`; valid kinds: {}", MASS_KINDS.join(", ")))),
        }
    }

    pub fn build(&self) -> Result<MassProfile> {
        let [lo, hi] = self.domain.ok_or_else(|| Error::Config("mass profile needs a `domain`".into()))?;
        MassProfile::new(self.kind()?, (lo, hi))
    }
}

/// Cached `(x, u)` knots for evaluating and inverting the mapped coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct MappedCoordinate {
    pub quadrature: QuadratureConfig,
    xs: Vec<f64>,
    us: Vec<f64>,
}

impl MappedCoordinate {
    pub fn knots(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.xs.iter().copied().zip(self.us.iter().copied())
    }
}

/// A closed-form mass profile on a finite domain containing the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct MassProfile {
    kind: MassKind,
    domain: (f64, f64),
    coord: MappedCoordinate,
}

impl MassProfile {
    pub fn new(kind: MassKind, domain: (f64, f64)) -> Result<Self> {
        Self::with_quadrature(kind, domain, QuadratureConfig::default())
    }

    pub fn constant(m0: f64, domain: (f64, f64)) -> Result<Self> {
        Self::new(MassKind::Constant { m0 }, domain)
    }

    pub fn with_quadrature(kind: MassKind, domain: (f64, f64), quadrature: QuadratureConfig) -> Result<Self> {
        let (lo, hi) = domain;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::Parameter(format!("mass domain [{lo}, {hi}] is not an interval")));
        }
        if !(lo <= 0.0 && 0.0 <= hi) {
            return Err(Error::Parameter(format!(
                "mass domain [{lo}, {hi}] must contain x = 0 (origin of the mapped coordinate)"
            )));
        }
        let params_finite = match kind {
            MassKind::Constant { m0 } => m0.is_finite(),
            MassKind::Rational { m0, alpha } => m0.is_finite() && alpha.is_finite(),
            MassKind::Exponential { m0, lambda } | MassKind::Soliton { m0, lambda } => {
                m0.is_finite() && lambda.is_finite()
            }
        };
        if !params_finite || kind.m0() <= 0.0 {
            return Err(Error::Parameter(format!("mass parameters of {kind} must be finite with m0 > 0")));
        }
        for i in 0..=POSITIVITY_SCAN {
            let x = lo + (hi - lo) * i as f64 / POSITIVITY_SCAN as f64;
            let p = kind.eval(x);
            if !(p.m > 0.0 && p.m.is_finite() && p.dm.is_finite() && p.d2m.is_finite()) {
                return Err(Error::Parameter(format!("{kind}: m(x) is not positive and finite at x = {x}")));
            }
        }
        let coord = build_knots(&kind, domain, quadrature)?;
        Ok(Self { kind, domain, coord })
    }

    pub fn kind(&self) -> &MassKind {
        &self.kind
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn is_constant(&self) -> bool {
        self.kind.is_constant()
    }

    pub fn coordinate(&self) -> &MappedCoordinate {
        &self.coord
    }

    pub fn check_domain(&self, x: f64) -> Result<()> {
        let (lo, hi) = self.domain;
        if x.is_finite() && x >= lo && x <= hi {
            Ok(())
        } else {
            Err(Error::Domain { x, lo, hi })
        }
    }

    pub fn evaluate(&self, x: f64) -> Result<MassPoint> {
        self.check_domain(x)?;
        Ok(self.kind.eval(x))
    }

    /// Range of `u` reachable on the domain.
    pub fn u_range(&self) -> (f64, f64) {
        (self.coord.us[0], *self.coord.us.last().unwrap())
    }

    /// `u(x) = ∫₀ˣ √m dx` by adaptive quadrature (negative for `x < 0`).
    pub fn mapped_coordinate(&self, x: f64) -> Result<f64> {
        self.check_domain(x)?;
        let xs = &self.coord.xs;
        let idx = match xs.binary_search_by(|k| k.total_cmp(&x)) {
            Ok(i) => return Ok(self.coord.us[i]),
            Err(i) => i,
        };
        let k = if idx == 0 {
            0
        } else if idx >= xs.len() || (x - xs[idx - 1]) <= (xs[idx] - x) {
            idx - 1
        } else {
            idx
        };
        let kind = self.kind;
        let tail = integrate(move |t| kind.eval(t).m.sqrt(), xs[k], x, &self.coord.quadrature)?;
        Ok(self.coord.us[k] + tail)
    }

    /// Inverts `u(x)`: monotone Hermite guess on the knot table, then bisection to 1e-12.
    pub fn inverse_mapped_coordinate(&self, u: f64) -> Result<f64> {
        let (u_lo, u_hi) = self.u_range();
        if !(u.is_finite() && u >= u_lo && u <= u_hi) {
            return Err(Error::Parameter(format!(
                "u = {u} is outside the range [{u_lo}, {u_hi}] reachable by this mass profile"
            )));
        }
        let us = &self.coord.us;
        let xs = &self.coord.xs;
        let i = match us.binary_search_by(|k| k.total_cmp(&u)) {
            Ok(i) => return Ok(xs[i]),
            Err(i) => i.clamp(1, us.len() - 1) - 1,
        };
        let (x0, x1, u0, u1) = (xs[i], xs[i + 1], us[i], us[i + 1]);
        // Hermite interpolation of x(u) with exact slopes dx/du = 1/sqrt(m).
        let hu = u1 - u0;
        let t = (u - u0) / hu;
        let s0 = hu / self.kind.eval(x0).m.sqrt();
        let s1 = hu / self.kind.eval(x1).m.sqrt();
        let (t2, t3) = (t * t, t * t * t);
        let guess =
            (2.0 * t3 - 3.0 * t2 + 1.0) * x0 + (t3 - 2.0 * t2 + t) * s0 + (-2.0 * t3 + 3.0 * t2) * x1 + (t3 - t2) * s1;
        let (mut lo, mut hi) = (x0, x1);
        if guess > lo && guess < hi {
            if self.mapped_coordinate(guess)? < u {
                lo = guess;
            } else {
                hi = guess;
            }
        }
        while hi - lo > INVERSION_TOL * x0.abs().max(x1.abs()).max(1.0) {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.mapped_coordinate(mid)? < u {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

impl MassProfile {
    /// Smallest domain whose image under `u(x)` contains `[u_lo, u_hi]` (and the origin).
    pub fn covering(kind: MassKind, u_range: (f64, f64)) -> Result<Self> {
        let q = QuadratureConfig::default();
        let reach = |target: f64, dir: f64| -> Result<f64> {
            if target * dir <= 0.0 {
                return Ok(0.0);
            }
            if let MassKind::Soliton { m0, lambda } = kind {
                let bound = m0.sqrt() * std::f64::consts::FRAC_PI_2 / lambda.abs();
                if target.abs() >= bound {
                    return Err(Error::Parameter(format!(
                        "{kind}: u(x) is confined to |u| < {bound}, u = {target} is out of reach"
                    )));
                }
            }
            let u_of = |x: f64| integrate(|t| kind.eval(t).m.sqrt(), 0.0, x, &q);
            let mut inner = 0.0;
            let mut outer = dir * 0.5;
            let mut doublings = 0;
            loop {
                let p = kind.eval(outer);
                if !(p.m > 0.0 && p.m.is_finite()) {
                    return Err(Error::Parameter(format!(
                        "{kind}: u = {target} is out of reach, m is no longer positive and finite at x = {outer}"
                    )));
                }
                if u_of(outer)?.abs() >= target.abs() {
                    break;
                }
                inner = outer;
                outer *= 2.0;
                doublings += 1;
                if doublings > 40 {
                    return Err(Error::Parameter(format!("{kind}: u(x) never reaches {target}")));
                }
            }
            while (outer - inner).abs() > 1e-9 * outer.abs().max(1.0) {
                let mid = 0.5 * (inner + outer);
                if u_of(mid)?.abs() >= target.abs() {
                    outer = mid;
                } else {
                    inner = mid;
                }
            }
            Ok(outer)
        };
        let lo = reach(u_range.0, -1.0)?;
        let hi = reach(u_range.1, 1.0)?;
        Self::with_quadrature(kind, (lo, hi), q)
    }
}

fn build_knots(kind: &MassKind, domain: (f64, f64), quadrature: QuadratureConfig) -> Result<MappedCoordinate> {
    let (lo, hi) = domain;
    let width = hi - lo;
    let n_neg = if lo < 0.0 { ((-lo / width) * KNOT_INTERVALS as f64).ceil().max(1.0) as usize } else { 0 };
    let n_pos = if hi > 0.0 { ((hi / width) * KNOT_INTERVALS as f64).ceil().max(1.0) as usize } else { 0 };
    let sqrt_m = |t: f64| kind.eval(t).m.sqrt();

    let mut neg = Vec::with_capacity(n_neg);
    let mut u = 0.0;
    let mut prev = 0.0;
    for i in 1..=n_neg {
        let x = if i == n_neg { lo } else { lo * i as f64 / n_neg as f64 };
        u += integrate(sqrt_m, prev, x, &quadrature)?;
        neg.push((x, u));
        prev = x;
    }
    let mut xs = Vec::with_capacity(n_neg + n_pos + 1);
    let mut us = Vec::with_capacity(n_neg + n_pos + 1);
    for &(x, u) in neg.iter().rev() {
        xs.push(x);
        us.push(u);
    }
    xs.push(0.0);
    us.push(0.0);
    let mut u = 0.0;
    let mut prev = 0.0;
    for i in 1..=n_pos {
        let x = if i == n_pos { hi } else { hi * i as f64 / n_pos as f64 };
        u += integrate(sqrt_m, prev, x, &quadrature)?;
        xs.push(x);
        us.push(u);
        prev = x;
    }
    Ok(MappedCoordinate { quadrature, xs, us })
}

/// von Roos ordering exponents with `η + ε + ρ = −1`; `ρ` is derived.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderingParams {
    eta: f64,
    epsilon: f64,
}

impl OrderingParams {
    pub fn new(eta: f64, epsilon: f64) -> Self {
        Self { eta, epsilon }
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn rho(&self) -> f64 {
        -1.0 - self.eta - self.epsilon
    }
}

impl fmt::Display for OrderingParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = OrderingPreset::ALL.iter().find(|p| p.params() == *self) {
            return f.write_str(p.name());
        }
        write!(f, "eta={},epsilon={}", self.eta, self.epsilon)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderingPreset {
    BenDanielDuke,
    ZhuKroemer,
    GoraWilliams,
    LiKuhn,
}

impl OrderingPreset {
    pub const ALL: [OrderingPreset; 4] = [
        OrderingPreset::BenDanielDuke,
        OrderingPreset::ZhuKroemer,
        OrderingPreset::GoraWilliams,
        OrderingPreset::LiKuhn,
    ];

    pub fn params(self) -> OrderingParams {
        match self {
            OrderingPreset::BenDanielDuke => OrderingParams::new(0.0, -1.0),
            OrderingPreset::ZhuKroemer => OrderingParams::new(-0.5, 0.0),
            OrderingPreset::GoraWilliams => OrderingParams::new(-1.0, 0.0),
            OrderingPreset::LiKuhn => OrderingParams::new(0.0, -0.5),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            OrderingPreset::BenDanielDuke => "ben-daniel-duke",
            OrderingPreset::ZhuKroemer => "zhu-kroemer",
            OrderingPreset::GoraWilliams => "gora-williams",
            OrderingPreset::LiKuhn => "li-kuhn",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == name)
    }
}

/// Ordering-dependent mass term
/// `V_m = (1/4m²)[(4ε(1+η) + (1+2η)²) m'²/(2m) − ε m'']`.
pub fn v_m(profile: &MassProfile, ordering: &OrderingParams, x: f64) -> Result<f64> {
    Ok(v_m_at(&profile.evaluate(x)?, ordering))
}

pub(crate) fn v_m_at(p: &MassPoint, ordering: &OrderingParams) -> f64 {
    let (eta, eps) = (ordering.eta(), ordering.epsilon());
    let coeff = 4.0 * eps * (1.0 + eta) + (1.0 + 2.0 * eta).powi(2);
    (coeff * p.dm * p.dm / (2.0 * p.m) - eps * p.d2m) / (4.0 * p.m * p.m)
}

/// Mass correction added to every constructed potential, in the expanded
/// (regular) form `5m'²/(32m³) − m''/(8m²) + V_m`.
pub fn u_m(profile: &MassProfile, ordering: &OrderingParams, x: f64) -> Result<f64> {
    Ok(u_m_at(&profile.evaluate(x)?, ordering))
}

pub(crate) fn u_m_at(p: &MassPoint, ordering: &OrderingParams) -> f64 {
    mass_shape_term(p) + v_m_at(p, ordering)
}

/// The ordering-independent part of `U_m`.
pub(crate) fn mass_shape_term(p: &MassPoint) -> f64 {
    5.0 * p.dm * p.dm / (32.0 * p.m.powi(3)) - p.d2m / (8.0 * p.m * p.m)
}
