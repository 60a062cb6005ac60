//! The closed-form catalog: potentials in the mapped coordinate `u`, their energy
//! formulas, and the enumeration of bound levels.

use crate::coordinate_map::CoordinateMap;
use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Coulomb,
    Oscillator,
    Morse,
    PoschlTeller,
    GenPoschlTeller,
    Scarf,
    PtScarf,
    Eckart,
    Hulthen,
    RosenMorse,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::Coulomb,
        Family::Oscillator,
        Family::Morse,
        Family::PoschlTeller,
        Family::GenPoschlTeller,
        Family::Scarf,
        Family::PtScarf,
        Family::Eckart,
        Family::Hulthen,
        Family::RosenMorse,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Coulomb => "coulomb",
            Family::Oscillator => "oscillator",
            Family::Morse => "morse",
            Family::PoschlTeller => "poschl-teller",
            Family::GenPoschlTeller => "gen-poschl-teller",
            Family::Scarf => "scarf",
            Family::PtScarf => "pt-scarf",
            Family::Eckart => "eckart",
            Family::Hulthen => "hulthen",
            Family::RosenMorse => "rosen-morse",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }

    pub fn has_trig(self) -> bool {
        matches!(
            self,
            Family::PoschlTeller | Family::GenPoschlTeller | Family::Scarf | Family::Eckart | Family::RosenMorse
        )
    }

    pub fn is_complex(self) -> bool {
        self == Family::PtScarf
    }

    /// Member of the `a = 0` class, built from the λ-route.
    pub fn is_lambda_class(self) -> bool {
        matches!(self, Family::Coulomb | Family::Oscillator | Family::Morse)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Family selection and parameters as written in a config file, e.g.
/// `{"family": "morse", "alpha": 1.0, "b": -4, "N": 4, "j": null, "trig": false}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub family: Family,
    #[serde(default = "one")]
    pub alpha: f64,
    #[serde(default)]
    pub b: Option<f64>,
    #[serde(default, rename = "N")]
    pub n: Option<f64>,
    #[serde(default)]
    pub j: Option<f64>,
    #[serde(default)]
    pub ze2: Option<f64>,
    #[serde(default)]
    pub trig: bool,
}

fn one() -> f64 {
    1.0
}

impl FamilySpec {
    pub fn new(family: Family) -> Self {
        Self { family, alpha: 1.0, b: None, n: None, j: None, ze2: None, trig: false }
    }

    pub fn coulomb(ze2: f64, j: f64) -> Self {
        Self { ze2: Some(ze2), j: Some(j), ..Self::new(Family::Coulomb) }
    }

    pub fn oscillator(b: f64, j: f64) -> Self {
        Self { b: Some(b), j: Some(j), ..Self::new(Family::Oscillator) }
    }

    /// Families parameterized by `α, b, N` (and `j` where it enters the potential).
    pub fn with(family: Family, alpha: f64, b: f64, n: f64, j: Option<f64>) -> Self {
        Self { alpha, b: Some(b), n: Some(n), j, ..Self::new(family) }
    }

    pub fn trig(mut self) -> Self {
        self.trig = true;
        self
    }

    /// Fills defaults and checks ranges.
    pub fn resolve(&self) -> Result<FamilyParams> {
        let fam = self.family;
        let bad = |msg: String| Err(Error::Parameter(format!("{fam}: {msg}")));
        if self.trig && !fam.has_trig() {
            return bad("no trigonometric variant".into());
        }
        if !(self.alpha.is_finite() && self.alpha > 0.0) {
            return bad(format!("alpha must be positive, got {}", self.alpha));
        }
        let need = |v: Option<f64>, name: &str| -> Result<f64> {
            match v {
                Some(x) if x.is_finite() => Ok(x),
                Some(x) => Err(Error::Parameter(format!("{fam}: `{name}` must be finite, got {x}"))),
                None => Err(Error::Parameter(format!("{fam}: `{name}` is required"))),
            }
        };
        let unused = |v: Option<f64>, name: &str| -> Result<()> {
            match v {
                Some(_) => Err(Error::Parameter(format!("{fam}: `{name}` is not a parameter of this family"))),
                None => Ok(()),
            }
        };
        let mut r = FamilyParams { family: fam, trig: self.trig, alpha: self.alpha, b: 0.0, n: 0.0, j: 0.0, ze2: 0.0 };
        match fam {
            Family::Coulomb => {
                unused(self.b, "b")?;
                unused(self.n, "N")?;
                r.ze2 = self.ze2.unwrap_or(1.0);
                r.j = self.j.unwrap_or(0.0);
                if !(r.ze2 > 0.0) {
                    return bad(format!("ze2 must be positive for bound states, got {}", r.ze2));
                }
                if !(r.j >= 0.0) {
                    return bad(format!("j must be >= 0, got {}", r.j));
                }
            }
            Family::Oscillator => {
                unused(self.n, "N")?;
                unused(self.ze2, "ze2")?;
                r.b = need(self.b, "b")?;
                r.j = self.j.unwrap_or(-0.25);
                if !(r.b > 0.0) {
                    return bad(format!("b must be positive (E = 2bN), got {}", r.b));
                }
                if 3.0 + 16.0 * r.j * (r.j + 1.0) < -1e-12 || r.j < -0.5 {
                    return bad(format!("j must be >= -1/4 so that 3 + 16 j(j+1) >= 0, got {}", r.j));
                }
            }
            _ => {
                unused(self.ze2, "ze2")?;
                r.b = need(self.b, "b")?;
                r.n = need(self.n, "N")?;
                r.j = match fam {
                    Family::Eckart | Family::Hulthen => self.j.unwrap_or(0.0),
                    Family::RosenMorse => need(self.j, "j")?,
                    _ => {
                        unused(self.j, "j")?;
                        0.0
                    }
                };
            }
        }
        r.check_range()?;
        Ok(r)
    }
}

/// A family with every parameter materialized and range-checked.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyParams {
    pub family: Family,
    pub trig: bool,
    pub alpha: f64,
    pub b: f64,
    pub n: f64,
    pub j: f64,
    pub ze2: f64,
}

/// A bound level: the quantum numbers it sits on and its energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Level {
    pub n: usize,
    pub b: f64,
    #[serde(rename = "N")]
    pub rung: f64,
    pub j: f64,
    pub energy: f64,
}

/// Cap on the enumeration of families with infinitely many levels.
const UNBOUNDED_PROBE: usize = 1 << 20;

impl FamilyParams {
    pub fn kappa(&self) -> f64 {
        self.b * self.n
    }

    fn check_range(&self) -> Result<()> {
        let fam = self.family;
        let bad = |msg: String| Err(Error::Parameter(format!("{fam}: {msg}")));
        let (b, n) = (self.b, self.n);
        match (fam, self.trig) {
            (Family::Morse, _) if !(b * n < 0.0) => {
                return bad(format!("bN must be negative for binding, got {}", b * n))
            }
            (Family::PoschlTeller | Family::GenPoschlTeller, false) if (b - 2.0 * n).abs() < 1.0 => {
                return bad(format!("|b - 2N| must be >= 1, got {}", (b - 2.0 * n).abs()))
            }
            (Family::PoschlTeller | Family::GenPoschlTeller | Family::Scarf, true)
                if (b - 2.0 * n).abs() < 1.0 || (b + 2.0 * n).abs() < 1.0 =>
            {
                return bad(format!(
                    "|b - 2N| and |b + 2N| must both be >= 1, got {} and {}",
                    (b - 2.0 * n).abs(),
                    (b + 2.0 * n).abs()
                ))
            }
            (Family::Eckart | Family::Hulthen, false) if !(self.kappa() > 0.0) => {
                return bad(format!("bN must be positive for binding, got {}", self.kappa()))
            }
            (Family::Eckart | Family::Hulthen, _) if !(self.j >= 0.0) => {
                return bad(format!("j must be >= 0, got {}", self.j))
            }
            (Family::RosenMorse, _) if !(self.j > 0.0) => return bad(format!("j must be positive, got {}", self.j)),
            _ => {}
        }
        if self.bound_states() == Some(0) {
            return bad("parameters support no bound state".into());
        }
        Ok(())
    }

    /// `k` and `l` of the Pöschl–Teller-type index rules.
    fn pt_kl(&self) -> (f64, f64) {
        let (b, n) = (self.b, self.n);
        match (self.family, self.trig) {
            (Family::Scarf, true) => (0.5 * (1.0 + (b + 2.0 * n).abs()), 0.5 * (1.0 + (b - 2.0 * n).abs())),
            (_, true) => (0.5 * (1.0 + (b - 2.0 * n).abs()), 0.5 * (1.0 + (b + 2.0 * n).abs())),
            (_, false) => (0.5 * (1.0 + (b - 2.0 * n).abs()), 0.5 * ((b + 2.0 * n).abs() - 1.0)),
        }
    }

    /// Quantum numbers `(b, N, j)` of level `n`, if it is bound.
    pub fn quantum_numbers(&self, idx: usize) -> Option<(f64, f64, f64)> {
        let n = idx as f64;
        let kappa = self.kappa();
        match (self.family, self.trig) {
            (Family::Coulomb, _) => {
                let rung = n + self.j + 1.0;
                Some((self.ze2 / rung, rung, self.j))
            }
            (Family::Oscillator, _) => Some((self.b, n + self.j + 1.0, self.j)),
            (Family::Morse | Family::Scarf | Family::PtScarf, false) => {
                let j = self.n.abs() - n - 1.0;
                (1.0 + 2.0 * j > 0.0).then_some((self.b, self.n, j))
            }
            (Family::PoschlTeller | Family::GenPoschlTeller, false) => {
                let (k, l) = self.pt_kl();
                let j = 0.5 * (l - k - 1.0) - n;
                (1.0 + 2.0 * j > 0.0).then_some((self.b, self.n, j))
            }
            (Family::PoschlTeller | Family::GenPoschlTeller | Family::Scarf, true) => {
                let (k, l) = self.pt_kl();
                Some((self.b, self.n, 0.5 * (k + l - 1.0) + n))
            }
            (Family::Eckart | Family::Hulthen, false) => {
                let rung = n + self.j + 1.0;
                (kappa / rung - 2.0 * rung > 0.0).then_some((kappa / rung, rung, self.j))
            }
            (Family::RosenMorse, false) => {
                let rung = self.j - n;
                (rung > 0.0 && kappa.abs() < 2.0 * rung * rung).then_some((kappa / rung, rung, self.j))
            }
            (Family::Eckart | Family::RosenMorse, true) => {
                let rung = n + self.j + 1.0;
                Some((kappa / rung, rung, self.j))
            }
            _ => None,
        }
    }

    pub fn level(&self, n: usize) -> Option<Level> {
        let (b, rung, j) = self.quantum_numbers(n)?;
        Some(Level { n, b, rung, j, energy: self.energy(b, rung, j) })
    }

    /// `None` for families with infinitely many levels.
    pub fn bound_states(&self) -> Option<usize> {
        if self.trig || matches!(self.family, Family::Coulomb | Family::Oscillator) {
            return None;
        }
        (0..UNBOUNDED_PROBE).find(|&n| self.quantum_numbers(n).is_none())
    }

    /// The family's energy formula at quantum numbers `(b, N, j)`.
    pub fn energy(&self, b: f64, rung: f64, j: f64) -> f64 {
        let a2 = self.alpha * self.alpha;
        let s = (1.0 + 2.0 * j).powi(2);
        match (self.family, self.trig) {
            (Family::Coulomb, _) => -self.ze2 * self.ze2 / (2.0 * rung * rung),
            (Family::Oscillator, _) => 2.0 * b * rung,
            (Family::PoschlTeller, false) => -a2 / 2.0 * s,
            (Family::PoschlTeller, true) => a2 / 2.0 * s,
            (Family::Morse | Family::GenPoschlTeller | Family::Scarf | Family::PtScarf, false) => -a2 / 8.0 * s,
            (Family::GenPoschlTeller | Family::Scarf, true) => a2 / 8.0 * s,
            (Family::Eckart | Family::RosenMorse, false) => -a2 / 8.0 * (b * b + 4.0 * rung * rung),
            (Family::Eckart | Family::RosenMorse, true) => -a2 / 8.0 * (b * b - 4.0 * rung * rung),
            (Family::Hulthen, _) => -a2 / 32.0 * (b - 2.0 * rung).powi(2),
            _ => f64::NAN,
        }
    }

    /// Closed-form potential in `u` (without the mass correction).
    pub fn potential_u(&self, u: f64) -> Complex64 {
        let (al, b, n, j) = (self.alpha, self.b, self.n, self.j);
        let jj = j * (j + 1.0);
        if self.trig {
            return Complex64::from(trig_potential(self.family, al, b, n, jj, u));
        }
        let c = Complex64::from;
        match self.family {
            Family::Coulomb => c(jj / (2.0 * u * u) - self.ze2 / u),
            Family::Oscillator => c((3.0 + 16.0 * jj) / (8.0 * u * u) + 0.5 * b * b * u * u),
            Family::Morse => {
                let y = (-al * u).exp();
                c(n * b * al * al * y + 0.5 * b * b * al * al * y * y)
            }
            fam => hyperbolic_potential(fam, c(al), c(b), n, jj, u),
        }
    }

    /// Potential of the `(b, N, j)` realization used against the master formula.
    pub fn realization(&self) -> Realization {
        let al = self.alpha;
        let i = Complex64::new(0.0, 1.0);
        let one = Complex64::from(1.0);
        use CoordinateMap as M;
        let (map, a, b_alg, rung, lambda) = match (self.family, self.trig) {
            (Family::Coulomb, _) => {
                let rung = self.j + 1.0;
                (M::Identity, 0.0, -self.ze2 / rung, rung, Some([1.0, 0.0, 0.0]))
            }
            (Family::Oscillator, _) => (M::HalfSquare, 0.0, -self.b, self.j + 1.0, Some([0.0, 0.5, 0.0])),
            (Family::Morse, _) => {
                (M::Exponential { alpha: al }, 0.0, self.b, self.n, Some([0.0, 0.0, 1.0 / (al * al)]))
            }
            (Family::PoschlTeller, false) => (M::Exponential { alpha: 2.0 * al }, 1.0, -self.b, self.n, None),
            (Family::PoschlTeller, true) => {
                (M::Oscillating { alpha: 2.0 * al, phase: one }, 1.0, -self.b, self.n, None)
            }
            (Family::GenPoschlTeller, false) => (M::Exponential { alpha: al }, 1.0, -self.b, self.n, None),
            (Family::GenPoschlTeller, true) => (M::Oscillating { alpha: al, phase: one }, 1.0, -self.b, self.n, None),
            (Family::Scarf, false) => (M::Exponential { alpha: al }, -1.0, -self.b, self.n, None),
            (Family::Scarf, true) => (M::Oscillating { alpha: al, phase: -i }, 1.0, -self.b, self.n, None),
            (Family::PtScarf, _) => (M::SignedExponential { alpha: al, phase: -i }, 1.0, -self.b, self.n, None),
            (Family::Eckart, false) => (M::CothHalf { alpha: al }, 1.0, -self.b, self.n, None),
            (Family::Eckart, true) => (M::CotHalf { alpha: al }, -1.0, -self.b, self.n, None),
            (Family::Hulthen, _) => (M::CothQuarter { alpha: al }, 1.0, -self.b, self.n, None),
            (Family::RosenMorse, false) => (M::CothShifted { alpha: al }, 1.0, -self.b, self.n, None),
            (Family::RosenMorse, true) => (M::CotShifted { alpha: al }, -1.0, -self.b, self.n, None),
        };
        let energy = match self.family {
            Family::Coulomb | Family::Oscillator => self.energy(self.b, rung, self.j),
            _ => self.energy(self.b, self.n, self.j),
        };
        Realization { map, a, b: b_alg, rung, j: self.j, lambda, energy }
    }

    /// Lower edge of the continuum in `u`, for families that have one.
    pub fn continuum_threshold(&self) -> Option<f64> {
        if self.trig {
            return None;
        }
        let a2 = self.alpha * self.alpha;
        match self.family {
            Family::Oscillator | Family::PtScarf => None,
            Family::Eckart => Some(-0.5 * a2 * self.kappa()),
            Family::RosenMorse => Some(-0.5 * a2 * self.kappa().abs()),
            _ => Some(0.0),
        }
    }

    /// Default solver interval in `u` when the lowest `levels` levels are wanted. Eckart and
    /// Hulthén stop at 25 decay lengths of the weakest of those levels.
    pub fn default_u_domain_for(&self, levels: usize) -> (f64, f64) {
        let (lo, hi) = self.default_u_domain();
        match (self.family, self.trig, self.continuum_threshold()) {
            (Family::Eckart | Family::Hulthen, false, Some(t)) => {
                let weakest = (0..levels.max(1)).map_while(|n| self.level(n)).last();
                match weakest {
                    Some(l) if l.energy < t => (lo, hi.min(25.0 / (2.0 * (t - l.energy)).sqrt())),
                    _ => (lo, hi),
                }
            }
            _ => (lo, hi),
        }
    }

    /// Largest default solver interval in `u`.
    pub fn default_u_domain(&self) -> (f64, f64) {
        let al = self.alpha;
        if self.trig {
            return match self.family {
                Family::PoschlTeller => (0.0, FRAC_PI_2 / al),
                Family::GenPoschlTeller | Family::Eckart => (0.0, PI / al),
                _ => (-FRAC_PI_2 / al, FRAC_PI_2 / al),
            };
        }
        match self.family {
            Family::Coulomb => (0.0, 60.0 * (1.0 + self.j).powi(2) / self.ze2),
            Family::Oscillator => (0.0, 12.0 / self.b.sqrt()),
            Family::Morse => {
                let y0 = (self.b.abs() / self.n.abs()).ln();
                ((y0 - 3.0) / al, (y0 + 30.0) / al)
            }
            Family::PoschlTeller => (0.0, 30.0 / al),
            Family::GenPoschlTeller | Family::Eckart | Family::Hulthen => (0.0, 60.0 / al),
            Family::Scarf | Family::PtScarf | Family::RosenMorse => (-30.0 / al, 30.0 / al),
        }
    }
}

/// `(map, a, b, N, j)` feeding the master formula, plus the λ-triple for the `a = 0` class
/// and the paired energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Realization {
    pub map: CoordinateMap,
    pub a: f64,
    pub b: f64,
    pub rung: f64,
    pub j: f64,
    pub lambda: Option<[f64; 3]>,
    pub energy: f64,
}

/// Hyperbolic closed forms, generic in `α` and `b` so they can be continued.
pub fn hyperbolic_potential(fam: Family, al: Complex64, b: Complex64, n: f64, jj: f64, u: f64) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    let a2 = al * al;
    let z = al * u;
    let (sh, ch) = (z.sinh(), z.cosh());
    match fam {
        Family::PoschlTeller => {
            a2 / 8.0 * ((b - 2.0 * n).powi(2) - 1.0) / (sh * sh) - a2 / 8.0 * ((b + 2.0 * n).powi(2) - 1.0) / (ch * ch)
        }
        Family::GenPoschlTeller => {
            a2 / 8.0 * (b * b + 4.0 * n * n - 1.0) / (sh * sh) - a2 / 2.0 * b * n * ch / (sh * sh)
        }
        Family::Scarf => a2 / 8.0 * (b * b - 4.0 * n * n + 1.0) / (ch * ch) - a2 / 2.0 * b * n * sh / (ch * ch),
        Family::PtScarf => -a2 / 8.0 * (b * b + 4.0 * n * n - 1.0) / (ch * ch) + i * a2 / 2.0 * b * n * sh / (ch * ch),
        Family::Eckart => -a2 / 2.0 * b * n * ch / sh + a2 / 2.0 * jj / (sh * sh),
        Family::Hulthen => {
            let y = (-z).exp();
            let q = 1.0 - y;
            (jj - b * n / 2.0) * a2 * y / (2.0 * q) + jj * a2 * y * y / (2.0 * q * q)
        }
        Family::RosenMorse => -a2 / 2.0 * b * n * sh / ch - a2 / 2.0 * jj / (ch * ch),
        _ => Complex64::new(f64::NAN, f64::NAN),
    }
}

/// Trigonometric closed forms in real arithmetic.
pub fn trig_potential(fam: Family, al: f64, b: f64, n: f64, jj: f64, u: f64) -> f64 {
    let a2 = al * al;
    let (s, c) = (al * u).sin_cos();
    match fam {
        Family::PoschlTeller => {
            a2 / 8.0 * ((b - 2.0 * n).powi(2) - 1.0) / (s * s) + a2 / 8.0 * ((b + 2.0 * n).powi(2) - 1.0) / (c * c)
        }
        Family::GenPoschlTeller => a2 / 8.0 * (b * b + 4.0 * n * n - 1.0) / (s * s) - a2 / 2.0 * b * n * c / (s * s),
        Family::Scarf => a2 / 8.0 * (b * b + 4.0 * n * n - 1.0) / (c * c) + a2 / 2.0 * b * n * s / (c * c),
        Family::Eckart => a2 / 2.0 * b * n * c / s + a2 / 2.0 * jj / (s * s),
        Family::RosenMorse => -a2 / 2.0 * b * n * s / c + a2 / 2.0 * jj / (c * c),
        _ => f64::NAN,
    }
}
