//! Run configuration: one JSON document, overridden by command-line flags.

use crate::error::CliError;
use clap::{Args, ValueEnum};
use pdm_core::mass::{MassProfile, MassSpec, OrderingParams, OrderingPreset};
use pdm_core::potential::{Family, FamilySpec, PotentialModel};
use pdm_core::report::DEFAULT_PRECISION;
use pdm_core::solver::SolverConfig;
use pdm_core::Parallelism;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

/// A preset name or explicit `{"eta": .., "epsilon": ..}` exponents.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OrderingSpec {
    Preset(OrderingPreset),
    Exponents(OrderingParams),
}

impl OrderingSpec {
    pub fn params(&self) -> OrderingParams {
        match self {
            OrderingSpec::Preset(p) => p.params(),
            OrderingSpec::Exponents(o) => *o,
        }
    }

    /// `ben-daniel-duke` or `eta,epsilon`.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        if let Some(p) = OrderingPreset::from_name(text) {
            return Ok(OrderingSpec::Preset(p));
        }
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        if let [eta, eps] = parts[..] {
            if let (Ok(eta), Ok(eps)) = (eta.parse::<f64>(), eps.parse::<f64>()) {
                return Ok(OrderingSpec::Exponents(OrderingParams::new(eta, eps)));
            }
        }
        let names: Vec<&str> = OrderingPreset::ALL.iter().map(|p| p.name()).collect();
        Err(CliError::Usage(format!("unknown ordering `{text}`; use one of {} or `eta,epsilon`", names.join(", "))))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    pub format: Format,
    /// Write here instead of standard output.
    pub path: Option<PathBuf>,
    /// Significant digits of every printed number.
    pub precision: usize,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self { format: Format::Json, path: None, precision: DEFAULT_PRECISION }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PotentialConfig {
    pub samples: usize,
    pub domain: Option<[f64; 2]>,
}

impl Default for PotentialConfig {
    fn default() -> Self {
        Self { samples: 201, domain: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AlgebraConfig {
    /// Grid sizes of the residual study, coarsest first.
    pub sizes: Vec<usize>,
    pub domain: Option<[f64; 2]>,
    /// Shift added to `g` in the raising generator only.
    pub perturb_g: f64,
    pub min_order: f64,
}

impl Default for AlgebraConfig {
    fn default() -> Self {
        Self { sizes: vec![201, 401, 801, 1601], domain: None, perturb_g: 0.0, min_order: 1.8 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub family: Option<FamilySpec>,
    pub mass: MassSpec,
    pub ordering: OrderingSpec,
    /// Orderings compared by `sweep-ordering`.
    pub sweep: Vec<OrderingSpec>,
    /// Debug switch: drop `V_m` from the potential.
    pub suppress_v_m: bool,
    pub solver: SolverConfig,
    pub potential: PotentialConfig,
    pub algebra: AlgebraConfig,
    pub output: OutputConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            family: None,
            mass: MassSpec::constant(1.0, None),
            ordering: OrderingSpec::Preset(OrderingPreset::BenDanielDuke),
            sweep: OrderingPreset::ALL.into_iter().map(OrderingSpec::Preset).collect(),
            suppress_v_m: false,
            solver: SolverConfig::default(),
            potential: PotentialConfig::default(),
            algebra: AlgebraConfig::default(),
            output: OutputConfig::default(),
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }

    /// Builds the model and writes the resolved family and mass domain back into the config.
    pub fn build_model(&mut self) -> Result<PotentialModel, CliError> {
        let spec = self.family.as_ref().ok_or_else(|| {
            CliError::Usage("no family given; pass --family or a config with a `family` block".into())
        })?;
        let kind = self.mass.kind()?;
        let ordering = self.ordering.params();
        let model = match self.mass.domain {
            Some([lo, hi]) => PotentialModel::new(spec, MassProfile::new(kind, (lo, hi))?, ordering)?,
            None => PotentialModel::with_default_mass(spec, kind, ordering)?,
        };
        let (lo, hi) = model.mass().domain();
        self.family = Some(model.spec().clone());
        self.mass = MassSpec::from_kind(model.mass().kind(), Some([lo, hi]));
        Ok(model.with_v_m_suppressed(self.suppress_v_m))
    }
}

/// Flags that override the config file.
#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    /// JSON run configuration; flags below take precedence.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Family name (see `families`).
    #[arg(long, help_heading = "Family")]
    pub family: Option<String>,
    /// Use the trigonometric variant.
    #[arg(long, help_heading = "Family")]
    pub trig: bool,
    #[arg(long, allow_negative_numbers = true, help_heading = "Family")]
    pub alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true, help_heading = "Family")]
    pub b: Option<f64>,
    #[arg(long = "N", allow_negative_numbers = true, help_heading = "Family")]
    pub n: Option<f64>,
    #[arg(long, allow_negative_numbers = true, help_heading = "Family")]
    pub j: Option<f64>,
    #[arg(long, allow_negative_numbers = true, help_heading = "Family")]
    pub ze2: Option<f64>,

    /// Mass kind: constant, rational, exponential or soliton.
    #[arg(long, help_heading = "Mass")]
    pub mass: Option<String>,
    #[arg(long, help_heading = "Mass")]
    pub m0: Option<f64>,
    #[arg(long, allow_negative_numbers = true, help_heading = "Mass")]
    pub lambda: Option<f64>,
    /// The `alpha` of the rational profile.
    #[arg(long, allow_negative_numbers = true, help_heading = "Mass")]
    pub mass_alpha: Option<f64>,
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true, help_heading = "Mass")]
    pub mass_domain: Option<Vec<f64>>,

    /// Preset name or `eta,epsilon`.
    #[arg(long, allow_negative_numbers = true, help_heading = "Ordering")]
    pub ordering: Option<String>,
    /// Orderings for `sweep-ordering`, separated by `;`.
    #[arg(long, value_delimiter = ';', allow_negative_numbers = true, help_heading = "Ordering")]
    pub orderings: Option<Vec<String>>,
    /// Drop V_m from the potential (negative control).
    #[arg(long, help_heading = "Ordering")]
    pub suppress_v_m: bool,

    /// Points of the coarsest solver grid.
    #[arg(long, help_heading = "Solver")]
    pub points: Option<usize>,
    #[arg(long, help_heading = "Solver")]
    pub levels: Option<usize>,
    #[arg(long, help_heading = "Solver")]
    pub target_tol: Option<f64>,
    /// Relative tolerance of `validate`, or absolute deviation of `sweep-ordering`.
    #[arg(long, help_heading = "Solver")]
    pub tolerance: Option<f64>,
    /// Solver interval in x.
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true, help_heading = "Solver")]
    pub domain: Option<Vec<f64>>,
    /// Run every loop on one thread.
    #[arg(long, help_heading = "Solver")]
    pub sequential: bool,

    #[arg(long, value_enum, help_heading = "Output")]
    pub format: Option<Format>,
    #[arg(long, short, value_name = "PATH", help_heading = "Output")]
    pub output: Option<PathBuf>,
    /// Significant digits.
    #[arg(long, help_heading = "Output")]
    pub precision: Option<usize>,
}

fn pair(v: &[f64]) -> [f64; 2] {
    [v[0], v[1]]
}

impl Overrides {
    /// Loads `--config` (or the defaults) and applies every flag on top.
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        self.apply(&mut cfg)?;
        Ok(cfg)
    }

    pub fn apply(&self, cfg: &mut RunConfig) -> Result<(), CliError> {
        if let Some(name) = &self.family {
            let family = Family::from_name(name).ok_or_else(|| {
                let names: Vec<&str> = Family::ALL.iter().map(|f| f.name()).collect();
                CliError::Usage(format!("unknown family `{name}`; valid families: {}", names.join(", ")))
            })?;
            if cfg.family.as_ref().map(|f| f.family) != Some(family) {
                cfg.family = Some(FamilySpec::new(family));
            }
        }
        let touches_family = self.trig || [self.alpha, self.b, self.n, self.j, self.ze2].iter().any(Option::is_some);
        if touches_family {
            let spec = cfg
                .family
                .as_mut()
                .ok_or_else(|| CliError::Usage("family parameters given without a family".into()))?;
            spec.trig |= self.trig;
            if let Some(v) = self.alpha {
                spec.alpha = v;
            }
            for (slot, v) in
                [(&mut spec.b, self.b), (&mut spec.n, self.n), (&mut spec.j, self.j), (&mut spec.ze2, self.ze2)]
            {
                if v.is_some() {
                    *slot = v;
                }
            }
        }

        if let Some(kind) = &self.mass {
            if *kind != cfg.mass.kind {
                cfg.mass = MassSpec { kind: kind.clone(), m0: cfg.mass.m0, lambda: None, alpha: None, domain: None };
            }
        }
        if let Some(v) = self.m0 {
            cfg.mass.m0 = v;
        }
        if self.lambda.is_some() {
            cfg.mass.lambda = self.lambda;
        }
        if self.mass_alpha.is_some() {
            cfg.mass.alpha = self.mass_alpha;
        }
        if let Some(d) = &self.mass_domain {
            cfg.mass.domain = Some(pair(d));
        }

        if let Some(o) = &self.ordering {
            cfg.ordering = OrderingSpec::parse(o)?;
        }
        if let Some(list) = &self.orderings {
            cfg.sweep = list.iter().map(|o| OrderingSpec::parse(o)).collect::<Result<_, _>>()?;
        }
        cfg.suppress_v_m |= self.suppress_v_m;

        let s = &mut cfg.solver;
        if let Some(v) = self.points {
            s.points = v;
        }
        if let Some(v) = self.levels {
            s.levels = v;
        }
        if let Some(v) = self.target_tol {
            s.target_tol = v;
        }
        if self.tolerance.is_some() {
            s.tolerance = self.tolerance;
        }
        if let Some(d) = &self.domain {
            s.domain = Some(pair(d));
        }
        if self.sequential {
            s.parallelism = Parallelism::Sequential;
        }

        if let Some(f) = self.format {
            cfg.output.format = f;
        }
        if self.output.is_some() {
            cfg.output.path = self.output.clone();
        }
        if let Some(p) = self.precision {
            cfg.output.precision = p;
        }
        if !(1..=17).contains(&cfg.output.precision) {
            return Err(CliError::Usage(format!("precision must lie in 1..=17, got {}", cfg.output.precision)));
        }
        Ok(())
    }
}
