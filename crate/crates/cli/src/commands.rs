use crate::config::{Format, RunConfig};
use crate::error::CliError;
use log::warn;
use pdm_core::algebra::{ConvergenceStudy, Generators};
use pdm_core::potential::{family_reference, FamilyInfo, PotentialModel, PotentialRow};
use pdm_core::report::{self, format_sig, Report, Table};
use pdm_core::solver::{ordering_sweep, refine_until, validate_family};
use pdm_core::Error;
use serde::Serialize;

/// Rendered report plus the pass flag that decides the exit code.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub pass: bool,
}

fn render<R: Serialize>(
    command: &str,
    cfg: &RunConfig,
    result: &R,
    pass: bool,
    table: impl FnOnce(usize) -> pdm_core::Result<Table>,
) -> Result<Outcome, CliError> {
    let digits = cfg.output.precision;
    let text = match cfg.output.format {
        Format::Json => Report::new(command, cfg, result).with_pass(pass).to_json(digits)? + "\n",
        Format::Csv => table(digits)?.to_csv()?,
    };
    Ok(Outcome { text, pass })
}

pub fn families(format: Option<Format>) -> Result<Outcome, CliError> {
    let info = family_reference();
    let text = match format {
        Some(Format::Json) => Report::new("families", &RunConfig::default(), &info).to_json(12)? + "\n",
        Some(Format::Csv) => families_table(&info).to_csv()?,
        None => families_text(&info),
    };
    Ok(Outcome { text, pass: true })
}

fn families_table(info: &[FamilyInfo]) -> Table {
    let header = [
        "family",
        "variant",
        "complex",
        "template",
        "parameters",
        "potential",
        "energy",
        "mapping",
        "domain",
        "threshold",
    ];
    let mut rows = Vec::new();
    for f in info {
        for (variant, v) in [("hyperbolic", Some(&f.hyperbolic)), ("trig", f.trig.as_ref())] {
            let Some(v) = v else { continue };
            let x = &v.formulas;
            rows.push(
                [
                    f.family.name(),
                    variant,
                    if f.complex { "true" } else { "false" },
                    v.template,
                    f.parameters,
                    x.potential,
                    x.energy,
                    x.mapping,
                    x.domain,
                    x.threshold,
                ]
                .map(String::from)
                .to_vec(),
            );
        }
    }
    Table { header: header.map(String::from).to_vec(), rows }
}

fn families_text(info: &[FamilyInfo]) -> String {
    let mut out = String::new();
    for f in info {
        let flags = match (f.complex, f.trig.is_some()) {
            (true, _) => " (complex, analytic only)",
            (false, true) => " (trig variant available)",
            _ => "",
        };
        out += &format!("{}{flags}\n  parameters: {}\n", f.family, f.parameters);
        for (label, v) in [("", Some(&f.hyperbolic)), ("trig ", f.trig.as_ref())] {
            let Some(v) = v else { continue };
            let x = &v.formulas;
            out += &format!("  {label}V(u) = {}\n  {label}{}\n  {label}levels: {}\n", x.potential, x.energy, x.mapping);
        }
        if !f.notes.is_empty() {
            out += &format!("  note: {}\n", f.notes);
        }
    }
    out + &format!("{} families\n", info.len())
}

#[derive(Debug, Serialize)]
struct PotentialOut {
    model: String,
    complex: bool,
    skipped_singular: usize,
    rows: Vec<RowOut>,
}

#[derive(Debug, Serialize)]
struct RowOut {
    x: f64,
    u: f64,
    m: f64,
    #[serde(rename = "V", skip_serializing_if = "Option::is_none")]
    v: Option<f64>,
    #[serde(rename = "V_re", skip_serializing_if = "Option::is_none")]
    v_re: Option<f64>,
    #[serde(rename = "V_im", skip_serializing_if = "Option::is_none")]
    v_im: Option<f64>,
    #[serde(rename = "V_m")]
    v_m: f64,
    #[serde(rename = "U_m")]
    u_m: f64,
}

fn model_name(model: &PotentialModel) -> String {
    pdm_core::solver::model_id(model)
}

pub fn potential(mut cfg: RunConfig) -> Result<Outcome, CliError> {
    let model = cfg.build_model()?;
    let [lo, hi] = match cfg.potential.domain.or(cfg.solver.domain) {
        Some(d) => d,
        None => {
            let (a, b) = model.default_domain()?;
            [a, b]
        }
    };
    let n = cfg.potential.samples;
    if n < 2 || !(lo < hi) {
        return Err(CliError::Usage(format!("potential needs >= 2 samples on an interval, got {n} on [{lo}, {hi}]")));
    }
    cfg.potential.domain = Some([lo, hi]);
    let complex = model.is_complex();
    let mut rows: Vec<PotentialRow> = Vec::with_capacity(n);
    let mut skipped = 0;
    for i in 0..n {
        let x = if i + 1 == n { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 };
        match model.row(x) {
            Ok(r) => rows.push(r),
            Err(Error::SingularPoint { .. }) => skipped += 1,
            Err(e) => return Err(e.into()),
        }
    }
    if skipped > 0 {
        warn!("skipped {skipped} sample(s) at singular points of the potential");
    }
    let out = PotentialOut {
        model: model_name(&model),
        complex,
        skipped_singular: skipped,
        rows: rows
            .iter()
            .map(|r| RowOut {
                x: r.x,
                u: r.u,
                m: r.m,
                v: (!complex).then_some(r.v.re),
                v_re: complex.then_some(r.v.re),
                v_im: complex.then_some(r.v.im),
                v_m: r.v_m,
                u_m: r.u_m,
            })
            .collect(),
    };
    render("potential", &cfg, &out, true, |d| report::potential_table(&rows, complex, d))
}

#[derive(Debug, Serialize)]
struct SpectrumOut {
    model: String,
    mass: String,
    ordering: String,
    levels: Vec<SpectrumLevel>,
    grid_n: usize,
    grids: Vec<usize>,
    observed_order: Option<f64>,
    last_change: Option<f64>,
    dropped: usize,
}

#[derive(Debug, Serialize)]
struct SpectrumLevel {
    n: usize,
    #[serde(rename = "E_numeric")]
    e_numeric: f64,
    #[serde(rename = "E_extrapolated")]
    e_extrapolated: f64,
    residual: f64,
    #[serde(rename = "E_analytic", skip_serializing_if = "Option::is_none")]
    e_analytic: Option<f64>,
}

pub fn spectrum(mut cfg: RunConfig) -> Result<Outcome, CliError> {
    let model = cfg.build_model()?;
    let grid = cfg.solver.grid_for(&model)?;
    cfg.solver.domain = Some([grid.x_min, grid.x_max]);
    let s = &cfg.solver;
    let result = refine_until(&model, &grid, s.levels, s.target_tol, s.parallelism)?;
    if result.dropped > 0 {
        warn!("{} level(s) at or above the continuum threshold dropped", result.dropped);
    }
    let conv = result.convergence.as_ref();
    let out = SpectrumOut {
        model: model_name(&model),
        mass: model.mass().kind().to_string(),
        ordering: model.ordering().to_string(),
        levels: (0..result.eigenvalues.len())
            .map(|n| SpectrumLevel {
                n,
                e_numeric: result.eigenvalues[n],
                e_extrapolated: result.best()[n],
                residual: result.residuals[n],
                e_analytic: model.analytic_energy(n).ok(),
            })
            .collect(),
        grid_n: result.grid.n,
        grids: conv.map(|c| c.grids.clone()).unwrap_or_default(),
        observed_order: conv.and_then(|c| c.observed_order),
        last_change: conv.map(|c| c.last_change),
        dropped: result.dropped,
    };
    render("spectrum", &cfg, &out, true, |d| report::spectrum_table(&result, d))
}

pub fn validate(mut cfg: RunConfig) -> Result<Outcome, CliError> {
    let model = cfg.build_model()?;
    if model.is_complex() {
        return Err(Error::ComplexModel.into());
    }
    let grid = cfg.solver.grid_for(&model)?;
    cfg.solver.domain = Some([grid.x_min, grid.x_max]);
    cfg.solver.tolerance = Some(cfg.solver.tolerance_for(&model));
    let r = validate_family(&model, &cfg.solver)?;
    for w in &r.warnings {
        warn!("{w}");
    }
    render("validate", &cfg, &r, r.pass, |d| report::validation_table(&r, d))
}

pub fn sweep_ordering(mut cfg: RunConfig) -> Result<Outcome, CliError> {
    if cfg.sweep.len() < 2 {
        return Err(CliError::Usage(format!("sweep-ordering needs at least 2 orderings, got {}", cfg.sweep.len())));
    }
    let model = cfg.build_model()?;
    let grid = cfg.solver.grid_for(&model)?;
    cfg.solver.domain = Some([grid.x_min, grid.x_max]);
    let orderings: Vec<_> = cfg.sweep.iter().map(|o| o.params()).collect();
    let r = ordering_sweep(&model, &orderings, &cfg.solver)?;
    cfg.solver.tolerance = Some(r.tolerance);
    render("sweep-ordering", &cfg, &r, r.pass, |d| report::sweep_table(&r, d))
}

#[derive(Debug, Serialize)]
struct AlgebraOut {
    model: String,
    map: &'static str,
    rung: f64,
    casimir: f64,
    perturb_g: f64,
    study: ConvergenceStudy,
    min_order: f64,
}

/// Middle of the family's default `u` window, mapped to `x`.
fn algebra_window(model: &PotentialModel) -> pdm_core::Result<[f64; 2]> {
    let p = model.params();
    let (lo, hi) = p.default_u_domain();
    let cap = 6.0 / p.alpha;
    let (lo, hi) = (lo.max(-cap), hi.min(cap));
    let pad = 0.2 * (hi - lo);
    let m = model.mass();
    Ok([m.inverse_mapped_coordinate(lo + pad)?, m.inverse_mapped_coordinate(hi - pad)?])
}

pub fn check_algebra(mut cfg: RunConfig) -> Result<Outcome, CliError> {
    let model = cfg.build_model()?;
    let real = *model.realization();
    if real.map.is_complex() {
        return Err(CliError::Usage(format!(
            "{} is realized through the complex map `{}`; the residual check supports real maps only",
            model.family(),
            real.map.name()
        )));
    }
    let sizes = &cfg.algebra.sizes;
    if sizes.len() < 2 || sizes.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CliError::Usage(format!("algebra sizes must be >= 2 increasing values, got {sizes:?}")));
    }
    let [x0, x1] = match cfg.algebra.domain {
        Some(d) => d,
        None => algebra_window(&model)?,
    };
    cfg.algebra.domain = Some([x0, x1]);
    let (c, s) = (0.5 * (x0 + x1), (x1 - x0) / 8.0);
    let gaussian = move |x: f64| (-0.5 * ((x - c) / s).powi(2)).exp();
    let gens = Generators::new(model.algebra_spec(), real.map, model.mass())
        .with_raising_gauge_shift(cfg.algebra.perturb_g)
        .with_parallelism(cfg.solver.parallelism);
    let study = gens.convergence_study(real.rung, (x0, x1), gaussian, sizes)?;
    let pass = study.commutator_order >= cfg.algebra.min_order;
    if !pass {
        warn!("commutator residual order {} is below {}", format_sig(study.commutator_order, 4), cfg.algebra.min_order);
    }
    let out = AlgebraOut {
        model: model_name(&model),
        map: real.map.name(),
        rung: real.rung,
        casimir: model.algebra_spec().casimir(),
        perturb_g: cfg.algebra.perturb_g,
        min_order: cfg.algebra.min_order,
        study,
    };
    render("check-algebra", &cfg, &out, pass, |d| report::algebra_table(&out.study, d))
}
