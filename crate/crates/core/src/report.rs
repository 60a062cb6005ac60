//! Report envelopes, CSV tables and fixed-precision number formatting.

use crate::algebra::ConvergenceStudy;
use crate::error::{Error, Result};
use crate::potential::PotentialRow;
use crate::solver::{SpectrumResult, SweepReport, ValidationReport};
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: &str = "1";
pub const DEFAULT_PRECISION: usize = 12;

fn check_digits(digits: usize) -> Result<()> {
    if (1..=17).contains(&digits) {
        Ok(())
    } else {
        Err(Error::Config(format!("precision must lie in 1..=17 significant digits, got {digits}")))
    }
}

/// Rounds to `digits` significant decimal digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits.clamp(1, 17) - 1, x).parse().unwrap_or(x)
}

/// Shortest decimal text of `x` rounded to `digits` significant digits.
pub fn format_sig(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let r = round_sig(x, digits) + 0.0;
    if r == 0.0 || (1e-5..1e16).contains(&r.abs()) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

/// Rounds every float inside a JSON value in place.
pub fn round_json(value: &mut Value, digits: usize) {
    match value {
        Value::Number(n) if n.is_f64() => {
            if let Some(r) = n.as_f64().and_then(|x| serde_json::Number::from_f64(round_sig(x, digits) + 0.0)) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(|v| round_json(v, digits)),
        Value::Object(map) => map.values_mut().for_each(|v| round_json(v, digits)),
        _ => {}
    }
}

/// Top-level JSON document written by every command.
#[derive(Debug, Serialize)]
pub struct Report<'a, C: Serialize, R: Serialize> {
    pub schema_version: &'static str,
    pub command: &'a str,
    pub config: &'a C,
    pub pass: Option<bool>,
    pub result: &'a R,
}

impl<'a, C: Serialize, R: Serialize> Report<'a, C, R> {
    pub fn new(command: &'a str, config: &'a C, result: &'a R) -> Self {
        Self { schema_version: SCHEMA_VERSION, command, config, pass: None, result }
    }

    pub fn with_pass(mut self, pass: bool) -> Self {
        self.pass = Some(pass);
        self
    }

    /// Pretty JSON; the `config` block is kept at full precision so it reproduces the run.
    pub fn to_json(&self, digits: usize) -> Result<String> {
        check_digits(digits)?;
        let mut value = serde_json::to_value(self).map_err(|e| Error::Config(e.to_string()))?;
        if let Some(result) = value.get_mut("result") {
            round_json(result, digits);
        }
        serde_json::to_string_pretty(&value).map_err(|e| Error::Config(e.to_string()))
    }
}

/// A header plus string rows, rendered as CSV.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Self { header: header.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Config(format!("csv: {e}"));
        w.write_record(&self.header).map_err(io)?;
        for row in &self.rows {
            w.write_record(row).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Config(format!("csv: {e}")))?;
        String::from_utf8(bytes).map_err(|e| Error::Config(format!("csv: {e}")))
    }
}

pub const VALIDATION_COLUMNS: [&str; 9] =
    ["family", "ordering", "n", "E_analytic", "E_numeric", "abs_err", "rel_err", "offset", "grid_n"];

pub fn validation_table(report: &ValidationReport, digits: usize) -> Result<Table> {
    check_digits(digits)?;
    let f = |x: f64| format_sig(x, digits);
    let family = if report.trig { format!("{}-trig", report.family) } else { report.family.to_string() };
    let mut t = Table::new(&VALIDATION_COLUMNS);
    for l in &report.levels {
        t.rows.push(vec![
            family.clone(),
            report.ordering.clone(),
            l.n.to_string(),
            f(l.e_analytic),
            f(l.e_numeric),
            f(l.abs_err),
            f(l.rel_err),
            f(report.offset),
            report.grid_n.to_string(),
        ]);
    }
    Ok(t)
}

/// One row per ordering and level; `max_abs_dev` compares against every other ordering.
pub fn sweep_table(report: &SweepReport, digits: usize) -> Result<Table> {
    check_digits(digits)?;
    let mut t = Table::new(&["family", "mass", "ordering", "n", "E_numeric", "max_abs_dev"]);
    for (i, spectrum) in report.spectra.iter().enumerate() {
        for (n, e) in spectrum.iter().enumerate() {
            let dev = report.spectra.iter().filter_map(|other| other.get(n)).map(|o| (o - e).abs()).fold(0.0, f64::max);
            t.rows.push(vec![
                report.family.to_string(),
                report.mass.clone(),
                report.orderings[i].clone(),
                n.to_string(),
                format_sig(*e, digits),
                format_sig(dev, digits),
            ]);
        }
    }
    Ok(t)
}

pub fn algebra_table(study: &ConvergenceStudy, digits: usize) -> Result<Table> {
    check_digits(digits)?;
    let mut t = Table::new(&["points", "dx", "commutator_residual", "casimir_residual"]);
    for r in &study.rows {
        t.rows.push(vec![
            r.points.to_string(),
            format_sig(r.dx, digits),
            format_sig(r.commutator, digits),
            format_sig(r.casimir, digits),
        ]);
    }
    Ok(t)
}

/// `x, u, m, V, V_m, U_m`; complex potentials split `V` into `V_re, V_im`.
pub fn potential_table(rows: &[PotentialRow], complex: bool, digits: usize) -> Result<Table> {
    check_digits(digits)?;
    let f = |x: f64| format_sig(x, digits);
    let mut t = if complex {
        Table::new(&["x", "u", "m", "V_re", "V_im", "V_m", "U_m"])
    } else {
        Table::new(&["x", "u", "m", "V", "V_m", "U_m"])
    };
    for r in rows {
        let mut row = vec![f(r.x), f(r.u), f(r.m), f(r.v.re)];
        if complex {
            row.push(f(r.v.im));
        }
        row.extend([f(r.v_m), f(r.u_m)]);
        t.rows.push(row);
    }
    Ok(t)
}

/// Finest-grid eigenvalues next to their extrapolated values.
pub fn spectrum_table(result: &SpectrumResult, digits: usize) -> Result<Table> {
    check_digits(digits)?;
    let mut t = Table::new(&["n", "E_numeric", "E_extrapolated", "residual", "grid_n"]);
    for (n, e) in result.eigenvalues.iter().enumerate() {
        t.rows.push(vec![
            n.to_string(),
            format_sig(*e, digits),
            format_sig(result.best()[n], digits),
            format_sig(result.residuals[n], digits),
            result.grid.n.to_string(),
        ]);
    }
    Ok(t)
}
