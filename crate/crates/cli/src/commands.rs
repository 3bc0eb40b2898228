//! The four subcommands, rendered to strings.

use num_complex::Complex64;
use qmittag::qml::{convergence_radius, q_ml_extended, series_term_ratio, ExtendedMLParams};
use qmittag::verify::run_suite;
use qmittag::{EvalResult, Truncation};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::targets::{self, Bindings};
use crate::{Format, Grid};

pub const TABLE_HEADER: &str = "sweep_param,value_re,value_im,terms_used,converged";
pub const SCAN_HEADER: &str = "fraction,abs_u,terms_used,empirical_ratio,theoretical_ratio,converged";

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalRecord {
    pub value_re: f64,
    pub value_im: f64,
    pub terms_used: usize,
    pub tail_estimate: f64,
    pub converged: bool,
}

impl From<&EvalResult> for EvalRecord {
    fn from(r: &EvalResult) -> Self {
        Self {
            value_re: r.value.re,
            value_im: r.value.im,
            terms_used: r.terms_used,
            tail_estimate: r.tail_estimate,
            converged: r.converged,
        }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("records serialize");
    s.push('\n');
    s
}

pub fn eval(target: &str, b: &Bindings, t: &Truncation, format: Format) -> Result<String, CliError> {
    let r = targets::find(target)?.eval(b, t)?;
    let rec = EvalRecord::from(&r);
    Ok(match format {
        Format::Csv => format!(
            "value_re,value_im,terms_used,tail_estimate,converged\n{},{},{},{},{}\n",
            num(rec.value_re),
            num(rec.value_im),
            rec.terms_used,
            num(rec.tail_estimate),
            rec.converged
        ),
        _ => json(&rec),
    })
}

pub struct TableSpec {
    pub target: String,
    pub sweep: String,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub grid: Grid,
}

impl TableSpec {
    pub fn points(&self) -> Result<Vec<f64>, CliError> {
        let usage = |m: String| Err(CliError::Usage(m));
        if self.count < 2 {
            return usage(format!("--count must be at least 2, got {}", self.count));
        }
        if !(self.start < self.stop) || !self.start.is_finite() || !self.stop.is_finite() {
            return usage(format!("need start < stop, got [{}, {}]", self.start, self.stop));
        }
        let n = (self.count - 1) as f64;
        Ok(match self.grid {
            Grid::Linear => {
                let h = (self.stop - self.start) / n;
                (0..self.count)
                    .map(|i| if i + 1 == self.count { self.stop } else { self.start + h * i as f64 })
                    .collect()
            }
            Grid::Log => {
                if !(self.start > 0.0) {
                    return usage(format!("a log grid needs start > 0, got {}", self.start));
                }
                let (a, z) = (self.start.ln(), self.stop.ln());
                (0..self.count)
                    .map(|i| if i + 1 == self.count { self.stop } else { (a + (z - a) * i as f64 / n).exp() })
                    .collect()
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub sweep_param: f64,
    pub value_re: Option<f64>,
    pub value_im: Option<f64>,
    pub terms_used: Option<usize>,
    pub converged: bool,
}

/// Returns the rendered table and whether every row failed.
pub fn table(spec: &TableSpec, b: &Bindings, t: &Truncation, format: Format) -> Result<(String, bool), CliError> {
    let target = targets::find(&spec.target)?;
    if !target.declares(&spec.sweep) {
        return Err(CliError::Usage(format!("{} has no parameter '{}'", target.name, spec.sweep)));
    }
    let mut rows = Vec::with_capacity(spec.count);
    for x in spec.points()? {
        let mut bind = b.clone();
        bind.set(&spec.sweep, format!("{x:?}"));
        rows.push(match target.eval(&bind, t) {
            Ok(r) => TableRow {
                sweep_param: x,
                value_re: Some(r.value.re),
                value_im: Some(r.value.im),
                terms_used: Some(r.terms_used),
                converged: r.converged,
            },
            Err(e @ CliError::Usage(_)) => return Err(e),
            Err(_) => TableRow { sweep_param: x, value_re: None, value_im: None, terms_used: None, converged: false },
        });
    }
    let all_failed = rows.iter().all(|r| r.value_re.is_none());
    let out = match format {
        Format::Json => json(&rows),
        _ => {
            let mut s = format!("{TABLE_HEADER}\n");
            for r in &rows {
                let opt = |v: Option<f64>| v.map(num).unwrap_or_default();
                let terms = r.terms_used.map(|n| n.to_string()).unwrap_or_default();
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    num(r.sweep_param),
                    opt(r.value_re),
                    opt(r.value_im),
                    terms,
                    r.converged
                ));
            }
            s
        }
    };
    Ok((out, all_failed))
}

/// Returns the rendered report and whether every identity passed.
pub fn verify(seed: u64, trials: Option<usize>, format: Format) -> Result<(String, bool), CliError> {
    let report = run_suite(seed, trials)?;
    let out = match format {
        Format::Json => json(&report),
        _ => report.to_text(),
    };
    Ok((out, report.all_pass()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub fraction: f64,
    pub abs_u: f64,
    pub terms_used: Option<usize>,
    pub empirical_ratio: f64,
    pub theoretical_ratio: f64,
    pub converged: bool,
}

/// Term index at which the empirical ratio is read off.
pub const SCAN_TERM: usize = 40;

pub fn scan(fractions: &[f64], b: &Bindings, t: &Truncation, format: Format) -> Result<String, CliError> {
    let p = ExtendedMLParams::new(
        b.real("eta")?,
        b.complex_or("kappa", 1.0)?,
        b.complex_or("sigma", 0.5)?,
        b.complex_or("c", 1.5)?,
    )?;
    let q = b.q()?;
    let m = if b.has("m") { b.uint("m")? as usize } else { SCAN_TERM };
    let radius = convergence_radius(p.eta(), q);
    let mut rows = Vec::with_capacity(fractions.len());
    for &f in fractions {
        if !(f >= 0.0 && f.is_finite()) {
            return Err(CliError::Usage(format!("fractions must be nonnegative, got {f}")));
        }
        let u = Complex64::new(f * radius, 0.0);
        let ratio = series_term_ratio(u, &p, q, m)?;
        let (terms, converged) = match q_ml_extended(u, &p, q, t) {
            Ok(r) => (Some(r.terms_used), r.converged),
            Err(_) => (None, false),
        };
        rows.push(ScanRow {
            fraction: f,
            abs_u: u.norm(),
            terms_used: terms,
            empirical_ratio: ratio,
            theoretical_ratio: f,
            converged,
        });
    }
    Ok(match format {
        Format::Json => json(&rows),
        _ => {
            let mut s = format!("{SCAN_HEADER}\n");
            for r in &rows {
                s.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    num(r.fraction),
                    num(r.abs_u),
                    r.terms_used.map(|n| n.to_string()).unwrap_or_default(),
                    num(r.empirical_ratio),
                    num(r.theoretical_ratio),
                    r.converged
                ));
            }
            s
        }
    })
}
