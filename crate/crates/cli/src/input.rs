//! Input functions: a small bundled dictionary or a CSV table of samples.

use crate::{CliError, CliResult};
use ditrans::bases::cauchy_beta;
use ditrans::complex_special::c64;
use ditrans::quad::SampledFunction;
use ditrans::C64;
use std::f64::consts::PI;

pub struct Bundled {
    pub name: &'static str,
    pub f: fn(f64) -> C64,
    pub norm_sq: fn() -> f64,
}

pub const DEFAULT_FUNCTION: &str = "cauchy";

pub fn dictionary() -> [Bundled; 5] {
    [
        Bundled { name: "cauchy", f: |x| c64(1.0 / (0.25 + x * x), 0.0), norm_sq: || cauchy_beta(c64(2.0, 0.0), c64(2.0, 0.0)).unwrap().re },
        Bundled {
            name: "cauchy3",
            f: |x| (c64(0.5, x) * c64(0.5, -x) * c64(0.5, -x)).inv(),
            norm_sq: || cauchy_beta(c64(3.0, 0.0), c64(3.0, 0.0)).unwrap().re,
        },
        Bundled { name: "gauss", f: |x| c64((-x * x).exp(), 0.0), norm_sq: || (PI / 2.0).sqrt() },
        Bundled { name: "odd-gauss", f: |x| c64(x * (-x * x / 2.0).exp(), 0.0), norm_sq: || PI.sqrt() / 2.0 },
        Bundled { name: "chirp", f: |x| c64(0.0, 2.0 * x).exp() * (-(x - 1.0) * (x - 1.0) / 2.0).exp(), norm_sq: || PI.sqrt() },
    ]
}

pub enum Source {
    Bundled(Bundled),
    /// Samples read from a file; the function is taken to vanish outside their range.
    Table { path: String, xs: Vec<f64>, values: Vec<C64> },
}

pub struct InputFunction {
    pub source: Source,
    pub sampled: SampledFunction,
    pub norm_sq: f64,
}

impl InputFunction {
    pub fn label(&self) -> String {
        match &self.source {
            Source::Bundled(b) => b.name.to_string(),
            Source::Table { path, .. } => path.clone(),
        }
    }

    /// Points and exact values for reconstruction checks on |x| <= x_max.
    pub fn reference(&self, x_max: f64, x_step: f64) -> CliResult<(Vec<f64>, Vec<C64>)> {
        match &self.source {
            Source::Bundled(b) => {
                let xs = uniform(x_max, x_step)?;
                let vs = xs.iter().map(|&x| (b.f)(x)).collect();
                Ok((xs, vs))
            }
            Source::Table { xs, values, .. } => Ok(xs.iter().zip(values).filter(|(x, _)| x.abs() <= x_max).map(|(x, v)| (*x, *v)).unzip()),
        }
    }
}

/// Symmetric grid -x_max, ..., x_max with the given step.
pub fn uniform(x_max: f64, step: f64) -> CliResult<Vec<f64>> {
    if !(x_max > 0.0 && step > 0.0) || x_max / step > 1e6 {
        return Err(CliError::Validation(format!("need x_max > 0 and a step giving at most 2e6 points, got {x_max}, {step}")));
    }
    let n = (x_max / step + 1e-9).floor() as i64;
    Ok((-n..=n).map(|k| k as f64 * step).collect())
}

pub fn load(input: Option<&str>) -> CliResult<InputFunction> {
    let name = input.unwrap_or(DEFAULT_FUNCTION);
    if let Some(b) = dictionary().into_iter().find(|b| b.name == name) {
        let (xs, ws) = SampledFunction::sinh_grid(0.05, 12.0);
        let sampled = SampledFunction::from_fn(b.f, xs, ws)?;
        let norm_sq = (b.norm_sq)();
        return Ok(InputFunction { source: Source::Bundled(b), sampled, norm_sq });
    }
    let path = std::path::Path::new(name);
    if !path.exists() {
        let names: Vec<&str> = dictionary().iter().map(|b| b.name).collect();
        return Err(CliError::Validation(format!("{name:?} is neither a bundled function ({}) nor a file", names.join(", "))));
    }
    let (xs, values) = read_table(path)?;
    let weights = trapezoid(&xs);
    let norm_sq = values.iter().zip(&weights).map(|(v, w)| v.norm_sqr() * w).sum();
    let sampled = SampledFunction::new(xs.clone(), values.clone(), weights)?;
    Ok(InputFunction { source: Source::Table { path: name.to_string(), xs, values }, sampled, norm_sq })
}

/// Reads `x, re, im` rows (header required; `im` may be omitted).
fn read_table(path: &std::path::Path) -> CliResult<(Vec<f64>, Vec<C64>)> {
    let mut rd = csv::ReaderBuilder::new().flexible(true).trim(csv::Trim::All).from_path(path)?;
    let mut xs = Vec::new();
    let mut vs = Vec::new();
    for (line, rec) in rd.records().enumerate() {
        let rec = rec?;
        let field = |i: usize| -> CliResult<f64> {
            match rec.get(i) {
                None if i == 2 => Ok(0.0),
                None => Err(CliError::Validation(format!("row {}: missing column {}", line + 2, i + 1))),
                Some(s) => s.parse().map_err(|_| CliError::Validation(format!("row {}: cannot parse {s:?}", line + 2))),
            }
        };
        let (x, re, im) = (field(0)?, field(1)?, field(2)?);
        if !(x.is_finite() && re.is_finite() && im.is_finite()) {
            return Err(CliError::Validation(format!("row {}: non-finite value", line + 2)));
        }
        xs.push(x);
        vs.push(c64(re, im));
    }
    if xs.len() < 3 {
        return Err(CliError::Validation("input table needs at least 3 rows".into()));
    }
    if xs.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(CliError::Validation("input abscissae must be strictly increasing".into()));
    }
    Ok((xs, vs))
}

fn trapezoid(xs: &[f64]) -> Vec<f64> {
    let n = xs.len();
    (0..n)
        .map(|i| {
            let left = if i > 0 { xs[i] - xs[i - 1] } else { 0.0 };
            let right = if i + 1 < n { xs[i + 1] - xs[i] } else { 0.0 };
            0.5 * (left + right)
        })
        .collect()
}
