use crate::input::{self, InputFunction};
use crate::output::{self, emit, num, pair, DiscreteRow, SpectralRow, TransformDoc, SCHEMA};
use crate::{Basis, CliError, CliResult, Common, Family, Format};
use ditrans::bases::{r_gram, xi_gram_split, XiParams};
use ditrans::complex_special::c64;
use ditrans::ditransform::{
    discrete_kernel, discrete_weight, forward, forward_adaptive, inverse as inverse_transform, q_kernel, spectral_density, Diagnostics,
    SpectralData, SpectralGrid, TransformParams,
};
use ditrans::quad::{identity_defect, SpectralBasis, VectorFunctionSample};
use serde::Serialize;

pub const DEFAULT_ALPHA: f64 = 0.3;
pub const DEFAULT_BETA: f64 = 0.4;
const S_CAP: f64 = 40.0;

pub fn params(c: &Common) -> CliResult<TransformParams> {
    Ok(TransformParams::new(c.alpha.unwrap_or(DEFAULT_ALPHA), c.beta.unwrap_or(DEFAULT_BETA))?)
}

fn basis_name(b: SpectralBasis) -> &'static str {
    match b {
        SpectralBasis::Kernel => "kernel",
        SpectralBasis::Jost => "jost",
    }
}

/// Forward transform on a fixed grid when `--s-max` is given, adaptively otherwise.
pub fn forward_job(c: &Common, f: &InputFunction, p: &TransformParams) -> CliResult<SpectralData> {
    Ok(match c.s_max {
        Some(s_max) => forward(&f.sampled, p, &SpectralGrid::new(s_max, c.s_nodes.unwrap_or(16))?)?,
        None => {
            let tol = c.abs_tol.unwrap_or(1e-12 * f.norm_sq.max(f64::MIN_POSITIVE));
            forward_adaptive(&f.sampled, p, tol, S_CAP)?
        }
    })
}

#[derive(Serialize)]
struct TableDoc<'a> {
    schema: u32,
    command: &'a str,
    alpha: f64,
    beta: f64,
    columns: &'a [&'a str],
    rows: Vec<Vec<f64>>,
}

fn emit_table(c: &Common, command: &str, p: &TransformParams, columns: &[&str], rows: Vec<Vec<f64>>) -> CliResult<()> {
    let text: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|&v| num(v)).collect()).collect();
    let doc = TableDoc { schema: SCHEMA, command, alpha: p.alpha, beta: p.beta, columns, rows };
    emit(&c.output, c.format.unwrap_or(Format::Csv), columns, &text, &doc)
}

pub fn transform(c: &Common, basis: Basis) -> CliResult<()> {
    let p = params(c)?;
    let f = input::load(c.input.as_deref())?;
    let mut data = forward_job(c, &f, &p)?;
    if basis == Basis::Kernel {
        data = data.to_kernel_basis()?;
    }
    let cs = &data.continuous;
    let header = ["s", "re_phi1", "im_phi1", "re_phi2", "im_phi2"];
    let rows: Vec<Vec<String>> = (0..cs.len())
        .map(|i| vec![num(cs.s_grid[i]), num(cs.phi1[i].re), num(cs.phi1[i].im), num(cs.phi2[i].re), num(cs.phi2[i].im)])
        .collect();
    let discrete = data
        .discrete
        .iter()
        .enumerate()
        .map(|(k, th)| Ok(DiscreteRow { k, theta: pair(*th), weight: discrete_weight(&p, k)? }))
        .collect::<ditrans::Result<Vec<_>>>()?;
    let format = c.format.unwrap_or(Format::Csv);
    if format == Format::Csv {
        for d in &discrete {
            eprintln!("discrete k={}: theta = {} {:+}i (use --format json to keep it)", d.k, num(d.theta[0]), d.theta[1]);
        }
    }
    let doc = TransformDoc {
        schema: SCHEMA,
        command: "transform".into(),
        function: f.label(),
        alpha: p.alpha,
        beta: p.beta,
        basis: basis_name(cs.basis).into(),
        s_max: data.diagnostics.s_max,
        max_jost_mismatch: data.diagnostics.max_jost_mismatch,
        continuous: (0..cs.len())
            .map(|i| SpectralRow { s: cs.s_grid[i], weight: cs.weights[i], phi1: pair(cs.phi1[i]), phi2: pair(cs.phi2[i]) })
            .collect(),
        discrete,
    };
    emit(&c.output, format, &header, &rows, &doc)
}

fn read_transform(path: &str) -> CliResult<SpectralData> {
    let text = std::fs::read_to_string(path)?;
    let doc: TransformDoc = serde_json::from_str(&text)?;
    if doc.schema != SCHEMA {
        return Err(CliError::Validation(format!("unsupported schema {}", doc.schema)));
    }
    let basis = match doc.basis.as_str() {
        "kernel" => SpectralBasis::Kernel,
        "jost" => SpectralBasis::Jost,
        b => return Err(CliError::Validation(format!("unknown basis {b:?}"))),
    };
    let params = TransformParams::new(doc.alpha, doc.beta)?;
    if doc.discrete.len() != params.discrete_count() {
        return Err(CliError::Validation(format!(
            "{} discrete coefficients given, parameters need {}",
            doc.discrete.len(),
            params.discrete_count()
        )));
    }
    let rows = &doc.continuous;
    let continuous = VectorFunctionSample::new(
        rows.iter().map(|r| r.s).collect(),
        rows.iter().map(|r| c64(r.phi1[0], r.phi1[1])).collect(),
        rows.iter().map(|r| c64(r.phi2[0], r.phi2[1])).collect(),
        rows.iter().map(|r| r.weight).collect(),
        basis,
    )?;
    Ok(SpectralData {
        continuous,
        discrete: doc.discrete.iter().map(|d| c64(d.theta[0], d.theta[1])).collect(),
        params,
        diagnostics: Diagnostics { max_jost_mismatch: doc.max_jost_mismatch, s_max: doc.s_max },
    })
}

pub fn inverse(c: &Common, x_max: f64, x_step: f64) -> CliResult<()> {
    let path = c.input.as_deref().ok_or_else(|| CliError::Validation("inverse needs --input <transform.json>".into()))?;
    let data = read_transform(path)?;
    let xs = input::uniform(x_max, x_step)?;
    let vals = inverse_transform(&data, &xs)?;
    let rows = xs.iter().zip(&vals).map(|(x, v)| vec![*x, v.re, v.im]).collect();
    emit_table(c, "inverse", &data.params, &["x", "re_f", "im_f"], rows)
}

#[derive(Serialize)]
struct RoundtripDoc {
    schema: u32,
    command: &'static str,
    function: String,
    alpha: f64,
    beta: f64,
    points: usize,
    s_max: f64,
    /// max |g - f| / max(|f(x)|, 1e-6 max|f|) over the check points
    max_rel_error: f64,
    max_abs_error: f64,
    parseval_defect: f64,
    required: f64,
    pass: bool,
}

pub fn roundtrip(c: &Common, x_max: f64, x_step: f64) -> CliResult<()> {
    let p = params(c)?;
    let f = input::load(c.input.as_deref())?;
    let data = forward_job(c, &f, &p)?;
    let (xs, want) = f.reference(x_max, x_step)?;
    if xs.is_empty() {
        return Err(CliError::Validation("no check points inside |x| <= x_max".into()));
    }
    let got = inverse_transform(&data, &xs)?;
    let scale = want.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let floor = 1e-6 * scale;
    let (mut rel, mut abs): (f64, f64) = (0.0, 0.0);
    for (g, w) in got.iter().zip(&want) {
        let e = (g - w).norm();
        abs = abs.max(e);
        rel = rel.max(e / w.norm().max(floor).max(f64::MIN_POSITIVE));
    }
    let parseval_defect = (data.norm_sq()? - f.norm_sq).abs() / f.norm_sq;
    let required = c.rel_tol.unwrap_or(1e-3);
    let doc = RoundtripDoc {
        schema: SCHEMA,
        command: "roundtrip",
        function: f.label(),
        alpha: p.alpha,
        beta: p.beta,
        points: xs.len(),
        s_max: data.diagnostics.s_max,
        max_rel_error: rel,
        max_abs_error: abs,
        parseval_defect,
        required,
        pass: rel <= required,
    };
    let header = ["function", "alpha", "beta", "points", "s_max", "max_rel_error", "max_abs_error", "parseval_defect", "required", "pass"];
    let row = vec![
        doc.function.clone(),
        num(p.alpha),
        num(p.beta),
        xs.len().to_string(),
        num(doc.s_max),
        num(rel),
        num(abs),
        num(parseval_defect),
        num(required),
        doc.pass.to_string(),
    ];
    emit(&c.output, c.format.unwrap_or(Format::Csv), &header, &[row], &doc)?;
    if !doc.pass {
        return Err(CliError::Tolerance(format!("round-trip error {rel:.3e} exceeds {required:.1e} at ({}, {})", p.alpha, p.beta)));
    }
    Ok(())
}

#[derive(Serialize)]
struct GramDoc {
    schema: u32,
    command: &'static str,
    family: &'static str,
    alpha: Option<f64>,
    beta: Option<f64>,
    p: f64,
    q: f64,
    ns: Vec<i64>,
    matrix: Vec<Vec<[f64; 2]>>,
    identity_defect: f64,
}

pub fn gram(c: &Common, family: Family, n_min: i64, n_max: i64) -> CliResult<()> {
    if n_min > n_max || n_max - n_min > 64 {
        return Err(CliError::Validation(format!("need n_min <= n_max with at most 65 indices, got {n_min}..{n_max}")));
    }
    let ns: Vec<i64> = (n_min..=n_max).collect();
    let (pp, qq) = (c.p.unwrap_or(0.0), c.q.unwrap_or(0.5));
    let (g, family_name, alpha, beta) = match family {
        Family::R => (r_gram(&ns, pp, qq), "r", None, None),
        Family::Xi => {
            let xp = XiParams::new(c.alpha.unwrap_or(0.25), c.beta.unwrap_or(0.1), pp, qq)?;
            let g = xi_gram_split(&ns, &xp, 3.0, c.s_max.unwrap_or(24.0), c.s_nodes.unwrap_or(16))?;
            (g.total, "xi", Some(xp.alpha), Some(xp.beta))
        }
    };
    let mut rows = Vec::new();
    for (i, ni) in ns.iter().enumerate() {
        for (j, nj) in ns.iter().enumerate() {
            rows.push(vec![ni.to_string(), nj.to_string(), num(g[i][j].re), num(g[i][j].im)]);
        }
    }
    let doc = GramDoc {
        schema: SCHEMA,
        command: "gram",
        family: family_name,
        alpha,
        beta,
        p: pp,
        q: qq,
        identity_defect: identity_defect(&g),
        matrix: g.iter().map(|r| r.iter().map(|v| pair(*v)).collect()).collect(),
        ns,
    };
    output::emit(&c.output, c.format.unwrap_or(Format::Csv), &["n", "m", "re", "im"], &rows, &doc)
}

pub fn tabulate(c: &Common, basis: Basis) -> CliResult<()> {
    let p = params(c)?;
    let s_max = c.s_max.unwrap_or(10.0);
    let rows_n = c.s_nodes.unwrap_or(100);
    if !(s_max > 0.0) || rows_n == 0 {
        return Err(CliError::Validation("tabulate needs s_max > 0 and s_nodes >= 1".into()));
    }
    let b = match basis {
        Basis::Kernel => SpectralBasis::Kernel,
        Basis::Jost => SpectralBasis::Jost,
    };
    let mut rows = Vec::with_capacity(rows_n);
    for k in 1..=rows_n {
        let s = s_max * k as f64 / rows_n as f64;
        let m = spectral_density(&p, s, b)?;
        rows.push(vec![s, m[0][0].re, m[0][0].im, m[0][1].re, m[0][1].im, m[1][0].re, m[1][0].im, m[1][1].re, m[1][1].im]);
    }
    let cols = ["s", "re_m11", "im_m11", "re_m12", "im_m12", "re_m21", "im_m21", "re_m22", "im_m22"];
    emit_table(c, "tabulate", &p, &cols, rows)
}

pub fn kernel(c: &Common, s: Option<f64>, k: Option<usize>, x_max: f64, x_step: f64) -> CliResult<()> {
    let p = params(c)?;
    let xs = input::uniform(x_max, x_step)?;
    match (s, k) {
        (Some(s), None) => {
            if !(s > 0.0) {
                return Err(CliError::Validation(format!("need s > 0, got {s}")));
            }
            let rows = xs
                .iter()
                .map(|&x| {
                    let (q1, q2) = (q_kernel(1, &p, x, s)?, q_kernel(2, &p, x, s)?);
                    Ok(vec![x, q1.re, q1.im, q2.re, q2.im])
                })
                .collect::<ditrans::Result<Vec<_>>>()?;
            emit_table(c, "kernel", &p, &["x", "re_q1", "im_q1", "re_q2", "im_q2"], rows)
        }
        (None, Some(k)) => {
            let rows = xs
                .iter()
                .map(|&x| {
                    let r = discrete_kernel(&p, x, k)?;
                    Ok(vec![x, r.re, r.im])
                })
                .collect::<ditrans::Result<Vec<_>>>()?;
            emit_table(c, "kernel", &p, &["x", "re_r", "im_r"], rows)
        }
        _ => Err(CliError::Validation("kernel needs exactly one of --s or --k".into())),
    }
}
