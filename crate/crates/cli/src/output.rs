use crate::{CliResult, Format};
use ditrans::C64;
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::PathBuf;

pub const SCHEMA: u32 = 1;

/// Fixed 17-significant-digit rendering used in every CSV artifact.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

fn sink(out: &Option<PathBuf>) -> CliResult<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(std::io::BufWriter::new(std::fs::File::create(p)?)),
        None => Box::new(std::io::stdout().lock()),
    })
}

pub fn write_csv(out: &Option<PathBuf>, header: &[&str], rows: &[Vec<String>]) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(sink(out)?);
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<T: Serialize>(out: &Option<PathBuf>, value: &T) -> CliResult<()> {
    let mut w = sink(out)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

/// Writes `rows` as CSV or the document as JSON.
pub fn emit<T: Serialize>(out: &Option<PathBuf>, format: Format, header: &[&str], rows: &[Vec<String>], doc: &T) -> CliResult<()> {
    match format {
        Format::Csv => write_csv(out, header, rows),
        Format::Json => write_json(out, doc),
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SpectralRow {
    pub s: f64,
    pub weight: f64,
    pub phi1: [f64; 2],
    pub phi2: [f64; 2],
}

#[derive(Debug, Serialize, Deserialize)]
pub struct DiscreteRow {
    pub k: usize,
    pub theta: [f64; 2],
    pub weight: f64,
}

/// JSON form of a transform; `inverse` reads it back.
#[derive(Debug, Serialize, Deserialize)]
pub struct TransformDoc {
    pub schema: u32,
    pub command: String,
    pub function: String,
    pub alpha: f64,
    pub beta: f64,
    pub basis: String,
    pub s_max: f64,
    pub max_jost_mismatch: f64,
    pub continuous: Vec<SpectralRow>,
    pub discrete: Vec<DiscreteRow>,
}
