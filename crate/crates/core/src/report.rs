//! Serializable results. JSON output keeps a fixed key order, writes every
//! float at full round-trip precision and writes absent values as `null`.
//! Text output rounds to six significant digits.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::gap::SupremalType;
use crate::metric::{DistanceMatrix, ValidationReport};

pub const SCHEMA: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Text,
}

/// Every command's output: serializable to JSON and printable as text.
pub trait Render: Serialize {
    fn text(&self) -> String;
}

pub fn render<R: Render>(r: &R, format: OutputFormat) -> Vec<u8> {
    match format {
        OutputFormat::Json => {
            let mut out = serde_json::to_vec_pretty(r).expect("report types serialize");
            out.push(b'\n');
            out
        }
        OutputFormat::Text => r.text().into_bytes(),
    }
}

/// SHA-256 over the point count (u64 little endian) and the row-major entries.
pub fn input_digest(d: &DistanceMatrix) -> String {
    let mut h = Sha256::new();
    h.update((d.n_points() as u64).to_le_bytes());
    for v in d.entries() {
        h.update(v.to_le_bytes());
    }
    h.finalize()
        .iter()
        .fold(String::with_capacity(64), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
}

/// Six significant digits.
pub fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if (-4..6).contains(&mag) {
        format!("{:.*}", (5 - mag).max(0) as usize, x)
    } else {
        format!("{x:.5e}")
    }
}

fn vec6(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|&x| sig6(x)).collect();
    format!("[{}]", parts.join(", "))
}

fn opt6(v: Option<f64>) -> String {
    v.map_or_else(|| "n/a".to_string(), sig6)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: String,
    pub input_digest: String,
    pub p: f64,
    pub n_points: usize,
    pub is_ultrametric: bool,
    pub alphas: Vec<f64>,
    pub coteries: Vec<Vec<String>>,
    pub degenerate: bool,
    pub permutation_applied: Option<Vec<usize>>,
    pub lambda_min_closed_form: Option<f64>,
    pub lambda_min_numeric: f64,
    pub eigenspace_dimension: usize,
    pub eigenspace_dimension_numeric: usize,
    pub eigenspace_basis: Vec<Vec<f64>>,
    #[serde(rename = "gap_S_estimate")]
    pub gap_s_estimate: Option<f64>,
    pub gap_classic_estimate: Option<f64>,
    pub supremal_type: Option<SupremalType>,
    pub embedding: Option<Vec<Vec<f64>>>,
    pub timings: Option<BTreeMap<String, f64>>,
}

impl Render for AnalysisReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "input digest            {}", self.input_digest);
        let _ = writeln!(s, "exponent p              {}", sig6(self.p));
        let _ = writeln!(s, "points                  {}", self.n_points);
        let _ = writeln!(s, "ultrametric             {}", self.is_ultrametric);
        let _ = writeln!(s, "distinct distances      {}", vec6(&self.alphas));
        let coteries: Vec<String> = self
            .coteries
            .iter()
            .map(|c| format!("{{{}}}", c.join(", ")))
            .collect();
        let _ = writeln!(s, "coteries                {}", coteries.join(" "));
        let _ = writeln!(s, "degenerate labeling     {}", self.degenerate);
        if let Some(perm) = &self.permutation_applied {
            let _ = writeln!(s, "relabeled as            {perm:?}");
        }
        let _ = writeln!(
            s,
            "lambda_min closed form  {}",
            opt6(self.lambda_min_closed_form)
        );
        let _ = writeln!(
            s,
            "lambda_min numeric      {}",
            sig6(self.lambda_min_numeric)
        );
        let _ = writeln!(
            s,
            "eigenspace dimension    {} (numeric cluster {})",
            self.eigenspace_dimension, self.eigenspace_dimension_numeric
        );
        for v in &self.eigenspace_basis {
            let _ = writeln!(s, "  {}", vec6(v));
        }
        let _ = writeln!(s, "gap Gamma_S estimate    {}", opt6(self.gap_s_estimate));
        let _ = writeln!(
            s,
            "gap Gamma_X estimate    {}",
            opt6(self.gap_classic_estimate)
        );
        let sup = match self.supremal_type {
            None => "n/a".to_string(),
            Some(SupremalType::Infinite) => "infinite".to_string(),
            Some(SupremalType::Finite(p)) => sig6(p),
            Some(SupremalType::AtLeast(p)) => format!(">= {}", sig6(p)),
        };
        let _ = writeln!(s, "supremal negative type  {sup}");
        if let Some(e) = &self.embedding {
            let _ = writeln!(s, "embedding of (X, d^(p/2)):");
            for v in e {
                let _ = writeln!(s, "  {}", vec6(v));
            }
        }
        if let Some(t) = &self.timings {
            for (stage, ms) in t {
                let _ = writeln!(s, "time {stage:<18} {} ms", sig6(*ms));
            }
        }
        s
    }
}

pub fn write_report(r: &AnalysisReport, format: OutputFormat) -> Vec<u8> {
    render(r, format)
}

pub fn read_report(bytes: &[u8]) -> Result<AnalysisReport> {
    Ok(serde_json::from_slice(bytes)?)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidateOutput {
    pub schema: String,
    pub n_points: usize,
    #[serde(flatten)]
    pub report: ValidationReport,
}

impl Render for ValidateOutput {
    fn text(&self) -> String {
        let r = &self.report;
        let mut s = format!(
            "points {}\nmetric {}\nultrametric {}\ntolerance {}\n",
            self.n_points,
            r.is_metric,
            r.is_ultrametric,
            sig6(r.tolerance_used)
        );
        for v in &r.violations {
            let _ = writeln!(s, "violation: {v}");
        }
        s
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoterieOutput {
    pub schema: String,
    pub alpha1: f64,
    pub coteries: Vec<Vec<String>>,
    pub coterie_indices: Vec<Vec<usize>>,
    pub residual: Vec<String>,
    pub degenerate: Option<bool>,
}

impl Render for CoterieOutput {
    fn text(&self) -> String {
        let mut s = format!("alpha_1 {}\n", sig6(self.alpha1));
        for (j, c) in self.coteries.iter().enumerate() {
            let _ = writeln!(s, "B{} = {{{}}}", j + 1, c.join(", "));
        }
        let _ = writeln!(s, "X0 = {{{}}}", self.residual.join(", "));
        if let Some(d) = self.degenerate {
            let _ = writeln!(s, "degenerate {d}");
        }
        s
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GapOutput {
    pub schema: String,
    pub mode: String,
    pub p: f64,
    pub samples: usize,
    pub seed: u64,
    pub estimate: f64,
    pub lambda_min_numeric: f64,
    pub s: Option<Vec<f64>>,
    pub t: Option<Vec<f64>>,
}

impl Render for GapOutput {
    fn text(&self) -> String {
        let mut s = format!(
            "gap ({}) at p = {}: {}\nnumeric min eigenvalue {}\n",
            self.mode,
            sig6(self.p),
            sig6(self.estimate),
            sig6(self.lambda_min_numeric)
        );
        if let (Some(a), Some(b)) = (&self.s, &self.t) {
            let _ = writeln!(s, "s = {}\nt = {}", vec6(a), vec6(b));
        }
        s
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EmbedOutput {
    pub schema: String,
    pub p: f64,
    pub labels: Vec<String>,
    pub coordinates: Vec<Vec<f64>>,
}

impl Render for EmbedOutput {
    fn text(&self) -> String {
        let mut s = String::new();
        for (l, c) in self.labels.iter().zip(&self.coordinates) {
            let _ = writeln!(s, "{l}: {}", vec6(c));
        }
        s
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SupremalOutput {
    pub schema: String,
    pub pmax: f64,
    pub tol: f64,
    pub supremal_type: SupremalType,
}

impl Render for SupremalOutput {
    fn text(&self) -> String {
        match self.supremal_type {
            SupremalType::Infinite => "supremal negative type: infinite\n".into(),
            SupremalType::Finite(p) => format!("supremal negative type: {}\n", sig6(p)),
            SupremalType::AtLeast(p) => format!("supremal negative type: >= {}\n", sig6(p)),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumOutput {
    pub schema: String,
    pub p: f64,
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<Vec<f64>>,
    pub residual_bound: f64,
    pub sweeps: usize,
}

impl Render for SpectrumOutput {
    fn text(&self) -> String {
        let mut s = format!("eigenvalues of G_p at p = {}\n", sig6(self.p));
        for (l, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            let _ = writeln!(s, "{:>14}  {}", sig6(*l), vec6(v));
        }
        let _ = writeln!(s, "residual bound {}", sig6(self.residual_bound));
        s
    }
}
