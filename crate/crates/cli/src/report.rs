//! Serializable reports and their table and CSV renderings.

use std::io::Write;

use morse_laplace::model::MorseParameters;
use serde::{Deserialize, Serialize};

use crate::error::CliResult;
use crate::number::{format_optional, format_sig17};

pub const SPECTRUM_HEADER: [&str; 6] = ["n", "E_closed", "E_fd", "abs_diff", "overlap", "nodes"];
pub const WAVEFUNCTION_HEADER: [&str; 3] = ["x", "xi", "psi"];
pub const QUADCHECK_HEADER: [&str; 4] = ["order", "quadrature", "series", "rel_error"];
pub const VERIFY_HEADER: [&str; 4] = ["name", "max_error", "tolerance", "passed"];

/// Echo of the physical parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamsEcho {
    pub m: f64,
    pub hbar: f64,
    pub a: f64,
    #[serde(rename = "V0")]
    pub v0: f64,
    pub k: f64,
}

impl From<&MorseParameters> for ParamsEcho {
    fn from(p: &MorseParameters) -> Self {
        Self {
            m: p.mass(),
            hbar: p.hbar(),
            a: p.a(),
            v0: p.v0(),
            k: p.k(),
        }
    }
}

/// Highest level index, or "none" in JSON.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TopLevel(pub Option<usize>);

impl Serialize for TopLevel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            Some(n) => s.serialize_u64(n as u64),
            None => s.serialize_str("none"),
        }
    }
}

impl<'de> Deserialize<'de> for TopLevel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Count(usize),
            Label(String),
        }
        match Repr::deserialize(d)? {
            Repr::Count(n) => Ok(TopLevel(Some(n))),
            Repr::Label(s) if s == "none" => Ok(TopLevel(None)),
            Repr::Label(s) => Err(serde::de::Error::custom(format!(
                "n_max must be an integer or \"none\", got {s:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "RawSpectrumRow")]
pub struct SpectrumRow {
    pub n: usize,
    #[serde(rename = "E_closed")]
    pub e_closed: f64,
    #[serde(rename = "E_fd")]
    pub e_fd: Option<f64>,
    pub abs_diff: Option<f64>,
    pub overlap: Option<f64>,
    pub nodes: Option<usize>,
}

impl SpectrumRow {
    pub fn new(
        n: usize,
        e_closed: f64,
        e_fd: Option<f64>,
        overlap: Option<f64>,
        nodes: Option<usize>,
    ) -> Self {
        Self {
            n,
            e_closed,
            e_fd,
            abs_diff: e_fd.map(|e| (e_closed - e).abs()),
            overlap,
            nodes,
        }
    }
}

#[derive(Deserialize)]
struct RawSpectrumRow {
    n: usize,
    #[serde(rename = "E_closed")]
    e_closed: f64,
    #[serde(rename = "E_fd")]
    e_fd: Option<f64>,
    overlap: Option<f64>,
    nodes: Option<usize>,
}

impl From<RawSpectrumRow> for SpectrumRow {
    fn from(r: RawSpectrumRow) -> Self {
        SpectrumRow::new(r.n, r.e_closed, r.e_fd, r.overlap, r.nodes)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "RawSpectrumReport")]
pub struct SpectrumReport {
    pub params: ParamsEcho,
    pub n_max: TopLevel,
    pub rows: Vec<SpectrumRow>,
}

#[derive(Deserialize)]
struct RawSpectrumReport {
    params: ParamsEcho,
    n_max: TopLevel,
    rows: Vec<SpectrumRow>,
}

impl From<RawSpectrumReport> for SpectrumReport {
    fn from(r: RawSpectrumReport) -> Self {
        SpectrumReport::new(r.params, r.n_max, r.rows)
    }
}

impl SpectrumReport {
    pub fn new(params: ParamsEcho, n_max: TopLevel, mut rows: Vec<SpectrumRow>) -> Self {
        rows.sort_by_key(|r| r.n);
        Self {
            params,
            n_max,
            rows,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WavefunctionSample {
    pub x: f64,
    pub xi: f64,
    pub psi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WavefunctionReport {
    pub params: ParamsEcho,
    pub n: usize,
    pub energy: f64,
    pub normalized: bool,
    pub samples: Vec<WavefunctionSample>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckResult {
    pub fn new(name: &str, max_error: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            max_error,
            tolerance,
            passed: max_error <= tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub params: ParamsEcho,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn new(params: ParamsEcho, checks: Vec<CheckResult>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        Self {
            params,
            checks,
            passed,
        }
    }

    pub fn failed_names(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadcheckRow {
    pub order: usize,
    pub quadrature: f64,
    pub series: f64,
    pub rel_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadcheckReport {
    pub p: f64,
    pub q: f64,
    pub xi: f64,
    pub rows: Vec<QuadcheckRow>,
    /// Error column never grows, ignoring differences at the roundoff floor.
    pub non_increasing: bool,
}

/// Output in the three supported formats.
pub trait Render: Serialize {
    fn header(&self) -> &'static [&'static str];
    fn records(&self) -> Vec<Vec<String>>;

    /// Lines printed above the table.
    fn preamble(&self) -> Vec<String> {
        Vec::new()
    }

    fn write_json(&self, out: &mut dyn Write) -> CliResult<()> {
        serde_json::to_writer_pretty(&mut *out, self)?;
        writeln!(out)?;
        Ok(())
    }

    fn write_csv(&self, out: &mut dyn Write) -> CliResult<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(self.header())?;
        for r in self.records() {
            w.write_record(&r)?;
        }
        w.flush()?;
        Ok(())
    }

    fn write_table(&self, out: &mut dyn Write) -> CliResult<()> {
        for line in self.preamble() {
            writeln!(out, "{line}")?;
        }
        let header: Vec<String> = self.header().iter().map(|s| s.to_string()).collect();
        let records = self.records();
        let widths: Vec<usize> = (0..header.len())
            .map(|c| {
                records
                    .iter()
                    .map(|r| r[c].len())
                    .chain(std::iter::once(header[c].len()))
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        for row in std::iter::once(&header).chain(&records) {
            let cells: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(cell, &w)| format!("{cell:>w$}"))
                .collect();
            writeln!(out, "{}", cells.join("  ").trim_end())?;
        }
        Ok(())
    }
}

fn params_line(p: &ParamsEcho) -> String {
    format!(
        "m = {}, hbar = {}, a = {}, V0 = {}, k = {}",
        format_sig17(p.m),
        format_sig17(p.hbar),
        format_sig17(p.a),
        format_sig17(p.v0),
        format_sig17(p.k)
    )
}

impl Render for SpectrumReport {
    fn header(&self) -> &'static [&'static str] {
        &SPECTRUM_HEADER
    }

    fn records(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                vec![
                    r.n.to_string(),
                    format_sig17(r.e_closed),
                    format_optional(r.e_fd),
                    format_optional(r.abs_diff),
                    format_optional(r.overlap),
                    r.nodes.map(|n| n.to_string()).unwrap_or_default(),
                ]
            })
            .collect()
    }

    fn preamble(&self) -> Vec<String> {
        let top = match self.n_max.0 {
            Some(n) => n.to_string(),
            None => "none".into(),
        };
        vec![params_line(&self.params), format!("n_max = {top}")]
    }
}

impl Render for WavefunctionReport {
    fn header(&self) -> &'static [&'static str] {
        &WAVEFUNCTION_HEADER
    }

    fn records(&self) -> Vec<Vec<String>> {
        self.samples
            .iter()
            .map(|s| vec![format_sig17(s.x), format_sig17(s.xi), format_sig17(s.psi)])
            .collect()
    }

    fn preamble(&self) -> Vec<String> {
        vec![
            params_line(&self.params),
            format!(
                "n = {}, E = {}, normalized = {}",
                self.n,
                format_sig17(self.energy),
                self.normalized
            ),
        ]
    }
}

impl Render for VerifyReport {
    fn header(&self) -> &'static [&'static str] {
        &VERIFY_HEADER
    }

    fn records(&self) -> Vec<Vec<String>> {
        self.checks
            .iter()
            .map(|c| {
                vec![
                    c.name.clone(),
                    format_sig17(c.max_error),
                    format_sig17(c.tolerance),
                    c.passed.to_string(),
                ]
            })
            .collect()
    }

    fn preamble(&self) -> Vec<String> {
        vec![
            params_line(&self.params),
            format!("all checks passed: {}", self.passed),
        ]
    }
}

impl Render for QuadcheckReport {
    fn header(&self) -> &'static [&'static str] {
        &QUADCHECK_HEADER
    }

    fn records(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                vec![
                    r.order.to_string(),
                    format_sig17(r.quadrature),
                    format_sig17(r.series),
                    format_sig17(r.rel_error),
                ]
            })
            .collect()
    }

    fn preamble(&self) -> Vec<String> {
        vec![
            format!(
                "p = {}, q = {}, xi = {}",
                format_sig17(self.p),
                format_sig17(self.q),
                format_sig17(self.xi)
            ),
            format!("error non-increasing: {}", self.non_increasing),
        ]
    }
}
