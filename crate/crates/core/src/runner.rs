//! Parameter sweeps, figure datasets and their CSV/JSON outputs.
//!
//! Every sweep row evaluates one or more *probes* (a geometry plus the
//! quantities to extract from its spin state) at one grid value. Rows are
//! independent and computed in parallel; output order always follows the grid.

use crate::configuration::{
    exchange_matrix, isosceles_configuration, line_configuration, random_configuration,
    regular_simplex_configuration, Configuration, Point,
};
use crate::entanglement::{coincident_entropy_bound, negativity, witness_expectation, Witness};
use crate::error::Error;
use crate::exchange::{pair_entanglement_threshold, ScaledDistance};
use crate::pair_decomposition::{fit_weights, pairs, reconstruct, PairWeights};
use crate::qops::{von_neumann_entropy, Bipartition, DensityMatrix, LogBase};
use crate::wick::spin_density_matrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use thiserror::Error;

pub const DEFAULT_EPS: f64 = 1e-2;
pub const DEFAULT_XMAX_LINE: f64 = 5.0;
pub const DEFAULT_BASE: f64 = 1.0;
pub const DEFAULT_HEIGHT_MAX: f64 = 8.0;
pub const DEFAULT_EDGE_MAX: f64 = 6.0;
pub const DEFAULT_LINE_POINTS: usize = 101;
pub const DEFAULT_HEIGHT_POINTS: usize = 161;
pub const DEFAULT_EDGE_POINTS: usize = 121;
/// Geometries sampled for the fit-residual summaries in every report.
pub const RESIDUAL_SAMPLES: u64 = 100;
pub const RESIDUAL_BOX: f64 = 3.0;
pub const RESIDUAL_SEED: u64 = 0;

#[derive(Debug, Error)]
pub enum RunError {
    #[error("{path}: line {line}, column {column}: {message}")]
    Parse { path: String, line: usize, column: usize, message: String },
    #[error("invalid field `{field}`: {message}")]
    Field { field: &'static str, message: String },
    #[error(transparent)]
    Physics(#[from] Error),
    #[error("i/o error on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl RunError {
    fn field(field: &'static str, message: impl Into<String>) -> Self {
        RunError::Field { field, message: message.into() }
    }

    /// Process exit code for this failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Physics(Error::DegenerateConfiguration { .. }) => 1,
            RunError::Parse { .. } | RunError::Field { .. } | RunError::Physics(_) => 2,
            RunError::Io { .. } => 3,
        }
    }
}

pub type RunResult<T> = std::result::Result<T, RunError>;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl Grid {
    pub fn new(start: f64, stop: f64, points: usize) -> RunResult<Self> {
        let g = Grid { start, stop, points };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> RunResult<()> {
        if self.points < 2 {
            return Err(RunError::field("grid.points", format!("need at least 2 points, got {}", self.points)));
        }
        if !self.start.is_finite() || !self.stop.is_finite() {
            return Err(RunError::field("grid", "bounds must be finite"));
        }
        if self.start < 0.0 {
            return Err(RunError::field("grid.start", "must be non-negative"));
        }
        if self.stop <= self.start {
            return Err(RunError::field("grid.stop", "grid must be strictly increasing (stop > start)"));
        }
        Ok(())
    }

    /// Grid values; endpoints exact.
    pub fn values(&self) -> Vec<f64> {
        let m = (self.points - 1) as f64;
        (0..self.points)
            .map(|k| {
                if k + 1 == self.points {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * (k as f64 / m)
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScenarioKind {
    Line,
    Isosceles,
    Simplex,
    Entropy,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputKind {
    Negativity,
    Entropy,
    Weights,
    Residual,
    Witnesses,
}

/// Sweep description as read from a scenario file.
///
/// The grid value means: fermion 2 position (`line`), apex height
/// (`isosceles`), edge length (`simplex`, `entropy`) or a dilation factor
/// applied to `positions` (`custom`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSpec {
    pub kind: ScenarioKind,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub grid: Option<Grid>,
    #[serde(default)]
    pub positions: Option<Vec<Point>>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub outputs: Vec<OutputKind>,
    #[serde(default)]
    pub x_max: Option<f64>,
    #[serde(default)]
    pub base: Option<f64>,
}

impl ScenarioSpec {
    pub fn from_json(text: &str, path: &str) -> RunResult<Self> {
        let spec: ScenarioSpec = serde_json::from_str(text).map_err(|e| RunError::Parse {
            path: path.to_string(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn from_file(path: &Path) -> RunResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| RunError::Io { path: path.to_path_buf(), source })?;
        Self::from_json(&text, &path.display().to_string())
    }

    fn particle_count(&self) -> RunResult<usize> {
        match self.kind {
            ScenarioKind::Line | ScenarioKind::Isosceles => match self.n {
                None | Some(3) => Ok(3),
                Some(n) => Err(RunError::field("n", format!("{:?} scenarios have 3 fermions, got {n}", self.kind))),
            },
            ScenarioKind::Simplex | ScenarioKind::Entropy => match self.n {
                Some(n @ 2..=4) => Ok(n),
                Some(n) => Err(RunError::field("n", format!("simplex supports n = 2, 3, 4, got {n}"))),
                None => Err(RunError::field("n", "required for simplex scenarios")),
            },
            ScenarioKind::Custom => match (&self.positions, self.n) {
                (Some(p), Some(n)) if p.len() != n => Err(RunError::field(
                    "n",
                    format!("n = {n} disagrees with {} positions", p.len()),
                )),
                (Some(p), _) => Ok(p.len()),
                (None, Some(n)) if self.seed.is_some() => Ok(n),
                (None, _) => Err(RunError::field("positions", "custom scenarios need positions, or n and seed")),
            },
        }
    }

    pub fn validate(&self) -> RunResult<()> {
        let n = self.particle_count()?;
        if !(2..=8).contains(&n) {
            return Err(RunError::field("n", format!("particle count {n} outside 2..=8")));
        }
        if let Some(g) = &self.grid {
            g.validate()?;
        }
        if let Some(x) = self.x_max {
            if !(x.is_finite() && x > 0.0) {
                return Err(RunError::field("x_max", "must be positive"));
            }
        }
        if let Some(b) = self.base {
            if !(b.is_finite() && b > 0.0) {
                return Err(RunError::field("base", "must be positive"));
            }
        }
        if self.kind == ScenarioKind::Line {
            if let Some(g) = &self.grid {
                let x_max = self.x_max.unwrap_or(DEFAULT_XMAX_LINE);
                if g.stop > x_max {
                    return Err(RunError::field("grid.stop", format!("line positions must stay within [0, {x_max}]")));
                }
            }
        }
        if let Some(p) = &self.positions {
            Configuration::new(p.clone()).map_err(|e| RunError::field("positions", e.to_string()))?;
        }
        if self.outputs.contains(&OutputKind::Witnesses) && n != 3 {
            return Err(RunError::field("outputs", "witnesses need exactly 3 fermions"));
        }
        Ok(())
    }

    fn outputs_or_default(&self) -> Vec<OutputKind> {
        let mut out = if self.outputs.is_empty() {
            vec![OutputKind::Negativity, OutputKind::Entropy]
        } else {
            self.outputs.clone()
        };
        if self.kind == ScenarioKind::Entropy && !out.contains(&OutputKind::Entropy) {
            out.push(OutputKind::Entropy);
        }
        out
    }

    fn geometry(&self) -> RunResult<Geometry> {
        let n = self.particle_count()?;
        Ok(match self.kind {
            ScenarioKind::Line => Geometry::Line { x_max: self.x_max.unwrap_or(DEFAULT_XMAX_LINE) },
            ScenarioKind::Isosceles => Geometry::Isosceles { base: self.base.unwrap_or(DEFAULT_BASE) },
            ScenarioKind::Simplex | ScenarioKind::Entropy => Geometry::Simplex { n },
            ScenarioKind::Custom => {
                let positions = match &self.positions {
                    Some(p) => p.clone(),
                    None => {
                        let seed = self.seed.unwrap_or_default();
                        random_configuration(n, ScaledDistance::new(1.0)?, seed)?.positions().to_vec()
                    }
                };
                Geometry::Dilation { base: Configuration::new(positions)? }
            }
        })
    }

    /// Configuration at a single grid value (the `analyze` entry point).
    pub fn configuration_at(&self, value: f64) -> RunResult<Configuration> {
        Ok(self.geometry()?.at(value)?)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Geometry {
    Line { x_max: f64 },
    Isosceles { base: f64 },
    Simplex { n: usize },
    Dilation { base: Configuration },
}

impl Geometry {
    fn at(&self, value: f64) -> crate::Result<Configuration> {
        let v = ScaledDistance::new(value)?;
        match self {
            Geometry::Line { x_max } => line_configuration(ScaledDistance::new(*x_max)?, v),
            Geometry::Isosceles { base } => isosceles_configuration(ScaledDistance::new(*base)?, v),
            Geometry::Simplex { n } => regular_simplex_configuration(*n, v),
            Geometry::Dilation { base } => base.scaled(value),
        }
    }

    fn n(&self) -> usize {
        match self {
            Geometry::Line { .. } | Geometry::Isosceles { .. } => 3,
            Geometry::Simplex { n } => *n,
            Geometry::Dilation { base } => base.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Quantity {
    Negativity(Bipartition),
    EntropyBits,
    EntropyNats,
    Weights,
    Residual,
    Witness(Witness),
}

#[derive(Debug, Clone, PartialEq)]
struct Probe {
    geometry: Geometry,
    quantities: Vec<Quantity>,
}

impl Probe {
    fn columns(&self) -> Vec<String> {
        let n = self.geometry.n();
        let mut cols = Vec::new();
        for q in &self.quantities {
            match q {
                Quantity::Negativity(b) => cols.push(b.column_name()),
                Quantity::EntropyBits => cols.push(format!("S{n}_bits")),
                Quantity::EntropyNats => cols.push(format!("S{n}_nats")),
                Quantity::Weights => {
                    cols.push("w0".into());
                    cols.extend(pairs(n).iter().map(|(i, j)| format!("w_{}{}", i + 1, j + 1)));
                }
                Quantity::Residual => cols.push("residual".into()),
                Quantity::Witness(Witness::Ghz) => cols.push("W_GHZ".into()),
                Quantity::Witness(Witness::W3) => cols.push("W_W3".into()),
            }
        }
        cols
    }

    /// Cell values, or `None` when the configuration is Pauli-forbidden.
    fn evaluate(&self, value: f64) -> crate::Result<Option<Vec<f64>>> {
        let config = self.geometry.at(value)?;
        let rho = match spin_density_matrix(&exchange_matrix(&config)) {
            Ok(rho) => rho,
            Err(Error::DegenerateConfiguration { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        let mut fit: Option<PairWeights> = None;
        let mut fitted = |rho: &DensityMatrix| -> crate::Result<PairWeights> {
            if fit.is_none() {
                fit = Some(fit_weights(rho)?);
            }
            Ok(fit.clone().unwrap())
        };
        let mut cells = Vec::new();
        for q in &self.quantities {
            match q {
                Quantity::Negativity(b) => cells.push(negativity(&rho, b)?),
                Quantity::EntropyBits => cells.push(von_neumann_entropy(&rho, LogBase::Two)?),
                Quantity::EntropyNats => cells.push(von_neumann_entropy(&rho, LogBase::E)?),
                Quantity::Weights => {
                    let w = fitted(&rho)?;
                    cells.push(w.background());
                    cells.extend(&w.singlet);
                }
                Quantity::Residual => cells.push(fitted(&rho)?.residual),
                Quantity::Witness(k) => cells.push(witness_expectation(&rho, *k)?),
            }
        }
        Ok(Some(cells))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub x: f64,
    /// `None` cells belong to a probe whose configuration was degenerate.
    pub values: Vec<Option<f64>>,
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metadata {
    pub tool: &'static str,
    pub version: &'static str,
    pub scenario: String,
    pub grid: Grid,
    pub parameters: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    /// Value columns, excluding the leading `x` and trailing `degenerate`.
    pub columns: Vec<String>,
    pub rows: Vec<Row>,
    pub metadata: Metadata,
}

impl SweepResult {
    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r.values[k]).collect())
    }

    pub fn xs(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.x).collect()
    }

    pub fn all_degenerate(&self) -> bool {
        self.rows.iter().all(|r| r.degenerate)
    }

    /// CSV text: `x`, value columns, `degenerate`. Numbers carry 15
    /// significant digits; degenerate cells are left empty.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x");
        for c in &self.columns {
            out.push(',');
            out.push_str(c);
        }
        out.push_str(",degenerate\n");
        for row in &self.rows {
            write!(out, "{}", fmt_num(row.x)).unwrap();
            for v in &row.values {
                out.push(',');
                if let Some(v) = v {
                    out.push_str(&fmt_num(*v));
                }
            }
            writeln!(out, ",{}", row.degenerate).unwrap();
        }
        out
    }
}

fn fmt_num(v: f64) -> String {
    // normalize -0 so mirrored rows print identically
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.14e}")
}

fn sweep(
    scenario: String,
    grid: Grid,
    probes: Vec<Probe>,
    parameters: serde_json::Value,
) -> RunResult<SweepResult> {
    grid.validate()?;
    let columns: Vec<String> = probes.iter().flat_map(Probe::columns).collect();
    let widths: Vec<usize> = probes.iter().map(|p| p.columns().len()).collect();
    let rows = grid
        .values()
        .into_par_iter()
        .map(|x| {
            let mut values = Vec::with_capacity(columns.len());
            let mut degenerate = false;
            for (probe, &w) in probes.iter().zip(&widths) {
                match probe.evaluate(x)? {
                    Some(cells) => values.extend(cells.into_iter().map(Some)),
                    None => {
                        degenerate = true;
                        values.extend(std::iter::repeat_n(None, w));
                    }
                }
            }
            Ok(Row { x, values, degenerate })
        })
        .collect::<crate::Result<Vec<_>>>()?;
    Ok(SweepResult {
        columns,
        rows,
        metadata: Metadata {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            scenario,
            grid,
            parameters,
        },
    })
}

pub fn run_scenario(spec: &ScenarioSpec) -> RunResult<SweepResult> {
    spec.validate()?;
    let grid = spec.grid.ok_or_else(|| RunError::field("grid", "sweeps need a grid"))?;
    let geometry = spec.geometry()?;
    let n = geometry.n();
    let mut quantities = Vec::new();
    for out in spec.outputs_or_default() {
        match out {
            OutputKind::Negativity => {
                quantities.extend(Bipartition::canonical(n).into_iter().map(Quantity::Negativity))
            }
            OutputKind::Entropy => quantities.extend([Quantity::EntropyBits, Quantity::EntropyNats]),
            OutputKind::Weights => quantities.push(Quantity::Weights),
            OutputKind::Residual => quantities.push(Quantity::Residual),
            OutputKind::Witnesses => {
                quantities.extend([Quantity::Witness(Witness::Ghz), Quantity::Witness(Witness::W3)])
            }
        }
    }
    let params = serde_json::to_value(spec).expect("spec serializes");
    sweep(format!("{:?}", spec.kind).to_lowercase(), grid, vec![Probe { geometry, quantities }], params)
}

/// Command-line overrides for the figure presets.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct FigureOverrides {
    /// Grid points.
    pub grid: Option<usize>,
    /// Isosceles base length (figure 2).
    pub base: Option<f64>,
    /// Upper end of the sweep; for figure 1 also the 1–3 distance.
    pub xmax: Option<f64>,
    /// Lower end of the edge sweep (figures 3 and 4).
    pub eps: Option<f64>,
}

fn single(n: usize, k: usize) -> Quantity {
    Quantity::Negativity(Bipartition::single(n, k).expect("valid single-fermion bipartition"))
}

pub fn run_figure(id: u8, o: FigureOverrides) -> RunResult<SweepResult> {
    let (grid, probes) = match id {
        1 => {
            let x_max = o.xmax.unwrap_or(DEFAULT_XMAX_LINE);
            let grid = Grid::new(0.0, x_max, o.grid.unwrap_or(DEFAULT_LINE_POINTS))?;
            (grid, vec![Probe { geometry: Geometry::Line { x_max }, quantities: vec![single(3, 1)] }])
        }
        2 => {
            let base = o.base.unwrap_or(DEFAULT_BASE);
            if !(base.is_finite() && base > 0.0) {
                return Err(RunError::field("base", "must be positive"));
            }
            let grid = Grid::new(0.0, o.xmax.unwrap_or(DEFAULT_HEIGHT_MAX), o.grid.unwrap_or(DEFAULT_HEIGHT_POINTS))?;
            let quantities = vec![single(3, 0), single(3, 1), single(3, 2)];
            (grid, vec![Probe { geometry: Geometry::Isosceles { base }, quantities }])
        }
        3 | 4 => {
            let grid = Grid::new(
                o.eps.unwrap_or(DEFAULT_EPS),
                o.xmax.unwrap_or(DEFAULT_EDGE_MAX),
                o.grid.unwrap_or(DEFAULT_EDGE_POINTS),
            )?;
            let probes = if id == 3 {
                (2..=4)
                    .map(|n| Probe { geometry: Geometry::Simplex { n }, quantities: vec![single(n, 0)] })
                    .collect()
            } else {
                (2..=4)
                    .map(|n| Probe {
                        geometry: Geometry::Simplex { n },
                        quantities: vec![Quantity::EntropyBits, Quantity::EntropyNats],
                    })
                    .collect()
            };
            (grid, probes)
        }
        _ => return Err(RunError::field("figure", format!("unknown figure {id}; expected 1-4"))),
    };
    let params = serde_json::to_value(o).expect("overrides serialize");
    let mut result = sweep(format!("figure{id}"), grid, probes, params)?;
    if id == 4 {
        // bits columns first, then nats
        let order: Vec<usize> = (0..result.columns.len())
            .filter(|k| result.columns[*k].ends_with("_bits"))
            .chain((0..result.columns.len()).filter(|k| result.columns[*k].ends_with("_nats")))
            .collect();
        result.columns = order.iter().map(|&k| result.columns[k].clone()).collect();
        for row in &mut result.rows {
            row.values = order.iter().map(|&k| row.values[k]).collect();
        }
    }
    Ok(result)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoincidentEntropy {
    pub n: usize,
    pub edge: f64,
    /// Wick state at a regular simplex of edge `edge`.
    pub wick_bits: Option<f64>,
    pub wick_nats: Option<f64>,
    /// `log(2^n - (n + 1))`.
    pub counting_bits: f64,
    pub counting_nats: f64,
    /// Equal mixture of all embedded pair singlets.
    pub singlet_mixture_bits: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualSummary {
    pub n: usize,
    pub geometries: u64,
    pub degenerate: u64,
    pub box_len: f64,
    pub seed: u64,
    pub max: f64,
    pub mean: f64,
    pub min: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalarResults {
    pub pair_threshold_x: f64,
    pub coincident_entropies: Vec<CoincidentEntropy>,
    pub fit_residuals: Vec<ResidualSummary>,
}

pub fn coincident_entropy(n: usize, edge: f64) -> RunResult<CoincidentEntropy> {
    let config = regular_simplex_configuration(n, ScaledDistance::new(edge)?)?;
    let (wick_bits, wick_nats) = match spin_density_matrix(&exchange_matrix(&config)) {
        Ok(rho) => (
            Some(von_neumann_entropy(&rho, LogBase::Two)?),
            Some(von_neumann_entropy(&rho, LogBase::E)?),
        ),
        Err(Error::DegenerateConfiguration { .. }) => (None, None),
        Err(e) => return Err(e.into()),
    };
    let np = n * (n - 1) / 2;
    let mixture = reconstruct(&PairWeights::new(n, vec![1.0 / np as f64; np])?)?;
    Ok(CoincidentEntropy {
        n,
        edge,
        wick_bits,
        wick_nats,
        counting_bits: coincident_entropy_bound(n, LogBase::Two)?,
        counting_nats: coincident_entropy_bound(n, LogBase::E)?,
        singlet_mixture_bits: von_neumann_entropy(&mixture, LogBase::Two)?,
    })
}

/// Identity-plus-singlets fit residuals over seeded random geometries.
pub fn residual_summary(n: usize, geometries: u64, box_len: f64, seed: u64) -> RunResult<ResidualSummary> {
    let box_len_d = ScaledDistance::new(box_len)?;
    let residuals: Vec<Option<f64>> = (0..geometries)
        .into_par_iter()
        .map(|k| {
            let config = random_configuration(n, box_len_d, seed.wrapping_add(k))?;
            match spin_density_matrix(&exchange_matrix(&config)) {
                Ok(rho) => Ok(Some(fit_weights(&rho)?.residual)),
                Err(Error::DegenerateConfiguration { .. }) => Ok(None),
                Err(e) => Err(e),
            }
        })
        .collect::<crate::Result<_>>()?;
    let ok: Vec<f64> = residuals.iter().flatten().copied().collect();
    let count = ok.len().max(1) as f64;
    Ok(ResidualSummary {
        n,
        geometries,
        degenerate: (residuals.len() - ok.len()) as u64,
        box_len,
        seed,
        max: ok.iter().copied().fold(0.0, f64::max),
        mean: ok.iter().sum::<f64>() / count,
        min: ok.iter().copied().fold(f64::INFINITY, f64::min),
    })
}

pub fn scalar_results(eps: f64) -> RunResult<ScalarResults> {
    Ok(ScalarResults {
        pair_threshold_x: pair_entanglement_threshold(1e-12)?.get(),
        coincident_entropies: (2..=4).map(|n| coincident_entropy(n, eps)).collect::<RunResult<_>>()?,
        fit_residuals: (2..=4)
            .map(|n| residual_summary(n, RESIDUAL_SAMPLES, RESIDUAL_BOX, RESIDUAL_SEED))
            .collect::<RunResult<_>>()?,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report<'a> {
    pub metadata: &'a Metadata,
    pub generated_unix: u64,
    pub rows: usize,
    pub degenerate_rows: usize,
    pub scalars: ScalarResults,
}

/// Writes `<stem>.csv` and `<stem>.json` into `dir`; returns both paths.
pub fn write_outputs(result: &SweepResult, dir: &Path, stem: &str, eps: f64) -> RunResult<(PathBuf, PathBuf)> {
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| RunError::Io { path, source }
    };
    std::fs::create_dir_all(dir).map_err(io(dir))?;
    let csv = dir.join(format!("{stem}.csv"));
    std::fs::write(&csv, result.to_csv()).map_err(io(&csv))?;
    let report = Report {
        metadata: &result.metadata,
        generated_unix: std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        rows: result.rows.len(),
        degenerate_rows: result.rows.iter().filter(|r| r.degenerate).count(),
        scalars: scalar_results(eps)?,
    };
    let json = dir.join(format!("{stem}.json"));
    let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
    text.push('\n');
    std::fs::write(&json, text).map_err(io(&json))?;
    Ok((csv, json))
}
