//! Scenario matrix (density law × path-length law) and the cost sweep over
//! an `n` grid.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cost::{GraphParams, ModelKind, ModelRegistry};
use crate::error::{Error, Result};
use crate::format::{parse_count, parse_real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LawKind {
    /// `c·n^e`
    Power,
    /// `c·(log₂n)^e`
    Polylog,
}

/// A positive scaling law in `n`, used for both `m(n)` and `l(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingLaw {
    pub kind: LawKind,
    pub coefficient: f64,
    pub exponent: f64,
}

impl ScalingLaw {
    pub fn new(kind: LawKind, coefficient: f64, exponent: f64) -> Result<Self> {
        if !(coefficient.is_finite() && coefficient > 0.0) {
            return Err(Error::InvalidParams(format!(
                "law coefficient must be > 0, got {coefficient}"
            )));
        }
        if !exponent.is_finite() {
            return Err(Error::InvalidParams(format!(
                "law exponent must be finite, got {exponent}"
            )));
        }
        Ok(Self {
            kind,
            coefficient,
            exponent,
        })
    }

    pub fn power(coefficient: f64, exponent: f64) -> Result<Self> {
        Self::new(LawKind::Power, coefficient, exponent)
    }

    pub fn polylog(coefficient: f64, exponent: f64) -> Result<Self> {
        Self::new(LawKind::Polylog, coefficient, exponent)
    }

    pub fn eval(&self, n: f64) -> f64 {
        let base = match self.kind {
            LawKind::Power => n,
            LawKind::Polylog => n.log2(),
        };
        self.coefficient * base.powf(self.exponent)
    }
}

impl fmt::Display for ScalingLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            LawKind::Power => "power",
            LawKind::Polylog => "polylog",
        };
        write!(f, "{kind} {} {}", self.coefficient, self.exponent)
    }
}

/// Parses `power <c> <e>` or `polylog <c> <e>`; `:` also separates fields.
impl FromStr for ScalingLaw {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fields: Vec<&str> = s
            .split(|c: char| c.is_whitespace() || c == ':')
            .filter(|t| !t.is_empty())
            .collect();
        let [kind, c, e] = fields[..] else {
            return Err(Error::parse(
                0,
                format!("expected `<power|polylog> c e`, got `{s}`"),
            ));
        };
        let kind = match kind {
            "power" => LawKind::Power,
            "polylog" => LawKind::Polylog,
            other => return Err(Error::parse(0, format!("unknown law kind `{other}`"))),
        };
        Self::new(kind, parse_real(c, 0)?, parse_real(e, 0)?)
    }
}

/// A named pair of density and path-length laws.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub name: String,
    pub density: ScalingLaw,
    pub path: ScalingLaw,
    /// log₁₀ offset from each decade to the sample point that reproduces the
    /// reference tables; `None` for scenarios without a calibration.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub calibration_shift: Option<f64>,
}

/// Sparse rows of the reference tables sit at 10^(k − 1/33).
pub const SPARSE_CALIBRATION_SHIFT: f64 = -1.0 / 33.0;
/// Dense rows sit at 10^(k − 0.01).
pub const DENSE_CALIBRATION_SHIFT: f64 = -0.01;

pub fn sparse_law() -> ScalingLaw {
    ScalingLaw::power(10.0, 1.0).expect("constant law")
}

pub fn dense_law() -> ScalingLaw {
    ScalingLaw::power(0.01, 2.0).expect("constant law")
}

pub fn short_path_law() -> ScalingLaw {
    ScalingLaw::polylog(1.0, 2.0).expect("constant law")
}

pub fn long_path_law() -> ScalingLaw {
    ScalingLaw::power(0.1, 1.0).expect("constant law")
}

/// The 2×2 matrix in fixed order: sparse-short, sparse-long, dense-short,
/// dense-long.
pub fn builtin_scenarios() -> Vec<Scenario> {
    let make = |name: &str, density, path, shift| Scenario {
        name: name.to_string(),
        density,
        path,
        calibration_shift: Some(shift),
    };
    vec![
        make(
            "sparse-short",
            sparse_law(),
            short_path_law(),
            SPARSE_CALIBRATION_SHIFT,
        ),
        make(
            "sparse-long",
            sparse_law(),
            long_path_law(),
            SPARSE_CALIBRATION_SHIFT,
        ),
        make(
            "dense-short",
            dense_law(),
            short_path_law(),
            DENSE_CALIBRATION_SHIFT,
        ),
        make(
            "dense-long",
            dense_law(),
            long_path_law(),
            DENSE_CALIBRATION_SHIFT,
        ),
    ]
}

pub fn builtin_scenario(name: &str) -> Option<Scenario> {
    builtin_scenarios().into_iter().find(|s| s.name == name)
}

impl Scenario {
    pub fn params_at(&self, n: f64) -> Result<GraphParams> {
        GraphParams::full(n, self.density.eval(n), self.path.eval(n))
    }

    /// Parses a scenario definition file.
    ///
    /// ```text
    /// # comment
    /// name = my-scenario
    /// density = power 10 1
    /// path = polylog 1 2
    /// grid = 1e4,1e8,25          # optional: nmin,nmax,ppd
    /// calibration_shift = -0.01  # optional
    /// ```
    ///
    /// `name`, `density` and `path` are required; keys may appear once.
    pub fn parse_definition(text: &str) -> Result<ScenarioDefinition> {
        let mut name = None;
        let mut density = None;
        let mut path = None;
        let mut grid = None;
        let mut shift = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(line_no, "expected `key = value`"))?;
            let (key, value) = (key.trim(), value.trim());
            let at_line = |e: Error| match e {
                Error::Parse { msg, .. } => Error::parse(line_no, msg),
                other => Error::parse(line_no, other.to_string()),
            };
            let slot_taken = || Error::parse(line_no, format!("duplicate key `{key}`"));
            match key {
                "name" => {
                    if value.is_empty() {
                        return Err(Error::parse(line_no, "empty scenario name"));
                    }
                    if name.replace(value.to_string()).is_some() {
                        return Err(slot_taken());
                    }
                }
                "density" => {
                    if density.replace(value.parse().map_err(at_line)?).is_some() {
                        return Err(slot_taken());
                    }
                }
                "path" => {
                    if path.replace(value.parse().map_err(at_line)?).is_some() {
                        return Err(slot_taken());
                    }
                }
                "grid" => {
                    if grid.replace(value.parse().map_err(at_line)?).is_some() {
                        return Err(slot_taken());
                    }
                }
                "calibration_shift" => {
                    let v = parse_real(value, line_no)?;
                    if shift.replace(v).is_some() {
                        return Err(slot_taken());
                    }
                }
                other => return Err(Error::parse(line_no, format!("unknown key `{other}`"))),
            }
        }
        let missing = |k: &str| Error::parse(0, format!("missing required key `{k}`"));
        Ok(ScenarioDefinition {
            scenario: Scenario {
                name: name.ok_or_else(|| missing("name"))?,
                density: density.ok_or_else(|| missing("density"))?,
                path: path.ok_or_else(|| missing("path"))?,
                calibration_shift: shift,
            },
            grid,
        })
    }
}

/// Result of parsing a scenario file: the scenario and its optional grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioDefinition {
    pub scenario: Scenario,
    pub grid: Option<NGrid>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridMode {
    /// Table rows at exact decades 10^k.
    Exact,
    /// Table rows at the back-solved points 10^(k + shift).
    Calibrated,
}

impl FromStr for GridMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(GridMode::Exact),
            "calibrated" => Ok(GridMode::Calibrated),
            other => Err(Error::parse(0, format!("unknown grid mode `{other}`"))),
        }
    }
}

impl fmt::Display for GridMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GridMode::Exact => "exact",
            GridMode::Calibrated => "calibrated",
        })
    }
}

/// Log-spaced vertex counts, optionally unioned with explicit anchors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NGrid {
    pub n_min: u64,
    pub n_max: u64,
    /// Zero means anchors only.
    pub points_per_decade: u32,
    pub anchors: Vec<u64>,
}

/// Upper bound on the number of log-spaced points a grid may request.
pub const MAX_GRID_POINTS: u64 = 1_000_000;

impl Default for NGrid {
    /// 25 points per decade over [10², 10⁸] plus exact decades.
    fn default() -> Self {
        Self::log_spaced(100, 100_000_000, 25).expect("valid default grid")
    }
}

impl NGrid {
    /// Log grid over `[n_min, n_max]`, anchored at every exact decade inside it.
    pub fn log_spaced(n_min: u64, n_max: u64, points_per_decade: u32) -> Result<Self> {
        if n_min < 2 || n_max < n_min {
            return Err(Error::InvalidRange(format!(
                "grid bounds must satisfy 2 <= nmin <= nmax, got [{n_min}, {n_max}]"
            )));
        }
        if points_per_decade == 0 {
            return Err(Error::InvalidRange(
                "points per decade must be positive".into(),
            ));
        }
        let span = (n_max as f64).log10() - (n_min as f64).log10();
        if span * f64::from(points_per_decade) > MAX_GRID_POINTS as f64 {
            return Err(Error::InvalidRange(format!(
                "grid would exceed {MAX_GRID_POINTS} points"
            )));
        }
        let anchors = (0..20)
            .map(|k| 10u64.pow(k))
            .filter(|d| (n_min..=n_max).contains(d))
            .collect();
        Ok(Self {
            n_min,
            n_max,
            points_per_decade,
            anchors,
        })
    }

    pub fn anchors_only(mut points: Vec<u64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyGrid);
        }
        if let Some(bad) = points.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidRange(format!("grid point {bad} is below 2")));
        }
        points.sort_unstable();
        points.dedup();
        Ok(Self {
            n_min: points[0],
            n_max: points[points.len() - 1],
            points_per_decade: 0,
            anchors: points,
        })
    }

    /// Table rows for `scenario` at the given decades, either exact or at the
    /// scenario's calibrated sample points.
    pub fn table_rows(scenario: &Scenario, decades: &[i32], mode: GridMode) -> Result<Self> {
        let points = match mode {
            GridMode::Exact => decades
                .iter()
                .map(|&k| 10f64.powi(k).round() as u64)
                .collect(),
            GridMode::Calibrated => {
                let shift = scenario.calibration_shift.ok_or_else(|| {
                    Error::InvalidParams(format!(
                        "scenario `{}` has no calibrated sample points",
                        scenario.name
                    ))
                })?;
                decades
                    .iter()
                    .map(|&k| 10f64.powf(f64::from(k) + shift).round() as u64)
                    .collect()
            }
        };
        Self::anchors_only(points)
    }

    /// Sorted, deduplicated grid points.
    pub fn points(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .anchors
            .iter()
            .copied()
            .filter(|n| (self.n_min..=self.n_max).contains(n))
            .collect();
        if self.points_per_decade > 0 {
            let ppd = f64::from(self.points_per_decade);
            let lo = (self.n_min as f64).log10();
            let hi = (self.n_max as f64).log10();
            let steps = ((hi - lo) * ppd + 1e-9).floor() as u64;
            out.push(self.n_min);
            for k in 1..=steps {
                // Clamped: above 2^53 the power can round past either bound.
                let n = 10f64.powf(lo + k as f64 / ppd).round() as u64;
                out.push(n.clamp(self.n_min, self.n_max));
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// `nmin,nmax,ppd`, e.g. `1e4,1e8,25`.
impl FromStr for NGrid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fields: Vec<&str> = s.split(',').map(str::trim).collect();
        let [lo, hi, ppd] = fields[..] else {
            return Err(Error::parse(
                0,
                format!("expected `nmin,nmax,ppd`, got `{s}`"),
            ));
        };
        let ppd = parse_count(ppd)?;
        let ppd = u32::try_from(ppd)
            .map_err(|_| Error::parse(0, format!("points per decade too large: {ppd}")))?;
        Self::log_spaced(parse_count(lo)?, parse_count(hi)?, ppd)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: u64,
    pub m: f64,
    pub l: f64,
    /// One cost per model, in registry order.
    pub costs: Vec<f64>,
}

/// Per-`n` costs for one scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub scenario: String,
    pub models: Vec<String>,
    pub kinds: Vec<ModelKind>,
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    pub fn column(&self, id: &str) -> Option<usize> {
        self.models.iter().position(|m| m == id)
    }

    /// Index of the cheapest model; ties go to the earliest column.
    pub fn winner_index(&self, row: &SweepRow) -> usize {
        let mut best = 0;
        for (i, &c) in row.costs.iter().enumerate() {
            if c < row.costs[best] {
                best = i;
            }
        }
        best
    }

    pub fn winner<'a>(&'a self, row: &SweepRow) -> &'a str {
        &self.models[self.winner_index(row)]
    }
}

/// Evaluates every registered model at each grid point of `scenario`.
pub fn run_sweep(
    scenario: &Scenario,
    grid: &NGrid,
    registry: &ModelRegistry,
) -> Result<SweepResult> {
    if registry.is_empty() {
        return Err(Error::InvalidParams("model registry is empty".into()));
    }
    let points = grid.points();
    if points.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let rows = points
        .into_iter()
        .map(|n| {
            let params = scenario.params_at(n as f64)?;
            Ok(SweepRow {
                n,
                m: params.m(),
                l: params.l().unwrap_or(0.0),
                costs: registry.evaluate_all(&params)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        scenario: scenario.name.clone(),
        models: registry.ids(),
        kinds: registry.iter().map(|m| m.kind()).collect(),
        rows,
    })
}
