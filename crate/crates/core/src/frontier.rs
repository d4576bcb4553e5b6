//! Winner classification, cost ratios, crossover search and advantage-zone
//! maps built on top of sweeps.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cost::{CostModel, ModelKind, ModelRegistry};
use crate::error::{Error, Result};
use crate::format::{parse_count, parse_real};
use crate::scenario::{long_path_law, short_path_law, NGrid, ScalingLaw, Scenario, SweepResult};

/// Id of the model whose cost is the denominator of every advantage ratio.
pub const REFERENCE_QUANTUM_MODEL: &str = "wesolowski";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Quantum,
    Classical,
    Marginal,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Quantum => "Quantum",
            Classification::Classical => "Classical",
            Classification::Marginal => "Marginal",
        })
    }
}

/// Ratios in `[lo, hi)` are marginal; at or above `hi` quantum; below `lo`
/// classical.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MarginalBand {
    pub lo: f64,
    pub hi: f64,
}

impl Default for MarginalBand {
    fn default() -> Self {
        Self { lo: 0.8, hi: 1.25 }
    }
}

impl MarginalBand {
    pub fn classify(&self, ratio: f64) -> Classification {
        if ratio >= self.hi {
            Classification::Quantum
        } else if ratio >= self.lo {
            Classification::Marginal
        } else {
            Classification::Classical
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WinnerRow {
    pub n: u64,
    pub winner: String,
    pub best_classical: String,
    /// A: cheapest classical cost.
    pub best_classical_cost: f64,
    /// B: the reference quantum model's cost.
    pub quantum_cost: f64,
    /// A / B
    pub ratio: f64,
    pub classification: Classification,
}

struct RowVerdict {
    winner: usize,
    best_classical: usize,
    ratio: f64,
    classification: Classification,
}

fn judge(costs: &[f64], kinds: &[ModelKind], quantum: usize, band: &MarginalBand) -> RowVerdict {
    let mut winner = 0;
    let mut best_classical: Option<usize> = None;
    for (i, &c) in costs.iter().enumerate() {
        if c < costs[winner] {
            winner = i;
        }
        if kinds[i] == ModelKind::Classical && best_classical.is_none_or(|b| c < costs[b]) {
            best_classical = Some(i);
        }
    }
    let best_classical = best_classical.expect("caller checked for a classical model");
    let ratio = costs[best_classical] / costs[quantum];
    RowVerdict {
        winner,
        best_classical,
        ratio,
        classification: band.classify(ratio),
    }
}

fn reference_columns(models: &[String], kinds: &[ModelKind]) -> Result<usize> {
    if !kinds.contains(&ModelKind::Classical) {
        return Err(Error::MissingModelKind("at least one classical model"));
    }
    models
        .iter()
        .position(|m| m == REFERENCE_QUANTUM_MODEL)
        .ok_or(Error::MissingModelKind("the wesolowski model"))
}

/// Winner, best classical cost and advantage ratio for every sweep row.
pub fn classify_rows(sweep: &SweepResult, band: &MarginalBand) -> Result<Vec<WinnerRow>> {
    let quantum = reference_columns(&sweep.models, &sweep.kinds)?;
    Ok(sweep
        .rows
        .iter()
        .map(|row| {
            let v = judge(&row.costs, &sweep.kinds, quantum, band);
            WinnerRow {
                n: row.n,
                winner: sweep.models[v.winner].clone(),
                best_classical: sweep.models[v.best_classical].clone(),
                best_classical_cost: row.costs[v.best_classical],
                quantum_cost: row.costs[quantum],
                ratio: v.ratio,
                classification: v.classification,
            }
        })
        .collect())
}

/// A located sign change of `cost_a − cost_b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Crossing {
    pub n_star: f64,
    pub n_star_rounded: u64,
    /// Probe interval that first bracketed the sign change.
    pub bracket: [f64; 2],
    pub sign_below: i8,
    pub sign_above: i8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossoverResult {
    pub scenario: String,
    pub model_a: String,
    pub model_b: String,
    pub n_range: [f64; 2],
    /// `None` when the difference keeps one sign over the range.
    pub crossing: Option<Crossing>,
    /// More sign changes exist above the reported one.
    pub more_crossings: bool,
}

const PROBES_PER_DECADE: f64 = 100.0;
const MAX_N: f64 = 1e12;

fn sign(x: f64) -> i8 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

/// `ln cost_a(n) − ln cost_b(n)` along the scenario, with exact ties at 0.
fn log_gap(scenario: &Scenario, a: &CostModel, b: &CostModel, n: f64) -> Result<f64> {
    let p = scenario.params_at(n)?;
    let (ca, cb) = (a.evaluate(&p)?, b.evaluate(&p)?);
    Ok(if ca == cb { 0.0 } else { ca.ln() - cb.ln() })
}

/// Smallest-`n` crossover of two models along `scenario` within
/// `[n_min, n_max]`.
///
/// Probes 100 log-spaced points per decade for a sign change, then bisects in
/// `log n` until the bracket is tighter than one part in 10¹².
pub fn find_crossover(
    scenario: &Scenario,
    registry: &ModelRegistry,
    model_a: &str,
    model_b: &str,
    n_min: f64,
    n_max: f64,
) -> Result<CrossoverResult> {
    if !(n_min >= 2.0 && n_max <= MAX_N && n_min < n_max) {
        return Err(Error::InvalidRange(format!(
            "crossover range must satisfy 2 <= nmin < nmax <= 1e12, got [{n_min}, {n_max}]"
        )));
    }
    let (a, b) = (registry.get(model_a)?, registry.get(model_b)?);
    let gap = |n: f64| log_gap(scenario, a, b, n);

    let (lo, hi) = (n_min.log10(), n_max.log10());
    let steps = ((hi - lo) * PROBES_PER_DECADE).ceil().max(1.0) as usize;
    let mut probes = Vec::with_capacity(steps + 1);
    for k in 0..=steps {
        let x = if k == steps {
            hi
        } else {
            lo + (hi - lo) * k as f64 / steps as f64
        };
        let s = sign(gap(10f64.powf(x))?);
        if s != 0 {
            probes.push((x, s));
        }
    }

    let changes: Vec<usize> = (1..probes.len())
        .filter(|&i| probes[i - 1].1 != probes[i].1)
        .collect();
    let mut result = CrossoverResult {
        scenario: scenario.name.clone(),
        model_a: model_a.to_string(),
        model_b: model_b.to_string(),
        n_range: [n_min, n_max],
        crossing: None,
        more_crossings: changes.len() > 1,
    };
    let Some(&first) = changes.first() else {
        return Ok(result);
    };

    let (mut x_lo, s_lo) = probes[first - 1];
    let (mut x_hi, s_hi) = probes[first];
    let bracket = [10f64.powf(x_lo), 10f64.powf(x_hi)];
    for _ in 0..200 {
        if (x_hi - x_lo) * std::f64::consts::LN_10 <= 1e-13 {
            break;
        }
        let mid = 0.5 * (x_lo + x_hi);
        let s = sign(gap(10f64.powf(mid))?);
        if s == 0 {
            x_lo = mid;
            x_hi = mid;
            break;
        }
        if s == s_lo {
            x_lo = mid;
        } else {
            x_hi = mid;
        }
    }
    let n_star = 10f64.powf(0.5 * (x_lo + x_hi));
    result.crossing = Some(Crossing {
        n_star,
        n_star_rounded: n_star.round() as u64,
        bracket,
        sign_below: s_lo,
        sign_above: s_hi,
    });
    Ok(result)
}

/// `cost_numerator / cost_denominator` over a grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioSeries {
    pub scenario: String,
    pub numerator: String,
    pub denominator: String,
    pub points: Vec<(u64, f64)>,
    pub strictly_increasing: bool,
}

pub fn cost_ratio_series(
    scenario: &Scenario,
    grid: &NGrid,
    registry: &ModelRegistry,
    numerator: &str,
    denominator: &str,
) -> Result<RatioSeries> {
    let num = registry.get(numerator)?;
    let den = registry.get(denominator)?;
    let ns = grid.points();
    if ns.is_empty() {
        return Err(Error::InvalidRange(
            "ratio series needs a non-empty grid".into(),
        ));
    }
    let points = ns
        .into_iter()
        .map(|n| {
            let p = scenario.params_at(n as f64)?;
            Ok((n, num.evaluate(&p)? / den.evaluate(&p)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let strictly_increasing = points.windows(2).all(|w| w[1].1 > w[0].1);
    Ok(RatioSeries {
        scenario: scenario.name.clone(),
        numerator: numerator.to_string(),
        denominator: denominator.to_string(),
        points,
        strictly_increasing,
    })
}

/// Grover-to-Dijkstra cost ratio along `scenario`; a strictly increasing
/// series means the quadratic search speedup never catches the classical
/// baseline on this grid.
pub fn grover_barrier_check(
    scenario: &Scenario,
    grid: &NGrid,
    registry: &ModelRegistry,
) -> Result<RatioSeries> {
    cost_ratio_series(scenario, grid, registry, "grover", "dijkstra")
}

/// Density law with exponent `alpha` interpolated log-linearly through the
/// two reference laws: `c(α) = 10^(4 − 3α)` gives `10n` at α = 1 and
/// `n²/100` at α = 2.
pub fn density_law_for_exponent(alpha: f64) -> Result<ScalingLaw> {
    ScalingLaw::power(10f64.powf(4.0 - 3.0 * alpha), alpha)
}

/// `start:end:count` evenly spaced values, endpoints included.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExponentRange {
    pub start: f64,
    pub end: f64,
    pub count: usize,
}

impl ExponentRange {
    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.end - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    self.end
                } else {
                    self.start + step * i as f64
                }
            })
            .collect()
    }
}

impl FromStr for ExponentRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fields: Vec<&str> = s.split(':').collect();
        let [start, end, count] = fields[..] else {
            return Err(Error::parse(
                0,
                format!("expected `start:end:count`, got `{s}`"),
            ));
        };
        let count = parse_count(count)?;
        if count == 0 || count > 100_000 {
            return Err(Error::parse(
                0,
                format!("count must be in 1..=100000, got {count}"),
            ));
        }
        let (start, end) = (parse_real(start, 0)?, parse_real(end, 0)?);
        if end < start {
            return Err(Error::parse(
                0,
                format!("range end {end} is below start {start}"),
            ));
        }
        Ok(Self {
            start,
            end,
            count: count as usize,
        })
    }
}

/// A labelled path-length law on the zone map's second axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathAxisEntry {
    pub label: String,
    pub law: ScalingLaw,
}

/// Parses a comma list of `short`, `long` or explicit laws such as
/// `polylog:1:1.5`.
pub fn parse_path_axis(s: &str) -> Result<Vec<PathAxisEntry>> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim) {
        let law = match item {
            "short" => short_path_law(),
            "long" => long_path_law(),
            "" => return Err(Error::parse(0, "empty path-law entry")),
            other => other.parse()?,
        };
        out.push(PathAxisEntry {
            label: item.to_string(),
            law,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZoneCell {
    pub alpha: f64,
    pub density: ScalingLaw,
    pub path_label: String,
    pub path: ScalingLaw,
    pub winner: String,
    pub ratio: f64,
    pub classification: Classification,
}

/// Classification of the density-exponent × path-law plane at one `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZoneMap {
    pub reference_n: f64,
    pub alphas: Vec<f64>,
    pub paths: Vec<PathAxisEntry>,
    /// Row-major: all path laws for the first alpha, then the next alpha.
    pub cells: Vec<ZoneCell>,
}

impl ZoneMap {
    pub fn cell(&self, alpha_idx: usize, path_idx: usize) -> &ZoneCell {
        &self.cells[alpha_idx * self.paths.len() + path_idx]
    }
}

pub fn map_zones(
    alphas: &[f64],
    paths: &[PathAxisEntry],
    reference_n: f64,
    registry: &ModelRegistry,
    band: &MarginalBand,
) -> Result<ZoneMap> {
    if !(reference_n.is_finite() && reference_n >= 2.0) {
        return Err(Error::InvalidParams(format!(
            "reference n must be >= 2, got {reference_n}"
        )));
    }
    if alphas.is_empty() || paths.is_empty() {
        return Err(Error::InvalidParams(
            "zone map axes must be non-empty".into(),
        ));
    }
    let models = registry.ids();
    let kinds: Vec<ModelKind> = registry.iter().map(|m| m.kind()).collect();
    let quantum = reference_columns(&models, &kinds)?;
    let mut cells = Vec::with_capacity(alphas.len() * paths.len());
    for &alpha in alphas {
        let density = density_law_for_exponent(alpha)?;
        for entry in paths {
            let scenario = Scenario {
                name: format!("alpha={alpha}/{}", entry.label),
                density,
                path: entry.law,
                calibration_shift: None,
            };
            let costs = registry.evaluate_all(&scenario.params_at(reference_n)?)?;
            let v = judge(&costs, &kinds, quantum, band);
            cells.push(ZoneCell {
                alpha,
                density,
                path_label: entry.label.clone(),
                path: entry.law,
                winner: models[v.winner].clone(),
                ratio: v.ratio,
                classification: v.classification,
            });
        }
    }
    Ok(ZoneMap {
        reference_n,
        alphas: alphas.to_vec(),
        paths: paths.to_vec(),
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{builtin_scenario, run_sweep};

    fn exact(name: &str, ns: Vec<u64>) -> SweepResult {
        let grid = NGrid::anchors_only(ns).unwrap();
        run_sweep(
            &builtin_scenario(name).unwrap(),
            &grid,
            &ModelRegistry::default(),
        )
        .unwrap()
    }

    #[test]
    fn band_edges() {
        let band = MarginalBand::default();
        assert_eq!(band.classify(0.8), Classification::Marginal);
        assert_eq!(band.classify(0.79999), Classification::Classical);
        assert_eq!(band.classify(1.25), Classification::Quantum);
        assert_eq!(band.classify(1.2499), Classification::Marginal);
    }

    #[test]
    fn sparse_short_ratio_at_decade() {
        let rows = classify_rows(
            &exact("sparse-short", vec![10_000]),
            &MarginalBand::default(),
        )
        .unwrap();
        // 232877.12 / (13.2877² · √1e5)
        assert!((rows[0].ratio - 4.1709).abs() < 1e-3, "{}", rows[0].ratio);
        assert_eq!(rows[0].classification, Classification::Quantum);
        assert_eq!(rows[0].best_classical, "dijkstra");
    }

    #[test]
    fn dense_long_is_marginal() {
        let rows =
            classify_rows(&exact("dense-long", vec![10_000]), &MarginalBand::default()).unwrap();
        assert!((rows[0].ratio - 1.1329).abs() < 1e-3);
        assert_eq!(rows[0].classification, Classification::Marginal);
    }

    #[test]
    fn classify_needs_reference_models() {
        let mut reg = ModelRegistry::empty();
        reg.register(CostModel::new("grover", ModelKind::Quantum, |p| p.m()))
            .unwrap();
        let grid = NGrid::anchors_only(vec![100]).unwrap();
        let sweep = run_sweep(&builtin_scenario("sparse-long").unwrap(), &grid, &reg).unwrap();
        assert!(matches!(
            classify_rows(&sweep, &MarginalBand::default()),
            Err(Error::MissingModelKind(_))
        ));
        reg.register(CostModel::new("dijkstra", ModelKind::Classical, |p| p.m()))
            .unwrap();
        let sweep = run_sweep(&builtin_scenario("sparse-long").unwrap(), &grid, &reg).unwrap();
        assert_eq!(
            classify_rows(&sweep, &MarginalBand::default()),
            Err(Error::MissingModelKind("the wesolowski model"))
        );
    }

    #[test]
    fn all_equal_costs_pick_first() {
        let mut reg = ModelRegistry::empty();
        reg.register(CostModel::new("dijkstra", ModelKind::Classical, |_| 3.0))
            .unwrap();
        reg.register(CostModel::new("duan", ModelKind::Classical, |_| 3.0))
            .unwrap();
        reg.register(CostModel::new("wesolowski", ModelKind::Quantum, |_| 3.0))
            .unwrap();
        let grid = NGrid::anchors_only(vec![100]).unwrap();
        let sweep = run_sweep(&builtin_scenario("dense-long").unwrap(), &grid, &reg).unwrap();
        let rows = classify_rows(&sweep, &MarginalBand::default()).unwrap();
        assert_eq!(rows[0].winner, "dijkstra");
        assert_eq!(rows[0].best_classical, "dijkstra");
        assert_eq!(rows[0].ratio, 1.0);
    }

    #[test]
    fn crossover_sparse_long() {
        let reg = ModelRegistry::default();
        let sc = builtin_scenario("sparse-long").unwrap();
        let res = find_crossover(&sc, &reg, "dijkstra", "wesolowski", 1e2, 1e8).unwrap();
        let c = res.crossing.unwrap();
        assert!((4_900.0..5_100.0).contains(&c.n_star), "{}", c.n_star);
        assert_eq!((c.sign_below, c.sign_above), (1, -1));
        assert!(!res.more_crossings);
        let p = sc.params_at(c.n_star).unwrap();
        let gap = reg.get("dijkstra").unwrap().evaluate(&p).unwrap().ln()
            - reg.get("wesolowski").unwrap().evaluate(&p).unwrap().ln();
        assert!(gap.abs() <= 1e-6);
    }

    #[test]
    fn crossover_none_and_degenerate() {
        let reg = ModelRegistry::default();
        let sc = builtin_scenario("sparse-short").unwrap();
        let res = find_crossover(&sc, &reg, "dijkstra", "wesolowski", 1e2, 1e8).unwrap();
        assert!(res.crossing.is_none());
        let same = find_crossover(&sc, &reg, "duan", "duan", 1e2, 1e8).unwrap();
        assert!(same.crossing.is_none());
        assert!(!same.more_crossings);
    }

    #[test]
    fn crossover_range_errors() {
        let reg = ModelRegistry::default();
        let sc = builtin_scenario("sparse-short").unwrap();
        for (lo, hi) in [(1.0, 1e3), (1e3, 1e13), (1e4, 1e3), (f64::NAN, 1e3)] {
            assert!(matches!(
                find_crossover(&sc, &reg, "dijkstra", "grover", lo, hi),
                Err(Error::InvalidRange(_))
            ));
        }
        assert!(matches!(
            find_crossover(&sc, &reg, "dijkstra", "nope", 1e2, 1e3),
            Err(Error::UnknownModel(_))
        ));
    }

    #[test]
    fn crossover_reports_extra_sign_changes() {
        // (log₂n − 10)² crosses 1 at n = 2⁹ and n = 2¹¹.
        let mut reg = ModelRegistry::empty();
        reg.register(CostModel::new("bowl", ModelKind::Classical, |p| {
            (p.n().log2() - 10.0).powi(2) + 0.5
        }))
        .unwrap();
        reg.register(CostModel::new("flat", ModelKind::Classical, |_| 1.5))
            .unwrap();
        let sc = builtin_scenario("sparse-short").unwrap();
        let res = find_crossover(&sc, &reg, "bowl", "flat", 2.0, 1e6).unwrap();
        let c = res.crossing.unwrap();
        assert!((c.n_star - 512.0).abs() < 1e-6, "{}", c.n_star);
        assert_eq!(c.n_star_rounded, 512);
        assert!(res.more_crossings);
    }

    #[test]
    fn grover_barrier_examples() {
        let reg = ModelRegistry::default();
        let sc = builtin_scenario("sparse-short").unwrap();
        let grid = NGrid::anchors_only(vec![10_000, 1_000_000, 100_000_000]).unwrap();
        let s = grover_barrier_check(&sc, &grid, &reg).unwrap();
        assert!(s.strictly_increasing);
        assert!((s.points[0].1 - 42.941).abs() < 1e-3);
        let s = grover_barrier_check(&sc, &NGrid::anchors_only(vec![2]).unwrap(), &reg).unwrap();
        assert!((s.points[0].1 - 28.284_271_247 / 22.0).abs() < 1e-9);
    }

    #[test]
    fn grover_barrier_constant_ratio() {
        let mut reg = ModelRegistry::empty();
        reg.register(CostModel::new("dijkstra", ModelKind::Classical, |p| p.m()))
            .unwrap();
        reg.register(CostModel::new("grover", ModelKind::Quantum, |p| p.m()))
            .unwrap();
        let sc = builtin_scenario("sparse-short").unwrap();
        let s = grover_barrier_check(&sc, &"1e2,1e6,5".parse().unwrap(), &reg).unwrap();
        assert!(s.points.iter().all(|&(_, r)| r == 1.0));
        assert!(!s.strictly_increasing);
    }

    #[test]
    fn density_interpolation_hits_reference_laws() {
        let sparse = density_law_for_exponent(1.0).unwrap();
        assert!((sparse.eval(1e4) - 1e5).abs() < 1e-6);
        let dense = density_law_for_exponent(2.0).unwrap();
        assert!((dense.eval(1e4) - 1e6).abs() < 1e-3);
    }

    #[test]
    fn exponent_range_parsing() {
        let r: ExponentRange = "0.5:2.5:9".parse().unwrap();
        let v = r.values();
        assert_eq!(v.len(), 9);
        assert_eq!(v[2], 1.0);
        assert_eq!(v[6], 2.0);
        assert_eq!(v[8], 2.5);
        assert_eq!("1:1:1".parse::<ExponentRange>().unwrap().values(), [1.0]);
        for bad in ["1:2", "1:2:0", "2:1:3", "a:1:2", "1:2:x"] {
            assert!(bad.parse::<ExponentRange>().is_err(), "{bad}");
        }
    }

    #[test]
    fn zone_cells_from_table() {
        let reg = ModelRegistry::default();
        let band = MarginalBand::default();
        let paths = parse_path_axis("short,long").unwrap();
        let z = map_zones(&[1.0, 2.0], &paths, 1e6, &reg, &band).unwrap();
        assert_eq!(z.cells.len(), 4);
        assert_eq!(z.cell(0, 0).classification, Classification::Quantum);
        assert_eq!(z.cell(0, 1).classification, Classification::Classical);
        assert_eq!(z.cell(1, 0).classification, Classification::Quantum);
        let z = map_zones(&[2.0], &paths[1..], 1e4, &reg, &band).unwrap();
        assert_eq!(z.cells[0].classification, Classification::Marginal);
    }

    #[test]
    fn zone_errors() {
        let reg = ModelRegistry::default();
        let band = MarginalBand::default();
        let paths = parse_path_axis("short").unwrap();
        assert!(map_zones(&[1.0], &paths, 1.0, &reg, &band).is_err());
        assert!(map_zones(&[], &paths, 1e4, &reg, &band).is_err());
        assert!(parse_path_axis("short,,long").is_err());
        assert!(parse_path_axis("medium").is_err());
    }
}
