//! Table reproduction, report bundles and their CSV/JSON/SVG encodings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::cost::ModelRegistry;
use crate::empirical::ScalingExperiment;
use crate::error::{Error, Result};
use crate::format::{round_sig, sig};
use crate::frontier::{
    classify_rows, Classification, CrossoverResult, MarginalBand, RatioSeries, ZoneMap,
};
use crate::scenario::{builtin_scenario, run_sweep, GridMode, NGrid, SweepResult};

/// JSON schema every serialized [`ReportBundle`] validates against.
pub const REPORT_SCHEMA: &str = include_str!("../schema/report.schema.json");

/// Significant digits used for table cells.
pub const TABLE_DIGITS: usize = 6;
/// Significant digits of the reference table cells that ratios are formed from.
pub const DISPLAY_DIGITS: usize = 3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostTableRow {
    pub scenario: String,
    pub n: u64,
    pub costs: Vec<f64>,
    pub winner: String,
}

/// Every model's cost on the sparse scenarios at 10⁴, 10⁶ and 10⁸.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostTable {
    pub models: Vec<String>,
    pub rows: Vec<CostTableRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioTableRow {
    pub scenario: String,
    pub n: u64,
    pub best_classical: String,
    pub best_classical_cost: f64,
    pub quantum_cost: f64,
    pub ratio: f64,
    /// Ratio of the two costs after rounding each to three significant
    /// digits, the way a table built from rounded cells reports it.
    pub displayed_ratio: f64,
    pub classification: Classification,
}

/// Best-classical over quantum-walk cost ratios across all four scenarios.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioTable {
    pub rows: Vec<RatioTableRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tables {
    pub grid_mode: GridMode,
    pub costs: CostTable,
    pub ratios: RatioTable,
}

const COST_TABLE_LAYOUT: &[(&str, &[i32])] =
    &[("sparse-short", &[4, 6, 8]), ("sparse-long", &[4, 6, 8])];
const RATIO_TABLE_LAYOUT: &[(&str, &[i32])] = &[
    ("sparse-short", &[4, 6, 8]),
    ("sparse-long", &[4, 6]),
    ("dense-short", &[4]),
    ("dense-long", &[4]),
];

fn table_sweep(
    name: &str,
    decades: &[i32],
    mode: GridMode,
    reg: &ModelRegistry,
) -> Result<SweepResult> {
    let scenario = builtin_scenario(name).expect("built-in scenario");
    run_sweep(
        &scenario,
        &NGrid::table_rows(&scenario, decades, mode)?,
        reg,
    )
}

/// Rebuilds both comparison tables with the built-in models.
pub fn reproduce_tables(mode: GridMode, band: &MarginalBand) -> Result<Tables> {
    let reg = ModelRegistry::default();
    let mut cost_rows = Vec::new();
    for &(name, decades) in COST_TABLE_LAYOUT {
        let sweep = table_sweep(name, decades, mode, &reg)?;
        for row in &sweep.rows {
            cost_rows.push(CostTableRow {
                scenario: name.to_string(),
                n: row.n,
                costs: row.costs.clone(),
                winner: sweep.winner(row).to_string(),
            });
        }
    }
    let mut ratio_rows = Vec::new();
    for &(name, decades) in RATIO_TABLE_LAYOUT {
        let sweep = table_sweep(name, decades, mode, &reg)?;
        for w in classify_rows(&sweep, band)? {
            ratio_rows.push(RatioTableRow {
                scenario: name.to_string(),
                n: w.n,
                displayed_ratio: round_sig(w.best_classical_cost, DISPLAY_DIGITS)
                    / round_sig(w.quantum_cost, DISPLAY_DIGITS),
                best_classical: w.best_classical,
                best_classical_cost: w.best_classical_cost,
                quantum_cost: w.quantum_cost,
                ratio: w.ratio,
                classification: w.classification,
            });
        }
    }
    Ok(Tables {
        grid_mode: mode,
        costs: CostTable {
            models: reg.ids(),
            rows: cost_rows,
        },
        ratios: RatioTable { rows: ratio_rows },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool_version: String,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_mode: Option<GridMode>,
    #[serde(default)]
    pub seeds: Vec<u64>,
}

impl Metadata {
    pub fn new(command: &str) -> Self {
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            grid_mode: None,
            seeds: Vec::new(),
        }
    }
}

/// Everything one CLI invocation produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportBundle {
    pub metadata: Metadata,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tables: Option<Tables>,
    #[serde(default)]
    pub sweeps: Vec<SweepResult>,
    #[serde(default)]
    pub ratio_series: Vec<RatioSeries>,
    #[serde(default)]
    pub crossovers: Vec<CrossoverResult>,
    #[serde(default)]
    pub zone_maps: Vec<ZoneMap>,
    #[serde(default)]
    pub empirical: Vec<ScalingExperiment>,
}

impl ReportBundle {
    pub fn new(metadata: Metadata) -> Self {
        Self {
            metadata,
            tables: None,
            sweeps: Vec::new(),
            ratio_series: Vec::new(),
            crossovers: Vec::new(),
            zone_maps: Vec::new(),
            empirical: Vec::new(),
        }
    }

    /// Pretty JSON; floats use the shortest representation that round-trips.
    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::InvalidParams(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))
    }
}

fn csv_string(build: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    build(&mut w).expect("writing CSV to memory");
    let bytes = w.into_inner().expect("flushing CSV to memory");
    String::from_utf8(bytes).expect("CSV output is UTF-8")
}

fn full(x: f64) -> String {
    format!("{x}")
}

/// Figure data: `n` followed by one full-precision cost column per model.
pub fn sweep_csv(sweep: &SweepResult) -> String {
    csv_string(|w| {
        let mut header = vec!["n".to_string()];
        header.extend(sweep.models.iter().cloned());
        w.write_record(&header)?;
        for row in &sweep.rows {
            let mut rec = vec![row.n.to_string()];
            rec.extend(row.costs.iter().map(|&c| full(c)));
            w.write_record(&rec)?;
        }
        Ok(())
    })
}

/// Parsed figure-data CSV: model ids and `(n, costs)` rows.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub models: Vec<String>,
    pub rows: Vec<(u64, Vec<f64>)>,
}

pub fn parse_sweep_csv(text: &str) -> Result<SweepTable> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r
        .headers()
        .map_err(|e| Error::parse(1, e.to_string()))?
        .clone();
    if header.get(0) != Some("n") {
        return Err(Error::parse(1, "first column must be `n`"));
    }
    let models: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
    let mut rows = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let line = i + 2;
        let rec = rec.map_err(|e| Error::parse(line, e.to_string()))?;
        let n = rec[0]
            .parse()
            .map_err(|_| Error::parse(line, format!("bad n `{}`", &rec[0])))?;
        let costs = rec
            .iter()
            .skip(1)
            .map(|c| {
                c.parse::<f64>()
                    .map_err(|_| Error::parse(line, format!("bad cost `{c}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push((n, costs));
    }
    Ok(SweepTable { models, rows })
}

pub fn cost_table_csv(t: &CostTable) -> String {
    csv_string(|w| {
        let mut header = vec!["scenario".to_string(), "n".to_string()];
        header.extend(t.models.iter().cloned());
        header.push("winner".into());
        w.write_record(&header)?;
        for row in &t.rows {
            let mut rec = vec![row.scenario.clone(), row.n.to_string()];
            rec.extend(row.costs.iter().map(|&c| sig(c, TABLE_DIGITS)));
            rec.push(row.winner.clone());
            w.write_record(&rec)?;
        }
        Ok(())
    })
}

pub fn ratio_table_csv(t: &RatioTable) -> String {
    csv_string(|w| {
        w.write_record([
            "scenario",
            "n",
            "best_classical",
            "best_classical_cost",
            "quantum_cost",
            "ratio",
            "displayed_ratio",
            "classification",
        ])?;
        for row in &t.rows {
            w.write_record([
                row.scenario.clone(),
                row.n.to_string(),
                row.best_classical.clone(),
                sig(row.best_classical_cost, TABLE_DIGITS),
                sig(row.quantum_cost, TABLE_DIGITS),
                sig(row.ratio, TABLE_DIGITS),
                sig(row.displayed_ratio, TABLE_DIGITS),
                row.classification.to_string(),
            ])?;
        }
        Ok(())
    })
}

pub fn zone_map_csv(z: &ZoneMap) -> String {
    csv_string(|w| {
        w.write_record([
            "alpha",
            "density_coefficient",
            "path",
            "winner",
            "ratio",
            "classification",
        ])?;
        for c in &z.cells {
            w.write_record([
                full(c.alpha),
                full(c.density.coefficient),
                c.path_label.clone(),
                c.winner.clone(),
                full(c.ratio),
                c.classification.to_string(),
            ])?;
        }
        Ok(())
    })
}

pub fn crossover_csv(results: &[CrossoverResult]) -> String {
    csv_string(|w| {
        w.write_record([
            "scenario",
            "model_a",
            "model_b",
            "n_min",
            "n_max",
            "n_star",
            "n_star_rounded",
            "bracket_lo",
            "bracket_hi",
            "sign_below",
            "sign_above",
            "more_crossings",
        ])?;
        for r in results {
            let mut rec = vec![
                r.scenario.clone(),
                r.model_a.clone(),
                r.model_b.clone(),
                full(r.n_range[0]),
                full(r.n_range[1]),
            ];
            match &r.crossing {
                Some(c) => rec.extend([
                    full(c.n_star),
                    c.n_star_rounded.to_string(),
                    full(c.bracket[0]),
                    full(c.bracket[1]),
                    c.sign_below.to_string(),
                    c.sign_above.to_string(),
                ]),
                None => rec.extend([
                    "none".to_string(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                ]),
            }
            rec.push(r.more_crossings.to_string());
            w.write_record(&rec)?;
        }
        Ok(())
    })
}

pub fn ratio_series_csv(s: &RatioSeries) -> String {
    csv_string(|w| {
        w.write_record(["n", &format!("{}/{}", s.numerator, s.denominator)])?;
        for &(n, r) in &s.points {
            w.write_record([n.to_string(), full(r)])?;
        }
        Ok(())
    })
}

pub fn empirical_csv(e: &ScalingExperiment) -> String {
    csv_string(|w| {
        w.write_record([
            "n",
            "m",
            "seed",
            "heap_pops",
            "heap_pushes",
            "edge_relaxations",
            "settled",
            "work_proxy",
            "modeled_cost",
            "reachable",
            "max_hops",
            "mean_hops",
            "max_weighted",
            "mean_weighted",
        ])?;
        for r in &e.runs {
            w.write_record([
                r.n.to_string(),
                r.m.to_string(),
                r.seed.to_string(),
                r.stats.heap_pops.to_string(),
                r.stats.heap_pushes.to_string(),
                r.stats.edge_relaxations.to_string(),
                r.stats.settled.to_string(),
                full(r.work_proxy),
                full(r.modeled_cost),
                r.geometry.reachable.to_string(),
                full(r.geometry.hops.max),
                full(r.geometry.hops.mean),
                full(r.geometry.weighted.max),
                full(r.geometry.weighted.mean),
            ])?;
        }
        Ok(())
    })
}

const PALETTE: &[&str] = &[
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
];

/// Log–log line chart of a sweep as a standalone SVG document.
pub fn sweep_svg(sweep: &SweepResult) -> String {
    let (w, h, pad) = (720.0, 480.0, 60.0);
    let positive = |c: f64| c > 0.0;
    let xs: Vec<f64> = sweep.rows.iter().map(|r| (r.n as f64).log10()).collect();
    let ys: Vec<f64> = sweep
        .rows
        .iter()
        .flat_map(|r| r.costs.iter().copied().filter(|&c| positive(c)))
        .map(f64::log10)
        .collect();
    let span = |v: &[f64]| {
        let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if lo.is_finite() && hi > lo {
            (lo, hi)
        } else {
            (lo - 1.0, lo + 1.0)
        }
    };
    let ((x0, x1), (y0, y1)) = (span(&xs), span(&ys));
    let px = |x: f64| pad + (x - x0) / (x1 - x0) * (w - 2.0 * pad);
    let py = |y: f64| h - pad - (y - y0) / (y1 - y0) * (h - 2.0 * pad);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(
        out,
        "<title>{}: cost vs n (log-log)</title>",
        sweep.scenario
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<path d="M{pad} {pad} V{} H{}" fill="none" stroke="black"/>"#,
        h - pad,
        w - pad
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" text-anchor="middle" font-size="14">log10 n ({:.1} to {:.1})</text>"#,
        w / 2.0,
        h - 20.0,
        x0,
        x1
    );
    let _ = writeln!(
        out,
        r#"<text x="16" y="{}" font-size="14" transform="rotate(-90 16 {})" text-anchor="middle">log10 cost ({:.1} to {:.1})</text>"#,
        h / 2.0,
        h / 2.0,
        y0,
        y1
    );
    for (i, model) in sweep.models.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let pts: Vec<String> = sweep
            .rows
            .iter()
            .zip(&xs)
            .filter(|(r, _)| positive(r.costs[i]))
            .map(|(r, &x)| format!("{:.2},{:.2}", px(x), py(r.costs[i].log10())))
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{color}" stroke-width="2" points="{}"><title>{model}</title></polyline>"#,
            pts.join(" ")
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" fill="{color}" font-size="13">{model}</text>"#,
            pad + 10.0,
            pad + 16.0 * (i as f64 + 1.0)
        );
    }
    out.push_str("</svg>\n");
    out
}
