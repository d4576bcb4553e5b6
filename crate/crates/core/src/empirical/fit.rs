use serde::{Deserialize, Serialize};

use super::dijkstra::RunStats;
use crate::cost::{eval_dijkstra, GraphParams};
use crate::error::{Error, Result};

/// Measured work of one run: settled pops weighted by `log₂n` plus arc
/// scans, mirroring the two terms of `m + n·log₂n`.
pub fn work_proxy(n: f64, stats: &RunStats) -> f64 {
    stats.settled as f64 * n.log2() + stats.edge_relaxations as f64
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub samples: usize,
    /// Least-squares `c` in `work ≈ c · C_Dijkstra(n, m)`.
    pub constant: f64,
    /// Slope of `ln work` against `ln C_Dijkstra`; `None` when degenerate.
    pub slope: Option<f64>,
    pub intercept: Option<f64>,
    pub r_squared: Option<f64>,
    /// Every run has the same modeled cost, so no regression is possible.
    pub degenerate: bool,
}

pub const MIN_FIT_SAMPLES: usize = 5;

/// Fits measured work against the Dijkstra cost model.
///
/// Needs at least five runs whose `n` spans a decade. Runs that all share
/// one modeled cost produce a report flagged `degenerate` instead of an
/// error.
pub fn fit_cost_model(runs: &[(GraphParams, RunStats)]) -> Result<FitReport> {
    if runs.len() < MIN_FIT_SAMPLES {
        return Err(Error::InsufficientData(format!(
            "need at least {MIN_FIT_SAMPLES} runs, got {}",
            runs.len()
        )));
    }
    let model: Vec<f64> = runs.iter().map(|(p, _)| eval_dijkstra(p)).collect();
    let work: Vec<f64> = runs.iter().map(|(p, s)| work_proxy(p.n(), s)).collect();
    let constant = model.iter().zip(&work).map(|(x, y)| x * y).sum::<f64>()
        / model.iter().map(|x| x * x).sum::<f64>();

    if model.iter().all(|&x| x == model[0]) {
        return Ok(FitReport {
            samples: runs.len(),
            constant,
            slope: None,
            intercept: None,
            r_squared: None,
            degenerate: true,
        });
    }
    let (n_lo, n_hi) = runs.iter().fold((f64::INFINITY, 0f64), |(lo, hi), (p, _)| {
        (lo.min(p.n()), hi.max(p.n()))
    });
    if n_hi < 10.0 * n_lo {
        return Err(Error::InsufficientData(format!(
            "runs span n in [{n_lo}, {n_hi}], less than one decade"
        )));
    }
    if work.iter().any(|&y| y <= 0.0) {
        return Err(Error::InsufficientData("a run performed no work".into()));
    }

    let xs: Vec<f64> = model.iter().map(|x| x.ln()).collect();
    let ys: Vec<f64> = work.iter().map(|y| y.ln()).collect();
    let k = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / k, ys.iter().sum::<f64>() / k);
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - (intercept + slope * x)).powi(2))
        .sum();
    let ss_tot: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let r_squared = if ss_tot == 0.0 {
        0.0
    } else {
        1.0 - ss_res / ss_tot
    };
    Ok(FitReport {
        samples: runs.len(),
        constant,
        slope: Some(slope),
        intercept: Some(intercept),
        r_squared: Some(r_squared),
        degenerate: false,
    })
}
