//! Instrumented Dijkstra on generated graphs, a Bellman–Ford oracle and a
//! log–log fit of measured work against the Dijkstra cost model.

mod dijkstra;
mod fit;
mod graph;

pub use dijkstra::{
    dijkstra, geometry_of, measure_path_geometry, oracle_shortest_paths, DijkstraRun, PathGeometry,
    RunStats, Summary, ORACLE_MAX_VERTICES,
};
pub use fit::{fit_cost_model, work_proxy, FitReport, MIN_FIT_SAMPLES};
pub use graph::{generate_graph, job_seed, Graph, WeightRange, MAX_PARSED_VERTICES};

use serde::{Deserialize, Serialize};

use crate::cost::{eval_dijkstra, GraphParams};
use crate::error::Result;
use crate::scenario::ScalingLaw;

/// One measured run of the scaling experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalRun {
    pub n: u32,
    pub m: usize,
    pub seed: u64,
    pub source: u32,
    pub stats: RunStats,
    pub work_proxy: f64,
    pub modeled_cost: f64,
    pub geometry: PathGeometry,
}

impl EmpiricalRun {
    pub fn params(&self) -> Result<GraphParams> {
        GraphParams::new(f64::from(self.n), self.m as f64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingExperiment {
    pub density: ScalingLaw,
    pub weights: WeightRange,
    pub seed: u64,
    pub runs: Vec<EmpiricalRun>,
    pub fit: FitReport,
}

/// Measures one run from source 0 on an already-built graph.
pub fn measure_run(g: &Graph) -> Result<EmpiricalRun> {
    let run = dijkstra(g, 0)?;
    let params = GraphParams::new(f64::from(g.n()), (g.m() as f64).max(f64::MIN_POSITIVE))?;
    Ok(EmpiricalRun {
        n: g.n(),
        m: g.m(),
        seed: g.seed().unwrap_or(0),
        source: 0,
        stats: run.stats,
        work_proxy: work_proxy(params.n(), &run.stats),
        modeled_cost: eval_dijkstra(&params),
        geometry: geometry_of(&run),
    })
}

/// Generates `reps` graphs per vertex count (job seeds derived from `seed`),
/// runs Dijkstra from vertex 0 on each and fits the work proxy.
pub fn run_scaling_experiment(
    ns: &[u32],
    density: &ScalingLaw,
    weights: WeightRange,
    seed: u64,
    reps: u32,
) -> Result<ScalingExperiment> {
    let mut runs = Vec::with_capacity(ns.len() * reps as usize);
    let mut job = 0u64;
    for &n in ns {
        for _ in 0..reps {
            let g = generate_graph(n, density, weights, job_seed(seed, job))?;
            runs.push(measure_run(&g)?);
            job += 1;
        }
    }
    let samples = runs
        .iter()
        .map(|r| Ok((r.params()?, r.stats)))
        .collect::<Result<Vec<_>>>()?;
    let fit = fit_cost_model(&samples)?;
    Ok(ScalingExperiment {
        density: *density,
        weights,
        seed,
        runs,
        fit,
    })
}
