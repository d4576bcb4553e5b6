//! Asymptotic cost models for single-source shortest path (SSSP) algorithms.
//!
//! The crate evaluates four closed-form cost functions (Dijkstra, Duan et
//! al., Grover-based search and the Wesolowski et al. quantum walk) over
//! graph-structure scenarios, locates crossover points between them, maps
//! classical/quantum advantage zones and grounds the Dijkstra model with an
//! instrumented implementation.
//!
//! ```
//! use sssp_frontier::{builtin_scenarios, run_sweep, ModelRegistry, NGrid};
//!
//! let registry = ModelRegistry::default();
//! let scenario = &builtin_scenarios()[0];
//! let grid = NGrid::anchors_only(vec![10_000, 1_000_000]).unwrap();
//! let sweep = run_sweep(scenario, &grid, &registry).unwrap();
//! assert_eq!(sweep.rows.len(), 2);
//! assert_eq!(sweep.winner(&sweep.rows[0]), "wesolowski");
//! ```

#![forbid(unsafe_code)]
#![warn(rust_2018_idioms, missing_debug_implementations)]

pub mod cost;
pub mod empirical;
mod error;
pub mod format;
pub mod frontier;
pub mod report;
pub mod scenario;

pub use cost::{
    eval_dijkstra, eval_duan, eval_grover, eval_wesolowski, CostModel, GraphParams, ModelKind,
    ModelRegistry,
};
pub use error::{Error, Result};
pub use frontier::{
    classify_rows, find_crossover, grover_barrier_check, map_zones, Classification,
    CrossoverResult, MarginalBand, WinnerRow, ZoneMap,
};
pub use scenario::{builtin_scenarios, run_sweep, NGrid, ScalingLaw, Scenario, SweepResult};
