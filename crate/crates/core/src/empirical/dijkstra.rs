use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use super::graph::Graph;
use crate::error::{Error, Result};

/// Operation counters collected during one run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunStats {
    /// Every pop, including stale entries skipped by lazy deletion.
    pub heap_pops: u64,
    pub heap_pushes: u64,
    /// Arcs scanned out of settled vertices.
    pub edge_relaxations: u64,
    /// Pops that settled a vertex.
    pub settled: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DijkstraRun {
    pub source: u32,
    /// `f64::INFINITY` for unreachable vertices.
    pub dist: Vec<f64>,
    pub pred: Vec<Option<u32>>,
    /// Arc count of each vertex's shortest-path tree path (0 if unreachable).
    pub hops: Vec<u32>,
    pub stats: RunStats,
    /// Hop count of the path to the farthest reachable vertex.
    pub hop_length: u32,
    /// Distance to the farthest reachable vertex.
    pub weighted_length: f64,
}

impl DijkstraRun {
    /// Vertices from the source to `v` along predecessors, or `None` if `v`
    /// is unreachable.
    pub fn path_to(&self, v: u32) -> Option<Vec<u32>> {
        if !self.dist.get(v as usize)?.is_finite() {
            return None;
        }
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.pred[cur as usize] {
            path.push(p);
            cur = p;
            if path.len() > self.dist.len() {
                return None;
            }
        }
        path.reverse();
        Some(path)
    }
}

#[derive(Clone, Copy, PartialEq)]
struct Entry {
    dist: f64,
    vertex: u32,
}

impl Eq for Entry {}

impl Ord for Entry {
    // Reversed so BinaryHeap pops the smallest distance first.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn check_source(g: &Graph, s: u32) -> Result<()> {
    if s >= g.n() {
        return Err(Error::InvalidSource {
            vertex: s,
            n: g.n(),
        });
    }
    Ok(())
}

/// Single-source shortest paths with a binary heap and lazy deletion.
pub fn dijkstra(g: &Graph, s: u32) -> Result<DijkstraRun> {
    check_source(g, s)?;
    let n = g.n() as usize;
    let mut dist = vec![f64::INFINITY; n];
    let mut pred = vec![None; n];
    let mut hops = vec![0u32; n];
    let mut settled = vec![false; n];
    let mut stats = RunStats::default();
    let mut heap = BinaryHeap::new();

    dist[s as usize] = 0.0;
    heap.push(Entry {
        dist: 0.0,
        vertex: s,
    });
    stats.heap_pushes += 1;

    while let Some(Entry { dist: d, vertex: u }) = heap.pop() {
        stats.heap_pops += 1;
        let ui = u as usize;
        if settled[ui] || d > dist[ui] {
            continue;
        }
        settled[ui] = true;
        stats.settled += 1;
        for (v, w) in g.neighbors(u) {
            stats.edge_relaxations += 1;
            let vi = v as usize;
            let cand = d + w;
            if cand < dist[vi] {
                dist[vi] = cand;
                pred[vi] = Some(u);
                hops[vi] = hops[ui] + 1;
                heap.push(Entry {
                    dist: cand,
                    vertex: v,
                });
                stats.heap_pushes += 1;
            }
        }
    }

    let mut far = s as usize;
    for (v, &d) in dist.iter().enumerate() {
        if d.is_finite() && d > dist[far] {
            far = v;
        }
    }
    Ok(DijkstraRun {
        source: s,
        hop_length: hops[far],
        weighted_length: dist[far],
        dist,
        pred,
        hops,
        stats,
    })
}

/// Largest graph the quadratic oracle accepts.
pub const ORACLE_MAX_VERTICES: u32 = 5000;

/// Bellman–Ford relaxation to fixpoint: at most `n − 1` full passes over the
/// arc list, stopping early once a pass changes nothing.
pub fn oracle_shortest_paths(g: &Graph, s: u32) -> Result<Vec<f64>> {
    check_source(g, s)?;
    if g.n() > ORACLE_MAX_VERTICES {
        return Err(Error::InvalidParams(format!(
            "oracle is limited to {ORACLE_MAX_VERTICES} vertices, got {}",
            g.n()
        )));
    }
    let mut dist = vec![f64::INFINITY; g.n() as usize];
    dist[s as usize] = 0.0;
    let arcs: Vec<(u32, u32, f64)> = g.arcs().collect();
    for _ in 1..g.n() {
        let mut changed = false;
        for &(u, v, w) in &arcs {
            let du = dist[u as usize];
            if du.is_finite() && du + w < dist[v as usize] {
                dist[v as usize] = du + w;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(dist)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub max: f64,
    pub mean: f64,
    pub median: f64,
}

impl Summary {
    fn of(mut values: Vec<f64>) -> Self {
        if values.is_empty() {
            return Self {
                max: 0.0,
                mean: 0.0,
                median: 0.0,
            };
        }
        values.sort_by(f64::total_cmp);
        let k = values.len();
        let median = if k % 2 == 1 {
            values[k / 2]
        } else {
            0.5 * (values[k / 2 - 1] + values[k / 2])
        };
        Self {
            max: values[k - 1],
            mean: values.iter().sum::<f64>() / k as f64,
            median,
        }
    }
}

/// Realized path lengths over all vertices reachable from the source
/// (the source itself excluded).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathGeometry {
    pub reachable: usize,
    pub hops: Summary,
    pub weighted: Summary,
}

pub fn measure_path_geometry(g: &Graph, s: u32) -> Result<PathGeometry> {
    let run = dijkstra(g, s)?;
    Ok(geometry_of(&run))
}

pub fn geometry_of(run: &DijkstraRun) -> PathGeometry {
    let reach: Vec<usize> = (0..run.dist.len())
        .filter(|&v| v != run.source as usize && run.dist[v].is_finite())
        .collect();
    PathGeometry {
        reachable: reach.len(),
        hops: Summary::of(reach.iter().map(|&v| f64::from(run.hops[v])).collect()),
        weighted: Summary::of(reach.iter().map(|&v| run.dist[v]).collect()),
    }
}
