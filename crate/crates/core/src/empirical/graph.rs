use std::collections::HashSet;
use std::fmt::Write as _;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scenario::ScalingLaw;

/// Weighted graph in compressed sparse row form.
///
/// Undirected graphs store each edge as two arcs; `m()` counts arcs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Graph {
    n: u32,
    offsets: Vec<u32>,
    targets: Vec<u32>,
    weights: Vec<f64>,
    directed: bool,
    seed: Option<u64>,
}

/// Distribution of arc weights.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum WeightRange {
    /// Uniform integers in `[lo, hi]`.
    Integer { lo: u32, hi: u32 },
    /// Uniform reals in `[lo, hi)` (`lo` when `lo == hi`).
    Real { lo: f64, hi: f64 },
}

impl Default for WeightRange {
    fn default() -> Self {
        WeightRange::Integer { lo: 1, hi: 10 }
    }
}

impl WeightRange {
    fn validate(&self) -> Result<()> {
        let ok = match *self {
            WeightRange::Integer { lo, hi } => lo <= hi,
            WeightRange::Real { lo, hi } => {
                lo.is_finite() && hi.is_finite() && 0.0 <= lo && lo <= hi
            }
        };
        if ok {
            return Ok(());
        }
        let (lo, hi) = match *self {
            WeightRange::Integer { lo, hi } => (f64::from(lo), f64::from(hi)),
            WeightRange::Real { lo, hi } => (lo, hi),
        };
        Err(Error::InvalidWeightRange { lo, hi })
    }

    fn sample(&self, rng: &mut Xoshiro256PlusPlus) -> f64 {
        match *self {
            WeightRange::Integer { lo, hi } => {
                let span = u64::from(hi - lo) + 1;
                (u64::from(lo) + bounded(rng, span)) as f64
            }
            WeightRange::Real { lo, hi } => {
                let unit = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
                lo + unit * (hi - lo)
            }
        }
    }
}

/// Uniform draw from `[0, bound)` by 128-bit multiply-shift.
fn bounded(rng: &mut Xoshiro256PlusPlus, bound: u64) -> u64 {
    ((u128::from(rng.next_u64()) * u128::from(bound)) >> 64) as u64
}

/// Largest vertex count accepted by [`Graph::parse_edge_list`].
pub const MAX_PARSED_VERTICES: u32 = 1 << 24;

/// Seed of the `job`-th independent stream derived from `seed`.
pub fn job_seed(seed: u64, job: u64) -> u64 {
    seed ^ job.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

impl Graph {
    /// Builds a graph from an arc list, rejecting self-loops, duplicates,
    /// out-of-range endpoints and negative or non-finite weights.
    pub fn from_arcs(n: u32, arcs: &[(u32, u32, f64)], directed: bool) -> Result<Self> {
        let mut all: Vec<(u32, u32, f64)> =
            Vec::with_capacity(arcs.len() * if directed { 1 } else { 2 });
        for &(u, v, w) in arcs {
            if u >= n || v >= n {
                return Err(Error::InvalidParams(format!(
                    "arc ({u}, {v}) out of range for n = {n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidParams(format!("self-loop at vertex {u}")));
            }
            if !(w.is_finite() && w >= 0.0) {
                return Err(Error::InvalidParams(format!(
                    "arc ({u}, {v}) has weight {w}"
                )));
            }
            all.push((u, v, w));
            if !directed {
                all.push((v, u, w));
            }
        }
        all.sort_by_key(|&(u, v, _)| (u, v));
        if let Some(w) = all
            .windows(2)
            .find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1))
        {
            return Err(Error::InvalidParams(format!(
                "duplicate arc ({}, {})",
                w[0].0, w[0].1
            )));
        }
        Ok(Self::from_sorted(n, all, directed, None))
    }

    fn from_sorted(n: u32, arcs: Vec<(u32, u32, f64)>, directed: bool, seed: Option<u64>) -> Self {
        let mut offsets = vec![0u32; n as usize + 1];
        for &(u, _, _) in &arcs {
            offsets[u as usize + 1] += 1;
        }
        for i in 0..n as usize {
            offsets[i + 1] += offsets[i];
        }
        let (targets, weights) = arcs.into_iter().map(|(_, v, w)| (v, w)).unzip();
        Self {
            n,
            offsets,
            targets,
            weights,
            directed,
            seed,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> usize {
        self.targets.len()
    }

    pub fn directed(&self) -> bool {
        self.directed
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn offsets(&self) -> &[u32] {
        &self.offsets
    }

    pub fn targets(&self) -> &[u32] {
        &self.targets
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Outgoing `(target, weight)` pairs of `u`.
    pub fn neighbors(&self, u: u32) -> impl Iterator<Item = (u32, f64)> + '_ {
        let (a, b) = (
            self.offsets[u as usize] as usize,
            self.offsets[u as usize + 1] as usize,
        );
        self.targets[a..b]
            .iter()
            .copied()
            .zip(self.weights[a..b].iter().copied())
    }

    /// All arcs as `(u, v, w)` in CSR order.
    pub fn arcs(&self) -> impl Iterator<Item = (u32, u32, f64)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).map(move |(v, w)| (u, v, w)))
    }

    /// Writes the edge-list exchange format: a header `n m directed` followed
    /// by one `u v w` line per edge. Undirected graphs list each edge once
    /// with `u < v`. Weights use the shortest round-trip decimal form, so
    /// integral weights print without a fractional part.
    pub fn to_edge_list(&self) -> String {
        let edges: Vec<(u32, u32, f64)> = self
            .arcs()
            .filter(|&(u, v, _)| self.directed || u < v)
            .collect();
        let mut out = String::with_capacity(16 * (edges.len() + 1));
        let _ = writeln!(
            out,
            "{} {} {}",
            self.n,
            edges.len(),
            u8::from(self.directed)
        );
        for (u, v, w) in edges {
            let _ = writeln!(out, "{u} {v} {w}");
        }
        out
    }

    /// Parses the format written by [`Graph::to_edge_list`]. Blank lines and
    /// `#` comments are ignored; the directed flag accepts `1`/`0`,
    /// `true`/`false` or `directed`/`undirected`.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing header"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let [n, m, directed] = fields[..] else {
            return Err(Error::parse(hline, "header must be `n m directed`"));
        };
        let n: u32 = n
            .parse()
            .map_err(|_| Error::parse(hline, format!("bad vertex count `{n}`")))?;
        if n == 0 {
            return Err(Error::parse(hline, "graph needs at least one vertex"));
        }
        if n > MAX_PARSED_VERTICES {
            return Err(Error::parse(
                hline,
                format!("vertex count {n} exceeds {MAX_PARSED_VERTICES}"),
            ));
        }
        let m: usize = m
            .parse()
            .map_err(|_| Error::parse(hline, format!("bad edge count `{m}`")))?;
        let directed = match directed {
            "1" | "true" | "directed" => true,
            "0" | "false" | "undirected" => false,
            other => return Err(Error::parse(hline, format!("bad directed flag `{other}`"))),
        };
        let mut arcs = Vec::with_capacity(m.min(1 << 20));
        let mut last_line = hline;
        for (line_no, line) in lines {
            last_line = line_no;
            let f: Vec<&str> = line.split_whitespace().collect();
            let [u, v, w] = f[..] else {
                return Err(Error::parse(line_no, "edge line must be `u v w`"));
            };
            let vertex = |s: &str| {
                s.parse::<u32>()
                    .map_err(|_| Error::parse(line_no, format!("bad vertex `{s}`")))
            };
            let w: f64 = w
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad weight `{w}`")))?;
            arcs.push((vertex(u)?, vertex(v)?, w));
            if arcs.len() > m {
                return Err(Error::parse(line_no, format!("more than {m} edges")));
            }
        }
        if arcs.len() != m {
            return Err(Error::parse(
                last_line,
                format!("expected {m} edges, found {}", arcs.len()),
            ));
        }
        Graph::from_arcs(n, &arcs, directed).map_err(|e| Error::parse(0, e.to_string()))
    }
}

/// Uniform random simple digraph with exactly `round(density(n))` arcs.
///
/// Deterministic given `seed`: the stream is xoshiro256++ seeded through
/// SplitMix64 (`seed_from_u64`). Arc slots `k ∈ [0, n(n−1))` map to
/// `u = k / (n−1)`, `v = r + (r ≥ u)` with `r = k mod (n−1)`; Floyd's
/// algorithm picks `m` distinct slots using draws `⌊x·(j+1) / 2⁶⁴⌋` for
/// `j = N−m .. N−1`. Weights are then drawn in CSR order.
pub fn generate_graph(
    n: u32,
    density: &ScalingLaw,
    weights: WeightRange,
    seed: u64,
) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidParams(format!("n must be >= 2, got {n}")));
    }
    weights.validate()?;
    let m_real = density.eval(f64::from(n)).round();
    let slots = u64::from(n) * u64::from(n - 1);
    if m_real.is_nan() || m_real < 0.0 || m_real > slots as f64 {
        return Err(Error::TooDense {
            n: u64::from(n),
            m: if m_real.is_finite() {
                m_real as u64
            } else {
                u64::MAX
            },
            max: slots,
        });
    }
    let m = m_real as u64;

    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let mut chosen: HashSet<u64> = HashSet::with_capacity(m as usize);
    for j in (slots - m)..slots {
        let t = bounded(&mut rng, j + 1);
        if !chosen.insert(t) {
            chosen.insert(j);
        }
    }
    let mut picked: Vec<u64> = chosen.into_iter().collect();
    picked.sort_unstable();

    let stride = u64::from(n - 1);
    let arcs = picked
        .into_iter()
        .map(|k| {
            let u = (k / stride) as u32;
            let r = (k % stride) as u32;
            let v = if r >= u { r + 1 } else { r };
            (u, v, weights.sample(&mut rng))
        })
        .collect();
    Ok(Graph::from_sorted(n, arcs, true, Some(seed)))
}
