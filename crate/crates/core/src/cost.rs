//! Closed-form SSSP cost models and the registry that orders them.
//!
//! Every model maps a [`GraphParams`] triple `(n, m, l)` to a unitless cost
//! with all hidden constant factors fixed to 1. Logarithms are base 2.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertex count `n`, edge count `m` and optional solution path length `l`.
///
/// `n` is held as a real so crossover searches can work on the continuous
/// relaxation; sweeps only ever pass integral values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GraphParams {
    n: f64,
    m: f64,
    l: Option<f64>,
}

impl GraphParams {
    pub fn new(n: f64, m: f64) -> Result<Self> {
        if !(n.is_finite() && n >= 2.0) {
            return Err(Error::InvalidParams(format!("n must be >= 2, got {n}")));
        }
        if !(m.is_finite() && m > 0.0) {
            return Err(Error::InvalidParams(format!("m must be > 0, got {m}")));
        }
        Ok(Self { n, m, l: None })
    }

    pub fn with_path_length(self, l: f64) -> Result<Self> {
        if !(l.is_finite() && l >= 0.0) {
            return Err(Error::InvalidParams(format!("l must be >= 0, got {l}")));
        }
        Ok(Self { l: Some(l), ..self })
    }

    /// Shorthand for `new(n, m)?.with_path_length(l)`.
    pub fn full(n: f64, m: f64, l: f64) -> Result<Self> {
        Self::new(n, m)?.with_path_length(l)
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn l(&self) -> Option<f64> {
        self.l
    }
}

/// Dijkstra with a Fibonacci heap: `m + n·log₂n`.
pub fn eval_dijkstra(p: &GraphParams) -> f64 {
    p.m + p.n * p.n.log2()
}

/// Duan et al.: `m·(log₂n)^(2/3)`.
pub fn eval_duan(p: &GraphParams) -> f64 {
    p.m * p.n.log2().powf(2.0 / 3.0)
}

/// Grover-accelerated iterative search: `√n·m`.
pub fn eval_grover(p: &GraphParams) -> f64 {
    p.n.sqrt() * p.m
}

/// Wesolowski et al. quantum walk with polylog factors dropped: `l·√m`.
pub fn eval_wesolowski(p: &GraphParams) -> Result<f64> {
    let l =
        p.l.ok_or_else(|| Error::MissingPathLength("wesolowski".into()))?;
    Ok(l * p.m.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Classical,
    Quantum,
}

pub type CostFn = Arc<dyn Fn(&GraphParams) -> f64 + Send + Sync>;

/// A named cost function.
#[derive(Clone)]
pub struct CostModel {
    id: String,
    kind: ModelKind,
    requires_path_length: bool,
    eval: CostFn,
}

impl CostModel {
    pub fn new<F>(id: impl Into<String>, kind: ModelKind, eval: F) -> Self
    where
        F: Fn(&GraphParams) -> f64 + Send + Sync + 'static,
    {
        Self {
            id: id.into(),
            kind,
            requires_path_length: false,
            eval: Arc::new(eval),
        }
    }

    /// Marks the model as consuming `l`; evaluation without it fails.
    pub fn requiring_path_length(mut self) -> Self {
        self.requires_path_length = true;
        self
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn requires_path_length(&self) -> bool {
        self.requires_path_length
    }

    pub fn evaluate(&self, p: &GraphParams) -> Result<f64> {
        if self.requires_path_length && p.l.is_none() {
            return Err(Error::MissingPathLength(self.id.clone()));
        }
        let cost = (self.eval)(p);
        if !cost.is_finite() || cost < 0.0 {
            return Err(Error::InvalidParams(format!(
                "model `{}` produced {cost} at n={}, m={}",
                self.id, p.n, p.m
            )));
        }
        Ok(cost)
    }
}

impl fmt::Debug for CostModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CostModel")
            .field("id", &self.id)
            .field("kind", &self.kind)
            .field("requires_path_length", &self.requires_path_length)
            .finish_non_exhaustive()
    }
}

/// Ordered set of cost models. Insertion order is column order everywhere
/// downstream and breaks ties between equal costs.
#[derive(Debug, Clone)]
pub struct ModelRegistry {
    models: Vec<CostModel>,
}

impl Default for ModelRegistry {
    /// The four built-in models in the order dijkstra, duan, grover, wesolowski.
    fn default() -> Self {
        let models = vec![
            CostModel::new("dijkstra", ModelKind::Classical, eval_dijkstra),
            CostModel::new("duan", ModelKind::Classical, eval_duan),
            CostModel::new("grover", ModelKind::Quantum, eval_grover),
            CostModel::new("wesolowski", ModelKind::Quantum, |p: &GraphParams| {
                eval_wesolowski(p).unwrap_or(f64::NAN)
            })
            .requiring_path_length(),
        ];
        Self { models }
    }
}

impl ModelRegistry {
    pub fn empty() -> Self {
        Self { models: Vec::new() }
    }

    /// Appends a model and returns its column index.
    pub fn register(&mut self, model: CostModel) -> Result<usize> {
        if self.index_of(&model.id).is_some() {
            return Err(Error::DuplicateId(model.id));
        }
        self.models.push(model);
        Ok(self.models.len() - 1)
    }

    pub fn len(&self) -> usize {
        self.models.len()
    }

    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &CostModel> {
        self.models.iter()
    }

    pub fn ids(&self) -> Vec<String> {
        self.models.iter().map(|m| m.id.clone()).collect()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.models.iter().position(|m| m.id == id)
    }

    pub fn get(&self, id: &str) -> Result<&CostModel> {
        self.models
            .iter()
            .find(|m| m.id == id)
            .ok_or_else(|| Error::UnknownModel(id.to_string()))
    }

    /// Costs of every model at `p`, in registry order.
    pub fn evaluate_all(&self, p: &GraphParams) -> Result<Vec<f64>> {
        self.models.iter().map(|m| m.evaluate(p)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: f64, m: f64) -> GraphParams {
        GraphParams::new(n, m).unwrap()
    }

    #[test]
    fn dijkstra_examples() {
        assert_eq!(eval_dijkstra(&p(2.0, 1.0)), 3.0);
        assert!((eval_dijkstra(&p(1e4, 1e5)) - 232_877.1).abs() < 0.1);
    }

    #[test]
    fn duan_examples() {
        assert!((eval_duan(&p(256.0, 2560.0)) - 10_240.0).abs() < 1e-9);
        assert_eq!(eval_duan(&p(2.0, 7.0)), 7.0);
    }

    #[test]
    fn grover_examples() {
        assert_eq!(eval_grover(&p(4.0, 3.0)), 6.0);
        assert_eq!(eval_grover(&p(100.0, 50.0)), 500.0);
    }

    #[test]
    fn wesolowski_examples() {
        let base = p(2.0, 16.0);
        assert_eq!(
            eval_wesolowski(&base.with_path_length(0.0).unwrap()),
            Ok(0.0)
        );
        assert_eq!(
            eval_wesolowski(&base.with_path_length(4.0).unwrap()),
            Ok(16.0)
        );
        assert_eq!(
            eval_wesolowski(&base),
            Err(Error::MissingPathLength("wesolowski".into()))
        );
    }

    #[test]
    fn invalid_params() {
        assert!(matches!(
            GraphParams::new(1.0, 5.0),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            GraphParams::new(10.0, 0.0),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            GraphParams::new(f64::NAN, 1.0),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            GraphParams::full(10.0, 1.0, -1.0),
            Err(Error::InvalidParams(_))
        ));
    }

    #[test]
    fn registry_order_and_duplicates() {
        let mut reg = ModelRegistry::default();
        assert_eq!(reg.ids(), ["dijkstra", "duan", "grover", "wesolowski"]);
        let idx = reg
            .register(CostModel::new("bellman_ford", ModelKind::Classical, |p| {
                p.n() * p.m()
            }))
            .unwrap();
        assert_eq!(idx, 4);
        assert_eq!(
            reg.ids(),
            ["dijkstra", "duan", "grover", "wesolowski", "bellman_ford"]
        );
        let dup = reg.register(CostModel::new("dijkstra", ModelKind::Classical, |_| 1.0));
        assert_eq!(dup.unwrap_err(), Error::DuplicateId("dijkstra".into()));
    }

    #[test]
    fn registry_requires_path_length() {
        let reg = ModelRegistry::default();
        let err = reg.evaluate_all(&p(16.0, 100.0)).unwrap_err();
        assert_eq!(err, Error::MissingPathLength("wesolowski".into()));
    }

    #[test]
    fn duan_at_powers_of_two() {
        for j in 1..=40 {
            let n = 2f64.powi(j);
            let got = eval_duan(&p(n, 1234.5));
            let want = 1234.5 * f64::from(j).powf(2.0 / 3.0);
            assert!(((got - want) / want).abs() < 1e-12, "j={j}");
        }
    }

    #[test]
    fn non_finite_user_model_rejected() {
        let m = CostModel::new("bad", ModelKind::Classical, |_| f64::INFINITY);
        assert!(matches!(
            m.evaluate(&p(2.0, 1.0)),
            Err(Error::InvalidParams(_))
        ));
    }
}
