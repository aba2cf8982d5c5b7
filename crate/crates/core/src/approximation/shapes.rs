//! Per-node engine dispatch and the resulting weight store.

use std::fmt;
use std::io::Write;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::domain::NodeSet;
use crate::error::{Error, Result};
use crate::geometry::{dist, Point};
use crate::stencil::Stencil;

use super::{LinearOperator, RbfConfig, RbfEngine, WlsConfig, WlsEngine};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Engine {
    #[serde(rename = "WLS")]
    Wls,
    #[serde(rename = "RBF-FD")]
    RbfFd,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Wls => "WLS",
            Engine::RbfFd => "RBF-FD",
        })
    }
}

/// Which engine approximates the operators at each node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngineAssignment {
    labels: Vec<Engine>,
}

impl EngineAssignment {
    pub fn uniform(len: usize, engine: Engine) -> Self {
        Self { labels: vec![engine; len] }
    }

    pub fn from_labels(labels: Vec<Engine>) -> Self {
        Self { labels }
    }

    pub fn labels(&self) -> &[Engine] {
        &self.labels
    }

    pub fn label(&self, node: usize) -> Engine {
        self.labels[node]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn count(&self, engine: Engine) -> usize {
        self.labels.iter().filter(|&&e| e == engine).count()
    }
}

/// RBF-FD strictly inside the ball `‖x − center‖ < radius`, WLS elsewhere.
pub fn assign_engines<const D: usize>(nodes: &NodeSet<D>, center: &Point<D>, radius: f64) -> Result<EngineAssignment> {
    if !(radius >= 0.0) {
        return Err(Error::Config(format!("assignment radius must be non-negative, got {radius}")));
    }
    let labels = nodes
        .positions()
        .iter()
        .map(|x| if dist(x, center) < radius { Engine::RbfFd } else { Engine::Wls })
        .collect();
    Ok(EngineAssignment { labels })
}

/// Operator weights per node, together with the engine that produced them
/// and the wall-clock time of the computing pass.
#[derive(Clone, Debug)]
pub struct ShapeStore {
    operators: Vec<LinearOperator>,
    engines: Vec<Option<Engine>>,
    ranges: Vec<Option<(usize, usize)>>,
    support: Vec<usize>,
    weights: Vec<Vec<f64>>,
    elapsed: Duration,
}

impl ShapeStore {
    pub fn operators(&self) -> &[LinearOperator] {
        &self.operators
    }

    /// Number of nodes the store is indexed over.
    pub fn len(&self) -> usize {
        self.ranges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranges.is_empty()
    }

    /// Nodes that carry weights.
    pub fn computed(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.ranges.len()).filter(|&i| self.ranges[i].is_some())
    }

    pub fn engine(&self, node: usize) -> Option<Engine> {
        self.engines[node]
    }

    /// Node indices the weights of `node` refer to, center first.
    pub fn support(&self, node: usize) -> Option<&[usize]> {
        self.ranges[node].map(|(s, e)| &self.support[s..e])
    }

    pub fn weights(&self, node: usize, op: LinearOperator) -> Option<&[f64]> {
        let k = self.operators.iter().position(|&o| o == op)?;
        self.ranges[node].map(|(s, e)| &self.weights[k][s..e])
    }

    /// Like [`weights`](Self::weights) but reports which shape is missing.
    pub fn require(&self, node: usize, op: LinearOperator) -> Result<(&[usize], &[f64])> {
        match (self.support(node), self.weights(node, op)) {
            (Some(s), Some(w)) => Ok((s, w)),
            _ => Err(Error::MissingShape { node, operator: op.to_string() }),
        }
    }

    /// Wall-clock duration of the shape computation pass.
    pub fn elapsed(&self) -> Duration {
        self.elapsed
    }

    /// `node,operator,engine,weights` rows; weights space separated.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["node", "operator", "engine", "weights"])?;
        for node in self.computed() {
            let engine = self.engines[node].map_or(String::new(), |e| e.to_string());
            for &op in &self.operators {
                let vals: Vec<String> = self.weights(node, op).unwrap().iter().map(|v| format!("{v:e}")).collect();
                w.write_record([node.to_string(), op.to_string(), engine.clone(), vals.join(" ")])?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

/// Shapes of every node.
pub fn compute_shapes<const D: usize>(
    nodes: &NodeSet<D>,
    stencils: &[Stencil],
    ops: &[LinearOperator],
    assignment: &EngineAssignment,
    wls: &WlsConfig,
    rbf: &RbfConfig,
) -> Result<ShapeStore> {
    let all: Vec<usize> = (0..nodes.len()).collect();
    compute_shapes_for(nodes, stencils, ops, assignment, wls, rbf, &all)
}

/// Shapes of the `targets` nodes only, each by its assigned engine.
///
/// The factorization of each local system is shared by all requested
/// operators. The measured time covers the whole pass.
pub fn compute_shapes_for<const D: usize>(
    nodes: &NodeSet<D>,
    stencils: &[Stencil],
    ops: &[LinearOperator],
    assignment: &EngineAssignment,
    wls: &WlsConfig,
    rbf: &RbfConfig,
    targets: &[usize],
) -> Result<ShapeStore> {
    if assignment.len() != nodes.len() {
        return Err(Error::LengthMismatch { expected: nodes.len(), found: assignment.len() });
    }
    if stencils.len() != nodes.len() {
        return Err(Error::LengthMismatch { expected: nodes.len(), found: stencils.len() });
    }
    let start = Instant::now();
    let wls_engine = WlsEngine::<D>::new(*wls)?;
    let rbf_engine = RbfEngine::<D>::new(*rbf)?;
    let positions = nodes.positions();
    let mut store = ShapeStore {
        operators: ops.to_vec(),
        engines: vec![None; nodes.len()],
        ranges: vec![None; nodes.len()],
        support: Vec::new(),
        weights: vec![Vec::new(); ops.len()],
        elapsed: Duration::ZERO,
    };
    for &node in targets {
        let stencil = &stencils[node];
        let engine = assignment.label(node);
        let ws = match engine {
            Engine::Wls => wls_engine.weights(stencil, positions, ops)?,
            Engine::RbfFd => rbf_engine.weights(stencil, positions, ops)?,
        };
        let len = ws.first().map_or(0, Vec::len);
        let begin = store.support.len();
        store.support.extend_from_slice(&stencil.neighbors[..len]);
        for (k, w) in ws.into_iter().enumerate() {
            store.weights[k].extend(w);
        }
        store.ranges[node] = Some((begin, begin + len));
        store.engines[node] = Some(engine);
    }
    store.elapsed = start.elapsed();
    Ok(store)
}
