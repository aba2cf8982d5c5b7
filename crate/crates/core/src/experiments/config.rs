//! Experiment configuration.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::problems::{BoussinesqProblem, PoissonProblem};
use crate::approximation::{
    Engine, EngineAssignment, LeastSquaresMethod, Phs, RbfConfig, WeightFunction, WlsConfig,
};
use crate::domain::NodeSet;
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::solver::SolverConfig;

/// Which engine computes the shapes of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineMode {
    Wls,
    #[serde(rename = "rbffd")]
    RbfFd,
    Hybrid,
}

impl EngineMode {
    pub const ALL: [EngineMode; 3] = [EngineMode::Wls, EngineMode::RbfFd, EngineMode::Hybrid];

    /// Per-node engines; hybrid nodes closer than `r_s` to `center` use RBF-FD.
    pub fn assignment<const D: usize>(
        self,
        nodes: &NodeSet<D>,
        center: &Point<D>,
        r_s: f64,
    ) -> Result<EngineAssignment> {
        Ok(match self {
            EngineMode::Wls => EngineAssignment::uniform(nodes.len(), Engine::Wls),
            EngineMode::RbfFd => EngineAssignment::uniform(nodes.len(), Engine::RbfFd),
            EngineMode::Hybrid => crate::approximation::assign_engines(nodes, center, r_s)?,
        })
    }
}

impl fmt::Display for EngineMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EngineMode::Wls => "wls",
            EngineMode::RbfFd => "rbffd",
            EngineMode::Hybrid => "hybrid",
        })
    }
}

impl FromStr for EngineMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "wls" => Ok(EngineMode::Wls),
            "rbffd" => Ok(EngineMode::RbfFd),
            "hybrid" => Ok(EngineMode::Hybrid),
            _ => Err(Error::Parse(format!("unknown engine '{s}', expected wls, rbffd or hybrid"))),
        }
    }
}

/// Shape engine settings shared by both studies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EngineSettings {
    /// PHS order `k` of the RBF-FD engine.
    pub phs_k: u32,
    pub wls_weight: WeightFunction,
    pub wls_method: LeastSquaresMethod,
}

impl Default for EngineSettings {
    fn default() -> Self {
        Self { phs_k: 5, wls_weight: WeightFunction::Uniform, wls_method: LeastSquaresMethod::ColPivQr }
    }
}

impl EngineSettings {
    pub fn wls(&self, m: usize) -> WlsConfig {
        WlsConfig::new(m).with_weight(self.wls_weight).with_method(self.wls_method)
    }

    pub fn rbf(&self, m: usize) -> RbfConfig {
        RbfConfig::new(Phs::new(self.phs_k), m)
    }
}

/// Geometric sweep of the coarse spacing `Dx`, coarsest first.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DxSweep {
    pub max: f64,
    pub min: f64,
    pub count: usize,
}

impl DxSweep {
    pub fn values(&self) -> Result<Vec<f64>> {
        if !(self.min > 0.0 && self.min <= self.max) || self.count == 0 {
            return Err(Error::Config(format!("invalid Dx sweep {self:?}")));
        }
        if self.count == 1 {
            return Ok(vec![self.max]);
        }
        let ratio = (self.min / self.max).ln() / (self.count - 1) as f64;
        Ok((0..self.count).map(|i| self.max * (ratio * i as f64).exp()).collect())
    }
}

/// 2D strong-source Poisson study.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PoissonStudyConfig {
    pub problem: PoissonProblem,
    pub orders: Vec<usize>,
    pub engines: Vec<EngineMode>,
    pub engine: EngineSettings,
    /// Hybrid switch radius around the source.
    pub r_s: f64,
    pub dx: DxSweep,
    pub runs: usize,
    pub seed: u64,
    pub solver: SolverConfig,
}

impl Default for PoissonStudyConfig {
    fn default() -> Self {
        Self {
            problem: PoissonProblem::default(),
            orders: vec![2, 4, 6],
            engines: EngineMode::ALL.to_vec(),
            engine: EngineSettings { wls_weight: WeightFunction::Gaussian { sigma: 0.5 }, ..EngineSettings::default() },
            r_s: 0.15,
            dx: DxSweep { max: 0.1, min: 0.006, count: 30 },
            runs: 100,
            seed: 0,
            solver: SolverConfig::lu(),
        }
    }
}

impl PoissonStudyConfig {
    pub fn validate(&self) -> Result<()> {
        self.dx.values()?;
        self.solver.validate()?;
        if self.orders.is_empty() || self.engines.is_empty() || self.runs == 0 {
            return Err(Error::Config("need at least one order, engine and run".into()));
        }
        if !(self.r_s >= 0.0) {
            return Err(Error::Config(format!("r_s must be non-negative, got {}", self.r_s)));
        }
        Ok(())
    }
}

/// 3D Boussinesq benchmark on a box refined towards its loaded corner.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BoussinesqConfig {
    pub problem: BoussinesqProblem,
    pub order: usize,
    pub engines: Vec<EngineMode>,
    pub engine: EngineSettings,
    pub r_s: f64,
    pub lo: Point<3>,
    pub hi: Point<3>,
    /// Refinement center.
    pub corner: Point<3>,
    /// Spacing at the corner.
    pub fine: f64,
    /// Largest spacing.
    pub coarse: f64,
    pub exponent: f64,
    pub seed: u64,
    pub solver: SolverConfig,
}

impl Default for BoussinesqConfig {
    fn default() -> Self {
        Self {
            problem: BoussinesqProblem::default(),
            order: 4,
            engines: EngineMode::ALL.to_vec(),
            engine: EngineSettings {
                wls_weight: WeightFunction::GaussianNearest { sigma: 1.5 },
                ..EngineSettings::default()
            },
            r_s: 0.5,
            lo: [-1.0; 3],
            hi: [-0.1; 3],
            corner: [-0.1; 3],
            fine: 0.015,
            coarse: 0.05,
            exponent: 1.5,
            seed: 0,
            solver: SolverConfig::bicgstab(),
        }
    }
}

impl BoussinesqConfig {
    pub fn validate(&self) -> Result<()> {
        self.solver.validate()?;
        if self.engines.is_empty() {
            return Err(Error::Config("need at least one engine".into()));
        }
        if !(self.fine > 0.0 && self.fine <= self.coarse) {
            return Err(Error::Config(format!("need 0 < fine <= coarse, got {} and {}", self.fine, self.coarse)));
        }
        Ok(())
    }
}

/// Mixes a base seed with sweep coordinates into an independent run seed.
pub fn derive_seed(base: u64, a: u64, b: u64) -> u64 {
    let mut z = base
        .wrapping_add(a.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(b.wrapping_mul(0xD1B5_4A32_D192_ED03));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
