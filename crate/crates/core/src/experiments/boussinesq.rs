//! The 3D Boussinesq benchmark.

use std::time::Instant;

use super::config::{BoussinesqConfig, EngineMode};
use super::metrics::error_inf_magnitude;
use super::output::RunRecord;
use crate::approximation::{compute_shapes_for, Engine, LinearOperator};
use crate::assembly::{assemble_cauchy_navier, SparseSystem};
use crate::domain::{discretize, Cuboid, FillConfig, NodeSet, SpacingFunction};
use crate::error::Result;
use crate::solver::SolveStatus;
use crate::stencil::{find_stencils, stencil_size, Stencil};

pub const PROBLEM: &str = "boussinesq3d";

pub fn boussinesq_spacing(cfg: &BoussinesqConfig) -> Result<SpacingFunction<3>> {
    SpacingFunction::with_exponent(cfg.fine, cfg.coarse, cfg.corner, cfg.exponent)
}

pub fn boussinesq_nodes(cfg: &BoussinesqConfig) -> Result<NodeSet<3>> {
    let domain = Cuboid::new(cfg.lo, cfg.hi)?;
    discretize(&domain, &boussinesq_spacing(cfg)?, cfg.seed, &FillConfig::for_dimension(3))
}

/// Everything produced by one engine on the benchmark.
#[derive(Debug, Clone)]
pub struct BoussinesqRun {
    pub record: RunRecord,
    /// Displacements per node, when the solve produced any.
    pub displacement: Option<Vec<[f64; 3]>>,
    pub system: Option<SparseSystem>,
}

/// Solves the benchmark on `nodes` with one engine.
///
/// A solve that stops without converging yields `e_inf = NaN`, the row
/// keeps the solver status.
pub fn run_boussinesq_engine(
    cfg: &BoussinesqConfig,
    nodes: &NodeSet<3>,
    stencils: &[Stencil],
    t_stencil: f64,
    mode: EngineMode,
    keep_system: bool,
) -> Result<BoussinesqRun> {
    let problem = cfg.problem;
    let lame = problem.lame()?;
    let m = cfg.order;
    let assignment = mode.assignment(nodes, &cfg.corner, cfg.r_s)?;
    let mut record = RunRecord {
        problem: PROBLEM.into(),
        engine: mode,
        m,
        dx: cfg.coarse,
        seed: cfg.seed,
        n: nodes.len(),
        n_rbffd: assignment.count(Engine::RbfFd),
        e_inf: f64::NAN,
        t_shape_s: f64::NAN,
        t_solve_s: f64::NAN,
        solver_status: String::new(),
        iterations: 0,
        residual: f64::NAN,
        t_stencil_s: t_stencil,
    };
    let interior: Vec<usize> = nodes.interior_indices().collect();
    let shapes = match compute_shapes_for(
        nodes,
        stencils,
        &LinearOperator::second_partials(3),
        &assignment,
        &cfg.engine.wls(m),
        &cfg.engine.rbf(m),
        &interior,
    ) {
        Ok(s) => s,
        Err(e) => {
            record.solver_status = format!("shape_error: {e}");
            return Ok(BoussinesqRun { record, displacement: None, system: None });
        }
    };
    record.t_shape_s = shapes.elapsed().as_secs_f64();
    let system = assemble_cauchy_navier(nodes, &shapes, lame, |_| [0.0; 3], |x| problem.displacement(x))?;
    let mut displacement = None;
    match system.solve(&cfg.solver) {
        Ok((u, report)) => {
            record.t_solve_s = report.wall_time;
            record.solver_status = report.status.to_string();
            record.iterations = report.iterations;
            record.residual = report.residual;
            let u = system.unpack::<3>(&u)?;
            if report.status == SolveStatus::Converged {
                let exact: Vec<[f64; 3]> = nodes.positions().iter().map(|x| problem.displacement(x)).collect();
                record.e_inf = error_inf_magnitude(&u, &exact)?;
            }
            displacement = Some(u);
        }
        Err(e) => record.solver_status = format!("solve_error: {e}"),
    }
    Ok(BoussinesqRun { record, displacement, system: keep_system.then_some(system) })
}

/// Discretizes once and solves with every configured engine.
pub fn run_boussinesq<F>(cfg: &BoussinesqConfig, mut progress: F) -> Result<Vec<RunRecord>>
where
    F: FnMut(&RunRecord),
{
    cfg.validate()?;
    let nodes = boussinesq_nodes(cfg)?;
    let t0 = Instant::now();
    let stencils = find_stencils(&nodes, stencil_size(cfg.order, 3))?;
    let t_stencil = t0.elapsed().as_secs_f64();
    let mut out = Vec::new();
    for &mode in &cfg.engines {
        let run = run_boussinesq_engine(cfg, &nodes, &stencils, t_stencil, mode, false)?;
        progress(&run.record);
        out.push(run.record);
    }
    Ok(out)
}
