//! Sparse linear solvers: direct LU and ILUT-preconditioned BiCGSTAB.

pub mod bicgstab;
pub mod csr;
pub mod ilut;
pub mod lu;

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use csr::{relative_residual, CsrMatrix};
pub use ilut::Ilut;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolveMethod {
    #[serde(alias = "sparselu")]
    Lu,
    BiCgStab,
}

impl fmt::Display for SolveMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolveMethod::Lu => "lu",
            SolveMethod::BiCgStab => "bicgstab",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Converged,
    MaxIterations,
    Breakdown,
}

impl fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolveStatus::Converged => "converged",
            SolveStatus::MaxIterations => "max_iterations",
            SolveStatus::Breakdown => "breakdown",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    pub method: SolveMethod,
    pub tol: f64,
    pub max_iter: usize,
    pub ilut_drop_tol: f64,
    pub ilut_fill_factor: usize,
    /// Reorder with reverse Cuthill-McKee before the incomplete factorization.
    pub reorder: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            method: SolveMethod::Lu,
            tol: 1e-14,
            max_iter: 500,
            ilut_drop_tol: 1e-5,
            ilut_fill_factor: 30,
            reorder: false,
        }
    }
}

impl SolverConfig {
    pub fn lu() -> Self {
        Self::default()
    }

    pub fn bicgstab() -> Self {
        Self { method: SolveMethod::BiCgStab, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::Config(format!("solver tolerance must be positive, got {}", self.tol)));
        }
        if self.max_iter == 0 {
            return Err(Error::Config("max_iter must be at least 1".into()));
        }
        if self.ilut_fill_factor == 0 {
            return Err(Error::Config("ilut_fill_factor must be at least 1".into()));
        }
        if !(self.ilut_drop_tol >= 0.0) {
            return Err(Error::Config("ilut_drop_tol must be non-negative".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub method: SolveMethod,
    pub status: SolveStatus,
    pub iterations: usize,
    /// `‖A x − b‖ / ‖b‖` recomputed from the returned solution.
    pub residual: f64,
    /// Wall time in seconds, including any factorization.
    pub wall_time: f64,
    pub threads: usize,
}

impl SolveReport {
    pub fn converged(&self) -> bool {
        self.status == SolveStatus::Converged
    }
}

/// Solves `a x = b`.
///
/// A failed iterative solve is reported through [`SolveReport::status`]
/// together with the best iterate; only a structurally or numerically singular
/// direct factorization is an error.
pub fn solve(a: &CsrMatrix, b: &[f64], cfg: &SolverConfig) -> Result<(Vec<f64>, SolveReport)> {
    cfg.validate()?;
    if !a.is_square() {
        return Err(Error::Config(format!("matrix is {}x{}, not square", a.nrows(), a.ncols())));
    }
    if b.len() != a.nrows() {
        return Err(Error::LengthMismatch { expected: a.nrows(), found: b.len() });
    }
    let start = Instant::now();
    let (x, status, iterations) = match cfg.method {
        SolveMethod::Lu => (lu::sparse_lu_solve(a, b)?, SolveStatus::Converged, 0),
        SolveMethod::BiCgStab => {
            let ilu = if cfg.reorder {
                Ilut::with_rcm(a, cfg.ilut_drop_tol, cfg.ilut_fill_factor)?
            } else {
                Ilut::new(a, cfg.ilut_drop_tol, cfg.ilut_fill_factor)?
            };
            let res = bicgstab::bicgstab(a, b, cfg.tol, cfg.max_iter, |r, z| ilu.apply(r, z));
            (res.x, res.status, res.iterations)
        }
    };
    let wall_time = start.elapsed().as_secs_f64();
    let residual = relative_residual(a, &x, b);
    Ok((
        x,
        SolveReport { method: cfg.method, status, iterations, residual, wall_time, threads: 1 },
    ))
}
