//! Benchmark drivers: the 2D strong-source Poisson study and the 3D
//! Boussinesq problem, with their result files.

pub mod boussinesq;
pub mod config;
pub mod metrics;
pub mod output;
pub mod poisson;
pub mod problems;

pub use boussinesq::{boussinesq_nodes, run_boussinesq, run_boussinesq_engine, BoussinesqRun};
pub use config::{BoussinesqConfig, DxSweep, EngineMode, EngineSettings, PoissonStudyConfig};
pub use metrics::{error_inf, error_inf_magnitude, loglog_slope, median, normalized_spread};
pub use output::{aggregate, emit_results, read_runs_csv, write_runs_csv, Aggregate, RunRecord};
pub use poisson::{poisson_nodes, run_poisson_case, run_poisson_study};
pub use problems::{BoussinesqProblem, PoissonProblem};
