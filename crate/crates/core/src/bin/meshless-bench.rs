//! Benchmark driver for the 2D Poisson study and the 3D Boussinesq problem.

use std::fs;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;

use meshless::approximation::{LeastSquaresMethod, WeightFunction};
use meshless::assembly::SparseSystem;
use meshless::experiments::boussinesq::{boussinesq_nodes, run_boussinesq_engine};
use meshless::experiments::poisson::poisson_system;
use meshless::experiments::{
    emit_results, poisson_nodes, run_boussinesq, run_poisson_study, BoussinesqConfig, EngineMode,
    EngineSettings, PoissonStudyConfig, RunRecord,
};
use meshless::solver::{SolveMethod, SolverConfig};
use meshless::stencil::{find_stencils, stencil_size};
use meshless::{Error, Result};

#[derive(Parser)]
#[command(name = "meshless-bench", version, about = "Mesh-free WLS / RBF-FD / hybrid benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Strong-source Poisson problem on the unit disc, swept over Dx and re-discretizations.
    Poisson2d(CommonArgs),
    /// Boussinesq point load on a refined box, one discretization, every engine.
    Boussinesq3d(BoussinesqArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Wls,
    Rbffd,
    Hybrid,
}

impl From<EngineArg> for EngineMode {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Wls => EngineMode::Wls,
            EngineArg::Rbffd => EngineMode::RbfFd,
            EngineArg::Hybrid => EngineMode::Hybrid,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SolverArg {
    Lu,
    Bicgstab,
}

#[derive(Clone, Copy, ValueEnum)]
enum WlsSolverArg {
    Qr,
    Svd,
}

#[derive(Clone, Copy, ValueEnum)]
enum WeightArg {
    Uniform,
    /// Width in units of the stencil radius.
    Gaussian,
    /// Width in units of the distance to the nearest stencil member.
    GaussianNearest,
}

#[derive(Args)]
struct CommonArgs {
    /// JSON config file; flags given on the command line override its keys.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Engines to run (repeatable); all three by default.
    #[arg(long, value_enum)]
    engine: Vec<EngineArg>,
    /// Monomial order m (repeatable).
    #[arg(long = "order")]
    order: Vec<usize>,
    /// PHS order k.
    #[arg(long)]
    phs_k: Option<u32>,
    /// Hybrid switch radius r_s.
    #[arg(long)]
    rs: Option<f64>,
    /// Finest Dx of the sweep (3D: spacing at the loaded corner).
    #[arg(long)]
    dx_min: Option<f64>,
    /// Coarsest Dx of the sweep (3D: largest spacing).
    #[arg(long)]
    dx_max: Option<f64>,
    /// Number of Dx values.
    #[arg(long)]
    dx_count: Option<usize>,
    /// Re-discretizations per Dx.
    #[arg(long)]
    runs: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    solver: Option<SolverArg>,
    /// Least-squares factorization of the WLS engine.
    #[arg(long, value_enum)]
    wls_solver: Option<WlsSolverArg>,
    /// WLS weight function.
    #[arg(long, value_enum)]
    wls_weight: Option<WeightArg>,
    /// Width of the Gaussian WLS weight.
    #[arg(long)]
    wls_sigma: Option<f64>,
    #[arg(long, default_value = "results")]
    out: PathBuf,
    /// Also write the assembled systems in MatrixMarket format.
    #[arg(long)]
    dump_system: bool,
}

#[derive(Args)]
struct BoussinesqArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Exponent of the spacing growth away from the corner.
    #[arg(long)]
    exponent: Option<f64>,
}

fn load<T: DeserializeOwned + Default>(path: &Option<PathBuf>) -> Result<T> {
    match path {
        Some(p) => Ok(serde_json::from_str(&fs::read_to_string(p)?)?),
        None => Ok(T::default()),
    }
}

fn apply_engine(args: &CommonArgs, engines: &mut Vec<EngineMode>, settings: &mut EngineSettings) {
    if !args.engine.is_empty() {
        *engines = args.engine.iter().map(|&e| e.into()).collect();
    }
    if let Some(k) = args.phs_k {
        settings.phs_k = k;
    }
    if let Some(s) = args.wls_solver {
        settings.wls_method = match s {
            WlsSolverArg::Qr => LeastSquaresMethod::ColPivQr,
            WlsSolverArg::Svd => LeastSquaresMethod::Svd,
        };
    }
    let current = match settings.wls_weight {
        WeightFunction::Uniform => None,
        WeightFunction::Gaussian { sigma } | WeightFunction::GaussianNearest { sigma } => Some(sigma),
    };
    let sigma = args.wls_sigma.or(current).unwrap_or(1.0);
    let kind = args.wls_weight.unwrap_or(match settings.wls_weight {
        WeightFunction::Uniform => WeightArg::Uniform,
        WeightFunction::Gaussian { .. } => WeightArg::Gaussian,
        WeightFunction::GaussianNearest { .. } => WeightArg::GaussianNearest,
    });
    settings.wls_weight = match kind {
        WeightArg::Uniform => WeightFunction::Uniform,
        WeightArg::Gaussian => WeightFunction::Gaussian { sigma },
        WeightArg::GaussianNearest => WeightFunction::GaussianNearest { sigma },
    };
}

fn apply_solver(args: &CommonArgs, solver: &mut SolverConfig) {
    if let Some(s) = args.solver {
        solver.method = match s {
            SolverArg::Lu => SolveMethod::Lu,
            SolverArg::Bicgstab => SolveMethod::BiCgStab,
        };
    }
}

fn print_row(r: &RunRecord) {
    eprintln!(
        "{:<6} m={} Dx={:.5} N={:<7} RBF-FD {:6.2}%  e_inf={:.3e}  t_shape={:.3}s  t_solve={:.3}s  {}",
        r.engine,
        r.m,
        r.dx,
        r.n,
        r.rbffd_percent(),
        r.e_inf,
        r.t_shape_s,
        r.t_solve_s,
        r.solver_status
    );
}

fn dump(system: &SparseSystem, dir: &Path, stem: &str) -> Result<()> {
    let dir = dir.join("systems");
    fs::create_dir_all(&dir)?;
    system.write_matrix_market(BufWriter::new(fs::File::create(dir.join(format!("{stem}.mtx")))?))?;
    system.write_rhs(BufWriter::new(fs::File::create(dir.join(format!("{stem}_rhs.mtx")))?))?;
    Ok(())
}

fn poisson(args: CommonArgs) -> Result<()> {
    let mut cfg: PoissonStudyConfig = load(&args.config)?;
    apply_engine(&args, &mut cfg.engines, &mut cfg.engine);
    apply_solver(&args, &mut cfg.solver);
    if !args.order.is_empty() {
        cfg.orders = args.order.clone();
    }
    if let Some(r) = args.rs {
        cfg.r_s = r;
    }
    if let Some(v) = args.dx_min {
        cfg.dx.min = v;
    }
    if let Some(v) = args.dx_max {
        cfg.dx.max = v;
    }
    if let Some(v) = args.dx_count {
        cfg.dx.count = v;
    }
    if let Some(v) = args.runs {
        cfg.runs = v;
    }
    if let Some(v) = args.seed {
        cfg.seed = v;
    }
    cfg.validate()?;
    fs::create_dir_all(&args.out)?;
    fs::write(args.out.join("config.json"), serde_json::to_string_pretty(&cfg)?)?;

    let records = run_poisson_study(&cfg, print_row)?;
    let agg = emit_results(&records, &args.out)?;
    for s in &agg.slopes {
        eprintln!("slope {:<6} m={}: {:.2} over {} Dx values", s.engine, s.m, s.slope, s.points);
    }

    if args.dump_system {
        let dx = cfg.dx.values()?[0];
        let seed = meshless::experiments::config::derive_seed(cfg.seed, 0, 0);
        let nodes = poisson_nodes(&cfg, dx, seed)?;
        for &m in &cfg.orders {
            for &mode in &cfg.engines {
                let system = poisson_system(&cfg, &nodes, m, mode)?;
                dump(&system, &args.out, &format!("poisson2d_{mode}_m{m}"))?;
            }
        }
    }
    eprintln!("wrote {}", args.out.display());
    Ok(())
}

fn boussinesq(args: BoussinesqArgs) -> Result<()> {
    let common = &args.common;
    let mut cfg: BoussinesqConfig = load(&common.config)?;
    apply_engine(common, &mut cfg.engines, &mut cfg.engine);
    apply_solver(common, &mut cfg.solver);
    if let Some(&m) = common.order.first() {
        cfg.order = m;
    }
    if let Some(r) = common.rs {
        cfg.r_s = r;
    }
    if let Some(v) = common.dx_min {
        cfg.fine = v;
    }
    if let Some(v) = common.dx_max {
        cfg.coarse = v;
    }
    if let Some(v) = args.exponent {
        cfg.exponent = v;
    }
    if let Some(v) = common.seed {
        cfg.seed = v;
    }
    if common.dx_count.is_some_and(|c| c != 1) || common.runs.is_some_and(|r| r != 1) {
        return Err(Error::Config("boussinesq3d uses a single discretization".into()));
    }
    cfg.validate()?;
    fs::create_dir_all(&common.out)?;
    fs::write(common.out.join("config.json"), serde_json::to_string_pretty(&cfg)?)?;

    let records = if common.dump_system {
        let nodes = boussinesq_nodes(&cfg)?;
        let t0 = std::time::Instant::now();
        let stencils = find_stencils(&nodes, stencil_size(cfg.order, 3))?;
        let t_stencil = t0.elapsed().as_secs_f64();
        let mut records = Vec::new();
        for &mode in &cfg.engines {
            let run = run_boussinesq_engine(&cfg, &nodes, &stencils, t_stencil, mode, true)?;
            print_row(&run.record);
            if let Some(system) = &run.system {
                dump(system, &common.out, &format!("boussinesq3d_{mode}_m{}", cfg.order))?;
            }
            records.push(run.record);
        }
        records
    } else {
        run_boussinesq(&cfg, print_row)?
    };
    emit_results(&records, &common.out)?;
    eprintln!("wrote {}", common.out.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Poisson2d(a) => poisson(a),
        Command::Boussinesq3d(a) => boussinesq(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
