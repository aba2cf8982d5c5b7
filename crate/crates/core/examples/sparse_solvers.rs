//! Direct LU against ILUT-preconditioned BiCGSTAB on an assembled Poisson
//! system, with an optional MatrixMarket export.
//!
//! `cargo run --release --example sparse_solvers -- [Dx] [matrix.mtx]`

use std::fs::File;
use std::io::BufWriter;

use meshless::experiments::poisson::poisson_system;
use meshless::experiments::{poisson_nodes, EngineMode, PoissonStudyConfig};
use meshless::solver::{Ilut, SolverConfig};

fn main() -> meshless::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let dx: f64 = args.first().map_or(0.03, |s| s.parse().expect("Dx must be a number"));

    let cfg = PoissonStudyConfig::default();
    let nodes = poisson_nodes(&cfg, dx, 0)?;
    let system = poisson_system(&cfg, &nodes, 4, EngineMode::Hybrid)?;
    let a = &system.matrix;
    println!("{} unknowns, {} nonzeros", a.nrows(), a.nnz());

    let ilu = Ilut::new(a, 1e-5, 30)?;
    println!("ILUT(1e-5, 30) keeps {} entries, {:.1}x nnz(A)", ilu.nnz(), ilu.nnz() as f64 / a.nnz() as f64);

    let (x_lu, lu) = system.solve(&SolverConfig::lu())?;
    let (x_it, it) = system.solve(&SolverConfig::bicgstab())?;
    let diff = x_lu.iter().zip(&x_it).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
    for r in [&lu, &it] {
        println!(
            "{:<9} {} after {} iterations, residual {:.2e}, {:.3} s",
            r.method.to_string(),
            r.status,
            r.iterations,
            r.residual,
            r.wall_time
        );
    }
    println!("max |x_lu - x_bicgstab| = {diff:.2e}");

    if let Some(path) = args.get(1) {
        system.write_matrix_market(BufWriter::new(File::create(path)?))?;
        println!("wrote {path}");
    }
    Ok(())
}
