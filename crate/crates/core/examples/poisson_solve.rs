//! One strong-source Poisson solve on the unit disc with every engine.
//!
//! `cargo run --release --example poisson_solve -- [Dx] [m]`

use meshless::experiments::{poisson_nodes, run_poisson_case, EngineMode, PoissonStudyConfig};

fn main() -> meshless::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let dx: f64 = args.first().map_or(0.04, |s| s.parse().expect("Dx must be a number"));
    let m: usize = args.get(1).map_or(4, |s| s.parse().expect("m must be an integer"));

    let cfg = PoissonStudyConfig { orders: vec![m], engines: EngineMode::ALL.to_vec(), ..Default::default() };
    let nodes = poisson_nodes(&cfg, dx, 0)?;
    println!("u = exp(-{} |x - x_s|^2) on {} nodes, m = {m}", cfg.problem.alpha, nodes.len());
    for r in run_poisson_case(&cfg, &nodes, dx, 0)? {
        println!(
            "{:<7} e_inf {:.3e}  shapes {:.3} s  solve {:.3} s  ({})",
            r.engine.to_string(),
            r.e_inf,
            r.t_shape_s,
            r.t_solve_s,
            r.solver_status
        );
    }
    Ok(())
}
