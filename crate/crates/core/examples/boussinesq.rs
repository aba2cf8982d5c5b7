//! The Boussinesq point-load benchmark on a small corner-refined box.
//!
//! `cargo run --release --example boussinesq -- [fine] [coarse]`

use meshless::experiments::{run_boussinesq, BoussinesqConfig};

fn main() -> meshless::Result<()> {
    let args: Vec<f64> = std::env::args().skip(1).map(|s| s.parse().expect("numeric argument")).collect();
    let cfg = BoussinesqConfig {
        fine: args.first().copied().unwrap_or(0.03),
        coarse: args.get(1).copied().unwrap_or(0.12),
        ..Default::default()
    };
    let records = run_boussinesq(&cfg, |_| {})?;
    println!("N = {}, m = {}, r_s = {}", records[0].n, cfg.order, cfg.r_s);
    for r in &records {
        println!(
            "{:<7} RBF-FD share {:5.1}%  e_inf {:.3e}  shapes {:.2} s  solve {:.2} s  {} in {} iterations",
            r.engine.to_string(),
            r.rbffd_percent(),
            r.e_inf,
            r.t_shape_s,
            r.t_solve_s,
            r.solver_status,
            r.iterations
        );
    }
    Ok(())
}
