//! A small Poisson convergence sweep written as runs.csv and aggregate.json.
//!
//! `cargo run --release --example convergence_study -- [out_dir]`

use meshless::experiments::{emit_results, run_poisson_study, DxSweep, PoissonStudyConfig};

fn main() -> meshless::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "convergence_study".into());
    let cfg = PoissonStudyConfig {
        orders: vec![2, 4],
        dx: DxSweep { max: 0.1, min: 0.04, count: 4 },
        runs: 3,
        ..Default::default()
    };
    let records = run_poisson_study(&cfg, |r| {
        eprintln!("{:<7} m={} Dx={:.4} N={:<6} e_inf={:.3e}", r.engine.to_string(), r.m, r.dx, r.n, r.e_inf)
    })?;
    let agg = emit_results(&records, std::path::Path::new(&out))?;
    for s in &agg.slopes {
        println!("{:<7} m={}: order {:.2} in N^(-1/2)", s.engine.to_string(), s.m, s.slope);
    }
    println!("wrote {out}/runs.csv and {out}/aggregate.json");
    Ok(())
}
