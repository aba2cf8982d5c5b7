//! Hybrid shape computation: RBF-FD near a source, WLS elsewhere, compared
//! with the pure engines in cost.
//!
//! `cargo run --release --example hybrid_shapes -- [Dx] [r_s]`

use meshless::approximation::{assign_engines, compute_shapes, Engine, EngineAssignment, LinearOperator};
use meshless::experiments::poisson::poisson_spacing;
use meshless::experiments::EngineSettings;
use meshless::approximation::WeightFunction;
use meshless::domain::{discretize, Disc, FillConfig};
use meshless::stencil::{find_stencils, stencil_size};

fn main() -> meshless::Result<()> {
    let args: Vec<f64> = std::env::args().skip(1).map(|s| s.parse().expect("numeric argument")).collect();
    let dx = args.first().copied().unwrap_or(0.03);
    let r_s = args.get(1).copied().unwrap_or(0.15);
    let source = [0.5, 0.5];
    let m = 4;

    let nodes = discretize(&Disc::unit(), &poisson_spacing(dx, source)?, 0, &FillConfig::for_dimension(2))?;
    let stencils = find_stencils(&nodes, stencil_size(m, 2))?;
    let settings = EngineSettings { wls_weight: WeightFunction::Gaussian { sigma: 0.5 }, ..EngineSettings::default() };
    let (wls, rbf) = (settings.wls(m), settings.rbf(m));
    let ops = [LinearOperator::Laplacian];

    let hybrid = assign_engines(&nodes, &source, r_s)?;
    println!(
        "N = {}, RBF-FD share {:.1}% within r_s = {r_s}",
        nodes.len(),
        100.0 * hybrid.count(Engine::RbfFd) as f64 / nodes.len() as f64
    );
    for (name, assignment) in [
        ("WLS", EngineAssignment::uniform(nodes.len(), Engine::Wls)),
        ("hybrid", hybrid),
        ("RBF-FD", EngineAssignment::uniform(nodes.len(), Engine::RbfFd)),
    ] {
        let shapes = compute_shapes(&nodes, &stencils, &ops, &assignment, &wls, &rbf)?;
        println!("{name:7} shape time {:.3} s", shapes.elapsed().as_secs_f64());
    }
    Ok(())
}
