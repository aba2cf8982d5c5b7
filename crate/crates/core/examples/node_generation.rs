//! Variable-density node generation on the unit disc and on a refined box.
//!
//! `cargo run --release --example node_generation -- [Dx] [out.csv]`

use std::fs::File;
use std::io::BufWriter;

use meshless::domain::{discretize, Cuboid, Disc, FillConfig, SpacingFunction};
use meshless::experiments::metrics::{mean, percentile};
use meshless::stencil::find_stencils;

fn main() -> meshless::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let dx: f64 = args.first().map_or(Ok(0.03), |s| s.parse()).expect("Dx must be a number");

    // Spacing refined towards an interior source, Dx / 5 at the source.
    let sf = SpacingFunction::new(dx / 5.0, dx, [0.5, 0.5])?;
    let nodes = discretize(&Disc::unit(), &sf, 1, &FillConfig::for_dimension(2))?;
    println!(
        "disc: {} nodes, {} on the boundary, h from {:.4} to {:.4}",
        nodes.len(),
        nodes.boundary_count(),
        percentile(nodes.spacings(), 0.0),
        percentile(nodes.spacings(), 1.0)
    );

    // Ratio of each node's nearest-neighbour distance to its local spacing.
    let stencils = find_stencils(&nodes, 2)?;
    let ratio: Vec<f64> = stencils.iter().map(|s| s.radius / nodes.spacing(s.center)).collect();
    println!(
        "nearest neighbour / h: min {:.3}, mean {:.3}, max {:.3}",
        percentile(&ratio, 0.0),
        mean(&ratio),
        percentile(&ratio, 1.0)
    );

    let boxed = Cuboid::new([-1.0; 3], [-0.1; 3])?;
    let sf3 = SpacingFunction::with_exponent(0.03, 0.12, [-0.1; 3], 1.5)?;
    let nodes3 = discretize(&boxed, &sf3, 1, &FillConfig::for_dimension(3))?;
    println!("box: {} nodes, {} on the boundary", nodes3.len(), nodes3.boundary_count());

    if let Some(path) = args.get(1) {
        nodes.write_csv(BufWriter::new(File::create(path)?))?;
        println!("wrote {path}");
    }
    Ok(())
}
