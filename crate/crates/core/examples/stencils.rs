//! Nearest-neighbour stencils from the kd-tree, checked against brute force.

use meshless::domain::{discretize, Disc, FillConfig, SpacingFunction};
use meshless::geometry::dist;
use meshless::stencil::{find_stencils, stencil_size, KdTree};

fn main() -> meshless::Result<()> {
    let sf = SpacingFunction::constant(0.05)?;
    let nodes = discretize(&Disc::unit(), &sf, 3, &FillConfig::for_dimension(2))?;

    for m in [2, 4, 6] {
        let n = stencil_size(m, 2);
        let stencils = find_stencils(&nodes, n)?;
        let mean_radius = stencils.iter().map(|s| s.radius).sum::<f64>() / stencils.len() as f64;
        println!("m = {m}: n = {n}, mean stencil radius {mean_radius:.4}");
    }

    let tree = KdTree::from_nodes(&nodes);
    let query = [0.123, -0.456];
    let hits = tree.knn(&query, 5)?;
    let mut brute: Vec<(usize, f64)> =
        nodes.positions().iter().enumerate().map(|(i, p)| (i, dist(p, &query))).collect();
    brute.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
    println!("5 nearest to {query:?}:");
    for ((i, d), (j, _)) in hits.iter().zip(&brute) {
        println!("  node {i:5} at {d:.5} (brute force: {j})");
    }
    Ok(())
}
