//! Shape weights from both engines: classical finite differences on regular
//! stencils, and exact Laplacians of quadratics on a scattered stencil.

use meshless::approximation::{
    rbffd_weights, wls_weights, LeastSquaresMethod, LinearOperator, Phs, RbfConfig, WeightFunction,
    WlsConfig,
};
use meshless::domain::NodeSet;
use meshless::stencil::{find_stencils, Stencil};

fn main() -> meshless::Result<()> {
    let h = 0.1;

    let mut line = NodeSet::<1>::new();
    for x in [0.0, -h, h] {
        line.push_interior([x], h);
    }
    let st = Stencil { center: 0, neighbors: vec![0, 1, 2], radius: h };
    let w = rbffd_weights(&st, &line, LinearOperator::second(0, 0), &RbfConfig::new(Phs::new(3), 2))?;
    println!("RBF-FD d2/dx2 * h^2 on 3 nodes: {:?}", times_h2(&w, h));

    // The cross cannot resolve xy, so the least-squares fit needs the
    // rank-deficient SVD path.
    let mut cross = NodeSet::<2>::new();
    for p in [[0.0, 0.0], [h, 0.0], [-h, 0.0], [0.0, h], [0.0, -h]] {
        cross.push_interior(p, h);
    }
    let st = Stencil { center: 0, neighbors: vec![0, 1, 2, 3, 4], radius: h };
    let cfg = WlsConfig { allow_rank_deficient: true, ..WlsConfig::new(2).with_method(LeastSquaresMethod::Svd) };
    let w = wls_weights(&st, &cross, LinearOperator::Laplacian, &cfg)?;
    println!("WLS Laplacian * h^2 on the 5-point cross: {:?}", times_h2(&w, h));

    let mut scattered = NodeSet::<2>::new();
    for k in 0..12 {
        let t = k as f64 * 2.399963;
        let r = 0.02 * (k as f64).sqrt();
        scattered.push_interior([r * t.cos(), r * t.sin()], 0.02);
    }
    let st = &find_stencils(&scattered, 12)?[0];
    let f = |p: &[f64; 2]| p[0] * p[0] + 3.0 * p[0] * p[1] + 2.0 * p[1] * p[1];
    let values: Vec<f64> = st.neighbors.iter().map(|&j| f(scattered.position(j))).collect();
    let wls = WlsConfig::new(2).with_weight(WeightFunction::Gaussian { sigma: 0.5 });
    let rbf = RbfConfig::new(Phs::new(5), 2);
    for (name, w) in [
        ("WLS", wls_weights(st, &scattered, LinearOperator::Laplacian, &wls)?),
        ("RBF-FD", rbffd_weights(st, &scattered, LinearOperator::Laplacian, &rbf)?),
    ] {
        let lap: f64 = w.iter().zip(&values).map(|(a, b)| a * b).sum();
        println!("{name:6} Laplacian of x^2 + 3xy + 2y^2 on 12 scattered nodes: {lap:.10} (exact 6)");
    }
    Ok(())
}

fn times_h2(w: &[f64], h: f64) -> Vec<f64> {
    w.iter().map(|v| (v * h * h * 1e9).round() / 1e9).collect()
}
