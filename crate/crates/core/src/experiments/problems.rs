//! Benchmark problems with closed-form solutions.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::assembly::Lame;
use crate::error::Result;
use crate::geometry::{dist_sq, norm, Point};

/// `∇²u = f_lap` on the unit disc with `u = exp(-α‖x − x_s‖²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PoissonProblem {
    pub alpha: f64,
    pub source: Point<2>,
}

impl Default for PoissonProblem {
    fn default() -> Self {
        Self { alpha: 1e3, source: [0.5, 0.5] }
    }
}

impl PoissonProblem {
    pub fn solution(&self, x: &Point<2>) -> f64 {
        (-self.alpha * dist_sq(x, &self.source)).exp()
    }

    pub fn laplacian(&self, x: &Point<2>) -> f64 {
        let r2 = dist_sq(x, &self.source);
        4.0 * (self.alpha * self.alpha * r2 - self.alpha) * (-self.alpha * r2).exp()
    }
}

/// Point load on an elastic half-space, applied at the origin along `-z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BoussinesqProblem {
    pub young: f64,
    pub poisson: f64,
    pub force: f64,
}

impl Default for BoussinesqProblem {
    fn default() -> Self {
        Self { young: 1.0, poisson: 0.33, force: 1.0 }
    }
}

impl BoussinesqProblem {
    pub fn lame(&self) -> Result<Lame> {
        Lame::from_young(self.young, self.poisson)
    }

    /// Closed-form displacement. Singular at the origin.
    pub fn displacement(&self, x: &Point<3>) -> [f64; 3] {
        let mu = self.young / (2.0 * (1.0 + self.poisson));
        let nu = self.poisson;
        let c = self.force / (4.0 * PI * mu);
        let r = norm(x);
        let r3 = r * r * r;
        let z = x[2];
        let radial = c * (z / r3 - (1.0 - 2.0 * nu) / (r * (r + z)));
        [x[0] * radial, x[1] * radial, c * (z * z / r3 + 2.0 * (1.0 - nu) / r)]
    }
}


#[cfg(test)]
mod navier_tests {
    use super::*;

    /// Cauchy-Navier operator of `u` at `x` by fourth-order central differences.
    fn navier_fd(u: &dyn Fn(&Point<3>) -> [f64; 3], lame: Lame, x: &Point<3>, h: f64) -> [f64; 3] {
        let at = |dx: [f64; 3]| u(&[x[0] + dx[0], x[1] + dx[1], x[2] + dx[2]]);
        let mut hess = [[[0.0; 3]; 3]; 3];
        let w = [(-2.0, -1.0 / 12.0), (-1.0, 16.0 / 12.0), (0.0, -30.0 / 12.0), (1.0, 16.0 / 12.0), (2.0, -1.0 / 12.0)];
        let d1 = [(-2.0, 1.0 / 12.0), (-1.0, -8.0 / 12.0), (1.0, 8.0 / 12.0), (2.0, -1.0 / 12.0)];
        for a in 0..3 {
            for b in 0..3 {
                let mut acc = [0.0; 3];
                if a == b {
                    for &(s, c) in &w {
                        let mut dx = [0.0; 3];
                        dx[a] = s * h;
                        let v = at(dx);
                        for k in 0..3 {
                            acc[k] += c * v[k] / (h * h);
                        }
                    }
                } else {
                    for &(s, cs) in &d1 {
                        for &(t, ct) in &d1 {
                            let mut dx = [0.0; 3];
                            dx[a] = s * h;
                            dx[b] = t * h;
                            let v = at(dx);
                            for k in 0..3 {
                                acc[k] += cs * ct * v[k] / (h * h);
                            }
                        }
                    }
                }
                for k in 0..3 {
                    hess[k][a][b] = acc[k];
                }
            }
        }
        let mut out = [0.0; 3];
        for a in 0..3 {
            let grad_div: f64 = (0..3).map(|b| hess[b][a][b]).sum();
            let lap: f64 = (0..3).map(|b| hess[a][b][b]).sum();
            out[a] = (lame.lambda + lame.mu) * grad_div + lame.mu * lap;
        }
        out
    }

    #[test]
    fn displacement_satisfies_navier() {
        let b = BoussinesqProblem::default();
        let lame = b.lame().unwrap();
        let u = |x: &Point<3>| b.displacement(x);
        for x in [[-0.3, -0.2, -0.4], [-0.9, -0.5, -0.2], [-0.6, -0.6, -0.6]] {
            let coarse = norm(&navier_fd(&u, lame, &x, 1e-2));
            let fine = norm(&navier_fd(&u, lame, &x, 2.5e-3));
            assert!(fine < coarse / 10.0 && fine < 1e-6, "{coarse} -> {fine}");
        }
    }
}
