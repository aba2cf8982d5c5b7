//! Global sparse systems from per-node shapes.
//!
//! Unknown `c` of node `i` lives in row `i * components + c`. Boundary nodes
//! get Dirichlet rows with a single unit diagonal.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::approximation::{LinearOperator, ShapeStore};
use crate::domain::NodeSet;
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::solver::{self, CsrMatrix, SolveReport, SolverConfig};

/// Assembled `A u = b` together with its unknown layout.
#[derive(Debug, Clone)]
pub struct SparseSystem {
    pub matrix: CsrMatrix,
    pub rhs: Vec<f64>,
    components: usize,
}

impl SparseSystem {
    /// Field components per node.
    pub fn components(&self) -> usize {
        self.components
    }

    pub fn nodes(&self) -> usize {
        self.rhs.len() / self.components
    }

    /// Row index of component `c` at `node`.
    pub fn unknown(&self, node: usize, c: usize) -> usize {
        node * self.components + c
    }

    pub fn solve(&self, cfg: &SolverConfig) -> Result<(Vec<f64>, SolveReport)> {
        solver::solve(&self.matrix, &self.rhs, cfg)
    }

    /// Splits a solution vector into per-node component arrays.
    pub fn unpack<const C: usize>(&self, x: &[f64]) -> Result<Vec<[f64; C]>> {
        if C != self.components || x.len() != self.rhs.len() {
            return Err(Error::LengthMismatch { expected: self.rhs.len(), found: x.len() });
        }
        Ok(x.chunks_exact(C).map(|c| std::array::from_fn(|k| c[k])).collect())
    }

    /// Writes the matrix in MatrixMarket format.
    pub fn write_matrix_market<W: Write>(&self, w: W) -> Result<()> {
        self.matrix.write_matrix_market(w)
    }

    /// Writes the right-hand side as a MatrixMarket dense column.
    pub fn write_rhs<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "%%MatrixMarket matrix array real general")?;
        writeln!(w, "{} 1", self.rhs.len())?;
        for v in &self.rhs {
            writeln!(w, "{v:e}")?;
        }
        Ok(())
    }
}

/// `∇²u = f_lap` inside, `u = g` on the boundary.
pub fn assemble_poisson<const D: usize, F, G>(
    nodes: &NodeSet<D>,
    shapes: &ShapeStore,
    f_lap: F,
    g: G,
) -> Result<SparseSystem>
where
    F: Fn(&Point<D>) -> f64,
    G: Fn(&Point<D>) -> f64,
{
    check_len(nodes, shapes)?;
    let n = nodes.len();
    let mut triplets = Vec::new();
    let mut rhs = vec![0.0; n];
    for i in 0..n {
        let x = nodes.position(i);
        if nodes.is_boundary(i) {
            triplets.push((i, i, 1.0));
            rhs[i] = g(x);
        } else {
            let (support, w) = shapes.require(i, LinearOperator::Laplacian)?;
            triplets.extend(support.iter().zip(w).map(|(&j, &v)| (i, j, v)));
            rhs[i] = f_lap(x);
        }
    }
    Ok(SparseSystem { matrix: CsrMatrix::from_triplets(n, n, &triplets)?, rhs, components: 1 })
}

/// Lamé parameters of a linear elastic material.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Lame {
    pub lambda: f64,
    pub mu: f64,
}

impl Lame {
    /// From Young's modulus and Poisson's ratio.
    pub fn from_young(e: f64, nu: f64) -> Result<Self> {
        if !(e > 0.0) || !(nu > -1.0 && nu < 0.5) {
            return Err(Error::Config(format!("need E > 0 and -1 < nu < 1/2, got E = {e}, nu = {nu}")));
        }
        Ok(Self { lambda: e * nu / ((1.0 + nu) * (1.0 - 2.0 * nu)), mu: e / (2.0 * (1.0 + nu)) })
    }
}

/// `(λ+μ)∇(∇·u) + μ∇²u = f` inside, `u = u_b` on the boundary.
///
/// Needs all second partials at interior nodes. The Laplacian shape is used
/// when the store has it, otherwise it is summed from the pure second partials.
pub fn assemble_cauchy_navier<const D: usize, F, B>(
    nodes: &NodeSet<D>,
    shapes: &ShapeStore,
    lame: Lame,
    body_force: F,
    boundary: B,
) -> Result<SparseSystem>
where
    F: Fn(&Point<D>) -> [f64; D],
    B: Fn(&Point<D>) -> [f64; D],
{
    if !(lame.mu > 0.0) || !lame.lambda.is_finite() {
        return Err(Error::Config(format!("invalid Lamé parameters {lame:?}")));
    }
    check_len(nodes, shapes)?;
    let n = nodes.len();
    let size = n * D;
    let has_laplacian = shapes.operators().contains(&LinearOperator::Laplacian);
    let mut triplets = Vec::new();
    let mut rhs = vec![0.0; size];
    let mut lap = Vec::new();
    for i in 0..n {
        let x = nodes.position(i);
        if nodes.is_boundary(i) {
            let u = boundary(x);
            for c in 0..D {
                triplets.push((i * D + c, i * D + c, 1.0));
                rhs[i * D + c] = u[c];
            }
            continue;
        }
        let support = shapes.support(i).ok_or(Error::MissingShape {
            node: i,
            operator: LinearOperator::Laplacian.to_string(),
        })?;
        lap.clear();
        if has_laplacian {
            lap.extend_from_slice(shapes.require(i, LinearOperator::Laplacian)?.1);
        } else {
            lap.resize(support.len(), 0.0);
            for c in 0..D {
                let (_, w) = shapes.require(i, LinearOperator::second(c, c))?;
                lap.iter_mut().zip(w).for_each(|(l, v)| *l += v);
            }
        }
        let f = body_force(x);
        for a in 0..D {
            let row = i * D + a;
            for b in 0..D {
                let (_, w) = shapes.require(i, LinearOperator::second(a, b))?;
                for (&j, &v) in support.iter().zip(w) {
                    triplets.push((row, j * D + b, (lame.lambda + lame.mu) * v));
                }
            }
            for (&j, &v) in support.iter().zip(&lap) {
                triplets.push((row, j * D + a, lame.mu * v));
            }
            rhs[row] = f[a];
        }
    }
    Ok(SparseSystem { matrix: CsrMatrix::from_triplets(size, size, &triplets)?, rhs, components: D })
}

fn check_len<const D: usize>(nodes: &NodeSet<D>, shapes: &ShapeStore) -> Result<()> {
    if shapes.len() != nodes.len() {
        return Err(Error::LengthMismatch { expected: nodes.len(), found: shapes.len() });
    }
    Ok(())
}
