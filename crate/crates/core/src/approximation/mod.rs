//! Shape (operator weight) computation.

pub mod monomials;
mod operator;
mod phs;
pub mod rbffd;
pub mod shapes;
pub mod wls;

use nalgebra::DMatrix;

pub use monomials::{apply_operator_to_monomial, eval_monomial, MonomialBasis};
pub use operator::LinearOperator;
pub use phs::Phs;
pub use rbffd::{rbffd_weights, RbfConfig, RbfEngine};
pub use shapes::{compute_shapes, compute_shapes_for, assign_engines, Engine, EngineAssignment, ShapeStore};
pub use wls::{wls_weights, LeastSquaresMethod, WeightFunction, WlsConfig, WlsEngine};

use crate::geometry::{scale, sub, Point};
use crate::stencil::Stencil;

/// Stencil members shifted to the center and divided by the stencil radius.
pub(crate) struct LocalStencil<const D: usize> {
    pub scale: f64,
    pub points: Vec<Point<D>>,
}

pub(crate) fn localize<const D: usize>(stencil: &Stencil, positions: &[Point<D>]) -> LocalStencil<D> {
    let c = positions[stencil.center];
    let r = if stencil.radius > 0.0 { stencil.radius } else { 1.0 };
    let points = stencil.neighbors.iter().map(|&j| scale(&sub(&positions[j], &c), 1.0 / r)).collect();
    LocalStencil { scale: r, points }
}

/// Maps weights computed in scaled coordinates back to physical ones.
pub(crate) fn rescale(mut w: Vec<f64>, radius: f64, op: LinearOperator) -> Vec<f64> {
    let factor = radius.powi(-op.order());
    if factor != 1.0 {
        w.iter_mut().for_each(|v| *v *= factor);
    }
    w
}

/// `max_j |Σ_i w_i P_ij − ℓ_j|`.
pub(crate) fn reproduction_residual(p: &DMatrix<f64>, w: &[f64], ell: &[f64]) -> f64 {
    (0..p.ncols())
        .map(|j| {
            let sum: f64 = w.iter().enumerate().map(|(i, wi)| wi * p[(i, j)]).sum();
            (sum - ell[j]).abs()
        })
        .fold(0.0, f64::max)
}
