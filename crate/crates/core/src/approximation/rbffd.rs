use nalgebra::DMatrix;

use crate::domain::NodeSet;
use crate::error::{Error, Result};
use crate::geometry::{dist, scale, Point};
use crate::stencil::Stencil;

use super::{localize, reproduction_residual, rescale, LinearOperator, MonomialBasis, Phs};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RbfConfig {
    pub phs: Phs,
    /// Degree of the monomial augmentation.
    pub degree: usize,
    /// Use only the nearest `k` stencil members when set.
    pub stencil_size: Option<usize>,
    /// Fall back to the SVD pseudo-inverse when the augmented matrix is
    /// singular but consistent, as on a stencil that cannot see every
    /// monomial. The reproduction check still applies.
    pub allow_rank_deficient: bool,
}

impl RbfConfig {
    pub fn new(phs: Phs, degree: usize) -> Self {
        Self { phs, degree, stencil_size: None, allow_rank_deficient: false }
    }
}

const REPRODUCTION_TOL: f64 = 1e-6;
/// Relative singular-value cutoff of the rank-deficient fallback.
const RANK_TOL: f64 = 1e-12;

/// PHS RBF-FD shape engine with monomial augmentation.
///
/// Solves the saddle-point system `[[Φ, P], [Pᵀ, 0]] [w; λ] = [ℓ_φ; ℓ_p]` by
/// dense LU with partial pivoting and discards the multipliers.
#[derive(Clone, Debug)]
pub struct RbfEngine<const D: usize> {
    cfg: RbfConfig,
    basis: MonomialBasis<D>,
}

impl<const D: usize> RbfEngine<D> {
    pub fn new(cfg: RbfConfig) -> Result<Self> {
        if cfg.phs.order == 0 {
            return Err(Error::Config("PHS order must be at least 1".into()));
        }
        Ok(Self { cfg, basis: MonomialBasis::new(cfg.degree) })
    }

    pub fn config(&self) -> &RbfConfig {
        &self.cfg
    }

    pub fn weights(&self, stencil: &Stencil, positions: &[Point<D>], ops: &[LinearOperator]) -> Result<Vec<Vec<f64>>> {
        let stencil = match self.cfg.stencil_size {
            Some(k) => stencil.truncated(k, positions),
            None => stencil.clone(),
        };
        let node = stencil.center;
        let local = localize(&stencil, positions);
        let n = local.points.len();
        let s = self.basis.len();
        if n < s && !self.cfg.allow_rank_deficient {
            return Err(Error::Config(format!(
                "RBF-FD needs at least {s} stencil nodes for augmentation degree {}, got {n}",
                self.cfg.degree
            )));
        }
        let phs = self.cfg.phs;
        let size = n + s;
        let mut a = DMatrix::<f64>::zeros(size, size);
        let mut row = vec![0.0; s];
        for i in 0..n {
            for j in 0..i {
                let v = phs.eval(dist(&local.points[i], &local.points[j]));
                a[(i, j)] = v;
                a[(j, i)] = v;
            }
            self.basis.eval_into(&local.points[i], &mut row);
            for k in 0..s {
                a[(i, n + k)] = row[k];
                a[(n + k, i)] = row[k];
            }
        }
        let mut rhs = DMatrix::<f64>::zeros(size, ops.len());
        let ell_p: Vec<Vec<f64>> = ops.iter().map(|&op| self.basis.apply_at_origin(op)).collect();
        for (c, &op) in ops.iter().enumerate() {
            for i in 0..n {
                rhs[(i, c)] = phs.apply(op, &scale(&local.points[i], -1.0));
            }
            for k in 0..s {
                rhs[(n + k, c)] = ell_p[c][k];
            }
        }

        let degenerate = |reason: String| Error::DegenerateStencil { node, reason };
        let p = a.view((0, n), (n, s)).clone_owned();
        let sol = match a.clone().lu().solve(&rhs) {
            Some(sol) if sol.iter().all(|v| v.is_finite()) => sol,
            _ if self.cfg.allow_rank_deficient => {
                let eps = RANK_TOL * a.norm();
                a.svd(true, true).solve(&rhs, eps).map_err(|e| degenerate(e.into()))?
            }
            _ => return Err(degenerate("singular augmented matrix".into())),
        };
        let mut out = Vec::with_capacity(ops.len());
        for (c, &op) in ops.iter().enumerate() {
            let w: Vec<f64> = (0..n).map(|i| sol[(i, c)]).collect();
            let residual = reproduction_residual(&p, &w, &ell_p[c]);
            let scale = ell_p[c].iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
            if !(residual <= REPRODUCTION_TOL * scale) {
                return Err(degenerate(format!("monomial reproduction residual {residual:e} for {op}")));
            }
            out.push(rescale(w, local.scale, op));
        }
        Ok(out)
    }
}

/// RBF-FD weights of a single operator.
pub fn rbffd_weights<const D: usize>(
    stencil: &Stencil,
    nodes: &NodeSet<D>,
    op: LinearOperator,
    cfg: &RbfConfig,
) -> Result<Vec<f64>> {
    Ok(RbfEngine::new(*cfg)?.weights(stencil, nodes.positions(), &[op])?.remove(0))
}
