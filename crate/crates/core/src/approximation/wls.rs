use nalgebra::{DMatrix, DVector, RowDVector};
use serde::{Deserialize, Serialize};

use crate::domain::NodeSet;
use crate::error::{Error, Result};
use crate::geometry::{norm_sq, Point};
use crate::stencil::Stencil;

use super::{localize, reproduction_residual, rescale, LinearOperator, MonomialBasis};

/// Weighting of stencil members in the least-squares fit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum WeightFunction {
    Uniform,
    /// `ω_i = exp(-(‖x_i − x_c‖ / (σ·R))²)` with `R` the stencil radius.
    Gaussian { sigma: f64 },
    /// `ω_i = exp(-(‖x_i − x_c‖ / (σ·d))²)` with `d` the distance from the
    /// center to its nearest stencil member.
    #[serde(rename = "gaussian_nearest")]
    GaussianNearest { sigma: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LeastSquaresMethod {
    Svd,
    ColPivQr,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WlsConfig {
    pub degree: usize,
    pub weight: WeightFunction,
    pub method: LeastSquaresMethod,
    /// Use the pseudo-inverse instead of failing on a rank-deficient
    /// monomial matrix (SVD only).
    pub allow_rank_deficient: bool,
    /// Use only the nearest `k` stencil members when set.
    pub stencil_size: Option<usize>,
}

impl WlsConfig {
    pub fn new(degree: usize) -> Self {
        Self {
            degree,
            weight: WeightFunction::Uniform,
            method: LeastSquaresMethod::ColPivQr,
            allow_rank_deficient: false,
            stencil_size: None,
        }
    }

    pub fn with_weight(mut self, weight: WeightFunction) -> Self {
        self.weight = weight;
        self
    }

    pub fn with_method(mut self, method: LeastSquaresMethod) -> Self {
        self.method = method;
        self
    }
}

/// Relative singular-value / pivot threshold below which the monomial
/// matrix is treated as rank deficient.
const RANK_TOL: f64 = 1e-12;
const REPRODUCTION_TOL: f64 = 1e-6;

/// Monomial weighted-least-squares shape engine.
///
/// Among all weight vectors that reproduce every basis monomial, returns the
/// one minimizing `Σ w_i² / ω_i`, i.e. `w = W P (Pᵀ W P)⁻¹ ℓ_p`.
#[derive(Clone, Debug)]
pub struct WlsEngine<const D: usize> {
    cfg: WlsConfig,
    basis: MonomialBasis<D>,
}

impl<const D: usize> WlsEngine<D> {
    pub fn new(cfg: WlsConfig) -> Result<Self> {
        if let WeightFunction::Gaussian { sigma } | WeightFunction::GaussianNearest { sigma } = cfg.weight {
            if !(sigma > 0.0) {
                return Err(Error::Config(format!("Gaussian sigma must be positive, got {sigma}")));
            }
        }
        if cfg.allow_rank_deficient && cfg.method != LeastSquaresMethod::Svd {
            return Err(Error::Config("rank-deficient WLS requires the SVD method".into()));
        }
        Ok(Self { cfg, basis: MonomialBasis::new(cfg.degree) })
    }

    pub fn config(&self) -> &WlsConfig {
        &self.cfg
    }

    pub fn basis(&self) -> &MonomialBasis<D> {
        &self.basis
    }

    /// One weight vector per operator, over the (possibly truncated) stencil.
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
            return Err(Error::Config(format!("WLS needs at least {s} stencil nodes for degree {}, got {n}", self.cfg.degree)));
        }

        let width = match self.cfg.weight {
            WeightFunction::Uniform => f64::INFINITY,
            WeightFunction::Gaussian { sigma } => sigma,
            WeightFunction::GaussianNearest { sigma } => {
                let nearest = local.points.iter().map(norm_sq).filter(|&r| r > 0.0).fold(f64::INFINITY, f64::min);
                sigma * if nearest.is_finite() { nearest.sqrt() } else { 1.0 }
            }
        };
        let sqrt_w: Vec<f64> = local.points.iter().map(|y| (-norm_sq(y) / (2.0 * width * width)).exp()).collect();
        let mut p = DMatrix::<f64>::zeros(n, s);
        let mut row = vec![0.0; s];
        for (i, y) in local.points.iter().enumerate() {
            self.basis.eval_into(y, &mut row);
            for j in 0..s {
                p[(i, j)] = row[j];
            }
        }
        let mut b = p.clone();
        for (i, sw) in sqrt_w.iter().enumerate() {
            b.row_mut(i).scale_mut(*sw);
        }
        let rhs: Vec<DVector<f64>> = ops.iter().map(|&op| DVector::from_vec(self.basis.apply_at_origin(op))).collect();

        let degenerate = |reason: String| Error::DegenerateStencil { node, reason };
        let scaled: Vec<DVector<f64>> = match self.cfg.method {
            LeastSquaresMethod::Svd => {
                let fb = faer::Mat::<f64>::from_fn(n, s, |i, j| b[(i, j)]);
                let svd = fb.thin_svd().map_err(|e| degenerate(format!("SVD failed: {e:?}")))?;
                let (u, v) = (svd.U(), svd.V());
                let sv = svd.S().column_vector();
                let k = sv.nrows();
                let max = (0..k).map(|i| sv[i]).fold(0.0, f64::max);
                let inv: Vec<f64> = (0..k).map(|i| if sv[i] > RANK_TOL * max { 1.0 / sv[i] } else { 0.0 }).collect();
                let rank = inv.iter().filter(|&&x| x != 0.0).count();
                if rank < s && !self.cfg.allow_rank_deficient {
                    return Err(degenerate(format!("monomial matrix rank {rank} < {s}")));
                }
                rhs.iter()
                    .map(|l| {
                        let z: Vec<f64> = (0..k).map(|c| inv[c] * (0..s).map(|j| v[(j, c)] * l[j]).sum::<f64>()).collect();
                        DVector::from_iterator(n, (0..n).map(|i| (0..k).map(|c| u[(i, c)] * z[c]).sum::<f64>()))
                    })
                    .collect()
            }
            LeastSquaresMethod::ColPivQr => {
                let qr = b.col_piv_qr();
                let r = qr.r();
                let r00 = r[(0, 0)].abs();
                if (0..s).any(|i| !(r[(i, i)].abs() > RANK_TOL * r00)) {
                    return Err(degenerate("monomial matrix is rank deficient".into()));
                }
                let q = qr.q();
                let perm = qr.p();
                rhs.iter()
                    .map(|l| {
                        let mut lt = RowDVector::from_iterator(s, l.iter().copied());
                        perm.permute_columns(&mut lt);
                        let y = r
                            .tr_solve_upper_triangular(&lt.transpose())
                            .ok_or_else(|| degenerate("triangular solve failed".into()))?;
                        Ok(&q * y)
                    })
                    .collect::<Result<_>>()?
            }
        };

        let mut out = Vec::with_capacity(ops.len());
        for ((&op, l), z) in ops.iter().zip(&rhs).zip(scaled) {
            let w: Vec<f64> = z.iter().zip(&sqrt_w).map(|(zi, sw)| zi * sw).collect();
            if !self.cfg.allow_rank_deficient {
                let residual = reproduction_residual(&p, &w, l.as_slice());
                let scale = l.iter().fold(1.0f64, |a, v| a.max(v.abs()));
                if !(residual <= REPRODUCTION_TOL * scale) {
                    return Err(degenerate(format!("monomial reproduction residual {residual:e} for {op}")));
                }
            }
            out.push(rescale(w, local.scale, op));
        }
        Ok(out)
    }
}

/// WLS weights of a single operator.
pub fn wls_weights<const D: usize>(
    stencil: &Stencil,
    nodes: &NodeSet<D>,
    op: LinearOperator,
    cfg: &WlsConfig,
) -> Result<Vec<f64>> {
    Ok(WlsEngine::new(*cfg)?.weights(stencil, nodes.positions(), &[op])?.remove(0))
}
