use crate::geometry::{norm, Point};

use super::LinearOperator;

/// Polyharmonic spline `r^k` (odd `k`) or `r^k log r` (even `k`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Phs {
    pub order: u32,
}

impl Default for Phs {
    fn default() -> Self {
        Self { order: 5 }
    }
}

impl Phs {
    pub fn new(order: u32) -> Self {
        Self { order }
    }

    fn is_odd(&self) -> bool {
        self.order % 2 == 1
    }

    pub fn eval(&self, r: f64) -> f64 {
        if r == 0.0 {
            return 0.0;
        }
        let k = self.order as i32;
        if self.is_odd() {
            r.powi(k)
        } else {
            r.powi(k) * r.ln()
        }
    }

    /// `φ'(r) / r`.
    fn d1_over_r(&self, r: f64) -> f64 {
        let k = self.order as i32;
        let kf = k as f64;
        if self.is_odd() {
            kf * r.powi(k - 2)
        } else {
            r.powi(k - 2) * (kf * r.ln() + 1.0)
        }
    }

    /// `φ''(r)`.
    fn d2(&self, r: f64) -> f64 {
        let k = self.order as i32;
        let kf = k as f64;
        if self.is_odd() {
            kf * (kf - 1.0) * r.powi(k - 2)
        } else {
            r.powi(k - 2) * (kf * (kf - 1.0) * r.ln() + 2.0 * kf - 1.0)
        }
    }

    /// `L φ(‖x − x_i‖)` evaluated at `x`, given `offset = x − x_i`.
    ///
    /// At `offset = 0` every derivative is taken as its limit `0`, which holds
    /// for `k ≥ 3`.
    pub fn apply<const D: usize>(&self, op: LinearOperator, offset: &Point<D>) -> f64 {
        let r = norm(offset);
        if r == 0.0 {
            return 0.0;
        }
        match op {
            LinearOperator::Identity => self.eval(r),
            LinearOperator::Partial(a) => self.d1_over_r(r) * offset[a],
            LinearOperator::SecondPartial(i, j) => {
                let d1r = self.d1_over_r(r);
                let cross = (self.d2(r) - d1r) / (r * r) * offset[i] * offset[j];
                if i == j {
                    cross + d1r
                } else {
                    cross
                }
            }
            LinearOperator::Laplacian => self.d2(r) + (D as f64 - 1.0) * self.d1_over_r(r),
        }
    }
}
