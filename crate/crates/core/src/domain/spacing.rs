use crate::error::{Error, Result};
use crate::geometry::{dist, Point};

/// Target internodal spacing that grows with distance from a refinement center:
/// `h(x) = min(fine + (coarse - fine) * |x - center|^exponent, coarse)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpacingFunction<const D: usize> {
    pub fine: f64,
    pub coarse: f64,
    pub center: Point<D>,
    pub exponent: f64,
}

impl<const D: usize> SpacingFunction<D> {
    pub const DEFAULT_EXPONENT: f64 = 1.5;

    pub fn new(fine: f64, coarse: f64, center: Point<D>) -> Result<Self> {
        Self::with_exponent(fine, coarse, center, Self::DEFAULT_EXPONENT)
    }

    pub fn with_exponent(fine: f64, coarse: f64, center: Point<D>, exponent: f64) -> Result<Self> {
        if !(fine > 0.0 && fine <= coarse && coarse.is_finite()) {
            return Err(Error::Config(format!(
                "spacing requires 0 < fine <= coarse, got fine = {fine}, coarse = {coarse}"
            )));
        }
        if !(exponent >= 0.0 && exponent.is_finite()) {
            return Err(Error::Config(format!("spacing exponent must be non-negative, got {exponent}")));
        }
        Ok(Self { fine, coarse, center, exponent })
    }

    /// Uniform spacing `h` everywhere.
    pub fn constant(h: f64) -> Result<Self> {
        Self::with_exponent(h, h, [0.0; D], 0.0)
    }

    #[inline]
    pub fn eval(&self, x: &Point<D>) -> f64 {
        let r = dist(x, &self.center);
        (self.fine + (self.coarse - self.fine) * r.powf(self.exponent)).min(self.coarse)
    }
}
