//! Small helpers on fixed-size points.

/// A point (or vector) in `D` dimensions.
pub type Point<const D: usize> = [f64; D];

#[inline]
pub fn sub<const D: usize>(a: &Point<D>, b: &Point<D>) -> Point<D> {
    std::array::from_fn(|i| a[i] - b[i])
}

#[inline]
pub fn add<const D: usize>(a: &Point<D>, b: &Point<D>) -> Point<D> {
    std::array::from_fn(|i| a[i] + b[i])
}

#[inline]
pub fn scale<const D: usize>(a: &Point<D>, s: f64) -> Point<D> {
    std::array::from_fn(|i| a[i] * s)
}

#[inline]
pub fn norm_sq<const D: usize>(a: &Point<D>) -> f64 {
    a.iter().map(|v| v * v).sum()
}

#[inline]
pub fn norm<const D: usize>(a: &Point<D>) -> f64 {
    norm_sq(a).sqrt()
}

#[inline]
pub fn dist_sq<const D: usize>(a: &Point<D>, b: &Point<D>) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

#[inline]
pub fn dist<const D: usize>(a: &Point<D>, b: &Point<D>) -> f64 {
    dist_sq(a, b).sqrt()
}

/// Unit vector along `a`; the zero vector maps to itself.
pub fn normalized<const D: usize>(a: &Point<D>) -> Point<D> {
    let n = norm(a);
    if n == 0.0 {
        *a
    } else {
        scale(a, 1.0 / n)
    }
}

/// Converts a slice of known length into a point.
pub fn from_slice<const D: usize>(v: &[f64]) -> Option<Point<D>> {
    v.try_into().ok()
}
