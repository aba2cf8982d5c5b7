use crate::geometry::Point;

use super::LinearOperator;

/// Multi-index of a monomial `x_0^a_0 · x_1^a_1 · …`.
pub type Exponents<const D: usize> = [u8; D];

/// All monomials of total degree ≤ `degree`, graded by degree.
#[derive(Clone, Debug, PartialEq)]
pub struct MonomialBasis<const D: usize> {
    degree: usize,
    exponents: Vec<Exponents<D>>,
}

impl<const D: usize> MonomialBasis<D> {
    pub fn new(degree: usize) -> Self {
        let mut exponents = Vec::new();
        for total in 0..=degree {
            let mut current = [0u8; D];
            push_with_total(&mut exponents, &mut current, 0, total);
        }
        Self { degree, exponents }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponents(&self) -> &[Exponents<D>] {
        &self.exponents
    }

    /// Values of every basis monomial at `x`, written into `out`.
    pub fn eval_into(&self, x: &Point<D>, out: &mut [f64]) {
        let mut powers = [[1.0f64; 16]; D];
        let top = self.degree.min(15);
        for a in 0..D {
            for p in 1..=top {
                powers[a][p] = powers[a][p - 1] * x[a];
            }
        }
        for (o, e) in out.iter_mut().zip(&self.exponents) {
            *o = (0..D).map(|a| if (e[a] as usize) <= top { powers[a][e[a] as usize] } else { x[a].powi(e[a] as i32) }).product();
        }
    }

    /// `L p_j` evaluated at the origin, for every basis monomial.
    pub fn apply_at_origin(&self, op: LinearOperator) -> Vec<f64> {
        self.exponents.iter().map(|e| apply_operator_to_monomial(op, e)).collect()
    }
}

fn push_with_total<const D: usize>(out: &mut Vec<Exponents<D>>, current: &mut Exponents<D>, axis: usize, left: usize) {
    if axis + 1 == D {
        current[axis] = left as u8;
        out.push(*current);
        return;
    }
    for k in (0..=left).rev() {
        current[axis] = k as u8;
        push_with_total(out, current, axis + 1, left - k);
    }
    current[axis] = 0;
}

pub fn eval_monomial<const D: usize>(exponents: &Exponents<D>, x: &Point<D>) -> f64 {
    (0..D).map(|a| x[a].powi(exponents[a] as i32)).product()
}

/// Closed-form `L x^e` at the origin: only the monomial matching the
/// derivative multi-index survives, with value `e!`.
pub fn apply_operator_to_monomial<const D: usize>(op: LinearOperator, e: &Exponents<D>) -> f64 {
    let is = |target: [u8; D]| *e == target;
    let unit = |axes: &[usize]| {
        let mut t = [0u8; D];
        for &a in axes {
            t[a] += 1;
        }
        t
    };
    match op {
        LinearOperator::Identity => f64::from(u8::from(is([0; D]))),
        LinearOperator::Partial(a) => f64::from(u8::from(is(unit(&[a])))),
        LinearOperator::SecondPartial(i, j) if i == j => 2.0 * f64::from(u8::from(is(unit(&[i, i])))),
        LinearOperator::SecondPartial(i, j) => f64::from(u8::from(is(unit(&[i, j])))),
        LinearOperator::Laplacian => (0..D).map(|a| 2.0 * f64::from(u8::from(is(unit(&[a, a]))))).sum(),
    }
}
