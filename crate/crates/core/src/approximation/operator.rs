use std::fmt;

use serde::{Deserialize, Serialize};

/// Linear differential operators supported by both engines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LinearOperator {
    Identity,
    /// `∂/∂x_axis`
    Partial(usize),
    /// `∂²/∂x_i∂x_j`, stored with `i <= j`.
    SecondPartial(usize, usize),
    Laplacian,
}

impl LinearOperator {
    pub fn second(i: usize, j: usize) -> Self {
        LinearOperator::SecondPartial(i.min(j), i.max(j))
    }

    /// Differential order; weights scale with `length^-order`.
    pub fn order(&self) -> i32 {
        match self {
            LinearOperator::Identity => 0,
            LinearOperator::Partial(_) => 1,
            LinearOperator::SecondPartial(..) | LinearOperator::Laplacian => 2,
        }
    }

    pub fn first_partials(d: usize) -> Vec<Self> {
        (0..d).map(LinearOperator::Partial).collect()
    }

    /// All distinct second partials, `i <= j`.
    pub fn second_partials(d: usize) -> Vec<Self> {
        (0..d).flat_map(|i| (i..d).map(move |j| LinearOperator::SecondPartial(i, j))).collect()
    }
}

impl fmt::Display for LinearOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const AXES: [&str; 3] = ["x", "y", "z"];
        let axis = |a: usize| AXES.get(a).map_or(format!("x{a}"), |s| s.to_string());
        match *self {
            LinearOperator::Identity => write!(f, "identity"),
            LinearOperator::Partial(a) => write!(f, "d{}", axis(a)),
            LinearOperator::SecondPartial(i, j) => write!(f, "d{}{}", axis(i), axis(j)),
            LinearOperator::Laplacian => write!(f, "laplacian"),
        }
    }
}
