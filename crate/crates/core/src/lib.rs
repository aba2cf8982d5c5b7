//! Strong-form mesh-free PDE solver.
//!
//! Differential operators are approximated on scattered nodes with three
//! interchangeable engines:
//!
//! * weighted least squares on a monomial basis ([`approximation::wls`]),
//! * polyharmonic-spline RBF-FD augmented with monomials ([`approximation::rbffd`]),
//! * a hybrid that picks one of the two per node ([`approximation::shapes`]).
//!
//! The pipeline is `domain` (node generation) → `stencil` (k-nearest
//! neighbours) → `approximation` (shape weights) → `assembly` (global sparse
//! system) → `solver` (sparse LU or BiCGSTAB/ILUT). The `experiments` module
//! wires these into the 2D strong-source Poisson study and the 3D Boussinesq
//! benchmark.

pub mod approximation;
pub mod assembly;
pub mod domain;
pub mod error;
pub mod experiments;
pub mod geometry;
pub mod solver;
pub mod stencil;

pub use error::{Error, Result};
pub use geometry::Point;
