//! Direct sparse LU, backed by faer.

use faer::linalg::solvers::Solve;
use faer::sparse::linalg::LuError;
use faer::sparse::{SparseColMat, Triplet};
use faer::{Mat, Par};

use super::csr::CsrMatrix;
use crate::error::{Error, Result};

/// Factorizes `a` and solves `a x = b` on a single thread.
pub fn sparse_lu_solve(a: &CsrMatrix, b: &[f64]) -> Result<Vec<f64>> {
    let n = a.nrows();
    faer::set_global_parallelism(Par::Seq);
    let triplets: Vec<Triplet<usize, usize, f64>> =
        a.triplets().map(|(r, c, v)| Triplet::new(r, c, v)).collect();
    let mat = SparseColMat::<usize, f64>::try_new_from_triplets(n, n, &triplets)
        .map_err(|e| Error::SingularSystem(format!("cannot build sparse matrix: {e:?}")))?;
    let lu = mat.sp_lu().map_err(|e| match e {
        LuError::SymbolicSingular { index } => {
            Error::SingularSystem(format!("structurally singular at pivot {index}"))
        }
        LuError::Generic(g) => Error::SingularSystem(format!("factorization failed: {g:?}")),
    })?;
    let mut rhs = Mat::<f64>::from_fn(n, 1, |i, _| b[i]);
    lu.solve_in_place(rhs.as_mut());
    let x: Vec<f64> = (0..n).map(|i| rhs[(i, 0)]).collect();
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::SingularSystem("numerically singular: non-finite solution".into()));
    }
    Ok(x)
}
