//! Right-preconditioned BiCGSTAB.

use super::csr::{dot, norm2, CsrMatrix};
use super::SolveStatus;

/// Outcome of an iterative solve, before the residual is re-verified.
#[derive(Debug, Clone)]
pub struct IterationResult {
    pub x: Vec<f64>,
    pub iterations: usize,
    pub status: SolveStatus,
}

/// Solves `a x = b` to relative residual `tol` with preconditioner `precond`
/// (`z = M⁻¹ r`). The starting guess is `M⁻¹ b`. On failure the iterate with
/// the smallest recursive residual is returned.
pub fn bicgstab<F>(a: &CsrMatrix, b: &[f64], tol: f64, max_iter: usize, precond: F) -> IterationResult
where
    F: Fn(&[f64], &mut [f64]),
{
    let n = b.len();
    let nb = norm2(b);
    if nb == 0.0 {
        return IterationResult { x: vec![0.0; n], iterations: 0, status: SolveStatus::Converged };
    }
    let threshold = tol * nb;

    let mut x = vec![0.0; n];
    precond(b, &mut x);
    let mut r = a.mul_vec(&x);
    for (ri, bi) in r.iter_mut().zip(b) {
        *ri = bi - *ri;
    }
    let mut rnorm = norm2(&r);
    if !rnorm.is_finite() {
        x.iter_mut().for_each(|v| *v = 0.0);
        r.copy_from_slice(b);
        rnorm = nb;
    }
    if rnorm <= threshold {
        return IterationResult { x, iterations: 0, status: SolveStatus::Converged };
    }

    let mut best_x = x.clone();
    let mut best = rnorm;
    let mut r0 = r.clone();
    let (mut rho, mut alpha, mut omega) = (1.0, 1.0, 1.0);
    let mut v = vec![0.0; n];
    let mut p = vec![0.0; n];
    let mut y = vec![0.0; n];
    let mut s = vec![0.0; n];
    let mut z = vec![0.0; n];
    let mut t = vec![0.0; n];

    for it in 1..=max_iter {
        let mut rho_new = dot(&r0, &r);
        if rho_new.abs() < f64::EPSILON * f64::EPSILON * dot(&r0, &r0) {
            // The shadow residual became orthogonal: restart from the current residual.
            r0.copy_from_slice(&r);
            rho_new = dot(&r, &r);
            p.iter_mut().for_each(|e| *e = 0.0);
            v.iter_mut().for_each(|e| *e = 0.0);
            rho = 1.0;
            alpha = 1.0;
            omega = 1.0;
        }
        let beta = (rho_new / rho) * (alpha / omega);
        rho = rho_new;
        for i in 0..n {
            p[i] = r[i] + beta * (p[i] - omega * v[i]);
        }
        precond(&p, &mut y);
        a.mul_vec_into(&y, &mut v);
        let denom = dot(&r0, &v);
        alpha = rho / denom;
        if !alpha.is_finite() {
            return finish(best_x, it, SolveStatus::Breakdown);
        }
        for i in 0..n {
            s[i] = r[i] - alpha * v[i];
        }
        let snorm = norm2(&s);
        if snorm <= threshold {
            for i in 0..n {
                x[i] += alpha * y[i];
            }
            return finish(x, it, SolveStatus::Converged);
        }
        precond(&s, &mut z);
        a.mul_vec_into(&z, &mut t);
        let tt = dot(&t, &t);
        omega = if tt > 0.0 { dot(&t, &s) / tt } else { 0.0 };
        for i in 0..n {
            x[i] += alpha * y[i] + omega * z[i];
            r[i] = s[i] - omega * t[i];
        }
        let rn = norm2(&r);
        if !rn.is_finite() {
            return finish(best_x, it, SolveStatus::Breakdown);
        }
        if rn < best {
            best = rn;
            best_x.copy_from_slice(&x);
        }
        if rn <= threshold {
            return finish(x, it, SolveStatus::Converged);
        }
        if omega == 0.0 {
            return finish(best_x, it, SolveStatus::Breakdown);
        }
    }
    finish(best_x, max_iter, SolveStatus::MaxIterations)
}

fn finish(x: Vec<f64>, iterations: usize, status: SolveStatus) -> IterationResult {
    IterationResult { x, iterations, status }
}
