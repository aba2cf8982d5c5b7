//! Dual-threshold incomplete LU factorization.
//!
//! Row-wise ILUT in the style of Eigen's `IncompleteLUT`: each row keeps at
//! most `fill_factor * nnz(A) / n / 2` entries in each of its L and U parts,
//! L multipliers with `|l| <= drop_tol` are skipped and U entries smaller than
//! `drop_tol * ‖a_i‖₂` are dropped.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use super::csr::CsrMatrix;
use crate::error::{Error, Result};

/// Incomplete factors `P A Pᵀ ≈ L U` with unit lower `L`.
#[derive(Debug, Clone)]
pub struct Ilut {
    n: usize,
    l_ptr: Vec<usize>,
    l_idx: Vec<usize>,
    l_val: Vec<f64>,
    diag: Vec<f64>,
    u_ptr: Vec<usize>,
    u_idx: Vec<usize>,
    u_val: Vec<f64>,
    /// `perm[new] = old`, identity when absent.
    perm: Option<Vec<usize>>,
}

impl Ilut {
    /// Factorizes `a` in its given ordering.
    pub fn new(a: &CsrMatrix, drop_tol: f64, fill_factor: usize) -> Result<Self> {
        factorize(a, drop_tol, fill_factor, None)
    }

    /// Factorizes `a` after a symmetric reverse Cuthill-McKee permutation.
    pub fn with_rcm(a: &CsrMatrix, drop_tol: f64, fill_factor: usize) -> Result<Self> {
        let perm = reverse_cuthill_mckee(a);
        let b = permute_symmetric(a, &perm);
        factorize(&b, drop_tol, fill_factor, Some(perm))
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Stored entries in L and U, including the diagonal.
    pub fn nnz(&self) -> usize {
        self.l_val.len() + self.u_val.len() + self.n
    }

    /// `z = M⁻¹ r`.
    pub fn apply(&self, r: &[f64], z: &mut [f64]) {
        let n = self.n;
        let mut y: Vec<f64> = match &self.perm {
            Some(p) => p.iter().map(|&old| r[old]).collect(),
            None => r.to_vec(),
        };
        for i in 0..n {
            let mut acc = y[i];
            for k in self.l_ptr[i]..self.l_ptr[i + 1] {
                acc -= self.l_val[k] * y[self.l_idx[k]];
            }
            y[i] = acc;
        }
        for i in (0..n).rev() {
            let mut acc = y[i];
            for k in self.u_ptr[i]..self.u_ptr[i + 1] {
                acc -= self.u_val[k] * y[self.u_idx[k]];
            }
            y[i] = acc / self.diag[i];
        }
        match &self.perm {
            Some(p) => {
                for (new, &old) in p.iter().enumerate() {
                    z[old] = y[new];
                }
            }
            None => z.copy_from_slice(&y),
        }
    }
}

fn factorize(a: &CsrMatrix, drop_tol: f64, fill_factor: usize, perm: Option<Vec<usize>>) -> Result<Ilut> {
    if !a.is_square() {
        return Err(Error::Config("ILUT needs a square matrix".into()));
    }
    if fill_factor == 0 || !(drop_tol >= 0.0) {
        return Err(Error::Config("ILUT needs fill_factor >= 1 and drop_tol >= 0".into()));
    }
    let n = a.nrows();
    let fill_in = (a.nnz() * fill_factor / n.max(1) + 1).min(n);
    let keep_l = fill_in / 2;
    let keep_u = keep_l;

    let mut l_ptr = vec![0];
    let mut l_idx: Vec<usize> = Vec::new();
    let mut l_val: Vec<f64> = Vec::new();
    let mut u_ptr = vec![0];
    let mut u_idx: Vec<usize> = Vec::new();
    let mut u_val: Vec<f64> = Vec::new();
    let mut diag = vec![0.0; n];

    let mut w = vec![0.0; n];
    let mut present = vec![false; n];
    let mut touched: Vec<usize> = Vec::new();
    let mut upper: Vec<usize> = Vec::new();
    let mut pending: BinaryHeap<Reverse<usize>> = BinaryHeap::new();
    let mut lrow: Vec<(usize, f64)> = Vec::new();
    let mut urow: Vec<(usize, f64)> = Vec::new();

    for i in 0..n {
        let (cols, vals) = a.row(i);
        let rownorm = vals.iter().map(|v| v * v).sum::<f64>().sqrt();
        if rownorm == 0.0 {
            return Err(Error::SingularSystem(format!("row {i} is empty")));
        }
        touched.clear();
        upper.clear();
        lrow.clear();
        urow.clear();
        present[i] = true;
        touched.push(i);
        for (&c, &v) in cols.iter().zip(vals) {
            w[c] = v;
            if c != i {
                present[c] = true;
                touched.push(c);
                if c < i {
                    pending.push(Reverse(c));
                } else {
                    upper.push(c);
                }
            }
        }

        while let Some(Reverse(k)) = pending.pop() {
            let fact = w[k] / diag[k];
            if fact.abs() <= drop_tol {
                continue;
            }
            for p in u_ptr[k]..u_ptr[k + 1] {
                let j = u_idx[p];
                if !present[j] {
                    present[j] = true;
                    touched.push(j);
                    w[j] = 0.0;
                    if j < i {
                        pending.push(Reverse(j));
                    } else if j != i {
                        upper.push(j);
                    }
                }
                w[j] -= fact * u_val[p];
            }
            lrow.push((k, fact));
        }

        keep_largest(&mut lrow, keep_l);
        lrow.sort_unstable_by_key(|e| e.0);
        for &(k, v) in &lrow {
            l_idx.push(k);
            l_val.push(v);
        }
        l_ptr.push(l_idx.len());

        let mut d = w[i];
        if d == 0.0 {
            d = drop_tol.sqrt() * rownorm;
        }
        diag[i] = d;

        for &j in &upper {
            if w[j].abs() > drop_tol * rownorm {
                urow.push((j, w[j]));
            }
        }
        keep_largest(&mut urow, keep_u.saturating_sub(1));
        urow.sort_unstable_by_key(|e| e.0);
        for &(j, v) in &urow {
            u_idx.push(j);
            u_val.push(v);
        }
        u_ptr.push(u_idx.len());

        for &t in &touched {
            present[t] = false;
            w[t] = 0.0;
        }
    }

    if diag.iter().any(|d| !d.is_finite()) {
        return Err(Error::SingularSystem("ILUT produced a non-finite pivot".into()));
    }
    Ok(Ilut { n, l_ptr, l_idx, l_val, diag, u_ptr, u_idx, u_val, perm })
}

fn keep_largest(row: &mut Vec<(usize, f64)>, keep: usize) {
    if row.len() > keep {
        if keep == 0 {
            row.clear();
            return;
        }
        row.select_nth_unstable_by(keep - 1, |a, b| b.1.abs().total_cmp(&a.1.abs()));
        row.truncate(keep);
    }
}

/// Reverse Cuthill-McKee ordering of the pattern of `A + Aᵀ`, as `perm[new] = old`.
pub fn reverse_cuthill_mckee(a: &CsrMatrix) -> Vec<usize> {
    let n = a.nrows();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (r, c, _) in a.triplets() {
        if r != c {
            adj[r].push(c);
            adj[c].push(r);
        }
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    let degree: Vec<usize> = adj.iter().map(Vec::len).collect();

    let mut order = Vec::with_capacity(n);
    let mut visited = vec![false; n];
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&i| (degree[i], i));
    let mut queue = VecDeque::new();
    let mut next: Vec<usize> = Vec::new();
    for &start in &by_degree {
        if visited[start] {
            continue;
        }
        visited[start] = true;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            next.clear();
            next.extend(adj[v].iter().copied().filter(|&u| !visited[u]));
            next.sort_by_key(|&u| (degree[u], u));
            for &u in &next {
                visited[u] = true;
                queue.push_back(u);
            }
        }
    }
    order.reverse();
    order
}

/// `P A Pᵀ` for `perm[new] = old`.
pub fn permute_symmetric(a: &CsrMatrix, perm: &[usize]) -> CsrMatrix {
    let mut inv = vec![0; perm.len()];
    for (new, &old) in perm.iter().enumerate() {
        inv[old] = new;
    }
    let triplets: Vec<_> = a.triplets().map(|(r, c, v)| (inv[r], inv[c], v)).collect();
    CsrMatrix::from_triplets(a.nrows(), a.ncols(), &triplets).expect("permutation keeps indices in range")
}
