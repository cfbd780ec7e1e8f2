//! Compressed sparse row matrices and Jacobi-preconditioned CG.

use rayon::prelude::*;

use super::FemError;

const PARALLEL_ROWS: usize = 20_000;

#[derive(Clone, Debug, PartialEq)]
pub struct CsrMatrix {
    n: usize,
    n_cols: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
}

impl CsrMatrix {
    /// Builds a square matrix from triplets. Duplicates are summed in input
    /// order, so the result does not depend on hashing or threading.
    pub fn from_triplets(n: usize, triplets: Vec<(usize, usize, f64)>) -> Self {
        Self::from_triplets_rect(n, n, triplets)
    }

    /// Rectangular variant of [`CsrMatrix::from_triplets`].
    pub fn from_triplets_rect(n: usize, n_cols: usize, mut triplets: Vec<(usize, usize, f64)>) -> Self {
        triplets.sort_by_key(|&(r, c, _)| (r, c));
        let mut row_ptr = vec![0; n + 1];
        let mut cols = Vec::with_capacity(triplets.len());
        let mut vals: Vec<f64> = Vec::with_capacity(triplets.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, c, v) in triplets {
            if last == Some((r, c)) {
                *vals.last_mut().expect("entry exists") += v;
            } else {
                cols.push(c);
                vals.push(v);
                row_ptr[r + 1] += 1;
                last = Some((r, c));
            }
        }
        for i in 0..n {
            row_ptr[i + 1] += row_ptr[i];
        }
        Self { n, n_cols, row_ptr, cols, vals }
    }

    /// Number of rows.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        self.cols[r.clone()].iter().copied().zip(self.vals[r].iter().copied())
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.row(i).find(|&(c, _)| c == j).map_or(0.0, |(_, v)| v)
    }

    pub fn mul_vec(&self, x: &[f64], y: &mut [f64]) {
        // Rows are independent, so the parallel product is deterministic.
        if self.n >= PARALLEL_ROWS {
            y.par_iter_mut().enumerate().for_each(|(i, yi)| {
                *yi = self.row(i).map(|(c, v)| v * x[c]).sum();
            });
        } else {
            for (i, yi) in y.iter_mut().enumerate() {
                *yi = self.row(i).map(|(c, v)| v * x[c]).sum();
            }
        }
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.row(i).map(|(_, v)| v).sum()).collect()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    /// Largest `|a_ij - a_ji|`.
    pub fn asymmetry(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.n {
            for (j, v) in self.row(i) {
                worst = worst.max((v - self.get(j, i)).abs());
            }
        }
        worst
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveStats {
    pub iterations: usize,
    pub relative_residual: f64,
}

/// Solves `A x = b` for symmetric positive definite `A` (given as rows),
/// starting from `x`. Stops at relative residual `tol` or after
/// `50 * sqrt(n)` iterations.
pub fn pcg(rows: &CsrMatrix, b: &[f64], x: &mut [f64], tol: f64) -> Result<SolveStats, FemError> {
    let n = b.len();
    let b_norm = norm(b);
    if b_norm == 0.0 {
        x.iter_mut().for_each(|v| *v = 0.0);
        return Ok(SolveStats { iterations: 0, relative_residual: 0.0 });
    }
    let inv_diag: Vec<f64> = rows.diagonal().iter().map(|&d| 1.0 / d).collect();
    let mut ax = vec![0.0; n];
    rows.mul_vec(x, &mut ax);
    let mut r: Vec<f64> = b.iter().zip(&ax).map(|(bi, ai)| bi - ai).collect();
    let mut z: Vec<f64> = r.iter().zip(&inv_diag).map(|(ri, di)| ri * di).collect();
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    let mut q = vec![0.0; n];
    let cap = ((50.0 * (n as f64).sqrt()).ceil() as usize).max(1);
    let mut rel = norm(&r) / b_norm;
    for it in 0..cap {
        if rel <= tol {
            return Ok(SolveStats { iterations: it, relative_residual: rel });
        }
        rows.mul_vec(&p, &mut q);
        let alpha = rz / dot(&p, &q);
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * q[i];
        }
        for i in 0..n {
            z[i] = r[i] * inv_diag[i];
        }
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
        rel = norm(&r) / b_norm;
    }
    if rel <= tol {
        return Ok(SolveStats { iterations: cap, relative_residual: rel });
    }
    Err(FemError::NoConvergence { iterations: cap, relative_residual: rel })
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
