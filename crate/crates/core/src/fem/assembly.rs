use std::sync::Arc;

use rayon::prelude::*;

use super::mesh::{dot, element_geometry, SimplexMesh};
use super::sparse::{pcg, CsrMatrix, SolveStats};
use super::{FemError, ScalarField};

/// Default relative residual for Dirichlet solves.
pub const DEFAULT_TOL: f64 = 1e-10;

/// P1 stiffness matrix `K_ij = int grad phi_i . grad phi_j`.
pub fn assemble_stiffness<M: SimplexMesh + ?Sized>(m: &M) -> CsrMatrix {
    let locals: Vec<Vec<(usize, usize, f64)>> = (0..m.n_elements())
        .into_par_iter()
        .map(|e| {
            let g = element_geometry(m, e);
            let vs = m.element(e);
            let mut out = Vec::with_capacity(vs.len() * vs.len());
            for (i, &vi) in vs.iter().enumerate() {
                for (j, &vj) in vs.iter().enumerate() {
                    out.push((vi, vj, dot(g.grads[i], g.grads[j]) * g.measure));
                }
            }
            out
        })
        .collect();
    CsrMatrix::from_triplets(m.n_vertices(), locals.into_iter().flatten().collect())
}

/// The stiffness matrix split into interior and boundary blocks, reusable
/// for many boundary data sets on one mesh.
pub struct DirichletSystem<M> {
    mesh: Arc<M>,
    stiffness: CsrMatrix,
    boundary: Vec<bool>,
    interior: Vec<usize>,
    a_ii: CsrMatrix,
    a_ib: CsrMatrix,
}

impl<M: SimplexMesh> DirichletSystem<M> {
    /// Uses the mesh boundary as the Dirichlet boundary.
    pub fn new(mesh: Arc<M>) -> Self {
        let flags = mesh.boundary_vertex_flags();
        Self::with_boundary(mesh, flags)
    }

    pub fn with_boundary(mesh: Arc<M>, boundary: Vec<bool>) -> Self {
        let stiffness = assemble_stiffness(mesh.as_ref());
        let n = mesh.n_vertices();
        let mut index = vec![usize::MAX; n];
        let interior: Vec<usize> = (0..n).filter(|&v| !boundary[v]).collect();
        for (k, &v) in interior.iter().enumerate() {
            index[v] = k;
        }
        let mut ii = Vec::new();
        let mut ib = Vec::new();
        for (k, &v) in interior.iter().enumerate() {
            for (c, val) in stiffness.row(v) {
                if boundary[c] {
                    ib.push((k, c, val));
                } else {
                    ii.push((k, index[c], val));
                }
            }
        }
        let a_ii = CsrMatrix::from_triplets(interior.len(), ii);
        let a_ib = CsrMatrix::from_triplets_rect(interior.len(), n, ib);
        Self { mesh, stiffness, boundary, interior, a_ii, a_ib }
    }

    pub fn mesh(&self) -> &Arc<M> {
        &self.mesh
    }

    pub fn stiffness(&self) -> &CsrMatrix {
        &self.stiffness
    }

    pub fn boundary(&self) -> &[bool] {
        &self.boundary
    }

    pub fn n_interior(&self) -> usize {
        self.interior.len()
    }

    /// Discrete harmonic extension of `g`. Only boundary entries of `g`
    /// are read.
    pub fn solve(&self, g: &[f64], tol: f64) -> Result<ScalarField<M>, FemError> {
        self.solve_with_stats(g, tol).map(|(f, _)| f)
    }

    pub fn solve_with_stats(&self, g: &[f64], tol: f64) -> Result<(ScalarField<M>, SolveStats), FemError> {
        let n = self.mesh.n_vertices();
        if g.len() != n {
            return Err(FemError::SizeMismatch { expected: n, got: g.len() });
        }
        let mut full: Vec<f64> = (0..n).map(|v| if self.boundary[v] { g[v] } else { 0.0 }).collect();
        if let Some(v) = (0..n).find(|&v| self.boundary[v] && !g[v].is_finite()) {
            return Err(FemError::NonFinite(v));
        }
        let stats = if self.interior.is_empty() {
            SolveStats { iterations: 0, relative_residual: 0.0 }
        } else {
            let mut rhs = vec![0.0; self.interior.len()];
            self.a_ib.mul_vec(&full, &mut rhs);
            rhs.iter_mut().for_each(|v| *v = -*v);
            let mut x = vec![0.0; self.interior.len()];
            let stats = pcg(&self.a_ii, &rhs, &mut x, tol)?;
            for (k, &v) in self.interior.iter().enumerate() {
                full[v] = x[k];
            }
            stats
        };
        Ok((ScalarField::new(self.mesh.clone(), full)?, stats))
    }
}

/// One-shot discrete harmonic extension of `g` on the mesh boundary.
pub fn solve_dirichlet<M: SimplexMesh>(mesh: Arc<M>, g: &[f64], tol: f64) -> Result<ScalarField<M>, FemError> {
    DirichletSystem::new(mesh).solve(g, tol)
}
