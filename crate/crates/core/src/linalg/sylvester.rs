//! Weighted Sylvester and Lyapunov solvers for positive-definite Hermitian
//! coefficient matrices.
//!
//! The equation `s X rho + rho X = delta` is solved by spectral
//! transformation of `rho`: in the eigenbasis the solution is elementwise,
//! `X'_ij = delta'_ij / (lambda_i + s lambda_j)`, and every denominator is
//! strictly positive because `rho > 0` and `s` lies in [0, 1]. A general
//! Bartels-Stewart solver is unnecessary for this structure.

use super::eig::{hermitian_eig, HermitianEigen};
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Default positive-definiteness tolerance: smallest admissible eigenvalue
/// of the coefficient matrix.
pub const DEFAULT_PD_TOL: f64 = 1e-12;

/// Reusable solver holding the eigendecomposition of the coefficient
/// matrix; amortises the eigensolve across many right-hand sides (one per
/// measure atom, one per trajectory sample, ...).
#[derive(Clone, Debug)]
pub struct SylvesterSolver {
    eigen: HermitianEigen,
}

impl SylvesterSolver {
    pub fn new(rho: &ComplexMatrix, pd_tol: f64) -> Result<Self> {
        let eigen = hermitian_eig(rho)?;
        Self::from_eigen(eigen, pd_tol)
    }

    /// Builds the solver from a precomputed eigendecomposition (for example
    /// the Gram-factor route used by equilibrium constructions).
    pub fn from_eigen(eigen: HermitianEigen, pd_tol: f64) -> Result<Self> {
        let min = eigen.min_eigenvalue();
        if min <= pd_tol {
            return Err(Error::SingularRho { min_eigenvalue: min });
        }
        Ok(Self { eigen })
    }

    pub fn eigen(&self) -> &HermitianEigen {
        &self.eigen
    }

    pub fn dim(&self) -> usize {
        self.eigen.dim()
    }

    /// Solves `s X rho + rho X = delta`.
    pub fn solve(&self, delta: &ComplexMatrix, s: f64) -> Result<ComplexMatrix> {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::DomainViolation { value: s, bound: 0.0 });
        }
        if delta.dim() != self.dim() {
            return Err(Error::DimensionMismatch { left: self.dim(), right: delta.dim() });
        }
        let delta_t = self.eigen.to_eigenbasis(delta);
        let solved = self.solve_in_eigenbasis(&delta_t, s);
        Ok(self.eigen.from_eigenbasis(&solved))
    }

    /// Same as [`solve`](Self::solve) but with `delta` already expressed in
    /// the eigenbasis; the result stays in the eigenbasis.
    pub fn solve_in_eigenbasis(&self, delta_t: &ComplexMatrix, s: f64) -> ComplexMatrix {
        let lambda = &self.eigen.eigenvalues;
        ComplexMatrix::from_fn(self.dim(), |i, j| {
            delta_t.get(i, j) / (lambda[i] + s * lambda[j])
        })
    }
}

/// Solves `s X rho + rho X = delta` for Hermitian positive-definite `rho`.
///
/// At `s = 1` this is the symmetric Lyapunov form; at `s = 0` the equation
/// degenerates to `rho X = delta`, i.e. `X = rho^{-1} delta`.
pub fn solve_sylvester_weighted(
    rho: &ComplexMatrix,
    delta: &ComplexMatrix,
    s: f64,
) -> Result<ComplexMatrix> {
    SylvesterSolver::new(rho, DEFAULT_PD_TOL)?.solve(delta, s)
}

/// Solves `rho_inf G + G rho_inf = delta` and symmetrises the result, which
/// is Hermitian up to roundoff whenever `delta` is.
pub fn solve_lyapunov_bures(rho_inf: &ComplexMatrix, delta: &ComplexMatrix) -> Result<ComplexMatrix> {
    let g = solve_sylvester_weighted(rho_inf, delta, 1.0)?;
    Ok(g.hermitize())
}
