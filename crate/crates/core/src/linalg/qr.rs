//! Column-pivoted Householder QR on rectangular complex matrices.
//!
//! Used for rank decisions (numerical kernels of superoperators, span
//! comparisons of jump-operator sets, commutant dimensions) and for the
//! least-squares steady-state solve. The magnitudes of the pivoted R
//! diagonal serve as the rank-revealing proxy for singular values; the
//! spectra encountered here have kernel gaps of many orders of magnitude,
//! far wider than the worst-case slack of pivoted QR.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Rectangular complex matrix, row-major. Internal to the linear-algebra
/// layer; the public operator algebra stays on square matrices.
#[derive(Clone, Debug)]
pub struct RectMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Complex64>,
}

impl RectMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn from_columns(columns: &[Vec<Complex64>]) -> Result<Self> {
        let cols = columns.len();
        if cols == 0 {
            return Err(Error::InvalidArgument("matrix needs at least one column".into()));
        }
        let rows = columns[0].len();
        for c in columns {
            if c.len() != rows {
                return Err(Error::DimensionMismatch { left: rows, right: c.len() });
            }
        }
        let mut m = Self::zeros(rows, cols);
        for (j, c) in columns.iter().enumerate() {
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    fn swap_columns(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }
}

/// Factorisation `A P = Q R` with column pivoting.
pub struct Qrcp {
    /// Householder vectors below the diagonal, R above it.
    factors: RectMatrix,
    /// Real Householder scalars (tau).
    taus: Vec<f64>,
    /// R diagonal (signed magnitude absorbed into phase; `beta` values).
    r_diag: Vec<Complex64>,
    /// Column permutation: factored column k holds original column perm[k].
    perm: Vec<usize>,
}

pub fn qrcp(mut a: RectMatrix) -> Qrcp {
    let m = a.rows;
    let n = a.cols;
    let kmax = m.min(n);
    let mut taus = vec![0.0; kmax];
    let mut r_diag = vec![Complex64::new(0.0, 0.0); kmax];
    let mut perm: Vec<usize> = (0..n).collect();

    for k in 0..kmax {
        // exact pivot: remaining column with the largest trailing norm
        let mut best = k;
        let mut best_norm = -1.0;
        for j in k..n {
            let norm: f64 = (k..m).map(|i| a.get(i, j).norm_sqr()).sum();
            if norm > best_norm {
                best_norm = norm;
                best = j;
            }
        }
        a.swap_columns(k, best);
        perm.swap(k, best);

        let sigma = best_norm.sqrt();
        if sigma == 0.0 {
            taus[k] = 0.0;
            r_diag[k] = Complex64::new(0.0, 0.0);
            continue;
        }
        let x0 = a.get(k, k);
        let phase = if x0.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
        let beta = -phase * sigma;
        // v = x - beta e1, stored in place; tau = 1 / (sigma (sigma + |x0|))
        a.set(k, k, x0 - beta);
        let tau = 1.0 / (sigma * (sigma + x0.norm()));
        taus[k] = tau;
        r_diag[k] = beta;

        for j in k + 1..n {
            let mut w = Complex64::new(0.0, 0.0);
            for i in k..m {
                w += a.get(i, k).conj() * a.get(i, j);
            }
            w *= tau;
            for i in k..m {
                let v = a.get(i, j) - w * a.get(i, k);
                a.set(i, j, v);
            }
        }
    }

    Qrcp { factors: a, taus, r_diag, perm }
}

impl Qrcp {
    pub fn r_diag_abs(&self) -> Vec<f64> {
        self.r_diag.iter().map(|z| z.norm()).collect()
    }

    /// Numerical rank: count of R-diagonal magnitudes at least `rel_tol`
    /// times the largest one.
    pub fn rank(&self, rel_tol: f64) -> usize {
        let diag = self.r_diag_abs();
        let max = diag.first().copied().unwrap_or(0.0);
        if max == 0.0 {
            return 0;
        }
        diag.iter().take_while(|&&d| d >= rel_tol * max).count()
    }

    /// Applies `Q^dagger` to `b` in place.
    fn apply_q_adjoint(&self, b: &mut [Complex64]) {
        let m = self.factors.rows;
        for k in 0..self.taus.len() {
            if self.taus[k] == 0.0 {
                continue;
            }
            let mut w = Complex64::new(0.0, 0.0);
            for i in k..m {
                w += self.factors.get(i, k).conj() * b[i];
            }
            w *= self.taus[k];
            for i in k..m {
                b[i] -= w * self.factors.get(i, k);
            }
        }
    }

    /// Basic least-squares solution of `min ||A x - b||` truncated to the
    /// leading `rank` pivots; the remaining components are zero. Returns
    /// `(x, residual_norm)`.
    pub fn least_squares(&self, b: &[Complex64], rank: usize) -> (Vec<Complex64>, f64) {
        let m = self.factors.rows;
        let n = self.factors.cols;
        assert_eq!(b.len(), m);
        let mut qtb = b.to_vec();
        self.apply_q_adjoint(&mut qtb);

        let r = rank.min(self.taus.len());
        let mut y = vec![Complex64::new(0.0, 0.0); r];
        for i in (0..r).rev() {
            let mut acc = qtb[i];
            for j in i + 1..r {
                acc -= self.factors.get(i, j) * y[j];
            }
            y[i] = acc / self.r_diag[i];
        }
        let mut x = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..r {
            x[self.perm[i]] = y[i];
        }
        // rows r..m of Q^dagger b are untouched by the triangular solve
        let residual: f64 = qtb[r..m].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        (x, residual)
    }
}

/// Complex rank of a set of vectors (as columns), with R-diagonal
/// magnitudes below `rel_tol` times the largest treated as zero.
pub fn column_rank(columns: &[Vec<Complex64>], rel_tol: f64) -> Result<usize> {
    let a = RectMatrix::from_columns(columns)?;
    Ok(qrcp(a).rank(rel_tol))
}
