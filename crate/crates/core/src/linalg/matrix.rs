use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense square complex matrix with row-major storage.
///
/// This is the carrier for every operator in the crate: density matrices,
/// Hamiltonians, jump operators, Kraus operators and tangent perturbations.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.data[i * dim + j] = f(i, j);
            }
        }
        m
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &v) in diag.iter().enumerate() {
            m.data[i * diag.len() + i] = v;
        }
        m
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let entries: Vec<Complex64> = diag.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_diagonal(&entries)
    }

    /// Builds a matrix from explicit rows; every row must have the same
    /// length as the number of rows.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: row.len() });
            }
        }
        let data = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Ok(Self { dim, data })
    }

    /// Rank-one outer product `ket * bra^dagger`.
    pub fn outer(ket: &[Complex64], bra: &[Complex64]) -> Result<Self> {
        if ket.len() != bra.len() {
            return Err(Error::DimensionMismatch { left: ket.len(), right: bra.len() });
        }
        let dim = ket.len();
        Ok(Self::from_fn(dim, |i, j| ket[i] * bra[j].conj()))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.dim + j] = v;
    }

    #[inline]
    pub(crate) fn data(&self) -> &[Complex64] {
        &self.data
    }

    #[inline]
    pub(crate) fn data_mut(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i))
    }

    pub fn conjugate(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(i, j).conj())
    }

    /// Hermitian part `(M + M^dagger)/2`.
    pub fn hermitize(&self) -> Self {
        Self::from_fn(self.dim, |i, j| 0.5 * (self.get(i, j) + self.get(j, i).conj()))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Relative Hermiticity defect `||M - M^dagger||_F / max(1, ||M||_F)`.
    pub fn hermitian_defect(&self) -> f64 {
        let mut sum = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let d = self.get(i, j) - self.get(j, i).conj();
                sum += d.norm_sqr();
            }
        }
        sum.sqrt() / self.frobenius_norm().max(1.0)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|&z| z * c).collect() }
    }

    pub fn scaled_re(&self, c: f64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|&z| z * c).collect() }
    }

    /// `self + c * other`, used heavily by the RK4 stages.
    pub fn add_scaled(&self, c: f64, other: &Self) -> Self {
        debug_assert_eq!(self.dim, other.dim);
        let data = self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(&a, &b)| a + b * c)
            .collect();
        Self { dim: self.dim, data }
    }

    pub fn add_scaled_assign(&mut self, c: f64, other: &Self) {
        debug_assert_eq!(self.dim, other.dim);
        for (a, &b) in self.data.iter_mut().zip(other.data.iter()) {
            *a += b * c;
        }
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self * other - other * self
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        debug_assert_eq!(v.len(), self.dim);
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for i in 0..self.dim {
            let row = self.row(i);
            let mut acc = Complex64::new(0.0, 0.0);
            for (a, b) in row.iter().zip(v.iter()) {
                acc += a * b;
            }
            out[i] = acc;
        }
        out
    }

    pub(crate) fn mul_into(&self, rhs: &Self, out: &mut Self) {
        let d = self.dim;
        debug_assert_eq!(rhs.dim, d);
        debug_assert_eq!(out.dim, d);
        out.data.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
        for i in 0..d {
            for k in 0..d {
                let aik = self.data[i * d + k];
                if aik.re == 0.0 && aik.im == 0.0 {
                    continue;
                }
                let row_b = &rhs.data[k * d..(k + 1) * d];
                let row_o = &mut out.data[i * d..(i + 1) * d];
                for (o, &b) in row_o.iter_mut().zip(row_b.iter()) {
                    *o += aik * b;
                }
            }
        }
    }

    /// Kronecker product; the result has dimension `self.dim * other.dim`.
    pub fn kron(&self, other: &Self) -> Self {
        let da = self.dim;
        let db = other.dim;
        let d = da * db;
        let mut out = Self::zeros(d);
        for ia in 0..da {
            for ja in 0..da {
                let a = self.get(ia, ja);
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for ib in 0..db {
                    for jb in 0..db {
                        out.set(ia * db + ib, ja * db + jb, a * other.get(ib, jb));
                    }
                }
            }
        }
        out
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        debug_assert_eq!(self.dim, rhs.dim);
        let data = self.data.iter().zip(rhs.data.iter()).map(|(&a, &b)| a + b).collect();
        ComplexMatrix { dim: self.dim, data }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        debug_assert_eq!(self.dim, rhs.dim);
        let data = self.data.iter().zip(rhs.data.iter()).map(|(&a, &b)| a - b).collect();
        ComplexMatrix { dim: self.dim, data }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dim);
        self.mul_into(rhs, &mut out);
        out
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.scaled_re(-1.0)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self.get(i, j);
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_multiplication() {
        let a = ComplexMatrix::from_fn(3, |i, j| c((i + 2 * j) as f64, (i * j) as f64));
        let id = ComplexMatrix::identity(3);
        assert_eq!(&a * &id, a);
        assert_eq!(&id * &a, a);
    }

    #[test]
    fn adjoint_of_product_reverses_order() {
        let a = ComplexMatrix::from_fn(4, |i, j| c(i as f64 - j as f64, 0.3 * (i + j) as f64));
        let b = ComplexMatrix::from_fn(4, |i, j| c((i * j) as f64, 1.0 - i as f64));
        let lhs = (&a * &b).adjoint();
        let rhs = &b.adjoint() * &a.adjoint();
        assert!((&lhs - &rhs).frobenius_norm() < 1e-12);
    }

    #[test]
    fn trace_is_sum_of_diagonal() {
        let a = ComplexMatrix::from_diagonal(&[c(1.0, 2.0), c(-0.5, 0.0), c(0.0, 3.0)]);
        let t = a.trace();
        assert!((t - c(0.5, 5.0)).norm() < 1e-15);
    }

    #[test]
    fn hermitize_kills_defect() {
        let a = ComplexMatrix::from_fn(5, |i, j| c(i as f64, j as f64));
        let h = a.hermitize();
        assert!(h.hermitian_defect() < 1e-15);
    }

    #[test]
    fn kron_dimensions_and_entries() {
        let a = ComplexMatrix::from_diagonal(&[c(1.0, 0.0), c(2.0, 0.0)]);
        let b = ComplexMatrix::from_fn(2, |i, j| c((i + j) as f64, 0.0));
        let k = a.kron(&b);
        assert_eq!(k.dim(), 4);
        assert_eq!(k.get(0, 1), c(1.0, 0.0));
        assert_eq!(k.get(2, 3), c(2.0, 0.0));
        assert_eq!(k.get(0, 2), c(0.0, 0.0));
    }
}
