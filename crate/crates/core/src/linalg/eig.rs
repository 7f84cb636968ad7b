//! Hermitian eigendecomposition by cyclic Jacobi rotations, spectral matrix
//! functions, and a Gram-factor eigensolver for positive semi-definite
//! matrices assembled as `F F^dagger`.
//!
//! Jacobi was chosen over tridiagonalisation + QR because the matrices here
//! stay small (dim <= 128), the method is unconditionally robust for
//! Hermitian input, and one-sided variants retain high relative accuracy on
//! the strongly graded spectra produced by truncated-oscillator equilibria.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Relative Hermiticity tolerance demanded of eigensolver inputs.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Off-diagonal Frobenius threshold (relative to the input norm) at which a
/// sweep is declared converged.
const OFF_DIAGONAL_TOL: f64 = 1e-13;
/// Hard cap on Jacobi sweeps.
const MAX_SWEEPS: usize = 100;

/// Eigendecomposition of a Hermitian matrix: `M = U diag(lambda) U^dagger`
/// with real eigenvalues in ascending order and orthonormal eigenvector
/// columns.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    pub unitary: ComplexMatrix,
}

impl HermitianEigen {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }

    /// Reassembles `U diag(f(lambda)) U^dagger`.
    pub fn assemble(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let d = self.dim();
        let mut scaled = ComplexMatrix::zeros(d);
        // scaled = U diag(f(lambda))
        for i in 0..d {
            for j in 0..d {
                scaled.set(i, j, self.unitary.get(i, j) * f(self.eigenvalues[j]));
            }
        }
        &scaled * &self.unitary.adjoint()
    }

    /// Transforms `m` into the eigenbasis: `U^dagger m U`.
    pub fn to_eigenbasis(&self, m: &ComplexMatrix) -> ComplexMatrix {
        &(&self.unitary.adjoint() * m) * &self.unitary
    }

    /// Transforms a matrix expressed in the eigenbasis back: `U m U^dagger`.
    pub fn from_eigenbasis(&self, m: &ComplexMatrix) -> ComplexMatrix {
        &(&self.unitary * m) * &self.unitary.adjoint()
    }
}

/// Plane-rotation parameters that diagonalise the Hermitian 2x2 block
/// [[app, apq], [conj(apq), aqq]]. Returns `None` when the off-diagonal
/// entry is negligible at scale `scale`.
#[inline]
fn rotation_for(app: f64, aqq: f64, apq: Complex64, scale: f64) -> Option<(f64, f64, Complex64)> {
    let beta = apq.norm();
    if beta <= scale * 1e-300 || beta == 0.0 {
        return None;
    }
    let phase = apq / beta;
    let theta = (app - aqq) / (2.0 * beta);
    // smaller root of t^2 - 2 theta t - 1 = 0
    let t = if theta >= 0.0 {
        -1.0 / (theta + (theta * theta + 1.0).sqrt())
    } else {
        1.0 / (-theta + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    Some((c, s, phase))
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let d = a.dim();
    let mut sum = 0.0;
    for i in 0..d {
        for j in 0..d {
            if i != j {
                sum += a.get(i, j).norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Cyclic Jacobi diagonalisation. `accumulate` controls whether the
/// eigenvector matrix is formed (skipping it roughly halves the cost when
/// only eigenvalues are needed).
fn jacobi(mut a: ComplexMatrix, accumulate: bool) -> Result<(Vec<f64>, Option<ComplexMatrix>)> {
    let d = a.dim();
    let norm = a.frobenius_norm();
    let mut v = if accumulate { Some(ComplexMatrix::identity(d)) } else { None };

    if norm == 0.0 || d == 1 {
        let eig = (0..d).map(|i| a.get(i, i).re).collect();
        return Ok((eig, v.or_else(|| Some(ComplexMatrix::identity(d))).filter(|_| accumulate)));
    }

    let threshold = OFF_DIAGONAL_TOL * norm;
    for _sweep in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= threshold {
            let mut pairs: Vec<(f64, usize)> =
                (0..d).map(|i| (a.get(i, i).re, i)).collect();
            pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
            let eigenvalues: Vec<f64> = pairs.iter().map(|p| p.0).collect();
            let unitary = v.map(|u| {
                ComplexMatrix::from_fn(d, |i, j| u.get(i, pairs[j].1))
            });
            return Ok((eigenvalues, unitary));
        }

        for p in 0..d - 1 {
            for q in p + 1..d {
                let apq = a.get(p, q);
                let (c, s, ph) = match rotation_for(a.get(p, p).re, a.get(q, q).re, apq, norm)
                {
                    Some(r) => r,
                    None => continue,
                };
                let beta = apq.norm();
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;

                // columns: A <- A U
                for i in 0..d {
                    let aip = a.get(i, p);
                    let aiq = a.get(i, q);
                    a.set(i, p, aip * c - aiq * (s * ph.conj()));
                    a.set(i, q, aip * (s * ph) + aiq * c);
                }
                // rows: A <- U^dagger A
                for j in 0..d {
                    let apj = a.get(p, j);
                    let aqj = a.get(q, j);
                    a.set(p, j, apj * c - aqj * (s * ph));
                    a.set(q, j, apj * (s * ph.conj()) + aqj * c);
                }
                // exact 2x2 block update kills roundoff on the pivot
                let new_pp = c * c * app - 2.0 * s * c * beta + s * s * aqq;
                let new_qq = s * s * app + 2.0 * s * c * beta + c * c * aqq;
                a.set(p, p, Complex64::new(new_pp, 0.0));
                a.set(q, q, Complex64::new(new_qq, 0.0));
                a.set(p, q, Complex64::new(0.0, 0.0));
                a.set(q, p, Complex64::new(0.0, 0.0));

                if let Some(u) = v.as_mut() {
                    for i in 0..d {
                        let uip = u.get(i, p);
                        let uiq = u.get(i, q);
                        u.set(i, p, uip * c - uiq * (s * ph.conj()));
                        u.set(i, q, uip * (s * ph) + uiq * c);
                    }
                }
            }
        }
    }
    Err(Error::NoConvergence { sweeps: MAX_SWEEPS })
}

fn check_hermitian(m: &ComplexMatrix) -> Result<()> {
    if !m.is_finite() {
        return Err(Error::InvalidState("matrix has non-finite entries".into()));
    }
    let defect = m.hermitian_defect();
    if defect > HERMITICITY_TOL {
        return Err(Error::NotHermitian { defect });
    }
    Ok(())
}

/// Full eigendecomposition of a Hermitian matrix.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<HermitianEigen> {
    check_hermitian(m)?;
    let (eigenvalues, unitary) = jacobi(m.hermitize(), true)?;
    Ok(HermitianEigen { eigenvalues, unitary: unitary.expect("accumulated") })
}

/// Eigenvalues only (ascending); about twice as fast as [`hermitian_eig`].
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    check_hermitian(m)?;
    let (eigenvalues, _) = jacobi(m.hermitize(), false)?;
    Ok(eigenvalues)
}

/// Spectral function of a Hermitian matrix: `U diag(f(lambda)) U^dagger`.
///
/// `domain_min` is the caller-declared lower bound of `f`'s domain;
/// eigenvalues below it by more than 1e-12 raise `DomainViolation`, while
/// eigenvalues within the tolerance band are clamped onto the bound before
/// `f` is applied.
pub fn matrix_function(
    m: &ComplexMatrix,
    f: impl Fn(f64) -> f64,
    domain_min: f64,
) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(m)?;
    const DOMAIN_TOL: f64 = 1e-12;
    for &lambda in &eig.eigenvalues {
        if lambda < domain_min - DOMAIN_TOL {
            return Err(Error::DomainViolation { value: lambda, bound: domain_min });
        }
    }
    Ok(eig.assemble(|x| f(x.max(domain_min))))
}

/// Eigendecomposition of the Gram matrix `F F^dagger` given the factor `F`
/// as a list of columns (each of length `dim`).
///
/// Runs one-sided Jacobi on `F^dagger`, so the eigenvalues are squared
/// column norms of the rotated factor: nonnegative by construction and
/// accurate in a relative sense even when they span many orders of
/// magnitude. This matters for equilibrium states whose smallest
/// eigenvalues sit near the bottom of the f64 range.
pub fn gram_eigen(columns: &[Vec<Complex64>], dim: usize) -> Result<HermitianEigen> {
    let m = columns.len();
    if m < dim {
        return Err(Error::InvalidArgument(format!(
            "gram factor needs at least {dim} columns, got {m}"
        )));
    }
    for col in columns {
        if col.len() != dim {
            return Err(Error::DimensionMismatch { left: dim, right: col.len() });
        }
    }

    // w[j] = j-th column of F^dagger, i.e. conj of the j-th row of F.
    let mut w: Vec<Vec<Complex64>> = (0..dim)
        .map(|j| (0..m).map(|k| columns[k][j].conj()).collect())
        .collect();
    let mut q = ComplexMatrix::identity(dim);

    const REL_TOL: f64 = 1e-15;
    let mut converged = false;
    for _sweep in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..dim - 1 {
            for q_idx in p + 1..dim {
                let mut hpp = 0.0;
                let mut hqq = 0.0;
                let mut hpq = Complex64::new(0.0, 0.0);
                for k in 0..m {
                    hpp += w[p][k].norm_sqr();
                    hqq += w[q_idx][k].norm_sqr();
                    hpq += w[p][k].conj() * w[q_idx][k];
                }
                if hpq.norm() <= REL_TOL * (hpp * hqq).sqrt() {
                    continue;
                }
                let (c, s, ph) = match rotation_for(hpp, hqq, hpq, 1.0) {
                    Some(r) => r,
                    None => continue,
                };
                rotated = true;
                for k in 0..m {
                    let wp = w[p][k];
                    let wq = w[q_idx][k];
                    w[p][k] = wp * c - wq * (s * ph.conj());
                    w[q_idx][k] = wp * (s * ph) + wq * c;
                }
                for i in 0..dim {
                    let qip = q.get(i, p);
                    let qiq = q.get(i, q_idx);
                    q.set(i, p, qip * c - qiq * (s * ph.conj()));
                    q.set(i, q_idx, qip * (s * ph) + qiq * c);
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged && dim > 1 {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let mut pairs: Vec<(f64, usize)> = w
        .iter()
        .enumerate()
        .map(|(j, col)| (col.iter().map(|z| z.norm_sqr()).sum::<f64>(), j))
        .collect();
    pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    let eigenvalues: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let unitary = ComplexMatrix::from_fn(dim, |i, j| q.get(i, pairs[j].1));
    Ok(HermitianEigen { eigenvalues, unitary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_hermitian, random_unitary};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn reconstruction_defect(m: &ComplexMatrix, eig: &HermitianEigen) -> f64 {
        let rebuilt = eig.assemble(|x| x);
        (&rebuilt - m).frobenius_norm() / m.frobenius_norm().max(1.0)
    }

    #[test]
    fn identity_eigenvalues() {
        let eig = hermitian_eig(&ComplexMatrix::identity(3)).unwrap();
        for &l in &eig.eigenvalues {
            assert!((l - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn diagonal_matrix_sorted_ascending() {
        let m = ComplexMatrix::from_real_diagonal(&[2.0, -1.0]);
        let eig = hermitian_eig(&m).unwrap();
        assert!((eig.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((eig.eigenvalues[1] - 2.0).abs() < 1e-14);
        assert!(reconstruction_defect(&m, &eig) < 1e-12);
    }

    #[test]
    fn recovers_known_spectrum_dim8() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let u = random_unitary(8, &mut rng);
        let lambda: Vec<f64> = vec![-3.0, -1.5, -0.25, 0.0, 0.5, 1.0, 2.5, 4.0];
        let m = {
            let d = ComplexMatrix::from_real_diagonal(&lambda);
            &(&u * &d) * &u.adjoint()
        };
        let eig = hermitian_eig(&m.hermitize()).unwrap();
        for (got, want) in eig.eigenvalues.iter().zip(lambda.iter()) {
            assert!((got - want).abs() < 1e-10, "{got} vs {want}");
        }
        assert!(reconstruction_defect(&m.hermitize(), &eig) < 1e-10);
        // orthonormality
        let gram = &eig.unitary.adjoint() * &eig.unitary;
        assert!((&gram - &ComplexMatrix::identity(8)).frobenius_norm() < 1e-10);
    }

    #[test]
    fn eigenvalue_sum_matches_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let m = random_hermitian(6, &mut rng);
            let eig = hermitian_eig(&m).unwrap();
            let sum: f64 = eig.eigenvalues.iter().sum();
            assert!((sum - m.trace().re).abs() < 1e-10);
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_fn(3, |i, j| Complex64::new(i as f64, j as f64));
        assert!(matches!(hermitian_eig(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn matrix_function_identity_and_sqrt() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = random_hermitian(5, &mut rng);
        let same = matrix_function(&m, |x| x, f64::NEG_INFINITY).unwrap();
        assert!((&same - &m).frobenius_norm() < 1e-12 * m.frobenius_norm().max(1.0));

        let d = ComplexMatrix::from_real_diagonal(&[4.0, 9.0]);
        let s = matrix_function(&d, f64::sqrt, 0.0).unwrap();
        assert!((s.get(0, 0).re - 2.0).abs() < 1e-14);
        assert!((s.get(1, 1).re - 3.0).abs() < 1e-14);
    }

    #[test]
    fn matrix_function_square_matches_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let m = random_hermitian(6, &mut rng);
        let sq = matrix_function(&m, |x| x * x, f64::NEG_INFINITY).unwrap();
        assert!((&sq - &(&m * &m)).frobenius_norm() < 1e-10);
    }

    #[test]
    fn sqrt_squares_back_for_psd() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = random_hermitian(6, &mut rng);
        let psd = &(&g * &g) + &ComplexMatrix::identity(6).scaled_re(0.1);
        let root = matrix_function(&psd, f64::sqrt, 0.0).unwrap();
        assert!((&(&root * &root) - &psd).frobenius_norm() < 1e-10 * psd.frobenius_norm());
    }

    #[test]
    fn matrix_function_domain_violation() {
        let m = ComplexMatrix::from_real_diagonal(&[1.0, 0.0]);
        let r = matrix_function(&m, f64::ln, 1e-6);
        assert!(matches!(r, Err(Error::DomainViolation { .. })));
    }

    #[test]
    fn gram_eigen_matches_direct_eig() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let dim = 5;
        let cols: Vec<Vec<Complex64>> = (0..9)
            .map(|_| {
                (0..dim)
                    .map(|_| {
                        let (a, b) = crate::random::gaussian_pair(&mut rng);
                        Complex64::new(a, b)
                    })
                    .collect()
            })
            .collect();
        let mut m = ComplexMatrix::zeros(dim);
        for col in &cols {
            for i in 0..dim {
                for j in 0..dim {
                    let v = m.get(i, j) + col[i] * col[j].conj();
                    m.set(i, j, v);
                }
            }
        }
        let ge = gram_eigen(&cols, dim).unwrap();
        let direct = hermitian_eig(&m.hermitize()).unwrap();
        for (a, b) in ge.eigenvalues.iter().zip(direct.eigenvalues.iter()) {
            assert!((a - b).abs() < 1e-9 * m.frobenius_norm(), "{a} vs {b}");
        }
        let rebuilt = ge.assemble(|x| x);
        assert!((&rebuilt - &m).frobenius_norm() < 1e-9 * m.frobenius_norm());
        assert!(ge.eigenvalues.iter().all(|&l| l >= 0.0));
    }
}
