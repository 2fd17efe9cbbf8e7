//! Hermitian eigensolver, Cholesky, SVD-based null space and inversion.
//!
//! Everything here is a cyclic Jacobi method or a textbook elimination; the
//! matrices in this crate are small (degree ≤ 64, Kronecker systems ≤ ~4000 rows).

use num_complex::Complex64;
use serde::Serialize;

use super::ComplexMatrix;
use crate::error::{Error, Result};
use crate::tolerance;

const MAX_SWEEPS: usize = 80;

/// Sorted spectrum of a Hermitian matrix plus the reconstruction defect.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HermitianSpectrum {
    pub eigenvalues: Vec<f64>,
    pub residual: f64,
}

/// Eigenvalues with orthonormal eigenvectors (columns of `vectors`, same order).
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    pub vectors: ComplexMatrix,
    pub residual: f64,
}

/// Singular value decomposition `M V = U Σ` with singular values descending.
#[derive(Clone, Debug)]
pub struct Svd {
    pub singular_values: Vec<f64>,
    /// `U Σ`: mutually orthogonal columns whose norms are the singular values.
    pub scaled_left: ComplexMatrix,
    pub right: ComplexMatrix,
}

/// Jacobi rotation `J` (acting on columns p, q) diagonalizing the Hermitian
/// 2x2 block `[[app, apq], [conj(apq), aqq]]`. Returned as `[J_pp, J_pq, J_qp, J_qq]`.
fn jacobi_rotation(app: f64, aqq: f64, apq: Complex64) -> [Complex64; 4] {
    let g = apq.norm();
    let phase = apq / g;
    let theta = (aqq - app) / (2.0 * g);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let pc = phase.conj();
    [
        Complex64::new(c, 0.0),
        Complex64::new(s, 0.0),
        pc * (-s),
        pc * c,
    ]
}

fn rotate_columns(m: &mut ComplexMatrix, p: usize, q: usize, j: &[Complex64; 4]) {
    for k in 0..m.rows() {
        let (a, b) = (m[(k, p)], m[(k, q)]);
        m[(k, p)] = a * j[0] + b * j[2];
        m[(k, q)] = a * j[1] + b * j[3];
    }
}

fn rotate_rows_adjoint(m: &mut ComplexMatrix, p: usize, q: usize, j: &[Complex64; 4]) {
    for k in 0..m.cols() {
        let (a, b) = (m[(p, k)], m[(q, k)]);
        m[(p, k)] = j[0].conj() * a + j[2].conj() * b;
        m[(q, k)] = j[1].conj() * a + j[3].conj() * b;
    }
}

fn check_hermitian(h: &ComplexMatrix) -> Result<()> {
    if !h.is_square() {
        return Err(Error::NotSquare {
            rows: h.rows(),
            cols: h.cols(),
        });
    }
    let defect = h.hermiticity_defect();
    if defect > tolerance::STRUCTURAL * h.max_abs().max(1.0) {
        return Err(Error::NotHermitian { defect });
    }
    Ok(())
}

/// Full Hermitian eigendecomposition by cyclic complex Jacobi rotations.
pub fn hermitian_eigen(h: &ComplexMatrix) -> Result<HermitianEigen> {
    check_hermitian(h)?;
    let n = h.rows();
    let mut a = h.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();

    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= 1e-17 * scale || scale == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq.norm() <= 1e-300 || apq.norm() <= 1e-19 * scale {
                    continue;
                }
                let j = jacobi_rotation(a[(p, p)].re, a[(q, q)].re, apq);
                rotate_columns(&mut a, p, q, &j);
                rotate_rows_adjoint(&mut a, p, q, &j);
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
                rotate_columns(&mut v, p, q, &j);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, k| v[(i, order[k])]);

    let lambda = ComplexMatrix::from_diag(
        &eigenvalues.iter().map(|&x| Complex64::new(x, 0.0)).collect::<Vec<_>>(),
    );
    let residual = (h * &vectors).max_abs_diff(&(&vectors * &lambda));
    Ok(HermitianEigen {
        eigenvalues,
        vectors,
        residual,
    })
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<HermitianSpectrum> {
    let e = hermitian_eigen(h)?;
    Ok(HermitianSpectrum {
        eigenvalues: e.eigenvalues,
        residual: e.residual,
    })
}

/// Upper-triangular `A` with positive real diagonal and `H = A* A`.
pub fn cholesky_hermitian(h: &ComplexMatrix) -> Result<ComplexMatrix> {
    let spectrum = hermitian_eigenvalues(h)?;
    let largest = spectrum
        .eigenvalues
        .iter()
        .fold(0.0f64, |m, x| m.max(x.abs()));
    let smallest = spectrum.eigenvalues.first().copied().unwrap_or(1.0);
    if smallest <= tolerance::DEFINITENESS * largest.max(f64::MIN_POSITIVE) {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: smallest,
        });
    }

    let n = h.rows();
    let mut a = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        let mut d = h[(j, j)].re;
        for k in 0..j {
            d -= a[(k, j)].norm_sqr();
        }
        if d <= 0.0 {
            return Err(Error::NotPositiveDefinite { min_eigenvalue: d });
        }
        let d = d.sqrt();
        a[(j, j)] = Complex64::new(d, 0.0);
        for i in j + 1..n {
            let mut s = h[(j, i)];
            for k in 0..j {
                s -= a[(k, j)].conj() * a[(k, i)];
            }
            a[(j, i)] = s / d;
        }
    }
    Ok(a)
}

/// One-sided (Hestenes) Jacobi SVD of an arbitrary `m x n` matrix.
pub fn svd(m: &ComplexMatrix) -> Svd {
    let n = m.cols();
    let rows = m.rows();
    let mut w = m.clone();
    let mut v = ComplexMatrix::identity(n);

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = Complex64::new(0.0, 0.0);
                for k in 0..rows {
                    let (a, b) = (w[(k, p)], w[(k, q)]);
                    alpha += a.norm_sqr();
                    beta += b.norm_sqr();
                    gamma += a.conj() * b;
                }
                if gamma.norm() <= 1e-300 || gamma.norm() <= 4.0 * f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let j = jacobi_rotation(alpha, beta, gamma);
                rotate_columns(&mut w, p, q, &j);
                rotate_columns(&mut v, p, q, &j);
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<f64> = (0..n)
        .map(|j| (0..rows).map(|i| w[(i, j)].norm_sqr()).sum::<f64>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
    Svd {
        singular_values: order.iter().map(|&i| norms[i]).collect(),
        scaled_left: ComplexMatrix::from_fn(rows, n, |i, k| w[(i, order[k])]),
        right: ComplexMatrix::from_fn(n, n, |i, k| v[(i, order[k])]),
    }
}

/// Orthonormal basis of `{v : |Mv| <= tol * |M| * |v|}` where `|M|` is the
/// spectral norm. Returns an empty list when the kernel is trivial.
pub fn solve_nullspace(m: &ComplexMatrix, tol: f64) -> Vec<Vec<Complex64>> {
    let s = svd(m);
    let top = s.singular_values.first().copied().unwrap_or(0.0);
    s.singular_values
        .iter()
        .enumerate()
        .filter(|(_, &sigma)| sigma <= tol * top)
        .map(|(k, _)| s.right.column(k))
        .collect()
}

/// Orthonormal basis of the column space, keeping directions whose singular
/// value exceeds `rel_tol` times the largest one.
pub fn range_basis(m: &ComplexMatrix, rel_tol: f64) -> Vec<Vec<Complex64>> {
    let s = svd(m);
    let top = s.singular_values.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return Vec::new();
    }
    s.singular_values
        .iter()
        .enumerate()
        .filter(|(_, &sigma)| sigma > rel_tol * top)
        .map(|(k, &sigma)| {
            s.scaled_left
                .column(k)
                .into_iter()
                .map(|z| z / sigma)
                .collect()
        })
        .collect()
}

fn one_norm(m: &ComplexMatrix) -> f64 {
    (0..m.cols())
        .map(|j| (0..m.rows()).map(|i| m[(i, j)].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Inverse by LU with partial pivoting; `Singular` when a pivot vanishes or
/// the 1-norm condition number exceeds [`tolerance::MAX_CONDITION`].
pub fn invert(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut lu = m.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    for k in 0..n {
        let pivot = (k..n)
            .max_by(|&a, &b| lu[(a, k)].norm().total_cmp(&lu[(b, k)].norm()))
            .unwrap_or(k);
        if lu[(pivot, k)].norm() == 0.0 {
            return Err(Error::Singular);
        }
        if pivot != k {
            perm.swap(k, pivot);
            for j in 0..n {
                let t = lu[(k, j)];
                lu[(k, j)] = lu[(pivot, j)];
                lu[(pivot, j)] = t;
            }
        }
        for i in k + 1..n {
            let f = lu[(i, k)] / lu[(k, k)];
            lu[(i, k)] = f;
            for j in k + 1..n {
                let u = lu[(k, j)];
                lu[(i, j)] -= f * u;
            }
        }
    }

    let mut inv = ComplexMatrix::zeros(n, n);
    for col in 0..n {
        // P M = L U, so solve L U x = P e_col.
        let mut x: Vec<Complex64> = perm
            .iter()
            .map(|&p| Complex64::new(if p == col { 1.0 } else { 0.0 }, 0.0))
            .collect();
        for i in 0..n {
            for k in 0..i {
                let l = lu[(i, k)];
                let xk = x[k];
                x[i] -= l * xk;
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                let u = lu[(i, k)];
                let xk = x[k];
                x[i] -= u * xk;
            }
            x[i] /= lu[(i, i)];
        }
        inv.set_column(col, &x);
    }
    if !inv.is_finite() || one_norm(m) * one_norm(&inv) > tolerance::MAX_CONDITION {
        return Err(Error::Singular);
    }
    Ok(inv)
}
