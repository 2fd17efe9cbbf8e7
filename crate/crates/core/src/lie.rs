//! Real Lie algebras given by structure constants, their trace form
//! `<u, v> = -tr(ad_u ad_v)`, and the matrix realization of su(2).

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, solve_nullspace, ComplexMatrix, RealMatrix};
use crate::tolerance;

/// Commutation check applied to candidate center vectors.
const CENTER_COMMUTATION: f64 = 1e-9;

/// Finite-dimensional real Lie algebra: `[e_a, e_b] = sum_k c[a][b][k] e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebraSpec {
    dim: usize,
    constants: Vec<f64>,
    labels: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    CompactSemisimple,
    CompactWithCenter,
    NotCompactType,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::CompactSemisimple => "compact_semisimple",
            Self::CompactWithCenter => "compact_with_center",
            Self::NotCompactType => "not_compact_type",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceFormReport {
    pub gram: RealMatrix,
    pub eigenvalues: Vec<f64>,
    pub classification: Classification,
    pub center_basis: Vec<Vec<f64>>,
    pub invariance_residual: f64,
    pub jacobi_residual: f64,
}

impl LieAlgebraSpec {
    /// Builds an algebra from a dense `dim³` array indexed `[a][b][k]`.
    /// Antisymmetry must hold exactly and the Jacobi identity to
    /// [`tolerance::STRUCTURAL`] (relative to the squared constant scale).
    pub fn from_dense(dim: usize, constants: Vec<f64>, labels: Vec<String>) -> Result<Self> {
        if constants.len() != dim * dim * dim {
            return Err(Error::InvalidAlgebra(format!(
                "expected {} structure constants, got {}",
                dim * dim * dim,
                constants.len()
            )));
        }
        if !labels.is_empty() && labels.len() != dim {
            return Err(Error::InvalidAlgebra(format!(
                "{} labels for dimension {dim}",
                labels.len()
            )));
        }
        if constants.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidAlgebra("non-finite structure constant".into()));
        }
        let alg = Self {
            dim,
            constants,
            labels,
        };
        for a in 0..dim {
            for b in 0..dim {
                for k in 0..dim {
                    if alg.c(a, b, k) != -alg.c(b, a, k) {
                        return Err(Error::InvalidAlgebra(format!(
                            "antisymmetry fails for [e{a}, e{b}] component {k}"
                        )));
                    }
                }
            }
        }
        let jac = alg.jacobi_residual();
        let scale = alg.constants.iter().fold(1.0f64, |m, c| m.max(c.abs()));
        if jac > tolerance::STRUCTURAL * scale * scale {
            return Err(Error::InvalidAlgebra(format!(
                "Jacobi identity residual {jac:.3e} exceeds tolerance"
            )));
        }
        Ok(alg)
    }

    /// Builds an algebra from nonzero constants `(a, b, k, value)` with `a < b`;
    /// the antisymmetric partner `[e_b, e_a]` is filled in.
    pub fn from_sparse(dim: usize, entries: &[(usize, usize, usize, f64)], labels: Vec<String>) -> Result<Self> {
        let mut constants = vec![0.0; dim * dim * dim];
        for (n, &(a, b, k, v)) in entries.iter().enumerate() {
            if a >= dim || b >= dim || k >= dim {
                return Err(Error::InvalidAlgebra(format!(
                    "entry {n}: index out of range for dimension {dim}"
                )));
            }
            if a >= b {
                return Err(Error::InvalidAlgebra(format!(
                    "entry {n}: indices must satisfy a < b, got ({a}, {b})"
                )));
            }
            let slot = (a * dim + b) * dim + k;
            if constants[slot] != 0.0 {
                return Err(Error::InvalidAlgebra(format!(
                    "entry {n}: duplicate constant for [e{a}, e{b}] component {k}"
                )));
            }
            constants[slot] = v;
            constants[(b * dim + a) * dim + k] = -v;
        }
        Self::from_dense(dim, constants, labels)
    }

    /// su(2) in the orthonormal basis (Ĥ, Ê, F̂) of [`su2_standard`].
    pub fn su2() -> Self {
        su2_standard()
            .structure_constants()
            .expect("su(2) basis closes under the bracket")
    }

    /// sl(2, R) in the basis (h, e, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h.
    pub fn sl2_real() -> Self {
        Self::from_sparse(
            3,
            &[(0, 1, 1, 2.0), (0, 2, 2, -2.0), (1, 2, 0, 1.0)],
            vec!["h".into(), "e".into(), "f".into()],
        )
        .expect("sl(2,R) constants are valid")
    }

    pub fn abelian(dim: usize) -> Self {
        Self {
            dim,
            constants: vec![0.0; dim * dim * dim],
            labels: (0..dim).map(|i| format!("x{i}")).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Structure constant `c[a][b][k]`.
    pub fn c(&self, a: usize, b: usize, k: usize) -> f64 {
        self.constants[(a * self.dim + b) * self.dim + k]
    }

    fn check_len(&self, v: &[f64]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(())
    }

    pub fn basis_vector(&self, i: usize) -> Vec<f64> {
        let mut v = vec![0.0; self.dim];
        v[i] = 1.0;
        v
    }

    pub fn bracket(&self, u: &[f64], v: &[f64]) -> Result<Vec<f64>> {
        self.check_len(u)?;
        self.check_len(v)?;
        let n = self.dim;
        let mut out = vec![0.0; n];
        for a in 0..n {
            if u[a] == 0.0 {
                continue;
            }
            for b in 0..n {
                if v[b] == 0.0 {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o += u[a] * v[b] * self.c(a, b, k);
                }
            }
        }
        Ok(out)
    }

    /// Matrix of the inner derivation `x -> [u, x]`; column k holds `[u, e_k]`.
    pub fn adjoint_matrix(&self, u: &[f64]) -> Result<RealMatrix> {
        self.check_len(u)?;
        let n = self.dim;
        Ok(RealMatrix::from_fn(n, n, |i, k| {
            (0..n).map(|a| u[a] * self.c(a, k, i)).sum()
        }))
    }

    /// Largest `|[e_a,[e_b,e_c]] + [e_b,[e_c,e_a]] + [e_c,[e_a,e_b]]|` over basis triples.
    pub fn jacobi_residual(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for k in 0..n {
                        let mut s = 0.0;
                        for m in 0..n {
                            s += self.c(b, c, m) * self.c(a, m, k)
                                + self.c(c, a, m) * self.c(b, m, k)
                                + self.c(a, b, m) * self.c(c, m, k);
                        }
                        worst = worst.max(s.abs());
                    }
                }
            }
        }
        worst
    }

    /// Gram matrix of the trace form, spectrum, compactness verdict and center.
    pub fn trace_form(&self) -> Result<TraceFormReport> {
        let n = self.dim;
        let ads: Vec<RealMatrix> = (0..n)
            .map(|a| self.adjoint_matrix(&self.basis_vector(a)))
            .collect::<Result<_>>()?;
        let gram = RealMatrix::from_fn(n, n, |a, b| -(&ads[a] * &ads[b]).trace());

        let mut invariance_residual: f64 = 0.0;
        for x in 0..n {
            for u in 0..n {
                for v in 0..n {
                    let lhs: f64 = (0..n).map(|m| self.c(x, u, m) * gram[(m, v)]).sum();
                    let rhs: f64 = (0..n).map(|m| self.c(x, v, m) * gram[(u, m)]).sum();
                    invariance_residual = invariance_residual.max((lhs + rhs).abs());
                }
            }
        }

        let eig = hermitian_eigen(&gram.to_complex())?;
        let scale = eig.eigenvalues.iter().fold(1.0f64, |m, x| m.max(x.abs()));
        let cutoff = tolerance::DEFINITENESS * scale;
        let min = eig.eigenvalues.first().copied().unwrap_or(1.0);

        let (classification, center_basis) = if n == 0 || min > cutoff {
            (Classification::CompactSemisimple, Vec::new())
        } else if min < -cutoff {
            (Classification::NotCompactType, self.center()?)
        } else {
            let candidates: Vec<Vec<f64>> = eig
                .eigenvalues
                .iter()
                .enumerate()
                .filter(|(_, l)| l.abs() <= cutoff)
                .map(|(k, _)| eig.vectors.column(k).iter().map(|z| z.re).collect())
                .collect();
            if self.all_central(&candidates)? {
                (Classification::CompactWithCenter, candidates)
            } else {
                // Degenerate trace form whose radical is not central (e.g. nilpotent).
                (Classification::NotCompactType, self.center()?)
            }
        };

        Ok(TraceFormReport {
            gram,
            eigenvalues: eig.eigenvalues,
            classification,
            center_basis,
            invariance_residual,
            jacobi_residual: self.jacobi_residual(),
        })
    }

    fn all_central(&self, vectors: &[Vec<f64>]) -> Result<bool> {
        for v in vectors {
            for k in 0..self.dim {
                let b = self.bracket(v, &self.basis_vector(k))?;
                if b.iter().any(|x| x.abs() > CENTER_COMMUTATION) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Center computed directly as the kernel of `v -> ([v, e_k])_k`.
    pub fn center(&self) -> Result<Vec<Vec<f64>>> {
        let n = self.dim;
        let system = ComplexMatrix::from_fn(n * n, n, |row, a| {
            Complex64::new(self.c(a, row / n, row % n), 0.0)
        });
        let basis = solve_nullspace(&system, tolerance::STRUCTURAL);
        Ok(basis
            .into_iter()
            .map(|v| v.iter().map(|z| z.re).collect())
            .collect())
    }
}

/// A Lie algebra realized by complex matrices, with the form `-tr(XY)`.
#[derive(Clone, Debug)]
pub struct MatrixLieAlgebra {
    pub basis: Vec<ComplexMatrix>,
    pub labels: Vec<String>,
    pub gram_defining: RealMatrix,
}

impl MatrixLieAlgebra {
    pub fn new(basis: Vec<ComplexMatrix>, labels: Vec<String>) -> Result<Self> {
        let n = basis.first().map_or(0, ComplexMatrix::rows);
        if basis.iter().any(|b| b.shape() != (n, n)) {
            return Err(Error::InvalidAlgebra("basis matrices must share one square shape".into()));
        }
        let gram_defining = RealMatrix::from_fn(basis.len(), basis.len(), |a, b| {
            defining_form(&basis[a], &basis[b]).re
        });
        Ok(Self {
            basis,
            labels,
            gram_defining,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `x` in the basis (least squares under `Re tr(A* B)`)
    /// together with the reconstruction residual.
    pub fn coordinates(&self, x: &ComplexMatrix) -> (Vec<f64>, f64) {
        let n = self.dim();
        let inner = |a: &ComplexMatrix, b: &ComplexMatrix| (&a.adjoint() * b).trace().re;
        let gram = RealMatrix::from_fn(n, n, |a, b| inner(&self.basis[a], &self.basis[b]));
        let rhs: Vec<f64> = self.basis.iter().map(|b| inner(b, x)).collect();
        let coords = solve_real_spd(&gram, &rhs);
        let mut rebuilt = ComplexMatrix::zeros(x.rows(), x.cols());
        for (b, &c) in self.basis.iter().zip(&coords) {
            rebuilt = &rebuilt + &b.scale_real(c);
        }
        (coords, rebuilt.max_abs_diff(x))
    }

    /// Structure constants read off from matrix commutators; fails if the
    /// span is not closed under the bracket.
    pub fn structure_constants(&self) -> Result<LieAlgebraSpec> {
        let n = self.dim();
        let mut constants = vec![0.0; n * n * n];
        for a in 0..n {
            for b in 0..n {
                let comm = &(&self.basis[a] * &self.basis[b]) - &(&self.basis[b] * &self.basis[a]);
                let (coords, residual) = self.coordinates(&comm);
                if residual > tolerance::STRUCTURAL {
                    return Err(Error::InvalidAlgebra(format!(
                        "bracket of basis elements {a}, {b} leaves the span (residual {residual:.3e})"
                    )));
                }
                for (k, c) in coords.into_iter().enumerate() {
                    constants[(a * n + b) * n + k] = c;
                }
            }
        }
        // Commutators are exactly antisymmetric but their coordinates are not; average.
        for a in 0..n {
            for b in a..n {
                for k in 0..n {
                    let i = (a * n + b) * n + k;
                    let j = (b * n + a) * n + k;
                    let avg = 0.5 * (constants[i] - constants[j]);
                    constants[i] = avg;
                    constants[j] = -avg;
                }
            }
        }
        LieAlgebraSpec::from_dense(n, constants, self.labels.clone())
    }
}

/// `-tr(XY)`.
pub fn defining_form(x: &ComplexMatrix, y: &ComplexMatrix) -> Complex64 {
    -(x * y).trace()
}

fn solve_real_spd(a: &RealMatrix, b: &[f64]) -> Vec<f64> {
    // Gaussian elimination; Gram matrices here are tiny and well conditioned.
    let n = b.len();
    let mut m = a.clone();
    let mut x = b.to_vec();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| m[(i, k)].abs().total_cmp(&m[(j, k)].abs()))
            .unwrap_or(k);
        for j in 0..n {
            let t = m[(k, j)];
            m[(k, j)] = m[(p, j)];
            m[(p, j)] = t;
        }
        x.swap(k, p);
        for i in k + 1..n {
            let f = m[(i, k)] / m[(k, k)];
            for j in k..n {
                m[(i, j)] -= f * m[(k, j)];
            }
            x[i] -= f * x[k];
        }
    }
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| m[(i, j)] * x[j]).sum();
        x[i] = (x[i] - s) / m[(i, i)];
    }
    x
}

/// su(2) with the traceless anti-Hermitian orthonormal basis
/// Ĥ = diag(i, -i)/√2, Ê = [[0, 1], [-1, 0]]/√2, F̂ = [[0, i], [i, 0]]/√2.
pub fn su2_standard() -> MatrixLieAlgebra {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let z = Complex64::new(0.0, 0.0);
    let re = |x: f64| Complex64::new(x, 0.0);
    let im = |x: f64| Complex64::new(0.0, x);
    let h = ComplexMatrix::from_rows(&[vec![im(r), z], vec![z, im(-r)]]).unwrap();
    let e = ComplexMatrix::from_rows(&[vec![z, re(r)], vec![re(-r), z]]).unwrap();
    let f = ComplexMatrix::from_rows(&[vec![z, im(r)], vec![im(r), z]]).unwrap();
    MatrixLieAlgebra::new(vec![h, e, f], vec!["H".into(), "E".into(), "F".into()])
        .expect("fixed 2x2 basis")
}

/// The isometry R³ -> su(2), `(x, y, z) -> x Ê + y Ĥ + z F̂`.
pub fn theta_isometry(v: [f64; 3]) -> ComplexMatrix {
    let alg = su2_standard();
    let (h, e, f) = (&alg.basis[0], &alg.basis[1], &alg.basis[2]);
    &(&e.scale_real(v[0]) + &h.scale_real(v[1])) + &f.scale_real(v[2])
}
