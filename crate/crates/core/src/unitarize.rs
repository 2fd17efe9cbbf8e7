//! Group averaging of Hermitian forms: invariant inner products, the unitary
//! representation they induce, and the space of all invariant forms.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::haar::HaarRule;
use crate::linalg::{cholesky_hermitian, hermitian_eigenvalues, svd, ComplexMatrix};
use crate::rep::Representation;
use crate::tolerance;
use num_complex::Complex64;

/// A Hermitian matrix `H` viewed as the form `(u, v) -> v* H u`.
#[derive(Clone, Debug, Serialize)]
pub struct HermitianForm {
    pub gram: ComplexMatrix,
    pub min_eigenvalue: f64,
    pub positive_definite: bool,
}

impl HermitianForm {
    /// Wraps a matrix after checking Hermiticity to 1e-12 (relative to its
    /// size); the stored gram is the exact Hermitian part.
    pub fn new(gram: ComplexMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::NotSquare {
                rows: gram.rows(),
                cols: gram.cols(),
            });
        }
        let defect = gram.hermiticity_defect();
        if defect > tolerance::KERNEL * gram.max_abs().max(1.0) {
            return Err(Error::NotHermitian { defect });
        }
        let gram = gram.hermitian_part();
        let spectrum = hermitian_eigenvalues(&gram)?;
        let min_eigenvalue = spectrum.eigenvalues.first().copied().unwrap_or(0.0);
        let largest = spectrum.eigenvalues.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        Ok(Self {
            gram,
            min_eigenvalue,
            positive_definite: min_eigenvalue > tolerance::DEFINITENESS * largest,
        })
    }

    /// Max over nodes of `|ρ(x)* H ρ(x) − H|`.
    pub fn invariance_residual(&self, rep: &Representation, rule: &HaarRule) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for x in rule.nodes() {
            let r = rep.evaluate(x)?;
            let moved = &(&r.adjoint() * &self.gram) * &r;
            worst = worst.max(moved.max_abs_diff(&self.gram));
        }
        Ok(worst)
    }
}

/// The averaged form `H = ∫ ρ(x)* ρ(x) dx` together with its invariance check.
#[derive(Clone, Debug, Serialize)]
pub struct AveragedForm {
    pub form: HermitianForm,
    pub invariance_residual: f64,
}

pub fn averaged_form(rep: &Representation, rule: &HaarRule) -> Result<AveragedForm> {
    rep.check_rule(rule)?;
    let h = rule.integrate_matrix(|x| {
        let r = rep.evaluate(x)?;
        Ok(&r.adjoint() * &r)
    })?;
    let form = HermitianForm::new(h)?;
    if !form.positive_definite {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: form.min_eigenvalue,
        });
    }
    let invariance_residual = form.invariance_residual(rep, rule)?;
    Ok(AveragedForm {
        form,
        invariance_residual,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct UnitarizationResult {
    /// Upper-triangular change of basis with `H = A* A`.
    pub a: ComplexMatrix,
    #[serde(skip)]
    pub unitary_rep: Representation,
    pub form: HermitianForm,
    pub invariance_residual: f64,
    pub unitarity_residual: f64,
}

/// Conjugates `rep` by the Cholesky factor of its averaged form, giving an
/// equivalent representation that is unitary on the rule's nodes.
pub fn unitarize(rep: &Representation, rule: &HaarRule) -> Result<UnitarizationResult> {
    let averaged = averaged_form(rep, rule)?;
    let a = cholesky_hermitian(&averaged.form.gram)?;
    let unitary_rep = rep.conjugate(&a)?;
    let unitarity_residual = unitary_rep.unitarity_audit(rule)?;
    Ok(UnitarizationResult {
        a,
        unitary_rep,
        form: averaged.form,
        invariance_residual: averaged.invariance_residual,
        unitarity_residual,
    })
}

/// Real-orthonormal basis of the `r x r` Hermitian matrices under
/// `Re tr(X* Y)`: the diagonal units, then `(E_kl + E_lk)/√2` and
/// `i(E_kl − E_lk)/√2` for `k < l`.
pub fn hermitian_basis(r: usize) -> Vec<ComplexMatrix> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut basis: Vec<ComplexMatrix> = (0..r).map(|k| ComplexMatrix::unit(r, k, k)).collect();
    for k in 0..r {
        for l in k + 1..r {
            let sym = &ComplexMatrix::unit(r, k, l) + &ComplexMatrix::unit(r, l, k);
            let anti = &ComplexMatrix::unit(r, k, l) - &ComplexMatrix::unit(r, l, k);
            basis.push(sym.scale_real(s));
            basis.push(anti.scale(Complex64::new(0.0, s)));
        }
    }
    basis
}

/// Linear map `vec(X) -> vec(∫ L(x) X R(x) dx)` on row-major vectorizations.
pub(crate) fn averaged_sandwich(
    rule: &HaarRule,
    sides: impl Fn(&crate::group::GroupElement) -> Result<(ComplexMatrix, ComplexMatrix)>,
) -> Result<ComplexMatrix> {
    rule.integrate_matrix(|x| {
        let (l, r) = sides(x)?;
        Ok(ComplexMatrix::kron(&l, &r.transpose()))
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantFormSpace {
    /// Real dimension of the space of invariant Hermitian forms.
    pub dimension: usize,
    pub basis: Vec<ComplexMatrix>,
    /// Largest node residual `|ρ(x)* H ρ(x) − H|` over the basis.
    pub max_residual: f64,
    pub singular_values: Vec<f64>,
}

/// Fixed space of `H -> ∫ ρ(x)* H ρ(x) dx` on Hermitian matrices.
pub fn invariant_form_space(rep: &Representation, rule: &HaarRule) -> Result<InvariantFormSpace> {
    rep.check_rule(rule)?;
    let r = rep.degree();
    let op = averaged_sandwich(rule, |x| {
        let m = rep.evaluate(x)?;
        Ok((m.adjoint(), m))
    })?;
    let basis = hermitian_basis(r);
    let vecs: Vec<Vec<Complex64>> = basis.iter().map(ComplexMatrix::flatten).collect();
    let images: Vec<Vec<Complex64>> = vecs.iter().map(|v| op.mul_vec(v)).collect();
    let n = basis.len();
    // Real matrix of (averaging − identity) in the Hermitian basis.
    let system = ComplexMatrix::from_fn(n, n, |i, j| {
        let coord: f64 = vecs[i].iter().zip(&images[j]).map(|(a, b)| (a.conj() * b).re).sum();
        Complex64::new(coord - if i == j { 1.0 } else { 0.0 }, 0.0)
    });
    let decomposition = svd(&system);
    // Singular values of (averaging − identity) are O(1) away from the fixed
    // space, so the threshold never drops below RANK in absolute terms.
    let top = decomposition.singular_values.first().copied().unwrap_or(0.0).max(1.0);
    let mut forms = Vec::new();
    for (k, &sigma) in decomposition.singular_values.iter().enumerate() {
        if sigma > tolerance::RANK * top {
            continue;
        }
        let coeffs: Vec<f64> = decomposition.right.column(k).iter().map(|z| z.re).collect();
        let mut h = ComplexMatrix::zeros(r, r);
        for (c, b) in coeffs.iter().zip(&basis) {
            h = &h + &b.scale_real(*c);
        }
        // Orient deterministically: positive trace, else positive leading entry.
        let tr = h.trace().re;
        let lead = coeffs.iter().copied().find(|c| c.abs() > 1e-9).unwrap_or(1.0);
        let sign = if tr.abs() > 1e-9 { tr.signum() } else { lead.signum() };
        let h = h.scale_real(sign / h.frobenius_norm());
        forms.push(h.hermitian_part());
    }
    let mut max_residual: f64 = 0.0;
    for h in &forms {
        let form = HermitianForm {
            gram: h.clone(),
            min_eigenvalue: 0.0,
            positive_definite: false,
        };
        max_residual = max_residual.max(form.invariance_residual(rep, rule)?);
    }
    Ok(InvariantFormSpace {
        dimension: forms.len(),
        basis: forms,
        max_residual,
        singular_values: decomposition.singular_values,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecialnessReport {
    pub d: usize,
    pub special: bool,
    pub form_residual: f64,
    pub unitarization: UnitarizationResult,
}

/// `special` holds exactly when the invariant Hermitian forms are the
/// positive multiples of a single form (`d = 1`).
pub fn specialness_report(rep: &Representation, rule: &HaarRule) -> Result<SpecialnessReport> {
    let unitarization = unitarize(rep, rule)?;
    let space = invariant_form_space(rep, rule)?;
    Ok(SpecialnessReport {
        d: space.dimension,
        special: space.dimension == 1,
        form_residual: space.max_residual,
        unitarization,
    })
}
