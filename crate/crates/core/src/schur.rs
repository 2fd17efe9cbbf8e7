//! Intertwiners, commutants, irreducibility, block decomposition and the
//! orthogonality relations for characters and matrix elements.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::haar::HaarRule;
use crate::linalg::{hermitian_eigen, invert, range_basis, ComplexMatrix};
use crate::rep::{Character, RepBody, Representation};
use crate::tolerance;
use crate::unitarize::{averaged_sandwich, unitarize};

/// Representations whose unitarity defect on the rule exceeds this are
/// unitarized before commutant-based analysis.
const UNITARY_ENOUGH: f64 = tolerance::HOMOMORPHISM;

#[derive(Clone, Debug, Serialize)]
pub struct Intertwiner {
    pub t: ComplexMatrix,
    /// Max over nodes of `|Φ(x) T − T Ψ(x)|`.
    pub residual: f64,
}

/// `T = ∫ Φ(x) A Ψ(x⁻¹) dx`.
pub fn averaged_intertwiner(
    phi: &Representation,
    psi: &Representation,
    a: &ComplexMatrix,
    rule: &HaarRule,
) -> Result<Intertwiner> {
    if phi.group() != psi.group() {
        return Err(Error::GroupMismatch);
    }
    phi.check_rule(rule)?;
    if a.shape() != (phi.degree(), psi.degree()) {
        return Err(Error::ShapeMismatch {
            expected: (phi.degree(), psi.degree()),
            found: a.shape(),
        });
    }
    let group = phi.group();
    let t = rule.integrate_matrix(|x| {
        let back = psi.evaluate(&group.inverse(x)?)?;
        Ok(&(&phi.evaluate(x)? * a) * &back)
    })?;
    let residual = intertwining_residual(phi, psi, &t, rule)?;
    Ok(Intertwiner { t, residual })
}

/// Max over nodes of `|Φ(x) T − T Ψ(x)|`.
pub fn intertwining_residual(
    phi: &Representation,
    psi: &Representation,
    t: &ComplexMatrix,
    rule: &HaarRule,
) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for x in rule.nodes() {
        let lhs = &phi.evaluate(x)? * t;
        let rhs = t * &psi.evaluate(x)?;
        worst = worst.max(lhs.max_abs_diff(&rhs));
    }
    Ok(worst)
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutantReport {
    pub dimension: usize,
    /// Frobenius-orthonormal basis of the commuting matrices.
    pub basis: Vec<ComplexMatrix>,
    pub max_residual: f64,
}

/// Commutant as the range of `E -> ∫ ρ(x) E ρ(x⁻¹) dx`.
pub fn commutant(rep: &Representation, rule: &HaarRule) -> Result<CommutantReport> {
    rep.check_rule(rule)?;
    let r = rep.degree();
    let group = rep.group();
    let projector = averaged_sandwich(rule, |x| Ok((rep.evaluate(x)?, rep.evaluate(&group.inverse(x)?)?)))?;
    let basis: Vec<ComplexMatrix> = range_basis(&projector, tolerance::RANK)
        .into_iter()
        .map(|v| ComplexMatrix::unflatten(r, r, &v))
        .collect();
    let mut max_residual: f64 = 0.0;
    for t in &basis {
        max_residual = max_residual.max(intertwining_residual(rep, rep, t, rule)?);
    }
    Ok(CommutantReport {
        dimension: basis.len(),
        basis,
        max_residual,
    })
}

/// Unitary equivalent of `rep` on the rule, with the basis change used
/// (`None` when the input was already unitary).
fn unitary_form(rep: &Representation, rule: &HaarRule) -> Result<(Representation, Option<ComplexMatrix>)> {
    if rep.unitarity_audit(rule)? <= UNITARY_ENOUGH {
        Ok((rep.clone(), None))
    } else {
        let u = unitarize(rep, rule)?;
        Ok((u.unitary_rep, Some(u.a)))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IrreducibilityReport {
    pub irreducible: bool,
    pub commutant_dimension: usize,
    pub unitarized: bool,
    pub commutant_residual: f64,
}

pub fn irreducibility_report(rep: &Representation, rule: &HaarRule) -> Result<IrreducibilityReport> {
    rep.check_rule(rule)?;
    let (unitary, a) = unitary_form(rep, rule)?;
    let c = commutant(&unitary, rule)?;
    Ok(IrreducibilityReport {
        irreducible: c.dimension == 1,
        commutant_dimension: c.dimension,
        unitarized: a.is_some(),
        commutant_residual: c.max_residual,
    })
}

/// True iff the commutant (of the unitarized representation) is the scalars.
pub fn irreducibility_test(rep: &Representation, rule: &HaarRule) -> Result<bool> {
    Ok(irreducibility_report(rep, rule)?.irreducible)
}

/// One step of block splitting.
#[derive(Clone, Debug)]
pub struct Split {
    /// `P` with `P Φ(x) P⁻¹` block diagonal.
    pub p: ComplexMatrix,
    pub parts: (Representation, Representation),
    pub leakage: f64,
}

fn traceless(m: &ComplexMatrix) -> ComplexMatrix {
    let r = m.rows();
    let shift = m.trace() / r as f64;
    m - &ComplexMatrix::identity(r).scale(shift)
}

/// Eigenvector groups of a non-scalar Hermitian commutant element, clustered
/// by eigenvalue gaps. `None` if every eigenvalue falls in one cluster.
fn eigen_clusters(h: &ComplexMatrix) -> Result<Option<Vec<ComplexMatrix>>> {
    let scale = h.frobenius_norm();
    let e = hermitian_eigen(&h.scale_real(1.0 / scale))?;
    let r = h.rows();
    let mut groups: Vec<Vec<usize>> = vec![vec![0]];
    for k in 1..r {
        if e.eigenvalues[k] - e.eigenvalues[k - 1] > tolerance::CLUSTER_GAP {
            groups.push(Vec::new());
        }
        groups.last_mut().expect("nonempty").push(k);
    }
    if groups.len() < 2 {
        return Ok(None);
    }
    Ok(Some(
        groups
            .iter()
            .map(|g| ComplexMatrix::from_columns(&g.iter().map(|&k| e.vectors.column(k)).collect::<Vec<_>>(), r))
            .collect(),
    ))
}

/// Splitting subspaces for a unitary representation: eigenspaces of the
/// Hermitian (or skew-Hermitian) part of the first non-scalar commutant
/// element.
fn splitting_subspaces(unitary: &Representation, rule: &HaarRule) -> Result<Vec<ComplexMatrix>> {
    let c = commutant(unitary, rule)?;
    if c.dimension < 2 {
        return Err(Error::AlreadyIrreducible);
    }
    for t in &c.basis {
        if traceless(t).frobenius_norm() <= tolerance::CLUSTER_GAP {
            continue;
        }
        let herm = t.hermitian_part();
        let skew = (t - &t.adjoint()).scale(Complex64::new(0.0, -0.5));
        let (h0, h1) = (traceless(&herm), traceless(&skew));
        let mut candidates = [h0, h1];
        candidates.sort_by(|a, b| b.frobenius_norm().total_cmp(&a.frobenius_norm()));
        for h in candidates {
            if h.frobenius_norm() <= tolerance::CLUSTER_GAP {
                continue;
            }
            if let Some(groups) = eigen_clusters(&h.hermitian_part())? {
                return Ok(groups);
            }
        }
    }
    Err(Error::AlreadyIrreducible)
}

/// Block restricted to the orthonormal columns `v`; finite-group blocks are
/// stored as explicit tables.
fn block(unitary: &Representation, v: &ComplexMatrix) -> Result<Representation> {
    let compressed = unitary.compression(v)?;
    if let Some(f) = unitary.group().as_finite() {
        let table = (0..f.order())
            .map(|k| compressed.evaluate(&crate::group::GroupElement::Finite(k)))
            .collect::<Result<Vec<_>>>()?;
        return Representation::finite_table_unchecked(unitary.group(), table);
    }
    Ok(compressed)
}

/// Max over nodes of the entries of `W* Φ(x) W` outside the diagonal blocks
/// given by the column groups of `W = [W_1 ... W_k]`.
fn leakage(unitary: &Representation, groups: &[ComplexMatrix], rule: &HaarRule) -> Result<f64> {
    let w = ComplexMatrix::from_columns(
        &groups.iter().flat_map(|g| (0..g.cols()).map(move |j| g.column(j))).collect::<Vec<_>>(),
        unitary.degree(),
    );
    let mut owner = Vec::new();
    for (b, g) in groups.iter().enumerate() {
        owner.extend(std::iter::repeat(b).take(g.cols()));
    }
    let mut worst: f64 = 0.0;
    for x in rule.nodes() {
        let m = &(&w.adjoint() * &unitary.evaluate(x)?) * &w;
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if owner[i] != owner[j] {
                    worst = worst.max(m[(i, j)].norm());
                }
            }
        }
    }
    Ok(worst)
}

fn stack_adjoint(groups: &[ComplexMatrix], n: usize) -> ComplexMatrix {
    ComplexMatrix::from_columns(
        &groups.iter().flat_map(|g| (0..g.cols()).map(move |j| g.column(j))).collect::<Vec<_>>(),
        n,
    )
    .adjoint()
}

/// Splits a reducible representation into two invariant blocks.
pub fn split_once(rep: &Representation, rule: &HaarRule) -> Result<Split> {
    rep.check_rule(rule)?;
    let (unitary, a) = unitary_form(rep, rule)?;
    let groups = splitting_subspaces(&unitary, rule)?;
    let n = rep.degree();
    let first = groups[0].clone();
    let rest_cols: Vec<Vec<Complex64>> = groups[1..]
        .iter()
        .flat_map(|g| (0..g.cols()).map(move |j| g.column(j)))
        .collect();
    let rest = ComplexMatrix::from_columns(&rest_cols, n);
    let pair = [first, rest];
    let leakage = leakage(&unitary, &pair, rule)?;
    let mut p = stack_adjoint(&pair, n);
    if let Some(a) = a {
        p = &p * &a;
    }
    Ok(Split {
        p,
        parts: (block(&unitary, &pair[0])?, block(&unitary, &pair[1])?),
        leakage,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub p: ComplexMatrix,
    pub block_degrees: Vec<usize>,
    #[serde(skip)]
    pub blocks: Vec<Representation>,
    pub block_characters: Vec<Character>,
    /// Max off-block entry of `P Φ(x) P⁻¹` over the nodes.
    pub residual: f64,
    /// Max pointwise `|Σ χ_blocks − χ|`.
    pub character_residual: f64,
    pub unitarized: bool,
}

/// Recursive splitting until every block has a scalar commutant.
pub fn decompose(rep: &Representation, rule: &HaarRule) -> Result<DecompositionReport> {
    rep.check_rule(rule)?;
    let n = rep.degree();
    let (unitary, a) = unitary_form(rep, rule)?;
    let mut pending = vec![ComplexMatrix::identity(n)];
    let mut done: Vec<ComplexMatrix> = Vec::new();
    while let Some(v) = pending.pop() {
        let current = unitary.compression(&v)?;
        match splitting_subspaces(&current, rule) {
            Ok(groups) => {
                // push in reverse so blocks come out in eigenvalue order
                for g in groups.iter().rev() {
                    pending.push(&v * g);
                }
            }
            Err(Error::AlreadyIrreducible) => done.push(v),
            Err(e) => return Err(e),
        }
    }
    let residual = leakage(&unitary, &done, rule)?;
    let blocks = done.iter().map(|v| block(&unitary, v)).collect::<Result<Vec<_>>>()?;
    let block_characters = blocks.iter().map(|b| b.character(rule)).collect::<Result<Vec<_>>>()?;
    let input = rep.character(rule)?;
    let mut total = block_characters[0].clone();
    for c in &block_characters[1..] {
        total = total.add(c)?;
    }
    let mut p = stack_adjoint(&done, n);
    if let Some(a) = &a {
        p = &p * a;
    }
    Ok(DecompositionReport {
        p,
        block_degrees: blocks.iter().map(Representation::degree).collect(),
        blocks,
        character_residual: total.max_distance(&input),
        block_characters,
        residual,
        unitarized: a.is_some(),
    })
}

/// `∫ χ₁(x) conj(χ₂(x)) dx`.
pub fn character_inner(c1: &Character, c2: &Character, rule: &HaarRule) -> Result<Complex64> {
    if c1.rule_fingerprint() != rule.fingerprint() || c2.rule_fingerprint() != rule.fingerprint() {
        return Err(Error::RuleMismatch);
    }
    let values: Vec<Complex64> = c1.values.iter().zip(&c2.values).map(|(a, b)| a * b.conj()).collect();
    rule.integrate_values(&values)
}

#[derive(Clone, Debug, Serialize)]
pub struct OrthogonalityReport {
    pub gram: Vec<Vec<Complex64>>,
    /// `|⟨χ_i, χ_j⟩ − δ_ij|`.
    pub residuals: Vec<Vec<f64>>,
    pub max_residual: f64,
}

/// Character Gram matrix of a list of pairwise non-equivalent irreducibles.
pub fn orthogonality_audit(reps: &[Representation], rule: &HaarRule) -> Result<OrthogonalityReport> {
    if reps.is_empty() {
        return Err(Error::EmptyInput("representations"));
    }
    for (k, r) in reps.iter().enumerate() {
        if !irreducibility_test(r, rule)? {
            return Err(Error::NotIrreducible(k));
        }
    }
    let chars = reps.iter().map(|r| r.character(rule)).collect::<Result<Vec<_>>>()?;
    let mut gram = Vec::new();
    let mut residuals = Vec::new();
    let mut max_residual: f64 = 0.0;
    for (i, a) in chars.iter().enumerate() {
        let mut grow = Vec::new();
        let mut rrow = Vec::new();
        for (j, b) in chars.iter().enumerate() {
            let v = character_inner(a, b, rule)?;
            let delta = if i == j { 1.0 } else { 0.0 };
            let res = (v - delta).norm();
            max_residual = max_residual.max(res);
            grow.push(v);
            rrow.push(res);
        }
        gram.push(grow);
        residuals.push(rrow);
    }
    Ok(OrthogonalityReport {
        gram,
        residuals,
        max_residual,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MatrixElementReport {
    pub degree: usize,
    /// Max over `(i, j, k, l)` of `|∫ Φ_ij conj(Φ_kl) − δ_ik δ_jl / r|`.
    pub max_deviation: f64,
    /// `∫ |Φ_ij|²` in row-major order of `(i, j)`.
    pub diagonal: Vec<f64>,
}

/// Orthogonality of the matrix elements of a unitary irreducible.
pub fn matrix_element_audit(rep: &Representation, rule: &HaarRule) -> Result<MatrixElementReport> {
    rep.check_rule(rule)?;
    if !irreducibility_test(rep, rule)? {
        return Err(Error::NotIrreducible(0));
    }
    let defect = rep.unitarity_audit(rule)?;
    if defect > UNITARY_ENOUGH {
        return Err(Error::NotUnitary(defect));
    }
    let r = rep.degree();
    // entry ((i,k),(j,l)) of Φ ⊗ conj(Φ) is Φ_ij conj(Φ_kl)
    let integral = rule.integrate_matrix(|x| {
        let m = rep.evaluate(x)?;
        Ok(ComplexMatrix::kron(&m, &m.conj()))
    })?;
    let mut max_deviation: f64 = 0.0;
    let mut diagonal = Vec::with_capacity(r * r);
    for i in 0..r {
        for j in 0..r {
            diagonal.push(integral[(i * r + i, j * r + j)].re);
            for k in 0..r {
                for l in 0..r {
                    let expected = if i == k && j == l { 1.0 / r as f64 } else { 0.0 };
                    max_deviation = max_deviation.max((integral[(i * r + k, j * r + l)] - expected).norm());
                }
            }
        }
    }
    Ok(MatrixElementReport {
        degree: r,
        max_deviation,
        diagonal,
    })
}

/// Number of times `irrep` occurs in `rep`, from the character inner product.
pub fn multiplicity(rep: &Representation, irrep: &Representation, rule: &HaarRule) -> Result<usize> {
    if !irreducibility_test(irrep, rule)? {
        return Err(Error::NotIrreducible(0));
    }
    let value = character_inner(&rep.character(rule)?, &irrep.character(rule)?, rule)?;
    let nearest = value.re.round();
    if (value - nearest).norm() > tolerance::MULTIPLICITY_WINDOW || nearest < 0.0 {
        return Err(Error::NonIntegerMultiplicity(value.re));
    }
    Ok(nearest as usize)
}

/// `P⁻¹` for a decomposition basis change.
pub fn inverse_basis_change(p: &ComplexMatrix) -> Result<ComplexMatrix> {
    invert(p)
}

/// True when the representation is stored as a table (finite group).
pub fn is_tabulated(rep: &Representation) -> bool {
    matches!(rep.body(), RepBody::FiniteTable(_))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{GroupElement, GroupSpec};
    use crate::rep::builtin;

    fn rule(g: &GroupSpec, res: usize) -> HaarRule {
        HaarRule::new(g, res).unwrap()
    }

    #[test]
    fn intertwiner_examples() {
        let circle = rule(&GroupSpec::Circle, 8);
        let t = Representation::trivial(&GroupSpec::Circle);
        let one = ComplexMatrix::identity(1);
        assert!(averaged_intertwiner(&t, &t, &one, &circle).unwrap().t.max_abs_diff(&one) < 1e-15);

        let w1 = Representation::circle_weights(vec![1]).unwrap();
        let w2 = Representation::circle_weights(vec![2]).unwrap();
        let a = ComplexMatrix::from_diag(&[Complex64::new(0.3, -1.2)]);
        assert!(averaged_intertwiner(&w1, &w2, &a, &circle).unwrap().t.max_abs() < 1e-12);

        let su2 = rule(&GroupSpec::Su2, 12);
        let half = Representation::spin(1).unwrap();
        let it = averaged_intertwiner(&half, &half, &ComplexMatrix::unit(2, 0, 0), &su2).unwrap();
        assert!(it.t.max_abs_diff(&ComplexMatrix::identity(2).scale_real(0.5)) < 1e-10);
        assert!(it.residual < 1e-8);

        assert!(matches!(
            averaged_intertwiner(&half, &half, &ComplexMatrix::identity(3), &su2),
            Err(Error::ShapeMismatch { .. })
        ));
        assert_eq!(averaged_intertwiner(&w1, &half, &one, &circle).unwrap_err(), Error::GroupMismatch);
    }

    #[test]
    fn commutant_examples() {
        let su2 = rule(&GroupSpec::Su2, 16);
        assert_eq!(commutant(&Representation::spin(0).unwrap(), &su2).unwrap().dimension, 1);
        let c = commutant(&Representation::spin(2).unwrap(), &su2).unwrap();
        assert_eq!(c.dimension, 1);
        let b = &c.basis[0];
        assert!(traceless(b).max_abs() < 1e-10);
        let half = Representation::spin(1).unwrap();
        let double = Representation::direct_sum(&half, &half).unwrap();
        let c = commutant(&double, &su2).unwrap();
        assert_eq!(c.dimension, 4);
        assert!(c.max_residual < 1e-8);
    }

    #[test]
    fn irreducibility_examples() {
        // spin 3 needs a finer class-angle grid than the default
        let su2 = rule(&GroupSpec::Su2, 24);
        for two_j in 0..=6 {
            assert!(irreducibility_test(&Representation::spin(two_j).unwrap(), &su2).unwrap());
        }
        let t = Representation::trivial(&GroupSpec::s3());
        let s3 = rule(&GroupSpec::s3(), 1);
        assert!(!irreducibility_test(&Representation::direct_sum(&t, &t).unwrap(), &s3).unwrap());
        assert!(irreducibility_test(&builtin::s3_standard(), &s3).unwrap());
        assert!(!irreducibility_test(&builtin::s3_permutation(), &s3).unwrap());
    }

    fn premixed_z2() -> Representation {
        let g = GroupSpec::z2();
        let sum = Representation::direct_sum(&Representation::trivial(&g), &builtin::z2_sign()).unwrap();
        let (c, s) = (0.6, 0.8);
        let u = ComplexMatrix::from_real_rows(&[&[c, -s], &[s, c]]).unwrap();
        sum.conjugate(&u).unwrap()
    }

    #[test]
    fn split_examples() {
        let z2 = rule(&GroupSpec::z2(), 1);
        let split = split_once(&premixed_z2(), &z2).unwrap();
        assert!(split.leakage < 1e-12);
        let mut chars: Vec<Vec<f64>> = [&split.parts.0, &split.parts.1]
            .iter()
            .map(|b| b.character(&z2).unwrap().values.iter().map(|v| (v.re * 1e9).round() / 1e9).collect())
            .collect();
        chars.sort_by(|a, b| a[1].total_cmp(&b[1]));
        assert_eq!(chars, vec![vec![1.0, -1.0], vec![1.0, 1.0]]);
        assert!(is_tabulated(&split.parts.0));

        let su2 = rule(&GroupSpec::Su2, 16);
        let half = Representation::spin(1).unwrap();
        let split = split_once(&Representation::direct_sum(&half, &half).unwrap(), &su2).unwrap();
        assert_eq!((split.parts.0.degree(), split.parts.1.degree()), (2, 2));
        let chi = half.character(&su2).unwrap();
        assert!(split.parts.0.character(&su2).unwrap().max_distance(&chi) < 1e-9);
        assert!(split.parts.1.character(&su2).unwrap().max_distance(&chi) < 1e-9);

        assert_eq!(split_once(&half, &su2).unwrap_err(), Error::AlreadyIrreducible);
    }

    #[test]
    fn decompose_examples() {
        let z2 = rule(&GroupSpec::z2(), 1);
        let g = GroupSpec::z2();
        let rep = Representation::direct_sum(&premixed_z2(), &builtin::z2_sign()).unwrap();
        let u = ComplexMatrix::from_fn(3, 3, |i, j| {
            // a real rotation mixing all three coordinates
            let m = [[2.0, -2.0, 1.0], [1.0, 2.0, 2.0], [2.0, 1.0, -2.0]];
            Complex64::new(m[i][j] / 3.0, 0.0)
        });
        let rep = rep.conjugate(&u).unwrap();
        let d = decompose(&rep, &z2).unwrap();
        assert_eq!(d.block_degrees, vec![1, 1, 1]);
        let signs: usize = d.block_characters.iter().filter(|c| (c.values[1].re + 1.0).abs() < 1e-9).count();
        assert_eq!(signs, 2);
        assert!(d.residual < 1e-12 && d.character_residual < 1e-12);
        let _ = g;

        let irreducible = decompose(&builtin::s3_standard(), &rule(&GroupSpec::s3(), 1)).unwrap();
        assert_eq!(irreducible.block_degrees, vec![2]);

        let regular = decompose(&builtin::regular(&GroupSpec::s3()).unwrap(), &rule(&GroupSpec::s3(), 1)).unwrap();
        let mut degrees = regular.block_degrees.clone();
        degrees.sort();
        assert_eq!(degrees, vec![1, 1, 2, 2]);
        assert!(regular.residual < 1e-10);
    }

    #[test]
    fn character_inner_examples() {
        let z2 = rule(&GroupSpec::z2(), 1);
        let t = Representation::trivial(&GroupSpec::z2()).character(&z2).unwrap();
        let s = builtin::z2_sign().character(&z2).unwrap();
        assert_eq!(character_inner(&t, &t, &z2).unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(character_inner(&t, &s, &z2).unwrap(), Complex64::new(0.0, 0.0));
        let s3 = rule(&GroupSpec::s3(), 1);
        let chi = builtin::s3_standard().character(&s3).unwrap();
        assert!((character_inner(&chi, &chi, &s3).unwrap() - 1.0).norm() < 1e-15);
        assert_eq!(character_inner(&chi, &t, &s3).unwrap_err(), Error::RuleMismatch);
    }

    #[test]
    fn orthogonality_examples() {
        let circle = rule(&GroupSpec::Circle, 16);
        let reps: Vec<_> = (0..3).map(|w| Representation::circle_weights(vec![w]).unwrap()).collect();
        assert!(orthogonality_audit(&reps, &circle).unwrap().max_residual <= 1e-12);
        let su2 = rule(&GroupSpec::Su2, 16);
        let spins: Vec<_> = (0..3).map(|t| Representation::spin(t).unwrap()).collect();
        assert!(orthogonality_audit(&spins, &su2).unwrap().max_residual <= 1e-6);
        let single = orthogonality_audit(&reps[..1], &circle).unwrap();
        assert_eq!(single.max_residual, 0.0);
        let t = Representation::trivial(&GroupSpec::Circle);
        let reducible = Representation::direct_sum(&t, &t).unwrap();
        assert_eq!(orthogonality_audit(&[t, reducible], &circle).unwrap_err(), Error::NotIrreducible(1));
    }

    #[test]
    fn matrix_element_examples() {
        let circle = rule(&GroupSpec::Circle, 8);
        let m = matrix_element_audit(&Representation::circle_weights(vec![1]).unwrap(), &circle).unwrap();
        assert!(m.max_deviation < 1e-15);
        let su2 = rule(&GroupSpec::Su2, 16);
        let m = matrix_element_audit(&Representation::spin(1).unwrap(), &su2).unwrap();
        assert!(m.max_deviation <= 1e-8);
        assert!(m.diagonal.iter().all(|d| (d - 0.5).abs() < 1e-8));
        let s3 = rule(&GroupSpec::s3(), 1);
        let m = matrix_element_audit(&builtin::s3_standard(), &s3).unwrap();
        assert!(m.max_deviation <= 1e-12);
    }

    #[test]
    fn multiplicity_examples() {
        let su2 = rule(&GroupSpec::Su2, 16);
        let half = Representation::spin(1).unwrap();
        let one = Representation::spin(2).unwrap();
        assert_eq!(multiplicity(&half, &half, &su2).unwrap(), 1);
        let big = Representation::direct_sum_all(&[half.clone(), half.clone(), one.clone()]).unwrap();
        assert_eq!(multiplicity(&big, &half, &su2).unwrap(), 2);
        assert_eq!(multiplicity(&one, &half, &su2).unwrap(), 0);
        assert_eq!(multiplicity(&half, &big, &su2).unwrap_err(), Error::NotIrreducible(0));
    }

    #[test]
    fn block_tables_are_homomorphisms() {
        let s3 = rule(&GroupSpec::s3(), 1);
        let d = decompose(&builtin::s3_permutation(), &s3).unwrap();
        for b in &d.blocks {
            assert!(b.homomorphism_audit(1) < 1e-12);
            assert!(b.evaluate(&GroupElement::Finite(0)).unwrap().max_abs_diff(&ComplexMatrix::identity(b.degree())) < 1e-12);
        }
    }
}
