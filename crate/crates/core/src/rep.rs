//! Finite-dimensional representations of the supported groups.

use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{s3_permutations, GroupElement, GroupSpec};
use crate::haar::HaarRule;
use crate::linalg::{invert, ComplexMatrix};
use crate::tolerance;

/// Largest supported `2j` for [`Representation::spin`].
pub const MAX_TWO_J: u32 = 12;

const AUDIT_SEED: u64 = 0x6d61_7472;

/// How a representation computes its matrices.
#[derive(Clone, Debug)]
pub enum RepBody {
    /// One matrix per element of a finite group, in element order.
    FiniteTable(Vec<ComplexMatrix>),
    /// `θ -> diag(e^{i n_k θ})` on the circle.
    CircleWeights(Vec<i64>),
    /// Spin `j = two_j / 2` of SU(2), realized on homogeneous polynomials.
    Su2Spin(u32),
    DirectSum(Box<Representation>, Box<Representation>),
    /// `x -> A ρ(x) A⁻¹`.
    Conjugate {
        inner: Box<Representation>,
        matrix: ComplexMatrix,
        inverse: ComplexMatrix,
    },
    /// `x -> V* ρ(x) V` for an isometry `V` onto a ρ-invariant subspace.
    Compression {
        parent: Box<Representation>,
        isometry: ComplexMatrix,
    },
}

/// A group homomorphism into invertible `degree x degree` complex matrices.
#[derive(Clone, Debug)]
pub struct Representation {
    group: Arc<GroupSpec>,
    degree: usize,
    body: RepBody,
}

/// Character values `tr ρ(x)` at the nodes of one rule.
#[derive(Clone, Debug, Serialize)]
pub struct Character {
    pub degree: usize,
    pub values: Vec<Complex64>,
    #[serde(skip)]
    rule_fingerprint: u64,
}

impl Character {
    pub fn rule_fingerprint(&self) -> u64 {
        self.rule_fingerprint
    }

    /// Pointwise sum of two characters on the same rule.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rule_fingerprint != other.rule_fingerprint {
            return Err(Error::RuleMismatch);
        }
        Ok(Self {
            degree: self.degree + other.degree,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
            rule_fingerprint: self.rule_fingerprint,
        })
    }

    /// Largest pointwise distance to another character.
    pub fn max_distance(&self, other: &Self) -> f64 {
        if self.values.len() != other.values.len() {
            return f64::INFINITY;
        }
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

fn factorials(n: usize) -> Vec<f64> {
    let mut f = vec![1.0; n + 1];
    for k in 1..=n {
        f[k] = f[k - 1] * k as f64;
    }
    f
}

fn binomial(f: &[f64], n: usize, k: usize) -> f64 {
    f[n] / (f[k] * f[n - k])
}

/// Symmetric power of the defining action on degree-`n` polynomials in the
/// orthonormal basis `x^{n-k} y^k / sqrt(k!(n-k)!)`, with `(U p)(v) = p(Uᵀ v)`.
fn symmetric_power(u: &ComplexMatrix, n: usize) -> ComplexMatrix {
    let (a, b, c, d) = (u[(0, 0)], u[(0, 1)], u[(1, 0)], u[(1, 1)]);
    let f = factorials(n);
    let pow = |z: Complex64, k: usize| z.powi(k as i32);
    ComplexMatrix::from_fn(n + 1, n + 1, |l, k| {
        // coefficient of x^{n-l} y^l in (a x + c y)^{n-k} (b x + d y)^k
        let mut coef = Complex64::new(0.0, 0.0);
        for s in 0..=(n - k).min(l) {
            let t = l - s;
            if t > k {
                continue;
            }
            coef += binomial(&f, n - k, s) * pow(a, n - k - s) * pow(c, s) * binomial(&f, k, t) * pow(b, k - t) * pow(d, t);
        }
        coef * ((f[l] * f[n - l]) / (f[k] * f[n - k])).sqrt()
    })
}

impl Representation {
    /// Finite-group representation from a complete table, validated: identity
    /// maps to I (1e-12) and the homomorphism residual is at most 1e-8.
    pub fn finite_table(group: &GroupSpec, matrices: Vec<ComplexMatrix>) -> Result<Self> {
        let rep = Self::finite_table_unchecked(group, matrices)?;
        let f = group.as_finite().expect("checked by unchecked constructor");
        let id = &rep.table()[f.identity()];
        if id.max_abs_diff(&ComplexMatrix::identity(rep.degree)) > tolerance::KERNEL {
            return Err(Error::InvalidRepresentation(format!(
                "matrix of the identity element {} is not the identity; a representation must be a homomorphism",
                f.identity()
            )));
        }
        let residual = rep.homomorphism_audit(1);
        if residual > tolerance::HOMOMORPHISM {
            return Err(Error::InvalidRepresentation(format!(
                "table is not a homomorphism (residual {residual:.3e})"
            )));
        }
        if let Some(k) = rep.table().iter().position(|m| invert(m).is_err()) {
            return Err(Error::InvalidRepresentation(format!("matrix {k} is not invertible")));
        }
        Ok(rep)
    }

    /// Finite table with only shape checks; used for deliberately broken inputs.
    pub fn finite_table_unchecked(group: &GroupSpec, matrices: Vec<ComplexMatrix>) -> Result<Self> {
        let f = group.as_finite().ok_or(Error::KindMismatch)?;
        if matrices.len() != f.order() {
            return Err(Error::InvalidRepresentation(format!(
                "{} matrices for a group of order {}",
                matrices.len(),
                f.order()
            )));
        }
        let degree = matrices.first().map_or(0, ComplexMatrix::rows);
        if let Some(k) = matrices.iter().position(|m| m.shape() != (degree, degree)) {
            return Err(Error::InvalidRepresentation(format!(
                "matrix {k} has shape {:?}, expected {degree}x{degree}",
                matrices[k].shape()
            )));
        }
        if degree == 0 {
            return Err(Error::InvalidRepresentation("degree 0".into()));
        }
        Ok(Self {
            group: Arc::new(group.clone()),
            degree,
            body: RepBody::FiniteTable(matrices),
        })
    }

    pub fn circle_weights(weights: Vec<i64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidRepresentation("empty weight list".into()));
        }
        Ok(Self {
            group: Arc::new(GroupSpec::Circle),
            degree: weights.len(),
            body: RepBody::CircleWeights(weights),
        })
    }

    /// Spin-`two_j/2` irreducible representation of SU(2), degree `two_j + 1`.
    pub fn spin(two_j: u32) -> Result<Self> {
        if two_j > MAX_TWO_J {
            return Err(Error::SpinOutOfRange(two_j));
        }
        Ok(Self {
            group: Arc::new(GroupSpec::Su2),
            degree: two_j as usize + 1,
            body: RepBody::Su2Spin(two_j),
        })
    }

    /// One-dimensional trivial representation.
    pub fn trivial(group: &GroupSpec) -> Self {
        match group {
            GroupSpec::Finite(f) => Self {
                group: Arc::new(group.clone()),
                degree: 1,
                body: RepBody::FiniteTable(vec![ComplexMatrix::identity(1); f.order()]),
            },
            GroupSpec::Circle => Self::circle_weights(vec![0]).expect("nonempty"),
            GroupSpec::Su2 => Self::spin(0).expect("in range"),
        }
    }

    pub fn direct_sum(a: &Self, b: &Self) -> Result<Self> {
        if a.group != b.group {
            return Err(Error::GroupMismatch);
        }
        Ok(Self {
            group: a.group.clone(),
            degree: a.degree + b.degree,
            body: RepBody::DirectSum(Box::new(a.clone()), Box::new(b.clone())),
        })
    }

    /// Direct sum of a nonempty list.
    pub fn direct_sum_all(parts: &[Self]) -> Result<Self> {
        let (first, rest) = parts.split_first().ok_or(Error::EmptyInput("direct sum parts"))?;
        rest.iter().try_fold(first.clone(), |acc, p| Self::direct_sum(&acc, p))
    }

    /// The equivalent representation `x -> A ρ(x) A⁻¹`.
    pub fn conjugate(&self, a: &ComplexMatrix) -> Result<Self> {
        if a.shape() != (self.degree, self.degree) {
            return Err(Error::ShapeMismatch {
                expected: (self.degree, self.degree),
                found: a.shape(),
            });
        }
        let inverse = invert(a)?;
        Ok(Self {
            group: self.group.clone(),
            degree: self.degree,
            body: RepBody::Conjugate {
                inner: Box::new(self.clone()),
                matrix: a.clone(),
                inverse,
            },
        })
    }

    /// Restriction to the invariant subspace spanned by the orthonormal
    /// columns of `isometry`: `x -> V* ρ(x) V`.
    pub fn compression(&self, isometry: &ComplexMatrix) -> Result<Self> {
        if isometry.rows() != self.degree || isometry.cols() == 0 || isometry.cols() > self.degree {
            return Err(Error::ShapeMismatch {
                expected: (self.degree, isometry.cols()),
                found: isometry.shape(),
            });
        }
        if isometry.unitarity_defect() > tolerance::STRUCTURAL {
            return Err(Error::InvalidRepresentation("compression basis is not orthonormal".into()));
        }
        Ok(Self {
            group: self.group.clone(),
            degree: isometry.cols(),
            body: RepBody::Compression {
                parent: Box::new(self.clone()),
                isometry: isometry.clone(),
            },
        })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn body(&self) -> &RepBody {
        &self.body
    }

    /// True when `rule` integrates over this representation's group.
    pub fn same_group(&self, rule: &HaarRule) -> bool {
        *self.group == *rule.group()
    }

    pub(crate) fn check_rule(&self, rule: &HaarRule) -> Result<()> {
        if self.same_group(rule) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    fn table(&self) -> &[ComplexMatrix] {
        match &self.body {
            RepBody::FiniteTable(t) => t,
            _ => &[],
        }
    }

    /// `ρ(g)`.
    pub fn evaluate(&self, g: &GroupElement) -> Result<ComplexMatrix> {
        self.group.check(g)?;
        self.evaluate_unchecked(g)
    }

    fn evaluate_unchecked(&self, g: &GroupElement) -> Result<ComplexMatrix> {
        Ok(match (&self.body, g) {
            (RepBody::FiniteTable(t), GroupElement::Finite(i)) => t[*i].clone(),
            (RepBody::CircleWeights(w), GroupElement::Angle(theta)) => ComplexMatrix::from_diag(
                &w.iter()
                    .map(|&n| Complex64::from_polar(1.0, n as f64 * theta))
                    .collect::<Vec<_>>(),
            ),
            (RepBody::Su2Spin(two_j), GroupElement::Su2(u)) => symmetric_power(u, *two_j as usize),
            (RepBody::DirectSum(a, b), _) => {
                ComplexMatrix::block_diag(&a.evaluate_unchecked(g)?, &b.evaluate_unchecked(g)?)
            }
            (
                RepBody::Conjugate {
                    inner,
                    matrix,
                    inverse,
                },
                _,
            ) => &(matrix * &inner.evaluate_unchecked(g)?) * inverse,
            (RepBody::Compression { parent, isometry }, _) => {
                &(&isometry.adjoint() * &parent.evaluate_unchecked(g)?) * isometry
            }
            _ => return Err(Error::KindMismatch),
        })
    }

    /// Trace at `g`; direct sums add the block traces so characters of sums
    /// are exactly the sums of characters.
    fn trace_unchecked(&self, g: &GroupElement) -> Result<Complex64> {
        match &self.body {
            RepBody::DirectSum(a, b) => Ok(a.trace_unchecked(g)? + b.trace_unchecked(g)?),
            _ => Ok(self.evaluate_unchecked(g)?.trace()),
        }
    }

    /// Max-norm of `ρ(xy) − ρ(x)ρ(y)`: over all pairs for finite groups with
    /// N² ≤ 10⁴, otherwise over `pair_count` seeded random pairs.
    pub fn homomorphism_audit(&self, pair_count: usize) -> f64 {
        self.homomorphism_audit_seeded(pair_count, AUDIT_SEED)
    }

    pub fn homomorphism_audit_seeded(&self, pair_count: usize, seed: u64) -> f64 {
        let pairs: Vec<(GroupElement, GroupElement)> = match &*self.group {
            GroupSpec::Finite(f) if f.order() * f.order() <= 10_000 => (0..f.order())
                .flat_map(|a| (0..f.order()).map(move |b| (GroupElement::Finite(a), GroupElement::Finite(b))))
                .collect(),
            GroupSpec::Finite(f) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..pair_count)
                    .map(|_| {
                        (
                            GroupElement::Finite(rng.gen_range(0..f.order())),
                            GroupElement::Finite(rng.gen_range(0..f.order())),
                        )
                    })
                    .collect()
            }
            g => {
                let xs = g.sample(2 * pair_count, seed);
                xs.chunks(2).map(|p| (p[0].clone(), p[1].clone())).collect()
            }
        };
        let mut worst: f64 = 0.0;
        for (x, y) in &pairs {
            let xy = self.group.multiply(x, y).expect("sampled from own group");
            let lhs = self.evaluate_unchecked(&xy).expect("own group");
            let rhs = &self.evaluate_unchecked(x).expect("own group") * &self.evaluate_unchecked(y).expect("own group");
            worst = worst.max(lhs.max_abs_diff(&rhs));
        }
        worst
    }

    /// Max over rule nodes of `|ρ(x)* ρ(x) − I|`.
    pub fn unitarity_audit(&self, rule: &HaarRule) -> Result<f64> {
        self.check_rule(rule)?;
        let mut worst: f64 = 0.0;
        for x in rule.nodes() {
            worst = worst.max(self.evaluate_unchecked(x)?.unitarity_defect());
        }
        Ok(worst)
    }

    /// Character values at every node of `rule`.
    pub fn character(&self, rule: &HaarRule) -> Result<Character> {
        self.check_rule(rule)?;
        let values = rule
            .nodes()
            .iter()
            .map(|x| self.trace_unchecked(x))
            .collect::<Result<Vec<_>>>()?;
        Ok(Character {
            degree: self.degree,
            values,
            rule_fingerprint: rule.fingerprint(),
        })
    }

    /// Max over nodes x and shifts a of `|tr ρ(a⁻¹ x a) − tr ρ(x)|`.
    pub fn class_invariance_audit(&self, rule: &HaarRule, shifts: &[GroupElement]) -> Result<f64> {
        self.check_rule(rule)?;
        if shifts.is_empty() {
            return Err(Error::EmptyInput("shifts"));
        }
        let g = &*self.group;
        let mut worst: f64 = 0.0;
        for x in rule.nodes() {
            let base = self.evaluate_unchecked(x)?.trace();
            for a in shifts {
                let conj = g.multiply(&g.multiply(&g.inverse(a)?, x)?, a)?;
                worst = worst.max((self.evaluate_unchecked(&conj)?.trace() - base).norm());
            }
        }
        Ok(worst)
    }
}

/// Named representations of the builtin finite groups.
pub mod builtin {
    use super::*;

    fn real(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    /// `e^{2πi r / n}`, exact at the quarter turns.
    fn root_of_unity(n: usize, r: usize) -> Complex64 {
        match (4 * r) as f64 / n as f64 {
            q if q == 0.0 => real(1.0),
            q if q == 1.0 => Complex64::new(0.0, 1.0),
            q if q == 2.0 => real(-1.0),
            q if q == 3.0 => Complex64::new(0.0, -1.0),
            _ => Complex64::from_polar(1.0, std::f64::consts::TAU * r as f64 / n as f64),
        }
    }

    /// `k -> e^{2πi m k / n}` on the cyclic group of order n.
    pub fn cyclic_character(n: usize, m: i64) -> Result<Representation> {
        let group = GroupSpec::builtin(&format!("z{n}")).ok_or(Error::InvalidGroup(format!("z{n}")))?;
        let table = (0..n)
            .map(|k| {
                let r = (m * k as i64).rem_euclid(n as i64) as usize;
                ComplexMatrix::from_diag(&[root_of_unity(n, r)])
            })
            .collect();
        Representation::finite_table(&group, table)
    }

    /// Sign representation of Z₂.
    pub fn z2_sign() -> Representation {
        cyclic_character(2, 1).expect("valid")
    }

    fn permutation_matrix(p: &[usize]) -> ComplexMatrix {
        let n = p.len();
        let mut m = ComplexMatrix::zeros(n, n);
        for (i, &pi) in p.iter().enumerate() {
            m[(pi, i)] = real(1.0);
        }
        m
    }

    fn parity(p: &[usize]) -> f64 {
        let mut inversions = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    pub fn s3_sign() -> Representation {
        let table = s3_permutations()
            .iter()
            .map(|p| ComplexMatrix::from_diag(&[real(parity(p))]))
            .collect();
        Representation::finite_table(&GroupSpec::s3(), table).expect("valid")
    }

    /// Natural 3-dimensional permutation representation of S₃.
    pub fn s3_permutation() -> Representation {
        let table = s3_permutations().iter().map(|p| permutation_matrix(p)).collect();
        Representation::finite_table(&GroupSpec::s3(), table).expect("valid")
    }

    /// The 2-dimensional irreducible representation of S₃ on the sum-zero
    /// plane, in the orthonormal basis (1,−1,0)/√2, (1,1,−2)/√6.
    pub fn s3_standard() -> Representation {
        let a = 0.5f64.sqrt();
        let b = (1.0f64 / 6.0).sqrt();
        let basis = ComplexMatrix::from_real_rows(&[&[a, b], &[-a, b], &[0.0, -2.0 * b]]).expect("3x2");
        let table = s3_permutations()
            .iter()
            .map(|p| &(&basis.adjoint() * &permutation_matrix(p)) * &basis)
            .collect();
        Representation::finite_table(&GroupSpec::s3(), table).expect("valid")
    }

    /// Left regular representation `R(g) e_h = e_{gh}`.
    pub fn regular(group: &GroupSpec) -> Result<Representation> {
        let f = group.as_finite().ok_or(Error::KindMismatch)?;
        let n = f.order();
        let table = (0..n)
            .map(|g| {
                let mut m = ComplexMatrix::zeros(n, n);
                for h in 0..n {
                    m[(f.mul(g, h), h)] = real(1.0);
                }
                m
            })
            .collect();
        Representation::finite_table(group, table)
    }

    /// The irreducible representations of a builtin finite group, by name.
    pub fn irreps(group_name: &str) -> Option<Vec<Representation>> {
        match group_name {
            "z2" => Some(vec![Representation::trivial(&GroupSpec::z2()), z2_sign()]),
            "z3" => Some((0..3).map(|m| cyclic_character(3, m).expect("valid")).collect()),
            "s3" => Some(vec![Representation::trivial(&GroupSpec::s3()), s3_sign(), s3_standard()]),
            _ => None,
        }
    }
}
