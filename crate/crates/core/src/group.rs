//! Compact group descriptors (finite, circle, SU(2)) and element arithmetic.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::tolerance;

/// Groups of order up to this bound get exhaustive associativity checks.
const EXHAUSTIVE_ASSOCIATIVITY: usize = 64;
const SAMPLED_TRIPLES: usize = 10_000;

/// Finite group given by its Cayley table.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteGroup {
    mult: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    identity: usize,
    labels: Vec<String>,
    generators: Vec<usize>,
}

impl FiniteGroup {
    /// Validates the table: Latin square, identity row/column, inverse table,
    /// associativity (exhaustive up to order 64, 10⁴ sampled triples above).
    pub fn new(
        mult: Vec<Vec<usize>>,
        inverse: Vec<usize>,
        identity: usize,
        labels: Vec<String>,
        generators: Vec<usize>,
    ) -> Result<Self> {
        let n = mult.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty multiplication table".into()));
        }
        for (i, row) in mult.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            let mut seen = vec![false; n];
            for &x in row {
                if x >= n || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidGroup(format!(
                        "row {i} is not a permutation of 0..{n} (Latin square check)"
                    )));
                }
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for (i, row) in mult.iter().enumerate() {
                if std::mem::replace(&mut seen[row[j]], true) {
                    return Err(Error::InvalidGroup(format!(
                        "column {j} repeats element {} at row {i} (Latin square check)",
                        row[j]
                    )));
                }
            }
        }
        if identity >= n {
            return Err(Error::InvalidGroup(format!("identity index {identity} out of range")));
        }
        for g in 0..n {
            if mult[identity][g] != g || mult[g][identity] != g {
                return Err(Error::InvalidGroup(format!(
                    "element {identity} is not a two-sided identity (fails at {g})"
                )));
            }
        }
        if inverse.len() != n {
            return Err(Error::InvalidGroup(format!(
                "inverse table has {} entries, expected {n}",
                inverse.len()
            )));
        }
        for (g, &h) in inverse.iter().enumerate() {
            if h >= n || mult[g][h] != identity || mult[h][g] != identity {
                return Err(Error::InvalidGroup(format!("inverse of element {g} is wrong")));
            }
        }
        if !labels.is_empty() && labels.len() != n {
            return Err(Error::InvalidGroup(format!("{} labels for {n} elements", labels.len())));
        }
        if let Some(&g) = generators.iter().find(|&&g| g >= n) {
            return Err(Error::InvalidGroup(format!("generator {g} out of range")));
        }

        let assoc = |a: usize, b: usize, c: usize| mult[mult[a][b]][c] == mult[a][mult[b][c]];
        if n <= EXHAUSTIVE_ASSOCIATIVITY {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(Error::InvalidGroup(format!(
                                "associativity fails for ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..SAMPLED_TRIPLES {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !assoc(a, b, c) {
                    return Err(Error::InvalidGroup(format!(
                        "associativity fails for ({a}, {b}, {c})"
                    )));
                }
            }
        }
        Ok(Self {
            mult,
            inverse,
            identity,
            labels,
            generators,
        })
    }

    /// Builds the Cayley table from a closed list of permutations; element 0
    /// must be the identity permutation.
    pub fn from_permutations(perms: &[Vec<usize>], labels: Vec<String>) -> Result<Self> {
        let index = |p: &[usize]| perms.iter().position(|q| q.as_slice() == p);
        let compose = |a: &[usize], b: &[usize]| -> Vec<usize> { b.iter().map(|&i| a[i]).collect() };
        let mut mult = vec![vec![0; perms.len()]; perms.len()];
        let mut inverse = vec![0; perms.len()];
        for (i, a) in perms.iter().enumerate() {
            for (j, b) in perms.iter().enumerate() {
                mult[i][j] = index(&compose(a, b))
                    .ok_or_else(|| Error::InvalidGroup("permutation list is not closed".into()))?;
            }
            let mut inv = vec![0; a.len()];
            for (k, &ak) in a.iter().enumerate() {
                inv[ak] = k;
            }
            inverse[i] = index(&inv).ok_or_else(|| Error::InvalidGroup("missing inverse".into()))?;
        }
        Self::new(mult, inverse, 0, labels, Vec::new())
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("cyclic group of order 0".into()));
        }
        let mult = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let inverse = (0..n).map(|i| (n - i) % n).collect();
        let gens = if n > 1 { vec![1] } else { Vec::new() };
        Self::new(mult, inverse, 0, (0..n).map(|k| format!("g^{k}")).collect(), gens)
    }

    /// S₃ with elements ordered e, (01), (02), (12), (012), (021).
    pub fn symmetric3() -> Self {
        let perms = s3_permutations();
        let labels = ["e", "(01)", "(02)", "(12)", "(012)", "(021)"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        Self::from_permutations(&perms, labels).expect("S3 permutations are closed")
    }

    pub fn order(&self) -> usize {
        self.mult.len()
    }

    pub fn mult_table(&self) -> &[Vec<usize>] {
        &self.mult
    }

    pub fn inverse_table(&self) -> &[usize] {
        &self.inverse
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }
}

/// Elements of S₃ as images `[σ(0), σ(1), σ(2)]`, in the order used by
/// [`FiniteGroup::symmetric3`].
pub fn s3_permutations() -> Vec<Vec<usize>> {
    vec![
        vec![0, 1, 2],
        vec![1, 0, 2],
        vec![2, 1, 0],
        vec![0, 2, 1],
        vec![1, 2, 0],
        vec![2, 0, 1],
    ]
}

/// One of the supported compact groups.
#[derive(Clone, Debug, PartialEq)]
pub enum GroupSpec {
    Finite(FiniteGroup),
    /// U(1), elements are angles in `[0, 2π)`.
    Circle,
    /// SU(2), elements are 2x2 special-unitary matrices.
    Su2,
}

/// Element of a [`GroupSpec`].
#[derive(Clone, Debug, PartialEq)]
pub enum GroupElement {
    Finite(usize),
    Angle(f64),
    Su2(ComplexMatrix),
}

impl GroupElement {
    /// Validated SU(2) element: unitary and unit determinant to 1e-10.
    pub fn su2(u: ComplexMatrix) -> Result<Self> {
        if u.shape() != (2, 2) {
            return Err(Error::ShapeMismatch {
                expected: (2, 2),
                found: u.shape(),
            });
        }
        let det = u[(0, 0)] * u[(1, 1)] - u[(0, 1)] * u[(1, 0)];
        if u.unitarity_defect() > tolerance::STRUCTURAL || (det - 1.0).norm() > tolerance::STRUCTURAL {
            return Err(Error::InvalidGroup("matrix is not in SU(2)".into()));
        }
        Ok(Self::Su2(u))
    }

    /// `exp(-i t/2 n·σ) = cos(t/2) I - i sin(t/2) n·σ` for a unit axis `n`.
    pub fn su2_axis_angle(axis: [f64; 3], angle: f64) -> Self {
        let norm = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
        let [x, y, z] = if norm > 0.0 {
            [axis[0] / norm, axis[1] / norm, axis[2] / norm]
        } else {
            [0.0, 0.0, 1.0]
        };
        let (s, c) = (angle / 2.0).sin_cos();
        Self::Su2(su2_from_quaternion(c, s * x, s * y, s * z))
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::Finite(_) => "finite",
            Self::Angle(_) => "circle",
            Self::Su2(_) => "su2",
        }
    }
}

/// Unit quaternion `w + x i + y j + z k` as `[[w - iz, -y - ix], [y - ix, w + iz]]`.
fn su2_from_quaternion(w: f64, x: f64, y: f64, z: f64) -> ComplexMatrix {
    ComplexMatrix::from_rows(&[
        vec![Complex64::new(w, -z), Complex64::new(-y, -x)],
        vec![Complex64::new(y, -x), Complex64::new(w, z)],
    ])
    .expect("2x2 from finite parts")
}

/// Nearest SU(2) matrix (Frobenius) to an arbitrary 2x2 matrix.
pub fn project_su2(m: &ComplexMatrix) -> ComplexMatrix {
    let alpha = (m[(0, 0)] + m[(1, 1)].conj()) * 0.5;
    let beta = (m[(1, 0)] - m[(0, 1)].conj()) * 0.5;
    let norm = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
    let (a, b) = if norm > 0.0 {
        (alpha / norm, beta / norm)
    } else {
        (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
    };
    ComplexMatrix::from_rows(&[vec![a, -b.conj()], vec![b, a.conj()]]).expect("finite entries")
}

fn su2_drift(u: &ComplexMatrix) -> f64 {
    let det = u[(0, 0)] * u[(1, 1)] - u[(0, 1)] * u[(1, 0)];
    u.unitarity_defect().max((det - 1.0).norm())
}

impl GroupSpec {
    pub fn z2() -> Self {
        Self::Finite(FiniteGroup::cyclic(2).expect("Z2"))
    }

    pub fn z3() -> Self {
        Self::Finite(FiniteGroup::cyclic(3).expect("Z3"))
    }

    pub fn s3() -> Self {
        Self::Finite(FiniteGroup::symmetric3())
    }

    /// Builtin groups by name: z2, z3, s3, circle, su2, or zN for cyclic groups.
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "z2" => Some(Self::z2()),
            "z3" => Some(Self::z3()),
            "s3" => Some(Self::s3()),
            "circle" | "u1" => Some(Self::Circle),
            "su2" => Some(Self::Su2),
            _ => name
                .strip_prefix('z')
                .and_then(|n| n.parse().ok())
                .and_then(|n| FiniteGroup::cyclic(n).ok())
                .map(Self::Finite),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::Finite(_) => "finite",
            Self::Circle => "circle",
            Self::Su2 => "su2",
        }
    }

    pub fn as_finite(&self) -> Option<&FiniteGroup> {
        match self {
            Self::Finite(g) => Some(g),
            _ => None,
        }
    }

    /// Checks that `g` is an element of this group.
    pub fn check(&self, g: &GroupElement) -> Result<()> {
        match (self, g) {
            (Self::Finite(f), GroupElement::Finite(i)) if *i < f.order() => Ok(()),
            (Self::Circle, GroupElement::Angle(t)) if t.is_finite() => Ok(()),
            (Self::Su2, GroupElement::Su2(u)) if u.shape() == (2, 2) => Ok(()),
            _ => Err(Error::KindMismatch),
        }
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            Self::Finite(f) => GroupElement::Finite(f.identity()),
            Self::Circle => GroupElement::Angle(0.0),
            Self::Su2 => GroupElement::Su2(ComplexMatrix::identity(2)),
        }
    }

    /// Group product; SU(2) results are re-projected onto the group when the
    /// unitarity drift exceeds [`tolerance::SU2_DRIFT`].
    pub fn multiply(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        Ok(match (self, g, h) {
            (Self::Finite(f), GroupElement::Finite(a), GroupElement::Finite(b)) => {
                GroupElement::Finite(f.mul(*a, *b))
            }
            (Self::Circle, GroupElement::Angle(a), GroupElement::Angle(b)) => {
                GroupElement::Angle((a + b).rem_euclid(TAU))
            }
            (Self::Su2, GroupElement::Su2(a), GroupElement::Su2(b)) => {
                let p = a * b;
                if su2_drift(&p) > tolerance::SU2_DRIFT {
                    GroupElement::Su2(project_su2(&p))
                } else {
                    GroupElement::Su2(p)
                }
            }
            _ => unreachable!("kinds checked above"),
        })
    }

    pub fn inverse(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        Ok(match (self, g) {
            (Self::Finite(f), GroupElement::Finite(a)) => GroupElement::Finite(f.inv(*a)),
            (Self::Circle, GroupElement::Angle(a)) => GroupElement::Angle((-a).rem_euclid(TAU)),
            (Self::Su2, GroupElement::Su2(u)) => GroupElement::Su2(u.adjoint()),
            _ => unreachable!("kinds checked above"),
        })
    }

    /// All elements of a finite group; `count` Haar-random elements otherwise.
    pub fn enumerate_or_sample(&self, count: usize, seed: u64) -> Vec<GroupElement> {
        match self {
            Self::Finite(f) => (0..f.order()).map(GroupElement::Finite).collect(),
            _ => self.sample(count, seed),
        }
    }

    /// `count` Haar-distributed random elements from a seeded generator.
    pub fn sample(&self, count: usize, seed: u64) -> Vec<GroupElement> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| match self {
                Self::Finite(f) => GroupElement::Finite(rng.gen_range(0..f.order())),
                Self::Circle => GroupElement::Angle(rng.gen_range(0.0..TAU)),
                Self::Su2 => {
                    // Uniform unit quaternion via normalized Gaussian 4-vector (Box-Muller).
                    let mut q = [0.0f64; 4];
                    for pair in q.chunks_mut(2) {
                        let u1: f64 = 1.0 - rng.gen::<f64>();
                        let u2: f64 = rng.gen();
                        let r = (-2.0 * u1.ln()).sqrt();
                        pair[0] = r * (TAU * u2).cos();
                        pair[1] = r * (TAU * u2).sin();
                    }
                    let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
                    GroupElement::Su2(su2_from_quaternion(q[0] / n, q[1] / n, q[2] / n, q[3] / n))
                }
            })
            .collect()
    }
}
