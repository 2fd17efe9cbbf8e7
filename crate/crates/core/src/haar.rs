//! Quadrature rules realizing the normalized invariant integral, plus an
//! audit harness for the six axioms it has to satisfy.
//!
//! * finite groups: uniform average over all elements (exact);
//! * circle: equispaced angles (exact for trigonometric polynomials of degree < N);
//! * SU(2): product rule in axis-angle coordinates, Gauss-Legendre in the class
//!   angle against the density `sin²(t/2)/π`, times a sphere rule for the axis.
//!
//! All sums are correctly rounded, so a rule whose node set is permuted by a
//! group translation integrates to bit-identical results.

use std::collections::hash_map::DefaultHasher;
use std::f64::consts::{PI, TAU};
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};
use crate::linalg::{ComplexMatrix, ExactSum};

/// Normalized quadrature rule on a compact group.
#[derive(Clone, Debug)]
pub struct HaarRule {
    group: Arc<GroupSpec>,
    nodes: Vec<GroupElement>,
    weights: Vec<f64>,
    resolution: usize,
    uniform: bool,
    fingerprint: u64,
}

/// Gauss-Legendre nodes (ascending) and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p1, mut p2) = (1.0, 0.0);
            for j in 1..=n {
                let p3 = p2;
                p2 = p1;
                p1 = ((2 * j - 1) as f64 * z * p2 - (j - 1) as f64 * p3) / j as f64;
            }
            dp = n as f64 * (z * p1 - p2) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() <= 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    (x, w)
}

impl HaarRule {
    /// Builds the rule for `group`. `resolution` is ignored for finite groups
    /// (all elements are nodes) but must still be at least 1.
    pub fn new(group: &GroupSpec, resolution: usize) -> Result<Self> {
        if resolution == 0 {
            return Err(Error::InvalidResolution(resolution));
        }
        let (nodes, weights) = match group {
            GroupSpec::Finite(f) => {
                let n = f.order();
                (
                    (0..n).map(GroupElement::Finite).collect(),
                    vec![1.0 / n as f64; n],
                )
            }
            GroupSpec::Circle => (
                (0..resolution)
                    .map(|k| GroupElement::Angle(TAU * k as f64 / resolution as f64))
                    .collect(),
                vec![1.0 / resolution as f64; resolution],
            ),
            GroupSpec::Su2 => su2_product_rule(resolution),
        };
        let uniform = weights.windows(2).all(|w| w[0] == w[1]);
        let mut h = DefaultHasher::new();
        group.kind_name().hash(&mut h);
        if let Some(f) = group.as_finite() {
            f.mult_table().hash(&mut h);
        }
        resolution.hash(&mut h);
        nodes.len().hash(&mut h);
        Ok(Self {
            group: Arc::new(group.clone()),
            nodes,
            weights,
            resolution,
            uniform,
            fingerprint: h.finish(),
        })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn nodes(&self) -> &[GroupElement] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Identifies the rule (group kind, table, resolution) for mismatch checks.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// Integral of pre-evaluated node values (one per node, in node order).
    pub fn integrate_values(&self, values: &[Complex64]) -> Result<Complex64> {
        if values.len() != self.nodes.len() {
            return Err(Error::DimensionMismatch {
                expected: self.nodes.len(),
                found: values.len(),
            });
        }
        let mut re = ExactSum::new();
        let mut im = ExactSum::new();
        for (k, (v, w)) in values.iter().zip(&self.weights).enumerate() {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::EvaluationFailure { node: k });
            }
            if self.uniform {
                re.add(v.re);
                im.add(v.im);
            } else {
                re.add(w * v.re);
                im.add(w * v.im);
            }
        }
        Ok(self.finish(re.value(), im.value()))
    }

    fn finish(&self, re: f64, im: f64) -> Complex64 {
        if self.uniform {
            let n = self.nodes.len() as f64;
            Complex64::new(re / n, im / n)
        } else {
            Complex64::new(re, im)
        }
    }

    /// `∫ f(x) dx`.
    pub fn integrate_scalar(&self, f: impl Fn(&GroupElement) -> Complex64) -> Result<Complex64> {
        let values: Vec<Complex64> = self.nodes.iter().map(f).collect();
        self.integrate_values(&values)
    }

    /// Entrywise `∫ F(x) dx` of a matrix-valued function of fixed shape.
    pub fn integrate_matrix(
        &self,
        f: impl Fn(&GroupElement) -> Result<ComplexMatrix>,
    ) -> Result<ComplexMatrix> {
        let mut shape = None;
        let mut acc: Vec<(ExactSum, ExactSum)> = Vec::new();
        for (k, (x, w)) in self.nodes.iter().zip(&self.weights).enumerate() {
            let m = f(x)?;
            match shape {
                None => {
                    shape = Some(m.shape());
                    acc = vec![(ExactSum::new(), ExactSum::new()); m.rows() * m.cols()];
                }
                Some(s) if s != m.shape() => {
                    return Err(Error::ShapeMismatch {
                        expected: s,
                        found: m.shape(),
                    })
                }
                _ => {}
            }
            if !m.is_finite() {
                return Err(Error::EvaluationFailure { node: k });
            }
            for ((re, im), z) in acc.iter_mut().zip(m.entries()) {
                if self.uniform {
                    re.add(z.re);
                    im.add(z.im);
                } else {
                    re.add(w * z.re);
                    im.add(w * z.im);
                }
            }
        }
        let (rows, cols) = shape.unwrap_or((0, 0));
        let entries = acc.iter().map(|(re, im)| self.finish(re.value(), im.value())).collect();
        ComplexMatrix::new(rows, cols, entries)
    }
}

/// Node/weight lists of the SU(2) product rule. Layout: class angle outermost,
/// then polar angle, then azimuth.
fn su2_product_rule(resolution: usize) -> (Vec<GroupElement>, Vec<f64>) {
    let (tx, tw) = gauss_legendre(resolution);
    let (px, pw) = gauss_legendre(resolution);
    let azimuths = 2 * resolution;
    let mut nodes = Vec::with_capacity(resolution * resolution * azimuths);
    let mut weights = Vec::with_capacity(nodes.capacity());
    for (&u, &wu) in tx.iter().zip(&tw) {
        // map [-1, 1] -> [0, 2π]
        let t = PI * (u + 1.0);
        let class_weight = PI * wu * (t / 2.0).sin().powi(2) / PI;
        for (&c, &wc) in px.iter().zip(&pw) {
            let s = (1.0 - c * c).sqrt();
            for a in 0..azimuths {
                let phi = TAU * a as f64 / azimuths as f64;
                let axis = [s * phi.cos(), s * phi.sin(), c];
                nodes.push(GroupElement::su2_axis_angle(axis, t));
                weights.push(class_weight * (wc / 2.0) / azimuths as f64);
            }
        }
    }
    let mut total = ExactSum::new();
    for &w in &weights {
        total.add(w);
    }
    let total = total.value();
    for w in &mut weights {
        *w /= total;
    }
    (nodes, weights)
}

/// Named scalar test function for the axiom audit.
pub struct Probe<'a> {
    pub name: String,
    pub f: Box<dyn Fn(&GroupElement) -> Complex64 + 'a>,
}

impl<'a> Probe<'a> {
    pub fn new(name: impl Into<String>, f: impl Fn(&GroupElement) -> Complex64 + 'a) -> Self {
        Self {
            name: name.into(),
            f: Box::new(f),
        }
    }
}

/// Residuals of the invariant-integral axioms on a finite probe/shift set.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomAuditReport {
    /// (i) max |∫αf − α∫f| over α ∈ {2, i, −1}.
    pub homogeneity: f64,
    /// (ii) max |∫(f+g) − ∫f − ∫g| over probe pairs.
    pub additivity: f64,
    /// (iii) min ∫|f|² over probes; positive for a positive functional.
    pub positivity_margin: f64,
    /// (iv) |∫1 − 1|.
    pub normalization: f64,
    /// (v) max |∫f(ax) − ∫f(x)|.
    pub left_invariance: f64,
    /// (v) max |∫f(xa) − ∫f(x)|.
    pub right_invariance: f64,
    /// (vi) max |∫f(x⁻¹) − ∫f(x)|.
    pub inversion: f64,
    pub probes: Vec<String>,
    pub shifts: Vec<String>,
    pub node_count: usize,
    pub resolution: usize,
}

impl AxiomAuditReport {
    /// Max of the left and right translation residuals.
    pub fn translation(&self) -> f64 {
        self.left_invariance.max(self.right_invariance)
    }

    /// Largest residual among the axioms that should vanish (all but positivity).
    pub fn max_residual(&self) -> f64 {
        [
            self.homogeneity,
            self.additivity,
            self.normalization,
            self.left_invariance,
            self.right_invariance,
            self.inversion,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

pub fn describe_element(g: &GroupElement) -> String {
    match g {
        GroupElement::Finite(i) => format!("#{i}"),
        GroupElement::Angle(t) => format!("angle {t}"),
        GroupElement::Su2(u) => format!(
            "su2 [[{}, {}], [{}, {}]]",
            u[(0, 0)],
            u[(0, 1)],
            u[(1, 0)],
            u[(1, 1)]
        ),
    }
}

/// Evaluates axioms (i) to (vi) of the invariant integral for `rule` on the
/// supplied probes and shift elements.
pub fn axiom_audit(rule: &HaarRule, probes: &[Probe<'_>], shifts: &[GroupElement]) -> Result<AxiomAuditReport> {
    if probes.is_empty() {
        return Err(Error::EmptyInput("probes"));
    }
    if shifts.is_empty() {
        return Err(Error::EmptyInput("shifts"));
    }
    let group = rule.group();
    let nodes = rule.nodes();
    let values: Vec<Vec<Complex64>> = probes
        .iter()
        .map(|p| nodes.iter().map(|x| (p.f)(x)).collect())
        .collect();
    let integrals: Vec<Complex64> = values
        .iter()
        .map(|v| rule.integrate_values(v))
        .collect::<Result<_>>()?;

    let mut homogeneity: f64 = 0.0;
    for alpha in [Complex64::new(2.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(-1.0, 0.0)] {
        for (v, int) in values.iter().zip(&integrals) {
            let scaled: Vec<Complex64> = v.iter().map(|z| alpha * z).collect();
            homogeneity = homogeneity.max((rule.integrate_values(&scaled)? - alpha * int).norm());
        }
    }

    let mut additivity: f64 = 0.0;
    for i in 0..values.len() {
        for j in i..values.len() {
            let sum: Vec<Complex64> = values[i].iter().zip(&values[j]).map(|(a, b)| a + b).collect();
            let lhs = rule.integrate_values(&sum)?;
            additivity = additivity.max((lhs - integrals[i] - integrals[j]).norm());
        }
    }

    let mut positivity_margin = f64::INFINITY;
    for v in &values {
        let sq: Vec<Complex64> = v.iter().map(|z| Complex64::new(z.norm_sqr(), 0.0)).collect();
        positivity_margin = positivity_margin.min(rule.integrate_values(&sq)?.re);
    }

    let ones = vec![Complex64::new(1.0, 0.0); nodes.len()];
    let normalization = (rule.integrate_values(&ones)? - 1.0).norm();

    let mut left_invariance: f64 = 0.0;
    let mut right_invariance: f64 = 0.0;
    for a in shifts {
        let left: Vec<GroupElement> = nodes.iter().map(|x| group.multiply(a, x)).collect::<Result<_>>()?;
        let right: Vec<GroupElement> = nodes.iter().map(|x| group.multiply(x, a)).collect::<Result<_>>()?;
        for (p, int) in probes.iter().zip(&integrals) {
            let l: Vec<Complex64> = left.iter().map(|x| (p.f)(x)).collect();
            let r: Vec<Complex64> = right.iter().map(|x| (p.f)(x)).collect();
            left_invariance = left_invariance.max((rule.integrate_values(&l)? - int).norm());
            right_invariance = right_invariance.max((rule.integrate_values(&r)? - int).norm());
        }
    }

    let inverted: Vec<GroupElement> = nodes.iter().map(|x| group.inverse(x)).collect::<Result<_>>()?;
    let mut inversion: f64 = 0.0;
    for (p, int) in probes.iter().zip(&integrals) {
        let v: Vec<Complex64> = inverted.iter().map(|x| (p.f)(x)).collect();
        inversion = inversion.max((rule.integrate_values(&v)? - int).norm());
    }

    Ok(AxiomAuditReport {
        homogeneity,
        additivity,
        positivity_margin,
        normalization,
        left_invariance,
        right_invariance,
        inversion,
        probes: probes.iter().map(|p| p.name.clone()).collect(),
        shifts: shifts.iter().map(describe_element).collect(),
        node_count: nodes.len(),
        resolution: rule.resolution(),
    })
}
