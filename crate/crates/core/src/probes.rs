//! Standard probe functions and shift elements for auditing quadrature rules.

use num_complex::Complex64;

use crate::group::{GroupElement, GroupSpec};
use crate::haar::Probe;
use crate::rep::Representation;

/// Highest circle frequency in the standard probe set.
pub const CIRCLE_MAX_FREQUENCY: i64 = 8;

/// Finite groups: element indicators. Circle: `e^{ikθ}` for `|k| <= 8` plus
/// a few real mixtures. SU(2): all matrix entries of spin 1/2 and spin 1.
pub fn standard_probes(group: &GroupSpec) -> Vec<Probe<'static>> {
    match group {
        GroupSpec::Finite(f) => (0..f.order())
            .map(|h| {
                Probe::new(format!("indicator[{}]", f.labels()[h]), move |x| match x {
                    GroupElement::Finite(g) if *g == h => Complex64::new(1.0, 0.0),
                    _ => Complex64::new(0.0, 0.0),
                })
            })
            .collect(),
        GroupSpec::Circle => {
            let mut probes: Vec<Probe<'static>> = (-CIRCLE_MAX_FREQUENCY..=CIRCLE_MAX_FREQUENCY)
                .map(|k| {
                    Probe::new(format!("exp({k}i.theta)"), move |x| match x {
                        GroupElement::Angle(t) => Complex64::from_polar(1.0, k as f64 * t),
                        _ => Complex64::new(f64::NAN, 0.0),
                    })
                })
                .collect();
            probes.push(Probe::new("2+cos(theta)", |x| match x {
                GroupElement::Angle(t) => Complex64::new(2.0 + t.cos(), 0.0),
                _ => Complex64::new(f64::NAN, 0.0),
            }));
            probes.push(Probe::new("cos(3theta)-0.5sin(8theta)", |x| match x {
                GroupElement::Angle(t) => Complex64::new((3.0 * t).cos() - 0.5 * (8.0 * t).sin(), 0.0),
                _ => Complex64::new(f64::NAN, 0.0),
            }));
            probes
        }
        GroupSpec::Su2 => {
            let mut probes = Vec::new();
            for two_j in [1u32, 2] {
                let rep = Representation::spin(two_j).expect("in range");
                let r = rep.degree();
                for i in 0..r {
                    for j in 0..r {
                        let rep = rep.clone();
                        probes.push(Probe::new(format!("spin{two_j}/2[{i},{j}]"), move |x| match rep.evaluate(x) {
                            Ok(m) => m[(i, j)],
                            Err(_) => Complex64::new(f64::NAN, 0.0),
                        }));
                    }
                }
            }
            probes
        }
    }
}

/// Finite groups: every element. Circle and SU(2): a fixed handful of
/// non-trivial elements.
pub fn standard_shifts(group: &GroupSpec) -> Vec<GroupElement> {
    match group {
        GroupSpec::Finite(_) => group.enumerate_or_sample(0, 0),
        GroupSpec::Circle => [0.3, 1.7, std::f64::consts::FRAC_PI_2, 4.1]
            .into_iter()
            .map(GroupElement::Angle)
            .collect(),
        GroupSpec::Su2 => vec![
            GroupElement::su2_axis_angle([0.0, 0.0, 1.0], 0.9),
            GroupElement::su2_axis_angle([1.0, 0.0, 0.0], 2.3),
            GroupElement::su2_axis_angle([0.48, -0.6, 0.64], 4.0),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::haar::{axiom_audit, HaarRule};

    #[test]
    fn probe_counts() {
        assert_eq!(standard_probes(&GroupSpec::s3()).len(), 6);
        assert_eq!(standard_probes(&GroupSpec::Circle).len(), 19);
        assert_eq!(standard_probes(&GroupSpec::Su2).len(), 13);
        assert_eq!(standard_shifts(&GroupSpec::z3()).len(), 3);
    }

    #[test]
    fn circle_audit_at_default_resolution() {
        let rule = HaarRule::new(&GroupSpec::Circle, 64).unwrap();
        let g = GroupSpec::Circle;
        let report = axiom_audit(&rule, &standard_probes(&g), &standard_shifts(&g)).unwrap();
        assert!(report.max_residual() <= 1e-12, "{report:?}");
    }
}
