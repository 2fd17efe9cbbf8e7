//! End-to-end acceptance checks. Runs without the libtest harness so the
//! per-criterion lines are always printed.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use repkit::haar::axiom_audit;
use repkit::io::{parse_group, parse_representation};
use repkit::lie::{su2_standard, Classification, LieAlgebraSpec};
use repkit::probes::{standard_probes, standard_shifts};
use repkit::rep::builtin;
use repkit::schur::{
    averaged_intertwiner, commutant, decompose, matrix_element_audit, orthogonality_audit,
};
use repkit::unitarize::{averaged_form, specialness_report, unitarize};
use repkit::{ComplexMatrix, GroupElement, GroupSpec, HaarRule, Representation};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn load_group(name: &str) -> GroupSpec {
    parse_group(&std::fs::read_to_string(data(name)).unwrap()).unwrap()
}

fn load_rep(name: &str, group: &GroupSpec) -> Representation {
    parse_representation(&std::fs::read_to_string(data(name)).unwrap(), group).unwrap()
}

fn rule(group: &GroupSpec, resolution: usize) -> HaarRule {
    HaarRule::new(group, resolution).unwrap()
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

/// A random matrix with a dominant diagonal, so it is safely invertible.
fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    &random_matrix(rng, n, n) + &ComplexMatrix::identity(n).scale_real(1.5)
}

fn criterion_1() -> Outcome {
    // ad matrices built by hand from 2x2 products, with coordinates read off
    // through the orthonormality of the basis under -tr(XY).
    let basis = su2_standard().basis;
    let n = basis.len();
    let coord = |k: usize, z: &ComplexMatrix| -> f64 {
        let mut t = c(0.0, 0.0);
        for i in 0..2 {
            for j in 0..2 {
                t += basis[k][(i, j)] * z[(j, i)];
            }
        }
        -t.re
    };
    let ad: Vec<Vec<Vec<f64>>> = (0..n)
        .map(|a| {
            let mut m = vec![vec![0.0; n]; n];
            for b in 0..n {
                let br = &(&basis[a] * &basis[b]) - &(&basis[b] * &basis[a]);
                for k in 0..n {
                    m[k][b] = coord(k, &br);
                }
            }
            m
        })
        .collect();
    let mut oracle = [[0.0; 3]; 3];
    for a in 0..n {
        for b in 0..n {
            let mut t = 0.0;
            for i in 0..n {
                for k in 0..n {
                    t += ad[a][i][k] * ad[b][k][i];
                }
            }
            oracle[a][b] = -t;
        }
    }

    let alg = su2_standard();
    let mut defining = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            let e = if i == j { 1.0 } else { 0.0 };
            defining = defining.max((alg.gram_defining[(i, j)] - e).abs());
        }
    }
    ensure(defining <= 1e-14, format!("-tr(XY) gram off identity by {defining:e}"))?;

    let mut worst = 0.0f64;
    for spec in [alg.structure_constants().map_err(|e| e.to_string())?, LieAlgebraSpec::su2()] {
        let gram = spec.trace_form().map_err(|e| e.to_string())?.gram;
        for i in 0..3 {
            for j in 0..3 {
                let e = if i == j { 4.0 } else { 0.0 };
                worst = worst.max((gram[(i, j)] - e).abs());
                worst = worst.max((gram[(i, j)] - oracle[i][j]).abs());
            }
        }
    }
    ensure(worst <= 1e-12, format!("trace-form gram off diag(4,4,4) by {worst:e}"))?;
    Ok(format!("defining gram err {defining:.1e}, adjoint gram err {worst:.1e}"))
}

fn criterion_2() -> Outcome {
    let cases = [
        (LieAlgebraSpec::su2(), Classification::CompactSemisimple, 0),
        (LieAlgebraSpec::sl2_real(), Classification::NotCompactType, 0),
        (LieAlgebraSpec::abelian(3), Classification::CompactWithCenter, 3),
    ];
    for (alg, expected, center) in cases {
        let tf = alg.trace_form().map_err(|e| e.to_string())?;
        ensure(tf.classification == expected, format!("got {:?}, expected {expected:?}", tf.classification))?;
        if expected == Classification::CompactWithCenter {
            ensure(tf.center_basis.len() == center, format!("center dimension {}", tf.center_basis.len()))?;
        }
    }
    Ok("su(2), sl(2,R), R^3 classified as expected".into())
}

fn criterion_3() -> Outcome {
    let mut notes = Vec::new();
    for name in ["z2", "z3", "s3"] {
        let g = GroupSpec::builtin(name).unwrap();
        let r = axiom_audit(&rule(&g, 1), &standard_probes(&g), &standard_shifts(&g)).map_err(|e| e.to_string())?;
        ensure(r.max_residual() == 0.0 && r.positivity_margin > 0.0, format!("{name}: residual {:e}", r.max_residual()))?;
    }
    notes.push("finite residuals 0".to_string());

    let g = GroupSpec::Circle;
    let r = axiom_audit(&rule(&g, 64), &standard_probes(&g), &standard_shifts(&g)).map_err(|e| e.to_string())?;
    ensure(r.max_residual() <= 1e-12, format!("circle residual {:e}", r.max_residual()))?;
    notes.push(format!("circle {:.1e}", r.max_residual()));

    let g = GroupSpec::Su2;
    let fine = axiom_audit(&rule(&g, 16), &standard_probes(&g), &standard_shifts(&g)).map_err(|e| e.to_string())?;
    let coarse = axiom_audit(&rule(&g, 8), &standard_probes(&g), &standard_shifts(&g)).map_err(|e| e.to_string())?;
    ensure(fine.max_residual() <= 1e-6, format!("su2 residual {:e}", fine.max_residual()))?;
    ensure(
        coarse.translation() > fine.translation(),
        format!("translation residual {:e} at 8 vs {:e} at 16", coarse.translation(), fine.translation()),
    )?;
    notes.push(format!("su2@16 {:.1e}, (v)@8 {:.1e} > (v)@16 {:.1e}", fine.max_residual(), coarse.translation(), fine.translation()));
    Ok(notes.join(", "))
}

fn unitary_cases(rng: &mut ChaCha8Rng) -> Vec<(Representation, HaarRule, f64)> {
    let z3 = GroupSpec::z3();
    let s3 = GroupSpec::s3();
    let mut cases = Vec::new();
    for k in 0..5 {
        let rep = match k {
            0 => builtin::regular(&z3).unwrap(),
            _ => Representation::direct_sum_all(
                &(0..k + 1)
                    .map(|i| builtin::cyclic_character(3, ((i * k) % 3) as i64).unwrap())
                    .collect::<Vec<_>>(),
            )
            .unwrap(),
        };
        cases.push((rep, rule(&z3, 1), 1e-8));
    }
    let s3_reps = [
        builtin::regular(&s3).unwrap(),
        builtin::s3_permutation(),
        Representation::direct_sum(&builtin::s3_sign(), &builtin::s3_standard()).unwrap(),
        Representation::direct_sum(&builtin::s3_standard(), &builtin::s3_standard()).unwrap(),
        Representation::direct_sum_all(&[Representation::trivial(&s3), builtin::s3_sign(), builtin::s3_standard()]).unwrap(),
    ];
    for rep in s3_reps {
        cases.push((rep, rule(&s3, 1), 1e-8));
    }
    for _ in 0..5 {
        let count = rng.gen_range(2..5);
        let weights = (0..count).map(|_| rng.gen_range(-4..=4)).collect();
        cases.push((Representation::circle_weights(weights).unwrap(), rule(&GroupSpec::Circle, 64), 1e-8));
    }
    let spin_sets: [&[u32]; 5] = [&[1], &[2], &[1, 2], &[0, 1], &[2, 1, 0]];
    for set in spin_sets {
        let parts: Vec<_> = set.iter().map(|&t| Representation::spin(t).unwrap()).collect();
        cases.push((Representation::direct_sum_all(&parts).unwrap(), rule(&GroupSpec::Su2, 16), 1e-5));
    }
    cases
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let cases = unitary_cases(&mut rng);
    let mut worst_unitary = 0.0f64;
    let mut worst_character = 0.0f64;
    for (i, (rep, rule, tol)) in cases.iter().enumerate() {
        let a = random_invertible(&mut rng, rep.degree());
        let mixed = rep.conjugate(&a).map_err(|e| e.to_string())?;
        let u = unitarize(&mixed, rule).map_err(|e| format!("case {i}: {e}"))?;
        let chi = mixed.character(rule).unwrap().max_distance(&u.unitary_rep.character(rule).unwrap());
        ensure(u.unitarity_residual <= *tol, format!("case {i}: unitarity {:e}", u.unitarity_residual))?;
        ensure(chi <= 1e-9, format!("case {i}: character change {chi:e}"))?;
        worst_unitary = worst_unitary.max(u.unitarity_residual);
        worst_character = worst_character.max(chi);
    }

    // Z2 acting by the involution [[0,2],[1/2,0]]: the averaged form is
    // (I + M*M)/2 = diag(5/8, 5/2) and its Cholesky factor is diagonal.
    let z2 = GroupSpec::z2();
    let m = ComplexMatrix::from_real_rows(&[&[0.0, 2.0], &[0.5, 0.0]]).unwrap();
    let rep = Representation::finite_table(&z2, vec![ComplexMatrix::identity(2), m]).unwrap();
    let r = rule(&z2, 1);
    let h = ComplexMatrix::from_real_rows(&[&[5.0 / 8.0, 0.0], &[0.0, 2.5]]).unwrap();
    let a = ComplexMatrix::from_real_rows(&[&[(5.0f64 / 8.0).sqrt(), 0.0], &[0.0, 2.5f64.sqrt()]]).unwrap();
    let form = averaged_form(&rep, &r).map_err(|e| e.to_string())?;
    let u = unitarize(&rep, &r).map_err(|e| e.to_string())?;
    let hand = form.form.gram.max_abs_diff(&h).max(u.a.max_abs_diff(&a));
    ensure(hand <= 1e-12, format!("Z2 hand oracle off by {hand:e}"))?;
    Ok(format!(
        "{} cases, unitarity <= {worst_unitary:.1e}, character change <= {worst_character:.1e}, hand oracle {hand:.1e}",
        cases.len()
    ))
}

fn criterion_5() -> Outcome {
    let s3 = GroupSpec::s3();
    let s3_irreps = [Representation::trivial(&s3), builtin::s3_sign(), builtin::s3_standard()];
    let mut pairs = vec![
        (
            Representation::circle_weights(vec![1]).unwrap(),
            Representation::circle_weights(vec![2]).unwrap(),
            rule(&GroupSpec::Circle, 64),
            1e-10,
        ),
        (Representation::spin(1).unwrap(), Representation::spin(2).unwrap(), rule(&GroupSpec::Su2, 16), 1e-6),
    ];
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                pairs.push((s3_irreps[i].clone(), s3_irreps[j].clone(), rule(&s3, 1), 1e-10));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for (phi, psi, r, tol) in &pairs {
        for _ in 0..10 {
            let a = random_matrix(&mut rng, phi.degree(), psi.degree());
            let t = averaged_intertwiner(phi, psi, &a, r).map_err(|e| e.to_string())?.t;
            ensure(t.max_abs() <= *tol, format!("intertwiner of size {:e}", t.max_abs()))?;
            worst = worst.max(t.max_abs());
        }
    }
    Ok(format!("{} pairs x 10 seeds, max |T| {worst:.1e}", pairs.len()))
}

/// Dimension of `{T : ρ(x)T = Tρ(x) for every node x}`, found by Gram-Schmidt
/// on the rows of the stacked system `(ρ ⊗ I − I ⊗ ρᵀ) vec T = 0`.
fn brute_force_commutant_dimension(rep: &Representation, rule: &HaarRule) -> usize {
    let r = rep.degree();
    let n = r * r;
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    for x in rule.nodes() {
        let m = rep.evaluate(x).unwrap();
        for i in 0..r {
            for j in 0..r {
                let mut row = vec![c(0.0, 0.0); n];
                for k in 0..r {
                    row[k * r + j] += m[(i, k)];
                    row[i * r + k] -= m[(k, j)];
                }
                let norm0 = row.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                if norm0 == 0.0 {
                    continue;
                }
                for _ in 0..2 {
                    for b in &basis {
                        let p: Complex64 = b.iter().zip(&row).map(|(u, v)| u.conj() * v).sum();
                        for (v, u) in row.iter_mut().zip(b) {
                            *v -= p * u;
                        }
                    }
                }
                let norm = row.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                if norm > 1e-8 * norm0 {
                    basis.push(row.iter().map(|z| z / norm).collect());
                }
            }
        }
        if basis.len() == n {
            break;
        }
    }
    n - basis.len()
}

fn criterion_6() -> Outcome {
    let s3 = GroupSpec::s3();
    let s3r = rule(&s3, 1);
    let circle = rule(&GroupSpec::Circle, 64);
    let su2 = rule(&GroupSpec::Su2, 16);
    let irreps = [
        (Representation::trivial(&s3), &s3r, 1e-10),
        (builtin::s3_sign(), &s3r, 1e-10),
        (builtin::s3_standard(), &s3r, 1e-10),
        (Representation::circle_weights(vec![1]).unwrap(), &circle, 1e-10),
        (Representation::spin(1).unwrap(), &su2, 1e-6),
        (Representation::spin(2).unwrap(), &su2, 1e-6),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    for (rep, r, tol) in &irreps {
        for _ in 0..10 {
            let a = random_matrix(&mut rng, rep.degree(), rep.degree());
            let t = averaged_intertwiner(rep, rep, &a, r).map_err(|e| e.to_string())?.t;
            let scalar = ComplexMatrix::identity(rep.degree()).scale(a.trace() / rep.degree() as f64);
            let err = t.max_abs_diff(&scalar);
            ensure(err <= *tol, format!("self-intertwiner off scalar by {err:e}"))?;
            worst = worst.max(err);
        }
        let dim = commutant(rep, r).map_err(|e| e.to_string())?.dimension;
        ensure(dim == 1, format!("irreducible commutant dimension {dim}"))?;
        ensure(brute_force_commutant_dimension(rep, r) == 1, "oracle disagrees on irreducible")?;
    }

    let sums = [
        (builtin::s3_standard(), builtin::s3_standard(), &s3r, 4),
        (builtin::s3_standard(), builtin::s3_sign(), &s3r, 2),
        (
            Representation::circle_weights(vec![1]).unwrap(),
            Representation::circle_weights(vec![1]).unwrap(),
            &circle,
            4,
        ),
        (
            Representation::circle_weights(vec![1]).unwrap(),
            Representation::circle_weights(vec![2]).unwrap(),
            &circle,
            2,
        ),
        (Representation::spin(1).unwrap(), Representation::spin(1).unwrap(), &su2, 4),
        (Representation::spin(1).unwrap(), Representation::spin(2).unwrap(), &su2, 2),
    ];
    for (a, b, r, expected) in &sums {
        let rep = Representation::direct_sum(a, b).unwrap();
        let dim = commutant(&rep, r).map_err(|e| e.to_string())?.dimension;
        let oracle = brute_force_commutant_dimension(&rep, r);
        ensure(
            dim == *expected && oracle == *expected,
            format!("sum of degrees {}+{}: commutant {dim}, oracle {oracle}, expected {expected}", a.degree(), b.degree()),
        )?;
    }
    Ok(format!("scalar err <= {worst:.1e}, commutant dims match oracle on {} sums", sums.len()))
}

fn criterion_7() -> Outcome {
    let s3 = GroupSpec::s3();
    let sets = [
        (
            (0..3).map(|w| Representation::circle_weights(vec![w]).unwrap()).collect::<Vec<_>>(),
            rule(&GroupSpec::Circle, 64),
            1e-12,
            "circle",
        ),
        (
            vec![Representation::trivial(&s3), builtin::s3_sign(), builtin::s3_standard()],
            rule(&s3, 1),
            1e-12,
            "s3",
        ),
        ((0..3).map(|t| Representation::spin(t).unwrap()).collect(), rule(&GroupSpec::Su2, 16), 1e-6, "su2"),
    ];
    let mut notes = Vec::new();
    for (reps, r, tol, name) in &sets {
        let report = orthogonality_audit(reps, r).map_err(|e| e.to_string())?;
        ensure(report.max_residual <= *tol, format!("{name}: residual {:e}", report.max_residual))?;
        notes.push(format!("{name} {:.1e}", report.max_residual));
    }

    // S3 table in element order: identity, three transpositions, two 3-cycles.
    let table = [[1.0, 1.0, 1.0, 1.0, 1.0, 1.0], [1.0, -1.0, -1.0, -1.0, 1.0, 1.0], [2.0, 0.0, 0.0, 0.0, -1.0, -1.0]];
    let report = orthogonality_audit(&sets[1].0, &sets[1].1).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            let hand: f64 = (0..6).map(|g| table[i][g] * table[j][g]).sum::<f64>() / 6.0;
            let err = (report.gram[i][j] - c(hand, 0.0)).norm();
            ensure(err <= 1e-12, format!("S3 gram ({i},{j}) differs from hand value by {err:e}"))?;
        }
    }
    Ok(notes.join(", "))
}

fn criterion_8() -> Outcome {
    let half = matrix_element_audit(&Representation::spin(1).unwrap(), &rule(&GroupSpec::Su2, 16)).map_err(|e| e.to_string())?;
    ensure(half.max_deviation <= 1e-8, format!("spin 1/2 deviation {:e}", half.max_deviation))?;
    let s3 = GroupSpec::s3();
    let std = builtin::s3_standard();
    let report = matrix_element_audit(&std, &rule(&s3, 1)).map_err(|e| e.to_string())?;
    ensure(report.max_deviation <= 1e-12, format!("S3 standard deviation {:e}", report.max_deviation))?;
    for d in half.diagonal.iter().chain(&report.diagonal) {
        ensure((d - 0.5).abs() <= 1e-8, format!("diagonal entry {d}"))?;
    }

    // Direct sum over the six elements as an independent check.
    let mats: Vec<_> = (0..6).map(|g| std.evaluate(&GroupElement::Finite(g)).unwrap()).collect();
    let mut worst = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    let avg: Complex64 = mats.iter().map(|m| m[(i, j)] * m[(k, l)].conj()).sum::<Complex64>() / 6.0;
                    let expected = if i == k && j == l { 0.5 } else { 0.0 };
                    worst = worst.max((avg - expected).norm());
                }
            }
        }
    }
    ensure(worst <= 1e-12, format!("hand S3 matrix-element average off by {worst:e}"))?;
    Ok(format!("spin 1/2 {:.1e}, S3 standard {:.1e}", half.max_deviation, report.max_deviation))
}

/// Characters of spin 1/2 and spin 1 from the trace of the SU(2) matrix.
fn su2_known_character(degree: usize, x: &GroupElement) -> Complex64 {
    let t = match x {
        GroupElement::Su2(u) => u.trace(),
        _ => unreachable!(),
    };
    match degree {
        2 => t,
        3 => t * t - 1.0,
        _ => unreachable!(),
    }
}

fn criterion_9() -> Outcome {
    let z2 = load_group("z2.json");
    let z2_rule = rule(&z2, 1);
    let rep = load_rep("z2_mixed.json", &z2);
    let d = decompose(&rep, &z2_rule).map_err(|e| e.to_string())?;
    let mut degrees = d.block_degrees.clone();
    degrees.sort();
    ensure(degrees == [1, 1, 1], format!("Z2 degrees {degrees:?}"))?;
    let known = [[c(1.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(-1.0, 0.0)]];
    let mut counts = [0; 2];
    for chi in &d.block_characters {
        let hit = known.iter().position(|k| chi.values.iter().zip(k).all(|(a, b)| (a - b).norm() <= 1e-8));
        let hit = hit.ok_or("Z2 block character is not an irreducible character")?;
        counts[hit] += 1;
    }
    ensure(counts == [1, 2], format!("Z2 multiplicities {counts:?}"))?;
    let sum_err = character_sum_error(&rep, &d.block_characters, &z2_rule);
    ensure(sum_err <= 1e-8, format!("Z2 character sum off by {sum_err:e}"))?;

    let su2_rule = rule(&GroupSpec::Su2, 16);
    let rep = load_rep("spin_half_plus_one_mixed.json", &GroupSpec::Su2);
    let d = decompose(&rep, &su2_rule).map_err(|e| e.to_string())?;
    let mut degrees = d.block_degrees.clone();
    degrees.sort();
    ensure(degrees == [2, 3], format!("spin degrees {degrees:?}"))?;
    for (deg, chi) in d.block_degrees.iter().zip(&d.block_characters) {
        let err = su2_rule
            .nodes()
            .iter()
            .zip(&chi.values)
            .map(|(x, v)| (v - su2_known_character(*deg, x)).norm())
            .fold(0.0, f64::max);
        ensure(err <= 1e-8, format!("degree {deg} block character off by {err:e}"))?;
    }
    let spin_err = character_sum_error(&rep, &d.block_characters, &su2_rule);
    ensure(spin_err <= 1e-8, format!("spin character sum off by {spin_err:e}"))?;
    Ok(format!("Z2 {{1,1,1}} sum err {sum_err:.1e}, spins {{2,3}} sum err {spin_err:.1e}"))
}

fn character_sum_error(rep: &Representation, blocks: &[repkit::Character], rule: &HaarRule) -> f64 {
    let input = rep.character(rule).unwrap();
    (0..input.values.len())
        .map(|i| {
            let total: Complex64 = blocks.iter().map(|b| b.values[i]).sum();
            (total - input.values[i]).norm()
        })
        .fold(0.0, f64::max)
}

fn cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_repkit")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_10() -> Outcome {
    let s3 = GroupSpec::s3();
    let s3r = rule(&s3, 1);
    let su2 = rule(&GroupSpec::Su2, 16);
    let circle = rule(&GroupSpec::Circle, 64);
    let irreducibles = [
        (Representation::trivial(&s3), &s3r),
        (builtin::s3_sign(), &s3r),
        (builtin::s3_standard(), &s3r),
        (Representation::circle_weights(vec![3]).unwrap(), &circle),
        (Representation::spin(0).unwrap(), &su2),
        (Representation::spin(1).unwrap(), &su2),
        (Representation::spin(2).unwrap(), &su2),
    ];
    for (rep, r) in &irreducibles {
        let d = specialness_report(rep, r).map_err(|e| e.to_string())?.d;
        ensure(d == 1, format!("degree {} irreducible has d = {d}", rep.degree()))?;
    }
    for (rho, r) in [(builtin::s3_standard(), &s3r), (Representation::spin(1).unwrap(), &su2)] {
        let d = specialness_report(&Representation::direct_sum(&rho, &rho).unwrap(), r).map_err(|e| e.to_string())?.d;
        ensure(d == 4, format!("rho + rho has d = {d}"))?;
    }

    let z2_mixed = data("z2_mixed.json").display().to_string();
    let z2 = data("z2.json").display().to_string();
    let spins = data("spin_half_plus_one_mixed.json").display().to_string();
    let s3_std = data("s3_standard.json").display().to_string();
    let s3_file = data("s3.json").display().to_string();
    let runs: Vec<Vec<&str>> = vec![
        vec!["irreducible", "--spin", "1"],
        vec!["irreducible", "--spin", "2"],
        vec!["irreducible", "--spin", "1", "--spin", "1"],
        vec!["irreducible", &s3_std, "--group", &s3_file],
        vec!["decompose", &z2_mixed, "--group", &z2],
        vec!["decompose", &spins, "--builtin", "su2"],
        vec!["unitarize", &z2_mixed, "--group", &z2],
        vec!["unitarize", "--spin", "2"],
    ];
    for args in &runs {
        let mut full = args.clone();
        full.extend(["--format", "json"]);
        let (code, first) = cli(&full);
        ensure(code == 0, format!("`{}` exited {code}", args.join(" ")))?;
        let (_, second) = cli(&full);
        ensure(first == second, format!("`{}` JSON differs between runs", args.join(" ")))?;
    }
    Ok(format!("d checks on {} irreducibles, {} CLI runs reproducible", irreducibles.len(), runs.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 10] = [
        ("su(2) orthonormality", criterion_1, Duration::from_secs(1)),
        ("compactness classification", criterion_2, Duration::from_secs(1)),
        ("Haar axioms", criterion_3, Duration::from_secs(10)),
        ("Weyl unitarization", criterion_4, Duration::from_secs(30)),
        ("Schur dichotomy", criterion_5, Duration::from_secs(10)),
        ("scalar commutant", criterion_6, Duration::from_secs(10)),
        ("character orthogonality", criterion_7, Duration::from_secs(10)),
        ("matrix-element orthogonality", criterion_8, Duration::from_secs(5)),
        ("decomposition", criterion_9, Duration::from_secs(20)),
        ("specialness and CLI", criterion_10, Duration::from_secs(5)),
    ];
    let suite = Instant::now();
    let mut failures = 0;
    for (i, (name, check, budget)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = started.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > *budget => Err(format!("took {:.2} s, budget {} s", elapsed.as_secs_f64(), budget.as_secs())),
            other => other,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d.as_str()),
            Err(d) => ("FAIL", d.as_str()),
        };
        if outcome.is_err() {
            failures += 1;
        }
        println!("criterion {:>2} {tag} [{:.2} s] {name}: {detail}", i + 1, elapsed.as_secs_f64());
    }
    println!("acceptance: {} of 10 passed in {:.2} s", 10 - failures, suite.elapsed().as_secs_f64());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
