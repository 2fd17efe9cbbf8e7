use std::path::Path;

use num_complex::Complex64;
use serde_json::{json, Value};

use repkit::group::GroupSpec;
use repkit::haar::{axiom_audit, HaarRule};
use repkit::io::{parse_group, parse_lie_algebra, parse_representation, InputError};
use repkit::lie::LieAlgebraSpec;
use repkit::probes::{standard_probes, standard_shifts};
use repkit::rep::{builtin, Character, Representation};
use repkit::schur::{
    character_inner, decompose, irreducibility_report, matrix_element_audit, multiplicity, orthogonality_audit,
};
use repkit::unitarize::{invariant_form_space, unitarize};
use repkit::{tolerance, ComplexMatrix, Error};

use crate::args::{AlgebraArgs, Command, GroupArgs, GroupSelection, RepArgs};
use crate::report::{complex, complex_row, real_row, sci, Check, RunReport};

/// Why a run stopped before producing a report.
#[derive(Debug)]
pub enum Failure {
    /// Unreadable or invalid input; exit status 1.
    Input(String),
    /// A numerical step could not be completed; exit status 2.
    Numerical(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => 1,
            Failure::Numerical(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Numerical(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotPositiveDefinite { .. }
            | Error::NonIntegerMultiplicity(_)
            | Error::NotIrreducible(_)
            | Error::AlreadyIrreducible
            | Error::NotUnitary(_)
            | Error::EvaluationFailure { .. } => Failure::Numerical(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn input_error(path: &Path, e: InputError) -> Failure {
    Failure::Input(format!("{}: {e}", path.display()))
}

/// Default resolution per group kind.
fn default_resolution(group: &GroupSpec) -> usize {
    match group {
        GroupSpec::Finite(_) => 1,
        GroupSpec::Circle => 64,
        GroupSpec::Su2 => 16,
    }
}

/// Default pass/fail tolerance: `exact` for finite groups and the circle,
/// `quadrature` for SU(2).
fn pick(group: &GroupSpec, exact: f64, quadrature: f64) -> f64 {
    if matches!(group, GroupSpec::Su2) {
        quadrature
    } else {
        exact
    }
}

struct GroupInput {
    group: GroupSpec,
    rule: HaarRule,
    description: String,
}

fn load_group(sel: &GroupSelection, fallback: Option<GroupSpec>) -> Result<GroupInput, Failure> {
    let (group, description) = if let Some(path) = &sel.group {
        let g = parse_group(&read(path)?).map_err(|e| input_error(path, e))?;
        (g, path.display().to_string())
    } else if let Some(name) = &sel.builtin {
        let g = GroupSpec::builtin(name).ok_or_else(|| Failure::Input(format!("unknown builtin group `{name}`")))?;
        (g, name.clone())
    } else if let Some(g) = fallback {
        let name = g.kind_name().to_string();
        (g, name)
    } else {
        return Err(Failure::Input("no group given; use --group PATH or --builtin NAME".into()));
    };
    let resolution = match (&group, sel.resolution) {
        (GroupSpec::Finite(_), _) => 1,
        (_, Some(r)) => r,
        (g, None) => default_resolution(g),
    };
    let rule = HaarRule::new(&group, resolution)?;
    Ok(GroupInput {
        group,
        rule,
        description,
    })
}

fn parse_weights(s: &str) -> Result<Vec<i64>, Failure> {
    s.split(',')
        .map(|w| {
            w.trim()
                .parse::<i64>()
                .map_err(|e| Failure::Input(format!("--weights `{s}`: {e}")))
        })
        .collect()
}

struct RepInputs {
    g: GroupInput,
    reps: Vec<(String, Representation)>,
}

fn load_reps(args: &RepArgs) -> Result<RepInputs, Failure> {
    let fallback = if !args.spins.is_empty() {
        Some(GroupSpec::Su2)
    } else if !args.weights.is_empty() {
        Some(GroupSpec::Circle)
    } else {
        None
    };
    let g = load_group(&args.group, fallback)?;
    let mut reps = Vec::new();
    // Parse every file before any computation starts.
    for path in args.paths.iter().chain(&args.reps) {
        let rep = parse_representation(&read(path)?, &g.group).map_err(|e| input_error(path, e))?;
        reps.push((path.display().to_string(), rep));
    }
    for &two_j in &args.spins {
        if !matches!(g.group, GroupSpec::Su2) {
            return Err(Failure::Input("--spin requires the su2 group".into()));
        }
        reps.push((format!("spin {two_j}/2"), Representation::spin(two_j)?));
    }
    for w in &args.weights {
        if !matches!(g.group, GroupSpec::Circle) {
            return Err(Failure::Input("--weights requires the circle group".into()));
        }
        reps.push((format!("weights [{w}]"), Representation::circle_weights(parse_weights(w)?)?));
    }
    Ok(RepInputs { g, reps })
}

fn require_reps(inputs: &RepInputs) -> Result<(), Failure> {
    if inputs.reps.is_empty() {
        Err(Failure::Input(
            "no representation given; use a file argument, --rep, --spin or --weights".into(),
        ))
    } else {
        Ok(())
    }
}

/// All given representations combined into one direct sum.
fn combined(inputs: &RepInputs) -> Result<Representation, Failure> {
    require_reps(inputs)?;
    let reps: Vec<Representation> = inputs.reps.iter().map(|(_, r)| r.clone()).collect();
    Ok(Representation::direct_sum_all(&reps)?)
}

fn describe_inputs(report: &mut RunReport, inputs: &RepInputs) {
    report.inputs.push(("group".into(), inputs.g.description.clone()));
    for (name, rep) in &inputs.reps {
        report.inputs.push(("rep".into(), format!("{name} (degree {})", rep.degree())));
    }
    report.resolution = Some(inputs.g.rule.resolution());
    report.node_count = Some(inputs.g.rule.len());
}

fn matrix_lines(report: &mut RunReport, title: &str, m: &ComplexMatrix) {
    report.line(format!("{title}:"));
    for i in 0..m.rows() {
        report.line(format!("  {}", complex_row(m.row(i))));
    }
}

pub fn run(command: &Command) -> Result<RunReport, Failure> {
    let tol = command.output().tol;
    let mut report = RunReport::new(command.name());
    match command {
        Command::AnalyzeAlgebra(a) => analyze_algebra(a, tol, &mut report)?,
        Command::HaarAudit(a) => haar_audit(a, tol, &mut report)?,
        Command::Unitarize(a) => run_unitarize(&load_reps(a)?, tol, &mut report)?,
        Command::Irreducible(a) => run_irreducible(&load_reps(a)?, tol, &mut report)?,
        Command::Decompose(a) => run_decompose(&load_reps(a)?, tol, &mut report)?,
        Command::Characters(a) => run_characters(&load_reps(a)?, tol, &mut report)?,
        Command::Orthogonality(a) => run_orthogonality(&load_reps(a)?, tol, &mut report)?,
    }
    report.finish();
    Ok(report)
}

fn builtin_algebra(name: &str) -> Option<LieAlgebraSpec> {
    match name {
        "su2" => Some(LieAlgebraSpec::su2()),
        "sl2r" => Some(LieAlgebraSpec::sl2_real()),
        _ => name
            .strip_prefix("abelian")
            .and_then(|n| n.parse().ok())
            .filter(|&n: &usize| n > 0)
            .map(LieAlgebraSpec::abelian),
    }
}

fn analyze_algebra(a: &AlgebraArgs, tol: Option<f64>, report: &mut RunReport) -> Result<(), Failure> {
    let alg = match (&a.path, &a.builtin) {
        (Some(path), _) => {
            report.inputs.push(("algebra".into(), path.display().to_string()));
            parse_lie_algebra(&read(path)?).map_err(|e| input_error(path, e))?
        }
        (None, Some(name)) => {
            report.inputs.push(("algebra".into(), name.clone()));
            builtin_algebra(name).ok_or_else(|| Failure::Input(format!("unknown builtin algebra `{name}`")))?
        }
        (None, None) => return Err(Failure::Input("no algebra given; pass a file or --builtin NAME".into())),
    };
    let tf = alg.trace_form()?;
    let tol = tol.unwrap_or(tolerance::STRUCTURAL);
    report.line(format!("dimension: {}", alg.dim()));
    report.line(format!("labels: {}", alg.labels().join(", ")));
    report.line("trace form gram:");
    for row in tf.gram.to_rows() {
        report.line(format!("  {}", real_row(&row)));
    }
    report.line(format!("eigenvalues: {}", real_row(&tf.eigenvalues)));
    report.line(format!("classification: {}", tf.classification.as_str()));
    report.line(format!("center dimension: {}", tf.center_basis.len()));
    for v in &tf.center_basis {
        report.line(format!("  {}", real_row(v)));
    }
    report.checks.push(Check::at_most("jacobi", tf.jacobi_residual, tol));
    report.checks.push(Check::at_most("form_invariance", tf.invariance_residual, tol));
    report.payload = json!({
        "dim": alg.dim(),
        "labels": alg.labels(),
        "trace_form": tf,
    });
    Ok(())
}

fn haar_audit(a: &GroupArgs, tol: Option<f64>, report: &mut RunReport) -> Result<(), Failure> {
    let g = load_group(&a.group, None)?;
    report.inputs.push(("group".into(), g.description.clone()));
    report.resolution = Some(g.rule.resolution());
    report.node_count = Some(g.rule.len());
    let probes = standard_probes(&g.group);
    let shifts = standard_shifts(&g.group);
    let audit = axiom_audit(&g.rule, &probes, &shifts)?;
    let tol = tol.unwrap_or(pick(&g.group, tolerance::KERNEL, 1e-6));
    report.line(format!("probes: {}", audit.probes.len()));
    report.line(format!("shifts: {}", audit.shifts.len()));
    report.checks.push(Check::at_most("(i) homogeneity", audit.homogeneity, tol));
    report.checks.push(Check::at_most("(ii) additivity", audit.additivity, tol));
    report.checks.push(Check::above("(iii) positivity", audit.positivity_margin, 0.0));
    report.checks.push(Check::at_most("(iv) normalization", audit.normalization, tol));
    report.checks.push(Check::at_most("(v) left invariance", audit.left_invariance, tol));
    report.checks.push(Check::at_most("(v) right invariance", audit.right_invariance, tol));
    report.checks.push(Check::at_most("(vi) inversion", audit.inversion, tol));
    report.payload = serde_json::to_value(&audit).expect("audit serializes");
    Ok(())
}

fn run_unitarize(inputs: &RepInputs, tol: Option<f64>, report: &mut RunReport) -> Result<(), Failure> {
    describe_inputs(report, inputs);
    let rep = combined(inputs)?;
    let rule = &inputs.g.rule;
    let u = unitarize(&rep, rule)?;
    let chi_distance = rep.character(rule)?.max_distance(&u.unitary_rep.character(rule)?);
    let tol = tol.unwrap_or(pick(&inputs.g.group, tolerance::HOMOMORPHISM, 1e-5));
    matrix_lines(report, "averaged form H", &u.form.gram);
    report.line(format!("min eigenvalue of H: {}", sci(u.form.min_eigenvalue)));
    matrix_lines(report, "basis change A (H = A* A)", &u.a);
    report.checks.push(Check::at_most("unitarity", u.unitarity_residual, tol));
    report.checks.push(Check::at_most("form_invariance", u.invariance_residual, tol));
    report.checks.push(Check::at_most("character_change", chi_distance, 1e-9));
    report.payload = json!({
        "degree": rep.degree(),
        "unitarization": u,
        "character_change": chi_distance,
    });
    Ok(())
}

fn run_irreducible(inputs: &RepInputs, tol: Option<f64>, report: &mut RunReport) -> Result<(), Failure> {
    describe_inputs(report, inputs);
    let rep = combined(inputs)?;
    let rule = &inputs.g.rule;
    let irr = irreducibility_report(&rep, rule)?;
    let forms = invariant_form_space(&rep, rule)?;
    let tol = tol.unwrap_or(pick(&inputs.g.group, tolerance::STRUCTURAL, 1e-6));
    report.line(format!("degree: {}", rep.degree()));
    report.line(format!("commutant dimension: {}", irr.commutant_dimension));
    report.line(format!("irreducible: {}", irr.irreducible));
    report.line(format!("invariant form dimension d: {}", forms.dimension));
    report.line(format!("special (d = 1): {}", forms.dimension == 1));
    report.checks.push(Check::at_most("commutant", irr.commutant_residual, tol));
    report.checks.push(Check::at_most("invariant_forms", forms.max_residual, tol));
    report.payload = json!({
        "degree": rep.degree(),
        "irreducibility": irr,
        "invariant_form_dimension": forms.dimension,
        "special": forms.dimension == 1,
        "invariant_forms": forms.basis,
    });
    Ok(())
}

/// Built-in irreducibles of a finite group whose table matches a named one,
/// with their character values in element order.
fn named_finite_characters(f: &repkit::group::FiniteGroup) -> Vec<(String, Vec<Complex64>)> {
    for (group_name, names) in [
        ("z2", &["trivial", "sign"][..]),
        ("z3", &["chi0", "chi1", "chi2"][..]),
        ("s3", &["trivial", "sign", "standard"][..]),
    ] {
        let matches = GroupSpec::builtin(group_name)
            .and_then(|b| b.as_finite().map(|b| b.mult_table() == f.mult_table()))
            .unwrap_or(false);
        if !matches {
            continue;
        }
        let irreps = builtin::irreps(group_name).unwrap_or_default();
        return names
            .iter()
            .zip(irreps)
            .map(|(name, r)| {
                let values = (0..f.order())
                    .map(|k| r.evaluate(&repkit::GroupElement::Finite(k)).map(|m| m.trace()).unwrap_or_default())
                    .collect();
                (name.to_string(), values)
            })
            .collect();
    }
    Vec::new()
}

/// A short name for a block, when it matches a known irreducible character.
fn identify(group: &GroupSpec, chi: &Character, rule: &HaarRule, tol: f64) -> Result<Option<String>, Failure> {
    let close = |values: &[Complex64]| {
        values.len() == chi.values.len() && values.iter().zip(&chi.values).all(|(a, b)| (a - b).norm() <= tol)
    };
    match group {
        GroupSpec::Su2 => {
            let two_j = chi.degree as u32 - 1;
            if let Ok(r) = Representation::spin(two_j) {
                if close(&r.character(rule)?.values) {
                    return Ok(Some(format!("spin {two_j}/2")));
                }
            }
        }
        GroupSpec::Circle if chi.degree == 1 && rule.len() > 1 => {
            let step = std::f64::consts::TAU / rule.len() as f64;
            let k = (chi.values[1].arg() / step).round() as i64;
            let r = Representation::circle_weights(vec![k])?;
            if close(&r.character(rule)?.values) {
                return Ok(Some(format!("weight {k}")));
            }
        }
        GroupSpec::Finite(f) => {
            for (name, values) in named_finite_characters(f) {
                if close(&values) {
                    return Ok(Some(name));
                }
            }
        }
        _ => {}
    }
    Ok(None)
}

fn character_json(group: &GroupSpec, chi: &Character) -> Value {
    match group {
        GroupSpec::Finite(f) => json!({
            "degree": chi.degree,
            "labels": f.labels(),
            "values": chi.values,
        }),
        _ => json!({ "degree": chi.degree, "values": chi.values }),
    }
}

fn character_text(chi: &Character) -> String {
    const SHOWN: usize = 6;
    let head = complex_row(&chi.values[..chi.values.len().min(SHOWN)]);
    if chi.values.len() > SHOWN {
        format!("{head}  ... ({} node values)", chi.values.len())
    } else {
        head
    }
}

fn run_decompose(inputs: &RepInputs, tol: Option<f64>, report: &mut RunReport) -> Result<(), Failure> {
    describe_inputs(report, inputs);
    let rep = combined(inputs)?;
    let rule = &inputs.g.rule;
    let group = &inputs.g.group;
    let d = decompose(&rep, rule)?;
    let tol = tol.unwrap_or(pick(group, tolerance::STRUCTURAL, 1e-6));
    report.line(format!("degree: {}", rep.degree()));
    report.line(format!("unitarized first: {}", d.unitarized));
    report.line(format!("blocks: {}", d.blocks.len()));
    let mut blocks = Vec::new();
    for (k, chi) in d.block_characters.iter().enumerate() {
        let name = identify(group, chi, rule, tolerance::HOMOMORPHISM)?;
        report.line(format!(
            "  block {k}: degree {}{}  character {}",
            chi.degree,
            name.as_ref().map(|n| format!(" ({n})")).unwrap_or_default(),
            character_text(chi)
        ));
        let mut entry = character_json(group, chi);
        entry["identified_as"] = json!(name);
        blocks.push(entry);
    }
    matrix_lines(report, "basis change P", &d.p);
    report.checks.push(Check::at_most("block_leakage", d.residual, tol));
    report.checks.push(Check::at_most("character_sum", d.character_residual, 1e-8));
    report.payload = json!({
        "degree": rep.degree(),
        "block_degrees": d.block_degrees,
        "blocks": blocks,
        "p": d.p,
        "unitarized": d.unitarized,
        "residual": d.residual,
        "character_residual": d.character_residual,
    });
    Ok(())
}

fn run_characters(inputs: &RepInputs, tol: Option<f64>, report: &mut RunReport) -> Result<(), Failure> {
    describe_inputs(report, inputs);
    require_reps(inputs)?;
    let rule = &inputs.g.rule;
    let group = &inputs.g.group;
    let tol = tol.unwrap_or(pick(group, tolerance::STRUCTURAL, 1e-6));
    let shifts = standard_shifts(group);
    let mut chars = Vec::new();
    let mut entries = Vec::new();
    for (k, (name, rep)) in inputs.reps.iter().enumerate() {
        let chi = rep.character(rule)?;
        let class = rep.class_invariance_audit(rule, &shifts)?;
        report.line(format!("chi[{k}] {name}: {}", character_text(&chi)));
        report.checks.push(Check::at_most(format!("class_invariance[{k}]"), class, tol));
        let mut entry = character_json(group, &chi);
        entry["name"] = json!(name);
        entry["class_invariance"] = json!(class);
        if matches!(group, GroupSpec::Su2) {
            let mut mults = Vec::new();
            for two_j in 0..rep.degree() as u32 {
                let irrep = Representation::spin(two_j.min(repkit::rep::MAX_TWO_J))?;
                let m = multiplicity(rep, &irrep, rule)?;
                if m > 0 {
                    mults.push(json!({"two_j": two_j, "multiplicity": m}));
                    report.line(format!("  contains spin {two_j}/2 with multiplicity {m}"));
                }
            }
            entry["spin_multiplicities"] = json!(mults);
        }
        entries.push(entry);
        chars.push(chi);
    }
    let mut gram = Vec::new();
    report.line("inner products <chi_i, chi_j>:");
    for a in &chars {
        let row = chars.iter().map(|b| character_inner(a, b, rule)).collect::<Result<Vec<_>, _>>()?;
        report.line(format!("  {}", complex_row(&row)));
        gram.push(row);
    }
    report.payload = json!({ "characters": entries, "inner_products": gram });
    Ok(())
}

fn default_irreps(group: &GroupSpec) -> Vec<(String, Representation)> {
    match group {
        GroupSpec::Circle => (0..3)
            .map(|w| (format!("weights [{w}]"), Representation::circle_weights(vec![w]).expect("nonempty")))
            .collect(),
        GroupSpec::Su2 => (0..3)
            .map(|t| (format!("spin {t}/2"), Representation::spin(t).expect("in range")))
            .collect(),
        GroupSpec::Finite(f) => ["z2", "z3", "s3"]
            .iter()
            .find(|name| {
                GroupSpec::builtin(name).and_then(|b| b.as_finite().map(|b| b.mult_table() == f.mult_table())) == Some(true)
            })
            .and_then(|name| builtin::irreps(name))
            .map(|reps| {
                reps.into_iter()
                    .enumerate()
                    .filter_map(|(k, r)| {
                        // re-home the builtin table onto the loaded group
                        let table = (0..f.order())
                            .map(|e| r.evaluate(&repkit::GroupElement::Finite(e)))
                            .collect::<Result<Vec<_>, _>>()
                            .ok()?;
                        Representation::finite_table(group, table).ok().map(|r| (format!("irrep {k}"), r))
                    })
                    .collect()
            })
            .unwrap_or_default(),
    }
}

fn run_orthogonality(inputs: &RepInputs, tol: Option<f64>, report: &mut RunReport) -> Result<(), Failure> {
    let rule = &inputs.g.rule;
    let group = &inputs.g.group;
    let reps = if inputs.reps.is_empty() {
        default_irreps(group)
    } else {
        inputs.reps.clone()
    };
    if reps.is_empty() {
        return Err(Failure::Input("no representations given and no built-in irreducibles for this group".into()));
    }
    let shown = RepInputs {
        g: GroupInput {
            group: group.clone(),
            rule: rule.clone(),
            description: inputs.g.description.clone(),
        },
        reps: reps.clone(),
    };
    describe_inputs(report, &shown);
    let tol = tol.unwrap_or(pick(group, tolerance::KERNEL, 1e-6));
    let list: Vec<Representation> = reps.iter().map(|(_, r)| r.clone()).collect();
    let audit = orthogonality_audit(&list, rule)?;
    report.line("character gram <chi_i, chi_j>:");
    for row in &audit.gram {
        report.line(format!("  {}", complex_row(row)));
    }
    report.checks.push(Check::at_most("character_orthogonality", audit.max_residual, tol));
    let mut elements = Vec::new();
    for (k, r) in list.iter().enumerate() {
        match matrix_element_audit(r, rule) {
            Ok(m) => {
                report.line(format!(
                    "matrix elements of rep {k}: max deviation {}, diagonal {}",
                    sci(m.max_deviation),
                    complex(Complex64::new(m.diagonal[0], 0.0))
                ));
                report.checks.push(Check::at_most(format!("matrix_elements[{k}]"), m.max_deviation, tol));
                elements.push(serde_json::to_value(&m).expect("serializes"));
            }
            Err(Error::NotUnitary(defect)) => {
                report.line(format!("matrix elements of rep {k}: skipped, not unitary (defect {})", sci(defect)));
                elements.push(Value::Null);
            }
            Err(e) => return Err(e.into()),
        }
    }
    report.payload = json!({
        "gram": audit.gram,
        "residuals": audit.residuals,
        "max_residual": audit.max_residual,
        "matrix_elements": elements,
    });
    Ok(())
}
