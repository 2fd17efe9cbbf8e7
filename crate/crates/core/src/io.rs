//! JSON input formats for Lie algebras, groups and representations.
//!
//! Every loader validates the decoded object with the same checks as the
//! programmatic constructors and reports failures with the offending field.

use num_complex::Complex64;
use serde::Deserialize;
use serde_json::Value;

use crate::error::Error;
use crate::group::{FiniteGroup, GroupSpec};
use crate::lie::LieAlgebraSpec;
use crate::linalg::ComplexMatrix;
use crate::rep::Representation;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum InputError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error("field `{field}`: {source}")]
    Invalid { field: String, source: Error },
}

impl InputError {
    fn field(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self::Field {
            field: field.into(),
            message: message.into(),
        }
    }

    fn invalid(field: impl Into<String>, source: Error) -> Self {
        Self::Invalid {
            field: field.into(),
            source,
        }
    }
}

fn parse_value(text: &str) -> Result<Value, InputError> {
    serde_json::from_str(text).map_err(|e| InputError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn decode<T: for<'de> Deserialize<'de>>(value: &Value, field: &str) -> Result<T, InputError> {
    T::deserialize(value).map_err(|e| InputError::field(field, e.to_string()))
}

fn required<'a>(obj: &'a Value, key: &str, prefix: &str) -> Result<&'a Value, InputError> {
    obj.get(key)
        .ok_or_else(|| InputError::field(join(prefix, key), "missing"))
}

fn join(prefix: &str, key: &str) -> String {
    if prefix.is_empty() {
        key.to_string()
    } else {
        format!("{prefix}.{key}")
    }
}

fn kind<'a>(obj: &'a Value, prefix: &str) -> Result<&'a str, InputError> {
    required(obj, "kind", prefix)?
        .as_str()
        .ok_or_else(|| InputError::field(join(prefix, "kind"), "expected a string"))
}

/// `{"dim": n, "structure_constants": [[a, b, k, value], ...], "labels": [...]}`
/// with `a < b`; the antisymmetric completion is implied.
pub fn parse_lie_algebra(text: &str) -> Result<LieAlgebraSpec, InputError> {
    let v = parse_value(text)?;
    let dim: usize = decode(required(&v, "dim", "")?, "dim")?;
    let raw: Vec<(usize, usize, usize, f64)> =
        decode(required(&v, "structure_constants", "")?, "structure_constants")?;
    for (i, &(a, b, k, _)) in raw.iter().enumerate() {
        let field = format!("structure_constants[{i}]");
        if a >= dim || b >= dim || k >= dim {
            return Err(InputError::field(field, format!("index out of range for dim {dim}")));
        }
        if a >= b {
            return Err(InputError::field(field, "entries must list a < b"));
        }
    }
    let labels: Vec<String> = match v.get("labels") {
        Some(l) => decode(l, "labels")?,
        None => (0..dim).map(|i| format!("e{i}")).collect(),
    };
    LieAlgebraSpec::from_sparse(dim, &raw, labels).map_err(|e| InputError::invalid("structure_constants", e))
}

/// `{"kind": "finite", "mult_table", "inverse", "identity", "labels"}`,
/// `{"kind": "circle"}` or `{"kind": "su2"}`.
pub fn parse_group(text: &str) -> Result<GroupSpec, InputError> {
    group_from_value(&parse_value(text)?)
}

fn group_from_value(v: &Value) -> Result<GroupSpec, InputError> {
    match kind(v, "")? {
        "circle" => Ok(GroupSpec::Circle),
        "su2" => Ok(GroupSpec::Su2),
        "finite" => {
            let mult: Vec<Vec<usize>> = decode(required(v, "mult_table", "")?, "mult_table")?;
            let inverse: Vec<usize> = decode(required(v, "inverse", "")?, "inverse")?;
            let identity: usize = decode(required(v, "identity", "")?, "identity")?;
            let labels: Vec<String> = match v.get("labels") {
                Some(l) => decode(l, "labels")?,
                None => (0..mult.len()).map(|i| i.to_string()).collect(),
            };
            let group = FiniteGroup::new(mult, inverse, identity, labels, Vec::new())
                .map_err(|e| InputError::invalid("mult_table", e))?;
            Ok(GroupSpec::Finite(group))
        }
        other => Err(InputError::field("kind", format!("unknown group kind `{other}`"))),
    }
}

fn matrix_from_value(v: &Value, field: &str) -> Result<ComplexMatrix, InputError> {
    let rows: Vec<Vec<[f64; 2]>> = decode(v, field)?;
    let rows: Vec<Vec<Complex64>> = rows
        .into_iter()
        .map(|r| r.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
        .collect();
    ComplexMatrix::from_rows(&rows).map_err(|e| InputError::invalid(field, e))
}

/// Representation file; see the crate README for the accepted kinds.
pub fn parse_representation(text: &str, group: &GroupSpec) -> Result<Representation, InputError> {
    rep_from_value(&parse_value(text)?, group, "")
}

fn rep_from_value(v: &Value, group: &GroupSpec, prefix: &str) -> Result<Representation, InputError> {
    let k = kind(v, prefix)?;
    let expect_group = |wanted: &str| {
        if group.kind_name() == wanted {
            Ok(())
        } else {
            Err(InputError::invalid(join(prefix, "kind"), Error::KindMismatch))
        }
    };
    match k {
        "finite_table" => {
            let field = join(prefix, "matrices");
            let list = required(v, "matrices", prefix)?
                .as_array()
                .ok_or_else(|| InputError::field(&field, "expected an array of matrices"))?;
            let matrices = list
                .iter()
                .enumerate()
                .map(|(i, m)| matrix_from_value(m, &format!("{field}[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            if group.as_finite().is_none() {
                return Err(InputError::invalid(join(prefix, "kind"), Error::KindMismatch));
            }
            Representation::finite_table(group, matrices).map_err(|e| InputError::invalid(field, e))
        }
        "circle_weights" => {
            expect_group("circle")?;
            let field = join(prefix, "weights");
            let weights: Vec<i64> = decode(required(v, "weights", prefix)?, &field)?;
            Representation::circle_weights(weights).map_err(|e| InputError::invalid(field, e))
        }
        "su2_spin" => {
            expect_group("su2")?;
            let field = join(prefix, "two_j");
            let two_j: u32 = decode(required(v, "two_j", prefix)?, &field)?;
            Representation::spin(two_j).map_err(|e| InputError::invalid(field, e))
        }
        "direct_sum" => {
            let field = join(prefix, "parts");
            let parts = required(v, "parts", prefix)?
                .as_array()
                .ok_or_else(|| InputError::field(&field, "expected an array"))?;
            let reps = parts
                .iter()
                .enumerate()
                .map(|(i, p)| rep_from_value(p, group, &format!("{field}[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            Representation::direct_sum_all(&reps).map_err(|e| InputError::invalid(field, e))
        }
        "conjugate" => {
            let inner = rep_from_value(required(v, "inner", prefix)?, group, &join(prefix, "inner"))?;
            let field = join(prefix, "matrix");
            let a = matrix_from_value(required(v, "matrix", prefix)?, &field)?;
            inner.conjugate(&a).map_err(|e| InputError::invalid(field, e))
        }
        other => Err(InputError::field(
            join(prefix, "kind"),
            format!("unknown representation kind `{other}`"),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::Classification;

    #[test]
    fn lie_algebra_file() {
        let text = r#"{"dim": 3, "structure_constants": [[0,1,2,1.0],[1,2,0,1.0],[0,2,1,-1.0]], "labels": ["x","y","z"]}"#;
        let alg = parse_lie_algebra(text).unwrap();
        assert_eq!(alg.c(1, 0, 2), -1.0);
        assert_eq!(alg.trace_form().unwrap().classification, Classification::CompactSemisimple);

        let bad = r#"{"dim": 2, "structure_constants": [[1,0,0,1.0]]}"#;
        assert!(matches!(parse_lie_algebra(bad), Err(InputError::Field { field, .. }) if field == "structure_constants[0]"));
        let err = parse_lie_algebra("{\n  \"dim\": 3,\n  oops\n}").unwrap_err();
        assert!(matches!(err, InputError::Syntax { line: 3, .. }));
    }

    #[test]
    fn group_files() {
        let z2 = parse_group(r#"{"kind":"finite","mult_table":[[0,1],[1,0]],"inverse":[0,1],"identity":0,"labels":["e","s"]}"#).unwrap();
        assert_eq!(z2.as_finite().unwrap().order(), 2);
        assert_eq!(parse_group(r#"{"kind":"su2"}"#).unwrap(), GroupSpec::Su2);
        let bad = r#"{"kind":"finite","mult_table":[[0,1],[0,1]],"inverse":[0,1],"identity":0}"#;
        let err = parse_group(bad).unwrap_err();
        assert!(err.to_string().contains("row"), "{err}");
        assert!(matches!(parse_group(r#"{"kind":"torus"}"#), Err(InputError::Field { .. })));
    }

    #[test]
    fn representation_files() {
        let z2 = GroupSpec::z2();
        let rep = parse_representation(
            r#"{"kind":"finite_table","matrices":[[[[1,0]]],[[[-1,0]]]]}"#,
            &z2,
        )
        .unwrap();
        assert_eq!(rep.degree(), 1);

        let err = parse_representation(r#"{"kind":"finite_table","matrices":[[[[-1,0]]],[[[1,0]]]]}"#, &z2).unwrap_err();
        assert!(err.to_string().contains("homomorphism"), "{err}");

        let nested = r#"{"kind":"conjugate","inner":{"kind":"direct_sum","parts":[{"kind":"su2_spin","two_j":1},{"kind":"su2_spin","two_j":0}]},
            "matrix":[[[1,0],[1,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[2,0]]]}"#;
        assert_eq!(parse_representation(nested, &GroupSpec::Su2).unwrap().degree(), 3);

        let wrong = parse_representation(r#"{"kind":"su2_spin","two_j":1}"#, &GroupSpec::Circle).unwrap_err();
        assert!(matches!(wrong, InputError::Invalid { source: Error::KindMismatch, .. }));
        let missing = parse_representation(r#"{"kind":"direct_sum","parts":[{"kind":"circle_weights"}]}"#, &GroupSpec::Circle).unwrap_err();
        assert_eq!(missing, InputError::field("parts[0].weights", "missing"));
    }
}
