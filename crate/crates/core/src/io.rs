//! Text format for algebras.
//!
//! ```text
//! {"group": {"free_rank": r, "torsion": [...]},
//!  "basis": [{"name": .., "degree": [ints], "parity": 0|1}, ...],
//!  "brackets": [{"left": i, "right": j, "result": [[k, "p/q"], ...]}, ...]}
//! ```
//!
//! Optional top-level `name` and `description` strings are carried as
//! metadata. Pairs not listed bracket to zero. Degrees are additive integer
//! coordinates; torsion coordinates are reduced on input.

use serde::Deserialize;
use thiserror::Error;

use crate::algebra::{BasisVector, GradedSuperalgebra, Parity, StructureError};
use crate::group::GroupSpec;
use crate::linalg::{format_scalar, parse_scalar, Scalar};

/// Degree coordinates are limited so products of two degrees never overflow.
pub const MAX_COORDINATE: i64 = i32::MAX as i64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Field { path: String, message: String },
}

fn field(path: impl Into<String>, message: impl ToString) -> ParseError {
    ParseError::Field {
        path: path.into(),
        message: message.to_string(),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    description: Option<String>,
    group: RawGroup,
    basis: Vec<RawBasis>,
    #[serde(default)]
    brackets: Vec<RawBracket>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    free_rank: usize,
    #[serde(default)]
    torsion: Vec<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBasis {
    name: String,
    degree: Vec<i64>,
    parity: u8,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBracket {
    left: usize,
    right: usize,
    result: Vec<(usize, RawScalar)>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawScalar {
    Text(String),
    Int(i64),
}

/// A parsed algebra plus its optional metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraDocument {
    pub name: Option<String>,
    pub description: Option<String>,
    pub algebra: GradedSuperalgebra,
}

pub fn parse_document(text: &str) -> Result<AlgebraDocument, ParseError> {
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| ParseError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;

    if raw.group.free_rank > 64 || raw.group.torsion.len() > 64 {
        return Err(field("group", "too many coordinates"));
    }
    if let Some((i, m)) = raw.group.torsion.iter().enumerate().find(|(_, &m)| !(2..=MAX_COORDINATE).contains(&m)) {
        return Err(field(format!("group.torsion[{i}]"), format!("modulus {m} outside [2, {MAX_COORDINATE}]")));
    }
    let group = GroupSpec::new(raw.group.free_rank, raw.group.torsion).map_err(|e| field("group", e))?;

    let mut basis = Vec::with_capacity(raw.basis.len());
    for (i, b) in raw.basis.into_iter().enumerate() {
        let path = format!("basis[{i}]");
        if b.degree.len() != group.coordinate_count() {
            return Err(field(
                format!("{path}.degree"),
                format!("expected {} coordinates, found {}", group.coordinate_count(), b.degree.len()),
            ));
        }
        if b.degree.iter().any(|c| c.abs() > MAX_COORDINATE) {
            return Err(field(format!("{path}.degree"), "coordinate out of range"));
        }
        let parity = Parity::from_bit(b.parity).ok_or_else(|| field(format!("{path}.parity"), "parity must be 0 or 1"))?;
        let degree = group.element(&b.degree).map_err(|e| field(format!("{path}.degree"), e))?;
        basis.push(BasisVector {
            name: b.name,
            degree,
            parity,
        });
    }
    let mut algebra = GradedSuperalgebra::new(group, basis).map_err(|e| field("basis", e))?;

    let dim = algebra.dim();
    for (n, br) in raw.brackets.into_iter().enumerate() {
        let path = format!("brackets[{n}]");
        for (what, index) in [("left", br.left), ("right", br.right)] {
            if index >= dim {
                return Err(field(format!("{path}.{what}"), format!("unknown basis index {index}")));
            }
        }
        let mut result = Vec::with_capacity(br.result.len());
        for (m, (k, c)) in br.result.into_iter().enumerate() {
            let at = format!("{path}.result[{m}]");
            if k >= dim {
                return Err(field(at, format!("unknown basis index {k}")));
            }
            let value: Scalar = match c {
                RawScalar::Text(s) => parse_scalar(&s).map_err(|e| field(at, e))?,
                RawScalar::Int(v) => crate::linalg::scalar(v),
            };
            result.push((k, value));
        }
        algebra.insert_bracket(br.left, br.right, result).map_err(|e| match e {
            StructureError::InconsistentDuplicate { .. } => field(path, "duplicate pair with inconsistent values"),
            other => field(path, other),
        })?;
    }

    Ok(AlgebraDocument {
        name: raw.name,
        description: raw.description,
        algebra,
    })
}

pub fn parse(text: &str) -> Result<GradedSuperalgebra, ParseError> {
    parse_document(text).map(|d| d.algebra)
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("string serialization")
}

fn json_ints(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("[{}]", parts.join(", "))
}

/// Deterministic text form; `parse(serialize(a)) == a`.
pub fn serialize(alg: &GradedSuperalgebra) -> String {
    serialize_with(None, None, alg)
}

pub fn serialize_document(doc: &AlgebraDocument) -> String {
    serialize_with(doc.name.as_deref(), doc.description.as_deref(), &doc.algebra)
}

fn serialize_with(name: Option<&str>, description: Option<&str>, alg: &GradedSuperalgebra) -> String {
    let mut out = String::from("{\n");
    if let Some(n) = name {
        out.push_str(&format!("  \"name\": {},\n", json_str(n)));
    }
    if let Some(d) = description {
        out.push_str(&format!("  \"description\": {},\n", json_str(d)));
    }
    let g = alg.group();
    out.push_str(&format!(
        "  \"group\": {{\"free_rank\": {}, \"torsion\": {}}},\n",
        g.free_rank,
        json_ints(&g.torsion)
    ));
    let basis: Vec<String> = alg
        .basis()
        .iter()
        .map(|b| {
            format!(
                "    {{\"name\": {}, \"degree\": {}, \"parity\": {}}}",
                json_str(&b.name),
                json_ints(b.degree.coords()),
                b.parity.bit()
            )
        })
        .collect();
    push_list(&mut out, "basis", &basis, true);
    let brackets: Vec<String> = alg
        .entries()
        .map(|(&(i, j), v)| {
            let terms: Vec<String> = v
                .iter()
                .map(|(k, c)| format!("[{k}, {}]", json_str(&format_scalar(c))))
                .collect();
            format!(
                "    {{\"left\": {i}, \"right\": {j}, \"result\": [{}]}}",
                terms.join(", ")
            )
        })
        .collect();
    push_list(&mut out, "brackets", &brackets, false);
    out.push_str("}\n");
    out
}

fn push_list(out: &mut String, key: &str, items: &[String], comma: bool) {
    if items.is_empty() {
        out.push_str(&format!("  \"{key}\": []"));
    } else {
        out.push_str(&format!("  \"{key}\": [\n{}\n  ]", items.join(",\n")));
    }
    out.push_str(if comma { ",\n" } else { "\n" });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn parses_sl2_fixture() {
        let doc = parse_document(corpus::document("ex1").unwrap()).unwrap();
        assert_eq!(doc.algebra.dim(), 3);
        assert_eq!(doc.algebra.group(), &GroupSpec::free(1));
        assert_eq!(doc.name.as_deref(), Some("sl2"));
    }

    #[test]
    fn zero_denominator_is_rejected() {
        let text = r#"{"group": {"free_rank": 1, "torsion": []},
            "basis": [{"name": "a", "degree": [0], "parity": 1}],
            "brackets": [{"left": 0, "right": 0, "result": [[0, "1/0"]]}]}"#;
        match parse(text) {
            Err(ParseError::Field { path, message }) => {
                assert_eq!(path, "brackets[0].result[0]");
                assert!(message.contains("zero denominator"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn empty_basis_is_a_valid_empty_algebra() {
        let a = parse(r#"{"group": {"free_rank": 0, "torsion": []}, "basis": [], "brackets": []}"#).unwrap();
        assert_eq!(a.dim(), 0);
        assert!(a.validate().is_valid());
    }

    #[test]
    fn structural_errors_carry_context() {
        let base = |basis: &str, brackets: &str| {
            format!(r#"{{"group": {{"free_rank": 1, "torsion": [3]}}, "basis": [{basis}], "brackets": [{brackets}]}}"#)
        };
        let a = r#"{"name": "a", "degree": [0, 1], "parity": 0}"#;
        let cases = [
            (base(r#"{"name": "a", "degree": [0], "parity": 0}"#, ""), "basis[0].degree"),
            (base(a, r#"{"left": 0, "right": 2, "result": []}"#), "brackets[0].right"),
            (base(a, r#"{"left": 0, "right": 0, "result": [[5, "1"]]}"#), "brackets[0].result[0]"),
            (base(a, r#"{"left": 0, "right": 0, "result": [[0, "x"]]}"#), "brackets[0].result[0]"),
            (
                base(
                    a,
                    r#"{"left": 0, "right": 0, "result": [[0, "1"]]}, {"left": 0, "right": 0, "result": [[0, "2"]]}"#,
                ),
                "brackets[1]",
            ),
            (base(r#"{"name": "a", "degree": [0, 1], "parity": 2}"#, ""), "basis[0].parity"),
        ];
        for (text, want) in cases {
            match parse(&text) {
                Err(ParseError::Field { path, .. }) => assert_eq!(path, want, "{text}"),
                other => panic!("expected field error at {want}, got {other:?}"),
            }
        }
        assert!(matches!(parse("{\n  \"group\": 3\n}"), Err(ParseError::Syntax { line: 2, .. })));
    }

    #[test]
    fn torsion_degrees_are_reduced() {
        let a = parse(
            r#"{"group": {"free_rank": 0, "torsion": [3]},
                "basis": [{"name": "a", "degree": [4], "parity": 0}], "brackets": []}"#,
        )
        .unwrap();
        assert_eq!(a.basis()[0].degree.coords(), &[1]);
    }

    #[test]
    fn serialization_is_lowest_terms_and_round_trips() {
        let text = r#"{"group": {"free_rank": 0, "torsion": []},
            "basis": [{"name": "a", "degree": [], "parity": 1}],
            "brackets": [{"left": 0, "right": 0, "result": [[0, "-3/6"]]}]}"#;
        let a = parse(text).unwrap();
        let s = serialize(&a);
        assert!(s.contains("\"-1/2\""), "{s}");
        assert_eq!(parse(&s).unwrap(), a);

        let empty = parse(r#"{"group": {"free_rank": 2, "torsion": [2]}, "basis": []}"#).unwrap();
        assert_eq!(parse(&serialize(&empty)).unwrap(), empty);
    }

    #[test]
    fn corpus_documents_round_trip_byte_for_byte() {
        for name in corpus::names() {
            let text = corpus::document(name).unwrap();
            let doc = parse_document(text).unwrap();
            assert_eq!(serialize_document(&doc), text, "{name}");
            assert_eq!(parse_document(&serialize_document(&doc)).unwrap(), doc);
        }
    }
}
