//! JSON algebra files.
//!
//! ```json
//! {
//!   "dim": 3,
//!   "basis": ["e1", "e2", "e3"],
//!   "brackets": [
//!     { "i": 1, "j": 1, "k": 2, "c": "1" },
//!     { "i": 2, "j": 1, "k": 3, "c": "1/2" }
//!   ]
//! }
//! ```
//!
//! Indices are 1-based, `c` is a rational string (a JSON integer is also
//! accepted) and omitted products are zero. `basis` is optional.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::parse_rat;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketRecord {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: Coefficient,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default)]
    pub brackets: Vec<BracketRecord>,
}

impl AlgebraFile {
    pub fn from_algebra(a: &Algebra) -> Self {
        AlgebraFile {
            dim: a.dim(),
            basis: a.labels().map(<[String]>::to_vec),
            brackets: a
                .entries()
                .map(|(i, j, k, c)| BracketRecord {
                    i: i + 1,
                    j: j + 1,
                    k: k + 1,
                    c: Coefficient::Text(c.to_string()),
                })
                .collect(),
        }
    }

    /// Validates indices, duplicates and coefficients.
    pub fn to_algebra(&self) -> Result<Algebra> {
        if self.dim == 0 {
            return Err(Error::EmptyAlgebra);
        }
        let mut seen = BTreeSet::new();
        let mut entries = Vec::with_capacity(self.brackets.len());
        for (pos, b) in self.brackets.iter().enumerate() {
            for (field, v) in [("i", b.i), ("j", b.j), ("k", b.k)] {
                if v == 0 || v > self.dim {
                    return Err(Error::InvalidFile(format!(
                        "brackets[{pos}].{field} = {v} is outside 1..={}",
                        self.dim
                    )));
                }
            }
            if !seen.insert((b.i, b.j, b.k)) {
                return Err(Error::InvalidFile(format!(
                    "brackets[{pos}] repeats (i, j, k) = ({}, {}, {})",
                    b.i, b.j, b.k
                )));
            }
            let c = match &b.c {
                Coefficient::Int(n) => crate::linalg::rat(*n),
                Coefficient::Text(s) => parse_rat(s).ok_or_else(|| {
                    Error::InvalidFile(format!("brackets[{pos}].c = {s:?} is not a rational"))
                })?,
            };
            entries.push((b.i - 1, b.j - 1, b.k - 1, c));
        }
        let a = Algebra::from_entries(self.dim, entries)?;
        match &self.basis {
            Some(names) => a.with_labels(names.clone()).map_err(|_| {
                Error::InvalidFile(format!(
                    "basis lists {} names for dimension {}",
                    names.len(),
                    self.dim
                ))
            }),
            None => Ok(a),
        }
    }
}

pub fn parse_algebra(text: &str) -> Result<Algebra> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(|e| {
        Error::InvalidFile(format!("line {} column {}: {e}", e.line(), e.column()))
    })?;
    file.to_algebra()
}

pub fn emit_algebra(a: &Algebra) -> String {
    let mut s = serde_json::to_string_pretty(&AlgebraFile::from_algebra(a))
        .expect("algebra file serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ratio, rat};

    #[test]
    fn parses_strings_and_integers() {
        let a = parse_algebra(
            r#"{"dim": 2, "brackets": [
                {"i": 1, "j": 1, "k": 2, "c": "-3/6"},
                {"i": 2, "j": 1, "k": 1, "c": 4}
            ]}"#,
        )
        .unwrap();
        assert_eq!(a.constant(0, 0, 1), ratio(-1, 2));
        assert_eq!(a.constant(1, 0, 0), rat(4));
        assert!(a.labels().is_none());
    }

    #[test]
    fn round_trip() {
        let a = Algebra::from_entries(3, [(0, 0, 1, ratio(2, 3)), (1, 0, 2, rat(-1))])
            .unwrap()
            .with_labels(vec!["x".into(), "y".into(), "z".into()])
            .unwrap();
        let text = emit_algebra(&a);
        assert!(text.contains("\"2/3\""));
        assert_eq!(parse_algebra(&text).unwrap(), a);
    }

    #[test]
    fn rejects_bad_input() {
        let err = |s: &str| parse_algebra(s).unwrap_err().to_string();
        assert!(err(r#"{"dim": 2, "brackets": [{"i": 3, "j": 1, "k": 1, "c": "1"}]}"#)
            .contains("brackets[0].i"));
        assert!(err(r#"{"dim": 2, "brackets": [{"i": 1, "j": 1, "k": 0, "c": "1"}]}"#)
            .contains("brackets[0].k"));
        assert!(err(
            r#"{"dim": 2, "brackets": [{"i": 1, "j": 1, "k": 2, "c": "1"},
                                       {"i": 1, "j": 1, "k": 2, "c": "2"}]}"#
        )
        .contains("repeats"));
        assert!(err(r#"{"dim": 1, "brackets": [{"i": 1, "j": 1, "k": 1, "c": "x"}]}"#)
            .contains("not a rational"));
        assert!(err(r#"{"dim": 2, "basis": ["a"]}"#).contains("basis"));
        assert!(err(r#"{"dim": 0}"#).contains("at least 1"));
        assert!(err("{\n\"dim\": }").contains("line 2"));
    }
}
