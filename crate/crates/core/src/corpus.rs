//! Builtin example algebras, shipped as documents in `fixtures/`.

use thiserror::Error;

use crate::algebra::{InvalidAlgebra, ValidatedAlgebra};
use crate::io::{parse_document, AlgebraDocument, ParseError};

struct Entry {
    id: &'static str,
    aliases: &'static [&'static str],
    text: &'static str,
}

const ENTRIES: &[Entry] = &[
    Entry { id: "ex1", aliases: &["sl2"], text: include_str!("../fixtures/ex1.json") },
    Entry { id: "ex2", aliases: &["osp12", "osp(1|2)"], text: include_str!("../fixtures/ex2.json") },
    Entry { id: "ex3", aliases: &["sl2+sl2"], text: include_str!("../fixtures/ex3.json") },
    Entry { id: "ex5", aliases: &["sl2+z"], text: include_str!("../fixtures/ex5.json") },
    Entry { id: "ex6", aliases: &["sl3"], text: include_str!("../fixtures/ex6.json") },
    Entry { id: "ex2-ex1", aliases: &["osp12+sl2"], text: include_str!("../fixtures/ex2-ex1.json") },
    Entry { id: "case2", aliases: &[], text: include_str!("../fixtures/case2.json") },
    Entry { id: "case4", aliases: &["takiff"], text: include_str!("../fixtures/case4.json") },
];

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("unknown builtin {0:?}")]
    Unknown(String),
    #[error("builtin {name}: {source}")]
    Parse { name: String, source: ParseError },
    #[error("builtin {name}: {source}")]
    Invalid { name: String, source: Box<InvalidAlgebra> },
}

pub fn names() -> impl Iterator<Item = &'static str> {
    ENTRIES.iter().map(|e| e.id)
}

fn find(name: &str) -> Option<&'static Entry> {
    let key = name.to_ascii_lowercase();
    ENTRIES
        .iter()
        .find(|e| e.id == key || e.aliases.iter().any(|a| *a == key))
}

/// Raw document text of a builtin, looked up by id or alias (case-insensitive).
pub fn document(name: &str) -> Result<&'static str, CorpusError> {
    find(name).map(|e| e.text).ok_or_else(|| CorpusError::Unknown(name.to_string()))
}

pub fn parsed(name: &str) -> Result<AlgebraDocument, CorpusError> {
    let entry = find(name).ok_or_else(|| CorpusError::Unknown(name.to_string()))?;
    parse_document(entry.text).map_err(|source| CorpusError::Parse {
        name: entry.id.to_string(),
        source,
    })
}

pub fn load(name: &str) -> Result<ValidatedAlgebra, CorpusError> {
    let doc = parsed(name)?;
    ValidatedAlgebra::new(doc.algebra).map_err(|e| CorpusError::Invalid {
        name: name.to_string(),
        source: Box::new(e),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{direct_sum_over_product, rename};

    #[test]
    fn every_builtin_validates() {
        for name in names() {
            if let Err(e) = load(name) {
                panic!("{e}");
            }
        }
    }

    #[test]
    fn lookup_is_case_insensitive_and_knows_aliases() {
        assert!(load("EX3").is_ok());
        assert_eq!(document("sl3").unwrap(), document("ex6").unwrap());
        assert!(matches!(load("ex4"), Err(CorpusError::Unknown(_))));
    }

    #[test]
    fn sum_fixtures_match_their_construction() {
        let sl2 = parsed("ex1").unwrap().algebra;
        let osp = parsed("ex2").unwrap().algebra;
        let ex3 = direct_sum_over_product(
            &rename(&sl2, |n| format!("{n}1")).unwrap(),
            &rename(&sl2, |n| format!("{n}2")).unwrap(),
        )
        .unwrap();
        assert_eq!(parsed("ex3").unwrap().algebra, ex3);
        let ex21 = direct_sum_over_product(
            &rename(&osp, |n| format!("{n}'")).unwrap(),
            &sl2,
        )
        .unwrap();
        assert_eq!(parsed("ex2-ex1").unwrap().algebra, ex21);
    }
}
