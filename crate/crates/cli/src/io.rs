//! Semigroup JSON: `{"degree": n, "kind": "full"|"partial", "elements": [[int|null, ...], ...]}`
//! with 0-based entries and `null` for undefined points.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use transemi::{Kind, PartialTransformation, SemigroupSet, Transformation};

use crate::error::CliError;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    degree: usize,
    kind: String,
    elements: Vec<Vec<Option<usize>>>,
}

/// A semigroup read from or written to disk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnySet {
    Full(SemigroupSet<Transformation>),
    Partial(SemigroupSet<PartialTransformation>),
}

impl AnySet {
    pub fn expect_full(self, what: &str) -> Result<SemigroupSet<Transformation>, CliError> {
        match self {
            AnySet::Full(s) => Ok(s),
            AnySet::Partial(_) => Err(CliError::Input(format!(
                "{what} needs full transformations"
            ))),
        }
    }
}

impl From<SemigroupSet<Transformation>> for AnySet {
    fn from(s: SemigroupSet<Transformation>) -> Self {
        AnySet::Full(s)
    }
}

impl From<SemigroupSet<PartialTransformation>> for AnySet {
    fn from(s: SemigroupSet<PartialTransformation>) -> Self {
        AnySet::Partial(s)
    }
}

pub fn to_json(set: &AnySet) -> String {
    let (degree, kind, elements) = match set {
        AnySet::Full(s) => (
            s.degree(),
            Kind::Full,
            s.iter()
                .map(|a| a.to_vec().into_iter().map(Some).collect())
                .collect(),
        ),
        AnySet::Partial(s) => (
            s.degree(),
            Kind::Partial,
            s.iter().map(|a| a.to_vec()).collect(),
        ),
    };
    let doc = Document {
        degree,
        kind: kind.as_str().to_string(),
        elements,
    };
    serde_json::to_string(&doc).expect("plain data serialises")
}

pub fn from_json(text: &str) -> Result<AnySet, CliError> {
    let doc: Document = serde_json::from_str(text)
        .map_err(|e| CliError::Input(format!("bad semigroup JSON: {e}")))?;
    let n = doc.degree;
    match doc.kind.as_str() {
        "full" => {
            let elements = doc
                .elements
                .into_iter()
                .map(|row| {
                    let img = row
                        .into_iter()
                        .map(|v| {
                            v.ok_or_else(|| {
                                CliError::Input("null entry in a full transformation".into())
                            })
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    check_len(img.len(), n)?;
                    Ok(Transformation::new(img)?)
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            Ok(AnySet::Full(SemigroupSet::from_elements(n, elements)?))
        }
        "partial" => {
            let elements = doc
                .elements
                .into_iter()
                .map(|row| {
                    check_len(row.len(), n)?;
                    Ok(PartialTransformation::new(row)?)
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            Ok(AnySet::Partial(SemigroupSet::from_elements(n, elements)?))
        }
        other => Err(CliError::Input(format!("unknown kind {other:?}"))),
    }
}

fn check_len(len: usize, degree: usize) -> Result<(), CliError> {
    if len != degree {
        return Err(CliError::Input(format!(
            "element of length {len} in a set of degree {degree}"
        )));
    }
    Ok(())
}

pub fn read_set(path: &Path) -> Result<AnySet, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    from_json(&text)
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Output(format!("{}: {e}", path.display())))
}

/// Writes to `path`, or to stdout when absent.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => write_text(p, text),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}
