//! Atom manifests: a JSON object mapping each formula label to a projector,
//! given either inline or as a path relative to the manifest's directory.
//!
//! ```json
//! {"P": "projector_Y32.json", "Q": {"rows": 1, "cols": 1, "data": [[1, 0]]}}
//! ```

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::Value;
use thiserror::Error;

use qprop_core::{Projector, Tolerance};

use crate::format::{projector_from_value, FormatError};
use crate::formula::is_atom_char;

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Format { path: PathBuf, source: FormatError },
    #[error("{path}: atom `{label}`: {message}")]
    Entry {
        path: PathBuf,
        label: String,
        message: String,
    },
}

pub type Atoms = BTreeMap<String, Arc<Projector>>;

fn read_json(path: &Path) -> Result<Value, ManifestError> {
    let text = fs::read_to_string(path).map_err(|source| ManifestError::Io {
        path: path.to_owned(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| ManifestError::Format {
        path: path.to_owned(),
        source: e.into(),
    })
}

pub fn load(path: &Path, tol: &Tolerance) -> Result<Atoms, ManifestError> {
    let root = read_json(path)?;
    let entries = root.as_object().ok_or_else(|| ManifestError::Format {
        path: path.to_owned(),
        source: FormatError::Field {
            field: "<root>".into(),
            message: "expected an object mapping labels to projectors".into(),
        },
    })?;
    let base = path.parent().unwrap_or(Path::new("."));
    let mut atoms = Atoms::new();
    for (label, entry) in entries {
        let bad = |message: String| ManifestError::Entry {
            path: path.to_owned(),
            label: label.clone(),
            message,
        };
        if label.is_empty() || !label.chars().all(is_atom_char) {
            return Err(bad(
                "labels may not contain whitespace, `!`, `&`, `|` or parentheses".into(),
            ));
        }
        let (source_path, value) = match entry {
            Value::String(rel) => {
                let p = base.join(rel);
                let v = read_json(&p)?;
                (p, v)
            }
            Value::Object(_) => (path.to_owned(), entry.clone()),
            _ => return Err(bad("expected a file path or an inline projector".into())),
        };
        let inline = entry.is_object();
        let (p, _) = projector_from_value(&value, tol).map_err(|source| {
            if inline {
                bad(source.to_string())
            } else {
                ManifestError::Format {
                    path: source_path,
                    source,
                }
            }
        })?;
        atoms.insert(label.clone(), Arc::new(p));
    }
    Ok(atoms)
}
