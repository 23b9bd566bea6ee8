//! Input loading with digests and schema-pointer error messages.

use crate::report::InputDigest;
use continuum_core::bits::Bits;
use continuum_core::grid::{cells_from_json, GridComplex, GridComplexFile, GridError};
use continuum_core::lattice::{FiniteLattice, LatticeFile};
use serde::de::DeserializeOwned;
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{source_name}: malformed JSON at {pointer}: {message}")]
    Schema {
        source_name: String,
        pointer: String,
        message: String,
    },
    #[error("{0}")]
    Invalid(String),
}

/// A loaded input: raw text, its digest and where it came from.
pub struct Loaded {
    pub text: String,
    pub digest: InputDigest,
}

/// Reads a file, or treats the argument as inline JSON when it starts
/// with `[` or `{`.
pub fn load(arg: &str) -> Result<Loaded, InputError> {
    let trimmed = arg.trim_start();
    let (text, source) = if trimmed.starts_with('[') || trimmed.starts_with('{') {
        (arg.to_owned(), "<inline>".to_owned())
    } else {
        let text = std::fs::read_to_string(arg).map_err(|source| InputError::Io {
            path: arg.to_owned(),
            source,
        })?;
        (text, arg.to_owned())
    };
    let mut hasher = Sha256::new();
    hasher.update(text.as_bytes());
    let sha256 = format!("{:x}", hasher.finalize());
    Ok(Loaded {
        text,
        digest: InputDigest { source, sha256 },
    })
}

/// Parses JSON with a JSON-pointer-ish location on error.
pub fn parse_json<T: DeserializeOwned>(loaded: &Loaded) -> Result<T, InputError> {
    serde_json::from_str(&loaded.text).map_err(|e| {
        // serde_json reports line/column; map the failing path roughly by
        // retrying with a Value to find the divergence
        let pointer = pointer_of_error(&loaded.text, &e);
        InputError::Schema {
            source_name: loaded.digest.source.clone(),
            pointer,
            message: e.to_string(),
        }
    })
}

fn pointer_of_error(text: &str, err: &serde_json::Error) -> String {
    // Structural errors (wrong arity, missing fields) surface from typed
    // deserialization, so inspect the generic value for shape mismatches.
    match serde_json::from_str::<serde_json::Value>(text) {
        Ok(value) => {
            // common case for tables: a row of the wrong length
            if let Some(obj) = value.as_object() {
                for key in ["meet", "join", "dist"] {
                    if let Some(rows) = obj.get(key).and_then(|v| v.as_array()) {
                        if let Some(n) = obj
                            .get("elements")
                            .or_else(|| obj.get("points"))
                            .and_then(|v| v.as_array())
                            .map(|a| a.len())
                        {
                            if rows.len() != n {
                                return format!("/{key}/{}", rows.len());
                            }
                            for (i, row) in rows.iter().enumerate() {
                                if row.as_array().map(|r| r.len()) != Some(n) {
                                    return format!("/{key}/{i}");
                                }
                            }
                        }
                    }
                }
            }
            format!("line {} column {}", err.line(), err.column())
        }
        Err(_) => format!("line {} column {}", err.line(), err.column()),
    }
}

pub fn load_lattice(arg: &str) -> Result<(FiniteLattice, InputDigest), InputError> {
    let loaded = load(arg)?;
    let file: LatticeFile = parse_json(&loaded)?;
    // structural table errors get schema pointers before validation
    let n = file.elements.len();
    for (key, rows) in [("meet", &file.meet), ("join", &file.join)] {
        if rows.len() != n {
            return Err(InputError::Schema {
                source_name: loaded.digest.source.clone(),
                pointer: format!("/{key}/{}", rows.len()),
                message: format!("expected {n} rows"),
            });
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(InputError::Schema {
                    source_name: loaded.digest.source.clone(),
                    pointer: format!("/{key}/{i}"),
                    message: format!("expected {n} entries"),
                });
            }
        }
    }
    let tables = file
        .to_tables()
        .map_err(|e| InputError::Invalid(e.to_string()))?;
    let lattice =
        FiniteLattice::from_tables(tables).map_err(|e| InputError::Invalid(e.to_string()))?;
    Ok((lattice, loaded.digest))
}

pub fn load_grid(arg: &str, cap: usize) -> Result<(GridComplex, InputDigest), InputError> {
    let loaded = load(arg)?;
    let file: GridComplexFile = parse_json(&loaded)?;
    let complex = file
        .to_complex(cap)
        .map_err(|e: GridError| InputError::Invalid(e.to_string()))?;
    Ok((complex, loaded.digest))
}

pub fn load_cells(
    arg: &str,
    complex: &GridComplex,
) -> Result<(Bits, InputDigest), InputError> {
    let loaded = load(arg)?;
    let list: Vec<Vec<u32>> = parse_json(&loaded)?;
    let cells =
        cells_from_json(complex, &list).map_err(|e| InputError::Invalid(e.to_string()))?;
    Ok((cells, loaded.digest))
}

pub fn load_pairs(
    arg: &str,
    complex: &GridComplex,
) -> Result<(Vec<(Bits, Bits)>, InputDigest), InputError> {
    let loaded = load(arg)?;
    let list: Vec<[Vec<Vec<u32>>; 2]> = parse_json(&loaded)?;
    let mut pairs = Vec::new();
    for [a, b] in &list {
        let a = cells_from_json(complex, a).map_err(|e| InputError::Invalid(e.to_string()))?;
        let b = cells_from_json(complex, b).map_err(|e| InputError::Invalid(e.to_string()))?;
        pairs.push((a, b));
    }
    Ok((pairs, loaded.digest))
}
