//! Named collections of constructor expressions.
//!
//! A catalog file is the unit the batch commands operate on: one
//! `name = expression` per line, `#` for comments. The default catalog
//! (shipped in `catalogs/default.cat` and embedded here) collects the
//! rings the test suites quantify over.

use crate::construct::{build_str, BuildCaps, BuildError};
use crate::ring::FiniteRing;
use rayon::prelude::*;
use thiserror::Error;

pub const DEFAULT_CATALOG: &str = include_str!("../../../catalogs/default.cat");

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: duplicate name `{name}`")]
    DuplicateName { line: usize, name: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub expression: String,
}

#[derive(Debug, Clone, Default)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    /// The catalog every batch command falls back to.
    pub fn default_catalog() -> Catalog {
        Catalog::parse(DEFAULT_CATALOG).expect("shipped catalog parses")
    }

    pub fn parse(src: &str) -> Result<Catalog, CatalogError> {
        let mut entries: Vec<CatalogEntry> = Vec::new();
        for (lineno, raw) in src.lines().enumerate() {
            let line = lineno + 1;
            let text = raw.split('#').next().unwrap_or("").trim();
            if text.is_empty() {
                continue;
            }
            let Some((name, expression)) = text.split_once('=') else {
                return Err(CatalogError::Syntax {
                    line,
                    message: format!("expected `name = expression`, got `{text}`"),
                });
            };
            let name = name.trim();
            let expression = expression.trim();
            if name.is_empty() || name.contains(char::is_whitespace) {
                return Err(CatalogError::Syntax {
                    line,
                    message: format!("`{name}` is not a valid entry name"),
                });
            }
            if expression.is_empty() {
                return Err(CatalogError::Syntax {
                    line,
                    message: format!("entry `{name}` has an empty expression"),
                });
            }
            if entries.iter().any(|e| e.name == name) {
                return Err(CatalogError::DuplicateName {
                    line,
                    name: name.to_string(),
                });
            }
            entries.push(CatalogEntry {
                name: name.to_string(),
                expression: expression.to_string(),
            });
        }
        Ok(Catalog { entries })
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// Build every entry, in parallel, keeping catalog order. Build
    /// failures are per-entry results, not a batch abort.
    pub fn build_all(&self, caps: &BuildCaps) -> Vec<(CatalogEntry, Result<FiniteRing, BuildError>)> {
        self.entries
            .par_iter()
            .map(|e| (e.clone(), build_str(&e.expression, caps)))
            .collect()
    }

    /// Build every entry, failing loudly on the first broken one — the
    /// shape the theorem suites want, where a missing ring is a bug.
    pub fn build_all_strict(&self, caps: &BuildCaps) -> Result<Vec<(String, FiniteRing)>, BuildError> {
        self.build_all(caps)
            .into_iter()
            .map(|(e, r)| r.map(|ring| (e.name, ring)))
            .collect()
    }
}
