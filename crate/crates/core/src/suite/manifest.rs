//! Suite manifests: a TOML list of `[[check]]` tables, each an `id` plus
//! any configuration keys of that check.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::{CheckId, CheckSpec};
use crate::error::{Error, Result};

/// The manifest run by `suite` when no file is given.
pub const DEFAULT_MANIFEST: &str = include_str!("../../manifests/default.toml");

#[derive(Clone, Debug, PartialEq)]
pub struct ManifestEntry {
    pub id: CheckId,
    pub spec: CheckSpec,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Manifest {
    pub entries: Vec<ManifestEntry>,
}

#[derive(Deserialize)]
struct RawManifest {
    #[serde(default)]
    check: Vec<toml::Table>,
}

#[derive(Serialize)]
struct RawEntry<'a> {
    id: &'a str,
    #[serde(flatten)]
    spec: &'a CheckSpec,
}

#[derive(Serialize)]
struct RawOut<'a> {
    check: Vec<RawEntry<'a>>,
}

impl Manifest {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawManifest = toml::from_str(text).map_err(|e| Error::Config(format!("manifest: {e}")))?;
        let mut entries = Vec::with_capacity(raw.check.len());
        for (i, mut table) in raw.check.into_iter().enumerate() {
            let id = match table.remove("id") {
                Some(toml::Value::String(s)) => s.parse::<CheckId>()?,
                Some(_) => return Err(Error::Config(format!("manifest entry {i}: `id` must be a string"))),
                None => return Err(Error::Config(format!("manifest entry {i}: missing `id`"))),
            };
            let spec: CheckSpec =
                toml::Value::Table(table).try_into().map_err(|e| Error::Config(format!("manifest entry {i} ({id}): {e}")))?;
            entries.push(ManifestEntry { id, spec });
        }
        Ok(Manifest { entries })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml(&self) -> Result<String> {
        let check = self.entries.iter().map(|e| RawEntry { id: e.id.as_str(), spec: &e.spec }).collect();
        toml::to_string(&RawOut { check }).map_err(|e| Error::Serde(e.to_string()))
    }

    pub fn push(&mut self, id: CheckId, spec: CheckSpec) {
        self.entries.push(ManifestEntry { id, spec });
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn default_manifest() -> Manifest {
    Manifest::parse(DEFAULT_MANIFEST).expect("bundled manifest parses")
}
