//! JSON knot files.
//!
//! ```json
//! {
//!   "name": "K_1",
//!   "seifert": [[-1, 1], [0, -1]],
//!   "infections": [
//!     {"band": 1, "companion": "J"},
//!     {"band": 2, "companion": {"name": "J'", "seifert": [[-1, 1], [0, -1]]}}
//!   ],
//!   "definitions": {"J": {"name": "J", "seifert": [[-1, 1], [0, -1]]}}
//! }
//! ```
//!
//! A string companion names an entry of the top-level `definitions`
//! table. Definitions may refer to each other but not cyclically.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::family::{satellite_compose, FamilyError, InfectionCurve, KnotDescription};
use crate::seifert::{SeifertError, SeifertMatrix};

/// Bound on the expanded companion tree; shared definitions are copied.
pub const MAX_KNOTS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KnotFileError {
    #[error("input is not UTF-8 (byte {0})")]
    NotUtf8(usize),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {source}")]
    InvalidSeifert { path: String, source: SeifertError },
    #[error("{path}: {source}")]
    Infection { path: String, source: FamilyError },
    #[error("unknown companion reference {0:?}")]
    UnknownReference(String),
    #[error("description expands to more than {0} knots")]
    TooLarge(usize),
    #[error("cyclic companion reference: {}", .0.join(" -> "))]
    CyclicReference(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KnotFile {
    #[serde(default)]
    pub name: Option<String>,
    pub seifert: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub infections: Vec<InfectionEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub definitions: BTreeMap<String, KnotFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InfectionEntry {
    /// 1-based band of the Seifert surface linked by the infection curve.
    pub band: usize,
    pub companion: CompanionRef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tag: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CompanionRef {
    Reference(String),
    Inline(Box<KnotFile>),
}

impl KnotFile {
    /// Inline form of a description; parsing it gives the description back.
    pub fn from_description(desc: &KnotDescription) -> Self {
        Self {
            name: desc.name.clone(),
            seifert: desc.seifert_matrix().rows(),
            infections: desc
                .infections()
                .iter()
                .map(|inf| InfectionEntry {
                    band: inf.curve.band_index,
                    companion: CompanionRef::Inline(Box::new(Self::from_description(
                        &inf.companion,
                    ))),
                    tag: (!inf.curve.family_tag.is_empty()).then(|| inf.curve.family_tag.clone()),
                })
                .collect(),
            definitions: BTreeMap::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("knot file serializes")
    }
}

pub fn parse_knot_file(bytes: &[u8]) -> Result<KnotDescription, KnotFileError> {
    let text = std::str::from_utf8(bytes).map_err(|e| KnotFileError::NotUtf8(e.valid_up_to()))?;
    let file: KnotFile = serde_json::from_str(text).map_err(|e| KnotFileError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let mut resolver = Resolver {
        definitions: &file.definitions,
        resolved: BTreeMap::new(),
        stack: Vec::new(),
        nodes: 0,
    };
    let path = file.name.clone().unwrap_or_else(|| "<root>".into());
    resolver.build(&file, &path)
}

struct Resolver<'a> {
    definitions: &'a BTreeMap<String, KnotFile>,
    resolved: BTreeMap<String, KnotDescription>,
    stack: Vec<String>,
    nodes: usize,
}

impl Resolver<'_> {
    fn build(&mut self, file: &KnotFile, path: &str) -> Result<KnotDescription, KnotFileError> {
        let base = SeifertMatrix::validate(file.seifert.clone()).map_err(|source| {
            KnotFileError::InvalidSeifert {
                path: path.to_string(),
                source,
            }
        })?;
        let mut desc = KnotDescription::new(base);
        desc.name = file.name.clone();
        let mut curves = Vec::with_capacity(file.infections.len());
        let mut companions = Vec::with_capacity(file.infections.len());
        for (k, inf) in file.infections.iter().enumerate() {
            let companion = match &inf.companion {
                CompanionRef::Reference(name) => self.lookup(name)?,
                CompanionRef::Inline(inner) => {
                    self.build(inner, &format!("{path}.infections[{k}]"))?
                }
            };
            self.nodes += companion.node_count();
            if self.nodes > MAX_KNOTS {
                return Err(KnotFileError::TooLarge(MAX_KNOTS));
            }
            curves.push(InfectionCurve {
                band_index: inf.band,
                family_tag: inf.tag.clone().unwrap_or_default(),
            });
            companions.push(companion);
        }
        satellite_compose(&desc, &curves, &companions).map_err(|source| KnotFileError::Infection {
            path: path.to_string(),
            source,
        })
    }

    fn lookup(&mut self, name: &str) -> Result<KnotDescription, KnotFileError> {
        if let Some(done) = self.resolved.get(name) {
            return Ok(done.clone());
        }
        if let Some(pos) = self.stack.iter().position(|s| s == name) {
            let mut cycle = self.stack[pos..].to_vec();
            cycle.push(name.to_string());
            return Err(KnotFileError::CyclicReference(cycle));
        }
        let def = self
            .definitions
            .get(name)
            .ok_or_else(|| KnotFileError::UnknownReference(name.to_string()))?;
        self.stack.push(name.to_string());
        let built = self.build(def, &format!("definitions.{name}"));
        self.stack.pop();
        let mut built = built?;
        built.name.get_or_insert_with(|| name.to_string());
        self.resolved.insert(name.to_string(), built.clone());
        Ok(built)
    }
}
