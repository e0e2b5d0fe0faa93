//! On-disk JSON layout of a degeneration model.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub n: usize,
    pub vertical: Vec<VerticalEntry>,
    pub strata: Vec<StratumEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub horizontal: Vec<HorizontalEntry>,
    #[serde(default)]
    pub flags: FlagsEntry,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerticalEntry {
    pub id: String,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumEntry {
    pub id: String,
    #[serde(rename = "I")]
    pub index_set: Vec<String>,
    /// Omitted touches are derived from the enumerated children.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub touches: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub parents: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HorizontalEntry {
    pub id: String,
    pub strata: Vec<StratumEntry>,
    pub lift: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlagsEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub proper: Option<bool>,
    #[serde(default)]
    pub isolated_singularity_compactification: bool,
}
