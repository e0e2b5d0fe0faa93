//! Trivialization data for the `B` complexes.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::EigenError;
use crate::snc_model::{DegenerationModel, StrataTable};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TrivialEntry {
    Keyword(String),
    Ids(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KappaEntry {
    pub parent: String,
    pub child: String,
    pub exp: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RestrictionEntry {
    pub upper: String,
    pub lower: String,
    pub exp: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderEntry {
    pub d: u32,
    pub trivial: TrivialEntry,
    #[serde(default)]
    pub kappa: Vec<KappaEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa_default: Option<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub restriction: Vec<RestrictionEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restriction_default: Option<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub overrides: Vec<OverrideEntry>,
}

/// Per-exponent replacement of parts of an order block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OverrideEntry {
    pub a: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trivial: Option<TrivialEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub kappa: Vec<KappaEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa_default: Option<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub restriction: Vec<RestrictionEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restriction_default: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HorizontalAtlasEntry {
    #[serde(default)]
    pub orders: Vec<OrderEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtlasFile {
    #[serde(default)]
    pub orders: Vec<OrderEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub horizontal: BTreeMap<String, HorizontalAtlasEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TrivialSet {
    /// Every λ-stratum.
    All,
    Ids(BTreeSet<String>),
}

/// The data of one order block after applying the override for a given exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtlasBlock {
    pub trivial: TrivialSet,
    pub kappa: BTreeMap<(String, String), i64>,
    pub kappa_default: Option<i64>,
    /// Lower (sub-model) stratum id → (upper id, exponent).
    pub restriction: BTreeMap<String, (String, i64)>,
    pub restriction_default: Option<i64>,
}

impl AtlasBlock {
    /// All λ-strata trivial, every constant 1.
    pub fn canonical() -> Self {
        Self {
            trivial: TrivialSet::All,
            kappa: BTreeMap::new(),
            kappa_default: Some(0),
            restriction: BTreeMap::new(),
            restriction_default: Some(0),
        }
    }

    pub fn kappa(&self, parent: &str, child: &str) -> Option<i64> {
        self.kappa
            .get(&(parent.to_string(), child.to_string()))
            .copied()
            .or(self.kappa_default)
    }

    pub fn restriction(&self, lower: &str) -> Option<i64> {
        self.restriction
            .get(lower)
            .map(|(_, e)| *e)
            .or(self.restriction_default)
    }

    /// Table positions of trivial λ-strata, in table order.
    pub(crate) fn trivial_positions(
        &self,
        scope: &str,
        d: u32,
        table: &StrataTable,
        j: &BTreeSet<usize>,
    ) -> Result<Vec<usize>, EigenError> {
        let lambda: Vec<usize> = table.lambda_positions(j);
        match &self.trivial {
            TrivialSet::All => Ok(lambda),
            TrivialSet::Ids(ids) => {
                let mut out = Vec::with_capacity(ids.len());
                for id in ids {
                    let pos = table.position(id).ok_or_else(|| {
                        EigenError::atlas(format!("{scope}, order {d}: trivial set names unknown stratum '{id}'"))
                    })?;
                    if !lambda.contains(&pos) {
                        return Err(EigenError::atlas(format!(
                            "{scope}, order {d}: trivial stratum '{id}' is not a λ-stratum"
                        )));
                    }
                    out.push(pos);
                }
                out.sort_unstable();
                Ok(out)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct OrderBlock {
    base: AtlasBlock,
    overrides: BTreeMap<u32, OverrideEntry>,
}

/// Per-order trivialization data for the main model and each horizontal sub-model.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TrivializationAtlas {
    main: BTreeMap<u32, OrderBlock>,
    horizontal: BTreeMap<String, BTreeMap<u32, OrderBlock>>,
    file: AtlasFile,
}

fn trivial_set(entry: &TrivialEntry, scope: &str, d: u32) -> Result<TrivialSet, EigenError> {
    match entry {
        TrivialEntry::Keyword(k) if k == "all" => Ok(TrivialSet::All),
        TrivialEntry::Keyword(k) => Err(EigenError::atlas(format!(
            "{scope}, order {d}: trivial must be a list of ids or \"all\", got \"{k}\""
        ))),
        TrivialEntry::Ids(ids) => {
            let set: BTreeSet<String> = ids.iter().cloned().collect();
            if set.len() != ids.len() {
                return Err(EigenError::atlas(format!(
                    "{scope}, order {d}: trivial set repeats an id"
                )));
            }
            Ok(TrivialSet::Ids(set))
        }
    }
}

fn merge_kappa(
    into: &mut BTreeMap<(String, String), i64>,
    entries: &[KappaEntry],
    scope: &str,
    d: u32,
) -> Result<(), EigenError> {
    for k in entries {
        let key = (k.parent.clone(), k.child.clone());
        if into.insert(key, k.exp).is_some() {
            return Err(EigenError::atlas(format!(
                "{scope}, order {d}: kappa for ('{}', '{}') given twice",
                k.parent, k.child
            )));
        }
    }
    Ok(())
}

fn merge_restriction(
    into: &mut BTreeMap<String, (String, i64)>,
    entries: &[RestrictionEntry],
    scope: &str,
    d: u32,
) -> Result<(), EigenError> {
    for r in entries {
        if into.insert(r.lower.clone(), (r.upper.clone(), r.exp)).is_some() {
            return Err(EigenError::atlas(format!(
                "{scope}, order {d}: restriction for '{}' given twice",
                r.lower
            )));
        }
    }
    Ok(())
}

fn order_blocks(entries: &[OrderEntry], scope: &str) -> Result<BTreeMap<u32, OrderBlock>, EigenError> {
    let mut out = BTreeMap::new();
    for e in entries {
        if e.d == 0 {
            return Err(EigenError::atlas(format!("{scope}: order 0 is not allowed")));
        }
        let mut kappa = BTreeMap::new();
        merge_kappa(&mut kappa, &e.kappa, scope, e.d)?;
        let mut restriction = BTreeMap::new();
        merge_restriction(&mut restriction, &e.restriction, scope, e.d)?;
        let base = AtlasBlock {
            trivial: trivial_set(&e.trivial, scope, e.d)?,
            kappa,
            kappa_default: e.kappa_default,
            restriction,
            restriction_default: e.restriction_default,
        };
        let mut overrides = BTreeMap::new();
        for o in &e.overrides {
            if o.a == 0 || o.a > e.d || num_integer::gcd(o.a, e.d) != 1 {
                return Err(EigenError::atlas(format!(
                    "{scope}, order {}: override exponent {} is not a unit modulo the order",
                    e.d, o.a
                )));
            }
            if let Some(t) = &o.trivial {
                trivial_set(t, scope, e.d)?;
            }
            if overrides.insert(o.a, o.clone()).is_some() {
                return Err(EigenError::atlas(format!(
                    "{scope}, order {}: exponent {} overridden twice",
                    e.d, o.a
                )));
            }
        }
        if out.insert(e.d, OrderBlock { base, overrides }).is_some() {
            return Err(EigenError::atlas(format!("{scope}: order {} appears twice", e.d)));
        }
    }
    Ok(out)
}

fn resolve(blocks: &BTreeMap<u32, OrderBlock>, scope: &str, d: u32, a: u32) -> Result<AtlasBlock, EigenError> {
    let Some(block) = blocks.get(&d) else {
        if d == 1 {
            return Ok(AtlasBlock::canonical());
        }
        return Err(EigenError::MissingOrder {
            scope: scope.to_string(),
            d,
        });
    };
    let mut out = block.base.clone();
    if let Some(o) = block.overrides.get(&a) {
        if let Some(t) = &o.trivial {
            out.trivial = trivial_set(t, scope, d)?;
        }
        for k in &o.kappa {
            out.kappa.insert((k.parent.clone(), k.child.clone()), k.exp);
        }
        if o.kappa_default.is_some() {
            out.kappa_default = o.kappa_default;
        }
        for r in &o.restriction {
            out.restriction.insert(r.lower.clone(), (r.upper.clone(), r.exp));
        }
        if o.restriction_default.is_some() {
            out.restriction_default = o.restriction_default;
        }
    }
    Ok(out)
}

impl TrivializationAtlas {
    pub fn from_file(file: &AtlasFile) -> Result<Self, EigenError> {
        let main = order_blocks(&file.orders, "atlas")?;
        let mut horizontal = BTreeMap::new();
        for (k, h) in &file.horizontal {
            horizontal.insert(k.clone(), order_blocks(&h.orders, &format!("atlas horizontal '{k}'"))?);
        }
        Ok(Self {
            main,
            horizontal,
            file: file.clone(),
        })
    }

    pub fn to_file(&self) -> &AtlasFile {
        &self.file
    }

    /// The atlas with no blocks: only order 1 resolves, canonically.
    pub fn canonical() -> Self {
        Self::default()
    }

    pub fn orders(&self) -> BTreeSet<u32> {
        let mut out: BTreeSet<u32> = self.main.keys().copied().collect();
        out.insert(1);
        out
    }

    pub fn has_order(&self, d: u32) -> bool {
        d == 1 || self.main.contains_key(&d)
    }

    pub fn block(&self, d: u32, a: u32) -> Result<AtlasBlock, EigenError> {
        resolve(&self.main, "atlas", d, a)
    }

    /// Block for the sub-model of horizontal divisor `k`. Order 1 and sub-models
    /// without any atlas data fall back to the canonical block at order 1 only.
    pub fn horizontal_block(&self, k: &str, d: u32, a: u32) -> Result<AtlasBlock, EigenError> {
        let scope = format!("atlas horizontal '{k}'");
        match self.horizontal.get(k) {
            Some(blocks) => resolve(blocks, &scope, d, a),
            None => resolve(&BTreeMap::new(), &scope, d, a),
        }
    }

    /// Checks every id and adjacency the atlas mentions against `model`.
    pub fn validate(&self, model: &DegenerationModel) -> Result<(), EigenError> {
        for k in self.horizontal.keys() {
            model.horizontal_by_id(k)?;
        }
        for (&d, block) in &self.main {
            for a in exponents(block) {
                let b = self.block(d, a)?;
                check_block(model, model.strata(), "atlas", d, &b)?;
            }
        }
        for (k, blocks) in &self.horizontal {
            let h = model.horizontal_by_id(k)?;
            let scope = format!("atlas horizontal '{k}'");
            for (&d, block) in blocks {
                for a in exponents(block) {
                    let b = self.horizontal_block(k, d, a)?;
                    check_block(model, &h.table, &scope, d, &b)?;
                    for (lower, (upper, _)) in &b.restriction {
                        let pos = h.table.position(lower).ok_or_else(|| {
                            EigenError::atlas(format!(
                                "{scope}, order {d}: restriction names unknown stratum '{lower}'"
                            ))
                        })?;
                        let lift = model.strata().get(h.lift[pos]);
                        if &lift.id != upper {
                            return Err(EigenError::atlas(format!(
                                "{scope}, order {d}: restriction pairs '{lower}' with '{upper}', but it lifts to '{}'",
                                lift.id
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn exponents(block: &OrderBlock) -> Vec<u32> {
    let mut out = vec![1];
    out.extend(block.overrides.keys().copied().filter(|&a| a != 1));
    out
}

fn check_block(
    model: &DegenerationModel,
    table: &StrataTable,
    scope: &str,
    d: u32,
    block: &AtlasBlock,
) -> Result<(), EigenError> {
    let j = model.j_set(d);
    block.trivial_positions(scope, d, table, &j)?;
    for (parent, child) in block.kappa.keys() {
        let p = table
            .position(parent)
            .ok_or_else(|| EigenError::atlas(format!("{scope}, order {d}: kappa names unknown stratum '{parent}'")))?;
        let c = table
            .position(child)
            .ok_or_else(|| EigenError::atlas(format!("{scope}, order {d}: kappa names unknown stratum '{child}'")))?;
        if !table.get(c).parents.values().any(|&x| x == p) {
            return Err(EigenError::atlas(format!(
                "{scope}, order {d}: kappa pair ('{parent}', '{child}') is not a codimension-one inclusion"
            )));
        }
    }
    Ok(())
}

pub fn parse_atlas(document: &str) -> Result<TrivializationAtlas, EigenError> {
    let file: AtlasFile =
        serde_json::from_str(document).map_err(|e| EigenError::atlas(format!("syntax error: {e}")))?;
    TrivializationAtlas::from_file(&file)
}

pub fn load_atlas(path: impl AsRef<Path>) -> Result<TrivializationAtlas, EigenError> {
    let path = path.as_ref();
    let text =
        std::fs::read_to_string(path).map_err(|e| EigenError::atlas(format!("cannot read {}: {e}", path.display())))?;
    parse_atlas(&text).map_err(|e| match e {
        EigenError::Atlas(msg) => EigenError::Atlas(format!("{}: {msg}", path.display())),
        other => other,
    })
}
