//! Combinatorial models of simple-normal-crossing special fibers.
//!
//! A model lists the vertical components `Y_i` with multiplicities, the
//! connected components of every intersection `Y_I` (strata) with their
//! incidences, and for each horizontal divisor `D_k` the analogous table for
//! `D_k ∩ Y_I` together with its lift into the main table.

mod file;
mod group;
mod table;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;

pub use file::{FlagsEntry, HorizontalEntry, ModelFile, StratumEntry, VerticalEntry};
pub use group::FiniteAbelianGroup;
pub use table::{StrataTable, StratumComponent};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{scope}: {message}")]
    Invalid { scope: String, message: String },
    #[error("{scope}: incomplete for order {order}: stratum '{stratum}' touches '{index}' but no component of the intersection is enumerated")]
    Incomplete {
        scope: String,
        order: u32,
        stratum: String,
        index: String,
    },
    #[error("index set {index_set:?} is not contained in J(λ) for order {order}")]
    Domain { index_set: Vec<String>, order: u32 },
    #[error("unknown vertical component '{0}'")]
    UnknownVertical(String),
    #[error("unknown horizontal divisor '{0}'")]
    UnknownHorizontal(String),
}

impl ModelError {
    pub(crate) fn invalid(scope: &str, message: impl Into<String>) -> Self {
        Self::Invalid {
            scope: scope.to_string(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerticalComponent {
    pub id: String,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HorizontalDivisor {
    pub id: String,
    pub table: StrataTable,
    /// Sub-model stratum index → main stratum index.
    pub lift: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ModelFlags {
    pub proper: bool,
    pub isolated_singularity_compactification: bool,
}

/// A validated degeneration model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegenerationModel {
    n: usize,
    vertical: Vec<VerticalComponent>,
    vertical_index: HashMap<String, usize>,
    strata: StrataTable,
    horizontal: Vec<HorizontalDivisor>,
    flags: ModelFlags,
    /// Whether `proper` was stated explicitly in the source document.
    proper_declared: bool,
}

pub const MAIN_SCOPE: &str = "model";

impl DegenerationModel {
    pub fn from_file(file: &ModelFile) -> Result<Self, ModelError> {
        if file.vertical.is_empty() {
            return Err(ModelError::invalid(
                MAIN_SCOPE,
                "at least one vertical component is required",
            ));
        }
        let mut vertical_index = HashMap::new();
        let mut vertical = Vec::with_capacity(file.vertical.len());
        for (pos, v) in file.vertical.iter().enumerate() {
            if v.multiplicity == 0 {
                return Err(ModelError::invalid(
                    MAIN_SCOPE,
                    format!("vertical component '{}' has multiplicity 0", v.id),
                ));
            }
            if vertical_index.insert(v.id.clone(), pos).is_some() {
                return Err(ModelError::invalid(
                    MAIN_SCOPE,
                    format!("duplicate vertical id '{}'", v.id),
                ));
            }
            vertical.push(VerticalComponent {
                id: v.id.clone(),
                multiplicity: v.multiplicity,
            });
        }
        let ids: Vec<String> = vertical.iter().map(|v| v.id.clone()).collect();
        let strata = StrataTable::build(MAIN_SCOPE, &file.strata, &ids, &vertical_index, file.n + 1)?;
        for (pos, v) in vertical.iter().enumerate() {
            let count = strata.over(&[pos]).count();
            if count != 1 {
                return Err(ModelError::invalid(
                    MAIN_SCOPE,
                    format!(
                        "vertical component '{}' must have exactly one stratum over {{{}}}, found {count}",
                        v.id, v.id
                    ),
                ));
            }
        }

        let mut horizontal = Vec::with_capacity(file.horizontal.len());
        let mut seen = BTreeSet::new();
        for h in &file.horizontal {
            let scope = format!("horizontal '{}'", h.id);
            if !seen.insert(h.id.clone()) {
                return Err(ModelError::invalid(
                    MAIN_SCOPE,
                    format!("duplicate horizontal id '{}'", h.id),
                ));
            }
            if vertical_index.contains_key(&h.id) {
                return Err(ModelError::invalid(
                    MAIN_SCOPE,
                    format!("horizontal id '{}' collides with a vertical id", h.id),
                ));
            }
            let table = StrataTable::build(&scope, &h.strata, &ids, &vertical_index, file.n)?;
            let lift = build_lift(&scope, &table, &strata, &h.lift)?;
            horizontal.push(HorizontalDivisor {
                id: h.id.clone(),
                table,
                lift,
            });
        }

        let proper = file.flags.proper.unwrap_or(horizontal.is_empty());
        if proper && !horizontal.is_empty() {
            return Err(ModelError::invalid(
                MAIN_SCOPE,
                "flag 'proper' is set but horizontal divisors are present",
            ));
        }
        Ok(Self {
            n: file.n,
            vertical,
            vertical_index,
            strata,
            horizontal,
            flags: ModelFlags {
                proper,
                isolated_singularity_compactification: file.flags.isolated_singularity_compactification,
            },
            proper_declared: file.flags.proper.is_some(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertical(&self) -> &[VerticalComponent] {
        &self.vertical
    }

    pub fn vertical_id(&self, idx: usize) -> &str {
        &self.vertical[idx].id
    }

    pub fn vertical_pos(&self, id: &str) -> Option<usize> {
        self.vertical_index.get(id).copied()
    }

    pub fn multiplicity(&self, idx: usize) -> u64 {
        self.vertical[idx].multiplicity
    }

    pub fn strata(&self) -> &StrataTable {
        &self.strata
    }

    pub fn horizontal(&self) -> &[HorizontalDivisor] {
        &self.horizontal
    }

    pub fn horizontal_by_id(&self, id: &str) -> Result<&HorizontalDivisor, ModelError> {
        self.horizontal
            .iter()
            .find(|h| h.id == id)
            .ok_or_else(|| ModelError::UnknownHorizontal(id.to_string()))
    }

    pub fn flags(&self) -> ModelFlags {
        self.flags
    }

    /// All orders `d ≥ 1` dividing at least one multiplicity.
    pub fn lambda_orders(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        for v in &self.vertical {
            let m = v.multiplicity;
            let mut e = 1;
            while e * e <= m {
                if m % e == 0 {
                    out.insert(e as u32);
                    out.insert((m / e) as u32);
                }
                e += 1;
            }
        }
        out
    }

    /// `J(λ)` for any `λ` of order `d`, as vertical indices.
    pub fn j_set(&self, d: u32) -> BTreeSet<usize> {
        self.vertical
            .iter()
            .enumerate()
            .filter(|(_, v)| v.multiplicity % d as u64 == 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn j_set_ids(&self, d: u32) -> BTreeSet<String> {
        self.j_set(d).into_iter().map(|i| self.vertical[i].id.clone()).collect()
    }

    /// Components of `Y^{(λ)}_I` for `λ` of order `d`.
    pub fn lambda_strata(&self, d: u32, index_set: &[&str]) -> Result<Vec<&StratumComponent>, ModelError> {
        let mut idx = Vec::with_capacity(index_set.len());
        for id in index_set {
            idx.push(
                self.vertical_pos(id)
                    .ok_or_else(|| ModelError::UnknownVertical(id.to_string()))?,
            );
        }
        idx.sort_unstable();
        idx.dedup();
        let j = self.j_set(d);
        if !idx.iter().all(|i| j.contains(i)) {
            return Err(ModelError::Domain {
                index_set: index_set.iter().map(|s| s.to_string()).collect(),
                order: d,
            });
        }
        Ok(self
            .strata
            .iter()
            .filter(|s| s.index_set == idx && self.strata.is_lambda(s, &j))
            .collect())
    }

    /// Verifies that every intersection needed by the order-`d` complexes is
    /// enumerated, in the main table and in every sub-model.
    pub fn check_complete(&self, d: u32) -> Result<(), ModelError> {
        let j = self.j_set(d);
        self.strata.check_complete(MAIN_SCOPE, d, &j, &self.vertical)?;
        for h in &self.horizontal {
            h.table
                .check_complete(&format!("horizontal '{}'", h.id), d, &j, &self.vertical)?;
        }
        Ok(())
    }

    pub fn is_complete(&self, d: u32) -> bool {
        self.check_complete(d).is_ok()
    }

    pub fn to_file(&self) -> ModelFile {
        let ids: Vec<String> = self.vertical.iter().map(|v| v.id.clone()).collect();
        ModelFile {
            n: self.n,
            vertical: self
                .vertical
                .iter()
                .map(|v| VerticalEntry {
                    id: v.id.clone(),
                    multiplicity: v.multiplicity,
                })
                .collect(),
            strata: self.strata.to_entries(&ids),
            horizontal: self
                .horizontal
                .iter()
                .map(|h| HorizontalEntry {
                    id: h.id.clone(),
                    strata: h.table.to_entries(&ids),
                    lift: h
                        .lift
                        .iter()
                        .enumerate()
                        .map(|(s, &t)| (h.table.get(s).id.clone(), self.strata.get(t).id.clone()))
                        .collect(),
                })
                .collect(),
            flags: FlagsEntry {
                proper: self.proper_declared.then_some(self.flags.proper),
                isolated_singularity_compactification: self.flags.isolated_singularity_compactification,
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("model serializes")
    }
}

fn build_lift(
    scope: &str,
    sub: &StrataTable,
    main: &StrataTable,
    lift: &BTreeMap<String, String>,
) -> Result<Vec<usize>, ModelError> {
    for key in lift.keys() {
        if sub.position(key).is_none() {
            return Err(ModelError::invalid(
                scope,
                format!("lift names unknown sub-stratum '{key}'"),
            ));
        }
    }
    let mut out = Vec::with_capacity(sub.len());
    for s in sub.iter() {
        let target = lift
            .get(&s.id)
            .ok_or_else(|| ModelError::invalid(scope, format!("stratum '{}' has no lift", s.id)))?;
        let t = main.position(target).ok_or_else(|| {
            ModelError::invalid(scope, format!("stratum '{}' lifts to unknown stratum '{target}'", s.id))
        })?;
        if main.get(t).index_set != s.index_set {
            return Err(ModelError::invalid(
                scope,
                format!("stratum '{}' lifts to '{target}' over a different index set", s.id),
            ));
        }
        if !s.touches.is_subset(&main.get(t).touches) {
            return Err(ModelError::invalid(
                scope,
                format!("stratum '{}' touches components its lift '{target}' does not", s.id),
            ));
        }
        out.push(t);
    }
    for (pos, s) in sub.iter().enumerate() {
        for (&i, &p) in &s.parents {
            if out[p] != main.get(out[pos]).parents[&i] {
                return Err(ModelError::invalid(
                    scope,
                    format!("lift of stratum '{}' does not commute with its parent maps", s.id),
                ));
            }
        }
    }
    Ok(out)
}

/// Parses and validates a model document.
pub fn parse_model(document: &str) -> Result<DegenerationModel, ModelError> {
    let file: ModelFile = serde_json::from_str(document).map_err(|e| ModelError::Syntax(e.to_string()))?;
    DegenerationModel::from_file(&file)
}

pub fn load_model(path: impl AsRef<Path>) -> Result<DegenerationModel, ModelError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| ModelError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_model(&text).map_err(|e| match e {
        ModelError::Syntax(msg) => ModelError::Syntax(format!("{}: {msg}", path.display())),
        other => other,
    })
}

/// Free-function form of [`DegenerationModel::lambda_orders`].
pub fn lambda_orders(model: &DegenerationModel) -> BTreeSet<u32> {
    model.lambda_orders()
}

/// Free-function form of [`DegenerationModel::j_set_ids`].
pub fn j_set(model: &DegenerationModel, d: u32) -> BTreeSet<String> {
    model.j_set_ids(d)
}
