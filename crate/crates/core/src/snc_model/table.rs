use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::file::StratumEntry;
use super::{ModelError, VerticalComponent};

/// A connected component of some `Y_I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumComponent {
    pub id: String,
    /// Vertical indices, ascending in declaration order.
    pub index_set: Vec<usize>,
    /// Vertical indices `i ∉ I` with `S ∩ Y_i ≠ ∅`.
    pub touches: BTreeSet<usize>,
    /// For `|I| ≥ 2`: dropped vertical index → stratum containing this one.
    pub parents: BTreeMap<usize, usize>,
}

impl StratumComponent {
    pub fn depth(&self) -> usize {
        self.index_set.len()
    }
}

/// The validated incidence table of one SNC configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrataTable {
    strata: Vec<StratumComponent>,
    by_id: HashMap<String, usize>,
    children: BTreeMap<(usize, usize), Vec<usize>>,
}

fn names(ids: &[String], idx: &[usize]) -> String {
    let v: Vec<&str> = idx.iter().map(|&i| ids[i].as_str()).collect();
    format!("{{{}}}", v.join(","))
}

impl StrataTable {
    pub(crate) fn build(
        scope: &str,
        entries: &[StratumEntry],
        ids: &[String],
        vertical_index: &HashMap<String, usize>,
        max_depth: usize,
    ) -> Result<Self, ModelError> {
        let err = |m: String| ModelError::invalid(scope, m);
        let mut by_id = HashMap::new();
        let mut strata = Vec::with_capacity(entries.len());
        for (pos, e) in entries.iter().enumerate() {
            if by_id.insert(e.id.clone(), pos).is_some() {
                return Err(err(format!("duplicate stratum id '{}'", e.id)));
            }
            if e.index_set.is_empty() {
                return Err(err(format!("stratum '{}' has an empty index set", e.id)));
            }
            let mut index_set = Vec::with_capacity(e.index_set.len());
            for v in &e.index_set {
                let i = vertical_index
                    .get(v)
                    .ok_or_else(|| err(format!("stratum '{}' names unknown vertical component '{v}'", e.id)))?;
                index_set.push(*i);
            }
            index_set.sort_unstable();
            if index_set.windows(2).any(|w| w[0] == w[1]) {
                return Err(err(format!("stratum '{}' repeats a vertical component", e.id)));
            }
            if index_set.len() > max_depth {
                return Err(err(format!(
                    "stratum '{}' lies on {} components, deeper than the dimension allows ({max_depth})",
                    e.id,
                    index_set.len()
                )));
            }
            strata.push(StratumComponent {
                id: e.id.clone(),
                index_set,
                touches: BTreeSet::new(),
                parents: BTreeMap::new(),
            });
        }

        for (pos, e) in entries.iter().enumerate() {
            let index_set = strata[pos].index_set.clone();
            if index_set.len() == 1 {
                if !e.parents.is_empty() {
                    return Err(err(format!(
                        "stratum '{}' lies on one component and cannot have parents",
                        e.id
                    )));
                }
                continue;
            }
            let mut parents = BTreeMap::new();
            for key in e.parents.keys() {
                match vertical_index.get(key) {
                    Some(i) if index_set.contains(i) => {}
                    _ => {
                        return Err(err(format!(
                            "stratum '{}' has a parent entry for '{key}', which is not in its index set",
                            e.id
                        )))
                    }
                }
            }
            for &i in &index_set {
                let pid = e.parents.get(&ids[i]).ok_or_else(|| {
                    err(format!(
                        "stratum '{}' is missing its parent for dropping '{}'",
                        e.id, ids[i]
                    ))
                })?;
                let p = *by_id
                    .get(pid)
                    .ok_or_else(|| err(format!("stratum '{}' names missing parent '{pid}'", e.id)))?;
                let expected: Vec<usize> = index_set.iter().copied().filter(|&x| x != i).collect();
                if strata[p].index_set != expected {
                    return Err(err(format!(
                        "stratum '{}': parent '{pid}' for dropping '{}' lies over {}, expected {}",
                        e.id,
                        ids[i],
                        names(ids, &strata[p].index_set),
                        names(ids, &expected)
                    )));
                }
                parents.insert(i, p);
            }
            strata[pos].parents = parents;
        }

        for s in &strata {
            for (&i, &pi) in &s.parents {
                for (&k, &pk) in &s.parents {
                    if i >= k || s.index_set.len() < 3 {
                        continue;
                    }
                    if strata[pi].parents[&k] != strata[pk].parents[&i] {
                        return Err(err(format!(
                            "stratum '{}': parent maps do not commute when dropping '{}' and '{}'",
                            s.id, ids[i], ids[k]
                        )));
                    }
                }
            }
        }

        let mut children: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        let mut derived = vec![BTreeSet::new(); strata.len()];
        for (pos, s) in strata.iter().enumerate() {
            for (&i, &p) in &s.parents {
                derived[p].insert(i);
                children.entry((p, i)).or_default().push(pos);
            }
        }
        for (pos, e) in entries.iter().enumerate() {
            let touches = match &e.touches {
                None => derived[pos].clone(),
                Some(list) => {
                    let mut set = BTreeSet::new();
                    for v in list {
                        let i = *vertical_index.get(v).ok_or_else(|| {
                            err(format!("stratum '{}' touches unknown vertical component '{v}'", e.id))
                        })?;
                        if strata[pos].index_set.contains(&i) {
                            return Err(err(format!(
                                "stratum '{}' lists '{v}' both in its index set and in touches",
                                e.id
                            )));
                        }
                        set.insert(i);
                    }
                    if let Some(&i) = derived[pos].difference(&set).next() {
                        let child = &children[&(pos, i)][0];
                        return Err(err(format!(
                            "monotonicity violation: stratum '{}' contains child '{}' on '{}' but does not list '{}' in touches",
                            e.id, strata[*child].id, ids[i], ids[i]
                        )));
                    }
                    set
                }
            };
            strata[pos].touches = touches;
        }

        for s in &strata {
            for &p in s.parents.values() {
                if let Some(&i) = s.touches.difference(&strata[p].touches).next() {
                    return Err(err(format!(
                        "monotonicity violation: stratum '{}' touches '{}' but its parent '{}' does not",
                        s.id, ids[i], strata[p].id
                    )));
                }
            }
        }

        Ok(Self {
            strata,
            by_id,
            children,
        })
    }

    pub fn len(&self) -> usize {
        self.strata.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strata.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &StratumComponent> {
        self.strata.iter()
    }

    pub fn get(&self, idx: usize) -> &StratumComponent {
        &self.strata[idx]
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.by_id.get(id).copied()
    }

    /// Components over exactly the given (sorted) index set.
    pub fn over<'a>(&'a self, index_set: &'a [usize]) -> impl Iterator<Item = &'a StratumComponent> + 'a {
        self.strata.iter().filter(move |s| s.index_set == index_set)
    }

    /// Children of `parent` obtained by adding vertical index `i`.
    pub fn children(&self, parent: usize, i: usize) -> &[usize] {
        self.children.get(&(parent, i)).map_or(&[], Vec::as_slice)
    }

    /// `S ⊂ Y^{(λ)}_I`: `I ⊆ J` and `S` meets no component outside `J`.
    pub fn is_lambda(&self, s: &StratumComponent, j: &BTreeSet<usize>) -> bool {
        s.index_set.iter().all(|i| j.contains(i)) && s.touches.iter().all(|i| j.contains(i))
    }

    pub fn lambda_positions(&self, j: &BTreeSet<usize>) -> Vec<usize> {
        (0..self.strata.len())
            .filter(|&p| self.is_lambda(&self.strata[p], j))
            .collect()
    }

    pub(crate) fn check_complete(
        &self,
        scope: &str,
        d: u32,
        j: &BTreeSet<usize>,
        vertical: &[VerticalComponent],
    ) -> Result<(), ModelError> {
        for (pos, s) in self.strata.iter().enumerate() {
            if !s.index_set.iter().all(|i| j.contains(i)) {
                continue;
            }
            for &i in s.touches.intersection(j) {
                if self.children(pos, i).is_empty() {
                    return Err(ModelError::Incomplete {
                        scope: scope.to_string(),
                        order: d,
                        stratum: s.id.clone(),
                        index: vertical[i].id.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    pub(crate) fn to_entries(&self, ids: &[String]) -> Vec<StratumEntry> {
        self.strata
            .iter()
            .map(|s| StratumEntry {
                id: s.id.clone(),
                index_set: s.index_set.iter().map(|&i| ids[i].clone()).collect(),
                touches: Some(s.touches.iter().map(|&i| ids[i].clone()).collect()),
                parents: s
                    .parents
                    .iter()
                    .map(|(&i, &p)| (ids[i].clone(), self.strata[p].id.clone()))
                    .collect(),
            })
            .collect()
    }
}
