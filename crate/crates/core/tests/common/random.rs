//! Seeded random SNC models and an independent cohomology count for their
//! `C` complexes, written against the file format only.

use std::collections::{BTreeMap, BTreeSet};

use maxjordan::snc_model::{FlagsEntry, ModelFile, StratumEntry, VerticalEntry};
use rand::seq::SliceRandom;
use rand::Rng;

use super::linalg::rank_q;

const MULTS: [u64; 6] = [1, 2, 3, 4, 6, 12];

/// `n = 2`, two to four vertical components, at most `max_strata` strata.
pub fn random_model<R: Rng>(rng: &mut R, max_strata: usize) -> ModelFile {
    let k = [2, 3, 3, 3, 4][rng.gen_range(0..5)].min(max_strata);
    let names: Vec<String> = (0..k).map(|i| format!("Y{i}")).collect();
    let vertical = names
        .iter()
        .map(|id| VerticalEntry {
            id: id.clone(),
            multiplicity: *MULTS.choose(rng).unwrap(),
        })
        .collect();
    let mut strata: Vec<StratumEntry> = names
        .iter()
        .map(|id| StratumEntry {
            id: id.clone(),
            index_set: vec![id.clone()],
            touches: None,
            parents: BTreeMap::new(),
        })
        .collect();
    let mut pairs: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
    let mut all_pairs: Vec<(usize, usize)> = (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).collect();
    all_pairs.shuffle(rng);
    for (a, b) in all_pairs {
        let count = [0, 1, 1, 1, 2][rng.gen_range(0..5)];
        for t in 0..count {
            if strata.len() >= max_strata {
                break;
            }
            let id = format!("Y{a}Y{b}_{t}");
            strata.push(StratumEntry {
                id: id.clone(),
                index_set: vec![names[a].clone(), names[b].clone()],
                touches: None,
                parents: [
                    (names[a].clone(), names[b].clone()),
                    (names[b].clone(), names[a].clone()),
                ]
                .into_iter()
                .collect(),
            });
            pairs.entry((a, b)).or_default().push(id);
        }
    }
    for a in 0..k {
        for b in a + 1..k {
            for c in b + 1..k {
                let (Some(bc), Some(ac), Some(ab)) = (pairs.get(&(b, c)), pairs.get(&(a, c)), pairs.get(&(a, b)))
                else {
                    continue;
                };
                let count = [1, 2, 2][rng.gen_range(0..3)];
                for t in 0..count {
                    if strata.len() >= max_strata {
                        break;
                    }
                    strata.push(StratumEntry {
                        id: format!("T{a}{b}{c}_{t}"),
                        index_set: vec![names[a].clone(), names[b].clone(), names[c].clone()],
                        touches: None,
                        parents: [
                            (names[a].clone(), bc.choose(rng).unwrap().clone()),
                            (names[b].clone(), ac.choose(rng).unwrap().clone()),
                            (names[c].clone(), ab.choose(rng).unwrap().clone()),
                        ]
                        .into_iter()
                        .collect(),
                    });
                }
            }
        }
    }
    ModelFile {
        n: 2,
        vertical,
        strata,
        horizontal: Vec::new(),
        flags: FlagsEntry::default(),
    }
}

/// Cohomology dimensions of `C•` at order `d`, from the file alone: strata
/// sorted by id, signs counted from the end of the index set, ranks by
/// rational elimination.
pub fn oracle_c_cohomology(file: &ModelFile, d: u64) -> Vec<usize> {
    let order: BTreeMap<&str, usize> = file
        .vertical
        .iter()
        .enumerate()
        .map(|(i, v)| (v.id.as_str(), i))
        .collect();
    let in_j: BTreeSet<usize> = file
        .vertical
        .iter()
        .enumerate()
        .filter(|(_, v)| v.multiplicity % d == 0)
        .map(|(i, _)| i)
        .collect();
    let index = |s: &StratumEntry| -> Vec<usize> {
        let mut v: Vec<usize> = s.index_set.iter().map(|x| order[x.as_str()]).collect();
        v.sort();
        v
    };
    // i touches S when some stratum over I ∪ {i} has S as its parent for i.
    let mut touches: BTreeMap<&str, BTreeSet<usize>> = BTreeMap::new();
    for s in &file.strata {
        for (i, p) in &s.parents {
            touches.entry(p.as_str()).or_default().insert(order[i.as_str()]);
        }
    }
    let mut lambda: Vec<&StratumEntry> = file
        .strata
        .iter()
        .filter(|s| {
            index(s).iter().all(|i| in_j.contains(i))
                && touches
                    .get(s.id.as_str())
                    .is_none_or(|t| t.iter().all(|i| in_j.contains(i)))
        })
        .collect();
    lambda.sort_by(|a, b| a.id.cmp(&b.id));
    let len = file.n + 1;
    let basis: Vec<Vec<&StratumEntry>> = (0..len)
        .map(|j| lambda.iter().copied().filter(|s| s.index_set.len() == j + 1).collect())
        .collect();
    let mut ranks = vec![0; len];
    for j in 0..len.saturating_sub(1) {
        let mut rows = Vec::new();
        for t in &basis[j + 1] {
            let idx = index(t);
            let mut row = vec![0i64; basis[j].len()];
            for (col, s) in basis[j].iter().enumerate() {
                for (i, p) in &t.parents {
                    if p == &s.id {
                        let pos = idx.iter().position(|&x| x == order[i.as_str()]).unwrap();
                        let from_end = idx.len() - 1 - pos;
                        row[col] += if from_end % 2 == 0 { 1 } else { -1 };
                    }
                }
            }
            rows.push(row);
        }
        ranks[j] = if basis[j].is_empty() { 0 } else { rank_q(&rows) };
    }
    (0..len)
        .map(|j| basis[j].len() - ranks[j] - if j > 0 { ranks[j - 1] } else { 0 })
        .collect()
}
