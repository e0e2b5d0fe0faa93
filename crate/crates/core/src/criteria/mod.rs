//! Closed formulas and sufficient conditions: the Euler characteristic formula
//! for isolated singularities, the two-count curve formula, the `H^1`
//! vanishing criteria, and kernel formulas for singular total spaces.

mod hyper;

use std::collections::BTreeMap;
use std::path::Path;

pub use hyper::{
    load_hyperresolution, parse_hyperresolution, singular_nu_c, singular_nu_c_upper, Correspondence,
    HyperresolutionInput,
};

use crate::cyclotomic::AlgebraError;
use crate::eigen_complex::{EigenError, EigenvalueSpec, TrivializationAtlas};
use crate::snc_model::{DegenerationModel, FiniteAbelianGroup, ModelError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CriteriaError {
    #[error(transparent)]
    Eigen(#[from] EigenError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("outside the setting of the formula: {0}")]
    NotInSetting(String),
    #[error("the formula needs n = {expected}, the model has n = {n}")]
    WrongDimension { n: usize, expected: usize },
    #[error("order must be > 1 here, got {0}")]
    OrderOne(u32),
    #[error("number of branches must be positive")]
    NoBranches,
    #[error("no H1 data for '{0}'")]
    MissingH1(String),
    #[error("h1 data: {0}")]
    H1(String),
    #[error("the formula gives a negative count ({value}); the inputs do not satisfy its hypotheses")]
    Negative { value: i64 },
    #[error("hyperresolution: {0}")]
    Hyper(String),
}

impl CriteriaError {
    pub fn is_inconsistency(&self) -> bool {
        match self {
            Self::Eigen(e) => e.is_inconsistency(),
            Self::Algebra(AlgebraError::NotAComplex { .. } | AlgebraError::NotAMorphism { .. }) => true,
            _ => false,
        }
    }
}

fn lambda_dims(
    model: &DegenerationModel,
    atlas: &TrivializationAtlas,
    eigen: EigenvalueSpec,
) -> Result<Vec<usize>, CriteriaError> {
    let block = atlas.block(eigen.d(), eigen.a())?;
    let j = model.j_set(eigen.d());
    let mut dims = vec![0; model.n() + 1];
    for p in block.trivial_positions("atlas", eigen.d(), model.strata(), &j)? {
        dims[model.strata().get(p).depth() - 1] += 1;
    }
    Ok(dims)
}

/// `ν^j` for `j ∈ [0, n]` from the dimensions of `B•` alone, for a good
/// compactification of an isolated singularity:
/// `ν^j = δ_{λ,1}δ_{j,0}` below the middle and `ν^n = (-1)^n(χ(B•) - δ_{λ,1})`.
pub fn theorem3_nu(
    model: &DegenerationModel,
    atlas: &TrivializationAtlas,
    d: u32,
    a: u32,
) -> Result<Vec<usize>, CriteriaError> {
    let eigen = EigenvalueSpec::new(d, a)?;
    if !model.flags().isolated_singularity_compactification {
        return Err(CriteriaError::NotInSetting(
            "model is not flagged isolated_singularity_compactification".into(),
        ));
    }
    if !model.horizontal().is_empty() {
        return Err(CriteriaError::NotInSetting("model has horizontal divisors".into()));
    }
    model.check_complete(d)?;
    let n = model.n();
    let dims = lambda_dims(model, atlas, eigen)?;
    let chi = crate::cyclotomic::alternating_sum(&dims);
    let delta = i64::from(eigen.is_one());
    let top = if n.is_multiple_of(2) { chi - delta } else { delta - chi };
    if top < 0 {
        return Err(CriteriaError::Negative { value: top });
    }
    let mut out = vec![0; n + 1];
    if eigen.is_one() && n > 0 {
        out[0] = 1;
    }
    out[n] += top as usize;
    Ok(out)
}

/// The two counts of the curve formula and their difference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve03 {
    /// `#{I ⊂ J(λ) : |I| = 2, Y_I ≠ ∅}`.
    pub pairs: usize,
    /// `#{j ∈ J(λ) : Y_j ∩ Y_i = ∅ for all i ∉ J(λ)}`.
    pub isolated: usize,
    pub value: i64,
    /// Pairs inside `J(λ)` meeting in more than one point.
    pub multi_point_pairs: Vec<(String, String)>,
}

impl Curve03 {
    /// Whether each pair meets at most once, so the pair count equals `dim C^1`.
    pub fn is_reliable(&self) -> bool {
        self.multi_point_pairs.is_empty()
    }
}

/// `ν¹_{g_0,λ}` by the two-count formula for plane curves, taken literally.
pub fn curve_nu_03(model: &DegenerationModel, d: u32) -> Result<Curve03, CriteriaError> {
    if model.n() != 1 {
        return Err(CriteriaError::WrongDimension {
            n: model.n(),
            expected: 1,
        });
    }
    if d <= 1 {
        return Err(CriteriaError::OrderOne(d));
    }
    let j = model.j_set(d);
    let mut counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for s in model.strata().iter() {
        if let [x, y] = s.index_set[..] {
            if j.contains(&x) && j.contains(&y) {
                *counts.entry((x, y)).or_default() += 1;
            }
        }
    }
    let isolated = model
        .strata()
        .iter()
        .filter(|s| s.depth() == 1 && model.strata().is_lambda(s, &j))
        .count();
    let multi_point_pairs = counts
        .iter()
        .filter(|(_, &c)| c > 1)
        .map(|(&(x, y), _)| (model.vertical_id(x).to_string(), model.vertical_id(y).to_string()))
        .collect();
    Ok(Curve03 {
        pairs: counts.len(),
        isolated,
        value: counts.len() as i64 - isolated as i64,
        multi_point_pairs,
    })
}

/// `ν¹_{g_0,1} = r - 1` for a plane curve germ with `r` branches.
pub fn branches_nu_lambda1(r: usize) -> Result<usize, CriteriaError> {
    if r == 0 {
        return Err(CriteriaError::NoBranches);
    }
    Ok(r - 1)
}

/// First homology of the spaces the vanishing criteria look at, keyed by
/// stratum id, or by `union:<d>` / `union` for the whole `Y^{(λ)}`.
pub type H1Data = BTreeMap<String, FiniteAbelianGroup>;

pub fn parse_h1(document: &str) -> Result<H1Data, CriteriaError> {
    serde_json::from_str(document).map_err(|e| CriteriaError::H1(e.to_string()))
}

pub fn load_h1(path: impl AsRef<Path>) -> Result<H1Data, CriteriaError> {
    let path = path.as_ref();
    let text =
        std::fs::read_to_string(path).map_err(|e| CriteriaError::H1(format!("cannot read {}: {e}", path.display())))?;
    parse_h1(&text).map_err(|e| match e {
        CriteriaError::H1(m) => CriteriaError::H1(format!("{}: {m}", path.display())),
        other => other,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem4Scope {
    /// Per stratum component: conclusions degree by degree.
    PerStratum,
    /// The whole `Y^{(λ)}`: conclusion for the complex.
    Union,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem4Verdict {
    pub scope: Theorem4Scope,
    /// `(target, Hom(H₁, Z/d) = 0)`.
    pub targets: Vec<(String, bool)>,
    /// `B^j = C^j` established, per degree.
    pub degree_equal: Vec<bool>,
    /// `B• = C•` as complexes (κ ≡ 0 may be used).
    pub complex_equal: bool,
}

pub fn theorem4_check(
    model: &DegenerationModel,
    d: u32,
    h1: &H1Data,
    scope: Theorem4Scope,
) -> Result<Theorem4Verdict, CriteriaError> {
    let n = model.n();
    match scope {
        Theorem4Scope::PerStratum => {
            let j = model.j_set(d);
            let mut targets = Vec::new();
            let mut degree_equal = vec![true; n + 1];
            for s in model.strata().iter().filter(|s| model.strata().is_lambda(s, &j)) {
                let ok = if d == 1 || s.depth() == n + 1 {
                    true
                } else {
                    h1.get(&s.id)
                        .ok_or_else(|| CriteriaError::MissingH1(s.id.clone()))?
                        .hom_to_cyclic_vanishes(d as u64)
                };
                degree_equal[s.depth() - 1] &= ok;
                targets.push((s.id.clone(), ok));
            }
            Ok(Theorem4Verdict {
                scope,
                targets,
                degree_equal,
                complex_equal: false,
            })
        }
        Theorem4Scope::Union if d == 1 => Ok(Theorem4Verdict {
            scope,
            targets: Vec::new(),
            degree_equal: vec![true; n + 1],
            complex_equal: true,
        }),
        Theorem4Scope::Union => {
            let key = format!("union:{d}");
            let (name, group) = h1
                .get_key_value(&key)
                .or_else(|| h1.get_key_value("union"))
                .ok_or(CriteriaError::MissingH1(key))?;
            let ok = group.hom_to_cyclic_vanishes(d as u64);
            Ok(Theorem4Verdict {
                scope,
                targets: vec![(name.clone(), ok)],
                degree_equal: vec![ok; n + 1],
                complex_equal: ok,
            })
        }
    }
}

#[cfg(test)]
mod tests;
