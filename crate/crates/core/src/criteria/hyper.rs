//! Kernel formulas for a singular total space, given a cubical hyperresolution
//! `X₍₁₎ ⇉ X₍₀₎ → X` and a resolution `D₍₀₎` of the horizontal part.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::CriteriaError;
use crate::cyclotomic::{
    check_cochain_map, kernel_dim_on_cohomology, AlgebraError, CochainComplex, CycNum, ExactMatrix,
};
use crate::eigen_complex::{
    build_b_complex, parse_atlas, AtlasFile, CechComplex, EigenvalueSpec, KappaEntry, OrderEntry, OverrideEntry,
    TrivialEntry, TrivializationAtlas,
};
use crate::snc_model::{
    parse_model, DegenerationModel, FlagsEntry, ModelFile, StrataTable, StratumEntry, VerticalEntry,
};

/// One term `weight · ζ^{a·exp}` of a correspondence, from a stratum of the
/// source space (`from`) to a stratum of `X₍₀₎` (`to`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Correspondence {
    pub from: String,
    pub to: String,
    pub weight: i64,
    #[serde(default)]
    pub exp: i64,
    /// Order-specific exponents; `exp` applies to orders not listed.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub exp_by_order: BTreeMap<u32, i64>,
}

impl Correspondence {
    fn exp_for(&self, d: u32) -> i64 {
        self.exp_by_order.get(&d).copied().unwrap_or(self.exp)
    }
}

#[derive(Debug, Clone)]
pub struct HyperresolutionInput {
    pub x0: DegenerationModel,
    pub x1: Option<DegenerationModel>,
    pub d0: Option<DegenerationModel>,
    pub atlas_x0: TrivializationAtlas,
    pub atlas_x1: TrivializationAtlas,
    pub atlas_d0: TrivializationAtlas,
    /// `X₍₁₎ → X₍₀₎`.
    pub gamma: Vec<Correspondence>,
    /// `D₍₀₎ → X₍₀₎`.
    pub rho: Vec<Correspondence>,
}

fn check_ids(
    name: &str,
    corr: &[Correspondence],
    source: Option<&DegenerationModel>,
    x0: &DegenerationModel,
) -> Result<(), CriteriaError> {
    if source.is_none() && !corr.is_empty() {
        return Err(CriteriaError::Hyper(format!(
            "{name} is given but its source space is absent"
        )));
    }
    let Some(src) = source else { return Ok(()) };
    for c in corr {
        if src.strata().position(&c.from).is_none() {
            return Err(CriteriaError::Hyper(format!(
                "{name} names unknown source stratum '{}'",
                c.from
            )));
        }
        if x0.strata().position(&c.to).is_none() {
            return Err(CriteriaError::Hyper(format!(
                "{name} names unknown stratum '{}' of X0",
                c.to
            )));
        }
    }
    Ok(())
}

impl HyperresolutionInput {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        x0: DegenerationModel,
        x1: Option<DegenerationModel>,
        d0: Option<DegenerationModel>,
        atlas_x0: TrivializationAtlas,
        atlas_x1: TrivializationAtlas,
        atlas_d0: TrivializationAtlas,
        gamma: Vec<Correspondence>,
        rho: Vec<Correspondence>,
    ) -> Result<Self, CriteriaError> {
        check_ids("gamma", &gamma, x1.as_ref(), &x0)?;
        check_ids("rho", &rho, d0.as_ref(), &x0)?;
        atlas_x0.validate(&x0)?;
        if let Some(m) = &x1 {
            atlas_x1.validate(m)?;
        }
        if let Some(m) = &d0 {
            atlas_d0.validate(m)?;
        }
        Ok(Self {
            x0,
            x1,
            d0,
            atlas_x0,
            atlas_x1,
            atlas_d0,
            gamma,
            rho,
        })
    }

    /// The trivial hyperresolution of a smooth total space: `X₍₀₎ = X`,
    /// `X₍₁₎ = ∅`, `D₍₀₎` the disjoint union of the horizontal divisors, `ρ` the lifts.
    pub fn from_smooth(model: &DegenerationModel, atlas: &TrivializationAtlas) -> Result<Self, CriteriaError> {
        let mut x0_file = model.to_file();
        x0_file.horizontal.clear();
        x0_file.flags.proper = None;
        let x0 = DegenerationModel::from_file(&x0_file)?;
        let mut x0_atlas_file = atlas.to_file().clone();
        x0_atlas_file.horizontal.clear();
        let atlas_x0 = TrivializationAtlas::from_file(&x0_atlas_file)?;
        if model.horizontal().is_empty() {
            return Self::new(
                x0,
                None,
                None,
                atlas_x0,
                TrivializationAtlas::canonical(),
                TrivializationAtlas::canonical(),
                Vec::new(),
                Vec::new(),
            );
        }
        let (d0, rho) = union_of_divisors(model)?;
        let atlas_d0 = union_atlas(model, &d0, atlas)?;
        let rho = restriction_exponents(atlas, rho)?;
        Self::new(
            x0,
            None,
            Some(d0),
            atlas_x0,
            TrivializationAtlas::canonical(),
            atlas_d0,
            Vec::new(),
            rho,
        )
    }
}

fn prefixed(k: &str, id: &str) -> String {
    format!("{k}::{id}")
}

/// The component of the stratum at `pos` lying over the single index `i`.
fn ancestor(table: &StrataTable, mut pos: usize, i: usize) -> usize {
    loop {
        let s = table.get(pos);
        match s.index_set.iter().find(|&&x| x != i) {
            Some(drop) => pos = s.parents[drop],
            None => return pos,
        }
    }
}

fn union_of_divisors(model: &DegenerationModel) -> Result<(DegenerationModel, Vec<Correspondence>), CriteriaError> {
    let mut vertical = Vec::new();
    let mut strata = Vec::new();
    let mut rho = Vec::new();
    for h in model.horizontal() {
        let table = &h.table;
        let mut singles: Vec<usize> = (0..table.len()).filter(|&p| table.get(p).depth() == 1).collect();
        singles.sort_by_key(|&p| table.get(p).index_set[0]);
        for &p in &singles {
            let s = table.get(p);
            vertical.push(VerticalEntry {
                id: prefixed(&h.id, &s.id),
                multiplicity: model.multiplicity(s.index_set[0]),
            });
        }
        for pos in 0..table.len() {
            let s = table.get(pos);
            let name = |q: usize| prefixed(&h.id, &table.get(q).id);
            let index_set = s.index_set.iter().map(|&i| name(ancestor(table, pos, i))).collect();
            let mut touches = BTreeSet::new();
            for &i in &s.touches {
                let over: Vec<usize> = singles
                    .iter()
                    .copied()
                    .filter(|&q| table.get(q).index_set[0] == i)
                    .collect();
                let via_children: BTreeSet<usize> =
                    table.children(pos, i).iter().map(|&c| ancestor(table, c, i)).collect();
                if over.len() == 1 {
                    touches.insert(name(over[0]));
                } else if !via_children.is_empty() {
                    touches.extend(via_children.into_iter().map(name));
                } else {
                    return Err(CriteriaError::Hyper(format!(
                        "horizontal '{}': cannot tell which component over '{}' stratum '{}' touches",
                        h.id,
                        model.vertical_id(i),
                        s.id
                    )));
                }
            }
            let parents = s
                .parents
                .iter()
                .map(|(&i, &p)| (name(ancestor(table, pos, i)), name(p)))
                .collect();
            strata.push(StratumEntry {
                id: name(pos),
                index_set,
                touches: Some(touches.into_iter().collect()),
                parents,
            });
            rho.push(Correspondence {
                from: name(pos),
                to: model.strata().get(h.lift[pos]).id.clone(),
                weight: 1,
                exp: 0,
                exp_by_order: BTreeMap::new(),
            });
        }
    }
    let file = ModelFile {
        n: model.n().saturating_sub(1),
        vertical,
        strata,
        horizontal: Vec::new(),
        flags: FlagsEntry::default(),
    };
    Ok((DegenerationModel::from_file(&file)?, rho))
}

fn union_atlas(
    model: &DegenerationModel,
    d0: &DegenerationModel,
    atlas: &TrivializationAtlas,
) -> Result<TrivializationAtlas, CriteriaError> {
    let file = atlas.to_file();
    let mut orders: BTreeSet<u32> = BTreeSet::new();
    for h in model.horizontal() {
        if let Some(e) = file.horizontal.get(&h.id) {
            orders.extend(e.orders.iter().map(|o| o.d));
        }
    }
    let mut entries = Vec::new();
    'orders: for d in orders {
        let mut per_a = Vec::new();
        for eigen in EigenvalueSpec::of_order(d) {
            let mut trivial = Vec::new();
            let mut kappa = Vec::new();
            for h in model.horizontal() {
                let Ok(block) = atlas.horizontal_block(&h.id, d, eigen.a()) else {
                    continue 'orders;
                };
                let positions = block.trivial_positions(&h.id, d, &h.table, &model.j_set(d))?;
                for &p in &positions {
                    let s = h.table.get(p);
                    trivial.push(prefixed(&h.id, &s.id));
                    for &q in s.parents.values() {
                        if !positions.contains(&q) {
                            continue;
                        }
                        let parent = &h.table.get(q).id;
                        if let Some(exp) = block.kappa(parent, &s.id) {
                            kappa.push(KappaEntry {
                                parent: prefixed(&h.id, parent),
                                child: prefixed(&h.id, &s.id),
                                exp,
                            });
                        }
                    }
                }
            }
            per_a.push((eigen.a(), trivial, kappa));
        }
        let mut iter = per_a.into_iter();
        let (_, trivial, kappa) = iter.next().expect("every order has the exponent 1");
        let overrides = iter
            .map(|(a, trivial, kappa)| OverrideEntry {
                a,
                trivial: Some(TrivialEntry::Ids(trivial)),
                kappa,
                kappa_default: None,
                restriction: Vec::new(),
                restriction_default: None,
            })
            .collect();
        entries.push(OrderEntry {
            d,
            trivial: TrivialEntry::Ids(trivial),
            kappa,
            kappa_default: None,
            restriction: Vec::new(),
            restriction_default: None,
            overrides,
        });
    }
    let out = TrivializationAtlas::from_file(&AtlasFile {
        orders: entries,
        horizontal: BTreeMap::new(),
    })?;
    out.validate(d0)?;
    Ok(out)
}

fn restriction_exponents(
    atlas: &TrivializationAtlas,
    mut rho: Vec<Correspondence>,
) -> Result<Vec<Correspondence>, CriteriaError> {
    let file = atlas.to_file();
    for c in &mut rho {
        let (k, lower) = c.from.split_once("::").expect("ids are prefixed");
        let Some(entry) = file.horizontal.get(k) else { continue };
        for o in &entry.orders {
            let mut exps = BTreeSet::new();
            for eigen in EigenvalueSpec::of_order(o.d) {
                let block = atlas.horizontal_block(k, o.d, eigen.a())?;
                exps.insert(block.restriction(lower));
            }
            if exps.len() > 1 {
                return Err(CriteriaError::Hyper(format!(
                    "horizontal '{k}', order {}: restriction exponents differ between eigenvalues",
                    o.d
                )));
            }
            if let Some(Some(e)) = exps.into_iter().next() {
                c.exp_by_order.insert(o.d, e);
            }
        }
    }
    Ok(rho)
}

fn induced(
    source: &CechComplex,
    target: &CechComplex,
    corr: &[Correspondence],
    name: &str,
) -> Result<Vec<ExactMatrix>, CriteriaError> {
    let field = source.field();
    let eigen = source.eigen();
    let len = source.dims().len().max(target.dims().len());
    let mut maps: Vec<ExactMatrix> = (0..len)
        .map(|j| ExactMatrix::zeros(field, target.basis(j).len(), source.basis(j).len()))
        .collect();
    let locate =
        |c: &CechComplex, id: &str| (0..len).find_map(|j| c.basis(j).iter().position(|x| x == id).map(|p| (j, p)));
    for c in corr {
        let (Some((jt, r)), Some((js, col))) = (locate(target, &c.from), locate(source, &c.to)) else {
            continue;
        };
        if jt != js {
            return Err(CriteriaError::Hyper(format!(
                "{name} pairs '{}' (degree {jt}) with '{}' (degree {js})",
                c.from, c.to
            )));
        }
        let term =
            &CycNum::from_integer(field, c.weight) * &CycNum::zeta_pow(field, c.exp_for(eigen.d()) * eigen.a() as i64);
        maps[jt].add_to(r, col, &term);
    }
    check_cochain_map(source.complex(), target.complex(), &maps).map_err(|e| match e {
        AlgebraError::NotAMorphism { degree } => CriteriaError::Hyper(format!(
            "{name} does not commute with the differentials in degree {degree}"
        )),
        other => CriteriaError::Algebra(other),
    })?;
    Ok(maps)
}

fn check_j(input: &HyperresolutionInput, j: usize) -> Result<(), CriteriaError> {
    if j > input.x0.n() {
        return Err(CriteriaError::Hyper(format!(
            "degree {j} is outside [0, {}]",
            input.x0.n()
        )));
    }
    Ok(())
}

/// `dim Ker((γ*, ρ*) : H^j B•(X₍₀₎) → H^j B•(X₍₁₎) ⊕ H^j B•(D₍₀₎))`.
pub fn singular_nu_c(input: &HyperresolutionInput, d: u32, a: u32, j: usize) -> Result<usize, CriteriaError> {
    check_j(input, j)?;
    let b0 = build_b_complex(&input.x0, d, &input.atlas_x0, a)?;
    let mut targets: Vec<(CechComplex, Vec<ExactMatrix>)> = Vec::new();
    if let Some(x1) = &input.x1 {
        let b1 = build_b_complex(x1, d, &input.atlas_x1, a)?;
        let maps = induced(&b0, &b1, &input.gamma, "gamma")?;
        targets.push((b1, maps));
    }
    if let Some(d0) = &input.d0 {
        let bd = build_b_complex(d0, d, &input.atlas_d0, a)?;
        let maps = induced(&b0, &bd, &input.rho, "rho")?;
        targets.push((bd, maps));
    }
    if targets.is_empty() {
        return Ok(b0.complex().cohomology_dim(j));
    }
    let parts: Vec<(&CochainComplex, &[ExactMatrix])> =
        targets.iter().map(|(c, m)| (c.complex(), m.as_slice())).collect();
    let (target, maps) = crate::eigen_complex::stack_morphisms(b0.complex(), &parts)?;
    Ok(kernel_dim_on_cohomology(b0.complex(), &target, &maps, j)?)
}

/// `ν^{2n-j}_{c} = dim H^j B•(X₍₀₎)`.
pub fn singular_nu_c_upper(input: &HyperresolutionInput, d: u32, a: u32, j: usize) -> Result<usize, CriteriaError> {
    check_j(input, j)?;
    Ok(build_b_complex(&input.x0, d, &input.atlas_x0, a)?
        .complex()
        .cohomology_dim(j))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HyperFile {
    x0: Value,
    #[serde(default)]
    x1: Option<Value>,
    #[serde(default)]
    d0: Option<Value>,
    #[serde(default)]
    atlases: BTreeMap<String, Value>,
    #[serde(default)]
    gamma: Vec<Correspondence>,
    #[serde(default)]
    rho: Vec<Correspondence>,
}

fn inline_or_path(value: &Value, base: Option<&Path>) -> Result<String, CriteriaError> {
    match value {
        Value::String(p) => {
            let path: PathBuf = match base {
                Some(b) => b.join(p),
                None => PathBuf::from(p),
            };
            std::fs::read_to_string(&path)
                .map_err(|e| CriteriaError::Hyper(format!("cannot read {}: {e}", path.display())))
        }
        other => Ok(other.to_string()),
    }
}

fn parse_with_base(document: &str, base: Option<&Path>) -> Result<HyperresolutionInput, CriteriaError> {
    let file: HyperFile =
        serde_json::from_str(document).map_err(|e| CriteriaError::Hyper(format!("syntax error: {e}")))?;
    for key in file.atlases.keys() {
        if !matches!(key.as_str(), "x0" | "x1" | "d0") {
            return Err(CriteriaError::Hyper(format!("unknown atlas key '{key}'")));
        }
    }
    let model = |v: &Value| -> Result<DegenerationModel, CriteriaError> { Ok(parse_model(&inline_or_path(v, base)?)?) };
    let atlas = |k: &str| -> Result<TrivializationAtlas, CriteriaError> {
        match file.atlases.get(k) {
            Some(v) => Ok(parse_atlas(&inline_or_path(v, base)?)?),
            None => Ok(TrivializationAtlas::canonical()),
        }
    };
    HyperresolutionInput::new(
        model(&file.x0)?,
        file.x1.as_ref().map(model).transpose()?,
        file.d0.as_ref().map(model).transpose()?,
        atlas("x0")?,
        atlas("x1")?,
        atlas("d0")?,
        file.gamma,
        file.rho,
    )
}

/// Parses a hyperresolution document; string-valued entries are file paths
/// relative to the working directory.
pub fn parse_hyperresolution(document: &str) -> Result<HyperresolutionInput, CriteriaError> {
    parse_with_base(document, None)
}

/// Loads a hyperresolution file; string-valued entries are paths relative to it.
pub fn load_hyperresolution(path: impl AsRef<Path>) -> Result<HyperresolutionInput, CriteriaError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| CriteriaError::Hyper(format!("cannot read {}: {e}", path.display())))?;
    parse_with_base(&text, path.parent())
}
