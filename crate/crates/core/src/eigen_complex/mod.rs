//! The complexes `C•_{f,λ}` and `B•_{f,λ}`, the restriction morphisms to the
//! horizontal divisors, and the Jordan block counts `ν`, `ν_c` read off them.

mod atlas;
mod report;

use std::collections::BTreeSet;
use std::sync::Arc;

use num_integer::Integer;

pub use atlas::{
    load_atlas, parse_atlas, AtlasBlock, AtlasFile, HorizontalAtlasEntry, KappaEntry, OrderEntry, OverrideEntry,
    RestrictionEntry, TrivialEntry, TrivialSet, TrivializationAtlas,
};
pub use report::{compute_report, extend_by_duality, JordanReport, JordanRow, RowSource};

use crate::cyclotomic::{
    check_cochain_map, kernel_dim_on_cohomology, AlgebraError, CochainComplex, CycNum, CyclotomicField, ExactMatrix,
};
use crate::snc_model::{DegenerationModel, ModelError, StrataTable, MAIN_SCOPE};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EigenError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("invalid eigenvalue: order {d}, exponent {a} (need 1 <= a <= d and gcd(a, d) = 1)")]
    InvalidEigenvalue { d: u32, a: u32 },
    #[error("degree {j} is outside [0, {n}]")]
    DegreeOutOfRange { j: usize, n: usize },
    #[error("{0}")]
    Atlas(String),
    #[error("{scope}: no block for order {d}")]
    MissingOrder { scope: String, d: u32 },
    #[error("{scope}, order {d}: no kappa for the inclusion ('{parent}', '{child}') and no kappa_default")]
    MissingKappa {
        scope: String,
        d: u32,
        parent: String,
        child: String,
    },
    #[error("{scope}, order {d}: no restriction exponent for '{lower}' and no restriction_default")]
    MissingRestriction { scope: String, d: u32, lower: String },
    #[error("{scope}, order {d}, exponent {a}: kappa is inconsistent, d∘d != 0 on the square from '{source_id}' to '{target_id}' (degree {degree})")]
    KappaInconsistent {
        scope: String,
        d: u32,
        a: u32,
        degree: usize,
        source_id: String,
        target_id: String,
    },
    #[error("restriction to horizontal '{horizontal}' does not commute with the differentials in degree {degree}")]
    NotAMorphism { horizontal: String, degree: usize },
    #[error("duality needs the conjugate eigenvalue: order {d}, exponent {a} is missing")]
    MissingConjugate { d: u32, a: u32 },
}

impl EigenError {
    pub(crate) fn atlas(message: impl Into<String>) -> Self {
        Self::Atlas(message.into())
    }

    /// Whether the failure reflects contradictory data rather than malformed input.
    pub fn is_inconsistency(&self) -> bool {
        matches!(
            self,
            Self::KappaInconsistent { .. }
                | Self::NotAMorphism { .. }
                | Self::Algebra(AlgebraError::NotAComplex { .. })
                | Self::Algebra(AlgebraError::NotAMorphism { .. })
        )
    }
}

/// `λ = ζ_d^a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EigenvalueSpec {
    d: u32,
    a: u32,
}

impl EigenvalueSpec {
    pub fn new(d: u32, a: u32) -> Result<Self, EigenError> {
        if d == 0 || a == 0 || a > d || a.gcd(&d) != 1 {
            return Err(EigenError::InvalidEigenvalue { d, a });
        }
        Ok(Self { d, a })
    }

    pub fn one() -> Self {
        Self { d: 1, a: 1 }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn is_one(&self) -> bool {
        self.d == 1
    }

    /// `λ̄ = ζ_d^{d-a}`.
    pub fn conjugate(&self) -> Self {
        let a = (self.d - self.a) % self.d;
        Self {
            d: self.d,
            a: if a == 0 { self.d } else { a },
        }
    }

    /// Every eigenvalue of exact order `d`.
    pub fn of_order(d: u32) -> Vec<Self> {
        (1..=d.max(1))
            .filter(|a| a.gcd(&d) == 1)
            .map(|a| Self { d: d.max(1), a })
            .collect()
    }
}

impl std::fmt::Display for EigenvalueSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.d, self.a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComplexKind {
    C,
    B,
}

/// A Čech-type complex with a named basis in each degree.
#[derive(Debug, Clone)]
pub struct CechComplex {
    eigen: EigenvalueSpec,
    basis: Vec<Vec<String>>,
    complex: CochainComplex,
}

impl CechComplex {
    pub fn eigen(&self) -> EigenvalueSpec {
        self.eigen
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        self.complex.field()
    }

    pub fn basis(&self, j: usize) -> &[String] {
        self.basis.get(j).map_or(&[], Vec::as_slice)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.complex.dims().to_vec()
    }

    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    pub fn differential(&self, j: usize) -> ExactMatrix {
        self.complex.differential(j)
    }

    pub fn cohomology_dims(&self) -> Vec<usize> {
        self.complex.cohomology_dims()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.complex.euler_characteristic()
    }
}

/// A cochain map between two Čech complexes.
#[derive(Debug, Clone)]
pub struct ComplexMorphism {
    pub source: CechComplex,
    pub target: CechComplex,
    /// `maps[j]` has shape `dim target^j × dim source^j`.
    pub maps: Vec<ExactMatrix>,
}

struct Assembled {
    positions: Vec<Vec<usize>>,
    differentials: Vec<ExactMatrix>,
}

/// Lays out `members` by depth and fills each differential with
/// `(-1)^p · entry(parent, child)`, `p` the position of the dropped index.
fn assemble(
    field: &Arc<CyclotomicField>,
    table: &StrataTable,
    members: &[usize],
    len: usize,
    mut entry: impl FnMut(usize, usize) -> Result<CycNum, EigenError>,
) -> Result<Assembled, EigenError> {
    let mut positions = vec![Vec::new(); len];
    for &m in members {
        let depth = table.get(m).depth();
        if depth <= len {
            positions[depth - 1].push(m);
        }
    }
    let mut differentials = Vec::with_capacity(len.saturating_sub(1));
    for j in 0..len.saturating_sub(1) {
        let mut mat = ExactMatrix::zeros(field, positions[j + 1].len(), positions[j].len());
        for (r, &child) in positions[j + 1].iter().enumerate() {
            let s = table.get(child);
            for (p, i) in s.index_set.iter().enumerate() {
                let parent = s.parents[i];
                if let Some(c) = positions[j].iter().position(|&x| x == parent) {
                    let mut v = entry(parent, child)?;
                    if p % 2 == 1 {
                        v = -&v;
                    }
                    mat.add_to(r, c, &v);
                }
            }
        }
        differentials.push(mat);
    }
    Ok(Assembled {
        positions,
        differentials,
    })
}

fn finish(
    scope: &str,
    eigen: EigenvalueSpec,
    field: &Arc<CyclotomicField>,
    table: &StrataTable,
    assembled: Assembled,
) -> Result<CechComplex, EigenError> {
    let Assembled {
        positions,
        differentials,
    } = assembled;
    for j in 1..differentials.len() {
        let sq = differentials[j].mul(&differentials[j - 1])?;
        if sq.is_zero() {
            continue;
        }
        let (r, c) = (0..sq.rows())
            .flat_map(|r| (0..sq.cols()).map(move |c| (r, c)))
            .find(|&(r, c)| !sq.get(r, c).is_zero())
            .expect("nonzero matrix has a nonzero entry");
        return Err(EigenError::KappaInconsistent {
            scope: scope.to_string(),
            d: eigen.d,
            a: eigen.a,
            degree: j - 1,
            source_id: table.get(positions[j - 1][c]).id.clone(),
            target_id: table.get(positions[j + 1][r]).id.clone(),
        });
    }
    let dims = positions.iter().map(Vec::len).collect();
    let basis = positions
        .iter()
        .map(|ps| ps.iter().map(|&p| table.get(p).id.clone()).collect())
        .collect();
    Ok(CechComplex {
        eigen,
        basis,
        complex: CochainComplex::new(field, dims, differentials)?,
    })
}

fn c_complex_of(
    scope: &str,
    field: &Arc<CyclotomicField>,
    eigen: EigenvalueSpec,
    table: &StrataTable,
    j: &BTreeSet<usize>,
    len: usize,
) -> Result<CechComplex, EigenError> {
    let members = table.lambda_positions(j);
    let one = CycNum::one(field);
    let assembled = assemble(field, table, &members, len, |_, _| Ok(one.clone()))?;
    finish(scope, eigen, field, table, assembled)
}

#[allow(clippy::too_many_arguments)]
fn b_complex_of(
    scope: &str,
    field: &Arc<CyclotomicField>,
    eigen: EigenvalueSpec,
    table: &StrataTable,
    j: &BTreeSet<usize>,
    block: &AtlasBlock,
    len: usize,
) -> Result<CechComplex, EigenError> {
    let members = block.trivial_positions(scope, eigen.d, table, j)?;
    let assembled = assemble(field, table, &members, len, |p, c| {
        let (pid, cid) = (&table.get(p).id, &table.get(c).id);
        let exp = block.kappa(pid, cid).ok_or_else(|| EigenError::MissingKappa {
            scope: scope.to_string(),
            d: eigen.d,
            parent: pid.clone(),
            child: cid.clone(),
        })?;
        Ok(CycNum::zeta_pow(field, exp * eigen.a as i64))
    })?;
    finish(scope, eigen, field, table, assembled)
}

/// `C•_{f,λ}` for any `λ` of order `d`.
pub fn build_c_complex(model: &DegenerationModel, d: u32) -> Result<CechComplex, EigenError> {
    let eigen = EigenvalueSpec::new(d, 1)?;
    model.check_complete(d)?;
    let field = CyclotomicField::new(d)?;
    c_complex_of(
        MAIN_SCOPE,
        &field,
        eigen,
        model.strata(),
        &model.j_set(d),
        model.n() + 1,
    )
}

/// `B•_{f,λ}` for `λ = ζ_d^a`.
pub fn build_b_complex(
    model: &DegenerationModel,
    d: u32,
    atlas: &TrivializationAtlas,
    a: u32,
) -> Result<CechComplex, EigenError> {
    let eigen = EigenvalueSpec::new(d, a)?;
    model.check_complete(d)?;
    let field = CyclotomicField::new(d)?;
    let block = atlas.block(d, a)?;
    b_complex_of(
        "atlas",
        &field,
        eigen,
        model.strata(),
        &model.j_set(d),
        &block,
        model.n() + 1,
    )
}

/// `r_k` (kind C) or `r′_k` (kind B) for the horizontal divisor `k`.
pub fn restriction_morphism(
    model: &DegenerationModel,
    k: &str,
    d: u32,
    atlas: &TrivializationAtlas,
    a: u32,
    kind: ComplexKind,
) -> Result<ComplexMorphism, EigenError> {
    let eigen = EigenvalueSpec::new(d, a)?;
    model.check_complete(d)?;
    let h = model.horizontal_by_id(k)?;
    let field = CyclotomicField::new(d)?;
    let j = model.j_set(d);
    let len = model.n() + 1;
    let sub_scope = format!("atlas horizontal '{k}'");
    let (source, target, sub_block) = match kind {
        ComplexKind::C => (
            c_complex_of(MAIN_SCOPE, &field, eigen, model.strata(), &j, len)?,
            c_complex_of(&format!("horizontal '{k}'"), &field, eigen, &h.table, &j, len)?,
            None,
        ),
        ComplexKind::B => {
            let block = atlas.block(d, a)?;
            let sub = atlas.horizontal_block(k, d, a)?;
            (
                b_complex_of("atlas", &field, eigen, model.strata(), &j, &block, len)?,
                b_complex_of(&sub_scope, &field, eigen, &h.table, &j, &sub, len)?,
                Some(sub),
            )
        }
    };
    let mut maps = Vec::with_capacity(len);
    for deg in 0..len {
        let (src, tgt) = (source.basis(deg), target.basis(deg));
        let mut m = ExactMatrix::zeros(&field, tgt.len(), src.len());
        for (r, lower) in tgt.iter().enumerate() {
            let pos = h.table.position(lower).expect("basis ids come from the table");
            let upper = &model.strata().get(h.lift[pos]).id;
            let Some(c) = src.iter().position(|s| s == upper) else {
                continue;
            };
            let value = match &sub_block {
                None => CycNum::one(&field),
                Some(b) => {
                    let exp = b.restriction(lower).ok_or_else(|| EigenError::MissingRestriction {
                        scope: sub_scope.clone(),
                        d,
                        lower: lower.clone(),
                    })?;
                    CycNum::zeta_pow(&field, exp * a as i64)
                }
            };
            m.set(r, c, value);
        }
        maps.push(m);
    }
    check_cochain_map(source.complex(), target.complex(), &maps).map_err(|e| match e {
        AlgebraError::NotAMorphism { degree } => EigenError::NotAMorphism {
            horizontal: k.to_string(),
            degree,
        },
        other => EigenError::Algebra(other),
    })?;
    Ok(ComplexMorphism { source, target, maps })
}

/// Block-diagonal sum of complexes of equal length, with the morphisms stacked.
pub(crate) fn stack_morphisms(
    source: &CochainComplex,
    morphisms: &[(&CochainComplex, &[ExactMatrix])],
) -> Result<(CochainComplex, Vec<ExactMatrix>), AlgebraError> {
    let field = source.field();
    let len = morphisms.iter().map(|(t, _)| t.len()).fold(source.len(), usize::max);
    let dims: Vec<usize> = (0..len)
        .map(|j| morphisms.iter().map(|(t, _)| t.dim(j)).sum())
        .collect();
    let mut differentials = Vec::with_capacity(len.saturating_sub(1));
    for j in 0..len.saturating_sub(1) {
        let mut m = ExactMatrix::zeros(field, dims[j + 1], dims[j]);
        let (mut r0, mut c0) = (0, 0);
        for (t, _) in morphisms {
            let dj = t.differential(j);
            for r in 0..dj.rows() {
                for c in 0..dj.cols() {
                    m.set(r0 + r, c0 + c, dj.get(r, c).clone());
                }
            }
            r0 += t.dim(j + 1);
            c0 += t.dim(j);
        }
        differentials.push(m);
    }
    let mut maps = Vec::with_capacity(len);
    for j in 0..len {
        let mut m = ExactMatrix::zeros(field, 0, source.dim(j));
        for (t, ms) in morphisms {
            let part = ms
                .get(j)
                .cloned()
                .unwrap_or_else(|| ExactMatrix::zeros(field, t.dim(j), source.dim(j)));
            m = m.vconcat(&part)?;
        }
        maps.push(m);
    }
    Ok((CochainComplex::new(field, dims, differentials)?, maps))
}

fn check_degree(model: &DegenerationModel, j: usize) -> Result<(), EigenError> {
    if j > model.n() {
        return Err(EigenError::DegreeOutOfRange { j, n: model.n() });
    }
    Ok(())
}

/// `ν^j_{f_U,λ} = dim H^j B•_{f,λ}`.
pub fn nu(
    model: &DegenerationModel,
    atlas: &TrivializationAtlas,
    d: u32,
    a: u32,
    j: usize,
) -> Result<usize, EigenError> {
    check_degree(model, j)?;
    Ok(build_b_complex(model, d, atlas, a)?.complex().cohomology_dim(j))
}

/// `ν^j_{c,f_U,λ} = dim Ker(H^j B•_{f,λ} → ⊕_k H^j B•_{f_k,λ})`.
pub fn nu_c(
    model: &DegenerationModel,
    atlas: &TrivializationAtlas,
    d: u32,
    a: u32,
    j: usize,
) -> Result<usize, EigenError> {
    check_degree(model, j)?;
    Ok(nu_vectors(model, atlas, EigenvalueSpec::new(d, a)?)?.1[j])
}

/// `(ν^j, ν_c^j)` for every `j ∈ [0, n]`.
pub fn nu_vectors(
    model: &DegenerationModel,
    atlas: &TrivializationAtlas,
    eigen: EigenvalueSpec,
) -> Result<(Vec<usize>, Vec<usize>), EigenError> {
    let b = build_b_complex(model, eigen.d, atlas, eigen.a)?;
    let nu = b.cohomology_dims();
    let morphisms = model
        .horizontal()
        .iter()
        .map(|h| restriction_morphism(model, &h.id, eigen.d, atlas, eigen.a, ComplexKind::B))
        .collect::<Result<Vec<_>, _>>()?;
    if morphisms.is_empty() {
        return Ok((nu.clone(), nu));
    }
    let parts: Vec<(&CochainComplex, &[ExactMatrix])> = morphisms
        .iter()
        .map(|m| (m.target.complex(), m.maps.as_slice()))
        .collect();
    let (target, maps) = stack_morphisms(b.complex(), &parts)?;
    let nu_c = (0..nu.len())
        .map(|j| kernel_dim_on_cohomology(b.complex(), &target, &maps, j))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((nu, nu_c))
}
