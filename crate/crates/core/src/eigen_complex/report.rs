use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{nu_vectors, EigenError, EigenvalueSpec, TrivializationAtlas};
use crate::snc_model::DegenerationModel;

/// Where a row's numbers come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RowSource {
    Computed,
    Theorem3,
    Duality,
}

impl RowSource {
    pub fn as_str(&self) -> &'static str {
        match self {
            RowSource::Computed => "computed",
            RowSource::Theorem3 => "theorem3",
            RowSource::Duality => "duality",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JordanRow {
    pub d: u32,
    pub a: u32,
    pub j: usize,
    pub nu: usize,
    pub nu_c: usize,
    pub source: RowSource,
}

/// `ν^j` and `ν_c^j` keyed by `(d, a, j, source)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct JordanReport {
    n: usize,
    rows: BTreeMap<(u32, u32, usize, RowSource), JordanRow>,
}

impl JordanReport {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            rows: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, row: JordanRow) {
        self.rows.insert((row.d, row.a, row.j, row.source), row);
    }

    /// Inserts one row per degree `0..=n` from the given vectors.
    pub fn insert_vectors(&mut self, eigen: EigenvalueSpec, nu: &[usize], nu_c: &[usize], source: RowSource) {
        for (j, (&v, &vc)) in nu.iter().zip(nu_c).enumerate() {
            self.insert(JordanRow {
                d: eigen.d(),
                a: eigen.a(),
                j,
                nu: v,
                nu_c: vc,
                source,
            });
        }
    }

    pub fn rows(&self) -> impl Iterator<Item = &JordanRow> {
        self.rows.values()
    }

    /// The non-duality row for `(λ, j)`.
    pub fn base(&self, eigen: EigenvalueSpec, j: usize) -> Option<&JordanRow> {
        [RowSource::Computed, RowSource::Theorem3]
            .iter()
            .find_map(|&s| self.rows.get(&(eigen.d(), eigen.a(), j, s)))
    }

    pub fn get(&self, eigen: EigenvalueSpec, j: usize, source: RowSource) -> Option<&JordanRow> {
        self.rows.get(&(eigen.d(), eigen.a(), j, source))
    }

    pub fn eigenvalues(&self) -> Vec<EigenvalueSpec> {
        let mut out: Vec<EigenvalueSpec> = self
            .rows
            .keys()
            .map(|&(d, a, _, _)| EigenvalueSpec::new(d, a).expect("rows hold valid eigenvalues"))
            .collect();
        out.dedup();
        out
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("d\ta\tj\tnu\tnu_c\tsource\n");
        for r in self.rows.values() {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}",
                r.d,
                r.a,
                r.j,
                r.nu,
                r.nu_c,
                r.source.as_str()
            );
        }
        out
    }

    pub fn to_pretty(&self) -> String {
        let mut out = String::new();
        let mut last = None;
        for r in self.rows.values() {
            if last != Some((r.d, r.a)) {
                let _ = writeln!(out, "λ = ζ_{}^{}", r.d, r.a);
                last = Some((r.d, r.a));
            }
            let _ = writeln!(
                out,
                "  j={:<3} nu={:<4} nu_c={:<4} ({})",
                r.j,
                r.nu,
                r.nu_c,
                r.source.as_str()
            );
        }
        out
    }
}

/// Adds the rows for `j ∈ [n, 2n]`:
/// `ν^j(λ) = ν_c^{2n-j}(λ̄)` and `ν_c^j(λ) = ν^{2n-j}(λ̄)`.
pub fn extend_by_duality(report: &JordanReport, n: usize) -> Result<JordanReport, EigenError> {
    let mut out = report.clone();
    out.n = n;
    for eigen in report.eigenvalues() {
        let conj = eigen.conjugate();
        for j in n..=2 * n {
            let mirror = report.base(conj, 2 * n - j).ok_or(EigenError::MissingConjugate {
                d: conj.d(),
                a: conj.a(),
            })?;
            out.insert(JordanRow {
                d: eigen.d(),
                a: eigen.a(),
                j,
                nu: mirror.nu_c,
                nu_c: mirror.nu,
                source: RowSource::Duality,
            });
        }
    }
    Ok(out)
}

/// Computes `ν`, `ν_c` on `[0, n]` for every eigenvalue of the given orders and
/// extends them by duality.
pub fn compute_report(
    model: &DegenerationModel,
    atlas: &TrivializationAtlas,
    orders: &[u32],
) -> Result<JordanReport, EigenError> {
    let mut report = JordanReport::new(model.n());
    for &d in orders {
        for eigen in EigenvalueSpec::of_order(d) {
            let (nu, nu_c) = nu_vectors(model, atlas, eigen)?;
            report.insert_vectors(eigen, &nu, &nu_c, RowSource::Computed);
        }
    }
    extend_by_duality(&report, model.n())
}
