//! Finite cochain complexes over `Q(ζ_d)` and their cohomology.

use std::sync::Arc;

use super::field::CyclotomicField;
use super::matrix::ExactMatrix;
use super::AlgebraError;

/// A complex `C^0 → C^1 → … → C^{len-1}`; degrees outside that range are zero.
///
/// `differentials[j]` maps `C^j → C^{j+1}` and has shape `dim C^{j+1} × dim C^j`.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    field: Arc<CyclotomicField>,
    dims: Vec<usize>,
    differentials: Vec<ExactMatrix>,
}

impl CochainComplex {
    /// Validates shapes and `d∘d = 0`.
    pub fn new(
        field: &Arc<CyclotomicField>,
        dims: Vec<usize>,
        differentials: Vec<ExactMatrix>,
    ) -> Result<Self, AlgebraError> {
        if differentials.len() != dims.len().saturating_sub(1) {
            return Err(AlgebraError::Shape(format!(
                "{} spaces need {} differentials, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                differentials.len()
            )));
        }
        for (j, d) in differentials.iter().enumerate() {
            if d.field().order() != field.order() {
                return Err(AlgebraError::OrderMismatch {
                    left: field.order(),
                    right: d.field().order(),
                });
            }
            if d.rows() != dims[j + 1] || d.cols() != dims[j] {
                return Err(AlgebraError::Shape(format!(
                    "differential in degree {j} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    dims[j + 1],
                    dims[j]
                )));
            }
        }
        for j in 1..differentials.len() {
            if !differentials[j].mul(&differentials[j - 1])?.is_zero() {
                return Err(AlgebraError::NotAComplex { degree: j - 1 });
            }
        }
        Ok(Self {
            field: Arc::clone(field),
            dims,
            differentials,
        })
    }

    /// The zero complex with `len` degrees.
    pub fn zero(field: &Arc<CyclotomicField>, len: usize) -> Self {
        let dims = vec![0; len];
        let differentials = (0..len.saturating_sub(1))
            .map(|_| ExactMatrix::zeros(field, 0, 0))
            .collect();
        Self {
            field: Arc::clone(field),
            dims,
            differentials,
        }
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, j: usize) -> usize {
        self.dims.get(j).copied().unwrap_or(0)
    }

    pub fn differentials(&self) -> &[ExactMatrix] {
        &self.differentials
    }

    /// `d^j : C^j → C^{j+1}`, zero-padded outside the stored range.
    pub fn differential(&self, j: usize) -> ExactMatrix {
        self.differentials
            .get(j)
            .cloned()
            .unwrap_or_else(|| ExactMatrix::zeros(&self.field, self.dim(j + 1), self.dim(j)))
    }

    /// `d^{j-1} : C^{j-1} → C^j`; zero map from the zero space when `j = 0`.
    pub fn incoming(&self, j: usize) -> ExactMatrix {
        match j {
            0 => ExactMatrix::zeros(&self.field, self.dim(0), 0),
            _ => self.differential(j - 1),
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.dims)
    }

    pub fn cohomology_dim(&self, j: usize) -> usize {
        self.dim(j) - self.differential(j).rank() - self.incoming(j).rank()
    }

    pub fn cohomology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.differentials.iter().map(ExactMatrix::rank).collect();
        (0..self.len())
            .map(|j| {
                let out = ranks.get(j).copied().unwrap_or(0);
                let inc = if j == 0 { 0 } else { ranks[j - 1] };
                self.dims[j] - out - inc
            })
            .collect()
    }

    /// Entrywise Galois conjugate `ζ ↦ ζ^a` of every differential.
    pub fn galois(&self, a: i64) -> Result<Self, AlgebraError> {
        Ok(Self {
            field: Arc::clone(&self.field),
            dims: self.dims.clone(),
            differentials: self
                .differentials
                .iter()
                .map(|d| d.galois(a))
                .collect::<Result<_, _>>()?,
        })
    }
}

pub fn alternating_sum(dims: &[usize]) -> i64 {
    dims.iter()
        .enumerate()
        .map(|(j, &c)| if j % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum()
}

/// Cohomology dimensions of the complex given by `spaces` and `differentials`.
pub fn cohomology_dims(
    field: &Arc<CyclotomicField>,
    spaces: &[usize],
    differentials: &[ExactMatrix],
) -> Result<Vec<usize>, AlgebraError> {
    Ok(CochainComplex::new(field, spaces.to_vec(), differentials.to_vec())?.cohomology_dims())
}

/// Verifies that `maps` (one matrix per degree, `target^j × source^j`) is a
/// cochain map in every degree.
pub fn check_cochain_map(
    source: &CochainComplex,
    target: &CochainComplex,
    maps: &[ExactMatrix],
) -> Result<(), AlgebraError> {
    let len = source.len().max(target.len());
    for j in 0..len {
        let m = morphism_at(source, target, maps, j)?;
        let m_next = morphism_at(source, target, maps, j + 1)?;
        let left = m_next.mul(&source.differential(j))?;
        let right = target.differential(j).mul(&m)?;
        if left != right {
            return Err(AlgebraError::NotAMorphism { degree: j });
        }
    }
    Ok(())
}

fn morphism_at(
    source: &CochainComplex,
    target: &CochainComplex,
    maps: &[ExactMatrix],
    j: usize,
) -> Result<ExactMatrix, AlgebraError> {
    match maps.get(j) {
        Some(m) => {
            if m.rows() != target.dim(j) || m.cols() != source.dim(j) {
                return Err(AlgebraError::Shape(format!(
                    "morphism in degree {j} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    target.dim(j),
                    source.dim(j)
                )));
            }
            Ok(m.clone())
        }
        None => Ok(ExactMatrix::zeros(source.field(), target.dim(j), source.dim(j))),
    }
}

/// Dimension of the kernel of the map induced on degree-`j` cohomology.
///
/// Counts cocycles of the source whose image is a coboundary in the target,
/// modulo coboundaries of the source.
pub fn kernel_dim_on_cohomology(
    source: &CochainComplex,
    target: &CochainComplex,
    maps: &[ExactMatrix],
    j: usize,
) -> Result<usize, AlgebraError> {
    if source.field().order() != target.field().order() {
        return Err(AlgebraError::OrderMismatch {
            left: source.field().order(),
            right: target.field().order(),
        });
    }
    check_cochain_map(source, target, maps)?;
    let cocycles = source.differential(j).nullspace();
    let image = morphism_at(source, target, maps, j)?.mul(&cocycles)?;
    let target_bdry = target.incoming(j);
    let joint = image.hconcat(&target_bdry)?.rank();
    let kernel_of_cocycles = cocycles.cols() + target_bdry.rank() - joint;
    Ok(kernel_of_cocycles - source.incoming(j).rank())
}
