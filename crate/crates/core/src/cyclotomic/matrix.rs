use std::fmt;
use std::sync::Arc;

use super::field::{CycNum, CyclotomicField};
use super::AlgebraError;

/// Dense matrix over a single cyclotomic field.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    field: Arc<CyclotomicField>,
    rows: usize,
    cols: usize,
    data: Vec<CycNum>,
}

impl ExactMatrix {
    pub fn zeros(field: &Arc<CyclotomicField>, rows: usize, cols: usize) -> Self {
        Self {
            field: Arc::clone(field),
            rows,
            cols,
            data: vec![CycNum::zero(field); rows * cols],
        }
    }

    pub fn identity(field: &Arc<CyclotomicField>, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, CycNum::one(field));
        }
        m
    }

    /// Builds a matrix from rows of integers embedded in `Q(ζ_d)`.
    pub fn from_integers(field: &Arc<CyclotomicField>, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(field, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged integer matrix");
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, CycNum::from_integer(field, v));
            }
        }
        m
    }

    /// Builds a matrix from explicit entries, rejecting mixed cyclotomic orders.
    pub fn from_rows(field: &Arc<CyclotomicField>, rows: Vec<Vec<CycNum>>) -> Result<Self, AlgebraError> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(AlgebraError::Shape(format!(
                    "ragged row of length {} (expected {cols})",
                    row.len()
                )));
            }
            for x in row {
                if x.order() != field.order() {
                    return Err(AlgebraError::OrderMismatch {
                        left: field.order(),
                        right: x.order(),
                    });
                }
                data.push(x);
            }
        }
        Ok(Self {
            field: Arc::clone(field),
            rows: nrows,
            cols,
            data,
        })
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &CycNum {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: CycNum) {
        debug_assert_eq!(value.order(), self.field.order());
        self.data[r * self.cols + c] = value;
    }

    pub fn add_to(&mut self, r: usize, c: usize, value: &CycNum) {
        let idx = r * self.cols + c;
        self.data[idx] = &self.data[idx] + value;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CycNum::is_zero)
    }

    pub fn row(&self, r: usize) -> &[CycNum] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.field.order() != other.field.order() {
            return Err(AlgebraError::OrderMismatch {
                left: self.field.order(),
                right: other.field.order(),
            });
        }
        if self.cols != other.rows {
            return Err(AlgebraError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_to(i, j, &(a * b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hconcat(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.rows != other.rows {
            return Err(AlgebraError::Shape(format!(
                "cannot concatenate {} rows with {} rows",
                self.rows, other.rows
            )));
        }
        let cols = self.cols + other.cols;
        let mut out = Self::zeros(&self.field, self.rows, cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        Ok(out)
    }

    /// Vertical concatenation.
    pub fn vconcat(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.cols != other.cols {
            return Err(AlgebraError::Shape(format!(
                "cannot stack {} columns on {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Self {
            field: Arc::clone(&self.field),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Entrywise `ζ ↦ ζ^a`.
    pub fn galois(&self, a: i64) -> Result<Self, AlgebraError> {
        let data = self.data.iter().map(|x| x.galois(a)).collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            field: Arc::clone(&self.field),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Reduced row echelon form with first-nonzero pivoting.
    /// Returns the reduced matrix and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..m.cols {
            if prow == m.rows {
                break;
            }
            let Some(found) = (prow..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(prow, found);
            let inv = m.get(prow, col).inv().expect("pivot is nonzero");
            for c in col..m.cols {
                let v = m.get(prow, c);
                if !v.is_zero() {
                    let scaled = v * &inv;
                    m.set(prow, c, scaled);
                }
            }
            for r in 0..m.rows {
                if r == prow {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let p = m.get(prow, c);
                    if !p.is_zero() {
                        let updated = m.get(r, c) - &(&factor * p);
                        m.set(r, c, updated);
                    }
                }
            }
            pivots.push(col);
            prow += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.rref().1.len()
    }

    /// A basis of the right null space, returned as the columns of a matrix.
    pub fn nullspace(&self) -> Self {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Self::zeros(&self.field, self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis.set(f, k, CycNum::one(&self.field));
            for (prow, &pc) in pivots.iter().enumerate() {
                let v = r.get(prow, f);
                if !v.is_zero() {
                    basis.set(pc, k, -v);
                }
            }
        }
        basis
    }
}

/// Exact rank over `Q(ζ_d)`.
pub fn matrix_rank(m: &ExactMatrix) -> usize {
    m.rank()
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix[{}] {}x{}", self.field.order(), self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
