//! Exact arithmetic in `Q(ζ_d)` and exact linear algebra over it.

mod cochain;
mod field;
mod matrix;

pub use cochain::{alternating_sum, check_cochain_map, cohomology_dims, kernel_dim_on_cohomology, CochainComplex};
pub use field::{cyc_arith, cyclotomic_polynomial, euler_totient, ArithOp, CycNum, CyclotomicField, Rational};
pub use matrix::{matrix_rank, ExactMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("cyclotomic order must be positive, got {0}")]
    InvalidOrder(u32),
    #[error("cyclotomic order mismatch: {left} vs {right}")]
    OrderMismatch { left: u32, right: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent {a} is not coprime to order {d}")]
    NotCoprime { a: i64, d: u32 },
    #[error("shape error: {0}")]
    Shape(String),
    #[error("not a complex: d^{} ∘ d^{degree} != 0 at degree {degree}", degree + 1)]
    NotAComplex { degree: usize },
    #[error("morphism does not commute with the differentials in degree {degree}")]
    NotAMorphism { degree: usize },
}
