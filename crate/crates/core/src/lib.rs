//! Counting Jordan blocks of maximal size for the local monodromy of a
//! one-parameter degeneration, from a combinatorial model of its
//! simple-normal-crossing special fiber.
//!
//! All linear algebra is exact over cyclotomic fields `Q(ζ_d)`.

pub mod criteria;
pub mod cyclotomic;
pub mod eigen_complex;
pub mod snc_model;
pub mod spectrum;
