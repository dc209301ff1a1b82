//! Exact algebra: Laurent polynomials, integer normal forms, group rings.

pub mod group;
pub mod group_ring;
pub mod laurent;
pub mod matrix;

pub use group::{AbelianGroup, GroupElement};
pub use group_ring::GroupRingElement;
pub use laurent::LaurentPolynomial;
pub use matrix::{smith_normal_form, IntMatrix, SmithDecomposition};
