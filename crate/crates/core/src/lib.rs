//! Exact computation of the abelian Reidemeister torsion of closed oriented
//! 3-manifolds given by surgery on algebraically split framed links.
//!
//! The pipeline:
//!
//! 1. **link**: parse a link presentation (PD code or braid closure), build
//!    linking matrices, compute multivariable Alexander polynomials by Fox
//!    calculus, and normalize them to symmetrized Conway form for the link
//!    and all sublinks the surgery formula needs.
//! 2. **engine**: enumerate Euler-structure classes through surgery charges
//!    and evaluate the surgery formula, producing the torsion function `T`
//!    and its group-ring generating function `tau` over `H_1(M)`.
//! 3. **identities**: verify and exploit the structural identities of the
//!    torsion: duality and characteristic classes, moment vanishing, the
//!    Casson-Walker-Lescop sum, triple-cup extraction, Thurston-norm lower
//!    bounds, and the circle-bundle catalog.
//!
//! All arithmetic is exact: arbitrary-precision integers in polynomials and
//! normal forms, rationals in moments. No floating point anywhere.

pub mod algebra;
pub mod engine;
pub mod error;
pub mod identities;
pub mod io;
pub mod link;

pub use error::{Error, Result};
