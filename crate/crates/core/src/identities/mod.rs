//! Structural identities of the torsion: duality and characteristic
//! classes, moments, the Casson-Walker-Lescop sum, cup-product extraction,
//! Thurston-norm bounds, the Alexander projection, and the circle-bundle
//! catalog.

pub mod catalog;
pub mod duality;
pub mod moments;
pub mod norms;
pub mod verify;

pub use catalog::{circle_bundle_catalog, CatalogEntry};
pub use duality::{char_class_of, char_class_of_term, extract_char_class};
pub use moments::{
    integer_square_root, is_perfect_integer_square, lescop, moment, pairing, triple_cup_square,
    CohomologyVector,
};
pub use norms::{alexander_projection, thurston_bound};
pub use verify::{run_verify, MomentCheck, VerifyReport, MOMENT_SAMPLES};
