//! Link presentations: PD codes, braid closures, Fox calculus, and the
//! symmetrized Conway table the surgery formula consumes.

pub mod braid;
pub mod conway;
pub mod fox;
pub mod pd;

pub use braid::{braid_closure, BraidWord};
pub use conway::{conway_data, conway_normalize, ConwayData, SublinkConway};
pub use fox::{alexander_multi, alexander_multi_in_vars, laurent_det};
pub use pd::{Crossing, PDCode};
