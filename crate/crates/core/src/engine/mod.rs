//! Charge calculus, Euler-structure classes, and the surgery formula.

pub mod charge;
pub mod surgery;

pub use charge::{act, canonical_charge, charge_parities, torsion_residues, validate_charge};
pub use surgery::{
    assemble_tau, torsion_function, z_expansion, z_table, LinkData, SurgeryComputation,
    SurgeryInput, TorsionResult,
};
