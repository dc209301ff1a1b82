//! Charges and Euler-structure classes on a framed surgery link.
//!
//! A charge is an integer vector `k` with `k_i = 1 + sum_{j != i} lk(L_i, L_j)
//! (mod 2)`; it determines an Euler structure on the surgered manifold that
//! depends only on `k (mod 2f)`. Classes are stored through canonical
//! representatives: coordinates with nonzero framing reduced into
//! `[0, 2|f_j|)`, zero-framed coordinates kept as exact integers.

use crate::error::{Error, Result};

/// Required parity (0 or 1) of each charge coordinate.
pub fn charge_parities(lk: &[Vec<i64>]) -> Vec<i64> {
    let m = lk.len();
    (0..m)
        .map(|i| {
            let row: i64 = (0..m).filter(|&j| j != i).map(|j| lk[i][j]).sum();
            (1 + row).rem_euclid(2)
        })
        .collect()
}

pub fn validate_charge(k: &[i64], parities: &[i64]) -> Result<()> {
    if k.len() != parities.len() {
        return Err(Error::InvalidInput(format!(
            "charge length {} != {} components",
            k.len(),
            parities.len()
        )));
    }
    for (i, (&ki, &p)) in k.iter().zip(parities).enumerate() {
        if ki.rem_euclid(2) != p {
            return Err(Error::BadParity(i + 1));
        }
    }
    Ok(())
}

/// Canonical representative of the class of `k` modulo `2f`.
pub fn canonical_charge(k: &[i64], framings: &[i64]) -> Vec<i64> {
    k.iter()
        .zip(framings)
        .map(|(&ki, &f)| {
            if f == 0 {
                ki
            } else {
                ki.rem_euclid(2 * f.abs())
            }
        })
        .collect()
}

/// The action of an ambient vector `v` (an integer lift of a homology
/// class) on charges: `k -> k + 2v`.
pub fn act(k: &[i64], v: &[i64], framings: &[i64]) -> Vec<i64> {
    let shifted: Vec<i64> = k.iter().zip(v).map(|(&ki, &vi)| ki + 2 * vi).collect();
    canonical_charge(&shifted, framings)
}

/// All residues with the required parity in `[0, 2|f|)` for a nonzero
/// framing `f`; there are exactly `|f|` of them.
pub fn torsion_residues(f: i64, parity: i64) -> Vec<i64> {
    assert!(f != 0);
    (0..2 * f.abs()).filter(|r| r.rem_euclid(2) == parity).collect()
}
