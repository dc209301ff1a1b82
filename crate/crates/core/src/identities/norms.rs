//! Thurston-norm lower bounds from basic structures, and the projection of
//! the torsion to the Alexander polynomial's home.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::sync::Arc;

use crate::algebra::{GroupElement, GroupRingElement};
use crate::error::Result;
use crate::identities::duality::char_class_of_term;
use crate::identities::moments::{pairing, CohomologyVector};

/// `B(s) = max |<c(e), s>|` over basic structures (support of `T`), a
/// certified lower bound for the Thurston norm of `s`. Zero torsion means
/// no basic structures and a zero bound.
pub fn thurston_bound(
    tau: &GroupRingElement,
    h0: Option<&GroupElement>,
    s: &CohomologyVector,
) -> Result<BigRational> {
    if tau.is_zero() {
        return Ok(BigRational::zero());
    }
    let h0 = h0.ok_or(crate::error::Error::NoDualityWitness)?;
    let group = tau.group();
    let mut best = BigRational::zero();
    for (u, _) in tau.terms() {
        let c = char_class_of_term(group, h0, u);
        let v = pairing(&c, s).abs();
        if v > best {
            best = v;
        }
    }
    Ok(best)
}

/// Push `tau` forward along `H -> H / Tors H`. The result is the natural
/// lift of the Alexander polynomial of the manifold, up to a unit, for
/// `b_1 >= 2`.
pub fn alexander_projection(tau: &GroupRingElement) -> GroupRingElement {
    let free = Arc::new(tau.group().free_quotient());
    tau.project_to_free(&free)
}
