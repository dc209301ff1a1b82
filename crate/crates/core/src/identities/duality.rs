//! Duality and characteristic classes.
//!
//! The torsion satisfies `bar(tau(e)) = tau(e^-1) = c(e)^-1 tau(e)`, so the
//! characteristic class of the reference structure can be recovered from
//! `tau` alone: it is the unique translation witness `h0` with
//! `bar(tau) = h0^-1 tau`. Its existence is a hard cross-validation gate
//! for the whole pipeline, not a soft warning.

use crate::algebra::{AbelianGroup, GroupElement, GroupRingElement};
use crate::error::{Error, Result};

/// The unique `h0` with `bar(tau) = h0^-1 * tau`, equivalently
/// `tau = h0 * bar(tau)`.
pub fn extract_char_class(tau: &GroupRingElement) -> Result<GroupElement> {
    if tau.is_zero() {
        return Err(Error::ZeroTorsion);
    }
    let mut witnesses = tau.duality_witnesses();
    match witnesses.len() {
        0 => Err(Error::NoDualityWitness),
        1 => Ok(witnesses.pop().expect("one witness")),
        _ => Err(Error::AmbiguousDuality),
    }
}

/// `c(h e) = h^2 c(e)`.
pub fn char_class_of(group: &AbelianGroup, h0: &GroupElement, h: &GroupElement) -> GroupElement {
    group.add(&group.double(h), h0)
}

/// Characteristic class attached to a support term of `tau`: the term at
/// group element `u` is `T(h e_ref)` for `h = u^-1`, so its class is
/// `u^-2 * c(e_ref)`.
pub fn char_class_of_term(
    group: &AbelianGroup,
    h0: &GroupElement,
    u: &GroupElement,
) -> GroupElement {
    char_class_of(group, h0, &group.neg(u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::{One, Zero};
    use num_rational::BigRational;
    use std::sync::Arc;

    #[test]
    fn identity_witness_for_constant_tau() {
        let g = Arc::new(AbelianGroup::free_with_torsion(3, vec![]));
        let tau = GroupRingElement::one(g.clone());
        let h0 = extract_char_class(&tau).unwrap();
        assert!(g.is_identity(&h0));
    }

    #[test]
    fn zero_torsion_is_flagged() {
        let g = Arc::new(AbelianGroup::free_with_torsion(2, vec![]));
        assert!(matches!(
            extract_char_class(&GroupRingElement::zero(g)),
            Err(Error::ZeroTorsion)
        ));
    }

    #[test]
    fn genus_two_bundle_shape() {
        // tau = (t - 1)^2 over Z[Z]: witness must be t^2
        let g = Arc::new(AbelianGroup::free_with_torsion(1, vec![]));
        let t = g.element(vec![BigInt::one()], vec![]);
        let base = GroupRingElement::single(g.clone(), t.clone(), BigRational::one())
            .sub(&GroupRingElement::one(g.clone()))
            .unwrap();
        let tau = base.pow(2).unwrap();
        let h0 = extract_char_class(&tau).unwrap();
        assert_eq!(h0, g.double(&t));
    }

    #[test]
    fn no_witness_for_asymmetric_element() {
        // 1 + 2t has no translation h0 with bar = h0^-1 * it
        let g = Arc::new(AbelianGroup::free_with_torsion(1, vec![]));
        let t = g.element(vec![BigInt::one()], vec![]);
        let x = GroupRingElement::one(g.clone())
            .add(&GroupRingElement::single(
                g.clone(),
                t,
                BigRational::from_integer(2.into()),
            ))
            .unwrap();
        assert!(matches!(
            extract_char_class(&x),
            Err(Error::NoDualityWitness)
        ));
    }

    #[test]
    fn ambiguous_witness_in_torsion_group() {
        // 1 + t with t of order 2: both 1 and t are witnesses
        let g = Arc::new(AbelianGroup::free_with_torsion(0, vec![BigInt::from(2)]));
        let t = g.element(vec![], vec![BigInt::one()]);
        let x = GroupRingElement::one(g.clone())
            .add(&GroupRingElement::single(g.clone(), t, BigRational::one()))
            .unwrap();
        assert!(matches!(
            extract_char_class(&x),
            Err(Error::AmbiguousDuality)
        ));
    }

    #[test]
    fn consistency_of_class_translation() {
        let g = Arc::new(AbelianGroup::free_with_torsion(2, vec![BigInt::from(3)]));
        let h0 = g.element(vec![BigInt::from(2), BigInt::zero()], vec![BigInt::one()]);
        let h = g.element(vec![BigInt::from(-1), BigInt::from(4)], vec![BigInt::from(2)]);
        let c = char_class_of(&g, &h0, &h);
        // c(h e) - c(e) = 2h
        assert_eq!(g.sub(&c, &h0), g.double(&h));
    }
}
