//! Closed-form torsions of oriented circle bundles over surfaces.
//!
//! For the bundle of Euler number `n` over a closed orientable surface of
//! genus `g >= 1`, the torsion at the structure tangent to the fibers is
//! `+-(t - 1)^(2g-2)` with `t` the fiber class, and its characteristic
//! class is `t^(2g-2)`. The fiber class generates a free summand when
//! `n = 0` and a `Z/|n|` summand otherwise.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::algebra::{AbelianGroup, GroupElement, GroupRingElement};
use crate::error::{Error, Result};
use crate::identities::duality::extract_char_class;
use crate::identities::moments::CohomologyVector;
use crate::identities::norms::thurston_bound;

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub genus: i64,
    pub euler: i64,
    pub group: Arc<AbelianGroup>,
    pub fiber: GroupElement,
    pub tau: GroupRingElement,
}

/// Builds the catalog entry for genus `g >= 1` and Euler number `n`.
/// The sign of `tau` is conventional (the identity suite works with either
/// choice); `(t - 1)^(2g-2)` is emitted with its binomial signs.
pub fn circle_bundle_catalog(g: i64, n: i64) -> Result<CatalogEntry> {
    if g < 1 {
        return Err(Error::BadGenus(g));
    }
    let (group, fiber) = if n == 0 {
        let group = Arc::new(AbelianGroup::free_with_torsion(2 * g as usize, vec![]));
        let mut free = vec![BigInt::from(0); 2 * g as usize];
        free[0] = BigInt::one();
        let fiber = group.element(free, vec![]);
        (group, fiber)
    } else if n.abs() == 1 {
        // Z/1 is trivial: the fiber class dies in homology
        let group = Arc::new(AbelianGroup::free_with_torsion(2 * g as usize, vec![]));
        let fiber = group.identity();
        (group, fiber)
    } else {
        let group = Arc::new(AbelianGroup::free_with_torsion(
            2 * g as usize,
            vec![BigInt::from(n.abs())],
        ));
        let fiber = group.element(vec![BigInt::from(0); 2 * g as usize], vec![BigInt::one()]);
        (group, fiber)
    };
    let t = GroupRingElement::single(group.clone(), fiber.clone(), BigRational::one());
    let tau = t
        .sub(&GroupRingElement::one(group.clone()))?
        .pow((2 * g - 2) as usize)?;
    Ok(CatalogEntry {
        genus: g,
        euler: n,
        group,
        fiber,
        tau,
    })
}

impl CatalogEntry {
    /// `t^(2g-2)`, the expected duality witness.
    pub fn expected_char_class(&self) -> GroupElement {
        self.group
            .scalar_mul(&self.fiber, &BigInt::from(2 * self.genus - 2))
    }

    /// A cohomology vector dual to the fiber when the fiber class is free
    /// (`<t, s> = 1`); for torsion fiber classes every functional pairs to
    /// zero and the first basis functional is returned.
    pub fn fiber_dual(&self) -> CohomologyVector {
        let mut s = vec![BigRational::from_integer(BigInt::from(0)); self.group.rank()];
        if !s.is_empty() {
            s[0] = BigRational::one();
        }
        s
    }

    /// Runs the duality gate and Thurston bound on the entry. Returns
    /// `(h0, bound_for_fiber_dual)`; `h0` is `None` only when the torsion
    /// is identically zero (`|n| = 1`, `g >= 2`).
    pub fn check(&self) -> Result<(Option<GroupElement>, BigRational)> {
        if self.tau.is_zero() {
            return Ok((None, BigRational::from_integer(BigInt::from(0))));
        }
        let h0 = extract_char_class(&self.tau)?;
        if h0 != self.expected_char_class() {
            return Err(Error::NoDualityWitness);
        }
        let bound = thurston_bound(&self.tau, Some(&h0), &self.fiber_dual())?;
        Ok((Some(h0), bound))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn genus_one_is_constant() {
        for n in [0, 2, -3] {
            let e = circle_bundle_catalog(1, n).unwrap();
            assert_eq!(e.tau, GroupRingElement::one(e.group.clone()));
            let (h0, bound) = e.check().unwrap();
            assert!(e.group.is_identity(&h0.unwrap()));
            assert!(bound.is_zero());
        }
    }

    #[test]
    fn genus_two_trivial_bundle() {
        let e = circle_bundle_catalog(2, 0).unwrap();
        assert_eq!(e.group.rank(), 4);
        // coefficients 1, -2, 1 along the fiber axis
        let coeffs: Vec<BigRational> = e.tau.terms().map(|(_, c)| c.clone()).collect();
        assert_eq!(
            coeffs,
            vec![
                BigRational::from_integer(BigInt::from(1)),
                BigRational::from_integer(BigInt::from(-2)),
                BigRational::from_integer(BigInt::from(1)),
            ]
        );
        let (h0, bound) = e.check().unwrap();
        assert_eq!(h0.unwrap(), e.expected_char_class());
        assert_eq!(bound, BigRational::from_integer(BigInt::from(2)));
    }

    #[test]
    fn genus_three_euler_two_reduces_exponents() {
        let e = circle_bundle_catalog(3, 2).unwrap();
        // (t-1)^4 with t^2 = 1 collapses to 8 - 8t
        assert_eq!(e.tau.num_terms(), 2);
        let vals: Vec<BigRational> = e.tau.terms().map(|(_, c)| c.clone()).collect();
        assert_eq!(
            vals,
            vec![
                BigRational::from_integer(BigInt::from(8)),
                BigRational::from_integer(BigInt::from(-8)),
            ]
        );
        let (h0, bound) = e.check().unwrap();
        // t^(2g-2) = t^4 = identity in Z/2
        assert!(e.group.is_identity(&h0.unwrap()));
        // torsion fiber pairs to zero
        assert!(bound.is_zero());
    }

    #[test]
    fn bad_genus_rejected() {
        assert!(matches!(circle_bundle_catalog(0, 0), Err(Error::BadGenus(0))));
        assert!(matches!(circle_bundle_catalog(-2, 1), Err(Error::BadGenus(-2))));
    }

    #[test]
    fn duality_holds_across_catalog() {
        for g in 1..=3 {
            for n in [0, 2] {
                let e = circle_bundle_catalog(g, n).unwrap();
                let (h0, _) = e.check().unwrap();
                // bar(tau) translated by t^(2g-2) recovers tau
                let back = e.tau.bar().translate(&h0.unwrap());
                assert_eq!(back, e.tau, "g={} n={}", g, n);
            }
        }
    }
}
