//! Moments of the torsion function and the invariants they carry.
//!
//! The `m`-th moment pairs every basic structure's characteristic class
//! against `m` cohomology vectors. Moments vanish for `m <= b_1 - 4`, and
//! also at `m = b_1 - 3` when `b_1` is even. At `b_1 = 3` the zeroth moment
//! equals `|Tors H|` times the square of the triple cup product evaluated
//! on a basis, which is how that square is extracted here. The sum of all
//! values is, up to the sign `(-1)^(b_1+1)`, the Casson-Walker-Lescop
//! invariant.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::algebra::{AbelianGroup, GroupElement, GroupRingElement};
use crate::error::{Error, Result};
use crate::identities::duality::char_class_of_term;

/// A rational linear functional on `H / Tors H`, as coordinates against the
/// free part.
pub type CohomologyVector = Vec<BigRational>;

/// Evaluation pairing; torsion coordinates pair to zero.
pub fn pairing(elt: &GroupElement, x: &CohomologyVector) -> BigRational {
    assert_eq!(elt.free.len(), x.len());
    elt.free
        .iter()
        .zip(x)
        .map(|(c, xi)| BigRational::from_integer(c.clone()) * xi)
        .sum()
}

/// `sum_e T(e) * prod_i <c(e), x_i>` over the support. The characteristic
/// classes come from the duality witness `h0`; it is only needed when
/// `xs` is nonempty and the torsion is nonzero.
pub fn moment(
    tau: &GroupRingElement,
    h0: Option<&GroupElement>,
    xs: &[CohomologyVector],
) -> Result<BigRational> {
    if tau.is_zero() {
        return Ok(BigRational::zero());
    }
    if xs.is_empty() {
        return Ok(tau.augmentation());
    }
    let h0 = h0.ok_or(Error::NoDualityWitness)?;
    let group = tau.group();
    let mut total = BigRational::zero();
    for (u, coeff) in tau.terms() {
        let c = char_class_of_term(group, h0, u);
        let mut prod = coeff.clone();
        for x in xs {
            prod *= pairing(&c, x);
        }
        total += prod;
    }
    Ok(total)
}

/// `lambda(M) = (-1)^(b_1 + 1) * sum_e T(e)` for `b_1 >= 2`.
pub fn lescop(tau: &GroupRingElement, b1: usize) -> Result<BigRational> {
    if b1 < 2 {
        return Err(Error::BettiOutOfScope(b1));
    }
    let sum = tau.augmentation();
    Ok(if (b1 + 1) % 2 == 0 { sum } else { -sum })
}

/// For `b_1 = 3`: `sum_e T(e) / |Tors H|`, the square of the triple cup
/// product on a basis of `H^1`. Under a pinned sign a negative value is an
/// inconsistency alarm.
pub fn triple_cup_square(
    tau: &GroupRingElement,
    group: &AbelianGroup,
    sign_pinned: bool,
) -> Result<BigRational> {
    if group.rank() != 3 {
        return Err(Error::BettiMismatch {
            expected: 3,
            actual: group.rank(),
        });
    }
    let q = tau.augmentation() / BigRational::from_integer(group.torsion_order());
    if sign_pinned && q.is_negative() {
        return Err(Error::NegativeSquare);
    }
    Ok(q)
}

/// Is this rational the square of a nonnegative integer?
pub fn is_perfect_integer_square(q: &BigRational) -> bool {
    if !q.is_integer() || q.is_negative() {
        return false;
    }
    let n = q.to_integer();
    if n.is_zero() {
        return true;
    }
    let r = n.sqrt();
    &r * &r == n
}

/// Integer square root of a perfect-square value, if it is one.
pub fn integer_square_root(q: &BigRational) -> Option<BigInt> {
    if is_perfect_integer_square(q) {
        Some(q.to_integer().sqrt())
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::One;
    use std::sync::Arc;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn zeroth_moment_is_value_sum() {
        let g = Arc::new(AbelianGroup::free_with_torsion(3, vec![]));
        let tau = GroupRingElement::one(g.clone());
        assert_eq!(moment(&tau, None, &[]).unwrap(), BigRational::one());
    }

    #[test]
    fn moment_of_zero_torsion_vanishes() {
        let g = Arc::new(AbelianGroup::free_with_torsion(4, vec![]));
        let tau = GroupRingElement::zero(g.clone());
        let xs = vec![vec![rat(1, 2), rat(0, 1), rat(3, 5), rat(-1, 7)]];
        assert!(moment(&tau, None, &xs).unwrap().is_zero());
    }

    #[test]
    fn first_moment_of_symmetric_pair() {
        // tau = t^2 - 2 + t^-2 on Z[Z]; h0 = identity by symmetry
        let g = Arc::new(AbelianGroup::free_with_torsion(1, vec![]));
        let elt = |k: i64| g.element(vec![BigInt::from(k)], vec![]);
        let tau = GroupRingElement::from_integer_terms(
            g.clone(),
            vec![
                (elt(2), BigInt::one()),
                (elt(0), BigInt::from(-2)),
                (elt(-2), BigInt::one()),
            ],
        );
        let h0 = crate::identities::duality::extract_char_class(&tau).unwrap();
        assert!(g.is_identity(&h0));
        let x = vec![rat(3, 7)];
        // classes are t^-4, 1, t^4 with values 1, -2, 1: odd symmetry kills it
        assert!(moment(&tau, Some(&h0), &[x]).unwrap().is_zero());
    }

    #[test]
    fn lescop_signs() {
        let g = Arc::new(AbelianGroup::free_with_torsion(3, vec![]));
        let tau = GroupRingElement::one(g.clone());
        assert_eq!(lescop(&tau, 3).unwrap(), BigRational::one());
        assert_eq!(lescop(&tau, 2).unwrap(), -BigRational::one());
        assert!(matches!(lescop(&tau, 1), Err(Error::BettiOutOfScope(1))));
    }

    #[test]
    fn cup_square_on_three_torus_shape() {
        let g = Arc::new(AbelianGroup::free_with_torsion(3, vec![]));
        let tau = GroupRingElement::one(g.clone());
        let q = triple_cup_square(&tau, &g, true).unwrap();
        assert_eq!(q, BigRational::one());
        assert!(is_perfect_integer_square(&q));
    }

    #[test]
    fn cup_square_rejects_wrong_betti() {
        let g = Arc::new(AbelianGroup::free_with_torsion(2, vec![]));
        let tau = GroupRingElement::one(g.clone());
        assert!(matches!(
            triple_cup_square(&tau, &g, false),
            Err(Error::BettiMismatch { expected: 3, actual: 2 })
        ));
    }

    #[test]
    fn negative_sum_under_pinned_sign_alarms() {
        let g = Arc::new(AbelianGroup::free_with_torsion(3, vec![]));
        let tau = GroupRingElement::one(g.clone()).neg();
        assert!(matches!(
            triple_cup_square(&tau, &g, true),
            Err(Error::NegativeSquare)
        ));
        assert!(triple_cup_square(&tau, &g, false).is_ok());
    }

    #[test]
    fn perfect_square_detection() {
        assert!(is_perfect_integer_square(&rat(0, 1)));
        assert!(is_perfect_integer_square(&rat(9, 1)));
        assert!(!is_perfect_integer_square(&rat(8, 1)));
        assert!(!is_perfect_integer_square(&rat(-4, 1)));
        assert!(!is_perfect_integer_square(&rat(1, 4)));
    }
}
