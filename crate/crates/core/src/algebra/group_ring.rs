//! Group rings of finitely generated abelian groups.
//!
//! Elements are finitely supported maps `H -> Q`. The torsion of a manifold
//! with `b_1 >= 2` is integral; rational coefficients exist so the same type
//! can carry moment computations and future `b_1 <= 1` extensions.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::group::{AbelianGroup, GroupElement};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupRingElement {
    group: Arc<AbelianGroup>,
    terms: BTreeMap<GroupElement, BigRational>,
}

impl GroupRingElement {
    pub fn zero(group: Arc<AbelianGroup>) -> Self {
        Self {
            group,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(group: Arc<AbelianGroup>) -> Self {
        let id = group.identity();
        Self::single(group, id, BigRational::one())
    }

    pub fn single(group: Arc<AbelianGroup>, h: GroupElement, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(h, c);
        }
        Self { group, terms }
    }

    pub fn from_integer_terms(
        group: Arc<AbelianGroup>,
        it: impl IntoIterator<Item = (GroupElement, BigInt)>,
    ) -> Self {
        let mut out = Self::zero(group);
        for (h, c) in it {
            out.add_term(h, BigRational::from_integer(c));
        }
        out
    }

    pub fn group(&self) -> &Arc<AbelianGroup> {
        &self.group
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, h: &GroupElement) -> BigRational {
        self.terms.get(h).cloned().unwrap_or_else(BigRational::zero)
    }

    fn add_term(&mut self, h: GroupElement, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(h) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_group(&self, other: &Self) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_group(other)?;
        let mut out = self.clone();
        for (h, c) in &other.terms {
            out.add_term(h.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            group: self.group.clone(),
            terms: self.terms.iter().map(|(h, c)| (h.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.group.clone());
        }
        Self {
            group: self.group.clone(),
            terms: self.terms.iter().map(|(h, k)| (h.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_group(other)?;
        let mut out = Self::zero(self.group.clone());
        for (ha, ca) in &self.terms {
            for (hb, cb) in &other.terms {
                out.add_term(self.group.add(ha, hb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: usize) -> Result<Self> {
        let mut out = Self::one(self.group.clone());
        for _ in 0..n {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Conjugation: group elements to their inverses.
    pub fn bar(&self) -> Self {
        Self {
            group: self.group.clone(),
            terms: self
                .terms
                .iter()
                .map(|(h, c)| (self.group.neg(h), c.clone()))
                .collect(),
        }
    }

    /// Translation by `h`: the action of `H` on its group ring.
    pub fn translate(&self, h: &GroupElement) -> Self {
        Self {
            group: self.group.clone(),
            terms: self
                .terms
                .iter()
                .map(|(g, c)| (self.group.add(g, h), c.clone()))
                .collect(),
        }
    }

    /// True when every coefficient has denominator 1.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Sum of all coefficients.
    pub fn augmentation(&self) -> BigRational {
        self.terms.values().sum()
    }

    /// All `h` with `bar(self) = h^-1 * self`. For a nonzero element the
    /// translation action is free on torsion-free groups, so there is at
    /// most one; torsion groups can yield several. Empty for zero.
    pub fn duality_witnesses(&self) -> Vec<GroupElement> {
        if self.is_zero() {
            return Vec::new();
        }
        let bar = self.bar();
        let (anchor, _) = bar.terms().next().expect("nonzero");
        let anchor = anchor.clone();
        let mut witnesses = Vec::new();
        for (s, _) in self.terms() {
            let h = self.group.sub(s, &anchor);
            if &bar.translate(&h) == self {
                witnesses.push(h);
            }
        }
        witnesses
    }

    /// Push forward along `H -> H / Tors H`, summing coefficients over
    /// torsion fibers.
    pub fn project_to_free(&self, free_group: &Arc<AbelianGroup>) -> Self {
        assert_eq!(free_group.rank(), self.group.rank());
        assert!(free_group.invariant_factors().is_empty());
        let mut out = Self::zero(free_group.clone());
        for (h, c) in &self.terms {
            let img = GroupElement {
                free: h.free.clone(),
                tors: Vec::new(),
            };
            out.add_term(img, c.clone());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z5() -> Arc<AbelianGroup> {
        Arc::new(AbelianGroup::free_with_torsion(0, vec![BigInt::from(5)]))
    }

    fn gen_of(g: &Arc<AbelianGroup>) -> GroupElement {
        g.element(vec![], vec![BigInt::one()])
    }

    #[test]
    fn translate_by_identity_is_identity() {
        let g = z5();
        let x = GroupRingElement::single(g.clone(), gen_of(&g), BigRational::from_integer(3.into()));
        assert_eq!(x.translate(&g.identity()), x);
    }

    #[test]
    fn bar_of_single_term() {
        let g = z5();
        let h = gen_of(&g);
        let x = GroupRingElement::single(g.clone(), h.clone(), BigRational::from_integer(7.into()));
        let expect =
            GroupRingElement::single(g.clone(), g.neg(&h), BigRational::from_integer(7.into()));
        assert_eq!(x.bar(), expect);
        assert_eq!(x.bar().bar(), x);
    }

    #[test]
    fn order_five_cycle_closes() {
        // g * g^4 = identity term in Z[Z/5]
        let g = z5();
        let a = GroupRingElement::single(g.clone(), gen_of(&g), BigRational::one());
        let b = GroupRingElement::single(
            g.clone(),
            g.element(vec![], vec![BigInt::from(4)]),
            BigRational::one(),
        );
        assert_eq!(a.mul(&b).unwrap(), GroupRingElement::one(g));
    }

    #[test]
    fn translation_inverse_cancels() {
        let g = Arc::new(AbelianGroup::free_with_torsion(2, vec![BigInt::from(3)]));
        let h = g.element(
            vec![BigInt::from(2), BigInt::from(-1)],
            vec![BigInt::from(2)],
        );
        let x = GroupRingElement::from_integer_terms(
            g.clone(),
            vec![
                (g.identity(), BigInt::from(1)),
                (g.element(vec![BigInt::one(), BigInt::zero()], vec![BigInt::one()]), BigInt::from(-2)),
            ],
        );
        assert_eq!(x.translate(&h).translate(&g.neg(&h)), x);
        // bar(h x) = h^-1 bar(x)
        assert_eq!(
            x.translate(&h).bar(),
            x.bar().translate(&g.neg(&h))
        );
    }

    #[test]
    fn multiplication_distributes() {
        let g = z5();
        let e = gen_of(&g);
        let a = GroupRingElement::from_integer_terms(
            g.clone(),
            vec![(g.identity(), BigInt::one()), (e.clone(), BigInt::from(2))],
        );
        let b = GroupRingElement::single(g.clone(), e.clone(), BigRational::one());
        let c = GroupRingElement::one(g.clone());
        let bc = b.add(&c).unwrap();
        assert_eq!(
            a.mul(&bc).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }
}
