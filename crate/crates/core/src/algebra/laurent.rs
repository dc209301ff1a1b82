//! Sparse multivariate Laurent polynomials with exact integer coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors, so every
//! polynomial has exactly one representation and serialization order is
//! the lexicographic order on exponents.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A Laurent polynomial in `vars` variables over the integers.
///
/// Invariant: no stored coefficient is zero; the zero polynomial has an
/// empty term map.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LaurentPolynomial {
    vars: usize,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero(vars: usize) -> Self {
        Self {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: usize) -> Self {
        Self::constant(vars, BigInt::one())
    }

    pub fn constant(vars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(vars, vec![0; vars], c)
    }

    /// The variable `t_i` (0-based index).
    pub fn var(vars: usize, i: usize) -> Self {
        assert!(i < vars);
        let mut e = vec![0; vars];
        e[i] = 1;
        Self::monomial(vars, e, 1)
    }

    pub fn monomial(vars: usize, expo: Vec<i64>, c: impl Into<BigInt>) -> Self {
        assert_eq!(expo.len(), vars);
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(expo, c);
        }
        Self { vars, terms }
    }

    pub fn from_terms(vars: usize, it: impl IntoIterator<Item = (Vec<i64>, BigInt)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in it {
            assert_eq!(e.len(), vars);
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, expo: &[i64]) -> BigInt {
        self.terms.get(expo).cloned().unwrap_or_else(BigInt::zero)
    }

    fn add_term(&mut self, expo: Vec<i64>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(expo) {
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

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VarMismatch(self.vars, other.vars));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars);
        }
        Self {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = Self::zero(self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    /// Multiply by the monomial `t^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        assert_eq!(shift.len(), self.vars);
        Self {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    (
                        e.iter().zip(shift).map(|(x, s)| x + s).collect(),
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    /// Conjugation: every group element (monomial) to its inverse.
    pub fn bar(&self) -> Self {
        Self {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|x| -x).collect(), c.clone()))
                .collect(),
        }
    }

    /// Substitute `t_i -> t_i^2` for every variable.
    pub fn square_subst(&self) -> Self {
        Self {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|x| 2 * x).collect(), c.clone()))
                .collect(),
        }
    }

    /// Per-variable (min, max) exponents over the support. Variables not
    /// appearing report (0, 0).
    pub fn exponent_range(&self, var: usize) -> (i64, i64) {
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for e in self.terms.keys() {
            lo = lo.min(e[var]);
            hi = hi.max(e[var]);
        }
        if self.terms.is_empty() {
            (0, 0)
        } else {
            (lo, hi)
        }
    }

    /// Exponent vector of per-variable minimum exponents (the monomial
    /// content). Zero polynomial reports the zero vector.
    pub fn content_exponent(&self) -> Vec<i64> {
        let mut out = vec![0; self.vars];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.exponent_range(i).0;
        }
        out
    }

    /// Exact division in the Laurent ring; errors with `NotDivisible` when
    /// no quotient exists. Strips monomial content, long-divides in lex
    /// order against the single divisor, then verifies by multiplication.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        self.check_vars(divisor)?;
        if divisor.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.vars));
        }
        let cp = self.content_exponent();
        let cd = divisor.content_exponent();
        let p0 = self.shift(&cp.iter().map(|x| -x).collect::<Vec<_>>());
        let d0 = divisor.shift(&cd.iter().map(|x| -x).collect::<Vec<_>>());

        // lex-leading term of the (now nonnegative-exponent) divisor
        let (dl_e, dl_c) = d0.terms.iter().next_back().expect("nonzero divisor");
        let mut rem = p0.clone();
        let mut quot = Self::zero(self.vars);
        while !rem.is_zero() {
            let (rl_e, rl_c) = rem.terms.iter().next_back().expect("nonzero remainder");
            let qe: Vec<i64> = rl_e.iter().zip(dl_e).map(|(a, b)| a - b).collect();
            if qe.iter().any(|&x| x < 0) {
                return Err(Error::NotDivisible(format!(
                    "leading exponent {:?} not reachable from divisor leading exponent {:?}",
                    rl_e, dl_e
                )));
            }
            let (qc, r) = num_integer::div_rem(rl_c.clone(), dl_c.clone());
            if !r.is_zero() {
                return Err(Error::NotDivisible(format!(
                    "leading coefficient {} not divisible by {}",
                    rl_c, dl_c
                )));
            }
            let qterm = Self::monomial(self.vars, qe, qc);
            rem = rem.sub(&qterm.mul(&d0)?)?;
            quot = quot.add(&qterm)?;
        }
        // restore the stripped monomial content
        let shift: Vec<i64> = cp.iter().zip(&cd).map(|(a, b)| a - b).collect();
        let quot = quot.shift(&shift);
        debug_assert_eq!(quot.mul(divisor).unwrap(), *self);
        Ok(quot)
    }

    /// Shift by the unique candidate monomial and check the symmetry
    /// `bar(q) = (-1)^parity * q`. Returns the symmetrized polynomial and a
    /// flag recording that symmetry leaves the global sign undetermined
    /// (always `false` here, i.e. not pinned).
    pub fn symmetrize(&self, parity: usize) -> Result<(Self, bool)> {
        if self.is_zero() {
            return Err(Error::NotSymmetrizable("zero polynomial".into()));
        }
        let mut shift = vec![0i64; self.vars];
        for (i, slot) in shift.iter_mut().enumerate() {
            let (lo, hi) = self.exponent_range(i);
            let span = lo + hi;
            if span.rem_euclid(2) != 0 {
                return Err(Error::NotSymmetrizable(format!(
                    "variable {} has odd exponent span {} + {}",
                    i + 1,
                    lo,
                    hi
                )));
            }
            *slot = -span / 2;
        }
        let q = self.shift(&shift);
        let expected = if parity % 2 == 0 { q.clone() } else { q.neg() };
        if q.bar() != expected {
            return Err(Error::NotSymmetrizable(format!(
                "bar(q) != (-1)^{} q after centering",
                parity
            )));
        }
        Ok((q, false))
    }

    /// Canonical representative modulo units `+-t^a`: content stripped and
    /// the lex-greatest coefficient made positive. Used for "equal up to
    /// +-monomial" comparisons.
    pub fn unit_normal_form(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content_exponent();
        let p = self.shift(&c.iter().map(|x| -x).collect::<Vec<_>>());
        let lead = p.terms.values().next_back().expect("nonzero");
        if lead.is_negative() {
            p.neg()
        } else {
            p
        }
    }

    /// Equality up to multiplication by `+-t^a`.
    pub fn eq_up_to_unit(&self, other: &Self) -> bool {
        self.vars == other.vars && self.unit_normal_form() == other.unit_normal_form()
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const = e.iter().all(|&x| x == 0);
            if !abs.is_one() || is_const {
                write!(f, "{}", abs)?;
                if !is_const {
                    write!(f, "*")?;
                }
            }
            let mut first_var = true;
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                if !first_var {
                    write!(f, "*")?;
                }
                first_var = false;
                if x == 1 {
                    write!(f, "t{}", i + 1)?;
                } else {
                    write!(f, "t{}^{}", i + 1, x)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(vars: usize, i: usize) -> LaurentPolynomial {
        LaurentPolynomial::var(vars, i)
    }

    fn tp(vars: usize, i: usize, k: i64) -> LaurentPolynomial {
        let mut e = vec![0; vars];
        e[i] = k;
        LaurentPolynomial::monomial(vars, e, 1)
    }

    #[test]
    fn mul_difference_of_squares() {
        let a = t(1, 0).sub(&LaurentPolynomial::one(1)).unwrap();
        let b = t(1, 0).add(&LaurentPolynomial::one(1)).unwrap();
        let expect = tp(1, 0, 2).sub(&LaurentPolynomial::one(1)).unwrap();
        assert_eq!(a.mul(&b).unwrap(), expect);
    }

    #[test]
    fn mul_by_zero_annihilates() {
        let p = t(2, 0).add(&tp(2, 1, -3)).unwrap();
        assert!(p.mul(&LaurentPolynomial::zero(2)).unwrap().is_zero());
    }

    #[test]
    fn mul_two_by_two_expansion() {
        // (t1 - t1^-1)(t2 - t2^-1)
        let a = tp(2, 0, 1).sub(&tp(2, 0, -1)).unwrap();
        let b = tp(2, 1, 1).sub(&tp(2, 1, -1)).unwrap();
        let p = a.mul(&b).unwrap();
        let expect = LaurentPolynomial::from_terms(
            2,
            vec![
                (vec![1, 1], BigInt::from(1)),
                (vec![1, -1], BigInt::from(-1)),
                (vec![-1, 1], BigInt::from(-1)),
                (vec![-1, -1], BigInt::from(1)),
            ],
        );
        assert_eq!(p, expect);
    }

    #[test]
    fn mul_var_mismatch_errors() {
        let a = t(1, 0);
        let b = t(2, 0);
        assert!(matches!(a.mul(&b), Err(Error::VarMismatch(1, 2))));
    }

    fn sq_minus_one(vars: usize, i: usize) -> LaurentPolynomial {
        tp(vars, i, 2).sub(&LaurentPolynomial::one(vars)).unwrap()
    }

    #[test]
    fn exact_div_cancels_factor() {
        let p = sq_minus_one(2, 0).mul(&sq_minus_one(2, 1)).unwrap();
        let q = p.exact_div(&sq_minus_one(2, 0)).unwrap();
        assert_eq!(q, sq_minus_one(2, 1));
    }

    #[test]
    fn exact_div_zero_numerator() {
        let d = sq_minus_one(1, 0);
        assert!(LaurentPolynomial::zero(1).exact_div(&d).unwrap().is_zero());
    }

    #[test]
    fn exact_div_antisymmetric_product() {
        // prod (t_i - t_i^-1) / prod (t_i^2 - 1) = (t1 t2 t3)^-1
        let mut num = LaurentPolynomial::one(3);
        let mut den = LaurentPolynomial::one(3);
        for i in 0..3 {
            num = num.mul(&tp(3, i, 1).sub(&tp(3, i, -1)).unwrap()).unwrap();
            den = den.mul(&sq_minus_one(3, i)).unwrap();
        }
        let q = num.exact_div(&den).unwrap();
        assert_eq!(q, LaurentPolynomial::monomial(3, vec![-1, -1, -1], 1));
        // verify by multiplying back
        assert_eq!(q.mul(&den).unwrap(), num);
    }

    #[test]
    fn exact_div_detects_non_divisible() {
        let p = t(1, 0).add(&LaurentPolynomial::one(1)).unwrap();
        let d = t(1, 0).sub(&LaurentPolynomial::one(1)).unwrap();
        assert!(matches!(p.exact_div(&d), Err(Error::NotDivisible(_))));
    }

    #[test]
    fn bar_negates_exponents() {
        let p = LaurentPolynomial::monomial(2, vec![2, -1], 1);
        assert_eq!(p.bar(), LaurentPolynomial::monomial(2, vec![-2, 1], 1));
    }

    #[test]
    fn bar_is_involution() {
        let p = LaurentPolynomial::from_terms(
            2,
            vec![
                (vec![3, -2], BigInt::from(5)),
                (vec![0, 1], BigInt::from(-7)),
            ],
        );
        assert_eq!(p.bar().bar(), p);
    }

    #[test]
    fn bar_antisymmetric_pair() {
        let p = tp(1, 0, 1).sub(&tp(1, 0, -1)).unwrap();
        assert_eq!(p.bar(), p.neg());
    }

    #[test]
    fn square_subst_examples() {
        let p = t(1, 0).sub(&LaurentPolynomial::one(1)).unwrap();
        assert_eq!(p.square_subst(), sq_minus_one(1, 0));
        let c = LaurentPolynomial::constant(1, 9);
        assert_eq!(c.square_subst(), c);
        let m = LaurentPolynomial::monomial(2, vec![1, -1], 1);
        assert_eq!(m.square_subst(), LaurentPolynomial::monomial(2, vec![2, -2], 1));
    }

    #[test]
    fn symmetrize_product_of_spans() {
        // prod (t_i^2 - 1), parity 3 -> prod (t_i - t_i^-1)
        let mut p = LaurentPolynomial::one(3);
        let mut expect = LaurentPolynomial::one(3);
        for i in 0..3 {
            p = p.mul(&sq_minus_one(3, i)).unwrap();
            expect = expect
                .mul(&tp(3, i, 1).sub(&tp(3, i, -1)).unwrap())
                .unwrap();
        }
        let (q, pinned) = p.symmetrize(3).unwrap();
        assert_eq!(q, expect);
        assert!(!pinned);
    }

    #[test]
    fn symmetrize_constant_even_parity() {
        let (q, _) = LaurentPolynomial::one(2).symmetrize(2).unwrap();
        assert_eq!(q, LaurentPolynomial::one(2));
    }

    #[test]
    fn symmetrize_quartic() {
        let p = tp(1, 0, 4).sub(&LaurentPolynomial::one(1)).unwrap();
        let (q, _) = p.symmetrize(1).unwrap();
        let expect = tp(1, 0, 2).sub(&tp(1, 0, -2)).unwrap();
        assert_eq!(q, expect);
    }

    #[test]
    fn symmetrize_rejects_wrong_parity() {
        assert!(LaurentPolynomial::one(1).symmetrize(1).is_err());
    }

    #[test]
    fn unit_equality() {
        let p = t(1, 0).sub(&LaurentPolynomial::one(1)).unwrap();
        let q = p.shift(&[-3]).neg();
        assert!(p.eq_up_to_unit(&q));
        assert!(!p.eq_up_to_unit(&t(1, 0)));
    }
}
