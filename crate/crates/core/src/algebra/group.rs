//! Finitely generated abelian groups presented by integer matrices.
//!
//! `H = Z^m / A Z^m` is stored as a free rank plus a divisibility chain of
//! invariant factors, together with the projection `Z^m -> H` that sends
//! each meridian generator to its class. The projection comes out of the
//! Smith decomposition `U A V = D`: the map `x -> U x` identifies
//! `Z^m / A Z^m` with `Z^m / D Z^m`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::{smith_normal_form, IntMatrix};

/// An element of an `AbelianGroup`, in canonical coordinates: the free part
/// is an integer vector of length `rank`, the torsion part is reduced into
/// `[0, d_i)` factor by factor.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GroupElement {
    pub free: Vec<BigInt>,
    pub tors: Vec<BigInt>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AbelianGroup {
    ambient: usize,
    rank: usize,
    factors: Vec<BigInt>,
    proj_free: Vec<Vec<BigInt>>,
    proj_tors: Vec<Vec<BigInt>>,
}

impl AbelianGroup {
    /// Quotient of `Z^m` by the column span of `relations` (an `m x m`
    /// integer matrix).
    pub fn from_presentation(relations: &IntMatrix) -> Self {
        let m = relations.nrows();
        assert_eq!(m, relations.ncols());
        let s = smith_normal_form(relations);
        let mut rank = 0;
        let mut factors = Vec::new();
        let mut proj_free = Vec::new();
        let mut proj_tors = Vec::new();
        for i in 0..m {
            let d = s.d[(i, i)].clone();
            if d.is_zero() {
                rank += 1;
                proj_free.push(s.u.row(i));
            } else if d.is_one() {
                // trivial coordinate, dropped
            } else {
                factors.push(d);
                proj_tors.push(s.u.row(i));
            }
        }
        Self {
            ambient: m,
            rank,
            factors,
            proj_free,
            proj_tors,
        }
    }

    /// Direct construction `Z^rank + Z/d_1 + ...` with the meridian
    /// projection being the identity on the obvious generators.
    pub fn free_with_torsion(rank: usize, factors: Vec<BigInt>) -> Self {
        assert!(factors.iter().all(|d| *d >= BigInt::from(2)));
        let ambient = rank + factors.len();
        let unit = |i: usize| {
            let mut v = vec![BigInt::zero(); ambient];
            v[i] = BigInt::one();
            v
        };
        Self {
            ambient,
            rank,
            proj_free: (0..rank).map(unit).collect(),
            proj_tors: (0..factors.len()).map(|i| unit(rank + i)).collect(),
            factors,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn torsion_order(&self) -> BigInt {
        self.factors.iter().product()
    }

    pub fn is_trivial_torsion(&self) -> bool {
        self.factors.is_empty()
    }

    /// Image of an ambient integer vector under the meridian projection.
    pub fn project(&self, v: &[BigInt]) -> GroupElement {
        assert_eq!(v.len(), self.ambient);
        let dot = |row: &Vec<BigInt>| -> BigInt { row.iter().zip(v).map(|(a, b)| a * b).sum() };
        let free = self.proj_free.iter().map(dot).collect();
        let tors = self
            .proj_tors
            .iter()
            .zip(&self.factors)
            .map(|(row, d)| dot(row).mod_floor(d))
            .collect();
        GroupElement { free, tors }
    }

    pub fn project_i64(&self, v: &[i64]) -> GroupElement {
        let big: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        self.project(&big)
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            free: vec![BigInt::zero(); self.rank],
            tors: vec![BigInt::zero(); self.factors.len()],
        }
    }

    pub fn element(&self, free: Vec<BigInt>, tors: Vec<BigInt>) -> GroupElement {
        assert_eq!(free.len(), self.rank);
        assert_eq!(tors.len(), self.factors.len());
        GroupElement {
            free,
            tors: tors
                .into_iter()
                .zip(&self.factors)
                .map(|(t, d)| t.mod_floor(d))
                .collect(),
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement {
            free: a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect(),
            tors: a
                .tors
                .iter()
                .zip(&b.tors)
                .zip(&self.factors)
                .map(|((x, y), d)| (x + y).mod_floor(d))
                .collect(),
        }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement {
            free: a.free.iter().map(|x| -x).collect(),
            tors: a
                .tors
                .iter()
                .zip(&self.factors)
                .map(|(x, d)| (-x).mod_floor(d))
                .collect(),
        }
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    /// `2h`, the square of `h` in multiplicative notation.
    pub fn double(&self, a: &GroupElement) -> GroupElement {
        self.add(a, a)
    }

    /// `k * h` in additive notation (the `k`-th power of `h`).
    pub fn scalar_mul(&self, a: &GroupElement, k: &BigInt) -> GroupElement {
        GroupElement {
            free: a.free.iter().map(|x| x * k).collect(),
            tors: a
                .tors
                .iter()
                .zip(&self.factors)
                .map(|(x, d)| (x * k).mod_floor(d))
                .collect(),
        }
    }

    pub fn is_identity(&self, a: &GroupElement) -> bool {
        a.free.iter().all(Zero::is_zero) && a.tors.iter().all(Zero::is_zero)
    }

    /// The quotient `H / Tors H`, a free group of the same rank; elements
    /// push forward by forgetting torsion coordinates.
    pub fn free_quotient(&self) -> AbelianGroup {
        AbelianGroup::free_with_torsion(self.rank, Vec::new())
    }
}
