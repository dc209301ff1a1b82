//! The surgery formula: from a framed, algebraically split link to the
//! torsion function `T` on Euler-structure classes and its group-ring
//! generating function `tau`.
//!
//! For a charge `k` on an `m`-component link with zero-framed index set
//! `J0` (with `|J0| >= 2`),
//!
//! ```text
//! T(e_k) = (-1)^(m+1) * sum over J0 <= J <= {1..m} of
//!          (-1)^|J \ J0| * prod_{j in J \ J0} sign(f_j) *
//!          sum { z_l(L^J) : l_j = -k_j (mod 2 f_j) for all j in J }
//! ```
//!
//! where the `z_l` are the coefficients of `nabla(L^J) / prod (t_j^2 - 1)`.
//! Zero framing makes the congruence an equality, so the support is finite
//! and candidate classes can be read off the `z` tables.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::algebra::{AbelianGroup, GroupRingElement, IntMatrix, LaurentPolynomial};
use crate::engine::charge::{canonical_charge, charge_parities, torsion_residues, validate_charge};
use crate::error::{Error, Result};
use crate::link::{conway_data, ConwayData, PDCode};

/// Link data feeding the engine: a diagram, or a precomputed sublink table
/// for links too large for the determinant path.
#[derive(Clone, Debug)]
pub enum LinkData {
    Diagram(PDCode),
    Conway(ConwayData),
}

#[derive(Clone, Debug)]
pub struct SurgeryInput {
    pub link: LinkData,
    pub framings: Vec<i64>,
}

/// Outcome of `validate`: the homology of the surgered manifold plus the
/// bookkeeping the formula needs.
pub struct Validated {
    pub group: Arc<AbelianGroup>,
    pub j0: Vec<usize>,
    pub num_components: usize,
    pub parities: Vec<i64>,
}

impl SurgeryInput {
    pub fn num_components(&self) -> usize {
        match &self.link {
            LinkData::Diagram(pd) => pd.num_components(),
            LinkData::Conway(cd) => cd.num_components(),
        }
    }

    /// Checks the algebraically split and `b_1 >= 2` preconditions and
    /// computes `H_1(M) = Z^m / Lambda Z^m` through the Smith form of the
    /// linking matrix.
    pub fn validate(&self) -> Result<Validated> {
        let m = self.num_components();
        if self.framings.len() != m {
            return Err(Error::InvalidInput(format!(
                "expected {} framings, got {}",
                m,
                self.framings.len()
            )));
        }
        let lk: Vec<Vec<i64>> = match &self.link {
            LinkData::Diagram(pd) => {
                let contiguous: BTreeSet<usize> = (1..=m).collect();
                if pd.components() != &contiguous {
                    return Err(Error::Topology(format!(
                        "surgery input components must be indexed 1..{}",
                        m
                    )));
                }
                pd.linking_matrix(&self.framings)?
            }
            LinkData::Conway(_) => {
                // a Conway table certifies the split form; the linking
                // matrix is the framing diagonal
                let mut d = vec![vec![0i64; m]; m];
                for (i, &f) in self.framings.iter().enumerate() {
                    d[i][i] = f;
                }
                d
            }
        };
        for i in 0..m {
            for j in i + 1..m {
                if lk[i][j] != 0 {
                    return Err(Error::NotAlgebraicallySplit(i + 1, j + 1, lk[i][j]));
                }
            }
        }
        let j0: Vec<usize> = (1..=m).filter(|&j| self.framings[j - 1] == 0).collect();
        if j0.len() < 2 {
            return Err(Error::BettiOutOfScope(j0.len()));
        }
        let relations = IntMatrix::from_i64(
            &(0..m)
                .map(|i| (0..m).map(|j| lk[i][j]).collect::<Vec<i64>>())
                .collect::<Vec<_>>(),
        );
        let group = Arc::new(AbelianGroup::from_presentation(&relations));
        debug_assert_eq!(group.rank(), j0.len());
        debug_assert_eq!(
            group.torsion_order(),
            self.framings
                .iter()
                .filter(|f| **f != 0)
                .map(|f| BigInt::from(f.abs()))
                .product::<BigInt>()
        );
        let parities = charge_parities(&lk);
        Ok(Validated {
            group,
            j0,
            num_components: m,
            parities,
        })
    }
}

/// The exact expansion `p / prod_{j in subset} (t_j^2 - 1)` as a map from
/// exponent tuples (aligned with the sorted subset) to integers. A failed
/// division signals a non-algebraically-split input or corrupted data.
pub fn z_expansion(
    p: &LaurentPolynomial,
    subset: &[usize],
) -> Result<BTreeMap<Vec<i64>, BigInt>> {
    let m = p.vars();
    let mut denom = LaurentPolynomial::one(m);
    for &j in subset {
        let mut sq = vec![0i64; m];
        sq[j - 1] = 2;
        let factor = LaurentPolynomial::monomial(m, sq, 1)
            .sub(&LaurentPolynomial::one(m))
            .expect("same vars");
        denom = denom.mul(&factor).expect("same vars");
    }
    let quotient = p.exact_div(&denom)?;
    let mut table = BTreeMap::new();
    for (e, c) in quotient.terms() {
        let key: Vec<i64> = subset.iter().map(|&j| e[j - 1]).collect();
        table.insert(key, c.clone());
    }
    Ok(table)
}

/// `z` coefficients of the stored sublink polynomial.
pub fn z_table(cd: &ConwayData, subset: &[usize]) -> Result<BTreeMap<Vec<i64>, BigInt>> {
    let entry = cd
        .get(subset)
        .ok_or_else(|| Error::InvalidInput(format!("missing sublink table entry {:?}", subset)))?;
    z_expansion(&entry.nabla, subset)
}

/// The computed torsion: the function `T` on canonical charge classes, and
/// `tau = sum_h T(h e_ref) h^-1` assembled at a reference class.
/// `char_class` is the duality witness `c(e_ref)` when it exists uniquely;
/// when present it satisfies `bar(tau) = char_class^-1 * tau` exactly.
#[derive(Clone, Debug)]
pub struct TorsionResult {
    pub group: Arc<AbelianGroup>,
    pub framings: Vec<i64>,
    pub tmap: BTreeMap<Vec<i64>, BigInt>,
    pub reference: Vec<i64>,
    pub tau: GroupRingElement,
    pub sign_pinned: bool,
    pub char_class: Option<crate::algebra::GroupElement>,
}

impl TorsionResult {
    pub fn betti(&self) -> usize {
        self.group.rank()
    }

    pub fn torsion_sum(&self) -> BigInt {
        self.tmap.values().sum()
    }
}

/// All data needed to evaluate the formula at arbitrary charges; kept
/// around so tests can probe well-definedness directly.
pub struct SurgeryComputation {
    pub validated: Validated,
    pub framings: Vec<i64>,
    subsets: Vec<(Vec<usize>, BTreeMap<Vec<i64>, BigInt>, BigInt)>,
    unpinned_nonzero: usize,
}

impl SurgeryComputation {
    pub fn prepare(input: &SurgeryInput) -> Result<Self> {
        let validated = input.validate()?;
        let m = validated.num_components;
        let cd = match &input.link {
            LinkData::Diagram(pd) => conway_data(pd, &input.framings)?,
            LinkData::Conway(cd) => {
                if cd.num_components() != m {
                    return Err(Error::InvalidInput(
                        "conway table component count mismatch".into(),
                    ));
                }
                cd.clone()
            }
        };
        let j0 = &validated.j0;
        let others: Vec<usize> = (1..=m).filter(|j| !j0.contains(j)).collect();
        let mut subsets = Vec::new();
        for mask in 0..(1u64 << others.len()) {
            let mut subset = j0.clone();
            let mut sign = BigInt::from(1);
            for (bit, &j) in others.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    subset.push(j);
                    // factor (-1) * sign(f_j) per framed index in J \ J0
                    let f = input.framings[j - 1];
                    sign = -sign * BigInt::from(f.signum());
                }
            }
            subset.sort_unstable();
            let table = z_table(&cd, &subset)?;
            subsets.push((subset, table, sign));
        }
        Ok(Self {
            validated,
            framings: input.framings.clone(),
            subsets,
            unpinned_nonzero: cd.unpinned_nonzero(),
        })
    }

    /// Direct evaluation of the surgery formula at a charge `k` (not
    /// necessarily canonical).
    pub fn eval_charge(&self, k: &[i64]) -> Result<BigInt> {
        let m = self.validated.num_components;
        validate_charge(k, &self.validated.parities)?;
        let mut total = BigInt::zero();
        for (subset, table, sign) in &self.subsets {
            let mut s = BigInt::zero();
            'entry: for (l, z) in table {
                for (pos, &j) in subset.iter().enumerate() {
                    let f = self.framings[j - 1];
                    let target = -k[j - 1];
                    if f == 0 {
                        if l[pos] != target {
                            continue 'entry;
                        }
                    } else if (l[pos] - target).rem_euclid(2 * f.abs()) != 0 {
                        continue 'entry;
                    }
                }
                s += z;
            }
            total += sign * s;
        }
        if (m + 1) % 2 == 1 {
            total = -total;
        }
        Ok(total)
    }

    /// Canonical classes that can possibly carry a nonzero value: those
    /// meeting `-l (mod 2f)` for some `l` in some `z` table, completed with
    /// every allowed residue in the framed directions outside `J`.
    pub fn candidate_classes(&self) -> Vec<Vec<i64>> {
        let m = self.validated.num_components;
        let parities = &self.validated.parities;
        let mut out: BTreeSet<Vec<i64>> = BTreeSet::new();
        for (subset, table, _) in &self.subsets {
            'entry: for l in table.keys() {
                let mut base = vec![0i64; m];
                let mut free_dirs = Vec::new();
                for j in 1..=m {
                    let f = self.framings[j - 1];
                    match subset.iter().position(|&x| x == j) {
                        Some(pos) => {
                            let kj = -l[pos];
                            if kj.rem_euclid(2) != parities[j - 1] {
                                continue 'entry; // not a charge; contributes nowhere
                            }
                            base[j - 1] = if f == 0 {
                                kj
                            } else {
                                kj.rem_euclid(2 * f.abs())
                            };
                        }
                        None => free_dirs.push(j),
                    }
                }
                // complete over all allowed residues outside J
                let mut stack = vec![base];
                for &j in &free_dirs {
                    let f = self.framings[j - 1];
                    let residues = torsion_residues(f, parities[j - 1]);
                    let mut next = Vec::with_capacity(stack.len() * residues.len());
                    for k in &stack {
                        for &r in &residues {
                            let mut k2 = k.clone();
                            k2[j - 1] = r;
                            next.push(k2);
                        }
                    }
                    stack = next;
                }
                out.extend(stack);
            }
        }
        out.into_iter().collect()
    }

    /// Runs the formula over every candidate class and assembles `tau`.
    /// When `b_1 = 3` the global sign is pinned by requiring the value sum
    /// to be nonnegative (it equals `|Tors H|` times a square); with at most
    /// one sign-ambiguous sublink polynomial that determines every sign.
    pub fn run(&self) -> Result<TorsionResult> {
        let group = self.validated.group.clone();
        let mut tmap: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        for k in self.candidate_classes() {
            let value = self.eval_charge(&k)?;
            if !value.is_zero() {
                // well-definedness: a representative shifted by 2f must agree
                let shifted: Vec<i64> = k
                    .iter()
                    .zip(&self.framings)
                    .map(|(&ki, &f)| ki + 2 * f)
                    .collect();
                debug_assert_eq!(self.eval_charge(&shifted).unwrap(), value);
                tmap.insert(k, value);
            }
        }

        let mut sign_pinned = self.unpinned_nonzero == 0;
        if self.validated.j0.len() == 3 {
            let sum: BigInt = tmap.values().sum();
            if sum.is_negative() {
                for v in tmap.values_mut() {
                    *v = -v.clone();
                }
            }
            if !sum.is_zero() && self.unpinned_nonzero <= 1 {
                sign_pinned = true;
            }
        }

        let m = self.validated.num_components;
        let reference = tmap
            .keys()
            .next()
            .cloned()
            .unwrap_or_else(|| canonical_charge(&vec![1; m], &self.framings));
        let tau = assemble_tau(&group, &self.framings, &tmap, &reference)?;
        let mut witnesses = tau.duality_witnesses();
        let char_class = if witnesses.len() == 1 {
            witnesses.pop()
        } else {
            None
        };
        Ok(TorsionResult {
            group,
            framings: self.framings.clone(),
            tmap,
            reference,
            tau,
            sign_pinned,
            char_class,
        })
    }
}

/// `tau(e_ref) = sum_h T(h e_ref) h^-1`, where `h = [v]` acts on charges by
/// `k -> k + 2v` and `v` is any integer lift of `h`.
pub fn assemble_tau(
    group: &Arc<AbelianGroup>,
    framings: &[i64],
    tmap: &BTreeMap<Vec<i64>, BigInt>,
    reference: &[i64],
) -> Result<GroupRingElement> {
    let mut terms = Vec::new();
    for (k, value) in tmap {
        let mut v = Vec::with_capacity(k.len());
        for ((&kc, &kr), &_f) in k.iter().zip(reference).zip(framings) {
            let diff = kc - kr;
            if diff.rem_euclid(2) != 0 {
                return Err(Error::LiftFailure);
            }
            v.push(diff / 2);
        }
        let h = group.project_i64(&v);
        terms.push((group.neg(&h), value.clone()));
    }
    Ok(GroupRingElement::from_integer_terms(group.clone(), terms))
}

/// End-to-end: validate, tabulate, evaluate.
pub fn torsion_function(input: &SurgeryInput) -> Result<TorsionResult> {
    SurgeryComputation::prepare(input)?.run()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::link::braid_closure;
    use num_traits::One;

    fn borromean(framings: &[i64]) -> SurgeryInput {
        SurgeryInput {
            link: LinkData::Diagram(braid_closure(3, &[1, -2, 1, -2, 1, -2]).unwrap()),
            framings: framings.to_vec(),
        }
    }

    #[test]
    fn validate_three_torus_presentation() {
        let v = borromean(&[0, 0, 0]).validate().unwrap();
        assert_eq!(v.group.rank(), 3);
        assert!(v.group.invariant_factors().is_empty());
        assert_eq!(v.j0, vec![1, 2, 3]);
    }

    #[test]
    fn validate_with_torsion() {
        let v = borromean(&[0, 0, 5]).validate().unwrap();
        assert_eq!(v.group.rank(), 2);
        assert_eq!(v.group.invariant_factors(), &[BigInt::from(5)]);
    }

    #[test]
    fn hopf_is_not_algebraically_split() {
        let input = SurgeryInput {
            link: LinkData::Diagram(braid_closure(2, &[1, 1]).unwrap()),
            framings: vec![3, 7],
        };
        assert!(matches!(
            input.validate(),
            Err(Error::NotAlgebraicallySplit(1, 2, 1))
        ));
    }

    #[test]
    fn z_table_of_borromean_is_single_odd_point() {
        let pd = braid_closure(3, &[1, -2, 1, -2, 1, -2]).unwrap();
        let cd = conway_data(&pd, &[0, 0, 0]).unwrap();
        let table = z_table(&cd, &[1, 2, 3]).unwrap();
        assert_eq!(table.len(), 1);
        let (l, z) = table.iter().next().unwrap();
        assert_eq!(l, &vec![-1, -1, -1]);
        assert_eq!(z.abs(), BigInt::one());
    }

    #[test]
    fn z_expansion_edge_cases() {
        // zero polynomial: empty table
        assert!(z_expansion(&LaurentPolynomial::zero(2), &[1, 2])
            .unwrap()
            .is_empty());
        // p = prod (t_j^2 - 1): single entry at l = 0 with z = 1
        let mut prod = LaurentPolynomial::one(2);
        for i in 0..2 {
            let mut e = vec![0i64; 2];
            e[i] = 2;
            prod = prod
                .mul(
                    &LaurentPolynomial::monomial(2, e, 1)
                        .sub(&LaurentPolynomial::one(2))
                        .unwrap(),
                )
                .unwrap();
        }
        let table = z_expansion(&prod, &[1, 2]).unwrap();
        assert_eq!(table.len(), 1);
        assert_eq!(table[&vec![0, 0]], BigInt::one());
        // non-divisible input is a hard error
        assert!(z_expansion(&LaurentPolynomial::one(2), &[1, 2]).is_err());
        // a missing table subset is reported, not silently empty
        let cd = ConwayData::new(2);
        assert!(z_table(&cd, &[1, 2]).is_err());
    }

    #[test]
    fn three_torus_torsion_single_class() {
        let result = torsion_function(&borromean(&[0, 0, 0])).unwrap();
        assert_eq!(result.tmap.len(), 1);
        let (k, v) = result.tmap.iter().next().unwrap();
        assert_eq!(k, &vec![1, 1, 1]);
        assert_eq!(*v, BigInt::one()); // +1 after b1 = 3 pinning
        assert!(result.sign_pinned);
        // tau = 1
        assert_eq!(result.tau, GroupRingElement::one(result.group.clone()));
    }

    #[test]
    fn borromean_five_framing_support() {
        let result = torsion_function(&borromean(&[0, 0, 5])).unwrap();
        assert_eq!(result.betti(), 2);
        assert_eq!(result.tmap.len(), 1);
        let (k, v) = result.tmap.iter().next().unwrap();
        assert_eq!(k[0], 1);
        assert_eq!(k[1], 1);
        assert_eq!(k[2].rem_euclid(10), 1);
        assert_eq!(v.abs(), BigInt::one());
        assert!(!result.sign_pinned); // b1 = 2: no pinning rule applies
    }

    #[test]
    fn unlink_torsion_vanishes() {
        let input = SurgeryInput {
            link: LinkData::Diagram(braid_closure(3, &[]).unwrap()),
            framings: vec![0, 0, 0],
        };
        let result = torsion_function(&input).unwrap();
        assert!(result.tmap.is_empty());
        assert!(result.tau.is_zero());
        assert!(result.sign_pinned); // nothing ambiguous contributed
    }

    #[test]
    fn charge_class_well_definedness() {
        let comp = SurgeryComputation::prepare(&borromean(&[0, 0, 5])).unwrap();
        let k = [1i64, 1, 1];
        let base = comp.eval_charge(&k).unwrap();
        for w in [[0i64, 0, 1], [0, 0, -2], [0, 0, 3]] {
            let shifted: Vec<i64> = k
                .iter()
                .zip(&comp.framings)
                .zip(w)
                .map(|((&ki, &f), wi)| ki + 2 * f * wi)
                .collect();
            assert_eq!(comp.eval_charge(&shifted).unwrap(), base);
        }
    }

    #[test]
    fn tau_is_equivariant_under_reference_shift() {
        let result = torsion_function(&borromean(&[0, 0, 5])).unwrap();
        // shift the reference by h = [v]; tau transforms by translation
        let v = [1i64, -2, 3];
        let shifted_ref: Vec<i64> = result
            .reference
            .iter()
            .zip(v)
            .map(|(&k, vi)| k + 2 * vi)
            .collect();
        let shifted_ref = canonical_charge(&shifted_ref, &result.framings);
        let tau2 =
            assemble_tau(&result.group, &result.framings, &result.tmap, &shifted_ref).unwrap();
        let h = result.group.project_i64(&v);
        assert_eq!(tau2, result.tau.translate(&h));
    }

    #[test]
    fn bad_parity_candidate_is_rejected() {
        let comp = SurgeryComputation::prepare(&borromean(&[0, 0, 0])).unwrap();
        assert!(matches!(
            comp.eval_charge(&[2, 1, 1]),
            Err(Error::BadParity(1))
        ));
    }
}
