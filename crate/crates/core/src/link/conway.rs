//! Symmetrized Conway forms of a link and its sublinks.
//!
//! For an algebraically split surgery presentation, the surgery formula
//! consumes the coefficients of `nabla(L^J) / prod_{j in J} (t_j^2 - 1)`
//! for every sublink `L^J` whose index set contains all zero-framed
//! components. This module computes that table from a single diagram by
//! component deletion. The global sign of each symmetrized polynomial is
//! not determined by symmetry; the ambiguity is carried as a flag and
//! resolved, where possible, by positivity downstream.

use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::LaurentPolynomial;
use crate::error::{Error, Result};
use crate::link::fox::alexander_multi_in_vars;
use crate::link::pd::PDCode;

/// `Delta -> nabla`: substitute squares, then center so that
/// `bar(nabla) = (-1)^parity nabla`. Returns the normalized polynomial and
/// whether its global sign is pinned (only the zero polynomial is).
pub fn conway_normalize(delta: &LaurentPolynomial, parity: usize) -> Result<(LaurentPolynomial, bool)> {
    if delta.is_zero() {
        return Ok((delta.clone(), true));
    }
    let (nabla, _) = delta.square_subst().symmetrize(parity)?;
    Ok((nabla, false))
}

/// One sublink's symmetrized polynomial. `sign_pinned` is true only when
/// the polynomial is zero (nothing to pin).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SublinkConway {
    pub nabla: LaurentPolynomial,
    pub sign_pinned: bool,
}

/// Conway polynomials of every sublink `L^J` with `J` containing the
/// zero-framed index set, in the full set of link variables (variable
/// `j - 1` for component `j`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConwayData {
    num_components: usize,
    table: BTreeMap<Vec<usize>, SublinkConway>,
}

impl ConwayData {
    pub fn new(num_components: usize) -> Self {
        Self {
            num_components,
            table: BTreeMap::new(),
        }
    }

    pub fn num_components(&self) -> usize {
        self.num_components
    }

    pub fn insert(&mut self, subset: Vec<usize>, entry: SublinkConway) -> Result<()> {
        if entry.nabla.vars() != self.num_components {
            return Err(Error::VarMismatch(entry.nabla.vars(), self.num_components));
        }
        for &j in &subset {
            if j == 0 || j > self.num_components {
                return Err(Error::InvalidInput(format!(
                    "sublink index {} out of range 1..{}",
                    j, self.num_components
                )));
            }
        }
        // only variables of the subset may appear
        for (e, _) in entry.nabla.terms() {
            for (v, &x) in e.iter().enumerate() {
                if x != 0 && !subset.contains(&(v + 1)) {
                    return Err(Error::InvalidInput(format!(
                        "sublink {:?} polynomial uses variable t{}",
                        subset,
                        v + 1
                    )));
                }
            }
        }
        // symmetry gate
        if !entry.nabla.is_zero() {
            let expect = if subset.len() % 2 == 0 {
                entry.nabla.clone()
            } else {
                entry.nabla.neg()
            };
            if entry.nabla.bar() != expect {
                return Err(Error::NotSymmetrizable(format!(
                    "sublink {:?} polynomial is not (-1)^{} symmetric",
                    subset,
                    subset.len()
                )));
            }
        }
        self.table.insert(subset, entry);
        Ok(())
    }

    pub fn get(&self, subset: &[usize]) -> Option<&SublinkConway> {
        self.table.get(subset)
    }

    pub fn subsets(&self) -> impl Iterator<Item = (&Vec<usize>, &SublinkConway)> {
        self.table.iter()
    }

    /// Any stored polynomial whose sign is meaningful but not pinned?
    pub fn unpinned_nonzero(&self) -> usize {
        self.table
            .values()
            .filter(|e| !e.nabla.is_zero() && !e.sign_pinned)
            .count()
    }
}

/// Builds the full sublink table from a diagram.
///
/// Requires the diagram's components to be indexed contiguously `1..m`,
/// pairwise linking numbers to vanish, and at least two zero framings.
pub fn conway_data(pd: &PDCode, framings: &[i64]) -> Result<ConwayData> {
    let m = pd.num_components();
    let contiguous: BTreeSet<usize> = (1..=m).collect();
    if pd.components() != &contiguous {
        return Err(Error::Topology(format!(
            "components must be indexed 1..{}",
            m
        )));
    }
    let lk = pd.linking_matrix(framings)?;
    for i in 0..m {
        for j in i + 1..m {
            if lk[i][j] != 0 {
                return Err(Error::NotAlgebraicallySplit(i + 1, j + 1, lk[i][j]));
            }
        }
    }
    let j0: Vec<usize> = (1..=m).filter(|&j| framings[j - 1] == 0).collect();
    if j0.len() < 2 {
        return Err(Error::BettiOutOfScope(j0.len()));
    }

    let var_of_comp: BTreeMap<usize, usize> = (1..=m).map(|c| (c, c - 1)).collect();
    let others: Vec<usize> = (1..=m).filter(|j| !j0.contains(j)).collect();
    let mut data = ConwayData::new(m);
    for mask in 0..(1u32 << others.len()) {
        let mut subset = j0.clone();
        for (bit, &j) in others.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                subset.push(j);
            }
        }
        subset.sort_unstable();
        let remove: BTreeSet<usize> = (1..=m).filter(|j| !subset.contains(j)).collect();
        let sub_pd = pd.delete_components(&remove)?;
        let delta = alexander_multi_in_vars(&sub_pd, m, &var_of_comp)?;
        let (nabla, sign_pinned) = conway_normalize(&delta, subset.len())?;
        data.insert(subset, SublinkConway { nabla, sign_pinned })?;
    }
    Ok(data)
}
