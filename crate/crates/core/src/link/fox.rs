//! Multivariable Alexander polynomials by Fox calculus.
//!
//! From a diagram we take the Wirtinger presentation (one generator per
//! arc, one relation per crossing), apply free derivatives, abelianize
//! each generator to the variable of its component, delete one generator
//! column, and take the determinant of the resulting minor by fraction-free
//! elimination. For a link of two or more components the minor carries an
//! extra factor `t_j - 1` for the deleted generator's component; for a knot
//! the minor is the polynomial itself. Everything is defined up to a unit
//! `+-t^a`, which is all the downstream normalization needs.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use super::pd::{Dsu, PDCode};
use crate::algebra::LaurentPolynomial;
use crate::error::{Error, Result};

/// Determinant over the Laurent ring by Bareiss elimination, up to a unit.
/// Row contents are stripped once up front; every interior division is
/// exact by the Bareiss identity and failure is a hard error.
pub fn laurent_det(mut m: Vec<Vec<LaurentPolynomial>>, vars: usize) -> Result<LaurentPolynomial> {
    let n = m.len();
    if n == 0 {
        return Ok(LaurentPolynomial::one(vars));
    }
    assert!(m.iter().all(|row| row.len() == n));

    for row in m.iter_mut() {
        if row.iter().all(LaurentPolynomial::is_zero) {
            return Ok(LaurentPolynomial::zero(vars));
        }
        let mut content = vec![i64::MAX; vars];
        for p in row.iter().filter(|p| !p.is_zero()) {
            for (v, slot) in content.iter_mut().enumerate() {
                *slot = (*slot).min(p.exponent_range(v).0);
            }
        }
        let shift: Vec<i64> = content.iter().map(|&c| -c).collect();
        for p in row.iter_mut() {
            *p = p.shift(&shift);
        }
    }

    let mut prev = LaurentPolynomial::one(vars);
    for k in 0..n - 1 {
        // fewest-terms pivot in the trailing block
        let mut pivot: Option<(usize, usize, usize)> = None;
        for i in k..n {
            for j in k..n {
                let t = m[i][j].num_terms();
                if t == 0 {
                    continue;
                }
                if pivot.map_or(true, |(_, _, best)| t < best) {
                    pivot = Some((i, j, t));
                }
            }
        }
        let Some((pi, pj, _)) = pivot else {
            return Ok(LaurentPolynomial::zero(vars));
        };
        m.swap(k, pi);
        for row in m.iter_mut() {
            row.swap(k, pj);
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j]
                    .mul(&m[k][k])?
                    .sub(&m[i][k].mul(&m[k][j])?)?;
                m[i][j] = num.exact_div(&prev)?;
            }
            m[i][k] = LaurentPolynomial::zero(vars);
        }
        prev = m[k][k].clone();
    }
    Ok(m[n - 1][n - 1].clone())
}

/// Wirtinger arcs: diagram arcs fused across the crossings they pass over.
/// Returns the map edge -> arc representative and the sorted generator list.
fn wirtinger_arcs(pd: &PDCode) -> (BTreeMap<u32, u32>, Vec<u32>) {
    let mut dsu = Dsu::default();
    let mut edges = std::collections::BTreeSet::new();
    for c in pd.crossings() {
        for e in [c.under_in, c.over_in, c.under_out, c.over_out] {
            edges.insert(e);
        }
        dsu.union(c.over_in, c.over_out);
    }
    let map: BTreeMap<u32, u32> = edges.iter().map(|&e| (e, dsu.find(e))).collect();
    let mut gens: Vec<u32> = map.values().copied().collect();
    gens.sort_unstable();
    gens.dedup();
    (map, gens)
}

/// Abelianized Fox derivative row of the Wirtinger relator
/// `o^eps a o^-eps c^-1` with respect to every generator.
fn fox_row(
    word: &[(u32, i32)],
    gens: &[u32],
    var_of_gen: &BTreeMap<u32, usize>,
    vars: usize,
) -> Vec<LaurentPolynomial> {
    let mut row: BTreeMap<u32, LaurentPolynomial> = BTreeMap::new();
    let mut u = vec![0i64; vars];
    for &(g, e) in word {
        let v = var_of_gen[&g];
        if e > 0 {
            let mono = LaurentPolynomial::monomial(vars, u.clone(), BigInt::one());
            row.entry(g)
                .and_modify(|p| *p = p.add(&mono).expect("same vars"))
                .or_insert(mono);
            u[v] += 1;
        } else {
            u[v] -= 1;
            let mono = LaurentPolynomial::monomial(vars, u.clone(), -BigInt::one());
            row.entry(g)
                .and_modify(|p| *p = p.add(&mono).expect("same vars"))
                .or_insert(mono);
        }
    }
    gens.iter()
        .map(|g| row.get(g).cloned().unwrap_or_else(|| LaurentPolynomial::zero(vars)))
        .collect()
}

/// The multivariable Alexander polynomial of the diagram, up to `+-t^a`,
/// as a polynomial in `vars` variables where component `c` uses variable
/// `var_of_comp[c]`. Split diagrams short-circuit to zero.
pub fn alexander_multi_in_vars(
    pd: &PDCode,
    vars: usize,
    var_of_comp: &BTreeMap<usize, usize>,
) -> Result<LaurentPolynomial> {
    let m = pd.num_components();
    if m == 0 {
        return Err(Error::Topology("diagram has no components".into()));
    }
    if m >= 2 && pd.is_split_diagram() {
        return Ok(LaurentPolynomial::zero(vars));
    }
    if pd.crossings().is_empty() {
        // connected and crossingless: a single unknot
        return Ok(LaurentPolynomial::one(vars));
    }

    let (arc_of, gens) = wirtinger_arcs(pd);
    let n = pd.crossings().len();
    let excess = gens.len() as i64 - n as i64;
    if excess >= 2 {
        // deficiency >= 2: the first elementary ideal vanishes
        return Ok(LaurentPolynomial::zero(vars));
    }

    let var_of_gen: BTreeMap<u32, usize> = gens
        .iter()
        .map(|&g| (g, var_of_comp[&pd.component_of_edge(g)]))
        .collect();

    let mut rows = Vec::with_capacity(n);
    for c in pd.crossings() {
        let o = arc_of[&c.over_in];
        let a = arc_of[&c.under_in];
        let g = arc_of[&c.under_out];
        let e = c.sign as i32;
        let word = [(o, e), (a, 1), (o, -e), (g, -1)];
        rows.push(fox_row(&word, &gens, &var_of_gen, vars));
    }

    let minor_for = |deleted: u32| -> Result<LaurentPolynomial> {
        let keep: Vec<usize> = (0..gens.len()).filter(|&i| gens[i] != deleted).collect();
        let nrows = if excess == 1 { n } else { n - 1 };
        let sub: Vec<Vec<LaurentPolynomial>> = rows[..nrows]
            .iter()
            .map(|r| keep.iter().map(|&i| r[i].clone()).collect())
            .collect();
        let det = laurent_det(sub, vars)?;
        if m >= 2 {
            let tj = var_of_gen[&deleted];
            let factor = LaurentPolynomial::var(vars, tj)
                .sub(&LaurentPolynomial::one(vars))
                .expect("same vars");
            det.exact_div(&factor)
        } else {
            Ok(det)
        }
    };

    let first = gens[0];
    let delta = minor_for(first)?;

    // cross-check against a second deleted column, preferably on another
    // component; the two quotients must agree up to a unit
    let second = gens
        .iter()
        .find(|&&g| var_of_gen[&g] != var_of_gen[&first])
        .or_else(|| gens.iter().find(|&&g| g != first))
        .copied();
    if let Some(second) = second {
        let other = minor_for(second)?;
        if !delta.eq_up_to_unit(&other) {
            return Err(Error::NonUnitMismatch);
        }
    }
    Ok(delta)
}

/// Alexander polynomial with one variable per component, components taken
/// in ascending index order.
pub fn alexander_multi(pd: &PDCode) -> Result<LaurentPolynomial> {
    let var_of_comp: BTreeMap<usize, usize> = pd
        .components()
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, i))
        .collect();
    alexander_multi_in_vars(pd, var_of_comp.len(), &var_of_comp)
}
