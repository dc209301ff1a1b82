//! Planar diagram codes for oriented links.
//!
//! A raw PD code lists each crossing as four arc labels counterclockwise,
//! starting from the incoming under-strand. Orientations of over-strands
//! are not explicit in that encoding; they are recovered by propagating the
//! two local constraints (each arc has one head and one tail; at a crossing
//! exactly one of the two over slots is incoming). Components that never
//! pass under cannot be oriented that way; for those the direction is
//! chosen so that arc labels ascend, which matches the usual sequential
//! labeling convention.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

/// One crossing with orientations resolved.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Crossing {
    pub under_in: u32,
    pub over_in: u32,
    pub under_out: u32,
    pub over_out: u32,
    pub sign: i8,
}

impl Crossing {
    /// Raw counterclockwise tuple starting at the incoming under-strand.
    pub fn to_tuple(&self) -> [u32; 4] {
        if self.sign > 0 {
            [self.under_in, self.over_in, self.under_out, self.over_out]
        } else {
            [self.under_in, self.over_out, self.under_out, self.over_in]
        }
    }
}

/// An oriented link diagram with components indexed by positive integers.
/// Component indices survive sublink deletion unchanged, so they are not
/// necessarily contiguous.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PDCode {
    crossings: Vec<Crossing>,
    component_of: BTreeMap<u32, usize>,
    components: BTreeSet<usize>,
    free_components: BTreeSet<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Flow {
    In,
    Out,
}

impl PDCode {
    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn components(&self) -> &BTreeSet<usize> {
        &self.components
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn free_components(&self) -> &BTreeSet<usize> {
        &self.free_components
    }

    pub fn component_of_edge(&self, edge: u32) -> usize {
        self.component_of[&edge]
    }

    /// Builds and validates a diagram from raw crossing tuples.
    ///
    /// `free_loops` adds that many crossingless unknot components, indexed
    /// after the diagram components. `relabel` optionally renames component
    /// indices (a bijection on the inferred ones).
    pub fn from_tuples(
        tuples: &[[i64; 4]],
        free_loops: usize,
        relabel: Option<&BTreeMap<u32, usize>>,
    ) -> Result<Self> {
        let mut raw = Vec::with_capacity(tuples.len());
        for t in tuples {
            let mut q = [0u32; 4];
            for (i, &x) in t.iter().enumerate() {
                if x <= 0 || x > u32::MAX as i64 {
                    return Err(Error::Topology(format!(
                        "arc labels must be positive integers, got {}",
                        x
                    )));
                }
                q[i] = x as u32;
            }
            raw.push(q);
        }
        let crossings = resolve_orientations(&raw)?;
        Self::from_resolved(crossings, free_loops, relabel)
    }

    /// Assembles a diagram from already-resolved crossings (used by the
    /// braid closure builder and by component deletion, which both know
    /// the orientation data exactly and must not re-infer it).
    pub(crate) fn from_resolved(
        crossings: Vec<Crossing>,
        free_loops: usize,
        relabel: Option<&BTreeMap<u32, usize>>,
    ) -> Result<Self> {
        let cycles = edge_cycles(&crossings)?;
        let mut component_of = BTreeMap::new();
        for (idx, cycle) in cycles.iter().enumerate() {
            for &e in cycle {
                component_of.insert(e, idx + 1);
            }
        }
        let m = cycles.len();
        let mut components: BTreeSet<usize> = (1..=m + free_loops).collect();
        let free_components: BTreeSet<usize> = (m + 1..=m + free_loops).collect();

        if let Some(map) = relabel {
            let mut renamed = BTreeMap::new();
            let mut seen = BTreeMap::new();
            for (&e, &old) in &component_of {
                let Some(&new) = map.get(&e) else {
                    return Err(Error::Topology(format!(
                        "component map is missing arc {}",
                        e
                    )));
                };
                if let Some(&prev) = seen.get(&old) {
                    if prev != new {
                        return Err(Error::Topology(format!(
                            "component map splits an inferred component at arc {}",
                            e
                        )));
                    }
                } else if seen.values().any(|&v| v == new) {
                    return Err(Error::Topology(format!(
                        "component map merges distinct components at arc {}",
                        e
                    )));
                } else {
                    seen.insert(old, new);
                }
                renamed.insert(e, new);
            }
            let targets: BTreeSet<usize> = seen.values().copied().collect();
            let expect: BTreeSet<usize> = (1..=m).collect();
            if targets != expect && free_loops == 0 {
                return Err(Error::Topology(format!(
                    "component indices must be contiguous 1..{}",
                    m
                )));
            }
            if free_loops > 0 && targets.iter().any(|t| *t > m + free_loops) {
                return Err(Error::Topology("component index out of range".into()));
            }
            component_of = renamed;
            components = component_of
                .values()
                .copied()
                .chain(free_components.iter().copied())
                .collect();
        }

        Ok(Self {
            crossings,
            component_of,
            components,
            free_components,
        })
    }

    pub fn component_of_crossing(&self, c: &Crossing) -> (usize, usize) {
        (
            self.component_of[&c.under_in],
            self.component_of[&c.over_in],
        )
    }

    /// Symmetric linking matrix: off-diagonal entries are half the signed
    /// inter-component crossing counts, the diagonal carries the framings.
    /// Component order follows ascending component index.
    pub fn linking_matrix(&self, framings: &[i64]) -> Result<Vec<Vec<i64>>> {
        let idx: BTreeMap<usize, usize> = self
            .components
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, i))
            .collect();
        let m = idx.len();
        if framings.len() != m {
            return Err(Error::InvalidInput(format!(
                "expected {} framings, got {}",
                m,
                framings.len()
            )));
        }
        let mut sums = vec![vec![0i64; m]; m];
        for c in &self.crossings {
            let (cu, co) = self.component_of_crossing(c);
            if cu != co {
                let (i, j) = (idx[&cu], idx[&co]);
                sums[i][j] += c.sign as i64;
                sums[j][i] += c.sign as i64;
            }
        }
        let mut lk = vec![vec![0i64; m]; m];
        for i in 0..m {
            for j in 0..m {
                if i == j {
                    lk[i][i] = framings[i];
                } else {
                    if sums[i][j] % 2 != 0 {
                        let ci = *self.components.iter().nth(i).unwrap();
                        let cj = *self.components.iter().nth(j).unwrap();
                        return Err(Error::OddCrossingParity(ci, cj));
                    }
                    lk[i][j] = sums[i][j] / 2;
                }
            }
        }
        Ok(lk)
    }

    /// Deletes the named components. Crossings internal to removed
    /// components vanish; where a removed strand crossed a surviving one,
    /// the surviving arc halves are fused. Surviving indices are preserved.
    pub fn delete_components(&self, remove: &BTreeSet<usize>) -> Result<Self> {
        for r in remove {
            if !self.components.contains(r) {
                return Err(Error::Topology(format!("no component {}", r)));
            }
        }
        if remove.len() == self.components.len() {
            return Err(Error::EmptyResult);
        }
        if remove.is_empty() {
            return Ok(self.clone());
        }

        let mut fuse = Dsu::default();
        let mut kept = Vec::new();
        for c in &self.crossings {
            let (cu, co) = self.component_of_crossing(c);
            match (remove.contains(&cu), remove.contains(&co)) {
                (false, false) => kept.push(*c),
                (true, true) => {}
                (false, true) => fuse.union(c.under_in, c.under_out),
                (true, false) => fuse.union(c.over_in, c.over_out),
            }
        }
        let mut rewrite = |e: u32| fuse.find(e);
        let crossings: Vec<Crossing> = kept
            .into_iter()
            .map(|c| Crossing {
                under_in: rewrite(c.under_in),
                over_in: rewrite(c.over_in),
                under_out: rewrite(c.under_out),
                over_out: rewrite(c.over_out),
                sign: c.sign,
            })
            .collect();

        let mut component_of = BTreeMap::new();
        for c in &crossings {
            for e in [c.under_in, c.over_in, c.under_out, c.over_out] {
                component_of.insert(e, self.component_of[&e]);
            }
        }
        let survivors: BTreeSet<usize> = self
            .components
            .iter()
            .filter(|c| !remove.contains(c))
            .copied()
            .collect();
        let with_crossings: BTreeSet<usize> = component_of.values().copied().collect();
        let free_components: BTreeSet<usize> = survivors
            .iter()
            .filter(|c| !with_crossings.contains(c))
            .copied()
            .collect();

        Ok(Self {
            crossings,
            component_of,
            components: survivors,
            free_components,
        })
    }

    /// True when the diagram is disconnected as a 4-valent graph (including
    /// any crossingless components). Split diagrams have vanishing
    /// multivariable Alexander polynomial.
    pub fn is_split_diagram(&self) -> bool {
        if self.components.len() <= 1 {
            return false;
        }
        // connectivity of the "components sharing a crossing" graph; free
        // loops are isolated vertices
        let mut dsu = Dsu::default();
        for c in &self.crossings {
            let (cu, co) = self.component_of_crossing(c);
            dsu.union(cu as u32, co as u32);
        }
        let mut roots = BTreeSet::new();
        for &c in &self.components {
            roots.insert(dsu.find(c as u32));
        }
        roots.len() > 1
    }

    pub fn to_tuples(&self) -> Vec<[u32; 4]> {
        self.crossings.iter().map(Crossing::to_tuple).collect()
    }
}

#[derive(Default)]
pub(crate) struct Dsu {
    parent: BTreeMap<u32, u32>,
}

impl Dsu {
    pub fn find(&mut self, x: u32) -> u32 {
        let p = *self.parent.get(&x).unwrap_or(&x);
        if p == x {
            return x;
        }
        let root = self.find(p);
        self.parent.insert(x, root);
        root
    }

    pub fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // smaller label becomes the representative
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent.insert(hi, lo);
        }
    }
}

fn resolve_orientations(raw: &[[u32; 4]]) -> Result<Vec<Crossing>> {
    // occurrence list per edge
    let mut occ: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
    for (ci, t) in raw.iter().enumerate() {
        for (slot, &e) in t.iter().enumerate() {
            occ.entry(e).or_default().push((ci, slot));
        }
    }
    for (e, places) in &occ {
        if places.len() != 2 {
            return Err(Error::Topology(format!(
                "arc {} occurs {} times, expected exactly 2",
                e,
                places.len()
            )));
        }
    }

    let mut state: BTreeMap<(usize, usize), Flow> = BTreeMap::new();
    for (ci, _) in raw.iter().enumerate() {
        state.insert((ci, 0), Flow::In);
        state.insert((ci, 2), Flow::Out);
    }

    let flip = |f: Flow| match f {
        Flow::In => Flow::Out,
        Flow::Out => Flow::In,
    };

    loop {
        let mut changed = false;
        // arc rule: the two occurrences of an arc carry opposite flow
        for places in occ.values() {
            let (p0, p1) = (places[0], places[1]);
            match (state.get(&p0).copied(), state.get(&p1).copied()) {
                (Some(a), Some(b)) => {
                    if a == b {
                        return Err(Error::Topology(
                            "inconsistent orientation: an arc has two heads or two tails".into(),
                        ));
                    }
                }
                (Some(a), None) => {
                    state.insert(p1, flip(a));
                    changed = true;
                }
                (None, Some(b)) => {
                    state.insert(p0, flip(b));
                    changed = true;
                }
                (None, None) => {}
            }
        }
        // crossing rule: over slots 1 and 3 carry opposite flow
        for ci in 0..raw.len() {
            let (p1, p3) = ((ci, 1), (ci, 3));
            match (state.get(&p1).copied(), state.get(&p3).copied()) {
                (Some(a), Some(b)) => {
                    if a == b {
                        return Err(Error::Topology(
                            "inconsistent orientation: both over slots flow the same way".into(),
                        ));
                    }
                }
                (Some(a), None) => {
                    state.insert(p3, flip(a));
                    changed = true;
                }
                (None, Some(b)) => {
                    state.insert(p1, flip(b));
                    changed = true;
                }
                (None, None) => {}
            }
        }
        if changed {
            continue;
        }
        // components that never pass under are still undecided; orient the
        // lowest-labeled undecided arc so that labels ascend along it
        let undecided: Vec<u32> = occ
            .iter()
            .filter(|(_, places)| places.iter().any(|p| !state.contains_key(p)))
            .map(|(&e, _)| e)
            .collect();
        let Some(&e_min) = undecided.first() else {
            break;
        };
        let places = &occ[&e_min];
        let next_edge = |(ci, slot): (usize, usize)| -> u32 {
            let other = if slot == 1 { 3 } else { 1 };
            raw[ci][other]
        };
        let (n0, n1) = (next_edge(places[0]), next_edge(places[1]));
        let head = if n0 <= n1 { places[0] } else { places[1] };
        state.insert(head, Flow::In);
    }

    let mut out = Vec::with_capacity(raw.len());
    for (ci, t) in raw.iter().enumerate() {
        let over_in_slot = match state[&(ci, 1)] {
            Flow::In => 1,
            Flow::Out => 3,
        };
        let (over_in, over_out, sign) = if over_in_slot == 1 {
            (t[1], t[3], 1)
        } else {
            (t[3], t[1], -1)
        };
        out.push(Crossing {
            under_in: t[0],
            over_in,
            under_out: t[2],
            over_out,
            sign,
        });
    }
    Ok(out)
}

/// Decomposes the diagram's arcs into oriented cycles (one per link
/// component), ordered by least arc label.
fn edge_cycles(crossings: &[Crossing]) -> Result<Vec<Vec<u32>>> {
    let mut successor: BTreeMap<u32, u32> = BTreeMap::new();
    let mut indegree: BTreeMap<u32, usize> = BTreeMap::new();
    for c in crossings {
        for (inc, out) in [(c.under_in, c.under_out), (c.over_in, c.over_out)] {
            if successor.insert(inc, out).is_some() {
                return Err(Error::Topology(format!(
                    "arc {} flows into two different crossings",
                    inc
                )));
            }
            *indegree.entry(out).or_insert(0) += 1;
        }
    }
    for (&e, _) in &successor {
        if indegree.get(&e).copied().unwrap_or(0) != 1 {
            return Err(Error::Topology(format!(
                "arc {} does not lie on a single oriented cycle",
                e
            )));
        }
    }
    let mut seen = BTreeSet::new();
    let mut cycles = Vec::new();
    for &start in successor.keys() {
        if seen.contains(&start) {
            continue;
        }
        let mut cycle = Vec::new();
        let mut cur = start;
        loop {
            if !seen.insert(cur) {
                return Err(Error::Topology(format!(
                    "arc {} reached twice while tracing a component",
                    cur
                )));
            }
            cycle.push(cur);
            cur = successor[&cur];
            if cur == start {
                break;
            }
        }
        cycles.push(cycle);
    }
    Ok(cycles)
}

#[cfg(test)]
mod tests {
    use super::*;

    // right trefoil, sequential labels (closure of three positive twists)
    fn trefoil_tuples() -> Vec<[i64; 4]> {
        vec![[2, 1, 3, 4], [4, 3, 5, 6], [6, 5, 1, 2]]
    }

    #[test]
    fn trefoil_resolves_positive() {
        let pd = PDCode::from_tuples(&trefoil_tuples(), 0, None).unwrap();
        assert_eq!(pd.num_components(), 1);
        assert!(pd.crossings().iter().all(|c| c.sign == 1));
        assert!(!pd.is_split_diagram());
    }

    #[test]
    fn arc_occurring_thrice_is_rejected() {
        let bad = vec![[1i64, 2, 2, 3], [2, 3, 1, 4]];
        assert!(matches!(
            PDCode::from_tuples(&bad, 0, None),
            Err(Error::Topology(_))
        ));
    }

    #[test]
    fn split_union_is_detected() {
        // two disjoint kinked unknots
        let pd = PDCode::from_tuples(
            &[[1, 2, 2, 1], [3, 4, 4, 3]],
            0,
            None,
        )
        .unwrap();
        assert_eq!(pd.num_components(), 2);
        assert!(pd.is_split_diagram());
    }

    #[test]
    fn free_loops_count_as_components() {
        let pd = PDCode::from_tuples(&[], 3, None).unwrap();
        assert_eq!(pd.num_components(), 3);
        assert_eq!(pd.free_components().len(), 3);
        assert!(pd.is_split_diagram());
    }

    #[test]
    fn delete_nothing_is_identity() {
        let pd = PDCode::from_tuples(&trefoil_tuples(), 0, None).unwrap();
        let same = pd.delete_components(&BTreeSet::new()).unwrap();
        assert_eq!(pd, same);
    }

    #[test]
    fn delete_everything_errors() {
        let pd = PDCode::from_tuples(&trefoil_tuples(), 0, None).unwrap();
        let all: BTreeSet<usize> = [1].into_iter().collect();
        assert!(matches!(
            pd.delete_components(&all),
            Err(Error::EmptyResult)
        ));
    }

    #[test]
    fn deleting_one_hopf_component_leaves_a_bare_unknot() {
        // positive Hopf link as a 2-crossing diagram
        let pd = PDCode::from_tuples(&[[2, 1, 3, 4], [4, 3, 1, 2]], 0, None).unwrap();
        assert_eq!(pd.num_components(), 2);
        let remove: BTreeSet<usize> = [2].into_iter().collect();
        let sub = pd.delete_components(&remove).unwrap();
        assert_eq!(sub.num_components(), 1);
        assert!(sub.crossings().is_empty());
        assert_eq!(sub.free_components().len(), 1);
        // the surviving component keeps its index
        assert!(sub.components().contains(&1));
    }
}
