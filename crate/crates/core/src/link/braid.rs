//! Braid words and their closures.
//!
//! A word is a list of nonzero letters, `+i` for the generator crossing
//! strand `i` over strand `i+1`, `-i` for its inverse. The closure is
//! converted to a PD code crossing by crossing; orientations and signs are
//! known exactly during the sweep, so nothing is re-inferred.


use super::pd::{Crossing, Dsu, PDCode};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    pub strands: usize,
    pub word: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, word: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidInput("braid needs at least one strand".into()));
        }
        for &w in &word {
            if w == 0 || w.unsigned_abs() as usize >= strands {
                return Err(Error::InvalidInput(format!(
                    "braid letter {} out of range for {} strands",
                    w, strands
                )));
            }
        }
        Ok(Self { strands, word })
    }

    /// Number of components of the closure (cycles of the underlying
    /// permutation).
    pub fn closure_components(&self) -> usize {
        let mut perm: Vec<usize> = (0..self.strands).collect();
        for &w in &self.word {
            let i = w.unsigned_abs() as usize - 1;
            perm.swap(i, i + 1);
        }
        // perm[p] = strand occupying position p at the bottom; closure sends
        // strand s to the strand starting at s's final position
        let mut end_pos = vec![0usize; self.strands];
        for (pos, &s) in perm.iter().enumerate() {
            end_pos[s] = pos;
        }
        let mut seen = vec![false; self.strands];
        let mut cycles = 0;
        for s in 0..self.strands {
            if seen[s] {
                continue;
            }
            cycles += 1;
            let mut cur = s;
            while !seen[cur] {
                seen[cur] = true;
                cur = end_pos[cur];
            }
        }
        cycles
    }

    /// PD code of the braid closure.
    pub fn closure_pd(&self) -> Result<PDCode> {
        let n = self.strands;
        let mut pos_arc: Vec<u32> = (1..=n as u32).collect();
        let mut touched = vec![false; n];
        let mut next_label = n as u32 + 1;
        let mut crossings = Vec::new();
        for &w in &self.word {
            let i = w.unsigned_abs() as usize - 1;
            touched[i] = true;
            touched[i + 1] = true;
            let (a, b) = (pos_arc[i], pos_arc[i + 1]);
            let (x, y) = (next_label, next_label + 1);
            next_label += 2;
            if w > 0 {
                // left strand passes over: under enters from the right
                crossings.push(Crossing {
                    under_in: b,
                    over_in: a,
                    under_out: x,
                    over_out: y,
                    sign: 1,
                });
                pos_arc[i] = x;
                pos_arc[i + 1] = y;
            } else {
                // left strand passes under
                crossings.push(Crossing {
                    under_in: a,
                    over_in: b,
                    under_out: y,
                    over_out: x,
                    sign: -1,
                });
                pos_arc[i] = x;
                pos_arc[i + 1] = y;
            }
        }
        // closure: bottom arc at position p is the top arc p+1
        let mut dsu = Dsu::default();
        for p in 0..n {
            dsu.union(pos_arc[p], p as u32 + 1);
        }
        let crossings: Vec<Crossing> = crossings
            .into_iter()
            .map(|c| Crossing {
                under_in: dsu.find(c.under_in),
                over_in: dsu.find(c.over_in),
                under_out: dsu.find(c.under_out),
                over_out: dsu.find(c.over_out),
                sign: c.sign,
            })
            .collect();
        let free_loops = touched.iter().filter(|t| !**t).count();
        PDCode::from_resolved(crossings, free_loops, None)
    }
}

/// Parses `{"n": strands, "w": [letters]}`-style data already decoded from
/// JSON by the io layer.
pub fn braid_closure(strands: usize, word: &[i64]) -> Result<PDCode> {
    let letters: Vec<i32> = word
        .iter()
        .map(|&w| {
            i32::try_from(w).map_err(|_| Error::InvalidInput(format!("braid letter {} too large", w)))
        })
        .collect::<Result<_>>()?;
    BraidWord::new(strands, letters)?.closure_pd()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hopf_closure() {
        let pd = braid_closure(2, &[1, 1]).unwrap();
        assert_eq!(pd.num_components(), 2);
        assert_eq!(pd.crossings().len(), 2);
        let lk = pd.linking_matrix(&[0, 0]).unwrap();
        assert_eq!(lk[0][1], 1);
    }

    #[test]
    fn trefoil_closure() {
        let pd = braid_closure(2, &[1, 1, 1]).unwrap();
        assert_eq!(pd.num_components(), 1);
        assert_eq!(pd.crossings().len(), 3);
    }

    #[test]
    fn borromean_closure_is_algebraically_split() {
        let pd = braid_closure(3, &[1, -2, 1, -2, 1, -2]).unwrap();
        assert_eq!(pd.num_components(), 3);
        assert_eq!(pd.crossings().len(), 6);
        let lk = pd.linking_matrix(&[0, 0, 0]).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(lk[i][j], 0, "lk[{}][{}]", i, j);
            }
        }
        assert!(!pd.is_split_diagram());
    }

    #[test]
    fn untouched_strand_becomes_free_loop() {
        let pd = braid_closure(3, &[1, 1]).unwrap();
        assert_eq!(pd.num_components(), 3);
        assert_eq!(pd.free_components().len(), 1);
        assert!(pd.is_split_diagram());
    }

    #[test]
    fn bad_letters_rejected() {
        assert!(braid_closure(2, &[2]).is_err());
        assert!(braid_closure(2, &[0]).is_err());
    }

    #[test]
    fn closure_component_count_matches_pd() {
        for (n, w) in [
            (2usize, vec![1i64, 1]),
            (3, vec![1, -2, 1, -2]),
            (3, vec![1, -2, 1, -2, 1]),
            (3, vec![1, -2, 1, -2, 1, -2]),
        ] {
            let b = BraidWord::new(n, w.iter().map(|&x| x as i32).collect()).unwrap();
            let pd = braid_closure(n, &w).unwrap();
            assert_eq!(b.closure_components(), pd.num_components());
        }
    }
}
