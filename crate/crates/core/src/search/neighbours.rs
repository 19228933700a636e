//! Hierarchical posets next to a given poset.

use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::subset::ElementSet;

/// `P⁺`: the hierarchical order on the levels of `P`.
pub fn upper_neighbour(poset: &Poset) -> Poset {
    let levels = poset.level_structure().levels;
    Poset::hierarchical_on_blocks(poset.n(), &levels)
}

/// `P⁻`: the hierarchical order whose blocks are runs of levels between
/// consecutive cut levels of `P` (see [`Poset::cut_levels`]). It is the
/// largest hierarchical poset below `P`.
pub fn lower_neighbour(poset: &Poset) -> Poset {
    let levels = poset.level_structure().levels;
    let cuts = poset.cut_levels();
    let mut blocks: Vec<ElementSet> = Vec::new();
    for (level, cut) in levels.into_iter().zip(cuts) {
        match blocks.last_mut() {
            Some(b) if !cut => *b = b.union(level),
            _ => blocks.push(level),
        }
    }
    Poset::hierarchical_on_blocks(poset.n(), &blocks)
}

/// Largest ground set for [`hierarchical_posets`].
pub const MAX_HIERARCHICAL_N: usize = 7;

/// Every hierarchical poset on `[n]`, one per ordered set partition.
pub fn hierarchical_posets(n: usize) -> Result<Vec<Poset>> {
    if n == 0 || n > MAX_HIERARCHICAL_N {
        return Err(Error::resource(
            "hierarchical poset enumeration (ground set size)",
            n as u128,
            MAX_HIERARCHICAL_N as u128,
        ));
    }
    let mut out = Vec::new();
    let mut level_of = vec![0usize; n];
    fill(0, &mut level_of, &mut out);
    Ok(out)
}

// levels are ordered, so every map [n] -> [n] is tried and the ones whose
// image is an initial segment are kept
fn fill(i: usize, level_of: &mut [usize], out: &mut Vec<Poset>) {
    let n = level_of.len();
    if i == n {
        let h = level_of.iter().max().map_or(0, |m| m + 1);
        let blocks: Vec<ElementSet> = (0..h)
            .map(|l| (0..n).filter(|&j| level_of[j] == l).collect())
            .collect();
        if blocks.iter().all(|b: &ElementSet| !b.is_empty()) {
            out.push(Poset::hierarchical_on_blocks(n, &blocks));
        }
        return;
    }
    for l in 0..n {
        level_of[i] = l;
        fill(i + 1, level_of, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p_a() -> Poset {
        Poset::from_covers(4, &[(0, 2), (0, 3), (1, 3)]).unwrap()
    }

    #[test]
    fn worked_neighbours() {
        assert_eq!(
            upper_neighbour(&p_a()),
            Poset::hierarchical(&[2, 2]).unwrap()
        );
        assert_eq!(lower_neighbour(&p_a()), Poset::antichain(4).unwrap());
        for p in [
            Poset::hierarchical(&[2, 2]).unwrap(),
            Poset::chain(5).unwrap(),
        ] {
            assert_eq!(upper_neighbour(&p), p);
            assert_eq!(lower_neighbour(&p), p);
        }
    }

    #[test]
    fn fubini_counts() {
        let counts: Vec<usize> = (1..=5)
            .map(|n| hierarchical_posets(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 3, 13, 75, 541]);
        assert!(hierarchical_posets(8).unwrap_err().is_resource());
    }

    #[test]
    fn adjacent_level_reading_is_not_below_p() {
        // 1 isolated, 2 < 3 < 4: level 3 dominates level 2, but 1 ⋠ 4
        let p = Poset::from_covers(4, &[(1, 2), (2, 3)]).unwrap();
        assert_eq!(p.hierarchy_flags().levels(), vec![1, 3]);
        let levels = p.level_structure().levels;
        let adjacent = Poset::hierarchical_on_blocks(4, &[levels[0].union(levels[1]), levels[2]]);
        assert!(!adjacent.is_finer(&p).unwrap());
        let lower = lower_neighbour(&p);
        assert!(lower.is_finer(&p).unwrap());
        assert_eq!(lower, Poset::antichain(4).unwrap());
    }
}
