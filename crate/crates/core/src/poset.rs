//! Partial orders on `[n]`.
//!
//! Elements are 0-based here; JSON and text output shift to 1-based.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::subset::{ElementSet, MAX_N};

/// Automorphism and isomorphism searches refuse larger ground sets.
pub const MAX_SEARCH_N: usize = 10;

/// A bijection of `{0, .., n-1}`; `images[i]` is the image of `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = ElementSet::EMPTY;
        for &i in &images {
            if i >= n || seen.contains(i) {
                return Err(Error::validation(format!(
                    "{:?} is not a permutation of 0..{n}",
                    images
                )));
            }
            seen.insert(i);
        }
        Ok(Permutation(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Self {
        Permutation(other.0.iter().map(|&j| self.0[j]).collect())
    }

    pub fn map_set(&self, s: ElementSet) -> ElementSet {
        s.iter().map(|i| self.0[i]).collect()
    }
}

/// Heights, levels and type of a poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelStructure {
    /// `heights[i]` is the length of the longest chain ending at `i` (≥ 1).
    pub heights: Vec<usize>,
    /// `levels[k]` holds the elements of height `k + 1`.
    pub levels: Vec<ElementSet>,
}

impl LevelStructure {
    /// `(n_1, .., n_h)`.
    pub fn type_vector(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.len()).collect()
    }

    pub fn height(&self) -> usize {
        self.levels.len()
    }
}

/// Level-to-level hierarchy flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HierarchyFlags {
    /// `flags[k]` is true iff every element of level `k+1` lies above every
    /// element of level `k`. `flags[0]` is always true.
    pub flags: Vec<bool>,
}

impl HierarchyFlags {
    /// The flagged levels as 1-based level numbers.
    pub fn levels(&self) -> Vec<usize> {
        self.flags
            .iter()
            .enumerate()
            .filter(|(_, &f)| f)
            .map(|(k, _)| k + 1)
            .collect()
    }
}

/// A finite partial order stored as its reflexive-transitive closure.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poset {
    n: usize,
    /// `down[j] = { i : i ⪯ j }`
    down: Vec<ElementSet>,
}

impl Poset {
    /// Closes a set of cover pairs `(a, b)`, meaning `a ≺ b`, 0-based.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        check_size(n)?;
        let mut down: Vec<ElementSet> = (0..n).map(ElementSet::singleton).collect();
        for &(a, b) in covers {
            if a >= n || b >= n {
                return Err(Error::validation(format!(
                    "cover ({}, {}) out of range for n = {n}",
                    a + 1,
                    b + 1
                )));
            }
            if a == b {
                return Err(Error::validation(format!(
                    "cover ({}, {}) is a loop",
                    a + 1,
                    a + 1
                )));
            }
            down[b].insert(a);
        }
        warshall(&mut down);
        Self::from_closed(n, down)
    }

    /// Builds from an already-closed down-set table, validating it.
    pub fn from_down_sets(down: Vec<ElementSet>) -> Result<Self> {
        let n = down.len();
        check_size(n)?;
        let mut closed = down.clone();
        for (j, d) in closed.iter_mut().enumerate() {
            d.insert(j);
        }
        warshall(&mut closed);
        if closed != down {
            return Err(Error::validation(
                "relation is not reflexive and transitive",
            ));
        }
        Self::from_closed(n, closed)
    }

    fn from_closed(n: usize, down: Vec<ElementSet>) -> Result<Self> {
        for j in 0..n {
            for i in down[j].iter() {
                if i != j && down[i].contains(j) {
                    return Err(Error::NotPartialOrder(format!(
                        "{} and {} lie on a cycle",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Poset { n, down })
    }

    /// The trivial order.
    pub fn antichain(n: usize) -> Result<Self> {
        Self::from_covers(n, &[])
    }

    /// `1 ⪯ 2 ⪯ … ⪯ n`.
    pub fn chain(n: usize) -> Result<Self> {
        let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_covers(n, &covers)
    }

    /// Hierarchical poset of the given type with the natural labelling:
    /// level `k` is a block of consecutive elements.
    pub fn hierarchical(type_vector: &[usize]) -> Result<Self> {
        if type_vector.is_empty() || type_vector.contains(&0) {
            return Err(Error::validation(format!(
                "bad type vector {type_vector:?}: parts must be positive"
            )));
        }
        let n: usize = type_vector.iter().sum();
        check_size(n)?;
        let mut blocks = Vec::new();
        let mut start = 0;
        for &len in type_vector {
            blocks.push(ElementSet::full(start + len).difference(ElementSet::full(start)));
            start += len;
        }
        Ok(Self::hierarchical_on_blocks(n, &blocks))
    }

    /// Hierarchical order whose levels are `blocks`, bottom first.
    /// The blocks must partition `[n]`.
    pub(crate) fn hierarchical_on_blocks(n: usize, blocks: &[ElementSet]) -> Self {
        let mut down = vec![ElementSet::EMPTY; n];
        let mut below = ElementSet::EMPTY;
        for &b in blocks {
            for j in b.iter() {
                down[j] = below.union(ElementSet::singleton(j));
            }
            below = below.union(b);
        }
        Poset { n, down }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.down[j].contains(i)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    /// `{ i : i ⪯ j }`
    pub fn down_set(&self, j: usize) -> ElementSet {
        self.down[j]
    }

    /// `{ j : i ⪯ j }`
    pub fn up_set(&self, i: usize) -> ElementSet {
        (0..self.n).filter(|&j| self.leq(i, j)).collect()
    }

    /// The ideal generated by `x`.
    pub fn ideal(&self, x: ElementSet) -> ElementSet {
        x.iter()
            .fold(ElementSet::EMPTY, |acc, i| acc.union(self.down[i]))
    }

    /// Strict pairs `i ≺ j` in row-major order.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.lt(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn strict_pair_count(&self) -> usize {
        self.down.iter().map(|d| d.len() - 1).sum()
    }

    /// Cover pairs of the Hasse diagram.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.strict_pairs()
            .into_iter()
            .filter(|&(i, j)| {
                !(0..self.n).any(|m| m != i && m != j && self.lt(i, m) && self.lt(m, j))
            })
            .collect()
    }

    pub fn level_structure(&self) -> LevelStructure {
        // ascending down-set size is a linear extension
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&j| self.down[j].len());
        let mut heights = vec![0usize; self.n];
        for &j in &order {
            heights[j] = 1 + self.down[j]
                .iter()
                .filter(|&i| i != j)
                .map(|i| heights[i])
                .max()
                .unwrap_or(0);
        }
        let h = heights.iter().copied().max().unwrap_or(0);
        let mut levels = vec![ElementSet::EMPTY; h];
        for (j, &hj) in heights.iter().enumerate() {
            levels[hj - 1].insert(j);
        }
        LevelStructure { heights, levels }
    }

    /// `P ≤ Q`: every relation of `self` holds in `other`.
    pub fn is_finer(&self, other: &Poset) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::validation(format!(
                "posets on different ground sets ({} vs {})",
                self.n, other.n
            )));
        }
        Ok(self
            .down
            .iter()
            .zip(&other.down)
            .all(|(a, b)| a.is_subset(*b)))
    }

    pub fn hierarchy_flags(&self) -> HierarchyFlags {
        let levels = self.level_structure().levels;
        let flags = (0..levels.len())
            .map(|k| {
                k == 0
                    || levels[k]
                        .iter()
                        .all(|a| levels[k - 1].is_subset(self.down[a]))
            })
            .collect();
        HierarchyFlags { flags }
    }

    /// Levels `k` (0-based, `k ≥ 1`) where everything in levels `< k` lies
    /// below everything in level `k`. These are exactly the positions where
    /// the poset splits as an ordinal sum.
    pub fn cut_levels(&self) -> Vec<bool> {
        let levels = self.level_structure().levels;
        let mut below = ElementSet::EMPTY;
        let mut cuts = Vec::with_capacity(levels.len());
        for (k, &level) in levels.iter().enumerate() {
            cuts.push(k == 0 || level.iter().all(|a| below.is_subset(self.down[a])));
            below = below.union(level);
        }
        cuts
    }

    pub fn is_hierarchical(&self) -> bool {
        self.hierarchy_flags().flags.iter().all(|&f| f)
    }

    /// Restriction to `s`, relabelled `0..|s|` in increasing element order.
    pub fn induced(&self, s: ElementSet) -> Poset {
        let elems: Vec<usize> = s.iter().collect();
        let down = elems
            .iter()
            .map(|&j| {
                elems
                    .iter()
                    .enumerate()
                    .filter(|(_, &i)| self.leq(i, j))
                    .map(|(k, _)| k)
                    .collect()
            })
            .collect();
        Poset {
            n: elems.len(),
            down,
        }
    }

    /// Whether `sigma` is an order automorphism.
    pub fn is_automorphism(&self, sigma: &Permutation) -> bool {
        sigma.len() == self.n
            && (0..self.n).all(|j| sigma.map_set(self.down[j]) == self.down[sigma.apply(j)])
    }

    /// All automorphisms, in lexicographic order of their image lists.
    pub fn automorphisms(&self) -> Result<Vec<Permutation>> {
        check_search_size(self.n)?;
        let mut out = Vec::new();
        let levels = self.level_structure();
        let mut assign = vec![usize::MAX; self.n];
        let mut used = ElementSet::EMPTY;
        backtrack(
            self,
            self,
            &levels,
            &levels,
            0,
            &mut assign,
            &mut used,
            &mut |p| {
                out.push(Permutation(p.to_vec()));
                true
            },
        );
        Ok(out)
    }

    /// A bijection `sigma` with `i ⪯_self j ⟺ sigma(i) ⪯_other sigma(j)`.
    pub fn isomorphism_to(&self, other: &Poset) -> Result<Option<Permutation>> {
        if self.n != other.n {
            return Ok(None);
        }
        check_search_size(self.n)?;
        let (la, lb) = (self.level_structure(), other.level_structure());
        if la.type_vector() != lb.type_vector()
            || self.strict_pair_count() != other.strict_pair_count()
        {
            return Ok(None);
        }
        let mut found = None;
        let mut assign = vec![usize::MAX; self.n];
        let mut used = ElementSet::EMPTY;
        backtrack(self, other, &la, &lb, 0, &mut assign, &mut used, &mut |p| {
            found = Some(Permutation(p.to_vec()));
            false
        });
        Ok(found)
    }

    /// Graphviz rendering of the Hasse diagram, bottom level first.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph poset {\n  rankdir=BT;\n  node [shape=circle];\n");
        for level in self.level_structure().levels {
            let names: Vec<String> = level.iter().map(|i| (i + 1).to_string()).collect();
            let _ = writeln!(s, "  {{ rank=same; {}; }}", names.join("; "));
        }
        for (a, b) in self.covers() {
            let _ = writeln!(s, "  {} -> {};", a + 1, b + 1);
        }
        s.push_str("}\n");
        s
    }
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::validation(format!(
            "ground set size {n} outside 1..={MAX_N}"
        )));
    }
    Ok(())
}

fn check_search_size(n: usize) -> Result<()> {
    if n > MAX_SEARCH_N {
        return Err(Error::resource(
            "automorphism search (ground set size)",
            n as u128,
            MAX_SEARCH_N as u128,
        ));
    }
    Ok(())
}

fn warshall(down: &mut [ElementSet]) {
    let n = down.len();
    for k in 0..n {
        for j in 0..n {
            if down[j].contains(k) {
                down[j] = down[j].union(down[k]);
            }
        }
    }
}

/// Order-preserving bijection search from `a` to `b`. Candidates for `i`
/// must have the same height and the same up/down-set sizes. The callback
/// returns false to stop.
#[allow(clippy::too_many_arguments)]
fn backtrack(
    a: &Poset,
    b: &Poset,
    la: &LevelStructure,
    lb: &LevelStructure,
    i: usize,
    assign: &mut [usize],
    used: &mut ElementSet,
    emit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let n = a.n;
    if i == n {
        return emit(assign);
    }
    let (down_i, up_i) = (a.down[i].len(), a.up_set(i).len());
    for c in 0..n {
        if used.contains(c)
            || lb.heights[c] != la.heights[i]
            || b.down[c].len() != down_i
            || b.up_set(c).len() != up_i
        {
            continue;
        }
        let consistent = (0..i)
            .all(|j| a.leq(j, i) == b.leq(assign[j], c) && a.leq(i, j) == b.leq(c, assign[j]));
        if !consistent {
            continue;
        }
        assign[i] = c;
        used.insert(c);
        let go_on = backtrack(a, b, la, lb, i + 1, assign, used, emit);
        used.remove(c);
        assign[i] = usize::MAX;
        if !go_on {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    /// 1-based cover list helper.
    fn poset(n: usize, covers: &[(usize, usize)]) -> Poset {
        let c: Vec<_> = covers.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
        Poset::from_covers(n, &c).unwrap()
    }

    fn set(elems: &[usize]) -> ElementSet {
        elems.iter().map(|&i| i - 1).collect()
    }

    fn p_a() -> Poset {
        poset(4, &[(1, 3), (1, 4), (2, 4)])
    }

    /// Independent closure: repeated squaring of a boolean matrix.
    fn closure_oracle(n: usize, covers: &[(usize, usize)]) -> Vec<Vec<bool>> {
        let mut r = vec![vec![false; n]; n];
        for (i, row) in r.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in covers {
            r[a - 1][b - 1] = true;
        }
        loop {
            let mut changed = false;
            for i in 0..n {
                for j in 0..n {
                    if !r[i][j] && (0..n).any(|m| r[i][m] && r[m][j]) {
                        r[i][j] = true;
                        changed = true;
                    }
                }
            }
            if !changed {
                return r;
            }
        }
    }

    #[test]
    fn closure_matches_oracle() {
        for (n, covers) in [
            (4, vec![(1, 3), (1, 4), (2, 4)]),
            (4, vec![(1, 2), (2, 3), (3, 4)]),
            (5, vec![(5, 1), (1, 3), (2, 3), (3, 4)]),
        ] {
            let p = poset(n, &covers);
            let oracle = closure_oracle(n, &covers);
            for (i, row) in oracle.iter().enumerate() {
                for (j, &le) in row.iter().enumerate() {
                    assert_eq!(p.leq(i, j), le, "{covers:?} {i} {j}");
                }
            }
        }
        let pa = p_a();
        assert_eq!(pa.strict_pairs(), vec![(0, 2), (0, 3), (1, 3)]);
        let chain = poset(4, &[(1, 2), (2, 3), (3, 4)]);
        assert!(chain.lt(0, 2) && chain.lt(0, 3) && chain.lt(1, 3));
        assert_eq!(chain.strict_pair_count(), 6);
    }

    #[test]
    fn rejects_cycles_and_bad_indices() {
        let err = Poset::from_covers(3, &[(0, 1), (1, 0)]).unwrap_err();
        assert!(matches!(err, Error::NotPartialOrder(_)));
        assert!(matches!(
            Poset::from_covers(3, &[(0, 3)]),
            Err(Error::Validation(_))
        ));
        assert!(Poset::from_covers(3, &[(1, 1)]).is_err());
        assert!(Poset::from_covers(0, &[]).is_err());
    }

    #[test]
    fn ideals() {
        let chain = Poset::chain(4).unwrap();
        assert_eq!(chain.ideal(set(&[3])), set(&[1, 2, 3]));
        assert_eq!(p_a().ideal(ElementSet::EMPTY), ElementSet::EMPTY);
        assert_eq!(p_a().ideal(set(&[3, 4])), set(&[1, 2, 3, 4]));
    }

    #[test]
    fn levels() {
        assert_eq!(
            Poset::antichain(4).unwrap().level_structure().type_vector(),
            vec![4]
        );
        assert_eq!(
            Poset::chain(4).unwrap().level_structure().type_vector(),
            vec![1, 1, 1, 1]
        );
        let ls = p_a().level_structure();
        assert_eq!(ls.levels, vec![set(&[1, 2]), set(&[3, 4])]);
        assert_eq!(ls.type_vector(), vec![2, 2]);
        // longest chain, not shortest: 1<2<3, 1<3 gives h(3)=3
        let p = poset(3, &[(1, 2), (2, 3), (1, 3)]);
        assert_eq!(p.level_structure().heights, vec![1, 2, 3]);
    }

    #[test]
    fn refinement_order() {
        let pa = p_a();
        let h22 = Poset::hierarchical(&[2, 2]).unwrap();
        assert!(Poset::antichain(4).unwrap().is_finer(&pa).unwrap());
        assert!(pa.is_finer(&h22).unwrap());
        assert!(!Poset::chain(4).unwrap().is_finer(&pa).unwrap());
        assert!(pa.is_finer(&Poset::chain(3).unwrap()).is_err());
    }

    #[test]
    fn hierarchy() {
        assert_eq!(
            Poset::hierarchical(&[2, 2])
                .unwrap()
                .hierarchy_flags()
                .levels(),
            vec![1, 2]
        );
        assert_eq!(p_a().hierarchy_flags().levels(), vec![1]);
        assert_eq!(
            Poset::chain(4).unwrap().hierarchy_flags().levels(),
            vec![1, 2, 3, 4]
        );
        assert!(!p_a().is_hierarchical());
        // adjacent-level flag set, but 1 is not below 4
        let p = poset(4, &[(2, 3), (3, 4)]);
        assert_eq!(p.hierarchy_flags().flags, vec![true, false, true]);
        assert_eq!(p.cut_levels(), vec![true, false, false]);
    }

    #[test]
    fn families() {
        let h22 = Poset::hierarchical(&[2, 2]).unwrap();
        assert_eq!(h22.strict_pairs(), vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
        assert_eq!(
            Poset::hierarchical(&[5]).unwrap(),
            Poset::antichain(5).unwrap()
        );
        assert_eq!(
            Poset::hierarchical(&[1; 5]).unwrap(),
            Poset::chain(5).unwrap()
        );
        assert!(Poset::hierarchical(&[2, 0]).is_err());
        assert!(Poset::hierarchical(&[]).is_err());
    }

    fn all_perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in all_perms(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    fn filtered_automorphisms(p: &Poset) -> Vec<Permutation> {
        let n = p.n();
        let mut v: Vec<_> = all_perms(n)
            .into_iter()
            .filter(|s| (0..n).all(|i| (0..n).all(|j| p.leq(i, j) == p.leq(s[i], s[j]))))
            .map(Permutation)
            .collect();
        v.sort();
        v
    }

    #[test]
    fn automorphism_examples() {
        assert_eq!(
            p_a().automorphisms().unwrap(),
            vec![Permutation::identity(4)]
        );
        assert_eq!(
            Poset::antichain(3).unwrap().automorphisms().unwrap().len(),
            6
        );
        let h22 = Poset::hierarchical(&[2, 2]).unwrap();
        let auts = h22.automorphisms().unwrap();
        assert_eq!(auts.len(), 4);
        for s in &auts {
            assert_eq!(s.map_set(set(&[1, 2])), set(&[1, 2]));
        }
        assert!(Poset::antichain(11)
            .unwrap()
            .automorphisms()
            .unwrap_err()
            .is_resource());
    }

    #[test]
    fn automorphisms_match_filter() {
        let cases = [
            poset(4, &[(1, 3), (1, 4), (2, 4)]),
            poset(5, &[(1, 3), (2, 3), (3, 4), (3, 5)]),
            poset(5, &[(1, 2), (3, 4)]),
            Poset::hierarchical(&[1, 2, 2]).unwrap(),
            Poset::antichain(5).unwrap(),
        ];
        for p in cases {
            let auts = p.automorphisms().unwrap();
            assert_eq!(auts, filtered_automorphisms(&p));
            // group closure
            for a in &auts {
                assert!(p.is_automorphism(&a.inverse()));
                for b in &auts {
                    assert!(auts.contains(&a.compose(b)));
                }
            }
        }
    }

    #[test]
    fn isomorphisms() {
        let n = 4;
        let forward = Poset::chain(n).unwrap();
        let reverse = Poset::from_covers(n, &[(3, 2), (2, 1), (1, 0)]).unwrap();
        let sigma = forward.isomorphism_to(&reverse).unwrap().unwrap();
        assert_eq!(sigma.images(), &[3, 2, 1, 0]);
        assert_eq!(
            Poset::chain(3)
                .unwrap()
                .isomorphism_to(&Poset::antichain(3).unwrap())
                .unwrap(),
            None
        );
        assert_eq!(
            p_a().isomorphism_to(&p_a()).unwrap(),
            Some(Permutation::identity(4))
        );
    }

    #[test]
    fn dot_has_hasse_edges_only() {
        let dot = Poset::chain(4).unwrap().to_dot();
        assert_eq!(dot.matches("->").count(), 3);
        assert!(dot.contains("1 -> 2;"));
        assert!(!dot.contains("1 -> 3;"));
    }

    #[test]
    fn induced_subposet() {
        let chain = Poset::chain(4).unwrap();
        let sub = chain.induced(set(&[2, 4]));
        assert_eq!(sub, Poset::chain(2).unwrap());
        let sub = p_a().induced(set(&[1, 4]));
        assert!(sub.lt(0, 1));
    }
}
