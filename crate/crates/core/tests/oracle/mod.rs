//! Brute-force reference implementations for the integration tests.
//!
//! Nothing here calls the library's algorithms. Orders are down-set masks,
//! binary codes of length at most 6 are bitsets over their codewords, and
//! codes over larger fields are explicit sets of words.

#![allow(dead_code)]

use std::collections::BTreeSet;

use posetcode::{Field, FieldVector, LinearCode, Poset};

pub fn bits(x: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |&i| x >> i & 1 == 1)
}

pub fn full(n: usize) -> u32 {
    (1u32 << n) - 1
}

/// Packs the coordinates of `x` at `positions` into the low bits.
pub fn compress(x: u32, positions: &[usize]) -> u32 {
    positions
        .iter()
        .enumerate()
        .fold(0, |acc, (k, &p)| acc | (x >> p & 1) << k)
}

/// A partial order on `[n]` as down-sets: bit `i` of `down[j]` iff `i ≤ j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Order {
    pub n: usize,
    pub down: Vec<u32>,
}

impl Order {
    pub fn from_poset(p: &Poset) -> Self {
        let n = p.n();
        let down = (0..n)
            .map(|j| (0..n).filter(|&i| p.leq(i, j)).fold(0, |m, i| m | 1 << i))
            .collect();
        Order { n, down }
    }

    /// From a strict relation: bit `i * n + j` set iff `i < j`.
    pub fn from_strict(n: usize, rel: u32) -> Self {
        let down = (0..n)
            .map(|j| {
                (0..n)
                    .filter(|&i| rel >> (i * n + j) & 1 == 1)
                    .fold(1 << j, |m, i| m | 1 << i)
            })
            .collect();
        Order { n, down }
    }

    pub fn strict_mask(&self) -> u32 {
        let mut rel = 0;
        for j in 0..self.n {
            for i in bits(self.down[j]) {
                if i != j {
                    rel |= 1 << (i * self.n + j);
                }
            }
        }
        rel
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.down[j] >> i & 1 == 1
    }

    /// Size of the ideal generated by the support `x`.
    pub fn weight(&self, x: u32) -> u32 {
        bits(x)
            .fold(0, |ideal, j| ideal | self.down[j])
            .count_ones()
    }

    pub fn dist(&self, x: u32, y: u32) -> u32 {
        self.weight(x ^ y)
    }

    /// Length of the longest chain ending at each element, minus one.
    pub fn levels(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&j| self.down[j].count_ones());
        let mut level = vec![0; self.n];
        for &j in &order {
            level[j] = bits(self.down[j])
                .filter(|&i| i != j)
                .map(|i| level[i] + 1)
                .max()
                .unwrap_or(0);
        }
        level
    }

    /// Comparability is exactly "different level".
    pub fn is_hierarchical(&self) -> bool {
        let level = self.levels();
        (0..self.n).all(|i| (0..self.n).all(|j| self.lt(i, j) == (level[i] < level[j])))
    }

    pub fn induced(&self, s: u32) -> Order {
        let positions: Vec<usize> = bits(s).collect();
        let down = positions
            .iter()
            .map(|&p| compress(self.down[p] & s, &positions))
            .collect();
        Order {
            n: positions.len(),
            down,
        }
    }

    /// Every weight-preserving linear map of `GF(2)^n`, as column images.
    pub fn isometries(&self) -> Vec<Vec<u32>> {
        let candidates: Vec<Vec<u32>> = (0..self.n)
            .map(|j| {
                let w = self.weight(1 << j);
                (1..1u32 << self.n)
                    .filter(|&v| self.weight(v) == w)
                    .collect()
            })
            .collect();
        let mut out = Vec::new();
        let mut cols = Vec::with_capacity(self.n);
        self.extend(&candidates, &mut cols, &mut out);
        out
    }

    fn extend(&self, candidates: &[Vec<u32>], cols: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let j = cols.len();
        if j == self.n {
            out.push(cols.clone());
            return;
        }
        for &v in &candidates[j] {
            cols.push(v);
            // every vector supported on the first j + 1 coordinates
            let ok = (0..1u32 << j).all(|low| {
                let x = low | 1 << j;
                self.weight(apply(cols, x)) == self.weight(x)
            });
            if ok {
                self.extend(candidates, cols, out);
            }
            cols.pop();
        }
    }
}

pub fn apply(cols: &[u32], x: u32) -> u32 {
    bits(x).fold(0, |acc, j| acc ^ cols[j])
}

pub fn words(set: u64) -> impl Iterator<Item = u32> {
    (0..64u32).filter(move |&w| set >> w & 1 == 1)
}

/// Codeword bitset of the binary span of `rows`.
pub fn span2(rows: &[u32]) -> u64 {
    let mut set = 1u64;
    for &r in rows {
        set |= words(set).fold(0, |acc, w| acc | 1 << (w ^ r));
    }
    set
}

pub fn image(cols: &[u32], set: u64) -> u64 {
    words(set).fold(0, |acc, w| acc | 1 << apply(cols, w))
}

pub fn support(set: u64) -> u32 {
    words(set).fold(0, |acc, w| acc | w)
}

pub fn dim2(set: u64) -> usize {
    set.count_ones().trailing_zeros() as usize
}

/// Codewords with support inside `block`.
pub fn inside(set: u64, block: u32) -> u64 {
    words(set)
        .filter(|&w| w & !block == 0)
        .fold(0, |acc, w| acc | 1 << w)
}

/// All set partitions of `elems`, blocks as masks.
pub fn set_partitions(elems: &[usize]) -> Vec<Vec<u32>> {
    let Some((&first, rest)) = elems.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    for p in set_partitions(rest) {
        for k in 0..p.len() {
            let mut q = p.clone();
            q[k] |= 1 << first;
            out.push(q);
        }
        let mut q = p;
        q.push(1 << first);
        out.push(q);
    }
    out
}

/// The finest partition of `supp` into blocks `B` with
/// `Π count(B) = total`, where `count(B)` counts codewords inside `B`.
/// Also checks that it refines every other valid partition.
pub fn finest_blocks(supp: u32, total: usize, count: impl Fn(u32) -> usize) -> Vec<u32> {
    let elems: Vec<usize> = bits(supp).collect();
    let valid: Vec<Vec<u32>> = set_partitions(&elems)
        .into_iter()
        .filter(|p| p.iter().map(|&b| count(b)).product::<usize>() == total)
        .collect();
    let mut best = valid
        .iter()
        .max_by_key(|p| p.len())
        .cloned()
        .unwrap_or_default();
    for p in &valid {
        assert!(
            best.iter().all(|&b| p.iter().any(|&c| b & !c == 0)),
            "valid decompositions without a common refinement"
        );
    }
    best.sort_by_key(|b| b.trailing_zeros());
    best
}

pub fn finest2(set: u64) -> Vec<u32> {
    finest_blocks(support(set), set.count_ones() as usize, |b| {
        inside(set, b).count_ones() as usize
    })
}

/// Least `Σ q^(n_G − k_G)` over every grouping of the parts.
pub fn min_over_groupings(q: u64, parts: &[(usize, usize)]) -> u64 {
    let idx: Vec<usize> = (0..parts.len()).collect();
    set_partitions(&idx)
        .iter()
        .map(|groups| {
            groups
                .iter()
                .map(|&g| {
                    let (n, k) = bits(g).fold((0, 0), |(n, k), i| (n + parts[i].0, k + parts[i].1));
                    q.pow((n - k) as u32)
                })
                .sum()
        })
        .min()
        .expect("at least the empty grouping")
}

pub fn parts2(set: u64) -> Vec<(usize, usize)> {
    finest2(set)
        .into_iter()
        .map(|b| (b.count_ones() as usize, dim2(inside(set, b))))
        .collect()
}

pub fn complexity2(set: u64) -> u64 {
    min_over_groupings(2, &parts2(set))
}

/// `(|J0|, |J0|)` followed by the sorted component pairs.
pub fn profile2(n: usize, set: u64) -> Vec<(usize, usize)> {
    let j0 = n - support(set).count_ones() as usize;
    let mut rest = parts2(set);
    rest.sort();
    let mut out = vec![(j0, j0)];
    out.extend(rest);
    out
}

pub fn orbit(order: &Order, set: u64) -> BTreeSet<u64> {
    order
        .isometries()
        .iter()
        .map(|cols| image(cols, set))
        .collect()
}

/// Least complexity over the orbit.
pub fn o_p(order: &Order, set: u64) -> u64 {
    orbit(order, set)
        .into_iter()
        .map(complexity2)
        .min()
        .expect("orbit is nonempty")
}

/// No isometry of the induced order shrinks the component or splits it.
pub fn irreducible(order: &Order, block: u32, set: u64) -> bool {
    if block.count_ones() <= 1 {
        return true;
    }
    let positions: Vec<usize> = bits(block).collect();
    let local = words(inside(set, block)).fold(0u64, |acc, w| acc | 1 << compress(w, &positions));
    let sub = order.induced(block);
    let m = full(positions.len());
    sub.isometries().iter().all(|cols| {
        let img = image(cols, local);
        support(img) == m && finest2(img).len() == 1
    })
}

pub fn f2() -> Field {
    Field::new(2).unwrap()
}

pub fn to_vec(n: usize, x: u32) -> FieldVector {
    f2().vector((0..n).map(|i| (x >> i & 1) as i64))
}

pub fn to_mask(v: &FieldVector) -> u32 {
    v.as_slice()
        .iter()
        .enumerate()
        .fold(0, |acc, (i, &a)| acc | (a & 1) << i)
}

pub fn code_to_set(c: &LinearCode) -> u64 {
    let rows: Vec<u32> = c.generator().iter().map(to_mask).collect();
    span2(&rows)
}

pub fn set_to_code(n: usize, set: u64) -> LinearCode {
    let mut basis = Vec::new();
    for w in words(set) {
        if span2(&basis) >> w & 1 == 0 {
            basis.push(w);
        }
    }
    let rows = basis.iter().map(|&w| to_vec(n, w)).collect();
    LinearCode::from_generators(f2(), n, rows).unwrap()
}

/// Every word of the span of `rows` over `GF(q)`.
pub fn span_q(q: u32, n: usize, rows: &[Vec<u32>]) -> BTreeSet<Vec<u32>> {
    let mut set = BTreeSet::from([vec![0; n]]);
    for r in rows {
        let mut next = BTreeSet::new();
        for w in &set {
            for a in 0..q {
                next.insert(
                    w.iter()
                        .zip(r)
                        .map(|(x, y)| (x + a * y) % q)
                        .collect::<Vec<_>>(),
                );
            }
        }
        set = next;
    }
    set
}

pub fn word_support(w: &[u32]) -> u32 {
    w.iter()
        .enumerate()
        .filter(|(_, &a)| a != 0)
        .fold(0, |acc, (i, _)| acc | 1 << i)
}

pub fn log_q(q: usize, mut size: usize) -> usize {
    let mut k = 0;
    while size > 1 {
        assert_eq!(size % q, 0, "subspace size is a power of q");
        size /= q;
        k += 1;
    }
    k
}
