//! Pointed partitions `(J0; J_1, .., J_r)` of `[n]` and their refinement order.
//!
//! `J0` is the distinguished part and may be empty; every other part is
//! nonempty. Parts other than `J0` are unordered and kept sorted by their
//! least element, so equal partitions compare equal.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::subset::{ElementSet, MAX_N};

/// Successor enumeration refuses ground sets above this size.
pub const MAX_SUCCESSOR_N: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointedPartition {
    n: usize,
    j0: ElementSet,
    parts: Vec<ElementSet>,
}

/// How much of a part an aggregate may move into `J0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum AggregateRule {
    /// A nonempty proper subset; a part is never emptied.
    #[default]
    Proper,
    /// Any nonempty subset, including the whole part (which then disappears).
    AllowWhole,
}

impl PointedPartition {
    pub fn new(n: usize, j0: ElementSet, mut parts: Vec<ElementSet>) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::validation(format!(
                "ground set size {n} above {MAX_N}"
            )));
        }
        let mut seen = j0;
        for &p in &parts {
            if p.is_empty() {
                return Err(Error::validation(
                    "only the distinguished part may be empty",
                ));
            }
            if !p.is_disjoint(seen) {
                return Err(Error::validation(format!("part {p} overlaps another part")));
            }
            seen = seen.union(p);
        }
        if seen != ElementSet::full(n) {
            return Err(Error::validation(format!(
                "parts cover {seen}, not all of [{n}]"
            )));
        }
        parts.sort_by_key(|p| p.first());
        Ok(PointedPartition { n, j0, parts })
    }

    /// `(∅; [n])`
    pub fn whole(n: usize) -> Result<Self> {
        Self::new(n, ElementSet::EMPTY, vec![ElementSet::full(n)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn j0(&self) -> ElementSet {
        self.j0
    }

    pub fn parts(&self) -> &[ElementSet] {
        &self.parts
    }

    fn check_subset(&self, part: usize, a: ElementSet) -> Result<ElementSet> {
        let p = *self.parts.get(part).ok_or_else(|| {
            Error::validation(format!(
                "no part with index {part} (have {})",
                self.parts.len()
            ))
        })?;
        if a.is_empty() || a == p || !a.is_subset(p) {
            return Err(Error::validation(format!(
                "{a} is not a nonempty proper subset of part {p}"
            )));
        }
        Ok(p)
    }

    /// Splits part `part` into `a` and its complement in the part.
    pub fn split(&self, part: usize, a: ElementSet) -> Result<Self> {
        let p = self.check_subset(part, a)?;
        let mut parts = self.parts.clone();
        parts[part] = a;
        parts.push(p.difference(a));
        Self::new(self.n, self.j0, parts)
    }

    /// Moves `a`, a nonempty proper subset of part `part`, into `J0`.
    pub fn aggregate(&self, part: usize, a: ElementSet) -> Result<Self> {
        let p = self.check_subset(part, a)?;
        let mut parts = self.parts.clone();
        parts[part] = p.difference(a);
        Self::new(self.n, self.j0.union(a), parts)
    }

    /// Whether `self` is reachable from `coarser` by 1-step refinements:
    /// `J0 ⊆ J0'`, every part of `self` sits inside a part of `coarser`, and
    /// every part of `coarser` keeps at least one part of `self`.
    pub fn is_refinement_of(&self, coarser: &PointedPartition) -> Result<bool> {
        if self.n != coarser.n {
            return Err(Error::validation(format!(
                "partitions of [{}] and [{}]",
                self.n, coarser.n
            )));
        }
        Ok(coarser.j0.is_subset(self.j0)
            && self
                .parts
                .iter()
                .all(|p| coarser.parts.iter().any(|c| p.is_subset(*c)))
            && coarser
                .parts
                .iter()
                .all(|c| self.parts.iter().any(|p| p.is_subset(*c))))
    }

    /// Every distinct partition one split or one aggregate away.
    pub fn one_step_successors(&self, rule: AggregateRule) -> Result<Vec<Self>> {
        if self.n > MAX_SUCCESSOR_N {
            return Err(Error::resource(
                "one-step successor enumeration (ground set size)",
                self.n as u128,
                MAX_SUCCESSOR_N as u128,
            ));
        }
        let mut out = BTreeSet::new();
        for (l, &p) in self.parts.iter().enumerate() {
            for a in p.proper_nonempty_subsets() {
                out.insert(self.split(l, a)?);
                out.insert(self.aggregate(l, a)?);
            }
            if rule == AggregateRule::AllowWhole {
                let mut parts = self.parts.clone();
                parts.remove(l);
                out.insert(Self::new(self.n, self.j0.union(p), parts)?);
            }
        }
        Ok(out.into_iter().collect())
    }
}

impl fmt::Debug for PointedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for PointedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; ", self.j0)?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(e: &[usize]) -> ElementSet {
        e.iter().map(|&i| i - 1).collect()
    }

    fn pp(j0: &[usize], parts: &[&[usize]]) -> PointedPartition {
        PointedPartition::new(4, set(j0), parts.iter().map(|p| set(p)).collect()).unwrap()
    }

    #[test]
    fn part_order_is_irrelevant() {
        let a = PointedPartition::new(5, ElementSet::EMPTY, vec![set(&[1, 2]), set(&[3, 4, 5])])
            .unwrap();
        let b = PointedPartition::new(5, ElementSet::EMPTY, vec![set(&[5, 4, 3]), set(&[1, 2])])
            .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn validation() {
        assert!(PointedPartition::new(3, set(&[1]), vec![set(&[1, 2]), set(&[3])]).is_err());
        assert!(PointedPartition::new(3, set(&[1]), vec![set(&[2])]).is_err());
        assert!(
            PointedPartition::new(3, set(&[1]), vec![set(&[2, 3]), ElementSet::EMPTY]).is_err()
        );
        assert!(PointedPartition::new(3, set(&[1, 2, 3]), vec![]).is_ok());
    }

    #[test]
    fn worked_refinement_chain() {
        let start = PointedPartition::whole(4).unwrap();
        let a = start.aggregate(0, set(&[3])).unwrap();
        assert_eq!(a, pp(&[3], &[&[1, 2, 4]]));
        let b = a.aggregate(0, set(&[1])).unwrap();
        assert_eq!(b, pp(&[1, 3], &[&[2, 4]]));
        let c = b.split(0, set(&[2])).unwrap();
        assert_eq!(c, pp(&[1, 3], &[&[2], &[4]]));
        assert!(c.is_refinement_of(&start).unwrap());
    }

    #[test]
    fn split_and_aggregate_errors() {
        let whole = PointedPartition::whole(4).unwrap();
        assert_eq!(
            whole.split(0, set(&[1, 2])).unwrap(),
            pp(&[], &[&[1, 2], &[3, 4]])
        );
        let singles = pp(&[], &[&[1], &[2], &[3], &[4]]);
        assert!(singles.split(0, set(&[1])).is_err());
        assert!(whole.aggregate(0, ElementSet::full(4)).is_err());
        assert!(whole.aggregate(0, ElementSet::EMPTY).is_err());
        assert!(whole.split(1, set(&[1])).is_err());
        let p = pp(&[1], &[&[2, 3, 4]]);
        assert!(p.split(0, set(&[1, 2])).is_err());
    }

    #[test]
    fn refinement_examples() {
        let whole = PointedPartition::whole(4).unwrap();
        assert!(whole.is_refinement_of(&whole).unwrap());
        let absorbed = PointedPartition::new(4, ElementSet::full(4), vec![]).unwrap();
        assert!(!absorbed.is_refinement_of(&whole).unwrap());
        assert!(!whole.is_refinement_of(&pp(&[1], &[&[2, 3, 4]])).unwrap());
        let other = PointedPartition::whole(3).unwrap();
        assert!(whole.is_refinement_of(&other).is_err());
    }

    #[test]
    fn successors() {
        let two = PointedPartition::whole(2).unwrap();
        let s = two.one_step_successors(AggregateRule::Proper).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.contains(
            &PointedPartition::new(2, ElementSet::EMPTY, vec![set(&[1]), set(&[2])]).unwrap()
        ));
        assert!(s.contains(&PointedPartition::new(2, set(&[1]), vec![set(&[2])]).unwrap()));
        assert!(s.contains(&PointedPartition::new(2, set(&[2]), vec![set(&[1])]).unwrap()));
        assert!(PointedPartition::whole(1)
            .unwrap()
            .one_step_successors(AggregateRule::Proper)
            .unwrap()
            .is_empty());
        let singles = PointedPartition::new(3, set(&[1]), vec![set(&[2]), set(&[3])]).unwrap();
        assert!(singles
            .one_step_successors(AggregateRule::Proper)
            .unwrap()
            .is_empty());
        assert_eq!(
            singles
                .one_step_successors(AggregateRule::AllowWhole)
                .unwrap()
                .len(),
            2
        );
    }

    #[test]
    fn split_result_is_strictly_finer() {
        let whole = PointedPartition::whole(4).unwrap();
        for a in ElementSet::full(4).proper_nonempty_subsets() {
            let s = whole.split(0, a).unwrap();
            assert!(s.is_refinement_of(&whole).unwrap());
            assert!(!whole.is_refinement_of(&s).unwrap());
        }
    }
}
