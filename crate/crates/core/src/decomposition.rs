//! Direct-sum decompositions of a code into pieces with disjoint supports.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::partition::PointedPartition;
use crate::subset::ElementSet;

/// A syndrome-table size `Σ q^(n_i − k_i)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Complexity(BigUint);

impl Complexity {
    pub fn from_u64(v: u64) -> Self {
        Complexity(BigUint::from(v))
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    fn power(q: u32, exp: usize) -> Self {
        Complexity(BigUint::from(q).pow(exp as u32))
    }
}

impl std::ops::Add for Complexity {
    type Output = Complexity;

    fn add(self, rhs: Self) -> Self {
        Complexity(self.0 + rhs.0)
    }
}

impl std::iter::Sum for Complexity {
    fn sum<I: Iterator<Item = Complexity>>(iter: I) -> Self {
        iter.fold(Complexity(BigUint::zero()), |a, b| a + b)
    }
}

impl fmt::Display for Complexity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

// Plain JSON number when it fits, decimal string otherwise.
impl Serialize for Complexity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_u64() {
            Some(v) => s.serialize_u64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Complexity {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(u64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(Complexity::from_u64(v)),
            Repr::Str(s) => s
                .parse::<BigUint>()
                .map(Complexity)
                .map_err(serde::de::Error::custom),
        }
    }
}

/// `[(n_0, k_0), (n_1, k_1), …]`: the first pair describes `C_0`, the rest
/// are sorted so that profiles equal up to permutation compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Profile(Vec<(usize, usize)>);

impl Profile {
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.0
    }

    /// Number of components `r` (excluding `C_0`).
    pub fn components(&self) -> usize {
        self.0.len() - 1
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, (n, d)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "({n},{d})")?;
        }
        write!(f, "]")
    }
}

/// `C = C_1 ⊕ … ⊕ C_r` with pairwise disjoint supports; `C_0` is the full
/// coordinate space on `j0 = [n] ∖ supp(C)` and is kept implicit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decomposition {
    code: LinearCode,
    components: Vec<LinearCode>,
    j0: ElementSet,
}

impl Decomposition {
    pub fn new(code: LinearCode, mut components: Vec<LinearCode>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::validation(
                "a decomposition needs at least one component",
            ));
        }
        let mut union = ElementSet::EMPTY;
        let mut dim = 0;
        for c in &components {
            if c.n() != code.n() || c.field() != code.field() {
                return Err(Error::validation("component lives in a different space"));
            }
            let s = c.support();
            if !s.is_disjoint(union) {
                return Err(Error::validation(format!(
                    "component support {s} overlaps another"
                )));
            }
            for row in c.generator() {
                if !code.contains(row)? {
                    return Err(Error::validation(format!("{row} is not in the code")));
                }
            }
            union = union.union(s);
            dim += c.dimension();
        }
        if dim != code.dimension() || union != code.support() {
            return Err(Error::validation(
                "components do not sum to the code with matching support",
            ));
        }
        components.sort_by_key(|c| c.support().first());
        let j0 = ElementSet::full(code.n()).difference(union);
        Ok(Decomposition {
            code,
            components,
            j0,
        })
    }

    /// `(C; C_0; C)`
    pub fn trivial(code: LinearCode) -> Self {
        let j0 = ElementSet::full(code.n()).difference(code.support());
        Decomposition {
            components: vec![code.clone()],
            code,
            j0,
        }
    }

    /// The finest decomposition: connected components of the graph on
    /// `supp(C)` joining coordinates that share an RREF row.
    pub fn maximal(code: &LinearCode) -> Self {
        // each block: (support, rows)
        let mut blocks: Vec<(ElementSet, Vec<Vec<u32>>)> = Vec::new();
        for row in code.generator() {
            let s = crate::code::support_of(row);
            let mut merged = (s, vec![row.as_slice().to_vec()]);
            let mut rest = Vec::with_capacity(blocks.len());
            for b in blocks {
                if b.0.is_disjoint(s) {
                    rest.push(b);
                } else {
                    merged.0 = merged.0.union(b.0);
                    merged.1.extend(b.1);
                }
            }
            rest.push(merged);
            blocks = rest;
        }
        let components = blocks
            .into_iter()
            .map(|(_, rows)| {
                LinearCode::from_raw(code.field(), rows).expect("RREF rows are nonzero")
            })
            .collect();
        Self::new(code.clone(), components).expect("row-graph components form a decomposition")
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn components(&self) -> &[LinearCode] {
        &self.components
    }

    pub fn j0(&self) -> ElementSet {
        self.j0
    }

    /// `(j0; supp(C_1), …, supp(C_r))`
    pub fn partition(&self) -> PointedPartition {
        PointedPartition::new(
            self.code.n(),
            self.j0,
            self.components.iter().map(LinearCode::support).collect(),
        )
        .expect("decomposition supports form a pointed partition")
    }

    pub fn profile(&self) -> Profile {
        let mut rest: Vec<(usize, usize)> = self
            .components
            .iter()
            .map(|c| (c.support().len(), c.dimension()))
            .collect();
        rest.sort();
        let mut pairs = vec![(self.j0.len(), self.j0.len())];
        pairs.extend(rest);
        Profile(pairs)
    }

    /// `n_i − k_i` per component, in component order.
    pub fn deficiencies(&self) -> Vec<usize> {
        self.components
            .iter()
            .map(|c| c.support().len() - c.dimension())
            .collect()
    }

    /// `Σ_{i ≥ 1} q^(n_i − k_i)`; `C_0` does not contribute.
    pub fn complexity(&self) -> Complexity {
        let q = self.code.field().q();
        self.deficiencies()
            .into_iter()
            .map(|d| Complexity::power(q, d))
            .sum()
    }

    /// Coarsens by merging the components listed in each group. Every
    /// component index must appear in exactly one group.
    pub fn merge(&self, groups: &[Vec<usize>]) -> Result<Self> {
        let mut seen = vec![false; self.components.len()];
        let mut merged = Vec::with_capacity(groups.len());
        for g in groups {
            let mut rows = Vec::new();
            for &i in g {
                if i >= seen.len() || seen[i] {
                    return Err(Error::validation(format!(
                        "bad or repeated component index {i}"
                    )));
                }
                seen[i] = true;
                rows.extend(
                    self.components[i]
                        .generator()
                        .iter()
                        .map(|r| r.as_slice().to_vec()),
                );
            }
            merged.push(
                LinearCode::from_raw(self.code.field(), rows)
                    .ok_or_else(|| Error::validation("empty group"))?,
            );
        }
        if seen.contains(&false) {
            return Err(Error::validation("groups do not cover every component"));
        }
        Self::new(self.code.clone(), merged)
    }

    /// Coarsening of minimal complexity: components with `n_i = k_i` are
    /// absorbed into the first component with positive deficiency, or all
    /// merged into one when there is none.
    pub fn cheapest_grouping(&self) -> Self {
        let defs = self.deficiencies();
        let zeros: Vec<usize> = (0..defs.len()).filter(|&i| defs[i] == 0).collect();
        let positive: Vec<usize> = (0..defs.len()).filter(|&i| defs[i] > 0).collect();
        let groups: Vec<Vec<usize>> = match positive.split_first() {
            None => vec![zeros],
            Some((&first, others)) => {
                let mut head = vec![first];
                head.extend(&zeros);
                std::iter::once(head)
                    .chain(others.iter().map(|&i| vec![i]))
                    .collect()
            }
        };
        self.merge(&groups)
            .expect("groups partition the components")
    }
}

/// The unique finest decomposition of `code`.
pub fn maximal_decomposition(code: &LinearCode) -> Decomposition {
    Decomposition::maximal(code)
}

/// Least complexity over all decompositions of `code` (identity frame only).
pub fn min_complexity_over_groupings(code: &LinearCode) -> Complexity {
    let q = code.field().q();
    let defs = Decomposition::maximal(code).deficiencies();
    if defs.iter().all(|&d| d == 0) {
        return Complexity(BigUint::one());
    }
    defs.into_iter()
        .filter(|&d| d > 0)
        .map(|d| Complexity::power(q, d))
        .sum()
}
