//! Search over the isometry orbit of a code.
//!
//! The orbit `{T(C) : T ∈ G_P}` is scanned in parallel. Every distinct image
//! is kept with the smallest group index that produces it, so results do not
//! depend on thread scheduling.

mod bounds;
mod neighbours;
mod uniqueness;

use std::collections::HashMap;

use rayon::prelude::*;

use crate::code::LinearCode;
use crate::decomposition::{min_complexity_over_groupings, Complexity, Decomposition, Profile};
use crate::error::{Error, Result};
use crate::field::FieldVector;
use crate::isometry::{IsometryGroup, PIsometry, DEFAULT_GROUP_BUDGET};
use crate::poset::Poset;

pub use bounds::{
    all_subspaces, hierarchy_bounds, monotonicity_check, witness_refinement, BoundsReport,
    MonotoneReport, RefinementWitness, DEFAULT_SUBSPACE_LIMIT,
};
pub use neighbours::{hierarchical_posets, lower_neighbour, upper_neighbour, MAX_HIERARCHICAL_N};
pub use uniqueness::{is_irreducible, verify_profile_uniqueness, ProfileReport};

/// Default cap on distinct orbit codes.
pub const DEFAULT_ORBIT_BUDGET: usize = 100_000;

/// Enumeration caps shared by every search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budgets {
    /// Group elements scanned.
    pub group: u128,
    /// Distinct codes kept from one orbit.
    pub orbit: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            group: DEFAULT_GROUP_BUDGET,
            orbit: DEFAULT_ORBIT_BUDGET,
        }
    }
}

/// Failure of a search. A budget failure may still carry the best
/// decomposition seen before the scan stopped; it is not proven minimal.
#[derive(Debug, thiserror::Error)]
pub enum SearchError {
    #[error(transparent)]
    Invalid(Error),
    #[error("{source} (result is not proven minimal)")]
    Budget {
        source: Error,
        best_so_far: Option<Box<PDecomposition>>,
    },
}

impl SearchError {
    pub fn is_budget(&self) -> bool {
        matches!(self, SearchError::Budget { .. })
    }

    pub fn error(&self) -> &Error {
        match self {
            SearchError::Invalid(e) => e,
            SearchError::Budget { source, .. } => source,
        }
    }
}

impl From<Error> for SearchError {
    fn from(e: Error) -> Self {
        if e.is_resource() {
            SearchError::Budget {
                source: e,
                best_so_far: None,
            }
        } else {
            SearchError::Invalid(e)
        }
    }
}

/// The distinct codes of a `G_P`-orbit, each with the first group index
/// mapping the original code onto it. Sorted by canonical form.
#[derive(Clone, Debug)]
pub struct Orbit {
    group: IsometryGroup,
    source: LinearCode,
    codes: Vec<(LinearCode, u128)>,
}

impl Orbit {
    /// Full orbit; fails when either budget would be exceeded.
    pub fn new(code: &LinearCode, poset: &Poset, budgets: Budgets) -> Result<Self> {
        check_space(code, poset)?;
        let group = IsometryGroup::new(poset, code.field(), budgets.group)?;
        let orbit = Self::scan(group, code, u128::MAX);
        orbit.check_orbit_budget(budgets)?;
        Ok(orbit)
    }

    /// Scans the first `limit` group elements.
    fn scan(group: IsometryGroup, code: &LinearCode, limit: u128) -> Self {
        let end = group.len().min(limit).min(u64::MAX as u128);
        let map = (0..end as u64)
            .into_par_iter()
            .fold(HashMap::new, |mut m: HashMap<LinearCode, u128>, i| {
                let image = group
                    .get(i as u128)
                    .apply_code(code)
                    .expect("group and code share the space");
                m.entry(image)
                    .and_modify(|v| *v = (*v).min(i as u128))
                    .or_insert(i as u128);
                m
            })
            .reduce(HashMap::new, |mut a, b| {
                for (c, i) in b {
                    a.entry(c).and_modify(|v| *v = (*v).min(i)).or_insert(i);
                }
                a
            });
        let mut codes: Vec<_> = map.into_iter().collect();
        codes.sort();
        Orbit {
            group,
            source: code.clone(),
            codes,
        }
    }

    fn check_orbit_budget(&self, budgets: Budgets) -> Result<()> {
        if self.codes.len() > budgets.orbit {
            return Err(Error::resource(
                "distinct orbit codes",
                self.codes.len() as u128,
                budgets.orbit as u128,
            ));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn group(&self) -> &IsometryGroup {
        &self.group
    }

    pub fn source(&self) -> &LinearCode {
        &self.source
    }

    /// `(T(C), index of T)` pairs in canonical-form order.
    pub fn codes(&self) -> &[(LinearCode, u128)] {
        &self.codes
    }

    pub fn witness(&self, index: u128) -> PIsometry {
        self.group.get(index)
    }

    pub fn contains(&self, code: &LinearCode) -> bool {
        self.codes.binary_search_by(|(c, _)| c.cmp(code)).is_ok()
    }
}

fn check_space(code: &LinearCode, poset: &Poset) -> Result<()> {
    if code.n() != poset.n() {
        return Err(Error::validation(format!(
            "code of length {} on a poset of size {}",
            code.n(),
            poset.n()
        )));
    }
    Ok(())
}

/// A P-decomposition of `source`: the witness `T ∈ G_P` and a decomposition
/// of `T(source)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PDecomposition {
    source: LinearCode,
    witness: PIsometry,
    decomposition: Decomposition,
}

impl PDecomposition {
    /// Checks that `decomposition` decomposes `witness(source)`.
    pub fn new(
        source: LinearCode,
        witness: PIsometry,
        decomposition: Decomposition,
    ) -> Result<Self> {
        if &witness.apply_code(&source)? != decomposition.code() {
            return Err(Error::validation(
                "the decomposition is not of the transported code",
            ));
        }
        Ok(PDecomposition {
            source,
            witness,
            decomposition,
        })
    }

    /// Decomposition in the identity frame.
    pub fn identity(decomposition: Decomposition) -> Self {
        let code = decomposition.code().clone();
        PDecomposition {
            witness: PIsometry::identity(code.field(), code.n()),
            source: code,
            decomposition,
        }
    }

    pub fn source(&self) -> &LinearCode {
        &self.source
    }

    pub fn witness(&self) -> &PIsometry {
        &self.witness
    }

    pub fn decomposition(&self) -> &Decomposition {
        &self.decomposition
    }

    pub fn complexity(&self) -> Complexity {
        self.decomposition.complexity()
    }

    pub fn profile(&self) -> Profile {
        self.decomposition.profile()
    }

    /// Whether this is also a decomposition for `poset`: the witness must be
    /// an element of `G_poset` and must carry the source onto the code.
    pub fn is_valid_for(&self, poset: &Poset) -> bool {
        let w = &self.witness;
        PIsometry::new(
            poset,
            w.field(),
            w.induced_order_map().clone(),
            w.triangular().to_vec(),
        )
        .is_ok_and(|t| t.apply_code(&self.source).ok().as_ref() == Some(self.decomposition.code()))
    }
}

/// A primary P-decomposition: least complexity over the whole orbit. Ties go
/// to the smallest canonical form of `T(C)`, then to the smallest group index.
///
/// When the group exceeds `budgets.group`, only the first `budgets.group`
/// elements are scanned and the best of those comes back inside the error.
pub fn primary_decomposition(
    code: &LinearCode,
    poset: &Poset,
    budgets: Budgets,
) -> Result<PDecomposition, SearchError> {
    check_space(code, poset)?;
    let group = IsometryGroup::unbounded(poset, code.field())?;
    let size = group.len();
    let orbit = Orbit::scan(group, code, budgets.group);
    let best = best_in_orbit(&orbit);
    let over = if size > budgets.group {
        Some(Error::resource(
            "isometry group enumeration",
            size,
            budgets.group,
        ))
    } else {
        orbit.check_orbit_budget(budgets).err()
    };
    match over {
        Some(source) => Err(SearchError::Budget {
            source,
            best_so_far: Some(Box::new(best)),
        }),
        None => Ok(best),
    }
}

/// `O_P(C)`.
pub fn minimal_complexity(
    code: &LinearCode,
    poset: &Poset,
    budgets: Budgets,
) -> Result<Complexity, SearchError> {
    primary_decomposition(code, poset, budgets).map(|pd| pd.complexity())
}

fn best_in_orbit(orbit: &Orbit) -> PDecomposition {
    // codes are sorted, so the first strict minimum wins the canonical-form tie
    let (image, index) = orbit
        .codes
        .par_iter()
        .map(|(c, i)| (min_complexity_over_groupings(c), c, *i))
        .min_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(b.1)))
        .map(|(_, c, i)| (c.clone(), i))
        .expect("an orbit is never empty");
    PDecomposition {
        source: orbit.source.clone(),
        witness: orbit.witness(index),
        decomposition: Decomposition::maximal(&image).cheapest_grouping(),
    }
}

/// Replaces the witness `T = T_σ ∘ A` by `A` alone. The new code is `A(C)`
/// and the components are pulled back through `T_σ`. The result is a
/// decomposition for every poset above `P`, with the same complexity.
pub fn strip_permutation(pd: &PDecomposition) -> PDecomposition {
    let a = pd.witness.triangular_part();
    let sigma = pd.witness.induced_order_map();
    let n = sigma.len();
    // (T_σ⁻¹ y)_j = y_{σ⁻¹(j)}
    let inv = sigma.inverse();
    let pull =
        |y: &FieldVector| FieldVector::from_residues((0..n).map(|j| y[inv.apply(j)]).collect());
    let code = a.apply_code(&pd.source).expect("same space");
    let components = pd
        .decomposition
        .components()
        .iter()
        .map(|c| c.map(pull).expect("permutations keep rank"))
        .collect();
    let decomposition =
        Decomposition::new(code, components).expect("permuted decomposition stays valid");
    PDecomposition {
        source: pd.source.clone(),
        witness: a,
        decomposition,
    }
}

/// Moves a P-decomposition along `σ ∈ Aut(P)`: the witness becomes
/// `T_σ ∘ T` and every component is permuted by `T_σ`. Complexity and
/// profile are unchanged.
pub fn conjugate_by_automorphism(
    pd: &PDecomposition,
    poset: &Poset,
    sigma: &crate::poset::Permutation,
) -> Result<PDecomposition> {
    let w = &pd.witness;
    // T_σ ∘ T_τ ∘ A = T_{τ∘σ} ∘ A
    let witness = PIsometry::new(
        poset,
        w.field(),
        w.induced_order_map().compose(sigma),
        w.triangular().to_vec(),
    )?;
    let n = sigma.len();
    let push =
        |z: &FieldVector| FieldVector::from_residues((0..n).map(|i| z[sigma.apply(i)]).collect());
    let code = pd
        .decomposition
        .code()
        .map(push)
        .expect("permutations keep rank");
    let components = pd
        .decomposition
        .components()
        .iter()
        .map(|c| c.map(push).expect("permutations keep rank"))
        .collect();
    PDecomposition::new(
        pd.source.clone(),
        witness,
        Decomposition::new(code, components)?,
    )
}
