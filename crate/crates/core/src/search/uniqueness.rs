//! Profiles of maximal P-decompositions.
//!
//! A component `K` with support `S` is irreducible when no isometry of the
//! induced order `P|S` shrinks its support or splits it. A P-decomposition is
//! maximal when every component is irreducible; the orbit scan collects the
//! profile of every such decomposition.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::{Budgets, Orbit, SearchError};
use crate::code::LinearCode;
use crate::decomposition::{Decomposition, Profile};
use crate::error::Result;
use crate::isometry::IsometryGroup;
use crate::poset::Poset;
use crate::subset::ElementSet;

/// Outcome of scanning an orbit for maximal decompositions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileReport {
    /// Distinct codes in the orbit.
    pub orbit_size: usize,
    /// Orbit codes whose finest decomposition has only irreducible parts.
    pub maximal_count: usize,
    /// Each profile seen, with the first orbit code showing it.
    pub profiles: BTreeMap<Profile, LinearCode>,
}

impl ProfileReport {
    pub fn is_unique(&self) -> bool {
        self.profiles.len() == 1
    }

    /// The common profile when it is unique.
    pub fn profile(&self) -> Option<&Profile> {
        match self.profiles.len() {
            1 => self.profiles.keys().next(),
            _ => None,
        }
    }
}

/// Scans the `G_P`-orbit of `code` and collects the profile of every
/// maximal P-decomposition.
pub fn verify_profile_uniqueness(
    code: &LinearCode,
    poset: &Poset,
    budgets: Budgets,
) -> Result<ProfileReport, SearchError> {
    let orbit = Orbit::new(code, poset, budgets)?;
    let mut memo: HashMap<(ElementSet, LinearCode), bool> = HashMap::new();
    let mut profiles = BTreeMap::new();
    let mut maximal_count = 0;
    for (image, _) in orbit.codes() {
        let dec = Decomposition::maximal(image);
        let mut all = true;
        for c in dec.components() {
            let s = c.support();
            let key = (s, c.clone());
            let irreducible = match memo.get(&key) {
                Some(&v) => v,
                None => {
                    let v = is_irreducible(c, poset, budgets)?;
                    memo.insert(key, v);
                    v
                }
            };
            if !irreducible {
                all = false;
                break;
            }
        }
        if all {
            maximal_count += 1;
            profiles
                .entry(dec.profile())
                .or_insert_with(|| image.clone());
        }
    }
    Ok(ProfileReport {
        orbit_size: orbit.len(),
        maximal_count,
        profiles,
    })
}

/// Whether `component` (a code of length `n` with support `S`) is
/// irreducible for the order `P|S`.
pub fn is_irreducible(component: &LinearCode, poset: &Poset, budgets: Budgets) -> Result<bool> {
    let s = component.support();
    if s.len() <= 1 {
        return Ok(true);
    }
    let positions: Vec<usize> = s.iter().collect();
    let local = component
        .restrict(&positions)
        .expect("support coordinates keep the code");
    let sub = poset.induced(s);
    let group = IsometryGroup::new(&sub, local.field(), budgets.group)?;
    let full = ElementSet::full(positions.len());
    let reducible = (0..group.len() as u64).into_par_iter().any(|i| {
        let image = group.get(i as u128).apply_code(&local).expect("same space");
        image.support() != full || Decomposition::maximal(&image).components().len() > 1
    });
    Ok(!reducible)
}
