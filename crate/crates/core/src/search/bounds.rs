//! Comparisons of `O_P(C)` across posets.

use super::{
    lower_neighbour, minimal_complexity, primary_decomposition, upper_neighbour, Budgets,
    SearchError,
};
use crate::code::LinearCode;
use crate::decomposition::Complexity;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poset::Poset;

/// Default cap on the number of subspaces [`all_subspaces`] may list.
pub const DEFAULT_SUBSPACE_LIMIT: usize = 100_000;

/// `O_{P⁺}(C) ≤ O_P(C) ≤ O_{P⁻}(C)` for one code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsReport {
    pub upper: Poset,
    pub lower: Poset,
    pub o_upper: Complexity,
    /// Exact unless `o_p_proven` is false, in which case it is the best value
    /// seen before the group budget ran out.
    pub o_p: Complexity,
    pub o_p_proven: bool,
    pub o_lower: Complexity,
}

impl BoundsReport {
    pub fn sandwich_holds(&self) -> bool {
        self.o_upper <= self.o_p && self.o_p <= self.o_lower
    }
}

/// Computes `O_P(C)` and the hierarchical bounds from `P⁺` and `P⁻`.
pub fn hierarchy_bounds(
    code: &LinearCode,
    poset: &Poset,
    budgets: Budgets,
) -> Result<BoundsReport, SearchError> {
    let upper = upper_neighbour(poset);
    let lower = lower_neighbour(poset);
    let (o_p, o_p_proven) = match primary_decomposition(code, poset, budgets) {
        Ok(pd) => (pd.complexity(), true),
        Err(SearchError::Budget {
            best_so_far: Some(pd),
            ..
        }) => (pd.complexity(), false),
        Err(e) => return Err(e),
    };
    let o_upper = minimal_complexity(code, &upper, budgets)?;
    let o_lower = minimal_complexity(code, &lower, budgets)?;
    Ok(BoundsReport {
        upper,
        lower,
        o_upper,
        o_p,
        o_p_proven,
        o_lower,
    })
}

/// `O_P(C)` and `O_Q(C)` for `P ≤ Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneReport {
    pub o_p: Complexity,
    pub o_q: Complexity,
}

impl MonotoneReport {
    /// `O_Q(C) ≤ O_P(C)`.
    pub fn holds(&self) -> bool {
        self.o_q <= self.o_p
    }
}

pub fn monotonicity_check(
    code: &LinearCode,
    p: &Poset,
    q: &Poset,
    budgets: Budgets,
) -> Result<MonotoneReport, SearchError> {
    if !p.is_finer(q)? {
        return Err(SearchError::Invalid(Error::validation(
            "the first poset is not finer than the second",
        )));
    }
    Ok(MonotoneReport {
        o_p: minimal_complexity(code, p, budgets)?,
        o_q: minimal_complexity(code, q, budgets)?,
    })
}

/// A code separating `P < Q`: `O_Q(C) < O_P(C)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinementWitness {
    pub code: LinearCode,
    pub o_p: Complexity,
    pub o_q: Complexity,
}

/// First code, by dimension and then canonical form, whose complexity drops
/// strictly from `P` to `Q`. Requires `P < Q`.
///
/// For any relation `i ≺ j` of `Q` missing from `P`, `span{e_i + e_j}` is
/// such a code, so the search ends within the one-dimensional codes.
pub fn witness_refinement(
    p: &Poset,
    q: &Poset,
    field: Field,
    budgets: Budgets,
    subspace_limit: usize,
) -> Result<Option<RefinementWitness>, SearchError> {
    if !p.is_finer(q)? || p == q {
        return Err(SearchError::Invalid(Error::validation(
            "the first poset is not strictly finer than the second",
        )));
    }
    for code in all_subspaces(field, p.n(), subspace_limit)? {
        let o_p = minimal_complexity(&code, p, budgets)?;
        let o_q = minimal_complexity(&code, q, budgets)?;
        if o_q < o_p {
            return Ok(Some(RefinementWitness { code, o_p, o_q }));
        }
    }
    Ok(None)
}

/// Every nonzero subspace of `GF(q)^n`, by dimension and then canonical form.
pub fn all_subspaces(field: Field, n: usize, limit: usize) -> Result<Vec<LinearCode>> {
    let mut out = Vec::new();
    for k in 1..=n {
        let mut layer = Vec::new();
        for pivots in combinations(n, k) {
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|r| {
                    let pivots = &pivots;
                    (pivots[r] + 1..n)
                        .filter(move |c| !pivots.contains(c))
                        .map(move |c| (r, c))
                })
                .collect();
            for values in field.all_vectors(free.len()) {
                if out.len() + layer.len() >= limit {
                    return Err(Error::resource(
                        "subspace enumeration",
                        limit as u128 + 1,
                        limit as u128,
                    ));
                }
                let mut rows = vec![vec![0u32; n]; k];
                for (r, &p) in pivots.iter().enumerate() {
                    rows[r][p] = 1;
                }
                for (&(r, c), &v) in free.iter().zip(values.as_slice()) {
                    rows[r][c] = v;
                }
                layer.push(LinearCode::from_raw(field, rows).expect("RREF rows are independent"));
            }
        }
        layer.sort();
        out.extend(layer);
    }
    Ok(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::new(2).unwrap()
    }

    #[test]
    fn subspace_counts_are_gaussian_binomial_sums() {
        // Σ_k [4 choose k]_2 = 15 + 35 + 15 + 1
        assert_eq!(all_subspaces(f2(), 4, 1000).unwrap().len(), 66);
        // [3 choose 1]_3 + [3 choose 2]_3 + 1 = 13 + 13 + 1
        assert_eq!(
            all_subspaces(Field::new(3).unwrap(), 3, 1000)
                .unwrap()
                .len(),
            27
        );
        assert!(all_subspaces(f2(), 4, 10).unwrap_err().is_resource());
    }

    #[test]
    fn small_poset_bounds() {
        let r4 = LinearCode::from_generators(f2(), 4, vec![f2().vector([1, 1, 1, 1])]).unwrap();
        let p = Poset::from_covers(4, &[(0, 2), (0, 3), (1, 3)]).unwrap();
        let report = hierarchy_bounds(&r4, &p, Budgets::default()).unwrap();
        assert_eq!(report.o_upper, Complexity::from_u64(2));
        assert_eq!(report.o_p, Complexity::from_u64(2));
        assert_eq!(report.o_lower, Complexity::from_u64(8));
        assert!(report.o_p_proven && report.sandwich_holds());
    }

    #[test]
    fn two_point_witness() {
        let w = witness_refinement(
            &Poset::antichain(2).unwrap(),
            &Poset::chain(2).unwrap(),
            f2(),
            Budgets::default(),
            DEFAULT_SUBSPACE_LIMIT,
        )
        .unwrap()
        .unwrap();
        assert_eq!(
            w.code,
            LinearCode::from_generators(f2(), 2, vec![f2().vector([1, 1])]).unwrap()
        );
        assert_eq!(
            (w.o_p, w.o_q),
            (Complexity::from_u64(2), Complexity::from_u64(1))
        );
        let same = Poset::chain(2).unwrap();
        assert!(witness_refinement(&same, &same, f2(), Budgets::default(), 10).is_err());
    }

    #[test]
    fn monotone_on_chain_over_antichain() {
        let code = LinearCode::from_generators(
            f2(),
            3,
            vec![f2().vector([1, 0, 1]), f2().vector([0, 1, 1])],
        )
        .unwrap();
        let r = monotonicity_check(
            &code,
            &Poset::antichain(3).unwrap(),
            &Poset::chain(3).unwrap(),
            Budgets::default(),
        )
        .unwrap();
        assert!(r.holds());
        assert!(monotonicity_check(
            &code,
            &Poset::chain(3).unwrap(),
            &Poset::antichain(3).unwrap(),
            Budgets::default()
        )
        .is_err());
    }
}
