//! Linear isometries of `(GF(q)^n, d_P)`.
//!
//! Every isometry is `T = T_σ ∘ A`: first the matrix `A` acts on column
//! vectors, with `A_ij ≠ 0` allowed only when `i ⪯ j` and a nonzero
//! diagonal; then the coordinates are permuted by an automorphism `σ`,
//! `T_σ(x) = (x_σ(1), …, x_σ(n))`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code::support_of;
use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::field::{Field, FieldVector};
use crate::linalg;
use crate::metric::support_weight;
use crate::poset::{Permutation, Poset};

/// Default cap on the number of group elements enumerated.
pub const DEFAULT_GROUP_BUDGET: u128 = 10_000_000;

/// An element of `G_P = S_P ⋉ Δ_P`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PIsometry {
    field: Field,
    sigma: Permutation,
    a: Vec<Vec<u32>>,
}

impl PIsometry {
    /// Validates `sigma ∈ Aut(P)` and the zero pattern and diagonal of `a`.
    pub fn new(poset: &Poset, field: Field, sigma: Permutation, a: Vec<Vec<u32>>) -> Result<Self> {
        let n = poset.n();
        if sigma.len() != n || !poset.is_automorphism(&sigma) {
            return Err(Error::validation(format!(
                "{:?} is not an automorphism of the poset",
                sigma.images().iter().map(|i| i + 1).collect::<Vec<_>>()
            )));
        }
        if a.len() != n || a.iter().any(|r| r.len() != n) {
            return Err(Error::validation(format!("matrix must be {n}×{n}")));
        }
        for (i, row) in a.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v >= field.q() {
                    return Err(Error::validation(format!(
                        "entry {v} is not a residue mod {}",
                        field.q()
                    )));
                }
                if i == j && v == 0 {
                    return Err(Error::validation(format!(
                        "zero diagonal entry at {}",
                        i + 1
                    )));
                }
                if v != 0 && !poset.leq(i, j) {
                    return Err(Error::validation(format!(
                        "entry ({}, {}) must be zero since {} ⋠ {}",
                        i + 1,
                        j + 1,
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(PIsometry { field, sigma, a })
    }

    pub fn identity(field: Field, n: usize) -> Self {
        PIsometry {
            field,
            sigma: Permutation::identity(n),
            a: identity_matrix(n),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    /// The automorphism part `σ_T`.
    pub fn induced_order_map(&self) -> &Permutation {
        &self.sigma
    }

    /// The triangular part `A`.
    pub fn triangular(&self) -> &[Vec<u32>] {
        &self.a
    }

    /// Drops the permutation part, keeping `A`.
    pub fn triangular_part(&self) -> PIsometry {
        PIsometry {
            field: self.field,
            sigma: Permutation::identity(self.n()),
            a: self.a.clone(),
        }
    }

    /// The full matrix `M` with `T(x) = M·x`; row `i` of `M` is row `σ(i)` of `A`.
    pub fn matrix(&self) -> Vec<Vec<u32>> {
        (0..self.n())
            .map(|i| self.a[self.sigma.apply(i)].clone())
            .collect()
    }

    pub fn apply(&self, x: &FieldVector) -> Result<FieldVector> {
        if x.len() != self.n() {
            return Err(Error::validation(format!(
                "vector of length {} for an isometry of size {}",
                x.len(),
                self.n()
            )));
        }
        Ok(self.apply_unchecked(x))
    }

    fn apply_unchecked(&self, x: &FieldVector) -> FieldVector {
        let z = linalg::mat_vec(self.field, &self.a, x.as_slice());
        FieldVector::from_residues((0..self.n()).map(|i| z[self.sigma.apply(i)]).collect())
    }

    /// `T(C)` in canonical form.
    pub fn apply_code(&self, code: &LinearCode) -> Result<LinearCode> {
        if code.n() != self.n() || code.field() != self.field {
            return Err(Error::validation(
                "code and isometry live in different spaces",
            ));
        }
        Ok(code
            .map(|r| self.apply_unchecked(r))
            .expect("invertible map keeps the code nonzero"))
    }

    /// Matrix of `T⁻¹`.
    pub fn inverse_matrix(&self) -> Vec<Vec<u32>> {
        linalg::invert(self.field, &self.matrix()).expect("isometries are invertible")
    }
}

fn identity_matrix(n: usize) -> Vec<Vec<u32>> {
    (0..n)
        .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
        .collect()
}

/// `|G_P| = |Aut(P)| · (q−1)^n · q^s`, `s` the number of strict pairs.
pub fn group_size(poset: &Poset, field: Field) -> Result<u128> {
    let autos = poset.automorphisms()?.len() as u128;
    size_with(autos, poset, field)
        .ok_or_else(|| Error::resource("isometry group size", u128::MAX, u128::MAX))
}

fn size_with(autos: u128, poset: &Poset, field: Field) -> Option<u128> {
    let q = field.q() as u128;
    autos
        .checked_mul((q - 1).checked_pow(poset.n() as u32)?)?
        .checked_mul(q.checked_pow(poset.strict_pair_count() as u32)?)
}

/// The group `G_P` as an indexed, deterministic sequence: automorphisms in
/// lexicographic order, then matrices with entries read row-major in
/// lexicographic order (first entry most significant).
#[derive(Clone, Debug)]
pub struct IsometryGroup {
    poset: Poset,
    field: Field,
    autos: Vec<Permutation>,
    /// Allowed `(i, j)` positions (`i ⪯ j`), row-major.
    slots: Vec<(usize, usize)>,
    matrices: u128,
}

impl IsometryGroup {
    /// Fails with a resource error when `|G_P|` exceeds `budget`.
    pub fn new(poset: &Poset, field: Field, budget: u128) -> Result<Self> {
        let group = Self::unbounded(poset, field)?;
        if group.len() > budget {
            return Err(Error::resource(
                "isometry group enumeration",
                group.len(),
                budget,
            ));
        }
        Ok(group)
    }

    /// No budget; still fails when `|G_P|` does not fit in a u128.
    pub fn unbounded(poset: &Poset, field: Field) -> Result<Self> {
        let autos = poset.automorphisms()?;
        let size = size_with(autos.len() as u128, poset, field)
            .ok_or_else(|| Error::resource("isometry group size", u128::MAX, u128::MAX))?;
        let n = poset.n();
        let slots = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| poset.leq(i, j))
            .collect();
        let matrices = size / autos.len() as u128;
        Ok(IsometryGroup {
            poset: poset.clone(),
            field,
            autos,
            slots,
            matrices,
        })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> u128 {
        self.matrices * self.autos.len() as u128
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The element at position `index` of the enumeration order.
    pub fn get(&self, index: u128) -> PIsometry {
        assert!(index < self.len(), "isometry index out of range");
        let q = self.field.q();
        let sigma = self.autos[(index / self.matrices) as usize].clone();
        let mut rest = index % self.matrices;
        let n = self.poset.n();
        let mut a = vec![vec![0u32; n]; n];
        for &(i, j) in self.slots.iter().rev() {
            if i == j {
                let radix = (q - 1) as u128;
                a[i][j] = (rest % radix) as u32 + 1;
                rest /= radix;
            } else {
                a[i][j] = (rest % q as u128) as u32;
                rest /= q as u128;
            }
        }
        PIsometry {
            field: self.field,
            sigma,
            a,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = PIsometry> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }
}

/// Checks that the linear map `m` (acting as `x ↦ m·x`) is invertible and
/// preserves `ω_P`. Exhaustive when `q^n ≤ 2^20`, otherwise sampled.
pub fn verify_isometry(poset: &Poset, field: Field, m: &[Vec<u32>], seed: u64) -> bool {
    let n = poset.n();
    if m.len() != n || m.iter().any(|r| r.len() != n) {
        return false;
    }
    if linalg::invert(field, m).is_none() {
        return false;
    }
    let preserves = |x: &FieldVector| {
        let y = linalg::mat_vec(field, m, x.as_slice());
        support_weight(poset, support_of(x))
            == support_weight(poset, support_of(&FieldVector::from_residues(y)))
    };
    match field.space_size(n) {
        Some(size) if size <= 1 << 20 => field.all_vectors(n).all(|x| preserves(&x)),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..20_000).all(|_| {
                let x = FieldVector::from_residues(
                    (0..n).map(|_| rng.gen_range(0..field.q())).collect(),
                );
                preserves(&x)
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn f(q: u32) -> Field {
        Field::new(q).unwrap()
    }

    fn p_a() -> Poset {
        Poset::from_covers(4, &[(0, 2), (0, 3), (1, 3)]).unwrap()
    }

    /// `x ↦ (x_1 − x_n, …, x_{n−1} − x_n, x_n)` on a chain.
    fn shear(field: Field, n: usize) -> Vec<Vec<u32>> {
        let mut a = identity_matrix(n);
        for row in a.iter_mut().take(n - 1) {
            row[n - 1] = field.neg(1);
        }
        a
    }

    #[test]
    fn shear_maps_all_ones_to_last_unit() {
        let field = f(2);
        let chain = Poset::chain(4).unwrap();
        let t = PIsometry::new(&chain, field, Permutation::identity(4), shear(field, 4)).unwrap();
        assert_eq!(
            t.apply(&field.vector([1, 1, 1, 1])).unwrap(),
            field.vector([0, 0, 0, 1])
        );
        assert!(t.induced_order_map().is_identity());
        assert!(verify_isometry(&chain, field, &t.matrix(), 0));
        let f3 = f(3);
        let t3 = PIsometry::new(
            &Poset::chain(3).unwrap(),
            f3,
            Permutation::identity(3),
            shear(f3, 3),
        )
        .unwrap();
        assert_eq!(
            t3.apply(&f3.vector([1, 1, 1])).unwrap(),
            f3.vector([0, 0, 1])
        );
    }

    #[test]
    fn construction_checks() {
        let field = f(2);
        let id = PIsometry::identity(field, 3);
        let x = field.vector([1, 0, 1]);
        assert_eq!(id.apply(&x).unwrap(), x);
        let anti = Poset::antichain(3).unwrap();
        let mut a = identity_matrix(3);
        a[0][1] = 1;
        assert!(PIsometry::new(&anti, field, Permutation::identity(3), a).is_err());
        let mut a = identity_matrix(3);
        a[1][1] = 0;
        assert!(PIsometry::new(&anti, field, Permutation::identity(3), a).is_err());
        let swap = Permutation::from_images(vec![1, 0]).unwrap();
        assert!(
            PIsometry::new(&Poset::chain(2).unwrap(), field, swap, identity_matrix(2)).is_err()
        );
    }

    #[test]
    fn group_sizes() {
        assert_eq!(group_size(&p_a(), f(2)).unwrap(), 8);
        assert_eq!(group_size(&Poset::antichain(4).unwrap(), f(2)).unwrap(), 24);
        assert_eq!(group_size(&Poset::chain(2).unwrap(), f(3)).unwrap(), 12);
    }

    #[test]
    fn enumeration_counts_and_budget() {
        let g = IsometryGroup::new(&p_a(), f(2), DEFAULT_GROUP_BUDGET).unwrap();
        assert_eq!(g.len(), 8);
        let all: HashSet<_> = g.iter().map(|t| t.matrix()).collect();
        assert_eq!(all.len(), 8);
        let g = IsometryGroup::new(&Poset::antichain(3).unwrap(), f(2), 100).unwrap();
        let maps: Vec<_> = g.iter().collect();
        assert_eq!(maps.len(), 6);
        assert!(maps.iter().all(|t| t.triangular() == identity_matrix(3)));
        let err = IsometryGroup::new(&Poset::chain(5).unwrap(), f(3), 1000).unwrap_err();
        assert!(err.is_resource());
        // chain(2) over GF(3): 12 distinct elements
        let g = IsometryGroup::new(&Poset::chain(2).unwrap(), f(3), 100).unwrap();
        let all: HashSet<_> = g.iter().map(|t| t.matrix()).collect();
        assert_eq!(all.len(), 12);
    }

    #[test]
    fn enumerated_elements_preserve_weight() {
        let field = f(2);
        for p in [
            p_a(),
            Poset::chain(4).unwrap(),
            Poset::hierarchical(&[1, 2, 1]).unwrap(),
        ] {
            let g = IsometryGroup::new(&p, field, DEFAULT_GROUP_BUDGET).unwrap();
            for t in g.iter() {
                for x in field.all_vectors(4) {
                    let y = t.apply(&x).unwrap();
                    assert_eq!(
                        crate::metric::pweight(&p, &x).unwrap(),
                        crate::metric::pweight(&p, &y).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn closure_under_composition() {
        let field = f(2);
        for p in [
            p_a(),
            Poset::hierarchical(&[2, 2]).unwrap(),
            Poset::from_covers(4, &[(0, 1), (2, 3)]).unwrap(),
        ] {
            let g = IsometryGroup::new(&p, field, DEFAULT_GROUP_BUDGET).unwrap();
            let all: HashSet<_> = g.iter().map(|t| t.matrix()).collect();
            let elems: Vec<_> = g.iter().collect();
            for (k, s) in elems.iter().enumerate().take(12) {
                for t in elems.iter().skip(k).take(9) {
                    let prod = linalg::mat_mul(field, &s.matrix(), &t.matrix());
                    assert!(all.contains(&prod));
                }
            }
        }
    }

    #[test]
    fn verify_examples() {
        let field = f(2);
        let chain2 = Poset::chain(2).unwrap();
        assert!(!verify_isometry(
            &chain2,
            field,
            &[vec![0, 1], vec![1, 0]],
            0
        ));
        let f5 = f(5);
        let p = p_a();
        let diag = vec![
            vec![2, 0, 0, 0],
            vec![0, 3, 0, 0],
            vec![0, 0, 4, 0],
            vec![0, 0, 0, 1],
        ];
        assert!(verify_isometry(&p, f5, &diag, 0));
        assert!(!verify_isometry(&p, f5, &vec![vec![0u32; 4]; 4], 0));
    }

    #[test]
    fn induced_maps() {
        let field = f(2);
        let h = Poset::hierarchical(&[2, 2]).unwrap();
        let sigma = Permutation::from_images(vec![1, 0, 2, 3]).unwrap();
        let t = PIsometry::new(&h, field, sigma.clone(), identity_matrix(4)).unwrap();
        assert_eq!(t.induced_order_map(), &sigma);
        let mut a = identity_matrix(4);
        a[0][2] = 1;
        let t = PIsometry::new(&h, field, sigma.clone(), a).unwrap();
        assert_eq!(t.induced_order_map(), &sigma);
        assert!(t.triangular_part().induced_order_map().is_identity());
    }

    #[test]
    fn delta_inclusion_under_refinement() {
        // all posets on [3] from subsets of the six ordered pairs
        let pairs: Vec<(usize, usize)> = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .filter(|(i, j)| i != j)
            .collect();
        let mut posets = Vec::new();
        for mask in 0u32..64 {
            let covers: Vec<_> = (0..6)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| pairs[b])
                .collect();
            if let Ok(p) = Poset::from_covers(3, &covers) {
                if !posets.contains(&p) {
                    posets.push(p);
                }
            }
        }
        assert_eq!(posets.len(), 19);
        let field = f(2);
        for p in &posets {
            for q in &posets {
                if !p.is_finer(q).unwrap() {
                    continue;
                }
                let g = IsometryGroup::new(p, field, 1000).unwrap();
                for t in g.iter() {
                    let a = t.triangular().to_vec();
                    assert!(PIsometry::new(q, field, Permutation::identity(3), a).is_ok());
                }
            }
        }
    }
}
