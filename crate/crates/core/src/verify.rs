//! Randomized and exhaustive property suites.
//!
//! Every suite is deterministic given its configuration: random instances
//! come from a ChaCha8 stream seeded with `seed`. A violation is recorded as
//! a JSON counterexample; the suite keeps going so the report shows them all.

use std::collections::{BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::field::{Field, FieldVector};
use crate::metric::pdist;
use crate::partition::{AggregateRule, PointedPartition};
use crate::poset::Poset;
use crate::search::{
    conjugate_by_automorphism, hierarchical_posets, hierarchy_bounds, lower_neighbour,
    monotonicity_check, primary_decomposition, strip_permutation, upper_neighbour,
    verify_profile_uniqueness, witness_refinement, Budgets, SearchError, DEFAULT_SUBSPACE_LIMIT,
};
use crate::subset::ElementSet;

/// Largest ground set for [`all_posets`].
pub const MAX_CATALOG_N: usize = 5;

/// Common suite parameters. `n` is the largest ground set; instance sizes
/// are drawn from `2..=n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub n: usize,
    pub q: u32,
    pub samples: usize,
    pub seed: u64,
    #[serde(skip)]
    pub budgets: Budgets,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            n: 4,
            q: 2,
            samples: 50,
            seed: 0,
            budgets: Budgets::default(),
        }
    }
}

impl SuiteConfig {
    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    fn field(&self) -> Result<Field> {
        Field::new(self.q)
    }

    fn draw_n(&self, rng: &mut ChaCha8Rng) -> usize {
        rng.gen_range(self.n.min(2)..=self.n)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub config: SuiteConfig,
    pub instances: u64,
    pub checks: u64,
    /// Instances abandoned because a budget ran out.
    pub skipped: u64,
    pub violations: Vec<Value>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str, config: SuiteConfig) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            config,
            instances: 0,
            checks: 0,
            skipped: 0,
            violations: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn check(&mut self, ok: bool, counterexample: impl FnOnce() -> Value) {
        self.checks += 1;
        if !ok {
            self.violations.push(counterexample());
        }
    }
}

/// A poset from a random linear extension: each pair in extension order
/// becomes a relation with probability `density`.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize, density: f64) -> Poset {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut covers = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(density) {
                covers.push((order[a], order[b]));
            }
        }
    }
    Poset::from_covers(n, &covers).expect("relations follow a linear extension")
}

/// A random nonzero code of length `n` spanned by at most `max_k` rows.
pub fn random_code<R: Rng>(rng: &mut R, field: Field, n: usize, max_k: usize) -> LinearCode {
    let k = rng.gen_range(1..=max_k.clamp(1, n));
    loop {
        let rows = (0..k)
            .map(|_| {
                FieldVector::from(
                    (0..n)
                        .map(|_| rng.gen_range(0..field.q()))
                        .collect::<Vec<_>>(),
                )
            })
            .collect();
        if let Ok(c) = LinearCode::from_generators(field, n, rows) {
            return c;
        }
    }
}

/// A random poset below `q`: the closure of a random subset of its strict
/// relations.
pub fn random_subposet<R: Rng>(rng: &mut R, q: &Poset) -> Poset {
    let keep: Vec<(usize, usize)> = q
        .strict_pairs()
        .into_iter()
        .filter(|_| rng.gen_bool(0.5))
        .collect();
    Poset::from_covers(q.n(), &keep).expect("a subset of a partial order is acyclic")
}

/// Every partial order on `[n]` (labelled), grown one element at a time.
pub fn all_posets(n: usize) -> Result<Vec<Poset>> {
    if n == 0 || n > MAX_CATALOG_N {
        return Err(Error::resource(
            "poset catalog (ground set size)",
            n as u128,
            MAX_CATALOG_N as u128,
        ));
    }
    let mut layer: Vec<Vec<ElementSet>> = vec![vec![]];
    for k in 0..n {
        let mut next = Vec::new();
        for down in &layer {
            let below = |d: ElementSet| d.iter().all(|j| down[j].is_subset(d));
            let above = |u: ElementSet| {
                (0..k).all(|i| {
                    !u.contains(i) || (0..k).all(|j| !down[j].contains(i) || u.contains(j))
                })
            };
            for db in 0..1u32 << k {
                let d = ElementSet::from_bits(db);
                if !below(d) {
                    continue;
                }
                for ub in 0..1u32 << k {
                    let u = ElementSet::from_bits(ub);
                    if !u.is_disjoint(d) || !above(u) || !u.iter().all(|x| d.is_subset(down[x])) {
                        continue;
                    }
                    let mut grown: Vec<ElementSet> = down
                        .iter()
                        .enumerate()
                        .map(|(j, &s)| {
                            let mut s = s;
                            if u.contains(j) {
                                s.insert(k);
                            }
                            s
                        })
                        .collect();
                    let mut own = d;
                    own.insert(k);
                    grown.push(own);
                    next.push(grown);
                }
            }
        }
        layer = next;
    }
    layer.into_iter().map(Poset::from_down_sets).collect()
}

/// Every pointed partition of `[n]`.
pub fn all_pointed_partitions(n: usize) -> Result<Vec<PointedPartition>> {
    if n > crate::partition::MAX_SUCCESSOR_N {
        return Err(Error::resource(
            "pointed partition catalog (ground set size)",
            n as u128,
            crate::partition::MAX_SUCCESSOR_N as u128,
        ));
    }
    let mut out = Vec::new();
    for bits in 0..1u32 << n {
        let j0 = ElementSet::from_bits(bits);
        let rest: Vec<usize> = ElementSet::full(n).difference(j0).iter().collect();
        for blocks in set_partitions(&rest) {
            out.push(PointedPartition::new(n, j0, blocks)?);
        }
    }
    Ok(out)
}

/// Set partitions of `elems` via restricted growth strings.
pub fn set_partitions(elems: &[usize]) -> Vec<Vec<ElementSet>> {
    fn go(i: usize, elems: &[usize], blocks: &mut Vec<ElementSet>, out: &mut Vec<Vec<ElementSet>>) {
        if i == elems.len() {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].insert(elems[i]);
            go(i + 1, elems, blocks, out);
            blocks[b].remove(elems[i]);
        }
        blocks.push(ElementSet::singleton(elems[i]));
        go(i + 1, elems, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    go(0, elems, &mut Vec::new(), &mut out);
    out
}

fn vec_json(v: &FieldVector) -> Value {
    json!(v.as_slice())
}

/// Metric axioms for `d_P` on random posets; exhaustive over triples when
/// `q^(3n)` is at most `2^21`, sampled otherwise. Also compares the two
/// extreme orders with Hamming and NRT distances.
pub fn metric_suite(config: SuiteConfig) -> Result<SuiteReport> {
    let field = config.field()?;
    let mut rng = config.rng();
    let mut report = SuiteReport::new("metric", config);
    for _ in 0..config.samples {
        let n = config.draw_n(&mut rng);
        let density = rng.gen_range(0.0..1.0);
        let p = random_poset(&mut rng, n, density);
        report.instances += 1;
        let exhaustive = field.space_size(3 * n).is_some_and(|s| s <= 1 << 21);
        let triples: Vec<(FieldVector, FieldVector, FieldVector)> = if exhaustive {
            let all: Vec<FieldVector> = field.all_vectors(n).collect();
            let mut t = Vec::new();
            for x in &all {
                for y in &all {
                    for z in &all {
                        t.push((x.clone(), y.clone(), z.clone()));
                    }
                }
            }
            t
        } else {
            let mut draw = || {
                FieldVector::from(
                    (0..n)
                        .map(|_| rng.gen_range(0..field.q()))
                        .collect::<Vec<_>>(),
                )
            };
            (0..20_000).map(|_| (draw(), draw(), draw())).collect()
        };
        for (x, y, z) in &triples {
            let dxy = pdist(&p, x, y)?;
            let dyx = pdist(&p, y, x)?;
            let dxz = pdist(&p, x, z)?;
            let dzy = pdist(&p, z, y)?;
            let ok = (dxy == 0) == (x == y) && dxy == dyx && dxy <= dxz + dzy;
            report.check(
                ok,
                || json!({"poset": p, "x": vec_json(x), "y": vec_json(y), "z": vec_json(z)}),
            );
        }
    }
    let n = config.n;
    let anti = Poset::antichain(n)?;
    let chain = Poset::chain(n)?;
    let words: Vec<FieldVector> = field.all_vectors(n).take(1 << 12).collect();
    for x in &words {
        for y in &words {
            let differ: Vec<usize> = (0..n).filter(|&i| x[i] != y[i]).collect();
            let hamming = differ.len();
            let nrt = differ.last().map_or(0, |i| i + 1);
            let ok = pdist(&anti, x, y)? == hamming && pdist(&chain, x, y)? == nrt;
            report.check(
                ok,
                || json!({"x": vec_json(x), "y": vec_json(y), "extreme_orders": true}),
            );
        }
    }
    Ok(report)
}

/// Closed-form refinement against breadth-first search over 1-step moves,
/// for all pointed partitions of `[n]`.
pub fn partition_suite(n: usize) -> Result<SuiteReport> {
    let config = SuiteConfig {
        n,
        samples: 0,
        ..SuiteConfig::default()
    };
    let mut report = SuiteReport::new("partition", config);
    let all = all_pointed_partitions(n)?;
    for start in &all {
        report.instances += 1;
        let mut seen = BTreeSet::from([start.clone()]);
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(p) = queue.pop_front() {
            for s in p.one_step_successors(AggregateRule::Proper)? {
                if seen.insert(s.clone()) {
                    queue.push_back(s);
                }
            }
        }
        for target in &all {
            let closed = target.is_refinement_of(start)?;
            report.check(
                closed == seen.contains(target),
                || json!({"from": start, "to": target, "closed_form": closed}),
            );
        }
    }
    Ok(report)
}

/// Profile uniqueness over random `(C, P)`; also checks that maximal
/// P-decompositions exist and that moving a primary decomposition along
/// automorphisms keeps its complexity.
pub fn profile_suite(config: SuiteConfig) -> Result<SuiteReport> {
    let field = config.field()?;
    let mut rng = config.rng();
    let mut report = SuiteReport::new("profile", config);
    for _ in 0..config.samples {
        let n = config.draw_n(&mut rng);
        let density = rng.gen_range(0.0..1.0);
        let p = random_poset(&mut rng, n, density);
        let c = random_code(&mut rng, field, n, n);
        report.instances += 1;
        let outcome = verify_profile_uniqueness(&c, &p, config.budgets)
            .and_then(|r| Ok((r, primary_decomposition(&c, &p, config.budgets)?)));
        let (r, pd) = match outcome {
            Ok(v) => v,
            Err(e) if e.is_budget() => {
                report.skipped += 1;
                continue;
            }
            Err(e) => return Err(e.error().clone()),
        };
        report.check(r.is_unique(), || {
            let profiles: Vec<Value> = r
                .profiles
                .iter()
                .map(|(k, v)| json!({"profile": k, "example": v}))
                .collect();
            json!({"poset": p, "code": c, "profiles": profiles, "maximal_count": r.maximal_count})
        });
        for sigma in p.automorphisms()? {
            let moved = conjugate_by_automorphism(&pd, &p, &sigma)?;
            report.check(
                moved.complexity() == pd.complexity(),
                || json!({"poset": p, "code": c, "automorphism": sigma.images()}),
            );
        }
    }
    Ok(report)
}

/// `O_Q(C) ≤ O_P(C)` for random `P ≤ Q`.
pub fn monotone_suite(config: SuiteConfig) -> Result<SuiteReport> {
    let field = config.field()?;
    let mut rng = config.rng();
    let mut report = SuiteReport::new("monotone", config);
    for _ in 0..config.samples {
        let n = config.draw_n(&mut rng);
        let density = rng.gen_range(0.0..1.0);
        let q = random_poset(&mut rng, n, density);
        let p = random_subposet(&mut rng, &q);
        let c = random_code(&mut rng, field, n, n);
        report.instances += 1;
        match monotonicity_check(&c, &p, &q, config.budgets) {
            Ok(m) => report.check(
                m.holds(),
                || json!({"p": p, "q": q, "code": c, "o_p": m.o_p, "o_q": m.o_q}),
            ),
            Err(e) if e.is_budget() => report.skipped += 1,
            Err(e) => return Err(e.error().clone()),
        }
    }
    Ok(report)
}

/// The complexity sandwich on random instances, validity of stripped
/// witnesses for hierarchical posets above `P`, and, when the catalog is
/// available, `P⁻ ≤ P ≤ P⁺` with `P⁻` greatest and `P⁺` minimal among
/// hierarchical posets on `[n]`.
pub fn bounds_suite(config: SuiteConfig) -> Result<SuiteReport> {
    let field = config.field()?;
    let mut rng = config.rng();
    let mut report = SuiteReport::new("bounds", config);
    for _ in 0..config.samples {
        let n = config.draw_n(&mut rng);
        let density = rng.gen_range(0.0..1.0);
        let p = random_poset(&mut rng, n, density);
        let c = random_code(&mut rng, field, n, n);
        report.instances += 1;
        let b = match hierarchy_bounds(&c, &p, config.budgets) {
            Ok(b) => b,
            Err(e) if e.is_budget() => {
                report.skipped += 1;
                continue;
            }
            Err(e) => return Err(e.error().clone()),
        };
        if b.o_p_proven {
            report.check(b.sandwich_holds(), || {
                json!({"poset": p, "code": c, "o_upper": b.o_upper, "o_p": b.o_p, "o_lower": b.o_lower})
            });
        }
        if n <= crate::search::MAX_HIERARCHICAL_N {
            match primary_decomposition(&c, &p, config.budgets) {
                Ok(pd) => {
                    let stripped = strip_permutation(&pd);
                    for h in hierarchical_posets(n)? {
                        if p.is_finer(&h)? {
                            report.check(stripped.is_valid_for(&h), || {
                                json!({"poset": p, "code": c, "hierarchical": h, "stripped": stripped})
                            });
                        }
                    }
                }
                Err(SearchError::Budget { .. }) => {}
                Err(e) => return Err(e.error().clone()),
            }
        }
    }
    if config.n <= MAX_CATALOG_N {
        let ext = neighbour_extremality(config.n)?;
        report.checks += ext.checked;
        report.violations.extend(ext.violations);
        if ext.no_least_upper > 0 {
            report.notes.push(format!(
                "{} of {} posets on [{}] have several minimal hierarchical upper bounds, so no least one",
                ext.no_least_upper, ext.posets, config.n
            ));
        }
    }
    Ok(report)
}

/// Extremality of the hierarchical neighbours over all posets on `[n]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Extremality {
    pub posets: u64,
    pub checked: u64,
    pub violations: Vec<Value>,
    /// Posets whose hierarchical upper bounds have no least element.
    pub no_least_upper: u64,
    pub first_without_least: Option<Poset>,
}

pub fn neighbour_extremality(n: usize) -> Result<Extremality> {
    let hier = hierarchical_posets(n)?;
    let mut out = Extremality {
        posets: 0,
        checked: 0,
        violations: Vec::new(),
        no_least_upper: 0,
        first_without_least: None,
    };
    for p in all_posets(n)? {
        out.posets += 1;
        let up = upper_neighbour(&p);
        let low = lower_neighbour(&p);
        let below: Vec<&Poset> = hier.iter().filter(|h| h.is_finer(&p).unwrap()).collect();
        let above: Vec<&Poset> = hier.iter().filter(|h| p.is_finer(h).unwrap()).collect();
        let greatest = low.is_hierarchical()
            && low.is_finer(&p)?
            && below.iter().all(|h| h.is_finer(&low).unwrap());
        let minimal = up.is_hierarchical()
            && p.is_finer(&up)?
            && !above.iter().any(|h| **h != up && h.is_finer(&up).unwrap());
        out.checked += 2;
        if !greatest || !minimal {
            out.violations.push(json!({"poset": p, "upper": up, "lower": low, "lower_greatest": greatest, "upper_minimal": minimal}));
        }
        if !above.iter().all(|h| up.is_finer(h).unwrap()) {
            out.no_least_upper += 1;
            out.first_without_least.get_or_insert(p);
        }
    }
    Ok(out)
}

/// Runs [`witness_refinement`] and reports the witness. Finding none is
/// noted, not counted as a violation.
pub fn refinement_witness_suite(
    p: &Poset,
    q: &Poset,
    field: Field,
    budgets: Budgets,
) -> Result<(SuiteReport, Option<Value>)> {
    let config = SuiteConfig {
        n: p.n(),
        q: field.q(),
        samples: 1,
        seed: 0,
        budgets,
    };
    let mut report = SuiteReport::new("refinement-witness", config);
    report.instances = 1;
    let found = match witness_refinement(p, q, field, budgets, DEFAULT_SUBSPACE_LIMIT) {
        Ok(w) => w,
        Err(e) if e.is_budget() => {
            report.skipped = 1;
            None
        }
        Err(e) => return Err(e.error().clone()),
    };
    let witness = found.map(|w| {
        report.check(w.o_q < w.o_p, || json!({"code": w.code}));
        json!({"code": w.code, "o_p": w.o_p, "o_q": w.o_q})
    });
    if witness.is_none() {
        report
            .notes
            .push("no witness within the search bounds (not a disproof)".to_string());
    }
    Ok((report, witness))
}
