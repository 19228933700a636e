//! Componentwise syndrome decoding over a P-decomposition.
//!
//! A received word is carried into the decomposed frame by the witness `T`.
//! Each component is decoded on its own support with a table of coset
//! leaders of least weight for the order induced on that support.
//! Coordinates in `j0` carry no codeword symbols; they are zeroed and
//! reported as flags. The corrected word is carried back with `T⁻¹`.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::code::{LinearCode, ParityData};
use crate::decomposition::Complexity;
use crate::error::{Error, Result};
use crate::field::{Field, FieldVector};
use crate::io::IsometryFile;
use crate::isometry::PIsometry;
use crate::linalg;
use crate::metric::{pdist, pweight};
use crate::poset::Poset;
use crate::search::PDecomposition;
use crate::subset::ElementSet;

/// Default cap on the entries of one component table.
pub const DEFAULT_COSET_BUDGET: u128 = 1 << 20;

/// Cap on the vectors scanned to fill one component table.
pub const MAX_COMPONENT_SCAN: u128 = 1 << 24;

/// Cap on the codewords examined by [`nearest_codeword_oracle`].
pub const MAX_ORACLE_CODEWORDS: u128 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
struct ComponentTable {
    /// Support in the decomposed frame, ascending.
    positions: Vec<usize>,
    /// The component punctured to its support.
    local: LinearCode,
    parity: ParityData,
    leaders: BTreeMap<FieldVector, FieldVector>,
}

impl ComponentTable {
    fn build(component: &LinearCode, poset: &Poset, coset_budget: u128) -> Result<Self> {
        let field = component.field();
        let support = component.support();
        let positions: Vec<usize> = support.iter().collect();
        let m = positions.len();
        let local = component
            .restrict(&positions)
            .expect("a component is nonzero on its support");
        let entries = field.space_size(m - local.dimension()).unwrap_or(u128::MAX);
        if entries > coset_budget {
            return Err(Error::resource(
                "coset table entries",
                entries,
                coset_budget,
            ));
        }
        let scan = field.space_size(m).unwrap_or(u128::MAX);
        if scan > MAX_COMPONENT_SCAN {
            return Err(Error::resource(
                "coset leader scan",
                scan,
                MAX_COMPONENT_SCAN,
            ));
        }
        let sub = poset.induced(support);
        let parity = local.parity();
        let mut best: HashMap<FieldVector, (usize, FieldVector)> = HashMap::new();
        // lexicographic scan with a strict comparison keeps the smallest tie
        for e in field.all_vectors(m) {
            let s = parity.syndrome(&e).expect("local length");
            let w = pweight(&sub, &e).expect("local length");
            match best.get(&s) {
                Some((bw, _)) if *bw <= w => {}
                _ => {
                    best.insert(s, (w, e));
                }
            }
        }
        Ok(ComponentTable {
            positions,
            local,
            parity,
            leaders: best.into_iter().map(|(s, (_, e))| (s, e)).collect(),
        })
    }

    fn expected_entries(&self) -> Complexity {
        let q = self.local.field().q() as u64;
        let d = (self.positions.len() - self.local.dimension()) as u32;
        Complexity::from_u64(q.pow(d))
    }
}

/// Coset-leader tables for every component of a P-decomposition, with the
/// witness that carries the code into the decomposed frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyndromeTable {
    poset: Poset,
    source: LinearCode,
    witness: PIsometry,
    inverse: Vec<Vec<u32>>,
    j0: ElementSet,
    complexity: Complexity,
    components: Vec<ComponentTable>,
}

/// Output of [`SyndromeTable::decode`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoded {
    /// A codeword of the original code.
    pub codeword: FieldVector,
    /// Positions of `j0` (decomposed frame) where the transported word was
    /// nonzero: detected, not corrected.
    pub flags: ElementSet,
}

/// Builds one table per component, in parallel.
pub fn build_table(
    pd: &PDecomposition,
    poset: &Poset,
    coset_budget: u128,
) -> Result<SyndromeTable> {
    if pd.source().n() != poset.n() || !pd.is_valid_for(poset) {
        return Err(Error::validation(
            "the P-decomposition is not valid for this poset",
        ));
    }
    let components = pd
        .decomposition()
        .components()
        .par_iter()
        .map(|c| ComponentTable::build(c, poset, coset_budget))
        .collect::<Result<Vec<_>>>()?;
    Ok(SyndromeTable {
        poset: poset.clone(),
        source: pd.source().clone(),
        witness: pd.witness().clone(),
        inverse: pd.witness().inverse_matrix(),
        j0: pd.decomposition().j0(),
        complexity: pd.complexity(),
        components,
    })
}

impl SyndromeTable {
    pub fn field(&self) -> Field {
        self.source.field()
    }

    pub fn code(&self) -> &LinearCode {
        &self.source
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn witness(&self) -> &PIsometry {
        &self.witness
    }

    pub fn j0(&self) -> ElementSet {
        self.j0
    }

    /// Complexity of the decomposition the table was built from.
    pub fn complexity(&self) -> &Complexity {
        &self.complexity
    }

    pub fn total_entries(&self) -> Complexity {
        self.components
            .iter()
            .map(|c| Complexity::from_u64(c.leaders.len() as u64))
            .sum()
    }

    /// The leader stored for syndrome `s` of component `i`.
    pub fn leader(&self, component: usize, syndrome: &FieldVector) -> Option<&FieldVector> {
        self.components.get(component)?.leaders.get(syndrome)
    }

    pub fn decode(&self, y: &FieldVector) -> Result<Decoded> {
        let n = self.source.n();
        if y.len() != n {
            return Err(Error::validation(format!(
                "received word of length {} for n = {n}",
                y.len()
            )));
        }
        let field = self.field();
        field.check(y)?;
        let frame = self.witness.apply(y)?;
        let mut corrected = vec![0u32; n];
        for c in &self.components {
            let local = frame.restrict(&c.positions);
            let s = c.parity.syndrome(&local)?;
            let leader = &c.leaders[&s];
            for (k, &p) in c.positions.iter().enumerate() {
                corrected[p] = field.sub(local[k], leader[k]);
            }
        }
        let flags = self.j0.iter().filter(|&j| frame[j] != 0).collect();
        let codeword = FieldVector::from(linalg::mat_vec(field, &self.inverse, &corrected));
        Ok(Decoded { codeword, flags })
    }

    pub fn stats(&self) -> TableStats {
        table_stats(self)
    }
}

/// Entry counts of a table against the complexity formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableStats {
    /// `(n_i, k_i, entries)` per component.
    pub components: Vec<(usize, usize, usize)>,
    pub total: Complexity,
    pub complexity: Complexity,
    pub matches: bool,
}

pub fn table_stats(table: &SyndromeTable) -> TableStats {
    let total = table.total_entries();
    let formula: Complexity = table
        .components
        .iter()
        .map(ComponentTable::expected_entries)
        .sum();
    TableStats {
        components: table
            .components
            .iter()
            .map(|c| (c.positions.len(), c.local.dimension(), c.leaders.len()))
            .collect(),
        matches: total == table.complexity && formula == table.complexity,
        total,
        complexity: table.complexity.clone(),
    }
}

/// Exhaustive minimum-distance decoding: the codeword nearest to `y` in
/// `d_P`, ties broken by the lexicographically smallest codeword.
pub fn nearest_codeword_oracle(
    code: &LinearCode,
    poset: &Poset,
    y: &FieldVector,
) -> Result<(FieldVector, usize)> {
    let size = code.size().unwrap_or(u128::MAX);
    if size > MAX_ORACLE_CODEWORDS {
        return Err(Error::resource(
            "oracle codewords",
            size,
            MAX_ORACLE_CODEWORDS,
        ));
    }
    if y.len() != code.n() || poset.n() != code.n() {
        return Err(Error::validation(
            "received word, code and poset lengths differ",
        ));
    }
    let mut best: Option<(usize, FieldVector)> = None;
    for c in code.codewords()? {
        let d = pdist(poset, y, &c)?;
        let better = match &best {
            None => true,
            Some((bd, bc)) => d < *bd || (d == *bd && c < *bc),
        };
        if better {
            best = Some((d, c));
        }
    }
    let (d, c) = best.expect("a code has at least one codeword");
    Ok((c, d))
}

/// Agreement of a table with the exhaustive oracle over all received words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Agreement {
    pub words: u64,
    /// Decoder output at the oracle's distance from the received word.
    pub same_distance: u64,
    /// Decoder output equal to the oracle's codeword.
    pub same_codeword: u64,
}

impl Agreement {
    pub fn rate(&self) -> f64 {
        self.same_distance as f64 / self.words as f64
    }

    pub fn is_total(&self) -> bool {
        self.same_distance == self.words
    }
}

/// Compares [`SyndromeTable::decode`] with the oracle on all of `GF(q)^n`.
pub fn oracle_agreement(table: &SyndromeTable) -> Result<Agreement> {
    let code = table.code();
    let words = table.field().space_size(code.n()).unwrap_or(u128::MAX);
    if words > MAX_ORACLE_CODEWORDS {
        return Err(Error::resource(
            "received words for oracle comparison",
            words,
            MAX_ORACLE_CODEWORDS,
        ));
    }
    let ys: Vec<FieldVector> = table.field().all_vectors(code.n()).collect();
    let outcomes = ys
        .par_iter()
        .map(|y| {
            let got = table.decode(y)?.codeword;
            let (want, d) = nearest_codeword_oracle(code, table.poset(), y)?;
            Ok((pdist(table.poset(), y, &got)? == d, got == want))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Agreement {
        words: outcomes.len() as u64,
        same_distance: outcomes.iter().filter(|o| o.0).count() as u64,
        same_codeword: outcomes.iter().filter(|o| o.1).count() as u64,
    })
}

fn hex_width(q: u32) -> usize {
    format!("{:x}", q - 1).len()
}

fn pack(v: &FieldVector, width: usize) -> String {
    v.as_slice()
        .iter()
        .map(|a| format!("{a:0width$x}"))
        .collect()
}

fn unpack(text: &str, width: usize, len: usize) -> Result<FieldVector> {
    if text.len() != width * len || !text.is_ascii() {
        return Err(Error::validation(format!(
            "packed vector `{text}` should have {len} symbols"
        )));
    }
    (0..len)
        .map(|i| {
            u32::from_str_radix(&text[i * width..(i + 1) * width], 16)
                .map_err(|_| Error::validation(format!("`{text}` is not hex")))
        })
        .collect::<Result<Vec<_>>>()
        .map(FieldVector::from)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentFile {
    support: Vec<usize>,
    generators: Vec<Vec<u32>>,
    leaders: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableFile {
    poset: Poset,
    code: LinearCode,
    witness: IsometryFile,
    j0: Vec<usize>,
    complexity: Complexity,
    components: Vec<ComponentFile>,
}

impl Serialize for SyndromeTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let width = hex_width(self.field().q());
        TableFile {
            poset: self.poset.clone(),
            code: self.source.clone(),
            witness: IsometryFile::from_isometry(&self.witness),
            j0: self.j0.to_one_based(),
            complexity: self.complexity.clone(),
            components: self
                .components
                .iter()
                .map(|c| ComponentFile {
                    support: c.positions.iter().map(|p| p + 1).collect(),
                    generators: c
                        .local
                        .generator()
                        .iter()
                        .map(|r| r.as_slice().to_vec())
                        .collect(),
                    leaders: c
                        .leaders
                        .iter()
                        .map(|(s, e)| (pack(s, width), pack(e, width)))
                        .collect(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl TableFile {
    fn into_table(self) -> Result<SyndromeTable> {
        let field = self.code.field();
        let n = self.code.n();
        let width = hex_width(field.q());
        let witness = self.witness.into_isometry(&self.poset, field)?;
        let frame_code = witness.apply_code(&self.code)?;
        let mut components = Vec::with_capacity(self.components.len());
        let mut covered = ElementSet::EMPTY;
        let mut dim = 0;
        for c in self.components {
            let positions = c
                .support
                .iter()
                .map(|&p| p.checked_sub(1).filter(|&p| p < n))
                .collect::<Option<Vec<usize>>>()
                .ok_or_else(|| Error::validation("support coordinate out of range"))?;
            if positions.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::validation(
                    "component support must be strictly increasing",
                ));
            }
            let m = positions.len();
            let local = LinearCode::from_generators(
                field,
                m,
                c.generators.into_iter().map(FieldVector::from).collect(),
            )?;
            let parity = local.parity();
            let syndrome_len = parity.checks().len();
            let mut leaders = BTreeMap::new();
            for (s, e) in &c.leaders {
                let s = unpack(s, width, syndrome_len)?;
                let e = unpack(e, width, m)?;
                field.check(&e)?;
                if parity.syndrome(&e)? != s {
                    return Err(Error::validation(format!(
                        "leader {e} does not have syndrome {s}"
                    )));
                }
                leaders.insert(s, e);
            }
            for row in local.embed(n, &positions).generator() {
                if !frame_code.contains(row)? {
                    return Err(Error::validation(
                        "component is not part of the transported code",
                    ));
                }
            }
            let support: ElementSet = positions.iter().copied().collect();
            if !support.is_disjoint(covered) || local.support() != ElementSet::full(m) {
                return Err(Error::validation(
                    "component supports overlap or are not exact",
                ));
            }
            covered = covered.union(support);
            dim += local.dimension();
            let table = ComponentTable {
                positions,
                local,
                parity,
                leaders,
            };
            if Complexity::from_u64(table.leaders.len() as u64) != table.expected_entries() {
                return Err(Error::validation("component table is incomplete"));
            }
            components.push(table);
        }
        if dim != frame_code.dimension() || covered != frame_code.support() {
            return Err(Error::validation(
                "components do not sum to the transported code",
            ));
        }
        let j0: ElementSet = self.j0.iter().map(|&p| p.wrapping_sub(1)).collect();
        if j0 != ElementSet::full(n).difference(covered) {
            return Err(Error::validation("j0 does not match the components"));
        }
        let expected: Complexity = components
            .iter()
            .map(ComponentTable::expected_entries)
            .sum();
        if expected != self.complexity {
            return Err(Error::validation(
                "stated complexity does not match the components",
            ));
        }
        Ok(SyndromeTable {
            inverse: witness.inverse_matrix(),
            poset: self.poset,
            source: self.code,
            witness,
            j0,
            complexity: self.complexity,
            components,
        })
    }
}

impl<'de> Deserialize<'de> for SyndromeTable {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        TableFile::deserialize(d)?
            .into_table()
            .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::Decomposition;
    use crate::search::{primary_decomposition, Budgets};

    fn f2() -> Field {
        Field::new(2).unwrap()
    }

    fn r4() -> LinearCode {
        LinearCode::from_generators(f2(), 4, vec![f2().vector([1, 1, 1, 1])]).unwrap()
    }

    fn trivial(code: &LinearCode) -> PDecomposition {
        PDecomposition::identity(Decomposition::trivial(code.clone()))
    }

    #[test]
    fn table_sizes() {
        let chain = Poset::chain(4).unwrap();
        let pd = primary_decomposition(&r4(), &chain, Budgets::default()).unwrap();
        let t = build_table(&pd, &chain, DEFAULT_COSET_BUDGET).unwrap();
        assert_eq!(t.total_entries(), Complexity::from_u64(1));
        assert!(t.stats().matches);

        let anti = Poset::antichain(4).unwrap();
        let d = LinearCode::from_generators(
            f2(),
            4,
            vec![f2().vector([1, 1, 0, 0]), f2().vector([0, 0, 1, 1])],
        )
        .unwrap();
        let pd = PDecomposition::identity(Decomposition::maximal(&d));
        let t = build_table(&pd, &anti, DEFAULT_COSET_BUDGET).unwrap();
        let stats = t.stats();
        assert_eq!(stats.components, vec![(2, 1, 2), (2, 1, 2)]);
        assert_eq!(stats.total, Complexity::from_u64(4));

        let t = build_table(&trivial(&r4()), &anti, DEFAULT_COSET_BUDGET).unwrap();
        assert_eq!(t.total_entries(), Complexity::from_u64(8));
        assert!(build_table(&trivial(&r4()), &anti, 4)
            .unwrap_err()
            .is_resource());
    }

    #[test]
    fn decode_examples() {
        let anti = Poset::antichain(4).unwrap();
        let t = build_table(&trivial(&r4()), &anti, DEFAULT_COSET_BUDGET).unwrap();
        let out = t.decode(&f2().vector([1, 1, 0, 1])).unwrap();
        assert_eq!(out.codeword, f2().vector([1, 1, 1, 1]));
        assert!(out.flags.is_empty());
        for c in r4().codewords().unwrap() {
            assert_eq!(t.decode(&c).unwrap().codeword, c);
        }
        assert!(t.decode(&f2().vector([1, 1])).is_err());
    }

    #[test]
    fn j0_positions_are_flagged() {
        let chain = Poset::chain(4).unwrap();
        let code = LinearCode::from_generators(
            f2(),
            4,
            vec![f2().vector([0, 1, 0, 0]), f2().vector([0, 0, 0, 1])],
        )
        .unwrap();
        let pd = primary_decomposition(&code, &chain, Budgets::default()).unwrap();
        let t = build_table(&pd, &chain, DEFAULT_COSET_BUDGET).unwrap();
        let out = t.decode(&f2().vector([1, 0, 1, 0])).unwrap();
        assert!(code.contains(&out.codeword).unwrap());
        assert!(!out.flags.is_empty());
    }

    #[test]
    fn oracle_examples() {
        let chain = Poset::chain(4).unwrap();
        let (c, d) = nearest_codeword_oracle(&r4(), &chain, &f2().vector([1, 0, 0, 0])).unwrap();
        assert_eq!((c, d), (FieldVector::zero(4), 1));
        let anti = Poset::antichain(4).unwrap();
        let (c, d) = nearest_codeword_oracle(&r4(), &anti, &f2().vector([1, 1, 1, 0])).unwrap();
        assert_eq!((c, d), (f2().vector([1, 1, 1, 1]), 1));
        let y = f2().vector([1, 1, 1, 1]);
        assert_eq!(nearest_codeword_oracle(&r4(), &anti, &y).unwrap(), (y, 0));
    }

    #[test]
    fn single_component_matches_oracle() {
        let p = Poset::from_covers(4, &[(0, 2), (0, 3), (1, 3)]).unwrap();
        let t = build_table(&trivial(&r4()), &p, DEFAULT_COSET_BUDGET).unwrap();
        assert!(oracle_agreement(&t).unwrap().is_total());
    }

    #[test]
    fn table_round_trip() {
        let f3 = Field::new(3).unwrap();
        let p = Poset::from_covers(4, &[(0, 2), (0, 3), (1, 3)]).unwrap();
        let code = LinearCode::from_generators(
            f3,
            4,
            vec![f3.vector([1, 2, 1, 0]), f3.vector([0, 1, 1, 1])],
        )
        .unwrap();
        let pd = primary_decomposition(&code, &p, Budgets::default()).unwrap();
        let t = build_table(&pd, &p, DEFAULT_COSET_BUDGET).unwrap();
        let json = serde_json::to_string(&t).unwrap();
        let back: SyndromeTable = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
        let mut v: serde_json::Value = serde_json::from_str(&json).unwrap();
        v["complexity"] = serde_json::json!(1000);
        assert!(serde_json::from_value::<SyndromeTable>(v).is_err());
    }
}
