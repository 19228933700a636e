//! JSON formats. Coordinates are 1-based in every file.
//!
//! - poset: `{"n": 4, "covers": [[1,3],[1,4],[2,4]]}`
//! - code: `{"q": 2, "n": 4, "generators": [[1,1,1,1]]}`
//! - partition: `{"n": 4, "j0": [1,3], "parts": [[2],[4]]}`
//! - isometry: `{"sigma": [1,2,3,4], "A": [[..], ..]}`
//! - decomposition: code, `j0`, component generator matrices, profile and complexity

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::code::LinearCode;
use crate::decomposition::{Complexity, Decomposition, Profile};
use crate::error::{Error, Result};
use crate::field::{Field, FieldVector};
use crate::isometry::PIsometry;
use crate::partition::PointedPartition;
use crate::poset::{Permutation, Poset};
use crate::search::PDecomposition;
use crate::subset::ElementSet;

fn to_zero_based(i: usize, n: usize) -> Result<usize> {
    if i == 0 || i > n {
        return Err(Error::validation(format!("coordinate {i} outside 1..={n}")));
    }
    Ok(i - 1)
}

fn set_from_one_based(items: &[usize], n: usize) -> Result<ElementSet> {
    let mut s = ElementSet::EMPTY;
    for &i in items {
        let i = to_zero_based(i, n)?;
        if s.contains(i) {
            return Err(Error::validation(format!("coordinate {} repeated", i + 1)));
        }
        s.insert(i);
    }
    Ok(s)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PosetFile {
    n: usize,
    covers: Vec<[usize; 2]>,
}

impl PosetFile {
    fn into_poset(self) -> Result<Poset> {
        let covers = self
            .covers
            .iter()
            .map(|&[a, b]| Ok((to_zero_based(a, self.n)?, to_zero_based(b, self.n)?)))
            .collect::<Result<Vec<_>>>()?;
        Poset::from_covers(self.n, &covers)
    }
}

impl Serialize for Poset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PosetFile {
            n: self.n(),
            covers: self
                .covers()
                .into_iter()
                .map(|(a, b)| [a + 1, b + 1])
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        PosetFile::deserialize(d)?
            .into_poset()
            .map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CodeFile {
    q: u32,
    n: usize,
    generators: Vec<Vec<u32>>,
}

impl CodeFile {
    fn from_code(code: &LinearCode) -> Self {
        CodeFile {
            q: code.field().q(),
            n: code.n(),
            generators: code
                .generator()
                .iter()
                .map(|r| r.as_slice().to_vec())
                .collect(),
        }
    }

    fn into_code(self) -> Result<LinearCode> {
        let field = Field::new(self.q)?;
        LinearCode::from_generators(
            field,
            self.n,
            self.generators.into_iter().map(FieldVector::from).collect(),
        )
    }
}

impl Serialize for LinearCode {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CodeFile::from_code(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinearCode {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        CodeFile::deserialize(d)?
            .into_code()
            .map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PartitionFile {
    n: usize,
    j0: Vec<usize>,
    parts: Vec<Vec<usize>>,
}

impl Serialize for PointedPartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PartitionFile {
            n: self.n(),
            j0: self.j0().to_one_based(),
            parts: self.parts().iter().map(|p| p.to_one_based()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PointedPartition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let f = PartitionFile::deserialize(d)?;
        let build = || -> Result<PointedPartition> {
            let j0 = set_from_one_based(&f.j0, f.n)?;
            let parts = f
                .parts
                .iter()
                .map(|p| set_from_one_based(p, f.n))
                .collect::<Result<Vec<_>>>()?;
            PointedPartition::new(f.n, j0, parts)
        };
        build().map_err(D::Error::custom)
    }
}

/// An isometry as read from JSON. It can only be checked against a poset,
/// hence the separate [`into_isometry`](Self::into_isometry) step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsometryFile {
    pub sigma: Vec<usize>,
    #[serde(rename = "A")]
    pub a: Vec<Vec<u32>>,
}

impl IsometryFile {
    pub fn from_isometry(t: &PIsometry) -> Self {
        IsometryFile {
            sigma: t
                .induced_order_map()
                .images()
                .iter()
                .map(|i| i + 1)
                .collect(),
            a: t.triangular().to_vec(),
        }
    }

    pub fn into_isometry(self, poset: &Poset, field: Field) -> Result<PIsometry> {
        let n = self.sigma.len();
        let images = self
            .sigma
            .iter()
            .map(|&i| to_zero_based(i, n))
            .collect::<Result<Vec<_>>>()?;
        PIsometry::new(poset, field, Permutation::from_images(images)?, self.a)
    }
}

impl Serialize for PIsometry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        IsometryFile::from_isometry(self).serialize(s)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DecompositionFile {
    code: CodeFile,
    j0: Vec<usize>,
    components: Vec<Vec<Vec<u32>>>,
    profile: Profile,
    complexity: Complexity,
}

impl Serialize for Decomposition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DecompositionFile {
            code: CodeFile::from_code(self.code()),
            j0: self.j0().to_one_based(),
            components: self
                .components()
                .iter()
                .map(|c| {
                    c.generator()
                        .iter()
                        .map(|r| r.as_slice().to_vec())
                        .collect()
                })
                .collect(),
            profile: self.profile(),
            complexity: self.complexity(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Decomposition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let f = DecompositionFile::deserialize(d)?;
        let build = || -> Result<Decomposition> {
            let code = f.code.into_code()?;
            let components = f
                .components
                .into_iter()
                .map(|rows| {
                    LinearCode::from_generators(
                        code.field(),
                        code.n(),
                        rows.into_iter().map(FieldVector::from).collect(),
                    )
                })
                .collect::<Result<Vec<_>>>()?;
            let dec = Decomposition::new(code, components)?;
            if dec.j0() != set_from_one_based(&f.j0, dec.code().n())? {
                return Err(Error::validation("j0 does not match the code support"));
            }
            if dec.profile() != f.profile || dec.complexity() != f.complexity {
                return Err(Error::validation(
                    "profile or complexity does not match the components",
                ));
            }
            Ok(dec)
        };
        build().map_err(D::Error::custom)
    }
}

/// Witness report: isometry, decomposition of the transported code, profile
/// and complexity.
impl Serialize for PDecomposition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct View<'a> {
            source: &'a LinearCode,
            witness: &'a PIsometry,
            decomposition: &'a Decomposition,
            profile: Profile,
            complexity: Complexity,
        }
        View {
            source: self.source(),
            witness: self.witness(),
            decomposition: self.decomposition(),
            profile: self.profile(),
            complexity: self.complexity(),
        }
        .serialize(s)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PDecompositionFile {
    source: LinearCode,
    witness: IsometryFile,
    decomposition: Decomposition,
    profile: Profile,
    complexity: Complexity,
}

impl PDecompositionFile {
    /// Rebuilds the P-decomposition, checking the witness against `poset`.
    pub fn into_pdecomposition(self, poset: &Poset) -> Result<PDecomposition> {
        let witness = self.witness.into_isometry(poset, self.source.field())?;
        let pd = PDecomposition::new(self.source, witness, self.decomposition)?;
        if pd.profile() != self.profile || pd.complexity() != self.complexity {
            return Err(Error::validation(
                "profile or complexity does not match the decomposition",
            ));
        }
        Ok(pd)
    }
}

/// Parses a vector of residues written as `1,0,2` (spaces allowed).
pub fn parse_vector(field: Field, text: &str) -> Result<FieldVector> {
    let entries = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::validation(format!("`{}` is not a residue", t.trim())))
        })
        .collect::<Result<Vec<_>>>()?;
    let v = FieldVector::from(entries);
    field.check(&v)?;
    Ok(v)
}
