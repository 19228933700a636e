//! Linear codes over GF(q) in canonical (RREF) form.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldVector};
use crate::linalg;
use crate::subset::{ElementSet, MAX_N};

/// Codeword enumeration refuses codes with more than this many words.
pub const MAX_CODEWORDS: u128 = 1 << 20;

/// A nonzero linear code, stored by its reduced row-echelon generator matrix
/// with pivot-ascending rows. Two codes are equal iff they are the same
/// subspace.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearCode {
    field: Field,
    n: usize,
    rows: Vec<FieldVector>,
    pivots: Vec<usize>,
}

impl LinearCode {
    pub fn from_generators(field: Field, n: usize, rows: Vec<FieldVector>) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::validation(format!(
                "code length {n} outside 1..={MAX_N}"
            )));
        }
        if rows.is_empty() {
            return Err(Error::ZeroCode);
        }
        let mut raw = Vec::with_capacity(rows.len());
        for r in rows {
            if r.len() != n {
                return Err(Error::validation(format!(
                    "generator {r} has length {}, expected {n}",
                    r.len()
                )));
            }
            field.check(&r)?;
            raw.push(r.into_inner());
        }
        Self::from_raw(field, raw).ok_or(Error::ZeroCode)
    }

    /// Row-reduces raw rows of a common length; `None` for the zero space.
    pub(crate) fn from_raw(field: Field, mut raw: Vec<Vec<u32>>) -> Option<Self> {
        let n = raw.first()?.len();
        let pivots = linalg::rref(field, &mut raw);
        if pivots.is_empty() {
            return None;
        }
        Some(LinearCode {
            field,
            n,
            rows: raw.into_iter().map(FieldVector::from_residues).collect(),
            pivots,
        })
    }

    /// `V_I`, the coordinate subspace spanned by `e_i`, `i ∈ positions`.
    pub fn coordinate_subspace(field: Field, n: usize, positions: ElementSet) -> Result<Self> {
        let rows = positions.iter().map(|i| FieldVector::unit(n, i)).collect();
        Self::from_generators(field, n, rows)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    /// Generator rows in RREF.
    pub fn generator(&self) -> &[FieldVector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Union of the supports of all codewords.
    pub fn support(&self) -> ElementSet {
        self.rows
            .iter()
            .fold(ElementSet::EMPTY, |acc, r| acc.union(support_of(r)))
    }

    pub fn contains(&self, x: &FieldVector) -> Result<bool> {
        self.check_len(x)?;
        let mut rest = x.as_slice().to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = rest[p];
            if c != 0 {
                self.field
                    .axpy(&mut rest, self.field.neg(c), row.as_slice());
            }
        }
        Ok(rest.iter().all(|&a| a == 0))
    }

    /// Encodes a message of length `k`: `Σ m_r · G_r`.
    pub fn encode(&self, message: &[u32]) -> FieldVector {
        let mut out = vec![0; self.n];
        for (row, &m) in self.rows.iter().zip(message) {
            self.field.axpy(&mut out, m, row.as_slice());
        }
        FieldVector::from_residues(out)
    }

    pub fn size(&self) -> Option<u128> {
        self.field.space_size(self.dimension())
    }

    /// Every codeword once, ordered by message vector lexicographically.
    pub fn codewords(&self) -> Result<impl Iterator<Item = FieldVector> + '_> {
        let size = self.size().unwrap_or(u128::MAX);
        if size > MAX_CODEWORDS {
            return Err(Error::resource("codeword enumeration", size, MAX_CODEWORDS));
        }
        Ok(self
            .field
            .all_vectors(self.dimension())
            .map(move |m| self.encode(m.as_slice())))
    }

    /// Parity-check data built from the RREF: one check per non-pivot column.
    pub fn parity(&self) -> ParityData {
        let free: Vec<usize> = (0..self.n).filter(|c| !self.pivots.contains(c)).collect();
        let checks = free
            .iter()
            .map(|&f| {
                let mut h = vec![0; self.n];
                h[f] = 1;
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    h[p] = self.field.neg(row[f]);
                }
                FieldVector::from_residues(h)
            })
            .collect();
        ParityData {
            field: self.field,
            n: self.n,
            checks,
        }
    }

    /// Puncturing onto `positions` (kept in the given order). The result may
    /// be the zero space, hence the option.
    pub fn restrict(&self, positions: &[usize]) -> Option<LinearCode> {
        let raw = self
            .rows
            .iter()
            .map(|r| r.restrict(positions).into_inner())
            .collect();
        Self::from_raw(self.field, raw)
    }

    /// Inverse of [`restrict`](Self::restrict): places a code of length
    /// `positions.len()` at `positions` inside length `n`.
    pub fn embed(&self, n: usize, positions: &[usize]) -> LinearCode {
        debug_assert_eq!(positions.len(), self.n);
        let raw = self
            .rows
            .iter()
            .map(|r| {
                let mut v = vec![0; n];
                for (k, &p) in positions.iter().enumerate() {
                    v[p] = r[k];
                }
                v
            })
            .collect();
        Self::from_raw(self.field, raw).expect("embedding keeps rank")
    }

    /// Image of the code under a linear map on columns.
    pub fn map(&self, f: impl Fn(&FieldVector) -> FieldVector) -> Option<LinearCode> {
        let raw = self.rows.iter().map(|r| f(r).into_inner()).collect();
        Self::from_raw(self.field, raw)
    }

    fn check_len(&self, x: &FieldVector) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::validation(format!(
                "vector of length {} for a code of length {}",
                x.len(),
                self.n
            )));
        }
        Ok(())
    }
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{},{}]_{} span{{",
            self.n,
            self.dimension(),
            self.field.q()
        )?;
        for (k, r) in self.rows.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "}}")
    }
}

/// `supp(x) = { i : x_i ≠ 0 }`
pub fn support_of(x: &FieldVector) -> ElementSet {
    x.as_slice()
        .iter()
        .enumerate()
        .filter(|(_, &a)| a != 0)
        .map(|(i, _)| i)
        .collect()
}

/// Parity-check matrix `H` with `H·c = 0` exactly for codewords `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityData {
    field: Field,
    n: usize,
    checks: Vec<FieldVector>,
}

impl ParityData {
    pub fn checks(&self) -> &[FieldVector] {
        &self.checks
    }

    pub fn syndrome(&self, y: &FieldVector) -> Result<FieldVector> {
        if y.len() != self.n {
            return Err(Error::validation(format!(
                "vector of length {} for syndromes of length {}",
                y.len(),
                self.n
            )));
        }
        Ok(FieldVector::from_residues(
            self.checks
                .iter()
                .map(|h| self.field.dot(h.as_slice(), y.as_slice()))
                .collect(),
        ))
    }
}
