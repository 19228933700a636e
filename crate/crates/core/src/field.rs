//! Prime-field arithmetic and vectors over GF(q).

use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prime field GF(q).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Field {
    q: u32,
}

fn is_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= q as u64 {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// Rejects `q < 2` and composite moduli; extension fields are not supported.
    pub fn new(q: u32) -> Result<Self> {
        if q > 1 << 15 {
            return Err(Error::validation(format!("modulus {q} too large")));
        }
        if !is_prime(q) {
            return Err(Error::validation(format!(
                "q = {q} is not prime (only prime fields are supported)"
            )));
        }
        Ok(Field { q })
    }

    pub fn q(self) -> u32 {
        self.q
    }

    pub fn reduce(self, a: i64) -> u32 {
        a.rem_euclid(self.q as i64) as u32
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        (a + b) % self.q
    }

    pub fn sub(self, a: u32, b: u32) -> u32 {
        (a + self.q - b) % self.q
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        a * b % self.q
    }

    pub fn neg(self, a: u32) -> u32 {
        (self.q - a) % self.q
    }

    pub fn inv(self, a: u32) -> Result<u32> {
        if a.is_multiple_of(self.q) {
            return Err(Error::DivisionByZero(self.q));
        }
        // a^(q-2) by square-and-multiply
        let (mut base, mut exp, mut acc) = (a % self.q, self.q - 2, 1u32);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        Ok(acc)
    }

    /// Builds a vector, normalizing every entry into `[0, q)`.
    pub fn vector(self, entries: impl IntoIterator<Item = i64>) -> FieldVector {
        FieldVector(entries.into_iter().map(|a| self.reduce(a)).collect())
    }

    /// Checks that every entry already lies in `[0, q)`.
    pub fn check(self, v: &FieldVector) -> Result<()> {
        match v.0.iter().find(|&&a| a >= self.q) {
            Some(a) => Err(Error::validation(format!(
                "entry {a} is not a residue mod {}",
                self.q
            ))),
            None => Ok(()),
        }
    }

    pub fn add_vec(self, u: &FieldVector, v: &FieldVector) -> Result<FieldVector> {
        same_len(u, v)?;
        Ok(FieldVector(
            u.0.iter()
                .zip(&v.0)
                .map(|(&a, &b)| self.add(a, b))
                .collect(),
        ))
    }

    pub fn sub_vec(self, u: &FieldVector, v: &FieldVector) -> Result<FieldVector> {
        same_len(u, v)?;
        Ok(FieldVector(
            u.0.iter()
                .zip(&v.0)
                .map(|(&a, &b)| self.sub(a, b))
                .collect(),
        ))
    }

    pub fn scale_vec(self, lambda: u32, u: &FieldVector) -> FieldVector {
        let lambda = lambda % self.q;
        FieldVector(u.0.iter().map(|&a| self.mul(lambda, a)).collect())
    }

    /// `u += lambda * v` in place. Lengths must agree.
    pub(crate) fn axpy(self, u: &mut [u32], lambda: u32, v: &[u32]) {
        debug_assert_eq!(u.len(), v.len());
        if lambda == 0 {
            return;
        }
        for (a, &b) in u.iter_mut().zip(v) {
            *a = (*a + lambda * b) % self.q;
        }
    }

    pub fn dot(self, u: &[u32], v: &[u32]) -> u32 {
        u.iter().zip(v).fold(0u64, |acc, (&a, &b)| {
            (acc + a as u64 * b as u64) % self.q as u64
        }) as u32
    }

    /// Every vector of length `n`, in lexicographic order (first coordinate
    /// most significant).
    pub fn all_vectors(self, n: usize) -> AllVectors {
        AllVectors {
            q: self.q,
            next: Some(vec![0; n]),
        }
    }

    /// `q^n` if it fits in a u128.
    pub fn space_size(self, n: usize) -> Option<u128> {
        (self.q as u128).checked_pow(n as u32)
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let q = u32::deserialize(d)?;
        Field::new(q).map_err(serde::de::Error::custom)
    }
}

fn same_len(u: &FieldVector, v: &FieldVector) -> Result<()> {
    if u.len() != v.len() {
        return Err(Error::validation(format!(
            "length mismatch: {} vs {}",
            u.len(),
            v.len()
        )));
    }
    Ok(())
}

/// Lexicographic enumeration of `GF(q)^n`.
pub struct AllVectors {
    q: u32,
    next: Option<Vec<u32>>,
}

impl Iterator for AllVectors {
    type Item = FieldVector;

    fn next(&mut self) -> Option<FieldVector> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut carry = true;
        for a in succ.iter_mut().rev() {
            *a += 1;
            if *a == self.q {
                *a = 0;
            } else {
                carry = false;
                break;
            }
        }
        if !carry {
            self.next = Some(succ);
        }
        Some(FieldVector(cur))
    }
}

/// A vector over GF(q). Entries are residues in `[0, q)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldVector(Vec<u32>);

impl FieldVector {
    /// Wraps raw residues without reduction; use [`Field::vector`] to normalize.
    pub fn from_residues(entries: Vec<u32>) -> Self {
        FieldVector(entries)
    }

    pub fn zero(n: usize) -> Self {
        FieldVector(vec![0; n])
    }

    /// Unit vector with a 1 at 0-based position `i`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        FieldVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }

    /// Restriction to the coordinates in `positions`, in that order.
    pub fn restrict(&self, positions: &[usize]) -> FieldVector {
        FieldVector(positions.iter().map(|&i| self.0[i]).collect())
    }
}

impl Index<usize> for FieldVector {
    type Output = u32;

    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

impl From<Vec<u32>> for FieldVector {
    fn from(v: Vec<u32>) -> Self {
        FieldVector(v)
    }
}

impl fmt::Debug for FieldVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FieldVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}
