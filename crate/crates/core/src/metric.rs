//! Poset weights and distances.

use crate::code::{support_of, LinearCode};
use crate::error::{Error, Result};
use crate::field::FieldVector;
use crate::poset::Poset;
use crate::subset::ElementSet;

pub use crate::code::support_of as support;

fn check_len(poset: &Poset, x: &FieldVector) -> Result<()> {
    if x.len() != poset.n() {
        return Err(Error::validation(format!(
            "vector of length {} for a poset on {} elements",
            x.len(),
            poset.n()
        )));
    }
    Ok(())
}

/// `ω_P(x) = |⟨supp(x)⟩|`
pub fn pweight(poset: &Poset, x: &FieldVector) -> Result<usize> {
    check_len(poset, x)?;
    Ok(poset.ideal(support_of(x)).len())
}

/// Weight of a support set, skipping the vector.
pub fn support_weight(poset: &Poset, supp: ElementSet) -> usize {
    poset.ideal(supp).len()
}

/// `d_P(x, y) = ω_P(x − y)`
pub fn pdist(poset: &Poset, x: &FieldVector, y: &FieldVector) -> Result<usize> {
    check_len(poset, x)?;
    check_len(poset, y)?;
    let diff: ElementSet = x
        .as_slice()
        .iter()
        .zip(y.as_slice())
        .enumerate()
        .filter(|(_, (a, b))| a != b)
        .map(|(i, _)| i)
        .collect();
    Ok(support_weight(poset, diff))
}

/// `δ_P(C)`, the least weight of a nonzero codeword.
pub fn min_pdistance(poset: &Poset, code: &LinearCode) -> Result<usize> {
    if code.n() != poset.n() {
        return Err(Error::validation(format!(
            "code of length {} for a poset on {} elements",
            code.n(),
            poset.n()
        )));
    }
    Ok(code
        .codewords()?
        .filter(|c| !c.is_zero())
        .map(|c| support_weight(poset, support_of(&c)))
        .min()
        .expect("nonzero code has a nonzero word"))
}
