//! Dense row reduction over GF(q).

use crate::field::Field;

/// Reduces `rows` in place to reduced row-echelon form, drops zero rows and
/// returns the pivot columns in ascending order.
pub fn rref(field: Field, rows: &mut Vec<Vec<u32>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(rows[r][col]).expect("nonzero pivot");
        for a in rows[r].iter_mut() {
            *a = field.mul(*a, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[col] != 0 {
                let factor = field.neg(row[col]);
                field.axpy(row, factor, &pivot_row);
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(field: Field, rows: &[Vec<u32>]) -> usize {
    let mut m = rows.to_vec();
    rref(field, &mut m).len()
}

/// Inverse of a square matrix, or `None` if singular.
pub fn invert(field: Field, m: &[Vec<u32>]) -> Option<Vec<Vec<u32>>> {
    let n = m.len();
    let mut aug: Vec<Vec<u32>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u32::from(i == j)));
            r
        })
        .collect();
    let pivots = rref(field, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// `m · x` for a column vector `x`.
pub fn mat_vec(field: Field, m: &[Vec<u32>], x: &[u32]) -> Vec<u32> {
    m.iter().map(|row| field.dot(row, x)).collect()
}

pub fn mat_mul(field: Field, a: &[Vec<u32>], b: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(0, |acc, (&x, brow)| field.add(acc, field.mul(x, brow[j])))
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_basic() {
        let f2 = Field::new(2).unwrap();
        let mut m = vec![vec![1, 1, 0, 0], vec![1, 1, 1, 1]];
        let piv = rref(f2, &mut m);
        assert_eq!(piv, vec![0, 2]);
        assert_eq!(m, vec![vec![1, 1, 0, 0], vec![0, 0, 1, 1]]);

        let f3 = Field::new(3).unwrap();
        let mut m = vec![vec![2, 1], vec![1, 2], vec![0, 0]];
        let piv = rref(f3, &mut m);
        assert_eq!(piv, vec![0]);
        assert_eq!(m, vec![vec![1, 2]]);
    }

    #[test]
    fn inverse_roundtrip() {
        let f5 = Field::new(5).unwrap();
        let m = vec![vec![2, 1, 0], vec![0, 3, 4], vec![1, 0, 2]];
        let inv = invert(f5, &m).unwrap();
        let id = mat_mul(f5, &m, &inv);
        assert_eq!(id, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert!(invert(f5, &[vec![1, 2], vec![2, 4]]).is_none());
    }
}
