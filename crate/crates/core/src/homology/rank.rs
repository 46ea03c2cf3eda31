//! Exact rank of sparse integer matrices.
//!
//! Rows are eliminated with fraction-free integer row operations, dividing each
//! reduced row by the gcd of its entries. The rank over the integers of the
//! row space equals the rank over Q. Arithmetic runs on `i64` with overflow
//! checks and restarts on big integers if any intermediate value overflows.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// A sparse row: `(column, coefficient)` pairs sorted by column, no zeros.
pub type SparseRow = Vec<(usize, i64)>;

trait Scalar: Clone + PartialEq + Sized {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn gcd(&self, o: &Self) -> Self;
    fn div_exact(&self, o: &Self) -> Self;
    fn is_unit(&self) -> bool;
}

impl Scalar for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
}

impl Scalar for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn is_unit(&self) -> bool {
        self.abs() == BigInt::from(1)
    }
}

/// `a * row - b * pivot`, both rows sharing their leading column.
fn combine<T: Scalar>(row: &[(usize, T)], a: &T, pivot: &[(usize, T)], b: &T) -> Option<Vec<(usize, T)>> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_piv = i >= row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        if take_row {
            out.push((row[i].0, a.mul(&row[i].1)?));
            i += 1;
        } else if take_piv {
            out.push((pivot[j].0, T::from_i64(0).sub(&b.mul(&pivot[j].1)?)?));
            j += 1;
        } else {
            let v = a.mul(&row[i].1)?.sub(&b.mul(&pivot[j].1)?)?;
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    // Divide out the content to keep entries small.
    let mut g = T::from_i64(0);
    for (_, v) in &out {
        g = g.gcd(v);
        if g.is_unit() {
            return Some(out);
        }
    }
    if !g.is_zero() && !g.is_unit() {
        for (_, v) in &mut out {
            *v = v.div_exact(&g);
        }
    }
    Some(out)
}

fn rank_in<T: Scalar>(rows: &[SparseRow], order: &[usize]) -> Option<usize> {
    let mut pivots: HashMap<usize, Vec<(usize, T)>> = HashMap::new();
    for &r in order {
        let mut row: Vec<(usize, T)> = rows[r].iter().map(|&(c, v)| (c, T::from_i64(v))).collect();
        while let Some((lead, coef)) = row.first().cloned() {
            match pivots.get(&lead) {
                Some(p) => {
                    let pc = &p[0].1;
                    let g = pc.gcd(&coef);
                    let a = pc.div_exact(&g);
                    let b = coef.div_exact(&g);
                    row = combine(&row, &a, p, &b)?;
                }
                None => {
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    Some(pivots.len())
}

/// Rank over Q of the matrix with the given sparse rows. Deterministic: rows
/// are processed by increasing number of non-zeros, ties by index.
pub fn rank(rows: &[SparseRow]) -> usize {
    let mut order: Vec<usize> = (0..rows.len()).filter(|&r| !rows[r].is_empty()).collect();
    order.sort_by_key(|&r| (rows[r].len(), r));
    rank_in::<i64>(rows, &order).unwrap_or_else(|| rank_in::<BigInt>(rows, &order).expect("big integers do not overflow"))
}

#[cfg(test)]
pub(crate) fn rank_bigint(rows: &[SparseRow]) -> usize {
    let order: Vec<usize> = (0..rows.len()).filter(|&r| !rows[r].is_empty()).collect();
    rank_in::<BigInt>(rows, &order).unwrap()
}
