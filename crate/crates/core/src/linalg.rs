//! Small dense linear algebra over the crate's ring traits.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::exactring::Ring;

/// Division-free determinant by expansion along rows, memoized on the set
/// of columns already used (`O(2^ℓ · ℓ)` ring multiplications).
///
/// The empty matrix has determinant 1.
pub fn determinant<R: Ring>(m: &[Vec<R>]) -> R {
    let l = m.len();
    assert!(m.iter().all(|row| row.len() == l), "determinant of a non-square matrix");
    assert!(l < 64, "matrix too large for subset expansion");
    // memo[cols] = minor on the last |cols| rows and the columns in `cols`
    let mut memo: HashMap<u64, R> = HashMap::new();
    memo.insert(0, R::one_elem());
    minor(m, (1u64 << l) - 1, &mut memo)
}

fn minor<R: Ring>(m: &[Vec<R>], cols: u64, memo: &mut HashMap<u64, R>) -> R {
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let l = m.len();
    let row = l - cols.count_ones() as usize;
    let mut acc = R::zero_elem();
    let mut sign_neg = false;
    for c in 0..l {
        if cols & (1 << c) == 0 {
            continue;
        }
        let entry = &m[row][c];
        if !entry.is_zero_elem() {
            let sub = minor(m, cols & !(1 << c), memo);
            if !sub.is_zero_elem() {
                let t = entry.times(&sub);
                acc = if sign_neg { acc.minus(&t) } else { acc.plus(&t) };
            }
        }
        sign_neg = !sign_neg;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// Exact rank by fraction-based Gaussian elimination.
pub fn rank(m: &[Vec<BigRational>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let piv = a[r][c].clone();
        for i in (r + 1)..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &piv;
            for j in c..cols {
                let delta = &f * &a[r][j];
                a[i][j] -= delta;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}
