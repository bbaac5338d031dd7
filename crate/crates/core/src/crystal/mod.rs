//! Tropical layer: tropicalization, the combinatorial R-matrix on one-row
//! tableaux (tropical swap and jeu de taquin), cocharge, and energy.

mod energy;
mod trop;

pub use energy::{
    b_of_t, cocharge, cocharge_trace, energy, energy_with, has_partition_weight, reading_word, tableau_word_weight,
    CochargeRule, CochargeStep, EnergyConvention, EnergyResult, SubstitutionOrder,
};
pub use trop::{trop_eval, tropicalize, TropExpr};

use std::fmt;

use crate::exactring::{Trop, VarId};
use crate::lsym::LsymError;
use crate::rmatrix::swap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CrystalError {
    #[error("expression is not subtraction-free")]
    NotSubtractionFree,
    #[error("variable {0} has no value")]
    Unbound(VarId),
    #[error("jeu de taquin search failed: {0}")]
    SearchFailure(String),
    #[error("weight {0:?} is not a partition")]
    NonPartitionWeight(Vec<u32>),
    #[error("letter {letter} outside 1..={n}")]
    LetterOutOfRange { letter: u32, n: u32 },
    #[error(transparent)]
    Lsym(#[from] LsymError),
}

/// A row-shaped tableau in `B_s`, stored by its letter counts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OneRowTableau {
    counts: Vec<u32>,
}

impl OneRowTableau {
    pub fn from_counts(counts: Vec<u32>) -> Self {
        assert!(!counts.is_empty(), "alphabet must be nonempty");
        OneRowTableau { counts }
    }

    /// From the letters of a row (any order) over the alphabet `1..=n`.
    pub fn from_row(row: &[u32], n: u32) -> Result<Self, CrystalError> {
        let mut counts = vec![0; n as usize];
        for &l in row {
            if l == 0 || l > n {
                return Err(CrystalError::LetterOutOfRange { letter: l, n });
            }
            counts[l as usize - 1] += 1;
        }
        Ok(OneRowTableau { counts })
    }

    pub fn n(&self) -> u32 {
        self.counts.len() as u32
    }

    pub fn len(&self) -> u32 {
        self.counts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// The weakly increasing row.
    pub fn row(&self) -> Vec<u32> {
        self.counts.iter().enumerate().flat_map(|(i, &c)| std::iter::repeat_n(i as u32 + 1, c as usize)).collect()
    }

    /// All rows of length `len` over `1..=n`.
    pub fn all(n: u32, len: u32) -> Vec<Self> {
        fn go(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<OneRowTableau>) {
            if cur.len() + 1 == n {
                cur.push(left);
                out.push(OneRowTableau { counts: cur.clone() });
                cur.pop();
                return;
            }
            for c in 0..=left {
                cur.push(c);
                go(n, left - c, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n as usize, len, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for OneRowTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r: Vec<String> = self.row().iter().map(|l| l.to_string()).collect();
        write!(f, "[{}]", r.join(","))
    }
}

/// `x̄ = (x^{(n)}, x^{(1)}, …, x^{(n−1)})`.
fn bar(x: &[Trop]) -> Vec<Trop> {
    let n = x.len();
    (0..n).map(|i| x[(i + n - 1) % n]).collect()
}

fn unbar(x: &[Trop]) -> Vec<Trop> {
    let n = x.len();
    (0..n).map(|i| x[(i + 1) % n]).collect()
}

fn as_trop(b: &OneRowTableau) -> Vec<Trop> {
    b.counts.iter().map(|&c| Trop(c as i64)).collect()
}

fn from_trop(v: &[Trop]) -> OneRowTableau {
    OneRowTableau { counts: v.iter().map(|t| u32::try_from(t.0).expect("tropical swap keeps counts nonnegative")).collect() }
}

/// The R-matrix from the tropical swap: `trop(s(x_1, x̄_2)) = (y_1, ȳ_2)`.
pub fn comb_r_tropical(b1: &OneRowTableau, b2: &OneRowTableau) -> (OneRowTableau, OneRowTableau) {
    assert_eq!(b1.n(), b2.n(), "alphabets differ");
    let s = swap(&as_trop(b1), &bar(&as_trop(b2))).expect("tropical division is total");
    (from_trop(&s.x_out), from_trop(&unbar(&s.y_out)))
}

/// Row insertion tableau of a word.
pub fn insertion_tableau(word: &[u32]) -> Vec<Vec<u32>> {
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for &x in word {
        let mut x = x;
        let mut placed = false;
        for row in rows.iter_mut() {
            match row.iter().position(|&y| y > x) {
                Some(p) => x = std::mem::replace(&mut row[p], x),
                None => {
                    row.push(x);
                    placed = true;
                    break;
                }
            }
        }
        if !placed {
            rows.push(vec![x]);
        }
    }
    rows
}

/// Rectification of `b_1 ⊗ b_2` drawn with `b_1` as the lower-left row.
pub fn rectify_pair(b1: &OneRowTableau, b2: &OneRowTableau) -> Vec<Vec<u32>> {
    let mut w = b1.row();
    w.extend(b2.row());
    insertion_tableau(&w)
}

/// The R-matrix by search: the unique `c_1 ⊗ c_2` with `|c_1| = |b_2|`,
/// `|c_2| = |b_1|` rectifying to the same tableau as `b_1 ⊗ b_2`.
pub fn comb_r_jdt(b1: &OneRowTableau, b2: &OneRowTableau) -> Result<(OneRowTableau, OneRowTableau), CrystalError> {
    assert_eq!(b1.n(), b2.n(), "alphabets differ");
    let target = rectify_pair(b1, b2);
    let total: Vec<u32> = b1.counts.iter().zip(&b2.counts).map(|(a, b)| a + b).collect();
    let mut found = Vec::new();
    for c1 in OneRowTableau::all(b1.n(), b2.len()) {
        if c1.counts.iter().zip(&total).any(|(a, t)| a > t) {
            continue;
        }
        let c2 = OneRowTableau { counts: total.iter().zip(&c1.counts).map(|(t, a)| t - a).collect() };
        if rectify_pair(&c1, &c2) == target {
            found.push((c1, c2));
        }
    }
    match found.len() {
        1 => Ok(found.pop().expect("one candidate")),
        0 => Err(CrystalError::SearchFailure(format!("no pair for {b1} ⊗ {b2}"))),
        k => Err(CrystalError::SearchFailure(format!("{k} pairs for {b1} ⊗ {b2}"))),
    }
}

/// Applies the R-matrix at positions `(i, i+1)` (0-based) of a tensor word.
pub fn apply_r_at(
    path: &mut [OneRowTableau],
    i: usize,
    r: impl Fn(&OneRowTableau, &OneRowTableau) -> (OneRowTableau, OneRowTableau),
) {
    let (c1, c2) = r(&path[i], &path[i + 1]);
    path[i] = c1;
    path[i + 1] = c2;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(r: &[u32]) -> OneRowTableau {
        OneRowTableau::from_row(r, 3).unwrap()
    }

    #[test]
    fn worked_r_matrix() {
        let (b1, b2) = (row(&[1, 2, 3]), row(&[1, 1, 3, 3, 3]));
        let expect = (row(&[1, 2, 3, 3, 3]), row(&[1, 1, 3]));
        assert_eq!(comb_r_tropical(&b1, &b2), expect);
        assert_eq!(comb_r_jdt(&b1, &b2).unwrap(), expect);
        assert_eq!(rectify_pair(&b1, &b2), vec![vec![1, 1, 1, 3, 3, 3], vec![2, 3]]);
        assert_eq!(bar(&as_trop(&b2)), vec![Trop(3), Trop(2), Trop(0)]);
    }

    #[test]
    fn intermediate_y2() {
        // y_1^{(2)} = x̄_2^{(3)} + min(2,4,5) − min(2,1,3) = 1
        let x = [Trop(1), Trop(1), Trop(1)];
        let y = [Trop(3), Trop(2), Trop(0)];
        let k3 = crate::rmatrix::kappa(3, &x, &y);
        let k2 = crate::rmatrix::kappa(2, &x, &y);
        assert_eq!((k3, k2), (Trop(2), Trop(1)));
        assert_eq!(swap(&x, &y).unwrap().x_out[1], Trop(1));
    }

    #[test]
    fn trivial_cases() {
        let b = row(&[1, 2, 2]);
        assert_eq!(comb_r_tropical(&b, &b), (b.clone(), b.clone()));
        let e = row(&[]);
        assert_eq!(comb_r_jdt(&b, &e).unwrap(), (e.clone(), b.clone()));
        let one = |k| OneRowTableau::from_counts(vec![k]);
        assert_eq!(comb_r_tropical(&one(2), &one(5)), (one(5), one(2)));
        assert!(OneRowTableau::from_row(&[4], 3).is_err());
    }

    #[test]
    fn routes_agree_small() {
        for n in 1..=3 {
            for p in 0..=3 {
                for q in 0..=3 {
                    for b1 in OneRowTableau::all(n, p) {
                        for b2 in OneRowTableau::all(n, q) {
                            let t = comb_r_tropical(&b1, &b2);
                            assert_eq!(comb_r_jdt(&b1, &b2).unwrap(), t);
                            assert_eq!(comb_r_tropical(&t.0, &t.1), (b1.clone(), b2.clone()));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(OneRowTableau::all(3, 2).len(), 6);
        assert_eq!(OneRowTableau::all(1, 4).len(), 1);
        assert_eq!(row(&[3, 1, 2]).row(), vec![1, 2, 3]);
    }
}
