use num_rational::BigRational;

use super::{apply_word, apply_word_values, PermWord, RError};
use crate::exactring::{RationalExpr, Ring};
use crate::linalg::determinant;
use crate::lsym::{LoopVarArray, Partition};

/// The transposition `t_{a,b}` as `s_{b−1} ⋯ s_{a+1} s_a s_{a+1} ⋯ s_{b−1}`.
pub fn transposition_word(a: u32, b: u32) -> PermWord {
    assert!(1 <= a && a <= b, "need 1 ≤ a ≤ b");
    let mut letters: Vec<u32> = ((a + 1)..b).rev().collect();
    letters.push(a);
    letters.extend((a + 1)..b);
    if a == b {
        letters.clear();
    }
    PermWord::new(letters).expect("letters are positive")
}

fn check_alpha(m: u32, alpha: &[u32]) -> Result<(), RError> {
    if alpha.len() != m as usize || alpha.windows(2).any(|w| w[0] <= w[1]) {
        return Err(RError::BadExponents(m));
    }
    Ok(())
}

fn alternant_matrix<T: Ring>(columns: &[LoopVarArray<T>], alpha: &[u32], r: i64) -> Vec<Vec<T>> {
    let m = columns.len() as u32;
    alpha
        .iter()
        .map(|&a| {
            columns
                .iter()
                .map(|img| (0..a as i64).fold(T::one_elem(), |acc, c| acc.times(img.get(m, r - c))))
                .collect()
        })
        .collect()
}

/// `a^{(r)}_α = det( t_{m−j+1,m}(x_m^{(r)} x_m^{(r−1)} ⋯ x_m^{(r−α_i+1)}) )`.
pub fn loop_alternant(n: u32, m: u32, alpha: &[u32], r: i64) -> Result<RationalExpr, RError> {
    check_alpha(m, alpha)?;
    let columns = (1..=m)
        .map(|j| apply_word(n, m, &transposition_word(m - j + 1, m)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(determinant(&alternant_matrix(&columns, alpha, r)))
}

/// The alternant evaluated at a point.
pub fn loop_alternant_at(point: &LoopVarArray<BigRational>, alpha: &[u32], r: i64) -> Result<BigRational, RError> {
    let m = point.m();
    check_alpha(m, alpha)?;
    let columns = (1..=m)
        .map(|j| apply_word_values(point, &transposition_word(m - j + 1, m)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(determinant(&alternant_matrix(&columns, alpha, r)))
}

fn staircase_plus(m: u32, lambda: &Partition) -> Vec<u32> {
    (1..=m).map(|i| lambda.part(i as usize) + m - i).collect()
}

/// `a^{(r)}_{λ+δ} / a^{(r)}_δ` with `δ = (m−1, …, 1, 0)`. With the tableau
/// weight convention of [`crate::lsym::tableau_weight`] this is the loop Schur
/// function `s_λ^{(r+1−m)}` (for two sites, `s_λ^{(r−1)}`); see
/// [`alternant_color`].
pub fn schur_via_alternants(n: u32, m: u32, lambda: &Partition, r: i64) -> Result<RationalExpr, RError> {
    if lambda.len() > m as usize {
        return Err(RError::BadExponents(m));
    }
    let den = loop_alternant(n, m, &staircase_plus(m, &Partition::empty()), r)?;
    if den.is_zero() {
        return Err(RError::DegenerateDenominator);
    }
    let num = loop_alternant(n, m, &staircase_plus(m, lambda), r)?;
    Ok(num.div(&den)?)
}

/// The color `r + 1 − m` of the loop Schur function computed by the
/// alternant ratio `a^{(r)}_{λ+δ} / a^{(r)}_δ` on `m` sites.
pub fn alternant_color(m: u32, r: i64) -> i64 {
    r + 1 - m as i64
}

/// Checks `a^{(r)}_{λ+δ} = s_λ^{(r+1−m)} · a^{(r)}_δ` at random exact points;
/// used where symbolic composition of swaps grows too large.
pub fn verify_alternant_ratio(n: u32, m: u32, lambda: &Partition, r: i64, points: usize, seed: u64) -> Result<bool, RError> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let shape = crate::lsym::SkewShape::straight(lambda.clone());
    let num_alpha = staircase_plus(m, lambda);
    let den_alpha = staircase_plus(m, &Partition::empty());
    for _ in 0..points {
        let p = crate::lsym::random_point(n, m, &mut rng);
        let s = crate::lsym::loop_schur_tableaux(&p, &shape, alternant_color(m, r));
        if loop_alternant_at(&p, &num_alpha, r)? != s * loop_alternant_at(&p, &den_alpha, r)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::{Poly, VarId};
    use crate::lsym::{loop_schur_tableaux, SkewShape};

    fn x(i: u32, c: i64) -> RationalExpr {
        RationalExpr::var(VarId::new(i, c, 3))
    }

    #[test]
    fn words() {
        assert_eq!(transposition_word(1, 3).letters(), &[2, 1, 2]);
        assert_eq!(transposition_word(2, 3).letters(), &[2]);
        assert!(transposition_word(3, 3).is_empty());
        assert_eq!(transposition_word(1, 4).letters(), &[3, 2, 1, 2, 3]);
    }

    #[test]
    fn worked_entries() {
        let cols: Vec<_> = (1..=2).map(|j| apply_word(3, 2, &transposition_word(3 - j, 2)).unwrap()).collect();
        let a31 = alternant_matrix(&cols, &[3, 1], 1);
        assert!(a31[0][0].rational_eq(&x(2, 1).mul(&x(2, 3)).mul(&x(2, 2))));
        assert!(a31[0][1].rational_eq(&x(1, 1).mul(&x(1, 3)).mul(&x(1, 2))));
        let a10 = alternant_matrix(&cols, &[1, 0], 1);
        let k = |i| RationalExpr::from_poly(super::super::kappa_symbolic(3, i));
        assert!(a10[0][1].rational_eq(&x(1, 3).mul(&k(3)).div(&k(1)).unwrap()));
        assert!(a10[1][0].rational_eq(&RationalExpr::one_elem()));
    }

    #[test]
    fn worked_ratio() {
        let s = schur_via_alternants(3, 2, &Partition::new(vec![2, 1]).unwrap(), 1).unwrap();
        let expect = x(1, 3).mul(&x(2, 1)).mul(&x(1, 2)).add(&x(1, 3).mul(&x(2, 1)).mul(&x(2, 2)));
        assert!(s.rational_eq(&expect));
        let v = LoopVarArray::symbolic(3, 2);
        let sh = SkewShape::straight(Partition::new(vec![2, 1]).unwrap());
        assert!(s.rational_eq(&RationalExpr::from_poly(loop_schur_tableaux(&v, &sh, 0))));
    }

    #[test]
    fn classical_vandermonde() {
        let a = loop_alternant(1, 3, &[2, 1, 0], 1).unwrap();
        let v = |i| Poly::var(VarId::new(i, 1, 1));
        let vd = &(&(&v(3) - &v(2)) * &(&v(3) - &v(1))) * &(&v(2) - &v(1));
        assert!(a.rational_eq(&RationalExpr::from_poly(vd)));
        assert!(schur_via_alternants(2, 2, &Partition::empty(), 1).unwrap().rational_eq(&RationalExpr::one_elem()));
    }

    #[test]
    fn three_sites_shift_color() {
        for l in [vec![1], vec![2, 1], vec![2, 2]] {
            let p = Partition::new(l).unwrap();
            let s = schur_via_alternants(2, 3, &p, 1).unwrap();
            let v = LoopVarArray::symbolic(2, 3);
            let tab = |r| RationalExpr::from_poly(loop_schur_tableaux(&v, &SkewShape::straight(p.clone()), r));
            assert!(s.rational_eq(&tab(alternant_color(3, 1))));
            assert!(!s.rational_eq(&tab(0)));
            assert!(verify_alternant_ratio(3, 3, &p, 2, 3, 11).unwrap());
        }
    }

    #[test]
    fn bad_exponents() {
        assert_eq!(loop_alternant(2, 2, &[1, 1], 1).unwrap_err(), RError::BadExponents(2));
        assert_eq!(loop_alternant(2, 2, &[2, 1, 0], 1).unwrap_err(), RError::BadExponents(2));
    }
}
