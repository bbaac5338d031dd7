//! Ordinary symmetric polynomials in `x_1, …, x_m`, built independently of
//! the loop machinery (complete homogeneous polynomials and the
//! h-Jacobi–Trudi determinant). Variables are `x[i]^(1)` with `n = 1`.

use itertools::Itertools;

use super::shape::SkewShape;
use crate::exactring::{Poly, VarId};
use crate::linalg::determinant;

fn x(i: u32) -> Poly {
    Poly::var(VarId::new(i, 1, 1))
}

/// `h_k(x_1..x_m)` as the sum over multisets of size `k`.
pub fn complete(m: u32, k: i64) -> Poly {
    if k < 0 {
        return Poly::zero();
    }
    (1..=m)
        .combinations_with_replacement(k as usize)
        .fold(Poly::zero(), |acc, ms| &acc + &ms.iter().fold(Poly::one(), |p, &i| &p * &x(i)))
}

pub fn elementary(m: u32, k: i64) -> Poly {
    if k < 0 || k > m as i64 {
        return Poly::zero();
    }
    (1..=m)
        .combinations(k as usize)
        .fold(Poly::zero(), |acc, s| &acc + &s.iter().fold(Poly::one(), |p, &i| &p * &x(i)))
}

pub fn powersum(m: u32, k: u32) -> Poly {
    (1..=m).fold(Poly::zero(), |acc, i| &acc + &x(i).pow(k))
}

/// `s_{λ/μ} = det(h_{λ_i − μ_j − i + j})` of size `ℓ(λ)`.
pub fn schur(m: u32, shape: &SkewShape) -> Poly {
    let (lam, mu) = (shape.outer(), shape.inner());
    let l = lam.len();
    let mat: Vec<Vec<Poly>> = (1..=l)
        .map(|i| {
            (1..=l)
                .map(|j| complete(m, lam.part(i) as i64 - mu.part(j) as i64 - i as i64 + j as i64))
                .collect()
        })
        .collect();
    determinant(&mat)
}

/// Identifies all colors: `x_i^{(s)} ↦ x_i`.
pub fn collapse_colors(p: &Poly) -> Poly {
    p.map_vars(|v| VarId::new(v.site(), 1, 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lsym::Partition;

    #[test]
    fn s21_in_three_variables() {
        let s = schur(3, &SkewShape::straight(Partition::new(vec![2, 1]).unwrap()));
        assert_eq!(s.len(), 7); // 6 distinct monomials x_i^2 x_j plus 2·x1x2x3
        let e = &(&elementary(3, 2) * &elementary(3, 1)) - &elementary(3, 3);
        assert_eq!(s, e);
    }
}
