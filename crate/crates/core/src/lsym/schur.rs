use std::collections::{BTreeSet, VecDeque};

use super::elementary::loop_e;
use super::shape::{ssyt_enumerate, Partition, SkewShape, Tableau};
use super::vars::LoopVarArray;
use crate::exactring::Ring;
use crate::linalg::determinant;

/// `x^{wt^{(r)}(T)} = ∏_s x_{T(s)}^{(c(s)+r)}` with content `c(i, j) = i − j`.
pub fn tableau_weight<R: Ring>(vars: &LoopVarArray<R>, t: &Tableau, r: i64) -> R {
    t.cells().iter().fold(R::one_elem(), |acc, &((i, j), v)| {
        acc.times(vars.get(v, i as i64 - j as i64 + r))
    })
}

/// Loop skew Schur function as a sum of r-weights over SSYT with entries at
/// most `m = vars.m()`.
pub fn loop_schur_tableaux<R: Ring>(vars: &LoopVarArray<R>, shape: &SkewShape, r: i64) -> R {
    ssyt_enumerate(shape, vars.m()).fold(R::zero_elem(), |acc, t| acc.plus(&tableau_weight(vars, &t, r)))
}

/// One Jacobi–Trudi entry `e_k^{(color)}` (with `k ≤ 0` meaning 1 or 0).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JtEntry {
    pub k: i64,
    pub color: i64,
}

/// The Jacobi–Trudi matrix for `s^{(r)}_{ρ/ν}`: with `λ = ρ'`, `μ = ν'`
/// (padded) and size `ℓ = ρ_1`, entry `(i, j)` is
/// `e^{(r − j + 1 + μ_j)}_{λ_i − μ_j − i + j}`.
pub fn jt_matrix(shape: &SkewShape, r: i64) -> Vec<Vec<JtEntry>> {
    let lam = shape.outer().conjugate();
    let mu = shape.inner().conjugate();
    let l = shape.outer().part(1) as usize;
    (1..=l)
        .map(|i| {
            (1..=l)
                .map(|j| {
                    let (li, mj) = (lam.part(i) as i64, mu.part(j) as i64);
                    JtEntry { k: li - mj - i as i64 + j as i64, color: r - j as i64 + 1 + mj }
                })
                .collect()
        })
        .collect()
}

/// Evaluates the Jacobi–Trudi determinant given any supplier of `e_k^{(c)}`
/// for `k ≥ 1`.
pub fn jt_determinant<R: Ring>(shape: &SkewShape, r: i64, mut e: impl FnMut(i64, i64) -> R) -> R {
    let m: Vec<Vec<R>> = jt_matrix(shape, r)
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|JtEntry { k, color }| match k {
                    0 => R::one_elem(),
                    k if k < 0 => R::zero_elem(),
                    k => e(k, color),
                })
                .collect()
        })
        .collect();
    determinant(&m)
}

/// Loop skew Schur function by the loop Jacobi–Trudi determinant in the
/// explicit loop elementary polynomials.
pub fn loop_schur_jt<R: Ring>(vars: &LoopVarArray<R>, shape: &SkewShape, r: i64) -> R {
    jt_determinant(shape, r, |k, c| loop_e(vars, k, c))
}

/// Murnaghan–Nakayama terms: all `μ ⊇ λ` with `μ/λ` a ribbon of `k·n` cells,
/// each with sign `(−1)^{rows(μ/λ) − 1}`.
pub fn mn_expand(n: u32, k: u32, lambda: &Partition) -> Vec<(Partition, i32)> {
    let size = k * n;
    let mut out = Vec::new();
    for mu in partitions_containing(lambda, size) {
        let skew = SkewShape::new(mu.clone(), lambda.clone()).expect("μ ⊇ λ by construction");
        if let Some(rows) = ribbon_rows(&skew) {
            out.push((mu, if rows % 2 == 1 { 1 } else { -1 }));
        }
    }
    out
}

/// All partitions `μ ⊇ λ` with `|μ| = |λ| + extra`.
fn partitions_containing(lambda: &Partition, extra: u32) -> Vec<Partition> {
    fn go(lambda: &Partition, row: usize, cap: u32, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        let base = lambda.part(row);
        if left == 0 {
            if base == 0 {
                out.push(Partition::new(cur.clone()).expect("weakly decreasing"));
            } else if base <= cap {
                cur.push(base);
                go(lambda, row + 1, base, 0, cur, out);
                cur.pop();
            }
            return;
        }
        if base > cap {
            return;
        }
        let hi = cap.min(base + left);
        for p in base..=hi {
            if p == 0 {
                continue;
            }
            cur.push(p);
            go(lambda, row + 1, p, left - (p - base), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(lambda, 1, u32::MAX, extra, &mut Vec::new(), &mut out);
    out
}

/// Number of rows of a ribbon (connected, no 2×2 block), or `None` if the
/// skew shape is not a ribbon.
pub fn ribbon_rows(skew: &SkewShape) -> Option<usize> {
    let cells: BTreeSet<(usize, u32)> = skew.cells().into_iter().collect();
    let first = *cells.iter().next()?;
    for &(i, j) in &cells {
        if cells.contains(&(i + 1, j)) && cells.contains(&(i, j + 1)) && cells.contains(&(i + 1, j + 1)) {
            return None;
        }
    }
    let mut seen = BTreeSet::from([first]);
    let mut queue = VecDeque::from([first]);
    while let Some((i, j)) = queue.pop_front() {
        let nbrs = [(i + 1, j), (i.wrapping_sub(1), j), (i, j + 1), (i, j.wrapping_sub(1))];
        for c in nbrs {
            if cells.contains(&c) && seen.insert(c) {
                queue.push_back(c);
            }
        }
    }
    if seen.len() != cells.len() {
        return None;
    }
    Some(cells.iter().map(|(i, _)| *i).collect::<BTreeSet<_>>().len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::{Poly, VarId};

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }
    fn x(i: u32, j: i64, n: u32) -> Poly {
        Poly::var(VarId::new(i, j, n))
    }

    #[test]
    fn worked_zero_weight() {
        let t = Tableau::new(part(&[2]), vec![vec![1, 1, 1, 3], vec![1, 2, 2, 3, 4], vec![3, 3, 4]]).unwrap();
        let v = LoopVarArray::symbolic(3, 4);
        let w = tableau_weight(&v, &t, 0);
        let factors = [(1, 1, 2), (3, 1, 3), (1, 2, 1), (2, 2, 1), (3, 2, 1), (1, 3, 1), (2, 3, 1), (4, 3, 2)];
        let expect = factors.iter().fold(Poly::one(), |acc, &(i, j, e)| &acc * &x(i, j, 3).pow(e));
        assert_eq!(w, expect);
    }

    #[test]
    fn jt_for_21() {
        let m = jt_matrix(&SkewShape::straight(part(&[2, 1])), 1);
        assert_eq!(m[0][0], JtEntry { k: 2, color: 1 });
        assert_eq!(m[0][1], JtEntry { k: 3, color: 0 });
        assert_eq!(m[1][0], JtEntry { k: 0, color: 1 });
        assert_eq!(m[1][1], JtEntry { k: 1, color: 0 });
        let v = LoopVarArray::symbolic(2, 3);
        let sh = SkewShape::straight(part(&[2, 1]));
        assert_eq!(loop_schur_jt(&v, &sh, 1), loop_schur_tableaux(&v, &sh, 1));
        // eight tableaux, two of which share the monomial x1^(1) x2^(2) x3^(2)
        let s = loop_schur_tableaux(&v, &sh, 1);
        let total: num_rational::BigRational = s.terms().map(|(_, c)| c.clone()).sum();
        assert_eq!((s.len(), total), (7, crate::exactring::rat(8)));
    }

    #[test]
    fn single_column_is_elementary() {
        let v = LoopVarArray::symbolic(3, 4);
        for k in 1..=4 {
            let col = SkewShape::straight(Partition::new(vec![1; k]).unwrap());
            for r in 1..=3 {
                assert_eq!(loop_schur_jt(&v, &col, r), loop_e(&v, k as i64, r));
                assert_eq!(loop_schur_tableaux(&v, &col, r), loop_e(&v, k as i64, r));
            }
        }
    }

    #[test]
    fn ribbons() {
        assert_eq!(mn_expand(1, 1, &Partition::empty()), vec![(part(&[1]), 1)]);
        let mut two = mn_expand(2, 1, &Partition::empty());
        two.sort();
        assert_eq!(two, vec![(part(&[1, 1]), -1), (part(&[2]), 1)]);
        // hooks of size 3 added to nothing: (3), (2,1), (1,1,1)
        assert_eq!(mn_expand(3, 1, &Partition::empty()).len(), 3);
        // (2,1)/(1) is disconnected, so only the row and the column survive
        let on_one: Vec<_> = mn_expand(2, 1, &part(&[1])).into_iter().map(|(p, s)| (p.parts().to_vec(), s)).collect();
        assert!(on_one.contains(&(vec![3], 1)));
        assert!(on_one.contains(&(vec![1, 1, 1], -1)));
        assert!(!on_one.iter().any(|(p, _)| p == &vec![2, 1]));
        assert_eq!(on_one.len(), 2);
    }
}
