use std::collections::BTreeMap;

use itertools::Itertools;

use super::matrix::MatrixPoly;
use super::vars::LoopVarArray;
use super::LsymError;
use crate::exactring::{canonical_color, Ring, Semiring};

/// `e_k^{(r)} = Σ_{i_1<…<i_k} x_{i_1}^{(r)} x_{i_2}^{(r+1)} ⋯ x_{i_k}^{(r+k−1)}`,
/// summed term by term over k-subsets of the sites.
pub fn loop_e<R: Ring>(vars: &LoopVarArray<R>, k: i64, r: i64) -> R {
    if k == 0 {
        return R::one_elem();
    }
    if k < 0 || k > vars.m() as i64 {
        return R::zero_elem();
    }
    let mut acc = R::zero_elem();
    for subset in (1..=vars.m()).combinations(k as usize) {
        let term = subset
            .iter()
            .enumerate()
            .fold(R::one_elem(), |t, (pos, &site)| t.times(vars.get(site, r + pos as i64)));
        acc = acc.plus(&term);
    }
    acc
}

/// The same sum evaluated in any semiring by dynamic programming over the
/// sites; `None` stands for the empty sum (k > m or k < 0). Used for
/// min-plus evaluation, where subset enumeration would be exponential.
pub fn loop_e_semiring<S: Semiring>(vars: &LoopVarArray<S>, k: i64, r: i64) -> Option<S> {
    if k < 0 || k > vars.m() as i64 {
        return None;
    }
    let k = k as usize;
    // best[j] = sum over increasing j-sequences among the sites seen so far
    let mut best: Vec<Option<S>> = vec![None; k + 1];
    best[0] = Some(S::unit());
    for site in 1..=vars.m() {
        for j in (1..=k).rev() {
            if let Some(prev) = &best[j - 1] {
                let ext = prev.otimes(vars.get(site, r + j as i64 - 1));
                best[j] = Some(match &best[j] {
                    Some(cur) => cur.oplus(&ext),
                    None => ext,
                });
            }
        }
    }
    best[k].clone()
}

/// `p̃_k = Σ_i (x_i^{(1)} ⋯ x_i^{(n)})^k`.
pub fn loop_powersum<R: Ring>(vars: &LoopVarArray<R>, k: u32) -> R {
    vars.sites().iter().fold(R::zero_elem(), |acc, site| {
        let prod = site.iter().fold(R::one_elem(), |p, x| p.times(x));
        acc.plus(&prod.pow(k))
    })
}

/// A table of loop elementary values `(k, r) ↦ e_k^{(r)}` read off a matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ETable<R> {
    n: u32,
    max_k: u32,
    values: BTreeMap<(u32, u32), R>,
}

impl<R: Ring> ETable<R> {
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Largest `k` the source matrix determines.
    pub fn max_k(&self) -> u32 {
        self.max_k
    }

    /// `e_k^{(r)}` with the conventions `e_0 = 1`, `e_{k<0} = 0`, and zero
    /// beyond the readable range.
    pub fn get(&self, k: i64, r: i64) -> R {
        if k == 0 {
            return R::one_elem();
        }
        if k < 0 {
            return R::zero_elem();
        }
        let c = canonical_color(r, self.n);
        self.values.get(&(k as u32, c)).cloned().unwrap_or_else(R::zero_elem)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &R)> {
        self.values.iter()
    }

    /// Builds a table directly from values (for certificates on supplied
    /// data).
    pub fn from_values(n: u32, values: BTreeMap<(u32, u32), R>) -> Self {
        let max_k = values.keys().map(|(k, _)| *k).max().unwrap_or(0);
        ETable { n, max_k, values }
    }
}

/// Reads `e_k^{(r)}` off `P_{r,c} = Σ_j e^{(r)}_{c−r+jn} t^j`. Each `(k, r)`
/// with `k ≥ 1` occurs exactly once in that pattern; the constant term must
/// be unit upper triangular (`e_0 = 1`, negative subscripts vanish).
pub fn extract_e<R: Ring>(p: &MatrixPoly<R>) -> Result<ETable<R>, LsymError> {
    let n = p.size();
    let one = R::one_elem();
    for r in 1..=n {
        for c in 1..=r {
            let v = p.entry_coeff(r, c, 0);
            let ok = if c == r { v.minus(&one).is_zero_elem() } else { v.is_zero_elem() };
            if !ok {
                return Err(LsymError::MalformedMatrix(format!(
                    "constant term at ({r},{c}) must be {}",
                    if c == r { 1 } else { 0 }
                )));
            }
        }
    }
    let deg = p.degree();
    let mut values = BTreeMap::new();
    for r in 1..=n {
        for c in 1..=n {
            for j in 0..=deg {
                let k = c as i64 - r as i64 + (j * n) as i64;
                if k >= 1 {
                    values.insert((k as u32, r as u32), p.entry_coeff(r, c, j));
                }
            }
        }
    }
    let max_k = (n * (deg + 1)) as u32 - 1;
    Ok(ETable { n: n as u32, max_k, values })
}

/// Highway-path generating function on the cylindric network: paths enter
/// on wire `from`, cross the columns `1..m` left to right, at column `i`
/// either continue straight (weight 1) or step from wire `w` to `w + 1`
/// (weight `x_i^{(w)}`), stepping from wire `n` back to wire 1 around the
/// cylinder. Returns the weight of paths that exit on wire `to` and use
/// exactly `k` steps, where `wraps = ⌈k / n⌉` counts turns around the loop
/// (so `wraps = 0` only for the straight path `r → r`).
pub fn boundary_measurement<R: Ring>(vars: &LoopVarArray<R>, from: u32, to: u32, wraps: u32) -> R {
    let n = vars.n();
    let offset = (to + n - from) % n;
    let k = if wraps == 0 {
        if offset != 0 {
            return R::zero_elem();
        }
        0
    } else {
        offset + (wraps - 1) * n + if offset == 0 { n } else { 0 }
    };
    // state: steps taken so far (wire is determined by from + steps)
    let mut paths: Vec<R> = vec![R::zero_elem(); k as usize + 1];
    paths[0] = R::one_elem();
    for site in 1..=vars.m() {
        for s in (1..=k as usize).rev() {
            if paths[s - 1].is_zero_elem() {
                continue;
            }
            let wire = from as i64 + s as i64 - 1;
            let step = paths[s - 1].times(vars.get(site, wire));
            paths[s] = paths[s].plus(&step);
        }
    }
    paths[k as usize].clone()
}

/// Underway cycle measurement: a closed highway cycle that turns `wraps`
/// times around the loop inside a single column `i` picks up every color of
/// that column `wraps` times.
pub fn cycle_measurement<R: Ring>(vars: &LoopVarArray<R>, wraps: u32) -> R {
    let mut acc = R::zero_elem();
    for site in 1..=vars.m() {
        let mut w = R::one_elem();
        for step in 0..(wraps * vars.n()) {
            w = w.times(vars.get(site, step as i64 + 1));
        }
        acc = acc.plus(&w);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::{Poly, Trop, VarId};
    use crate::lsym::matrix::whirl_product;

    fn x(i: u32, j: i64, n: u32) -> Poly {
        Poly::var(VarId::new(i, j, n))
    }

    #[test]
    fn worked_e2() {
        let v = LoopVarArray::symbolic(2, 3);
        let e2 = loop_e(&v, 2, 1);
        let expect = &(&(&x(1, 1, 2) * &x(2, 2, 2)) + &(&x(2, 1, 2) * &x(3, 2, 2))) + &(&x(1, 1, 2) * &x(3, 2, 2));
        assert_eq!(e2, expect);
        assert_eq!(loop_e(&v, 0, 1), Poly::one());
        assert_eq!(loop_e(&v, 4, 1), Poly::zero());
        assert_eq!(loop_e(&v, -1, 1), Poly::zero());
    }

    #[test]
    fn extract_matches_explicit_and_worked_e3() {
        let v = LoopVarArray::symbolic(2, 3);
        let t = extract_e(&whirl_product(&v)).unwrap();
        assert_eq!(t.get(3, 2), &(&x(1, 2, 2) * &x(2, 1, 2)) * &x(3, 2, 2));
        for k in 1..=6 {
            for r in 1..=2 {
                assert_eq!(t.get(k, r), loop_e(&v, k, r), "k={k} r={r}");
            }
        }
    }

    #[test]
    fn extract_rejects_bad_constant_term() {
        let p = MatrixPoly::new(2, vec![vec![vec![Poly::one(), Poly::zero()], vec![Poly::one(), Poly::one()]]]).unwrap();
        assert!(matches!(extract_e(&p), Err(LsymError::MalformedMatrix(_))));
        let id: MatrixPoly<Poly> = MatrixPoly::identity(3);
        let t = extract_e(&id).unwrap();
        assert!(t.iter().all(|(_, v)| v.is_zero()));
    }

    #[test]
    fn semiring_dp_agrees_with_subsets() {
        let v = LoopVarArray::symbolic(3, 4);
        for k in 0..=4 {
            for r in 1..=3 {
                assert_eq!(loop_e_semiring(&v, k, r), Some(loop_e(&v, k, r)));
            }
        }
        let t = LoopVarArray::from_fn(2, 3, |i, j| Trop((i * 3 + j) as i64 % 4));
        // min over pairs i1<i2 of x_{i1}^(1) + x_{i2}^(2): values 0,2,2 / 1,3,3 …
        let brute = (1..=3u32)
            .tuple_combinations()
            .map(|(a, b)| t.get(a, 1).0 + t.get(b, 2).0)
            .min()
            .unwrap();
        assert_eq!(loop_e_semiring(&t, 2, 1), Some(Trop(brute)));
        assert_eq!(loop_e_semiring(&t, 4, 1), None);
    }

    #[test]
    fn network_example() {
        let v = LoopVarArray::symbolic(2, 2);
        assert_eq!(boundary_measurement(&v, 1, 1, 1), &x(1, 1, 2) * &x(2, 2, 2));
        assert_eq!(boundary_measurement(&v, 1, 2, 1), &x(1, 1, 2) + &x(2, 1, 2));
        assert_eq!(boundary_measurement(&v, 2, 2, 0), Poly::one());
        assert_eq!(boundary_measurement(&v, 1, 2, 0), Poly::zero());
        let p1 = &(&x(1, 1, 2) * &x(1, 2, 2)) + &(&x(2, 1, 2) * &x(2, 2, 2));
        assert_eq!(cycle_measurement(&v, 1), p1);
        assert_eq!(loop_powersum(&v, 1), p1);
        assert_eq!(cycle_measurement(&v, 2), loop_powersum(&v, 2));
    }
}
