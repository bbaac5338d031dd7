use std::collections::{BTreeSet, VecDeque};

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactring::Ring;
use crate::linalg::determinant;
use crate::lsym::{whirl, whirl_product, LoopVarArray, MatrixPoly};
use crate::rmatrix::{apply_word_values, PermWord};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FactorError {
    #[error("P(0) is not unit upper triangular")]
    NotUniUpperTriangular,
    #[error("det P(t) has non-real roots, so no real whirl factorization exists")]
    NoRealFactorization,
    #[error("no convergence: {0}")]
    NoConvergence(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct FactorizationResult {
    pub params: LoopVarArray<f64>,
    /// Max-norm of `P − whirl_product(params)`.
    pub residual: f64,
    pub converged: bool,
    /// Damped Newton iterations spent after the peeling guess.
    pub iterations: usize,
}

impl FactorizationResult {
    pub fn is_nonnegative(&self, tol: f64) -> bool {
        self.params.sites().iter().flatten().all(|&v| v >= -tol)
    }
}

/// Univariate polynomial with `f64` coefficients, low degree first; used to
/// take determinants and adjugates of matrix polynomials.
#[derive(Clone, Debug, PartialEq)]
struct UPoly(Vec<f64>);

impl UPoly {
    fn eval(&self, t: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * t + c)
    }

    fn coeff(&self, d: usize) -> f64 {
        self.0.get(d).copied().unwrap_or(0.0)
    }

    /// Quotient by `1 + c t` (the remainder is dropped).
    fn div_linear(&self, c: f64) -> UPoly {
        let d = self.0.len();
        if d <= 1 {
            return UPoly(vec![0.0]);
        }
        // high-to-low synthetic division by c·(t + 1/c)
        let mut q = vec![0.0; d - 1];
        let mut carry = 0.0;
        for k in (1..d).rev() {
            let v = (self.0[k] - carry) / c;
            q[k - 1] = v;
            carry = v;
        }
        UPoly(q)
    }
}

impl Ring for UPoly {
    fn zero_elem() -> Self {
        UPoly(vec![])
    }
    fn one_elem() -> Self {
        UPoly(vec![1.0])
    }
    fn is_zero_elem(&self) -> bool {
        self.0.iter().all(|&c| c == 0.0)
    }
    fn plus(&self, rhs: &Self) -> Self {
        let l = self.0.len().max(rhs.0.len());
        UPoly((0..l).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negated())
    }
    fn times(&self, rhs: &Self) -> Self {
        if self.0.is_empty() || rhs.0.is_empty() {
            return UPoly(vec![]);
        }
        let mut out = vec![0.0; self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly(out)
    }
    fn negated(&self) -> Self {
        UPoly(self.0.iter().map(|c| -c).collect())
    }
    fn from_rational(q: &BigRational) -> Self {
        UPoly(vec![q.to_f64().unwrap_or(f64::NAN)])
    }
}

fn entries(p: &MatrixPoly<f64>) -> Vec<Vec<UPoly>> {
    let n = p.size();
    (1..=n).map(|i| (1..=n).map(|j| UPoly(p.entry(i, j))).collect()).collect()
}

fn from_entries(e: &[Vec<UPoly>], degree: usize) -> MatrixPoly<f64> {
    let n = e.len();
    let coeffs = (0..=degree).map(|d| (0..n).map(|i| (0..n).map(|j| e[i][j].coeff(d)).collect()).collect()).collect();
    MatrixPoly::new(n, coeffs).expect("square blocks")
}

fn cofactor(m: &[Vec<UPoly>], i: usize, j: usize) -> UPoly {
    let minor: Vec<Vec<UPoly>> = m
        .iter()
        .enumerate()
        .filter(|(r, _)| *r != i)
        .map(|(_, row)| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect())
        .collect();
    let d = determinant(&minor);
    if (i + j) % 2 == 1 {
        d.negated()
    } else {
        d
    }
}

fn max_abs_diff(a: &MatrixPoly<f64>, b: &MatrixPoly<f64>) -> f64 {
    let deg = a.degree().max(b.degree());
    let n = a.size();
    let mut worst = 0.0f64;
    for d in 0..=deg {
        let (ca, cb) = (a.coeff(d), b.coeff(d));
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((ca[i][j] - cb[i][j]).abs());
            }
        }
    }
    worst
}

fn is_uni_upper(p: &MatrixPoly<f64>, tol: f64) -> bool {
    let c = p.coeff(0);
    let n = p.size();
    (0..n).all(|i| (c[i][i] - 1.0).abs() <= tol && (0..i).all(|j| c[i][j].abs() <= tol))
}

/// Real roots of a polynomial (low degree first) via companion-matrix
/// eigenvalues, refined by Newton; `None` if a root is not real.
fn real_roots(c: &[f64]) -> Option<Vec<f64>> {
    let scale = c.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let mut c = c.to_vec();
    while c.len() > 1 && c.last().is_some_and(|v| v.abs() <= 1e-12 * scale) {
        c.pop();
    }
    let d = c.len() - 1;
    if d == 0 {
        return Some(vec![]);
    }
    let lead = c[d];
    let mut comp = DMatrix::<f64>::zeros(d, d);
    for i in 1..d {
        comp[(i, i - 1)] = 1.0;
    }
    for i in 0..d {
        comp[(i, d - 1)] = -c[i] / lead;
    }
    let p = UPoly(c.clone());
    let dp = UPoly(c.iter().enumerate().skip(1).map(|(k, v)| k as f64 * v).collect());
    let mut roots = Vec::with_capacity(d);
    for z in comp.complex_eigenvalues().iter() {
        if z.im.abs() > 1e-7 * z.re.abs().max(1.0) {
            return None;
        }
        let mut t = z.re;
        for _ in 0..3 {
            let g = dp.eval(t);
            if g != 0.0 {
                t -= p.eval(t) / g;
            }
        }
        roots.push(t);
    }
    roots.sort_by(|a, b| a.total_cmp(b));
    Some(roots)
}

/// The whirl `M(a)` with `P(t₀)` annihilating its kernel: from a kernel
/// vector `v` of `P(t₀)`, `a_i = −v_i/v_{i+1}` and `a_n = −v_n/(t₀ v_1)`.
fn factor_at_root(p: &MatrixPoly<f64>, t0: f64) -> Option<Vec<f64>> {
    let n = p.size();
    let at = p.eval_t(&t0);
    let m = DMatrix::from_fn(n, n, |i, j| at[i][j]);
    let svd = m.svd(false, true);
    let vt = svd.v_t?;
    let k = svd.singular_values.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1))?.0;
    let v: Vec<f64> = (0..n).map(|j| vt[(k, j)]).collect();
    let mut a: Vec<f64> = (0..n - 1).map(|i| -v[i] / v[i + 1]).collect();
    a.push(-v[n - 1] / (t0 * v[0]));
    a.iter().all(|x| x.is_finite()).then_some(a)
}

/// `P · M(a)^{-1} = P · adj M(a) / (1 + (−1)^{n+1} a_1⋯a_n t)`.
fn peel(p: &MatrixPoly<f64>, a: &[f64]) -> MatrixPoly<f64> {
    let n = p.size();
    let mw = entries(&whirl(a));
    let adj: Vec<Vec<UPoly>> = (0..n).map(|i| (0..n).map(|j| cofactor(&mw, j, i)).collect()).collect();
    let pe = entries(p);
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    let c = sign * a.iter().product::<f64>();
    let prod: Vec<Vec<UPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(UPoly::zero_elem(), |acc, k| acc.plus(&pe[i][k].times(&adj[k][j]))).div_linear(c))
                .collect()
        })
        .collect();
    from_entries(&prod, p.degree().saturating_sub(1))
}

fn det_poly(p: &MatrixPoly<f64>) -> Vec<f64> {
    determinant(&entries(p)).0
}

/// Peels factors from the right, trying every real root of `det P` and
/// preferring branches with nonnegative parameters.
fn peel_all(p: &MatrixPoly<f64>, m: u32, tol: f64) -> Result<Option<Vec<Vec<f64>>>, FactorError> {
    if m == 0 {
        return Ok(Some(vec![]));
    }
    let roots = real_roots(&det_poly(p)).ok_or(FactorError::NoRealFactorization)?;
    let mut fallback = None;
    for &t0 in &roots {
        if t0 == 0.0 {
            continue;
        }
        let Some(a) = factor_at_root(p, t0) else { continue };
        let q = peel(p, &a);
        if let Ok(Some(mut rest)) = peel_all(&q, m - 1, tol) {
            rest.push(a);
            if rest.iter().flatten().all(|&v| v >= -tol) {
                return Ok(Some(rest));
            }
            fallback.get_or_insert(rest);
        }
    }
    Ok(fallback)
}

/// `∂P/∂x_i^{(j)} = M(x_1)⋯E_j⋯M(x_m)`, flattened over coefficients up to
/// degree `m`; also returns the residual vector of `whirl_product − P`.
fn jacobian(params: &LoopVarArray<f64>, target: &MatrixPoly<f64>) -> (DMatrix<f64>, DVector<f64>) {
    let (n, m) = (params.n() as usize, params.m() as usize);
    let factors: Vec<MatrixPoly<f64>> = params.sites().iter().map(|s| whirl(s)).collect();
    let mut left = vec![MatrixPoly::identity(n)];
    for f in &factors {
        left.push(left.last().expect("nonempty").mul(f));
    }
    let mut right = vec![MatrixPoly::identity(n)];
    for f in factors.iter().rev() {
        right.push(f.mul(right.last().expect("nonempty")));
    }
    right.reverse();
    let deg = m.max(target.degree());
    let rows = (deg + 1) * n * n;
    let flatten = |p: &MatrixPoly<f64>| -> Vec<f64> {
        (0..=deg).flat_map(|d| p.coeff(d).into_iter().flatten().collect::<Vec<_>>()).collect()
    };
    let mut jac = DMatrix::zeros(rows, n * m);
    for i in 0..m {
        for j in 0..n {
            let mut unit = vec![0.0; n];
            unit[j] = 1.0;
            // the derivative of a whirl in one parameter, with the identity removed
            let e = whirl(&unit);
            let mut coeffs = e.coeffs().to_vec();
            for (k, row) in coeffs[0].iter_mut().enumerate() {
                row[k] = 0.0;
            }
            let de = MatrixPoly::new(n, coeffs).expect("square");
            let col = flatten(&left[i].mul(&de).mul(&right[i + 1]));
            for (r, v) in col.into_iter().enumerate() {
                jac[(r, i * n + j)] = v;
            }
        }
    }
    let cur = flatten(&left[m]);
    let tgt = flatten(target);
    let res = DVector::from_iterator(rows, cur.iter().zip(&tgt).map(|(a, b)| a - b));
    (jac, res)
}

/// Levenberg–Marquardt on `whirl_product(params) = P`.
fn refine(start: LoopVarArray<f64>, target: &MatrixPoly<f64>, tol: f64, max_iter: usize) -> (LoopVarArray<f64>, f64, usize) {
    let (n, m) = (start.n(), start.m());
    let mut x = start;
    let mut lambda = 1e-3;
    let (mut jac, mut res) = jacobian(&x, target);
    let mut cost = res.norm_squared();
    let mut iters = 0;
    while iters < max_iter && res.amax() > tol / 10.0 {
        iters += 1;
        let jtj = jac.transpose() * &jac;
        let g = jac.transpose() * &res;
        let mut a = jtj.clone();
        for k in 0..a.nrows() {
            a[(k, k)] += lambda * (jtj[(k, k)] + 1e-12);
        }
        let Some(step) = a.lu().solve(&(-g)) else { break };
        let flat: Vec<f64> = x.sites().iter().flatten().zip(step.iter()).map(|(v, s)| v + s).collect();
        let cand = LoopVarArray::from_fn(n, m, |i, j| flat[((i - 1) * n + j - 1) as usize]);
        let (cj, cr) = jacobian(&cand, target);
        let c = cr.norm_squared();
        if c < cost {
            x = cand;
            jac = cj;
            res = cr;
            cost = c;
            lambda = (lambda / 3.0).max(1e-15);
        } else {
            lambda *= 4.0;
            if lambda > 1e12 {
                break;
            }
        }
    }
    let r = max_abs_diff(&whirl_product(&x), target);
    (x, r, iters)
}

/// Factors `P(t)` as `M(x_1)⋯M(x_m)`: peel the rightmost whirl at each
/// real root of `det P`, then polish all parameters by damped Newton.
pub fn whirl_factorize(p: &MatrixPoly<f64>, m: u32, tol: f64, max_iter: usize) -> Result<FactorizationResult, FactorError> {
    let n = p.size() as u32;
    if !is_uni_upper(p, 1e-9) {
        return Err(FactorError::NotUniUpperTriangular);
    }
    if m == 0 || max_abs_diff(p, &MatrixPoly::identity(n as usize)) <= tol {
        let params = LoopVarArray::from_fn(n, m, |_, _| 0.0);
        let residual = max_abs_diff(p, &whirl_product(&params));
        return Ok(FactorizationResult { converged: residual <= tol, params, residual, iterations: 0 });
    }
    let det = det_poly(p);
    let det_deg = det.iter().rposition(|v| v.abs() > 1e-12 * det.iter().fold(0.0f64, |a, v| a.max(v.abs())));
    if det_deg != Some(m as usize) {
        return Err(FactorError::NoConvergence(format!(
            "det P(t) has degree {}, expected {m}",
            det_deg.unwrap_or(0)
        )));
    }
    let start = match peel_all(p, m, 1e-9)? {
        Some(sites) => LoopVarArray::new(n, sites).expect("n parameters per site"),
        None => LoopVarArray::from_fn(n, m, |_, _| 0.5),
    };
    let (params, residual, iterations) = refine(start, p, tol, max_iter);
    if residual <= tol && residual.is_finite() {
        Ok(FactorizationResult { params, residual, converged: true, iterations })
    } else {
        Err(FactorError::NoConvergence(format!("residual {residual:.3e} after {iterations} iterations")))
    }
}

/// For `n = 1` with rational coefficients: the factorization
/// `p(t) = ∏(1 + x_i t)` by the rational root theorem, when every root is
/// rational.
pub fn exact_n1_factorization(p: &[BigRational]) -> Option<Vec<BigRational>> {
    if p.first() != Some(&BigRational::one()) {
        return None;
    }
    let denom = p.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut c: Vec<BigInt> = p.iter().map(|q| q.numer() * (&denom / q.denom())).collect();
    while c.len() > 1 && c.last().is_some_and(|v| v.is_zero()) {
        c.pop();
    }
    let divisors = |v: &BigInt| -> Option<Vec<BigInt>> {
        let v = v.abs().to_u64()?;
        if v > 1_000_000_000_000 {
            return None;
        }
        let mut out = Vec::new();
        let mut d = 1u64;
        while d * d <= v {
            if v % d == 0 {
                out.push(BigInt::from(d));
                out.push(BigInt::from(v / d));
            }
            d += 1;
        }
        Some(out)
    };
    // candidates for x = −1/t from the rational root theorem on p
    let mut xs = Vec::new();
    let mut cur: Vec<BigRational> = c.iter().map(|v| BigRational::from_integer(v.clone())).collect();
    let lead_divs = divisors(c.last()?)?;
    let const_divs = divisors(&c[0])?;
    let vanishes = |poly: &[BigRational], x: &BigRational| -> bool {
        let t = -x.recip();
        poly.iter().rev().fold(BigRational::zero(), |acc, ck| acc * &t + ck).is_zero()
    };
    while cur.len() > 1 {
        let found = lead_divs.iter().flat_map(|num| const_divs.iter().map(move |den| (num, den))).find_map(|(num, den)| {
            let x = BigRational::new(num.clone(), den.clone());
            (x.is_positive() || x.is_negative()).then_some(())?;
            [x.clone(), -x].into_iter().find(|x| vanishes(&cur, x))
        })?;
        // divide by (1 + x t)
        let mut q = vec![BigRational::zero(); cur.len() - 1];
        let mut carry = BigRational::zero();
        for k in 0..cur.len() - 1 {
            let v = &cur[k] - &carry * &found;
            q[k] = v.clone();
            carry = v;
        }
        cur = q;
        xs.push(found);
    }
    xs.sort();
    Some(xs)
}

/// Words realizing every element of `S_m` (BFS over permutations).
fn group_words(m: u32) -> Vec<PermWord> {
    let start: Vec<u32> = (0..m).collect();
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start, vec![])]);
    let mut out = Vec::new();
    while let Some((perm, word)) = queue.pop_front() {
        out.push(PermWord::new(word.clone()).expect("letters start at 1"));
        for k in 1..m {
            let mut p = perm.clone();
            p.swap(k as usize - 1, k as usize);
            if seen.insert(p.clone()) {
                let mut w = word.clone();
                w.push(k);
                queue.push_back((p, w));
            }
        }
    }
    out
}

/// Whether some element of `S_m` carries `a` to `b` within a relative
/// tolerance (the whirl products are compared first).
pub fn orbit_match(a: &LoopVarArray<f64>, b: &LoopVarArray<f64>, tol: f64) -> bool {
    if a.n() != b.n() || a.m() != b.m() {
        return false;
    }
    let close = |x: f64, y: f64| (x - y).abs() <= tol * x.abs().max(y.abs()).max(1.0);
    let (pa, pb) = (whirl_product(a), whirl_product(b));
    let scale = pa.coeffs().iter().flatten().flatten().fold(1.0f64, |s, v| s.max(v.abs()));
    if max_abs_diff(&pa, &pb) > tol * scale {
        return false;
    }
    group_words(a.m()).iter().any(|w| match apply_word_values(a, w) {
        Ok(img) => img.sites().iter().flatten().zip(b.sites().iter().flatten()).all(|(x, y)| close(*x, *y)),
        Err(_) => false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::{rat, ratio};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn scalar(c: &[f64]) -> MatrixPoly<f64> {
        MatrixPoly::new(1, c.iter().map(|&v| vec![vec![v]]).collect()).unwrap()
    }

    fn random_params(rng: &mut ChaCha8Rng, n: u32, m: u32) -> LoopVarArray<f64> {
        LoopVarArray::from_fn(n, m, |_, _| rng.gen_range(0.05..=1.0))
    }

    #[test]
    fn quadratic() {
        let r = whirl_factorize(&scalar(&[1.0, 3.0, 2.0]), 2, 1e-10, 50).unwrap();
        let mut xs: Vec<f64> = r.params.sites().iter().flatten().copied().collect();
        xs.sort_by(|a, b| a.total_cmp(b));
        assert!((xs[0] - 1.0).abs() < 1e-12 && (xs[1] - 2.0).abs() < 1e-12);
        assert_eq!(whirl_factorize(&scalar(&[1.0, 1.0, 1.0]), 2, 1e-10, 50), Err(FactorError::NoRealFactorization));
        assert_eq!(exact_n1_factorization(&[rat(1), rat(3), rat(2)]), Some(vec![rat(1), rat(2)]));
        assert_eq!(exact_n1_factorization(&[rat(1), ratio(5, 6), ratio(1, 6)]), Some(vec![ratio(1, 3), ratio(1, 2)]));
        assert_eq!(exact_n1_factorization(&[rat(1), rat(1), rat(1)]), None);
        assert_eq!(exact_n1_factorization(&[rat(1), rat(0), rat(-1)]), Some(vec![rat(-1), rat(1)]));
    }

    #[test]
    fn rejects_bad_constant_term() {
        let p = MatrixPoly::new(2, vec![vec![vec![1.0, 0.0], vec![1.0, 1.0]]]).unwrap();
        assert_eq!(whirl_factorize(&p, 1, 1e-10, 10), Err(FactorError::NotUniUpperTriangular));
        let id = MatrixPoly::<f64>::identity(2);
        assert!(whirl_factorize(&id, 2, 1e-10, 10).unwrap().converged);
    }

    #[test]
    fn peeling_recovers_a_single_whirl() {
        let a = [0.3, 0.7, 0.2];
        let p = whirl(&a);
        let roots = real_roots(&det_poly(&p)).unwrap();
        assert_eq!(roots.len(), 1);
        let got = factor_at_root(&p, roots[0]).unwrap();
        assert!(got.iter().zip(&a).all(|(x, y)| (x - y).abs() < 1e-12));
        let q = peel(&p, &got);
        assert!(max_abs_diff(&q, &MatrixPoly::identity(3)) < 1e-12);
    }

    #[test]
    fn round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (n, m) in [(1, 3), (2, 2), (2, 3), (3, 2), (3, 3)] {
            for _ in 0..4 {
                let x = random_params(&mut rng, n, m);
                let r = whirl_factorize(&whirl_product(&x), m, 1e-8, 200).unwrap();
                assert!(r.converged && r.residual <= 1e-8, "{n} {m}: {}", r.residual);
                assert!(orbit_match(&x, &r.params, 1e-6), "{n} {m}");
            }
        }
    }

    #[test]
    fn orbit_matching() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = random_params(&mut rng, 2, 2);
        assert!(orbit_match(&x, &x, 1e-9));
        let swapped = apply_word_values(&x, &PermWord::new(vec![1]).unwrap()).unwrap();
        assert!(orbit_match(&x, &swapped, 1e-9));
        assert!(!orbit_match(&x, &random_params(&mut rng, 2, 2), 1e-9));
        assert_eq!(group_words(3).len(), 6);
    }
}
