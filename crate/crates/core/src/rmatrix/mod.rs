//! The birational R-matrix: κ-functions, the swap `s` of two columns of
//! variables, the induced S_m action, and loop alternants.

mod alternant;
mod word;

pub use alternant::{
    alternant_color, loop_alternant, loop_alternant_at, schur_via_alternants, transposition_word, verify_alternant_ratio,
};
pub use word::PermWord;

use std::collections::BTreeMap;

use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactring::{canonical_color, ExactError, Poly, RationalExpr, Semifield, Semiring, VarId};
use crate::lsym::{random_point, whirl_product, LoopVarArray};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RError {
    #[error("κ vanishes at this point; the swap is undefined here")]
    KappaVanishes,
    #[error("adjacent transposition s{k} is out of range for m = {m}")]
    WordOutOfRange { k: u32, m: u32 },
    #[error("alternant denominator vanishes identically")]
    DegenerateDenominator,
    #[error("alternant exponents must be strictly decreasing of length m = {0}")]
    BadExponents(u32),
    #[error("cannot parse permutation word: {0}")]
    Parse(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

fn at<T>(v: &[T], raw: i64) -> &T {
    &v[canonical_color(raw, v.len() as u32) as usize - 1]
}

/// `κ_i(x, y) = Σ_{j=i}^{i+n−1} ∏_{k=i+1}^{j} y^{(k)} ∏_{k=j+1}^{i+n−1} x^{(k)}`.
pub fn kappa<T: Semiring>(i: i64, x: &[T], y: &[T]) -> T {
    let n = x.len() as i64;
    assert_eq!(x.len(), y.len(), "κ needs two n-vectors");
    let mut acc: Option<T> = None;
    for j in i..i + n {
        let mut term = T::unit();
        for k in (i + 1)..=j {
            term = term.otimes(at(y, k));
        }
        for k in (j + 1)..(i + n) {
            term = term.otimes(at(x, k));
        }
        acc = Some(match acc {
            None => term,
            Some(a) => a.oplus(&term),
        });
    }
    acc.expect("n ≥ 1")
}

/// `κ_i` as a polynomial in `x = x_1^{(·)}` and `y = x_2^{(·)}`.
pub fn kappa_symbolic(n: u32, i: i64) -> Poly {
    let v = LoopVarArray::symbolic(n, 2);
    kappa(i, v.site(1), v.site(2))
}

/// The images `(s(x), s(y))` of the swap.
#[derive(Clone, Debug, PartialEq)]
pub struct SwapResult<T> {
    pub x_out: Vec<T>,
    pub y_out: Vec<T>,
}

/// `s(x^{(i)}) = y^{(i+1)} κ_{i+1}/κ_i`, `s(y^{(i)}) = x^{(i−1)} κ_{i−1}/κ_i`.
pub fn swap<T: Semifield>(x: &[T], y: &[T]) -> Result<SwapResult<T>, RError> {
    let n = x.len() as i64;
    let kap: Vec<T> = (1..=n).map(|i| kappa(i, x, y)).collect();
    let mut x_out = Vec::with_capacity(n as usize);
    let mut y_out = Vec::with_capacity(n as usize);
    for i in 1..=n {
        let ki = at(&kap, i);
        let sx = at(y, i + 1).otimes(at(&kap, i + 1)).odiv(ki).ok_or(RError::KappaVanishes)?;
        let sy = at(x, i - 1).otimes(at(&kap, i - 1)).odiv(ki).ok_or(RError::KappaVanishes)?;
        x_out.push(sx);
        y_out.push(sy);
    }
    Ok(SwapResult { x_out, y_out })
}

/// `s_k` as a substitution on sites `k, k+1` of an `n`-colored array.
pub fn swap_bindings(n: u32, k: u32) -> BTreeMap<VarId, RationalExpr> {
    let xs: Vec<RationalExpr> = (1..=n).map(|c| RationalExpr::var(VarId::new(k, c as i64, n))).collect();
    let ys: Vec<RationalExpr> = (1..=n).map(|c| RationalExpr::var(VarId::new(k + 1, c as i64, n))).collect();
    let s = swap(&xs, &ys).expect("κ is a nonzero polynomial");
    let mut out = BTreeMap::new();
    for c in 1..=n {
        out.insert(VarId::new(k, c as i64, n), s.x_out[c as usize - 1].clone());
        out.insert(VarId::new(k + 1, c as i64, n), s.y_out[c as usize - 1].clone());
    }
    out
}

/// Applies the word letter by letter (left to right) to a point, replacing
/// sites `k, k+1` by their swap each time.
pub fn apply_word_values<T: Semifield>(vals: &LoopVarArray<T>, w: &PermWord) -> Result<LoopVarArray<T>, RError> {
    w.check(vals.m())?;
    let mut cur = vals.clone();
    for &k in w.letters() {
        let s = swap(cur.site(k), cur.site(k + 1))?;
        cur.set_site(k, s.x_out);
        cur.set_site(k + 1, s.y_out);
    }
    Ok(cur)
}

/// The symbolic images of all `x_i^{(j)}` under the word, computed by
/// composing the cached swap substitutions.
pub fn apply_word(n: u32, m: u32, w: &PermWord) -> Result<LoopVarArray<RationalExpr>, RError> {
    w.check(m)?;
    let mut cur = LoopVarArray::symbolic_rational(n, m);
    let mut cache: BTreeMap<u32, BTreeMap<VarId, RationalExpr>> = BTreeMap::new();
    for &k in w.letters() {
        let formulas = cache.entry(k).or_insert_with(|| swap_bindings(n, k));
        let mut bind = BTreeMap::new();
        for site in [k, k + 1] {
            for c in 1..=n {
                bind.insert(VarId::new(site, c as i64, n), cur.get(site, c as i64).clone());
            }
        }
        for site in [k, k + 1] {
            let imgs = (1..=n)
                .map(|c| formulas[&VarId::new(site, c as i64, n)].substitute(&bind))
                .collect::<Result<Vec<_>, _>>()?;
            cur.set_site(site, imgs);
        }
    }
    Ok(cur)
}

/// How a rational identity is decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    /// Cross-multiplied polynomial equality.
    Symbolic,
    /// Exact evaluation at `points` random points from `1..=10^6`.
    Random { points: usize, seed: u64 },
}

/// Whether `M(x_1)⋯M(x_m) = M(w(x)_1)⋯M(w(x)_m)`.
pub fn verify_whirl_commutation(n: u32, m: u32, w: &PermWord, mode: CheckMode) -> Result<bool, RError> {
    match mode {
        CheckMode::Symbolic => {
            let before = whirl_product(&LoopVarArray::symbolic_rational(n, m));
            let after = whirl_product(&apply_word(n, m, w)?);
            let deg = before.degree().max(after.degree());
            for d in 0..=deg {
                for i in 1..=n as usize {
                    for j in 1..=n as usize {
                        if !before.entry_coeff(i, j, d).rational_eq(&after.entry_coeff(i, j, d)) {
                            return Ok(false);
                        }
                    }
                }
            }
            Ok(true)
        }
        CheckMode::Random { points, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..points {
                let p = random_point(n, m, &mut rng);
                let q = apply_word_values::<BigRational>(&p, w)?;
                if whirl_product(&p) != whirl_product(&q) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// Whether two words induce the same map (componentwise equality).
pub fn words_agree(n: u32, m: u32, a: &PermWord, b: &PermWord, mode: CheckMode) -> Result<bool, RError> {
    match mode {
        CheckMode::Symbolic => {
            let (ia, ib) = (apply_word(n, m, a)?, apply_word(n, m, b)?);
            Ok(ia.sites().iter().flatten().zip(ib.sites().iter().flatten()).all(|(p, q)| p.rational_eq(q)))
        }
        CheckMode::Random { points, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..points {
                let p = random_point(n, m, &mut rng);
                if apply_word_values::<BigRational>(&p, a)? != apply_word_values::<BigRational>(&p, b)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}
