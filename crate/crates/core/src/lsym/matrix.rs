use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::vars::{parse_rational, LoopVarArray};
use super::LsymError;
use crate::exactring::Ring;

/// An `n × n` matrix polynomial in `t`; `coeffs[d][i][j]` is the coefficient
/// of `t^d` in entry `(i+1, j+1)`. Trailing zero coefficients are trimmed,
/// except that the constant coefficient is always present.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixPoly<R> {
    n: usize,
    coeffs: Vec<Vec<Vec<R>>>,
}

impl<R: Ring> MatrixPoly<R> {
    pub fn new(n: usize, coeffs: Vec<Vec<Vec<R>>>) -> Result<Self, LsymError> {
        if coeffs.iter().any(|c| c.len() != n || c.iter().any(|row| row.len() != n)) {
            return Err(LsymError::Dimension(format!("every coefficient must be {n}×{n}")));
        }
        let mut p = MatrixPoly { n, coeffs };
        if p.coeffs.is_empty() {
            p.coeffs.push(zero_matrix(n));
        }
        p.trim();
        Ok(p)
    }

    pub fn identity(n: usize) -> Self {
        let mut c = zero_matrix(n);
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = R::one_elem();
        }
        MatrixPoly { n, coeffs: vec![c] }
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1 && self.coeffs.last().unwrap().iter().flatten().all(|x| x.is_zero_elem()) {
            self.coeffs.pop();
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Highest power of `t` with a nonzero coefficient (0 for constants).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Vec<Vec<R>>] {
        &self.coeffs
    }

    /// Coefficient matrix of `t^d` (zero beyond the degree).
    pub fn coeff(&self, d: usize) -> Vec<Vec<R>> {
        self.coeffs.get(d).cloned().unwrap_or_else(|| zero_matrix(self.n))
    }

    /// Coefficient of `t^d` in the 1-based entry `(i, j)`.
    pub fn entry_coeff(&self, i: usize, j: usize, d: usize) -> R {
        self.coeffs.get(d).map_or_else(R::zero_elem, |c| c[i - 1][j - 1].clone())
    }

    /// The univariate polynomial in 1-based entry `(i, j)`, low degree first.
    pub fn entry(&self, i: usize, j: usize) -> Vec<R> {
        self.coeffs.iter().map(|c| c[i - 1][j - 1].clone()).collect()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "matrix polynomial sizes differ");
        let n = self.n;
        let mut out: Vec<Vec<Vec<R>>> = vec![zero_matrix(n); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (da, a) in self.coeffs.iter().enumerate() {
            for (db, b) in rhs.coeffs.iter().enumerate() {
                let target = &mut out[da + db];
                for i in 0..n {
                    for k in 0..n {
                        if a[i][k].is_zero_elem() {
                            continue;
                        }
                        for j in 0..n {
                            if b[k][j].is_zero_elem() {
                                continue;
                            }
                            target[i][j] = target[i][j].plus(&a[i][k].times(&b[k][j]));
                        }
                    }
                }
            }
        }
        let mut p = MatrixPoly { n, coeffs: out };
        p.trim();
        p
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> MatrixPoly<S> {
        let mut p = MatrixPoly {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c.iter().map(|r| r.iter().map(&f).collect()).collect()).collect(),
        };
        p.trim();
        p
    }

    /// Evaluates at a scalar `t`.
    pub fn eval_t(&self, t: &R) -> Vec<Vec<R>> {
        let mut acc: Vec<Vec<R>> = zero_matrix(self.n);
        for c in self.coeffs.iter().rev() {
            for i in 0..self.n {
                for j in 0..self.n {
                    acc[i][j] = acc[i][j].times(t).plus(&c[i][j]);
                }
            }
        }
        acc
    }
}

pub(crate) fn zero_matrix<R: Ring>(n: usize) -> Vec<Vec<R>> {
    vec![vec![R::zero_elem(); n]; n]
}

/// The whirl `M(a_1, …, a_n)`: identity, `a_1..a_{n−1}` on the superdiagonal,
/// `a_n t` in the corner `(n, 1)`. For `n = 1` this is `1 + a t`.
pub fn whirl<R: Ring>(params: &[R]) -> MatrixPoly<R> {
    let n = params.len();
    assert!(n >= 1, "a whirl needs at least one parameter");
    let mut c0 = zero_matrix(n);
    let mut c1 = zero_matrix(n);
    for i in 0..n {
        c0[i][i] = R::one_elem();
    }
    for i in 0..n - 1 {
        c0[i][i + 1] = params[i].clone();
    }
    c1[n - 1][0] = params[n - 1].clone();
    let mut p = MatrixPoly { n, coeffs: vec![c0, c1] };
    p.trim();
    p
}

/// `M(x_1) M(x_2) ⋯ M(x_m)`.
pub fn whirl_product<R: Ring>(vars: &LoopVarArray<R>) -> MatrixPoly<R> {
    vars.sites()
        .iter()
        .fold(MatrixPoly::identity(vars.n() as usize), |acc, site| acc.mul(&whirl(site)))
}

/// JSON form `{"n":2, "coeffs":[ [[1,2],[4,7]], … ]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixPolyJson {
    pub n: usize,
    pub coeffs: Vec<Vec<Vec<serde_json::Value>>>,
}

impl MatrixPolyJson {
    pub fn to_rational(&self) -> Result<MatrixPoly<BigRational>, LsymError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.iter().map(|r| r.iter().map(parse_rational).collect::<Result<Vec<_>, _>>()).collect())
            .collect::<Result<Vec<Vec<_>>, _>>()?;
        MatrixPoly::new(self.n, coeffs)
    }

    pub fn from_f64(p: &MatrixPoly<f64>) -> Self {
        MatrixPolyJson {
            n: p.size(),
            coeffs: p.coeffs().iter().map(|c| c.iter().map(|r| r.iter().map(|&v| serde_json::json!(v)).collect()).collect()).collect(),
        }
    }

    pub fn from_rational(p: &MatrixPoly<BigRational>) -> Self {
        let enc = |q: &BigRational| {
            if let Some(i) = q.is_integer().then(|| q.to_integer().to_i64()).flatten() {
                serde_json::json!(i)
            } else {
                serde_json::json!(format!("{}/{}", q.numer(), q.denom()))
            }
        };
        MatrixPolyJson { n: p.size(), coeffs: p.coeffs().iter().map(|c| c.iter().map(|r| r.iter().map(enc).collect()).collect()).collect() }
    }
}
