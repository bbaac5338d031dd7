//! Total nonnegativity of matrix polynomials: the block-Toeplitz window,
//! minor tests, loop skew Schur certificates, and numeric whirl
//! factorization.

mod whirl;

pub use whirl::{exact_n1_factorization, orbit_match, whirl_factorize, FactorError, FactorizationResult};

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::exactring::Ring;
use crate::linalg::determinant;
use crate::lsym::{jt_determinant, ETable, MatrixPoly, SkewShape};

/// The `w`-block window of `X_P`: block `(I, J)` is the coefficient of
/// `t^{J−I}`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockToeplitzWindow<R> {
    pub n: usize,
    pub window_blocks: usize,
    pub matrix: Vec<Vec<R>>,
}

pub fn toeplitz_window<R: Ring>(p: &MatrixPoly<R>, w: usize) -> BlockToeplitzWindow<R> {
    let n = p.size();
    let mut matrix = vec![vec![R::zero_elem(); n * w]; n * w];
    for bi in 0..w {
        for bj in bi..w {
            if bj - bi > p.degree() {
                continue;
            }
            let c = &p.coeffs()[bj - bi];
            for i in 0..n {
                for j in 0..n {
                    matrix[bi * n + i][bj * n + j] = c[i][j].clone();
                }
            }
        }
    }
    BlockToeplitzWindow { n, window_blocks: w, matrix }
}

impl<R: Clone> BlockToeplitzWindow<R> {
    /// Blocks `first..first + w` on both axes.
    pub fn sub_window(&self, first: usize, w: usize) -> Vec<Vec<R>> {
        let (a, b) = (first * self.n, (first + w) * self.n);
        self.matrix[a..b].iter().map(|row| row[a..b].to_vec()).collect()
    }
}

/// A negative minor; rows and columns are 1-based.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    #[serde(serialize_with = "ser_rational")]
    pub value: BigRational,
}

fn ser_rational<S: serde::Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TnnReport {
    pub window: usize,
    pub max_order: usize,
    /// Side of the tested matrix.
    pub size: usize,
    pub minors_checked: u64,
    pub violations: Vec<Violation>,
}

impl TnnReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// What a pass means.
    pub fn scope(&self) -> String {
        format!(
            "all minors of order ≤ {} of the {}-block window ({}×{}); necessary condition only",
            self.max_order, self.window, self.size, self.size
        )
    }
}

impl fmt::Display for TnnReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} minors checked: {}", self.minors_checked, self.scope())?;
        if self.violations.is_empty() {
            return write!(f, "no negative minor");
        }
        for v in &self.violations {
            writeln!(f, "rows {:?} cols {:?}: {}", v.rows, v.cols, v.value)?;
        }
        write!(f, "{} negative minor(s)", self.violations.len())
    }
}

/// Bareiss elimination in `i128`; `None` on overflow.
fn det_i128(m: &[Vec<i64>]) -> Option<i128> {
    let k = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for c in 0..k {
        let Some(p) = (c..k).find(|&i| a[i][c] != 0) else {
            return Some(0);
        };
        if p != c {
            a.swap(p, c);
            sign = -sign;
        }
        for i in c + 1..k {
            for j in c + 1..k {
                let v = a[i][j].checked_mul(a[c][c])?.checked_sub(a[i][c].checked_mul(a[c][j])?)?;
                a[i][j] = v / prev;
            }
        }
        prev = a[c][c];
    }
    Some(sign * a[k - 1][k - 1])
}

/// Checks every minor of order `≤ max_order` of the `w`-block window
/// exactly. Entries are scaled to integers by a common denominator `D`, so
/// each minor is computed as `D^k` times its true value.
pub fn tnn_check(p: &MatrixPoly<BigRational>, w: usize, max_order: usize) -> TnnReport {
    let win = toeplitz_window(p, w).matrix;
    let size = win.len();
    let denom = win.iter().flatten().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let scaled: Vec<Vec<BigInt>> = win.iter().map(|r| r.iter().map(|q| q.numer() * (&denom / q.denom())).collect()).collect();
    let small: Option<Vec<Vec<i64>>> = scaled.iter().map(|r| r.iter().map(|x| x.to_i64()).collect()).collect();

    let minor = |rows: &[usize], cols: &[usize]| -> BigInt {
        if let Some(s) = &small {
            let sub: Vec<Vec<i64>> = rows.iter().map(|&i| cols.iter().map(|&j| s[i][j]).collect()).collect();
            if let Some(d) = det_i128(&sub) {
                return BigInt::from(d);
            }
        }
        let sub: Vec<Vec<BigRational>> =
            rows.iter().map(|&i| cols.iter().map(|&j| BigRational::from_integer(scaled[i][j].clone())).collect()).collect();
        determinant(&sub).to_integer()
    };

    let mut violations = Vec::new();
    let mut checked = 0u64;
    for k in 1..=max_order.min(size) {
        let subsets: Vec<Vec<usize>> = (0..size).combinations(k).collect();
        let found: Vec<Violation> = subsets
            .par_iter()
            .flat_map_iter(|rows| {
                let (minor, denom, subsets) = (&minor, &denom, &subsets);
                subsets.iter().filter_map(move |cols| {
                    let d = minor(rows, cols);
                    d.is_negative().then(|| Violation {
                        rows: rows.iter().map(|r| r + 1).collect(),
                        cols: cols.iter().map(|c| c + 1).collect(),
                        value: BigRational::new(d, denom.pow(k as u32)),
                    })
                })
            })
            .collect();
        checked += (subsets.len() * subsets.len()) as u64;
        violations.extend(found);
    }
    TnnReport { window: w, max_order, size, minors_checked: checked, violations }
}

/// One certificate value that came out negative.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NegativeSchur {
    pub shape: String,
    pub r: i64,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SchurCertificate {
    pub checked: usize,
    pub negatives: Vec<NegativeSchur>,
}

impl SchurCertificate {
    pub fn passed(&self) -> bool {
        self.negatives.is_empty()
    }
}

/// Evaluates `s^{(r)}_{λ/μ}` by Jacobi–Trudi in the supplied `e`-values for
/// every shape and color, reporting the negative ones.
pub fn skew_schur_certificate<R>(e: &ETable<R>, shapes: &[SkewShape], colors: impl IntoIterator<Item = i64> + Clone) -> SchurCertificate
where
    R: Ring + PartialOrd + fmt::Display,
{
    let zero = R::zero_elem();
    let mut checked = 0;
    let mut negatives = Vec::new();
    for shape in shapes {
        for r in colors.clone() {
            checked += 1;
            let v = jt_determinant(shape, r, |k, c| e.get(k, c));
            if v < zero {
                negatives.push(NegativeSchur { shape: shape.to_string(), r, value: v.to_string() });
            }
        }
    }
    SchurCertificate { checked, negatives }
}

/// `e`-values as exact rationals, for the certificate on numeric data.
pub fn rational_table(e: &ETable<f64>) -> ETable<BigRational> {
    let values = e.iter().map(|(&k, v)| (k, BigRational::from_float(*v).unwrap_or_else(BigRational::zero))).collect();
    ETable::from_values(e.n(), values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::rat;
    use crate::lsym::{extract_e, whirl_product, LoopVarArray, Partition};

    fn ints(n: usize, c: &[&[&[i64]]]) -> MatrixPoly<BigRational> {
        MatrixPoly::new(n, c.iter().map(|m| m.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect()).collect())
            .unwrap()
    }

    fn scalar(c: &[i64]) -> MatrixPoly<BigRational> {
        MatrixPoly::new(1, c.iter().map(|&v| vec![vec![rat(v)]]).collect()).unwrap()
    }

    #[test]
    fn worked_window() {
        let p = ints(2, &[&[&[1, 2], &[4, 7]], &[&[4, -2], &[0, 1]], &[&[9, 0], &[6, -1]]]);
        let w = toeplitz_window(&p, 3).matrix;
        let expect: Vec<Vec<i64>> = vec![
            vec![1, 2, 4, -2, 9, 0],
            vec![4, 7, 0, 1, 6, -1],
            vec![0, 0, 1, 2, 4, -2],
            vec![0, 0, 4, 7, 0, 1],
            vec![0, 0, 0, 0, 1, 2],
            vec![0, 0, 0, 0, 4, 7],
        ];
        assert_eq!(w, expect.iter().map(|r| r.iter().map(|&v| rat(v)).collect::<Vec<_>>()).collect::<Vec<_>>());
    }

    #[test]
    fn scalar_window_and_nesting() {
        let p = scalar(&[1, 3, 2]);
        let w = toeplitz_window(&p, 4);
        assert_eq!(w.matrix[0], vec![rat(1), rat(3), rat(2), rat(0)]);
        assert_eq!(w.matrix[3], vec![rat(0), rat(0), rat(0), rat(1)]);
        let big = toeplitz_window(&p, 5);
        assert_eq!(big.sub_window(0, 4), w.matrix);
        assert_eq!(big.sub_window(1, 4), w.matrix);
        let id = toeplitz_window(&MatrixPoly::<BigRational>::identity(2), 3).matrix;
        assert!((0..6).all(|i| (0..6).all(|j| id[i][j] == if i == j { rat(1) } else { rat(0) })));
    }

    #[test]
    fn negative_coefficient() {
        let r = tnn_check(&scalar(&[1, -1]), 2, 1);
        assert_eq!(r.violations.len(), 1);
        assert_eq!((r.violations[0].rows.clone(), r.violations[0].cols.clone()), (vec![1], vec![2]));
        assert_eq!(r.violations[0].value, rat(-1));
    }

    #[test]
    fn complex_roots_fail_at_order_three() {
        let p = scalar(&[1, 1, 1]);
        assert!(tnn_check(&p, 3, 2).passed());
        let r = tnn_check(&p, 4, 3);
        assert_eq!(r.violations.len(), 1);
        assert_eq!((r.violations[0].rows.clone(), r.violations[0].cols.clone()), (vec![1, 2, 3], vec![2, 3, 4]));
        assert_eq!(r.violations[0].value, rat(-1));
        assert!(!tnn_check(&p, 5, 3).passed());
        assert!(tnn_check(&scalar(&[1, 3, 2]), 5, 3).passed());
    }

    #[test]
    fn integer_path_matches_rational_path() {
        let m = vec![vec![3, 1, 4], vec![1, 5, 9], vec![2, 6, 5]];
        let q: Vec<Vec<BigRational>> = m.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect();
        assert_eq!(BigRational::from_integer(det_i128(&m).unwrap().into()), determinant(&q));
        let big = i64::MAX;
        assert_eq!(det_i128(&[vec![big, 1, 1], vec![1, big, 1], vec![1, 1, big]]), None);
    }

    #[test]
    fn forward_products_pass() {
        let vars = LoopVarArray::from_fn(2, 3, |i, j| BigRational::new((i + 2 * j).into(), 5.into()));
        let p = whirl_product(&vars);
        assert!(tnn_check(&p, 4, 3).passed());
        let e = extract_e(&p).unwrap();
        let cert = skew_schur_certificate(&e, &SkewShape::all_in_box(3, 3), 1..=2);
        assert!(cert.passed());
    }

    #[test]
    fn certificates_on_supplied_values() {
        let trivial: ETable<BigRational> = ETable::from_values(1, Default::default());
        let empty = SkewShape::straight(Partition::empty());
        let col = SkewShape::straight(Partition::new(vec![1, 1]).unwrap());
        let row = SkewShape::straight(Partition::new(vec![2]).unwrap());
        assert_eq!(jt_determinant(&empty, 1, |k, c| trivial.get(k, c)), rat(1));
        assert!(skew_schur_certificate(&trivial, &[empty.clone(), col.clone(), row.clone()], 1..=1).passed());
        // (1 + t)(1 − t): e₁ = 0, e₂ = −1
        let e = ETable::from_values(1, [((1, 1), rat(0)), ((2, 1), rat(-1))].into());
        let cert = skew_schur_certificate(&e, &[col, row], 1..=1);
        assert_eq!(cert.negatives.len(), 1);
        assert_eq!((cert.negatives[0].shape.as_str(), cert.negatives[0].value.as_str()), ("(1,1)", "-1"));
    }
}
