use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::SparsePoly;
use super::traits::{Ring, Semifield};
use super::var::VarId;
use super::ExactError;

pub type Poly = SparsePoly<VarId>;

/// A quotient `num / den` of polynomials in loop variables.
///
/// There is no multivariate gcd: normalization only removes common monomial
/// factors, makes `den` primitive with positive leading coefficient, and
/// cancels factors that happen to divide exactly. Equality is decided by
/// cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalExpr {
    num: Poly,
    den: Poly,
    subtraction_free: bool,
}

impl RationalExpr {
    /// Builds and normalizes `num / den`.
    pub fn new(num: Poly, den: Poly) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        let sf = num.has_positive_coefficients() && den.has_positive_coefficients();
        Ok(Self::raw(num, den, sf))
    }

    fn raw(num: Poly, den: Poly, subtraction_free: bool) -> Self {
        let mut e = RationalExpr { num, den, subtraction_free };
        e.normalize();
        e
    }

    /// `p / 1`; flagged subtraction-free iff every coefficient is positive.
    pub fn from_poly(p: Poly) -> Self {
        let sf = p.has_positive_coefficients();
        RationalExpr { num: p, den: Poly::one(), subtraction_free: sf }
    }

    pub fn var(v: VarId) -> Self {
        Self::from_poly(Poly::var(v))
    }

    pub fn constant(q: BigRational) -> Self {
        Self::from_poly(Poly::constant(q))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_subtraction_free(&self) -> bool {
        self.subtraction_free
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The numerator when the denominator has normalized to 1.
    pub fn as_poly(&self) -> Option<&Poly> {
        self.den.is_one().then_some(&self.num)
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one();
            return;
        }
        let g = self.num.monomial_content().gcd(&self.den.monomial_content());
        if !g.is_one() {
            self.num = self.num.div_monomial(&g).expect("gcd divides");
            self.den = self.den.div_monomial(&g).expect("gcd divides");
        }
        if !self.den.as_constant().is_some() {
            if let Some(q) = self.num.div_exact(&self.den) {
                self.num = q;
                self.den = Poly::one();
            }
        }
        let (c, prim) = self.den.primitive_part();
        if !c.is_one() {
            self.num = self.num.scale(&c.recip());
            self.den = prim;
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let sf = self.subtraction_free && rhs.subtraction_free;
        if self.den == rhs.den {
            return Self::raw(&self.num + &rhs.num, self.den.clone(), sf);
        }
        if let Some(q) = rhs.den.div_exact(&self.den) {
            return Self::raw(&(&self.num * &q) + &rhs.num, rhs.den.clone(), sf);
        }
        if let Some(q) = self.den.div_exact(&rhs.den) {
            return Self::raw(&self.num + &(&rhs.num * &q), self.den.clone(), sf);
        }
        Self::raw(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den, sf)
    }

    pub fn neg(&self) -> Self {
        RationalExpr { num: -&self.num, den: self.den.clone(), subtraction_free: false }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.add(&rhs.neg());
        out.subtraction_free = false;
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let sf = self.subtraction_free && rhs.subtraction_free;
        let (mut a_num, mut a_den) = (self.num.clone(), self.den.clone());
        let (mut b_num, mut b_den) = (rhs.num.clone(), rhs.den.clone());
        if let Some(q) = a_num.div_exact(&b_den) {
            a_num = q;
            b_den = Poly::one();
        }
        if let Some(q) = b_num.div_exact(&a_den) {
            b_num = q;
            a_den = Poly::one();
        }
        Self::raw(&a_num * &b_num, &a_den * &b_den, sf)
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        if self.num.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(Self::raw(self.den.clone(), self.num.clone(), self.subtraction_free))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, ExactError> {
        Ok(self.mul(&rhs.recip()?))
    }

    /// Equality by cross-multiplication.
    pub fn rational_eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn eval_at(&self, point: &BTreeMap<VarId, BigRational>) -> Result<BigRational, ExactError> {
        let lookup = |v: &VarId| point.get(v).cloned().ok_or(ExactError::Unbound(*v));
        let mut missing = None;
        let mut get = |v: &VarId| {
            lookup(v).unwrap_or_else(|e| {
                missing.get_or_insert(e);
                BigRational::zero()
            })
        };
        let d: BigRational = self.den.eval(&mut get);
        let n: BigRational = self.num.eval(&mut get);
        if let Some(e) = missing {
            return Err(e);
        }
        if d.is_zero() {
            return Err(ExactError::DenominatorVanishes);
        }
        Ok(n / d)
    }

    /// Composes with `v ↦ bindings[v]`; unbound variables stay fixed.
    ///
    /// Numerator and denominator are homogenized against a common
    /// denominator `∏ q_v^{d_v}` (with `d_v` the larger of the two degrees in
    /// `v`), which then cancels from the quotient.
    pub fn substitute(&self, bindings: &BTreeMap<VarId, RationalExpr>) -> Result<Self, ExactError> {
        let mut degs: BTreeMap<VarId, u32> = BTreeMap::new();
        for v in self.num.vars().into_iter().chain(self.den.vars()) {
            if bindings.contains_key(&v) {
                let d = self.num.degree_in(&v).max(self.den.degree_in(&v));
                degs.insert(v, d);
            }
        }
        let mut num_pows: BTreeMap<VarId, Vec<Poly>> = BTreeMap::new();
        let mut den_pows: BTreeMap<VarId, Vec<Poly>> = BTreeMap::new();
        let mut sf = self.subtraction_free;
        for (v, &d) in &degs {
            let b = &bindings[v];
            sf &= b.subtraction_free;
            num_pows.insert(*v, powers(&b.num, d));
            den_pows.insert(*v, powers(&b.den, d));
        }
        let homogenize = |p: &Poly| -> Poly {
            let mut acc = Poly::zero();
            for (m, c) in p.terms() {
                let mut t = Poly::constant(c.clone());
                let mut fixed = Vec::new();
                let mut seen: BTreeMap<VarId, u32> = BTreeMap::new();
                for (v, e) in m.factors() {
                    if let Some(np) = num_pows.get(v) {
                        t = &t * &np[*e as usize];
                        seen.insert(*v, *e);
                    } else {
                        fixed.push((*v, *e));
                    }
                }
                for (v, &d) in &degs {
                    let e = seen.get(v).copied().unwrap_or(0);
                    let dp = &den_pows[v][(d - e) as usize];
                    if !dp.is_one() {
                        t = &t * dp;
                    }
                }
                if !fixed.is_empty() {
                    t = t.mul_monomial(&super::poly::Monomial::from_pairs(fixed));
                }
                acc = &acc + &t;
            }
            acc
        };
        let n = homogenize(&self.num);
        let d = homogenize(&self.den);
        if d.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(Self::raw(n, d, sf))
    }

    pub fn partial_derivative(&self, v: &VarId) -> Self {
        let dn = &(&self.num.partial_derivative(v) * &self.den) - &(&self.num * &self.den.partial_derivative(v));
        Self::raw(dn, &self.den * &self.den, false)
    }
}

fn powers(p: &Poly, d: u32) -> Vec<Poly> {
    let mut out = vec![Poly::one()];
    for _ in 0..d {
        let next = out.last().unwrap() * p;
        out.push(next);
    }
    out
}

impl PartialEq for RationalExpr {
    fn eq(&self, other: &Self) -> bool {
        self.rational_eq(other)
    }
}

impl From<Poly> for RationalExpr {
    fn from(p: Poly) -> Self {
        RationalExpr::from_poly(p)
    }
}

impl fmt::Display for RationalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Ring for RationalExpr {
    fn zero_elem() -> Self {
        RationalExpr::from_poly(Poly::zero())
    }
    fn one_elem() -> Self {
        RationalExpr::from_poly(Poly::one())
    }
    fn is_zero_elem(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn from_rational(q: &BigRational) -> Self {
        RationalExpr::constant(q.clone())
    }
}

impl Semifield for RationalExpr {
    fn odiv(&self, rhs: &Self) -> Option<Self> {
        self.div(rhs).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> VarId {
        VarId::new(i, 1, 1)
    }
    fn x(i: u32) -> RationalExpr {
        RationalExpr::var(v(i))
    }
    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn cross_multiplication_equality() {
        let (a, b) = (x(1), x(2));
        let xy = a.div(&b).unwrap();
        assert!(xy.rational_eq(&a.div(&b).unwrap()));
        assert!(!xy.rational_eq(&b.div(&a).unwrap()));
        let lhs = a.mul(&a).sub(&b.mul(&b)).div(&a.sub(&b)).unwrap();
        assert!(lhs.rational_eq(&a.add(&b)));
        // exact division cancelled the common factor
        assert!(lhs.as_poly().is_some());
    }

    #[test]
    fn substitution_basics() {
        let (a, b) = (x(1), x(2));
        let s = a.add(&b);
        let swap: BTreeMap<_, _> = [(v(1), b.clone()), (v(2), a.clone())].into();
        assert!(s.substitute(&swap).unwrap().rational_eq(&s));
        let ratio = a.div(&b).unwrap();
        let pt: BTreeMap<_, _> =
            [(v(1), RationalExpr::constant(q(1, 1))), (v(2), RationalExpr::constant(q(2, 1)))].into();
        let r = ratio.substitute(&pt).unwrap();
        assert_eq!(r.as_poly().unwrap().as_constant(), Some(q(1, 2)));
    }

    #[test]
    fn zero_denominator_after_composition() {
        let (a, b) = (x(1), x(2));
        let e = RationalExpr::one_elem().div(&a.sub(&b)).unwrap();
        let bind: BTreeMap<_, _> = [(v(2), a.clone())].into();
        assert_eq!(e.substitute(&bind).unwrap_err(), ExactError::ZeroDenominator);
    }

    #[test]
    fn eval_and_vanishing_denominator() {
        let (a, b) = (x(1), x(2));
        let pt: BTreeMap<_, _> = [(v(1), q(1, 1)), (v(2), q(2, 1))].into();
        assert_eq!(a.add(&b).eval_at(&pt).unwrap(), q(3, 1));
        let bad: BTreeMap<_, _> = [(v(1), q(1, 1)), (v(2), q(1, 1))].into();
        let e = a.div(&a.sub(&b)).unwrap();
        assert_eq!(e.eval_at(&bad).unwrap_err(), ExactError::DenominatorVanishes);
    }

    #[test]
    fn flags() {
        let (a, b) = (x(1), x(2));
        assert!(a.add(&b).div(&a).unwrap().is_subtraction_free());
        assert!(!a.sub(&b).is_subtraction_free());
        assert!(!RationalExpr::zero_elem().is_subtraction_free());
    }

    #[test]
    fn denominator_normalized() {
        let (a, b) = (x(1), x(2));
        let e = RationalExpr::new(a.num().clone(), b.num().scale(&q(-3, 2))).unwrap();
        assert!(e.den().leading_term().unwrap().1.is_one());
        assert!(e.rational_eq(&a.div(&b).unwrap().mul(&RationalExpr::constant(q(-2, 3)))));
    }
}
