use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::traits::Ring;

/// Bound shared by every variable type a polynomial can be built over.
pub trait Variable: Clone + Ord + std::hash::Hash + fmt::Debug + fmt::Display {}
impl<T: Clone + Ord + std::hash::Hash + fmt::Debug + fmt::Display> Variable for T {}

/// A power product, stored as `(variable, exponent)` pairs sorted by variable
/// with strictly positive exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial<V> {
    factors: Vec<(V, u32)>,
}

impl<V: Variable> Monomial<V> {
    pub fn one() -> Self {
        Monomial { factors: Vec::new() }
    }

    pub fn var(v: V) -> Self {
        Monomial { factors: vec![(v, 1)] }
    }

    /// Builds a monomial from arbitrary `(var, exp)` pairs, merging repeats
    /// and dropping zero exponents.
    pub fn from_pairs<I: IntoIterator<Item = (V, u32)>>(pairs: I) -> Self {
        let mut acc: BTreeMap<V, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *acc.entry(v).or_insert(0) += e;
        }
        Monomial { factors: acc.into_iter().filter(|(_, e)| *e > 0).collect() }
    }

    pub fn factors(&self) -> &[(V, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: &V) -> u32 {
        self.factors
            .binary_search_by(|(w, _)| w.cmp(v))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (&self.factors, &other.factors);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { factors: out }
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.factors.iter().all(|(v, e)| other.exponent(v) >= *e)
    }

    /// `self / other`, or `None` if `other` does not divide `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        if !other.divides(self) {
            return None;
        }
        let factors = self
            .factors
            .iter()
            .filter_map(|(v, e)| {
                let r = e - other.exponent(v);
                (r > 0).then(|| (v.clone(), r))
            })
            .collect();
        Some(Monomial { factors })
    }

    /// Componentwise minimum of exponents.
    pub fn gcd(&self, other: &Self) -> Self {
        let factors = self
            .factors
            .iter()
            .filter_map(|(v, e)| {
                let m = (*e).min(other.exponent(v));
                (m > 0).then(|| (v.clone(), m))
            })
            .collect();
        Monomial { factors }
    }
}

/// Graded order: lower total degree first; within a degree, the monomial
/// with the larger exponent on the earliest variable comes first (so a
/// `BTreeMap` iterates lexicographically-leading terms first).
impl<V: Variable> Ord for Monomial<V> {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (a, b) = (&self.factors, &other.factors);
        for (x, y) in a.iter().zip(b.iter()) {
            match x.0.cmp(&y.0) {
                Ordering::Less => return Ordering::Less,
                Ordering::Greater => return Ordering::Greater,
                Ordering::Equal => match x.1.cmp(&y.1) {
                    Ordering::Equal => {}
                    ord => return ord.reverse(),
                },
            }
        }
        a.len().cmp(&b.len()).reverse()
    }
}

impl<V: Variable> PartialOrd for Monomial<V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<V: Variable> fmt::Display for Monomial<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse multivariate polynomial with big-rational coefficients. Zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparsePoly<V: Variable> {
    terms: BTreeMap<Monomial<V>, BigRational>,
}

impl<V: Variable> Default for SparsePoly<V> {
    fn default() -> Self {
        SparsePoly { terms: BTreeMap::new() }
    }
}

impl<V: Variable> SparsePoly<V> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_term(Monomial::one(), c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    pub fn var(v: V) -> Self {
        Self::from_term(Monomial::var(v), BigRational::one())
    }

    pub fn from_term(m: Monomial<V>, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        SparsePoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial<V>, BigRational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial<V>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial<V>, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial<V>) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The value if the polynomial is a constant (zero included).
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Largest total degree of a term; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Leading term for the graded order (the last key).
    pub fn leading_term(&self) -> Option<(&Monomial<V>, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn vars(&self) -> BTreeSet<V> {
        self.terms
            .keys()
            .flat_map(|m| m.factors.iter().map(|(v, _)| v.clone()))
            .collect()
    }

    pub fn degree_in(&self, v: &V) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    /// True iff every coefficient is strictly positive (and the polynomial is
    /// nonzero).
    pub fn has_positive_coefficients(&self) -> bool {
        !self.is_zero() && self.terms.values().all(|c| c.is_positive())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SparsePoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial<V>) -> Self {
        SparsePoly { terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn partial_derivative(&self, v: &V) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let reduced = m.div(&Monomial::var(v.clone())).expect("exponent checked");
            out.add_term(reduced, c * BigRational::from_integer(e.into()));
        }
        out
    }

    /// Evaluates the polynomial in any ring, given images of the variables.
    /// Each distinct variable is looked up once.
    pub fn eval<R: Ring>(&self, mut image: impl FnMut(&V) -> R) -> R {
        let mut cache: BTreeMap<V, Vec<R>> = BTreeMap::new();
        let mut acc = R::zero_elem();
        for (m, c) in &self.terms {
            let mut t = R::from_rational(c);
            for (v, e) in &m.factors {
                let powers = cache.entry(v.clone()).or_insert_with(|| vec![R::one_elem(), image(v)]);
                while powers.len() <= *e as usize {
                    let next = powers.last().unwrap().times(&powers[1]);
                    powers.push(next);
                }
                t = t.times(&powers[*e as usize]);
            }
            acc = acc.plus(&t);
        }
        acc
    }

    /// Renames variables (monomials that collide are merged).
    pub fn map_vars<W: Variable>(&self, mut f: impl FnMut(&V) -> W) -> SparsePoly<W> {
        let mut out = SparsePoly::zero();
        for (m, c) in &self.terms {
            let mono = Monomial::from_pairs(m.factors.iter().map(|(v, e)| (f(v), *e)));
            out.add_term(mono, c.clone());
        }
        out
    }

    /// Greatest common monomial divisor of all terms (1 for zero).
    pub fn monomial_content(&self) -> Monomial<V> {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one();
        };
        it.fold(first.clone(), |g, m| g.gcd(m))
    }

    pub fn div_monomial(&self, d: &Monomial<V>) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(m.div(d)?, c.clone());
        }
        Some(SparsePoly { terms })
    }

    /// Splits `self = c · p` with `p` having coprime integer coefficients and a
    /// positive leading coefficient. Zero maps to `(0, 0)`.
    pub fn primitive_part(&self) -> (BigRational, Self) {
        if self.is_zero() {
            return (BigRational::zero(), Self::zero());
        }
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            let scaled = (c * BigRational::from_integer(den_lcm.clone())).to_integer();
            num_gcd = num_gcd.gcd(&scaled);
        }
        let mut content = BigRational::new(num_gcd, den_lcm);
        if self.leading_term().unwrap().1.is_negative() {
            content = -content;
        }
        let inv = content.recip();
        (content, self.scale(&inv))
    }

    /// Exact quotient `self / d` when `d` divides `self` in the polynomial
    /// ring, by multivariate long division on leading terms.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        if self.total_degree()? < d.total_degree()? || self.len() < 2 && d.len() > 1 {
            return None;
        }
        let (dm, dc) = d.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((rm, rc)) = rem.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = rm.div(&dm)?;
            let qc = rc / &dc;
            let step = Self::from_term(qm, qc);
            rem = &rem - &(&step * d);
            quot = &quot + &step;
        }
        Some(quot)
    }

    /// Rewrites coefficients through `f`, dropping zeros.
    pub fn map_coeffs(&self, mut f: impl FnMut(&BigRational) -> BigRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }
}

fn write_coeff(f: &mut fmt::Formatter<'_>, c: &BigRational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

/// Canonical printing: terms by ascending total degree, lexicographically
/// leading monomials first within a degree, joined by ` + ` / ` - `.
impl<V: Variable> fmt::Display for SparsePoly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write_coeff(f, &a)?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write_coeff(f, &a)?;
                write!(f, "*{m}")?;
            }
        }
        Ok(())
    }
}

impl<'a, V: Variable> Add<&'a SparsePoly<V>> for &'a SparsePoly<V> {
    type Output = SparsePoly<V>;
    fn add(self, rhs: &SparsePoly<V>) -> SparsePoly<V> {
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a, V: Variable> Sub<&'a SparsePoly<V>> for &'a SparsePoly<V> {
    type Output = SparsePoly<V>;
    fn sub(self, rhs: &SparsePoly<V>) -> SparsePoly<V> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a, V: Variable> Mul<&'a SparsePoly<V>> for &'a SparsePoly<V> {
    type Output = SparsePoly<V>;
    fn mul(self, rhs: &SparsePoly<V>) -> SparsePoly<V> {
        let mut out = SparsePoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl<V: Variable> Neg for &SparsePoly<V> {
    type Output = SparsePoly<V>;
    fn neg(self) -> SparsePoly<V> {
        SparsePoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl<V: Variable> $tr<SparsePoly<V>> for SparsePoly<V> {
            type Output = SparsePoly<V>;
            fn $method(self, rhs: SparsePoly<V>) -> SparsePoly<V> {
                (&self).$method(&rhs)
            }
        }
        impl<'a, V: Variable> $tr<&'a SparsePoly<V>> for SparsePoly<V> {
            type Output = SparsePoly<V>;
            fn $method(self, rhs: &SparsePoly<V>) -> SparsePoly<V> {
                (&self).$method(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<V: Variable> Neg for SparsePoly<V> {
    type Output = SparsePoly<V>;
    fn neg(self) -> SparsePoly<V> {
        -&self
    }
}

impl<V: Variable> Ring for SparsePoly<V> {
    fn zero_elem() -> Self {
        SparsePoly::zero()
    }
    fn one_elem() -> Self {
        SparsePoly::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn from_rational(q: &BigRational) -> Self {
        SparsePoly::constant(q.clone())
    }
    fn pow(&self, k: u32) -> Self {
        SparsePoly::pow(self, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::VarId;

    fn x(i: u32, j: i64) -> SparsePoly<VarId> {
        SparsePoly::var(VarId::new(i, j, 2))
    }

    #[test]
    fn difference_of_squares() {
        let (a, b) = (x(1, 1), x(2, 1));
        let lhs = &(&a + &b) * &(&a - &b);
        let rhs = &(&a * &a) - &(&b * &b);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.len(), 2);
    }

    #[test]
    fn additive_identity_and_distributivity() {
        let p = &x(1, 1) + &x(2, 1);
        assert_eq!(&p + &SparsePoly::zero(), p);
        let prod = &p * &x(1, 2);
        let expect = &(&x(1, 1) * &x(1, 2)) + &(&x(2, 1) * &x(1, 2));
        assert_eq!(prod, expect);
    }

    #[test]
    fn derivative() {
        let v = VarId::new(1, 1, 2);
        let p = &x(1, 1) * &x(1, 1);
        assert_eq!(p.partial_derivative(&v), x(1, 1).scale(&BigRational::from_integer(2.into())));
        let q = &x(1, 1) * &x(2, 2);
        assert_eq!(q.partial_derivative(&v), x(2, 2));
    }

    #[test]
    fn canonical_print_order() {
        let p = &(&(&x(2, 1) * &x(3, 2)) + &(&x(1, 1) * &x(3, 2))) + &(&x(1, 1) * &x(2, 2));
        let p = &p + &SparsePoly::from_int(-2);
        assert_eq!(p.to_string(), "-2 + x[1]^(1)*x[2]^(2) + x[1]^(1)*x[3]^(2) + x[2]^(1)*x[3]^(2)");
        let sq = x(1, 1).pow(2).scale(&BigRational::new(1.into(), 2.into()));
        assert_eq!(sq.to_string(), "1/2*x[1]^(1)^2");
    }

    #[test]
    fn exact_division() {
        let (a, b) = (x(1, 1), x(2, 1));
        let p = &(&a + &b) * &(&a - &b);
        assert_eq!(p.div_exact(&(&a - &b)), Some(&a + &b));
        assert_eq!(p.div_exact(&(&a + &(&b + &b))), None);
    }

    #[test]
    fn primitive_part_is_integral_and_positive() {
        let p = &x(1, 1).scale(&BigRational::new((-3).into(), 4.into())) + &SparsePoly::constant(BigRational::new(3.into(), 2.into()));
        let (c, q) = p.primitive_part();
        assert_eq!(q.scale(&c), p);
        assert!(q.leading_term().unwrap().1.is_positive());
        assert!(q.terms().all(|(_, c)| c.is_integer()));
    }
}
