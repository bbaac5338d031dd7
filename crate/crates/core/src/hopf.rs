//! The Hopf algebra structure on loop symmetric functions, presented as the
//! free commutative algebra on generators `E(k, r) = e_k^{(r)}`.
//!
//! Tensor powers are modelled as polynomial rings in slot-tagged copies of
//! the generators, so `Δ`, `S` and `ε` are all algebra maps computed by
//! substitution.

use std::fmt;

use num_rational::BigRational;

use crate::exactring::{canonical_color, Monomial, Ring, SparsePoly};
use crate::lsym::{jt_determinant, loop_e, LoopVarArray, Partition, SkewShape};

/// The generator `e_k^{(r)}`, `k ≥ 1`, `r ∈ 1..=n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EGen {
    pub k: u32,
    pub r: u32,
}

impl fmt::Display for EGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E({},{})", self.k, self.r)
    }
}

pub type EPoly = SparsePoly<EGen>;

/// A generator placed in one tensor factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TGen {
    pub slot: u8,
    pub gen: EGen,
}

impl fmt::Display for TGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.gen, self.slot)
    }
}

/// An element of a tensor power of the algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct ETensor {
    arity: u8,
    poly: SparsePoly<TGen>,
}

/// `e_k^{(r)}` with `e_0 = 1`, `e_{k<0} = 0` and `r` read mod `n`.
pub fn e_gen(n: u32, k: i64, r: i64) -> EPoly {
    match k {
        0 => EPoly::one(),
        k if k < 0 => EPoly::zero(),
        k => EPoly::var(EGen { k: k as u32, r: canonical_color(r, n) }),
    }
}

fn place(p: &EPoly, slot: u8) -> SparsePoly<TGen> {
    p.map_vars(|&gen| TGen { slot, gen })
}

impl ETensor {
    /// `a ⊗ b`.
    pub fn pair(a: &EPoly, b: &EPoly) -> Self {
        ETensor { arity: 2, poly: &place(a, 0) * &place(b, 1) }
    }

    pub fn zero(arity: u8) -> Self {
        ETensor { arity, poly: SparsePoly::zero() }
    }

    pub fn arity(&self) -> u8 {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Collected normal form: one `(coefficient, factor per slot)` entry per
    /// distinct basis tensor.
    pub fn terms(&self) -> Vec<(BigRational, Vec<EPoly>)> {
        self.poly
            .terms()
            .map(|(m, c)| {
                let mut parts = vec![Monomial::one(); self.arity as usize];
                for &(g, e) in m.factors() {
                    let slot = &mut parts[g.slot as usize];
                    *slot = slot.mul(&Monomial::from_pairs([(g.gen, e)]));
                }
                (c.clone(), parts.into_iter().map(|m| EPoly::from_term(m, BigRational::from_integer(1.into()))).collect())
            })
            .collect()
    }

    /// Reverses the tensor factors (the flip `τ` for arity 2).
    pub fn flip(&self) -> Self {
        let a = self.arity;
        ETensor { arity: a, poly: self.poly.map_vars(|t| TGen { slot: a - 1 - t.slot, gen: t.gen }) }
    }

    /// Applies `Δ` to the tensor factor `slot`, raising the arity by one.
    pub fn coproduct_at(&self, n: u32, slot: u8) -> Self {
        let poly = self.poly.eval(|t| {
            if t.slot < slot {
                SparsePoly::var(*t)
            } else if t.slot > slot {
                SparsePoly::var(TGen { slot: t.slot + 1, gen: t.gen })
            } else {
                coproduct_gen(n, t.gen, slot)
            }
        });
        ETensor { arity: self.arity + 1, poly }
    }

    /// Applies `ε` to the tensor factor `slot`, lowering the arity by one.
    pub fn counit_at(&self, slot: u8) -> Self {
        let poly = self.poly.eval(|t| {
            if t.slot == slot {
                SparsePoly::zero()
            } else if t.slot > slot {
                SparsePoly::var(TGen { slot: t.slot - 1, gen: t.gen })
            } else {
                SparsePoly::var(*t)
            }
        });
        ETensor { arity: self.arity - 1, poly }
    }

    /// Multiplies the two factors of a 2-tensor after applying `f` to the
    /// first one.
    pub fn multiply_with(&self, mut f: impl FnMut(&EPoly) -> EPoly) -> EPoly {
        let mut out = EPoly::zero();
        for (c, parts) in self.terms() {
            out = &out + &(&f(&parts[0]) * &parts[1]).scale(&c);
        }
        out
    }

    /// The single factor of a 1-tensor.
    pub fn into_single(self) -> EPoly {
        assert_eq!(self.arity, 1);
        self.poly.map_vars(|t| t.gen)
    }
}

impl fmt::Display for ETensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = terms
            .iter()
            .map(|(c, parts)| {
                let body = parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ⊗ ");
                if c == &BigRational::from_integer(1.into()) {
                    body
                } else {
                    format!("{c}*({body})")
                }
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

/// `Δ(e_i^{(k)}) = Σ_{j=0}^{i} e_j^{(k)} ⊗ e_{i−j}^{(k+j)}` with the left
/// factor in `slot` and the right in `slot + 1`.
fn coproduct_gen(n: u32, g: EGen, slot: u8) -> SparsePoly<TGen> {
    let (i, k) = (g.k as i64, g.r as i64);
    (0..=i).fold(SparsePoly::zero(), |acc, j| {
        let term = &place(&e_gen(n, j, k), slot) * &place(&e_gen(n, i - j, k + j), slot + 1);
        &acc + &term
    })
}

/// The coproduct, extended multiplicatively.
pub fn coproduct(n: u32, p: &EPoly) -> ETensor {
    ETensor { arity: 1, poly: place(p, 0) }.coproduct_at(n, 0)
}

/// `ε`: the constant term.
pub fn counit(p: &EPoly) -> BigRational {
    p.coeff(&Monomial::one())
}

/// `S(e_i^{(k)}) = ± s_{(i)}^{(k+i−1)}`, the single-row loop Schur function
/// expanded in generators by the loop Jacobi–Trudi determinant. With
/// `signed`, the sign is `(−1)^i`; without it, `+`.
pub fn antipode_gen(n: u32, i: u32, k: i64, signed: bool) -> EPoly {
    let row = SkewShape::straight(Partition::new(vec![i]).expect("single row"));
    let s = jt_determinant(&row, k + i as i64 - 1, |kk, c| e_gen(n, kk, c));
    if signed && i % 2 == 1 {
        -s
    } else {
        s
    }
}

/// The antipode, extended as an algebra map (the algebra is commutative).
pub fn antipode(n: u32, p: &EPoly, signed: bool) -> EPoly {
    p.eval(|g| antipode_gen(n, g.k, g.r as i64, signed))
}

/// Whether `Σ_j S(e_j^{(k)}) e_{i−j}^{(k+j)} = 0`, i.e. `m∘(S⊗id)∘Δ = η∘ε`
/// on the generator `e_i^{(k)}`.
pub fn antipode_axiom_check(i: u32, k: i64, n: u32, signed: bool) -> bool {
    let lhs = coproduct(n, &e_gen(n, i as i64, k)).multiply_with(|a| antipode(n, a, signed));
    lhs.is_zero() && i >= 1
}

/// `(Δ⊗id)Δ = (id⊗Δ)Δ` on `p`.
pub fn coassociativity_check(n: u32, p: &EPoly) -> bool {
    let d = coproduct(n, p);
    d.coproduct_at(n, 0) == d.coproduct_at(n, 1)
}

/// `(ε⊗id)Δ = id = (id⊗ε)Δ` on `p`.
pub fn counit_check(n: u32, p: &EPoly) -> bool {
    let d = coproduct(n, p);
    d.counit_at(0).into_single() == *p && d.counit_at(1).into_single() == *p
}

/// Whether `Δ(p) = τΔ(p)`.
pub fn is_cocommutative_on(n: u32, p: &EPoly) -> bool {
    let d = coproduct(n, p);
    d.flip() == d
}

/// Evaluates at concrete loop elementary functions `E(k, r) ↦ e_k^{(r)}(x)`.
pub fn evaluate<R: Ring>(p: &EPoly, vars: &LoopVarArray<R>) -> R {
    p.eval(|g| loop_e(vars, g.k as i64, g.r as i64))
}

/// Runs the generator-level axiom suite for all `i ≤ max_i`, `r ∈ 1..=n`.
/// Returns the generators on which some axiom fails.
pub fn axiom_suite(n: u32, max_i: u32, signed: bool) -> Vec<(EGen, &'static str)> {
    let mut failures = Vec::new();
    for i in 1..=max_i {
        for r in 1..=n {
            let g = EGen { k: i, r };
            let p = EPoly::var(g);
            if !coassociativity_check(n, &p) {
                failures.push((g, "coassociativity"));
            }
            if !counit_check(n, &p) {
                failures.push((g, "counit"));
            }
            if !antipode_axiom_check(i, r as i64, n, signed) {
                failures.push((g, "antipode"));
            }
            let d = coproduct(n, &p);
            let deg_ok = d.terms().iter().all(|(_, parts)| parts.iter().map(|q| grade(q).unwrap_or(0)).sum::<u32>() == i);
            if !deg_ok || grade(&antipode(n, &p, signed)) != Some(i) {
                failures.push((g, "grading"));
            }
        }
    }
    failures
}

/// The grading `deg E(k, r) = k`, if `p` is nonzero and homogeneous.
pub fn grade(p: &EPoly) -> Option<u32> {
    let mut degs = p.terms().map(|(m, _)| m.factors().iter().map(|(g, e)| g.k * e).sum::<u32>());
    let first = degs.next()?;
    degs.all(|d| d == first).then_some(first)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::rat;

    fn e(n: u32, k: i64, r: i64) -> EPoly {
        e_gen(n, k, r)
    }

    #[test]
    fn coproduct_examples() {
        let d = coproduct(3, &e(3, 1, 2));
        assert_eq!(d, ETensor::pair(&EPoly::one(), &e(3, 1, 2)).add(&ETensor::pair(&e(3, 1, 2), &EPoly::one())));
        let d2 = coproduct(2, &e(2, 2, 1));
        let expect = ETensor::pair(&EPoly::one(), &e(2, 2, 1))
            .add(&ETensor::pair(&e(2, 1, 1), &e(2, 1, 2)))
            .add(&ETensor::pair(&e(2, 2, 1), &EPoly::one()));
        assert_eq!(d2, expect);
        assert_eq!(coproduct(2, &EPoly::one()), ETensor::pair(&EPoly::one(), &EPoly::one()));
        assert!(!is_cocommutative_on(2, &e(2, 2, 1)));
        assert!(is_cocommutative_on(1, &e(1, 2, 1)));
    }

    #[test]
    fn antipode_examples() {
        assert_eq!(antipode_gen(3, 1, 2, true), -e(3, 1, 2));
        assert_eq!(antipode(2, &EPoly::one(), true), EPoly::one());
        assert_eq!(antipode_gen(2, 2, 1, true), &(&e(2, 1, 1) * &e(2, 1, 2)) - &e(2, 2, 1));
    }

    #[test]
    fn sign_convention_is_forced() {
        for n in 1..=3 {
            for k in 1..=n as i64 {
                assert!(antipode_axiom_check(1, k, n, true));
                assert!(!antipode_axiom_check(1, k, n, false));
            }
        }
        assert!(antipode_axiom_check(2, 1, 2, true));
        assert!(!antipode_axiom_check(2, 1, 2, false));
    }

    #[test]
    fn suite_small() {
        for n in 1..=3 {
            assert!(axiom_suite(n, 3, true).is_empty(), "n={n}");
        }
        assert!(!axiom_suite(2, 2, false).is_empty());
        assert_eq!(counit(&(&e(2, 1, 1) + &EPoly::from_int(3))), rat(3));
        assert_eq!(grade(&(&e(2, 1, 1) * &e(2, 2, 2))), Some(3));
        assert_eq!(grade(&(&e(2, 1, 1) + &e(2, 2, 2))), None);
    }

    impl ETensor {
        fn add(&self, o: &Self) -> Self {
            ETensor { arity: self.arity, poly: &self.poly + &o.poly }
        }
    }
}
