use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;

use super::CrystalError;
use crate::exactring::{Poly, RationalExpr, VarId};

/// A min-plus expression tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TropExpr {
    Var(VarId),
    Const(i64),
    Min(Vec<TropExpr>),
    Add(Vec<TropExpr>),
    Sub(Box<TropExpr>, Box<TropExpr>),
}

fn trop_poly(p: &Poly) -> Result<TropExpr, CrystalError> {
    if p.terms().any(|(_, c)| !c.is_positive()) {
        return Err(CrystalError::NotSubtractionFree);
    }
    let mut mins: Vec<TropExpr> = p
        .terms()
        .map(|(m, _)| {
            let mut parts: Vec<TropExpr> = Vec::new();
            for &(v, e) in m.factors() {
                parts.extend(std::iter::repeat_n(TropExpr::Var(v), e as usize));
            }
            match parts.len() {
                0 => TropExpr::Const(0),
                1 => parts.pop().expect("one part"),
                _ => TropExpr::Add(parts),
            }
        })
        .collect();
    Ok(match mins.len() {
        0 => return Err(CrystalError::NotSubtractionFree),
        1 => mins.pop().expect("one term"),
        _ => TropExpr::Min(mins),
    })
}

/// `+ ↦ min`, `× ↦ +`, `/ ↦ −`; positive constants tropicalize to 0.
pub fn tropicalize(f: &RationalExpr) -> Result<TropExpr, CrystalError> {
    if !f.is_subtraction_free() {
        return Err(CrystalError::NotSubtractionFree);
    }
    let num = trop_poly(f.num())?;
    if f.den().is_one() {
        return Ok(num);
    }
    Ok(TropExpr::Sub(Box::new(num), Box::new(trop_poly(f.den())?)))
}

/// Evaluates at an integer point.
pub fn trop_eval(e: &TropExpr, point: &BTreeMap<VarId, i64>) -> Result<i64, CrystalError> {
    Ok(match e {
        TropExpr::Var(v) => *point.get(v).ok_or(CrystalError::Unbound(*v))?,
        TropExpr::Const(c) => *c,
        TropExpr::Min(xs) => {
            let vals = xs.iter().map(|x| trop_eval(x, point)).collect::<Result<Vec<_>, _>>()?;
            vals.into_iter().min().expect("min of a nonempty list")
        }
        TropExpr::Add(xs) => xs.iter().map(|x| trop_eval(x, point)).sum::<Result<i64, _>>()?,
        TropExpr::Sub(a, b) => trop_eval(a, point)? - trop_eval(b, point)?,
    })
}

impl fmt::Display for TropExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[TropExpr], sep: &str| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep);
        match self {
            TropExpr::Var(v) => write!(f, "{v}"),
            TropExpr::Const(c) => write!(f, "{c}"),
            TropExpr::Min(xs) => write!(f, "min({})", join(xs, ", ")),
            TropExpr::Add(xs) => write!(f, "{}", join(xs, " + ")),
            TropExpr::Sub(a, b) => write!(f, "{a} - ({b})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rmatrix::swap_bindings;

    fn v(i: u32, c: i64) -> VarId {
        VarId::new(i, c, 3)
    }

    #[test]
    fn simple() {
        let x = RationalExpr::var(v(1, 1));
        let y = RationalExpr::var(v(1, 2));
        let z = RationalExpr::var(v(1, 3));
        let pt: BTreeMap<_, _> = [(v(1, 1), 2), (v(1, 2), 5), (v(1, 3), 3)].into();
        assert_eq!(trop_eval(&tropicalize(&x.add(&y)).unwrap(), &pt).unwrap(), 2);
        let pt2: BTreeMap<_, _> = [(v(1, 1), 1), (v(1, 2), 2), (v(1, 3), 3)].into();
        assert_eq!(trop_eval(&tropicalize(&x.mul(&y).div(&z).unwrap()).unwrap(), &pt2).unwrap(), 0);
        assert_eq!(tropicalize(&x.sub(&y)), Err(CrystalError::NotSubtractionFree));
    }

    #[test]
    fn worked_swap_component() {
        // s(x^{(2)}) = y^{(3)} κ_3/κ_2 at x = (1,1,1), y = x̄_2 = (3,2,0)
        let f = &swap_bindings(3, 1)[&v(1, 2)];
        let e = tropicalize(f).unwrap();
        let pt: BTreeMap<_, _> =
            [(v(1, 1), 1), (v(1, 2), 1), (v(1, 3), 1), (v(2, 1), 3), (v(2, 2), 2), (v(2, 3), 0)].into();
        assert_eq!(trop_eval(&e, &pt).unwrap(), 1);
        assert!(trop_eval(&e, &BTreeMap::new()).is_err());
    }
}
