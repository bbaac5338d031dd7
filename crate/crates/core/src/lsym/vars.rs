use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::LsymError;
use crate::exactring::{canonical_color, Poly, RationalExpr, VarId};

/// An `n × m` array of loop variables or values; `entries[i][j]` holds
/// `x_{i+1}^{(j+1)}`. Colors are read cyclically.
#[derive(Clone, Debug, PartialEq)]
pub struct LoopVarArray<T> {
    n: u32,
    entries: Vec<Vec<T>>,
}

impl<T: Clone> LoopVarArray<T> {
    pub fn new(n: u32, entries: Vec<Vec<T>>) -> Result<Self, LsymError> {
        if n == 0 || entries.iter().any(|col| col.len() != n as usize) {
            return Err(LsymError::Dimension(format!("every site needs exactly n = {n} entries")));
        }
        Ok(LoopVarArray { n, entries })
    }

    pub fn from_fn(n: u32, m: u32, mut f: impl FnMut(u32, u32) -> T) -> Self {
        let entries = (1..=m).map(|i| (1..=n).map(|j| f(i, j)).collect()).collect();
        LoopVarArray { n, entries }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.entries.len() as u32
    }

    /// `x_site^(raw_color)` with the color reduced mod n.
    pub fn get(&self, site: u32, raw_color: i64) -> &T {
        &self.entries[site as usize - 1][canonical_color(raw_color, self.n) as usize - 1]
    }

    pub fn set(&mut self, site: u32, raw_color: i64, v: T) {
        let c = canonical_color(raw_color, self.n) as usize - 1;
        self.entries[site as usize - 1][c] = v;
    }

    /// The `n` colors of one site, in color order.
    pub fn site(&self, site: u32) -> &[T] {
        &self.entries[site as usize - 1]
    }

    pub fn set_site(&mut self, site: u32, values: Vec<T>) {
        assert_eq!(values.len(), self.n as usize);
        self.entries[site as usize - 1] = values;
    }

    pub fn sites(&self) -> &[Vec<T>] {
        &self.entries
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> LoopVarArray<U> {
        LoopVarArray { n: self.n, entries: self.entries.iter().map(|c| c.iter().map(&mut f).collect()).collect() }
    }

    /// Keeps the first `m` sites.
    pub fn truncated(&self, m: u32) -> Self {
        LoopVarArray { n: self.n, entries: self.entries[..m as usize].to_vec() }
    }
}

impl LoopVarArray<Poly> {
    /// The generic array with `x_i^(j)` a free variable.
    pub fn symbolic(n: u32, m: u32) -> Self {
        Self::from_fn(n, m, |i, j| Poly::var(VarId::new(i, j as i64, n)))
    }
}

impl LoopVarArray<RationalExpr> {
    pub fn symbolic_rational(n: u32, m: u32) -> Self {
        Self::from_fn(n, m, |i, j| RationalExpr::var(VarId::new(i, j as i64, n)))
    }
}

impl LoopVarArray<BigRational> {
    /// The assignment `x_i^(j) ↦ value`, for exact evaluation.
    pub fn as_point(&self) -> std::collections::BTreeMap<VarId, BigRational> {
        let mut out = std::collections::BTreeMap::new();
        for (i, col) in self.entries.iter().enumerate() {
            for (j, v) in col.iter().enumerate() {
                out.insert(VarId::new(i as u32 + 1, j as i64 + 1, self.n), v.clone());
            }
        }
        out
    }
}

/// A point with coordinates drawn uniformly from `1..=10^6`, the sampling
/// range used by every randomized exact identity check.
pub fn random_point<G: rand::Rng>(n: u32, m: u32, rng: &mut G) -> LoopVarArray<BigRational> {
    LoopVarArray::from_fn(n, m, |_, _| BigRational::from_integer(rng.gen_range(1..=1_000_000i64).into()))
}

/// JSON form: `{"n":…, "m":…, "values":[[…],…]}` or `{"n":…, "m":…, "symbolic":true}`.
/// Values may be integers, floats, or `"p/q"` strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LoopVarJson {
    pub n: u32,
    pub m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<Vec<serde_json::Value>>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub symbolic: bool,
}

/// Parses a JSON scalar (integer, decimal literal or `"p/q"`) exactly.
pub fn parse_rational(v: &serde_json::Value) -> Result<BigRational, LsymError> {
    let bad = || LsymError::Parse(format!("not a rational number: {v}"));
    match v {
        serde_json::Value::Number(num) => {
            if let Some(i) = num.as_i64() {
                return Ok(BigRational::from_integer(i.into()));
            }
            parse_rational_str(&num.to_string()).ok_or_else(bad)
        }
        serde_json::Value::String(s) => parse_rational_str(s.trim()).ok_or_else(bad),
        _ => Err(bad()),
    }
}

/// `"p/q"`, `"-12"` or a plain decimal such as `"0.25"`.
pub fn parse_rational_str(s: &str) -> Option<BigRational> {
    if let Some((p, q)) = s.split_once('/') {
        let p: num_bigint::BigInt = p.trim().parse().ok()?;
        let q: num_bigint::BigInt = q.trim().parse().ok()?;
        if q == 0.into() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    if let Ok(i) = s.parse::<num_bigint::BigInt>() {
        return Some(BigRational::from_integer(i));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if !frac.is_empty() && frac.bytes().all(|b| b.is_ascii_digit()) {
            let digits: num_bigint::BigInt = format!("{int}{frac}").parse().ok()?;
            let scale = num_bigint::BigInt::from(10u32).pow(frac.len() as u32);
            return Some(BigRational::new(digits, scale));
        }
    }
    let f: f64 = s.parse().ok()?;
    BigRational::from_float(f)
}

impl LoopVarJson {
    pub fn to_values(&self) -> Result<LoopVarArray<BigRational>, LsymError> {
        let vals = self.values.as_ref().ok_or_else(|| LsymError::Parse("missing \"values\"".into()))?;
        if vals.len() != self.m as usize {
            return Err(LsymError::Dimension(format!("expected m = {} sites, got {}", self.m, vals.len())));
        }
        let entries = vals
            .iter()
            .map(|col| col.iter().map(parse_rational).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        LoopVarArray::new(self.n, entries)
    }

    pub fn from_values(a: &LoopVarArray<BigRational>) -> Self {
        let values = a
            .sites()
            .iter()
            .map(|c| {
                c.iter()
                    .map(|q| {
                        if let Some(i) = q.is_integer().then(|| q.to_integer().to_i64()).flatten() {
                            serde_json::json!(i)
                        } else {
                            serde_json::json!(format!("{}/{}", q.numer(), q.denom()))
                        }
                    })
                    .collect()
            })
            .collect();
        LoopVarJson { n: a.n(), m: a.m(), values: Some(values), symbolic: false }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::ratio;

    #[test]
    fn cyclic_access() {
        let a = LoopVarArray::symbolic(3, 2);
        assert_eq!(a.get(2, 4), a.get(2, 1));
        assert_eq!(a.get(1, 0).to_string(), "x[1]^(3)");
        assert_eq!(a.m(), 2);
    }

    #[test]
    fn json_values() {
        let j: LoopVarJson = serde_json::from_str(r#"{"n":2,"m":2,"values":[[1,"1/2"],[0.25,3]]}"#).unwrap();
        let a = j.to_values().unwrap();
        assert_eq!(a.get(1, 2), &ratio(1, 2));
        assert_eq!(a.get(2, 1), &ratio(1, 4));
        let back = LoopVarJson::from_values(&a).to_values().unwrap();
        assert_eq!(back, a);
        let bad: LoopVarJson = serde_json::from_str(r#"{"n":2,"m":1,"values":[[1]]}"#).unwrap();
        assert!(bad.to_values().is_err());
    }
}
