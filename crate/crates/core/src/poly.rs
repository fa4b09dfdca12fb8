//! Sparse polynomials in the grading variables `t_1, ..., t_r`.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vector, so iteration is
//! lexicographic in the exponents and serialization is reproducible.
//! Coefficients are arbitrary-precision integers and zero coefficients are
//! never stored.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Exponent vector of a `t`-monomial.
pub type TExp = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TPoly {
    r: usize,
    terms: BTreeMap<TExp, BigInt>,
}

impl TPoly {
    pub fn zero(r: usize) -> Self {
        TPoly {
            r,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(r: usize) -> Self {
        Self::constant(r, BigInt::one())
    }

    pub fn constant(r: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(vec![0; r], c)
    }

    /// The variable `t_s`, with `s` counted from 1.
    pub fn var(r: usize, s: usize) -> Self {
        assert!(s >= 1 && s <= r, "variable index {s} out of range 1..={r}");
        let mut e = vec![0; r];
        e[s - 1] = 1;
        Self::monomial(e, 1)
    }

    pub fn monomial(exps: TExp, c: impl Into<BigInt>) -> Self {
        let r = exps.len();
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        TPoly { r, terms }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// repeated exponents and dropping zeros.
    pub fn from_terms<I, C>(r: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (TExp, C)>,
        C: Into<BigInt>,
    {
        let mut p = TPoly::zero(r);
        for (e, c) in terms {
            if e.len() != r {
                return Err(Error::VariableCount {
                    left: r,
                    right: e.len(),
                });
            }
            p.add_term(e, c.into());
        }
        Ok(p)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(e, c)| e.iter().all(|&x| x == 0) && c.is_one())
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TExp, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, e: TExp, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_r(&self, other: &TPoly) -> Result<()> {
        if self.r != other.r {
            return Err(Error::VariableCount {
                left: self.r,
                right: other.r,
            });
        }
        Ok(())
    }

    /// `self += sign * other`, in place.
    pub fn add_scaled(&mut self, other: &TPoly, sign: i32) -> Result<()> {
        self.check_r(other)?;
        for (e, c) in &other.terms {
            let c = if sign < 0 { -c } else { c.clone() };
            self.add_term(e.clone(), c);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &TPoly) -> Result<TPoly> {
        let mut out = self.clone();
        out.add_scaled(other, 1)?;
        Ok(out)
    }

    pub fn try_sub(&self, other: &TPoly) -> Result<TPoly> {
        let mut out = self.clone();
        out.add_scaled(other, -1)?;
        Ok(out)
    }

    pub fn try_mul(&self, other: &TPoly) -> Result<TPoly> {
        self.check_r(other)?;
        let mut out = TPoly::zero(self.r);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    /// Multiplies by `t^shift`, where `shift` has length `r`.
    pub fn shift(&self, shift: &[u32]) -> TPoly {
        debug_assert_eq!(shift.len(), self.r);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(shift).map(|(x, y)| x + y).collect(), c.clone()))
            .collect();
        TPoly { r: self.r, terms }
    }

    /// Substitutes `t_s = t` for every `s`; the result has one variable.
    pub fn specialize_diagonal(&self) -> TPoly {
        let mut out = TPoly::zero(1);
        for (e, c) in &self.terms {
            out.add_term(vec![e.iter().sum()], c.clone());
        }
        out
    }

    /// Drops every term of total degree above `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> TPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.iter().sum::<u32>() <= max_degree)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        TPoly { r: self.r, terms }
    }

    /// Value at `t = 0`.
    pub fn constant_term(&self) -> BigInt {
        self.coeff(&vec![0; self.r])
    }

    /// Value at `t_1 = ... = t_r = 1`.
    pub fn eval_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Terms with a negative coefficient.
    pub fn negative_terms(&self) -> Vec<(TExp, BigInt)> {
        self.terms
            .iter()
            .filter(|(_, c)| c.is_negative())
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect()
    }

    /// Sorted array of `{"t": [...], "c": n}` objects.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| {
                    let n: serde_json::Number = c
                        .to_string()
                        .parse()
                        .expect("decimal integer is a valid JSON number");
                    json!({ "t": e, "c": n })
                })
                .collect(),
        )
    }

    /// Inverse of [`TPoly::to_json`]; `r` is needed for the zero polynomial.
    pub fn from_json(r: usize, v: &Value) -> Result<TPoly> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse("polynomial JSON must be an array".into()))?;
        let mut out = TPoly::zero(r);
        for item in arr {
            let e: TExp = item
                .get("t")
                .and_then(|t| serde_json::from_value(t.clone()).ok())
                .ok_or_else(|| Error::Parse(format!("bad exponent in {item}")))?;
            let c: BigInt = item
                .get("c")
                .map(|c| c.to_string())
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad coefficient in {item}")))?;
            if e.len() != r {
                return Err(Error::VariableCount {
                    left: r,
                    right: e.len(),
                });
            }
            out.add_term(e, c);
        }
        Ok(out)
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(s, &x)| {
                    let name = if self.r == 1 {
                        "t".to_string()
                    } else {
                        format!("t{}", s + 1)
                    };
                    if x == 1 {
                        name
                    } else {
                        format!("{name}^{x}")
                    }
                })
                .collect();
            let mag = c.abs();
            if c.is_negative() {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&TPoly> for &TPoly {
            type Output = TPoly;
            fn $method(self, rhs: &TPoly) -> TPoly {
                self.$try(rhs)
                    .expect("TPoly operands differ in variable count")
            }
        }
        impl $tr<TPoly> for TPoly {
            type Output = TPoly;
            fn $method(self, rhs: TPoly) -> TPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &TPoly {
    type Output = TPoly;
    fn neg(self) -> TPoly {
        TPoly {
            r: self.r,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for TPoly {
    type Output = TPoly;
    fn neg(self) -> TPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(r: usize, s: usize) -> TPoly {
        TPoly::var(r, s)
    }

    #[test]
    fn monomial_product() {
        let a = t(2, 1);
        let b = &t(2, 1) * &t(2, 2);
        assert_eq!(&a * &b, TPoly::monomial(vec![2, 1], 1));
    }

    #[test]
    fn cancellation_prunes() {
        let p = &TPoly::one(2) + &t(2, 1);
        let q = &p + &TPoly::constant(2, -1);
        assert_eq!(q, t(2, 1));
        assert_eq!(q.len(), 1);
        assert!((&q - &q).is_zero());
    }

    #[test]
    fn binomial_square() {
        let s = &t(2, 1) + &t(2, 2);
        let sq = &s * &s;
        let expected =
            TPoly::from_terms(2, [(vec![2, 0], 1), (vec![1, 1], 2), (vec![0, 2], 1)]).unwrap();
        assert_eq!(sq, expected);
    }

    #[test]
    fn variable_count_mismatch() {
        assert_eq!(
            t(2, 1).try_add(&t(3, 1)),
            Err(Error::VariableCount { left: 2, right: 3 })
        );
        assert!(t(1, 1).try_mul(&t(2, 1)).is_err());
    }

    #[test]
    fn diagonal_examples() {
        let p = &t(2, 1) + &TPoly::monomial(vec![2, 1], 1);
        let expected = &t(1, 1) + &TPoly::monomial(vec![3], 1);
        assert_eq!(p.specialize_diagonal(), expected);
        assert_eq!(TPoly::one(4).specialize_diagonal(), TPoly::one(1));
        assert_eq!(
            TPoly::monomial(vec![1, 1, 1], 1).specialize_diagonal(),
            TPoly::monomial(vec![3], 1)
        );
    }

    #[test]
    fn display_forms() {
        let p = TPoly::from_terms(2, [(vec![1, 0], 1), (vec![2, 1], 3), (vec![0, 0], -2)]).unwrap();
        assert_eq!(p.to_string(), "-2+t1+3*t1^2*t2");
        assert_eq!(TPoly::var(1, 1).to_string(), "t");
        assert_eq!(TPoly::zero(3).to_string(), "0");
    }

    #[test]
    fn json_layout() {
        let p = TPoly::from_terms(2, [(vec![2, 1], 1), (vec![1, 0], 1)]).unwrap();
        assert_eq!(
            p.to_json().to_string(),
            r#"[{"t":[1,0],"c":1},{"t":[2,1],"c":1}]"#
        );
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let q = TPoly::monomial(vec![3], big);
        assert_eq!(TPoly::from_json(1, &q.to_json()).unwrap(), q);
    }
}
