//! Laurent polynomials in `x_1, ..., x_{rN}` whose coefficients are
//! polynomials in `t_1, ..., t_r`, with an optional cap on the total
//! `t`-degree.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{TExp, TPoly};

/// Exponent vector of an `x`-monomial.
pub type XExp = Vec<i64>;

/// Terms are keyed by `(texp, xexp)`; the map order is the canonical term
/// order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedLaurent {
    nx: usize,
    r: usize,
    truncation: Option<u32>,
    terms: BTreeMap<(TExp, XExp), BigInt>,
}

impl GradedLaurent {
    pub fn zero(nx: usize, r: usize) -> Self {
        GradedLaurent {
            nx,
            r,
            truncation: None,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nx: usize, r: usize) -> Self {
        Self::monomial(vec![0; nx], vec![0; r], 1)
    }

    pub fn monomial(xexp: XExp, texp: TExp, c: impl Into<BigInt>) -> Self {
        let mut out = GradedLaurent::zero(xexp.len(), texp.len());
        out.add_term(texp, xexp, c.into());
        out
    }

    /// Sets the total `t`-degree cap, discarding terms above it.
    pub fn with_truncation(mut self, max_degree: u32) -> Self {
        self.truncation = Some(max_degree);
        self.terms
            .retain(|(t, _), _| t.iter().sum::<u32>() <= max_degree);
        self
    }

    pub fn truncation(&self) -> Option<u32> {
        self.truncation
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates `(texp, xexp, coefficient)` in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&TExp, &XExp, &BigInt)> {
        self.terms.iter().map(|((t, x), c)| (t, x, c))
    }

    pub fn coeff(&self, texp: &[u32], xexp: &[i64]) -> BigInt {
        self.terms
            .get(&(texp.to_vec(), xexp.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    fn within(&self, texp: &[u32]) -> bool {
        self.truncation
            .is_none_or(|d| texp.iter().sum::<u32>() <= d)
    }

    pub(crate) fn add_term(&mut self, texp: TExp, xexp: XExp, c: BigInt) {
        if c.is_zero() || !self.within(&texp) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((texp, xexp)) {
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

    fn check_shape(&self, other: &GradedLaurent) -> Result<()> {
        if self.nx != other.nx {
            return Err(Error::XVariableCount {
                left: self.nx,
                right: other.nx,
            });
        }
        if self.r != other.r {
            return Err(Error::VariableCount {
                left: self.r,
                right: other.r,
            });
        }
        Ok(())
    }

    fn joint_truncation(&self, other: &GradedLaurent) -> Option<u32> {
        match (self.truncation, other.truncation) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    /// `self += scale * other`.
    pub fn add_scaled(&mut self, other: &GradedLaurent, scale: &BigInt) -> Result<()> {
        self.check_shape(other)?;
        self.truncation = self.joint_truncation(other);
        if let Some(d) = self.truncation {
            self.terms.retain(|(t, _), _| t.iter().sum::<u32>() <= d);
        }
        for ((t, x), c) in &other.terms {
            self.add_term(t.clone(), x.clone(), c * scale);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &GradedLaurent) -> Result<GradedLaurent> {
        let mut out = self.clone();
        out.add_scaled(other, &BigInt::one())?;
        Ok(out)
    }

    pub fn try_sub(&self, other: &GradedLaurent) -> Result<GradedLaurent> {
        let mut out = self.clone();
        out.add_scaled(other, &-BigInt::one())?;
        Ok(out)
    }

    pub fn try_mul(&self, other: &GradedLaurent) -> Result<GradedLaurent> {
        self.check_shape(other)?;
        let mut out = GradedLaurent::zero(self.nx, self.r);
        out.truncation = self.joint_truncation(other);
        for ((ta, xa), ca) in &self.terms {
            for ((tb, xb), cb) in &other.terms {
                let t: TExp = ta.iter().zip(tb).map(|(p, q)| p + q).collect();
                if !out.within(&t) {
                    continue;
                }
                let x = xa.iter().zip(xb).map(|(p, q)| p + q).collect();
                out.add_term(t, x, ca * cb);
            }
        }
        Ok(out)
    }

    /// Multiplies every coefficient by the `t`-polynomial `p`.
    pub fn mul_tpoly(&self, p: &TPoly) -> Result<GradedLaurent> {
        if p.r() != self.r {
            return Err(Error::VariableCount {
                left: self.r,
                right: p.r(),
            });
        }
        let mut out = GradedLaurent {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for ((t, x), c) in &self.terms {
            for (e, d) in p.terms() {
                let tt = t.iter().zip(e).map(|(a, b)| a + b).collect();
                out.add_term(tt, x.clone(), c * d);
            }
        }
        Ok(out)
    }

    /// Multiplies by `(1 - t_color x^xw)^{-1}`, expanded as a geometric series
    /// and cut off at the truncation degree. `color` counts from 1.
    pub fn geom_inverse_factor(&self, xw: &[i64], color: usize) -> Result<GradedLaurent> {
        let d = self.truncation.ok_or(Error::MissingTruncation)?;
        if xw.len() != self.nx {
            return Err(Error::XVariableCount {
                left: self.nx,
                right: xw.len(),
            });
        }
        if color == 0 || color > self.r {
            return Err(Error::ColorOutOfRange { color, r: self.r });
        }
        let mut out = GradedLaurent {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for ((t, x), c) in &self.terms {
            let deg: u32 = t.iter().sum();
            let mut t = t.clone();
            let mut x = x.clone();
            for _ in 0..=(d - deg) {
                out.add_term(t.clone(), x.clone(), c.clone());
                t[color - 1] += 1;
                x.iter_mut().zip(xw).for_each(|(a, b)| *a += b);
            }
        }
        Ok(out)
    }

    /// Renames the `x`-variables: exponent at position `i` moves to `perm[i]`.
    pub fn permute_x(&self, perm: &[usize]) -> GradedLaurent {
        debug_assert_eq!(perm.len(), self.nx);
        let mut out = GradedLaurent {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for ((t, x), c) in &self.terms {
            let mut y = vec![0; self.nx];
            for (i, &e) in x.iter().enumerate() {
                y[perm[i]] = e;
            }
            out.add_term(t.clone(), y, c.clone());
        }
        out
    }

    /// Replaces every `x_i` by `x_i^{-1}`.
    pub fn invert_x(&self) -> GradedLaurent {
        let mut out = GradedLaurent {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for ((t, x), c) in &self.terms {
            out.add_term(t.clone(), x.iter().map(|e| -e).collect(), c.clone());
        }
        out
    }

    /// Drops terms of total `t`-degree above `max_degree` and records the cap.
    pub fn truncate(&self, max_degree: u32) -> GradedLaurent {
        let cap = self.truncation.map_or(max_degree, |d| d.min(max_degree));
        self.clone().with_truncation(cap)
    }

    /// Builds a value term-by-term from an iterator of `(texp, xexp, c)`.
    pub fn from_terms<I>(nx: usize, r: usize, truncation: Option<u32>, terms: I) -> GradedLaurent
    where
        I: IntoIterator<Item = (TExp, XExp, BigInt)>,
    {
        let mut out = GradedLaurent {
            nx,
            r,
            truncation,
            terms: BTreeMap::new(),
        };
        for (t, x, c) in terms {
            out.add_term(t, x, c);
        }
        out
    }
}

impl fmt::Display for GradedLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((t, x), c)) in self.terms.iter().enumerate() {
            let mut factors = Vec::new();
            for (s, &e) in t.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("t{}", s + 1)),
                    _ => factors.push(format!("t{}^{e}", s + 1)),
                }
            }
            for (j, &e) in x.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{}", j + 1)),
                    _ => factors.push(format!("x{}^{e}", j + 1)),
                }
            }
            let mag = c.abs();
            if c.is_negative() {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            match (factors.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{}", factors.join("*"))?,
                (false, false) => write!(f, "{mag}*{}", factors.join("*"))?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(nx: usize, i: usize) -> XExp {
        let mut v = vec![0; nx];
        v[i - 1] = 1;
        v
    }

    #[test]
    fn geometric_series_degree_two() {
        let one = GradedLaurent::one(2, 1).with_truncation(2);
        let out = one.geom_inverse_factor(&[-1, 1], 1).unwrap();
        let expected = GradedLaurent::from_terms(
            2,
            1,
            Some(2),
            [
                (vec![0], vec![0, 0], BigInt::one()),
                (vec![1], vec![-1, 1], BigInt::one()),
                (vec![2], vec![-2, 2], BigInt::one()),
            ],
        );
        assert_eq!(out, expected);
    }

    #[test]
    fn degree_zero_truncation_is_identity() {
        let one = GradedLaurent::one(3, 2).with_truncation(0);
        let out = one.geom_inverse_factor(&[1, -2, 1], 2).unwrap();
        assert_eq!(out, one);
    }

    #[test]
    fn one_product_step() {
        // t1 x1 * (1 - t2 x1^{-1} x2)^{-1} up to degree 2
        let f = GradedLaurent::monomial(e(2, 1), vec![1, 0], 1).with_truncation(2);
        let out = f.geom_inverse_factor(&[-1, 1], 2).unwrap();
        let expected = GradedLaurent::from_terms(
            2,
            2,
            Some(2),
            [
                (vec![1, 0], vec![1, 0], BigInt::one()),
                (vec![1, 1], vec![0, 1], BigInt::one()),
            ],
        );
        assert_eq!(out, expected);
    }

    #[test]
    fn missing_truncation_is_an_error() {
        let one = GradedLaurent::one(2, 1);
        assert_eq!(
            one.geom_inverse_factor(&[-1, 1], 1),
            Err(Error::MissingTruncation)
        );
    }

    #[test]
    fn bad_color() {
        let one = GradedLaurent::one(2, 1).with_truncation(1);
        assert!(matches!(
            one.geom_inverse_factor(&[-1, 1], 2),
            Err(Error::ColorOutOfRange { .. })
        ));
    }

    #[test]
    fn permute_and_invert() {
        let f = GradedLaurent::monomial(vec![2, -1, 0], vec![1], 3);
        let g = f.permute_x(&[2, 0, 1]);
        assert_eq!(g.coeff(&[1], &[-1, 0, 2]), BigInt::from(3));
        assert_eq!(f.invert_x().coeff(&[1], &[-2, 1, 0]), BigInt::from(3));
    }
}
