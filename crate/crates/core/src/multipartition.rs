//! Generalized multipartitions, the interleaved dominance order and the
//! signed action of `S_N^r`.
//!
//! A multipartition of shape `(r, N)` is an `r`-tuple of weakly decreasing
//! integer sequences of length `N`. Entries are read in the interleaved order
//! `λ^(1)_1, ..., λ^(r)_1, λ^(1)_2, ...`, so that position `r(j-1)+s`
//! (1-based) holds `λ^(s)_j`; dominance compares prefix sums in that order.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Multipartition {
    r: usize,
    n: usize,
    rows: Vec<Vec<i64>>,
}

impl Multipartition {
    /// Validates shape and weak decrease of every component.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let r = rows.len();
        if r == 0 {
            return Err(Error::InvalidMultipartition("no components".into()));
        }
        let n = rows[0].len();
        if n == 0 {
            return Err(Error::InvalidMultipartition("empty component".into()));
        }
        for (s, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidMultipartition(format!(
                    "component {} has length {}, expected {n}",
                    s + 1,
                    row.len()
                )));
            }
            if row.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::InvalidMultipartition(format!(
                    "component {} is not weakly decreasing: {row:?}",
                    s + 1
                )));
            }
        }
        Ok(Multipartition { r, n, rows })
    }

    pub fn zero(r: usize, n: usize) -> Self {
        Multipartition {
            r,
            n,
            rows: vec![vec![0; n]; r],
        }
    }

    /// `ρ = (N, N-1, ..., 1)` in every component.
    pub fn rho(r: usize, n: usize) -> Self {
        let row: Vec<i64> = (1..=n as i64).rev().collect();
        Multipartition {
            r,
            n,
            rows: vec![row; r],
        }
    }

    /// Rebuilds a multipartition from its interleaved entry vector.
    pub fn from_interleaved(r: usize, n: usize, v: &[i64]) -> Result<Self> {
        if v.len() != r * n {
            return Err(Error::InvalidMultipartition(format!(
                "interleaved vector has length {}, expected {}",
                v.len(),
                r * n
            )));
        }
        let rows = (0..r)
            .map(|s| (0..n).map(|j| v[r * j + s]).collect())
            .collect();
        Multipartition::new(rows)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn component(&self, s: usize) -> &[i64] {
        &self.rows[s]
    }

    pub fn total(&self) -> i64 {
        self.rows.iter().flatten().sum()
    }

    /// Every component strictly decreasing.
    pub fn is_regular(&self) -> bool {
        self.rows
            .iter()
            .all(|row| row.windows(2).all(|w| w[0] > w[1]))
    }

    /// Appends zeros to every component until it has length `n`.
    pub fn pad_to(&self, n: usize) -> Result<Self> {
        if n < self.n {
            return Err(Error::InvalidMultipartition(format!(
                "cannot pad length {} down to {n}",
                self.n
            )));
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut row = row.clone();
                row.resize(n, 0);
                row
            })
            .collect();
        Multipartition::new(rows)
    }

    /// Componentwise sum; the result need not be checked again since sums of
    /// weakly decreasing sequences stay weakly decreasing.
    pub fn add(&self, other: &Multipartition) -> Result<Self> {
        self.check_shape(other)?;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Ok(Multipartition {
            r: self.r,
            n: self.n,
            rows,
        })
    }

    pub fn interleave(&self) -> Vec<i64> {
        let mut v = Vec::with_capacity(self.r * self.n);
        for j in 0..self.n {
            for s in 0..self.r {
                v.push(self.rows[s][j]);
            }
        }
        v
    }

    /// `(Σ_1, ..., Σ_{rN})`.
    pub fn partial_sums(&self) -> Vec<i64> {
        prefix_sums(&self.interleave())
    }

    pub fn check_shape(&self, other: &Multipartition) -> Result<()> {
        if self.r != other.r || self.n != other.n {
            return Err(Error::ShapeMismatch {
                r1: self.r,
                n1: self.n,
                r2: other.r,
                n2: other.n,
            });
        }
        Ok(())
    }

    /// `self ≥ other` in the interleaved dominance order.
    pub fn dominates(&self, other: &Multipartition) -> Result<bool> {
        self.check_shape(other)?;
        let a = self.partial_sums();
        let b = other.partial_sums();
        let last = a.len() - 1;
        Ok(a[last] == b[last] && a[..last].iter().zip(&b[..last]).all(|(x, y)| x >= y))
    }

    /// The signed difference vector `(Σ_n(self) - Σ_n(other))_{n < rN}`.
    pub fn diff_alpha(&self, other: &Multipartition) -> Result<AlphaVec> {
        self.check_shape(other)?;
        if self.total() != other.total() {
            return Err(Error::TotalMismatch(self.total(), other.total()));
        }
        let a = self.partial_sums();
        let b = other.partial_sums();
        let k = a.len() - 1;
        Ok(AlphaVec((0..k).map(|i| a[i] - b[i]).collect()))
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.rows.iter().map(|row| row.iter().join(",")).join("|");
        write!(f, "{s}")
    }
}

impl FromStr for Multipartition {
    type Err = Error;

    /// Components separated by `|`, entries by `,`, e.g. `3,1,0|2,0,0`.
    fn from_str(s: &str) -> Result<Self> {
        let rows = s
            .trim()
            .split('|')
            .map(|comp| {
                comp.split(',')
                    .map(|e| {
                        e.trim()
                            .parse::<i64>()
                            .map_err(|_| Error::Parse(format!("bad entry {e:?} in {s:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Multipartition::new(rows)
    }
}

pub(crate) fn prefix_sums(v: &[i64]) -> Vec<i64> {
    v.iter()
        .scan(0i64, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect()
}

/// A vector in `Z^{rN-1}`, coordinates indexed by the simple directions `δ_n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct AlphaVec(pub Vec<i64>);

impl AlphaVec {
    pub fn zero(len: usize) -> Self {
        AlphaVec(vec![0; len])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// The interleaved entry differences whose prefix sums are this vector
    /// (with `Σ_0 = Σ_{rN} = 0`).
    pub fn entry_differences(&self) -> Vec<i64> {
        let k = self.0.len();
        (0..=k)
            .map(|i| {
                let cur = if i < k { self.0[i] } else { 0 };
                let prev = if i > 0 { self.0[i - 1] } else { 0 };
                cur - prev
            })
            .collect()
    }
}

/// An element of `S_N^r` together with its sign.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignedWeylElement {
    /// `perms[s][j]` is the (0-based) row whose entry lands in row `j`.
    pub perms: Vec<Vec<usize>>,
    pub sign: i32,
}

impl SignedWeylElement {
    pub fn new(perms: Vec<Vec<usize>>) -> Self {
        let sign = perms.iter().map(|p| permutation_sign(p)).product();
        SignedWeylElement { perms, sign }
    }

    /// Permutes the entries of each component of an interleaved vector.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let r = self.perms.len();
        let mut out = vec![0; v.len()];
        for (s, p) in self.perms.iter().enumerate() {
            for (j, &src) in p.iter().enumerate() {
                out[r * j + s] = v[r * src + s];
            }
        }
        out
    }
}

pub(crate) fn permutation_sign(p: &[usize]) -> i32 {
    let inversions = (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All `(N!)^r` elements of `S_N^r`: lexicographic permutations in each
/// component, the last component varying fastest.
pub fn weyl_group(r: usize, n: usize) -> impl Iterator<Item = SignedWeylElement> {
    (0..r)
        .map(|_| (0..n).permutations(n).collect::<Vec<_>>())
        .multi_cartesian_product()
        .map(SignedWeylElement::new)
}

/// `(sign, σ(v))` for every `σ ∈ S_N^r`, acting on an interleaved vector of
/// length `rN`.
pub fn signed_weyl_images(
    r: usize,
    n: usize,
    v: &[i64],
) -> impl Iterator<Item = (i32, Vec<i64>)> + '_ {
    assert_eq!(v.len(), r * n, "vector length must be rN");
    weyl_group(r, n).map(move |w| (w.sign, w.apply(v)))
}

/// Partitions of `total` into at most `n` parts, padded with zeros to length
/// `n`, in decreasing lexicographic order.
pub fn partitions_padded(total: i64, n: usize) -> Vec<Vec<i64>> {
    fn go(rem: i64, max: i64, n: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if rem == 0 {
            let mut p = cur.clone();
            p.resize(n, 0);
            out.push(p);
            return;
        }
        if cur.len() == n {
            return;
        }
        for part in (1..=rem.min(max)).rev() {
            cur.push(part);
            go(rem - part, part, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if total >= 0 {
        go(total, total, n, &mut Vec::new(), &mut out);
    }
    out
}

/// All multipartitions of shape `(r, n)` with nonnegative entries summing to
/// `total`. The first component takes the largest share first; within a
/// component partitions run in decreasing lexicographic order.
pub fn enumerate_multipartitions(r: usize, n: usize, total: i64) -> Vec<Multipartition> {
    fn go(r: usize, n: usize, rem: i64, rows: &mut Vec<Vec<i64>>, out: &mut Vec<Multipartition>) {
        if rows.len() == r - 1 {
            for p in partitions_padded(rem, n) {
                rows.push(p);
                out.push(Multipartition {
                    r,
                    n,
                    rows: rows.clone(),
                });
                rows.pop();
            }
            return;
        }
        for size in (0..=rem).rev() {
            for p in partitions_padded(size, n) {
                rows.push(p);
                go(r, n, rem - size, rows, out);
                rows.pop();
            }
        }
    }
    let mut out = Vec::new();
    if total >= 0 && r >= 1 && n >= 1 {
        go(r, n, total, &mut Vec::new(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(s: &str) -> Multipartition {
        s.parse().unwrap()
    }

    #[test]
    fn interleave_examples() {
        assert_eq!(mp("2,0|0,0").interleave(), vec![2, 0, 0, 0]);
        assert_eq!(mp("4,2,2,1").interleave(), vec![4, 2, 2, 1]);
        assert_eq!(mp("1,1|3,2").interleave(), vec![1, 3, 1, 2]);
    }

    #[test]
    fn partial_sum_examples() {
        assert_eq!(mp("2,0|0,0").partial_sums(), vec![2, 2, 2, 2]);
        assert_eq!(Multipartition::zero(3, 2).partial_sums(), vec![0; 6]);
        assert_eq!(mp("1,1|1,1").partial_sums(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn dominance_examples() {
        let a = mp("2,0|0,0");
        let b = mp("1,1|0,0");
        assert!(a.dominates(&b).unwrap());
        assert!(a.dominates(&a).unwrap());
        assert!(!b.dominates(&a).unwrap());
        assert!(matches!(
            a.dominates(&mp("2,0,0|0,0,0")),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn diff_alpha_examples() {
        let a = mp("2,0|0,0");
        let b = mp("1,1|0,0");
        assert_eq!(a.diff_alpha(&b).unwrap(), AlphaVec(vec![1, 1, 0]));
        assert_eq!(a.diff_alpha(&a).unwrap(), AlphaVec::zero(3));
        assert_eq!(mp("1|0").diff_alpha(&mp("0|1")).unwrap(), AlphaVec(vec![1]));
        assert_eq!(
            a.diff_alpha(&mp("1,0|0,0")),
            Err(Error::TotalMismatch(2, 1))
        );
    }

    #[test]
    fn rho_examples() {
        assert_eq!(Multipartition::rho(1, 3), mp("3,2,1"));
        assert_eq!(Multipartition::rho(2, 1), mp("1|1"));
        assert_eq!(Multipartition::rho(2, 2), mp("2,1|2,1"));
    }

    #[test]
    fn weyl_images_examples() {
        let imgs: Vec<_> = signed_weyl_images(1, 2, &[4, 1]).collect();
        assert_eq!(imgs, vec![(1, vec![4, 1]), (-1, vec![1, 4])]);

        let imgs: Vec<_> = signed_weyl_images(2, 1, &[5, 7]).collect();
        assert_eq!(imgs, vec![(1, vec![5, 7])]);

        let signs: Vec<i32> = signed_weyl_images(2, 2, &[4, 3, 1, 2])
            .map(|(s, _)| s)
            .collect();
        assert_eq!(signs, vec![1, -1, -1, 1]);
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(
            enumerate_multipartitions(1, 2, 2),
            vec![mp("2,0"), mp("1,1")]
        );
        assert_eq!(
            enumerate_multipartitions(2, 1, 1),
            vec![mp("1|0"), mp("0|1")]
        );
        assert_eq!(
            enumerate_multipartitions(3, 2, 0),
            vec![Multipartition::zero(3, 2)]
        );
    }

    #[test]
    fn enumeration_counts() {
        // number of r-multipartitions of n: coefficients of P(q)^r
        let counts: Vec<usize> = (0..=5)
            .map(|t| enumerate_multipartitions(3, 5, t).len())
            .collect();
        assert_eq!(counts, vec![1, 3, 9, 22, 51, 108]);
        // at most two parts per component
        assert_eq!(enumerate_multipartitions(1, 2, 6).len(), 4);
    }

    #[test]
    fn parser_rejects_bad_input() {
        assert!("1,2|0,0".parse::<Multipartition>().is_err());
        assert!("1,0|0".parse::<Multipartition>().is_err());
        assert!("a,0".parse::<Multipartition>().is_err());
        assert_eq!(mp(" 3,1,0|2,0,0 ").to_string(), "3,1,0|2,0,0");
        assert_eq!(mp("0,-1|2,-3").rows(), &[vec![0, -1], vec![2, -3]]);
    }

    #[test]
    fn padding() {
        assert_eq!(mp("2|1").pad_to(3).unwrap(), mp("2,0,0|1,0,0"));
        assert!(mp("0,-1").pad_to(3).is_err());
    }

    #[test]
    fn entry_differences_invert_prefix_sums() {
        let a = mp("3,1|2,0");
        let b = mp("2,2|1,1");
        let alpha = a.diff_alpha(&b).unwrap();
        let d: Vec<i64> = a
            .interleave()
            .iter()
            .zip(b.interleave())
            .map(|(x, y)| x - y)
            .collect();
        assert_eq!(alpha.entry_differences(), d);
    }
}
