//! The affine symmetric group in window notation, parabolic longest words,
//! and the block words attached to a flag type of the cyclic quiver.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pseudoroots::PseudorootSystem;

/// A bijection `w: Z → Z` with `w(u + d) = w(u) + d` and
/// `Σ_{u=1}^d (w(u) - u) = 0`, stored by its window `w(1), ..., w(d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffinePermutation {
    window: Vec<i64>,
}

impl AffinePermutation {
    pub fn new(window: Vec<i64>) -> Result<Self> {
        let d = window.len();
        if d == 0 {
            return Err(Error::InvalidWindow("empty window".into()));
        }
        let residues: BTreeSet<i64> = window.iter().map(|w| w.rem_euclid(d as i64)).collect();
        if residues.len() != d {
            return Err(Error::InvalidWindow(format!(
                "{window:?} repeats a residue mod {d}"
            )));
        }
        let shift: i64 = window
            .iter()
            .enumerate()
            .map(|(u, w)| w - (u as i64 + 1))
            .sum();
        if shift != 0 {
            return Err(Error::InvalidWindow(format!(
                "{window:?} has total shift {shift}"
            )));
        }
        Ok(AffinePermutation { window })
    }

    pub fn identity(d: usize) -> Self {
        AffinePermutation {
            window: (1..=d as i64).collect(),
        }
    }

    /// `s_i` for `i` in `0..d`. For `i > 0` it swaps `i` and `i + 1`; `s_0`
    /// swaps `0` and `1` (and so `d` and `d + 1`).
    pub fn simple(d: usize, i: usize) -> Self {
        assert!(d >= 2 && i < d, "simple reflection s_{i} outside d = {d}");
        let mut window: Vec<i64> = (1..=d as i64).collect();
        if i == 0 {
            window[0] = 0;
            window[d - 1] = d as i64 + 1;
        } else {
            window.swap(i - 1, i);
        }
        AffinePermutation { window }
    }

    pub fn d(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    /// `w(u)` for any integer `u`.
    pub fn value(&self, u: i64) -> i64 {
        let d = self.d() as i64;
        let k = (u - 1).rem_euclid(d);
        let q = (u - 1).div_euclid(d);
        self.window[k as usize] + q * d
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffinePermutation) -> AffinePermutation {
        assert_eq!(self.d(), other.d(), "period mismatch");
        AffinePermutation {
            window: other.window.iter().map(|&v| self.value(v)).collect(),
        }
    }

    /// `s_i ∘ self`: the values `i` and `i + 1` are exchanged, periodically.
    pub fn apply_simple(&self, i: usize) -> AffinePermutation {
        AffinePermutation::simple(self.d(), i).compose(self)
    }

    /// `self ∘ s_i`: the positions `i` and `i + 1` are exchanged.
    pub fn apply_simple_right(&self, i: usize) -> AffinePermutation {
        self.compose(&AffinePermutation::simple(self.d(), i))
    }

    pub fn inverse(&self) -> AffinePermutation {
        let d = self.d() as i64;
        let mut window = vec![0; self.d()];
        for (u, &w) in self.window.iter().enumerate() {
            let k = (w - 1).rem_euclid(d);
            let q = (w - 1).div_euclid(d);
            window[k as usize] = u as i64 + 1 - q * d;
        }
        AffinePermutation { window }
    }

    /// Number of inversions: `Σ_{1 ≤ i < j ≤ d} |⌊(w(j) - w(i)) / d⌋|`.
    pub fn length(&self) -> u64 {
        let d = self.d() as i64;
        let w = &self.window;
        let mut total = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                total += (w[j] - w[i]).div_euclid(d).unsigned_abs();
            }
        }
        total
    }

    /// `s_{i_1} s_{i_2} ⋯ s_{i_k}`.
    pub fn from_word(d: usize, word: &[usize]) -> AffinePermutation {
        word.iter().fold(AffinePermutation::identity(d), |acc, &i| {
            acc.apply_simple_right(i)
        })
    }
}

impl fmt::Display for AffinePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.window.iter().map(|w| w.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

pub fn is_reduced(d: usize, word: &[usize]) -> bool {
    AffinePermutation::from_word(d, word).length() == word.len() as u64
}

/// The consecutive arc `a, a+1, ..., a+k-1 (mod d)` formed by `residues`,
/// in that order.
pub fn arc_order(d: usize, residues: &[usize]) -> Result<Vec<usize>> {
    let set: BTreeSet<usize> = residues.iter().copied().collect();
    let k = set.len();
    if set.len() != residues.len() || k >= d || set.iter().any(|&i| i >= d) {
        return Err(Error::NotAnArc(residues.to_vec()));
    }
    if k == 0 {
        return Ok(Vec::new());
    }
    // the start is the unique member whose predecessor is missing
    let start = set
        .iter()
        .copied()
        .find(|&a| !set.contains(&((a + d - 1) % d)))
        .ok_or_else(|| Error::NotAnArc(residues.to_vec()))?;
    let arc: Vec<usize> = (0..k).map(|j| (start + j) % d).collect();
    if arc.iter().all(|g| set.contains(g)) {
        Ok(arc)
    } else {
        Err(Error::NotAnArc(residues.to_vec()))
    }
}

/// Staircase reduced word `g_1; g_2 g_1; ...; g_k ⋯ g_1` of the longest
/// element of the finite parabolic subgroup generated by the arc
/// `g_1, ..., g_k`.
pub fn parabolic_longest_word(d: usize, residues: &[usize]) -> Result<Vec<usize>> {
    let arc = arc_order(d, residues)?;
    Ok((1..=arc.len())
        .flat_map(|top| (1..=top).rev())
        .map(|j| arc[j - 1])
        .collect())
}

/// A flag type of the cyclic quiver with `r` vertices: vertex sequence
/// `i_seq` (entries in `1..=r`), step sizes `a_seq`, and dimension vector
/// `dims` with `Σ_{n: s_n = s} a_n = d_s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagType {
    pub r: usize,
    pub dims: Vec<usize>,
    pub i_seq: Vec<usize>,
    pub a_seq: Vec<usize>,
}

impl FlagType {
    pub fn new(r: usize, dims: Vec<usize>, i_seq: Vec<usize>, a_seq: Vec<usize>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidFlagType(msg));
        if r == 0 || dims.len() != r {
            return bad(format!("{} dimensions for r = {r}", dims.len()));
        }
        if i_seq.len() != a_seq.len() {
            return bad(format!(
                "{} vertices but {} steps",
                i_seq.len(),
                a_seq.len()
            ));
        }
        if let Some(s) = i_seq.iter().find(|&&s| s == 0 || s > r) {
            return bad(format!("vertex {s} outside 1..={r}"));
        }
        if a_seq.contains(&0) {
            return bad("steps must be positive".into());
        }
        let mut sums = vec![0; r];
        for (&s, &a) in i_seq.iter().zip(&a_seq) {
            sums[s - 1] += a;
        }
        if sums != dims {
            return bad(format!("steps add up to {sums:?}, not {dims:?}"));
        }
        Ok(FlagType {
            r,
            dims,
            i_seq,
            a_seq,
        })
    }

    /// Vertices `(r, r-1, ..., 1)` repeated `n` times, all steps 1,
    /// dimension `n` at every vertex.
    pub fn standard(r: usize, n: usize) -> Self {
        let i_seq: Vec<usize> = (0..n).flat_map(|_| (1..=r).rev()).collect();
        let a_seq = vec![1; i_seq.len()];
        FlagType::new(r, vec![n; r], i_seq, a_seq).expect("standard type is valid")
    }

    pub fn len(&self) -> usize {
        self.i_seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.i_seq.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `D(u) = d_1 + ... + d_u` for `u ≥ 0`, extended by `D(u + r) = D(u) + d`.
    pub fn cumulative(&self, u: usize) -> i64 {
        let (q, k) = (u / self.r, u % self.r);
        let d = self.total_dim() as i64;
        q as i64 * d + self.dims[..k].iter().sum::<usize>() as i64
    }

    /// No interval of the block construction reaches `d` residues.
    pub fn is_admissible(&self) -> bool {
        self.blocks_raw()
            .iter()
            .all(|b| b.size() < self.total_dim() as i64)
    }

    fn blocks_raw(&self) -> Vec<Interval> {
        let r = self.r;
        let mut used = vec![0i64; r];
        let mut out = Vec::with_capacity(self.len());
        for (&s, &a) in self.i_seq.iter().zip(&self.a_seq) {
            let next = s % r + 1;
            let lower = self.cumulative(s) + 1 + used[s - 1];
            let upper = self.cumulative(s + 1) - 1 + used[next - 1];
            out.push(Interval { lower, upper });
            used[s - 1] += a as i64;
        }
        out
    }

    /// A random admissible flag type with `d ≤ max_d`, length in
    /// `1..=max_len`. Draws are rejected until one is admissible; the number
    /// of rejections is returned alongside.
    pub fn random_admissible<R: Rng>(rng: &mut R, max_d: usize, max_len: usize) -> (Self, usize) {
        assert!(max_d >= 2 && max_len >= 1);
        let mut rejected = 0;
        loop {
            if let Some(ft) = Self::random_candidate(rng, max_d, max_len) {
                if ft.total_dim() >= 2 && ft.is_admissible() {
                    return (ft, rejected);
                }
            }
            rejected += 1;
        }
    }

    fn random_candidate<R: Rng>(rng: &mut R, max_d: usize, max_len: usize) -> Option<Self> {
        let r = rng.random_range(1..=4);
        let len = rng.random_range(1..=max_len);
        let i_seq: Vec<usize> = (0..len).map(|_| rng.random_range(1..=r)).collect();
        let a_seq: Vec<usize> = (0..len).map(|_| rng.random_range(1..=3)).collect();
        let mut dims = vec![0; r];
        for (&s, &a) in i_seq.iter().zip(&a_seq) {
            dims[s - 1] += a;
        }
        if dims.iter().sum::<usize>() > max_d {
            return None;
        }
        FlagType::new(r, dims, i_seq, a_seq).ok()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub lower: i64,
    pub upper: i64,
}

impl Interval {
    pub fn size(&self) -> i64 {
        (self.upper - self.lower + 1).max(0)
    }
}

/// One block `u_n` of the concatenated word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WordBlock {
    /// 1-based step index.
    pub n: usize,
    pub interval: Interval,
    /// The interval reduced mod `d`, in arc order.
    pub residues: Vec<usize>,
    pub word: Vec<usize>,
}

impl WordBlock {
    pub fn expected_length(&self) -> usize {
        let k = self.residues.len();
        k * (k + 1) / 2
    }
}

/// Blocks `u_ℓ, ..., u_1` (in that order). Interval `n` runs from
/// `D(s_n) + 1 + Σ_{m<n, s_m = s_n} a_m` to
/// `D(s_n + 1) - 1 + Σ_{m<n, s_m = s_n + 1} a_m`, with vertex `r + 1` read as
/// vertex 1 for the step sums.
pub fn build_word_sequence(ft: &FlagType) -> Result<Vec<WordBlock>> {
    let d = ft.total_dim();
    if d < 2 {
        return Err(Error::InvalidFlagType(format!("total dimension {d} < 2")));
    }
    let mut blocks = Vec::with_capacity(ft.len());
    for (idx, interval) in ft.blocks_raw().into_iter().enumerate() {
        let n = idx + 1;
        if interval.size() >= d as i64 {
            return Err(Error::FullArc {
                n,
                lower: interval.lower,
                upper: interval.upper,
                d,
            });
        }
        let raw: Vec<usize> = (interval.lower..=interval.upper)
            .map(|u| u.rem_euclid(d as i64) as usize)
            .collect();
        let residues = arc_order(d, &raw)?;
        let word = parabolic_longest_word(d, &residues)?;
        blocks.push(WordBlock {
            n,
            interval,
            residues,
            word,
        });
    }
    blocks.reverse();
    Ok(blocks)
}

/// Concatenation of the block words in emission order.
pub fn concatenated_word(blocks: &[WordBlock]) -> Vec<usize> {
    blocks.iter().flat_map(|b| b.word.iter().copied()).collect()
}

/// Dimension bookkeeping for the standard flag type with `N` steps per
/// vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimsCheck {
    pub r: usize,
    pub n: usize,
    pub root_count: usize,
    /// `(r-1) N(N+1)/2 + N(N-1)/2`.
    pub block_count: usize,
    /// The pseudoroot pairs coincide with the block entry positions.
    pub positions_match: bool,
    /// `r N(N-1)/2`.
    pub flag_dim: usize,
    pub total_dim: usize,
}

impl DimsCheck {
    pub fn holds(&self) -> bool {
        self.root_count == self.block_count && self.positions_match
    }
}

/// Entry positions `(m, n)` of the blocks `A_{s,s+1}` (upper triangular,
/// diagonal included) and `A_{r1}` (strictly upper triangular).
fn block_positions(r: usize, n: usize) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for s in 1..r {
        for j in 1..=n {
            for k in j..=n {
                out.insert((r * (j - 1) + s, r * (k - 1) + s + 1));
            }
        }
    }
    for j in 1..=n {
        for k in j + 1..=n {
            out.insert((r * (j - 1) + r, r * (k - 1) + 1));
        }
    }
    out
}

pub fn dims_check(r: usize, n: usize) -> DimsCheck {
    let system = PseudorootSystem::build(r, n);
    let roots: BTreeSet<(usize, usize)> = system.roots().iter().map(|p| (p.m, p.n)).collect();
    let positions = block_positions(r, n);
    let root_count = system.roots().len();
    let flag_dim = r * n * (n - 1) / 2;
    DimsCheck {
        r,
        n,
        root_count,
        block_count: (r - 1) * n * (n + 1) / 2 + n * (n - 1) / 2,
        positions_match: roots == positions,
        flag_dim,
        total_dim: flag_dim + root_count,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Inversions `(i, j)` with `1 ≤ i ≤ d`, `i < j`, `w(i) > w(j)`, counted
    /// directly; `j` never needs to exceed `i + d·(spread + 1)`.
    fn brute_inversions(w: &AffinePermutation) -> u64 {
        let d = w.d() as i64;
        let spread = w.window().iter().map(|v| v.abs()).max().unwrap() + d;
        let mut count = 0;
        for i in 1..=d {
            for j in i + 1..=i + 2 * spread + d {
                if w.value(i) > w.value(j) {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn window_validation() {
        assert!(AffinePermutation::new(vec![2, 1]).is_ok());
        assert!(AffinePermutation::new(vec![0, 3]).is_ok());
        assert!(AffinePermutation::new(vec![1, 3]).is_err());
        assert!(AffinePermutation::new(vec![3, 4]).is_err());
        assert!(AffinePermutation::new(vec![]).is_err());
    }

    #[test]
    fn lengths() {
        assert_eq!(AffinePermutation::identity(4).length(), 0);
        for d in 2..=5 {
            for i in 0..d {
                assert_eq!(AffinePermutation::simple(d, i).length(), 1);
            }
        }
        let w = AffinePermutation::from_word(2, &[0, 1, 0]);
        assert_eq!(w.length(), 3);
        assert_eq!(brute_inversions(&w), 3);
    }

    #[test]
    fn length_matches_brute_force() {
        let words: [&[usize]; 4] = [&[0, 1, 2, 0], &[1, 2, 1, 0, 2], &[0, 0], &[2, 0, 1, 2, 0]];
        for word in words {
            let w = AffinePermutation::from_word(3, word);
            assert_eq!(w.length(), brute_inversions(&w), "{word:?}");
        }
    }

    #[test]
    fn compose_and_inverse() {
        let w = AffinePermutation::from_word(4, &[0, 1, 3, 2]);
        let id = AffinePermutation::identity(4);
        assert_eq!(w.compose(&w.inverse()), id);
        assert_eq!(w.inverse().compose(&w), id);
        assert_eq!(
            w.apply_simple(1),
            AffinePermutation::simple(4, 1).compose(&w)
        );
    }

    #[test]
    fn reducedness() {
        assert!(is_reduced(3, &[]));
        assert!(!is_reduced(3, &[1, 1]));
        assert!(is_reduced(4, &[1, 2, 1]));
        assert!(!is_reduced(4, &[1, 2, 1, 2]));
    }

    #[test]
    fn parabolic_words() {
        assert_eq!(parabolic_longest_word(4, &[2]).unwrap(), vec![2]);
        assert_eq!(parabolic_longest_word(4, &[1, 2]).unwrap(), vec![1, 2, 1]);
        let w = parabolic_longest_word(5, &[4, 0, 1]).unwrap();
        assert_eq!(w, vec![4, 0, 4, 1, 0, 4]);
        assert!(is_reduced(5, &w));
        assert!(parabolic_longest_word(4, &[0, 1, 2, 3]).is_err());
        assert!(parabolic_longest_word(5, &[0, 2]).is_err());
        assert_eq!(parabolic_longest_word(3, &[]).unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn flag_type_validation() {
        assert!(FlagType::new(2, vec![1, 1], vec![1, 2], vec![1, 1]).is_ok());
        assert!(FlagType::new(2, vec![2, 1], vec![1, 2], vec![1, 1]).is_err());
        assert!(FlagType::new(2, vec![1, 1], vec![1, 3], vec![1, 1]).is_err());
        assert!(FlagType::new(2, vec![0, 1], vec![2, 1], vec![1, 0]).is_err());
        let ft = FlagType::standard(2, 2);
        assert_eq!(ft.i_seq, vec![2, 1, 2, 1]);
        assert_eq!(ft.cumulative(3), 6);
    }

    #[test]
    fn standard_r2_n2_words() {
        let blocks = build_word_sequence(&FlagType::standard(2, 2)).unwrap();
        let words: Vec<Vec<usize>> = blocks.iter().map(|b| b.word.clone()).collect();
        assert_eq!(words, vec![vec![0, 1, 0], vec![2], vec![3, 0, 3], vec![1]]);
        assert_eq!(concatenated_word(&blocks).len(), 8);
        for b in &blocks {
            assert!(is_reduced(4, &b.word));
            assert_eq!(b.word.len(), b.expected_length());
        }
    }

    #[test]
    fn empty_and_full() {
        let ft = FlagType::new(2, vec![0, 0], vec![], vec![]).unwrap();
        assert!(build_word_sequence(&ft).is_err());
        let ft = FlagType::new(2, vec![2, 0], vec![1], vec![2]).unwrap();
        assert!(build_word_sequence(&ft).unwrap()[0].word.is_empty());
        // the first step overdraws vertex 1, so the second interval spans 5 > d
        let ft = FlagType::new(2, vec![3, 1], vec![1, 2], vec![3, 1]).unwrap();
        assert!(!ft.is_admissible());
        assert!(matches!(
            build_word_sequence(&ft),
            Err(Error::FullArc { n: 2, .. })
        ));
    }

    #[test]
    fn dims() {
        let c = dims_check(2, 2);
        assert_eq!((c.root_count, c.block_count), (4, 4));
        assert!(c.holds());
        for n in 1..=5 {
            assert_eq!(dims_check(1, n).root_count, n * (n - 1) / 2);
        }
        let c = dims_check(3, 1);
        assert_eq!(c.root_count, 2);
        assert!(c.holds());
    }
}
