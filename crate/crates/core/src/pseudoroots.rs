//! The colored pseudoroot system `R^+_r` and its vector partition function.
//!
//! For `1 ≤ m < n ≤ rN` with `n - m ≡ 1 (mod r)` the pseudoroot `α_{mn}` is
//! `δ_m + ... + δ_{n-1}` in `Z^{rN-1}` and carries the color
//! `((m-1) mod r) + 1`. The partition function counts multisets of
//! pseudoroots with a given sum, graded by how many members have each color.
//!
//! The color of a summand is read off its starting index `m`, matching the
//! grading of the matrix entry `E_{nm}` by `m mod r`.

use std::collections::BTreeMap;
use std::num::NonZeroUsize;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use lru::LruCache;

use crate::error::{Error, Result};
use crate::laurent::GradedLaurent;
use crate::multipartition::{prefix_sums, AlphaVec};
use crate::poly::TPoly;

/// Environment variable overriding the memo capacity.
pub const CACHE_SIZE_ENV: &str = "KSHOJI_CACHE_SIZE";
pub const DEFAULT_CACHE_SIZE: usize = 1_000_000;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Pseudoroot {
    /// 1-based start index.
    pub m: usize,
    /// 1-based end index, `m < n ≤ rN`.
    pub n: usize,
    pub color: usize,
    pub alpha: AlphaVec,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PseudorootSystem {
    r: usize,
    n: usize,
    roots: Vec<Pseudoroot>,
}

/// Color of a pseudoroot starting at the 1-based index `m`.
pub fn color_of(m: usize, r: usize) -> usize {
    (m - 1) % r + 1
}

impl PseudorootSystem {
    /// Roots ordered by `m`, then `n`.
    pub fn build(r: usize, n: usize) -> Self {
        assert!(r >= 1 && n >= 1, "r and N must be positive");
        let rn = r * n;
        let mut roots = Vec::new();
        for m in 1..rn {
            for end in (m + 1..=rn).step_by(r) {
                let mut alpha = vec![0; rn - 1];
                alpha[m - 1..end - 1].iter_mut().for_each(|c| *c = 1);
                roots.push(Pseudoroot {
                    m,
                    n: end,
                    color: color_of(m, r),
                    alpha: AlphaVec(alpha),
                });
            }
        }
        PseudorootSystem { r, n, roots }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Length of alpha vectors, `rN - 1`.
    pub fn rank(&self) -> usize {
        self.r * self.n - 1
    }

    pub fn roots(&self) -> &[Pseudoroot] {
        &self.roots
    }

    /// CSV table `m,n,color,alpha` with alpha written as `;`-separated
    /// coordinates.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,n,color,alpha\n");
        for root in &self.roots {
            let alpha: Vec<String> = root.alpha.coords().iter().map(|c| c.to_string()).collect();
            out.push_str(&format!(
                "{},{},{},{}\n",
                root.m,
                root.n,
                root.color,
                alpha.join(";")
            ));
        }
        out
    }

    /// Linear extension of `δ_l ↦ e_{l+1} - e_l`.
    pub fn xexp_of_alpha(&self, alpha: &AlphaVec) -> Vec<i64> {
        xexp_of_alpha(alpha)
    }

    /// Inverse of [`xexp_of_alpha`] on its image.
    pub fn alpha_of_xexp(&self, x: &[i64]) -> Result<AlphaVec> {
        if x.len() != self.r * self.n {
            return Err(Error::XVariableCount {
                left: self.r * self.n,
                right: x.len(),
            });
        }
        alpha_of_xexp(x)
    }
}

/// Linear extension of `δ_l ↦ e_{l+1} - e_l`; the result has length
/// `len(alpha) + 1`.
pub fn xexp_of_alpha(alpha: &AlphaVec) -> Vec<i64> {
    alpha.entry_differences().iter().map(|d| -d).collect()
}

/// Recovers alpha from an x-exponent through negated prefix sums.
pub fn alpha_of_xexp(x: &[i64]) -> Result<AlphaVec> {
    let sums = prefix_sums(x);
    match sums.last() {
        Some(0) => Ok(AlphaVec(
            sums[..sums.len() - 1].iter().map(|s| -s).collect(),
        )),
        _ => Err(Error::NotInAlphaImage(x.to_vec())),
    }
}

/// Which grading the partition function records.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Grading {
    /// One variable per color, `t_1, ..., t_r`.
    Colored,
    /// A single variable `t` counting summands.
    Single,
}

/// Memoized evaluator of `L^α` for one pseudoroot system.
///
/// Every multiset of pseudoroots summing to `α` is split canonically by the
/// start index of its members. Coordinates before the first nonzero one,
/// say `m`, are zero, so all members covering `m` start exactly at `m`;
/// there are `α_m` of them, all of color `color(m)`, and they are chosen by
/// their end points. Removing them leaves a vector vanishing up to `m`,
/// handled recursively.
pub struct PartitionFunction {
    system: PseudorootSystem,
    grading: Grading,
    cache: Mutex<LruCache<Vec<i64>, TPoly>>,
    lookups: AtomicU64,
}

impl PartitionFunction {
    pub fn new(system: PseudorootSystem, grading: Grading) -> Self {
        let capacity = std::env::var(CACHE_SIZE_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_CACHE_SIZE);
        Self::with_capacity(system, grading, capacity)
    }

    pub fn with_capacity(system: PseudorootSystem, grading: Grading, capacity: usize) -> Self {
        let capacity = NonZeroUsize::new(capacity.max(1)).expect("capacity is positive");
        PartitionFunction {
            system,
            grading,
            cache: Mutex::new(LruCache::new(capacity)),
            lookups: AtomicU64::new(0),
        }
    }

    pub fn system(&self) -> &PseudorootSystem {
        &self.system
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    /// Number of variables of the returned polynomials.
    pub fn nvars(&self) -> usize {
        match self.grading {
            Grading::Colored => self.system.r,
            Grading::Single => 1,
        }
    }

    /// Number of top-level evaluations requested so far.
    pub fn lookups(&self) -> u64 {
        self.lookups.load(Ordering::Relaxed)
    }

    /// A fresh evaluator for the same system and grading, with an empty memo.
    pub fn fresh(&self) -> Self {
        let cap = self.cache.lock().expect("memo lock").cap().get();
        Self::with_capacity(self.system.clone(), self.grading, cap)
    }

    /// `L^α`; zero when some coordinate is negative.
    pub fn eval(&self, alpha: &AlphaVec) -> Result<TPoly> {
        if alpha.len() != self.system.rank() {
            return Err(Error::AlphaLength {
                got: alpha.len(),
                expected: self.system.rank(),
            });
        }
        Ok(self.eval_coords(alpha.coords()))
    }

    pub(crate) fn eval_coords(&self, alpha: &[i64]) -> TPoly {
        self.lookups.fetch_add(1, Ordering::Relaxed);
        self.eval_inner(alpha)
    }

    fn eval_inner(&self, alpha: &[i64]) -> TPoly {
        let nvars = self.nvars();
        if alpha.iter().any(|&c| c < 0) {
            return TPoly::zero(nvars);
        }
        let Some(first) = alpha.iter().position(|&c| c != 0) else {
            return TPoly::one(nvars);
        };
        if let Some(hit) = self.cache.lock().expect("memo lock").get(alpha) {
            return hit.clone();
        }

        let count = alpha[first];
        let r = self.system.r;
        let ends: Vec<usize> = (first..alpha.len()).step_by(r).collect();
        let mut residual = alpha.to_vec();
        residual[first] = 0;
        let mut acc = TPoly::zero(nvars);
        self.choose_ends(&ends, 0, count, &mut residual, &mut acc);

        let mut shift = vec![0u32; nvars];
        let var = match self.grading {
            Grading::Colored => color_of(first + 1, r) - 1,
            Grading::Single => 0,
        };
        shift[var] = count as u32;
        let result = acc.shift(&shift);

        self.cache
            .lock()
            .expect("memo lock")
            .put(alpha.to_vec(), result.clone());
        result
    }

    /// Distributes `remaining` chosen roots over the end points `ends[i..]`.
    /// Coordinates strictly after `ends[i]` and up to `ends[i+1]` are
    /// covered by the roots that end later.
    fn choose_ends(
        &self,
        ends: &[usize],
        i: usize,
        remaining: i64,
        residual: &mut [i64],
        acc: &mut TPoly,
    ) {
        if remaining == 0 || i + 1 == ends.len() {
            // all remaining roots end at ends[i]
            let leaf = self.eval_inner(residual);
            acc.add_scaled(&leaf, 1).expect("same grading");
            return;
        }
        let segment = ends[i] + 1..=ends[i + 1];
        let min_seg = residual[segment.clone()].iter().copied().min().unwrap_or(0);
        // at most `min_seg` roots may continue past ends[i]
        let max_continue = remaining.min(min_seg);
        for cont in (0..=max_continue).rev() {
            residual[segment.clone()]
                .iter_mut()
                .for_each(|c| *c -= cont);
            self.choose_ends(ends, i + 1, cont, residual, acc);
            residual[segment.clone()]
                .iter_mut()
                .for_each(|c| *c += cont);
        }
    }
}

/// Expands `∏ (1 - t_{color} x_m^{-1} x_n)^{-1}` over all pseudoroots up to
/// total `t`-degree `max_degree` and reads off the coefficient of `x^α` for
/// every `α` with `0 ≤ α_i ≤ bound`.
pub fn partition_function_series_oracle(
    system: &PseudorootSystem,
    bound: i64,
    max_degree: u32,
) -> Result<BTreeMap<AlphaVec, TPoly>> {
    let rn = system.r * system.n;
    let mut series = GradedLaurent::one(rn, system.r).with_truncation(max_degree);
    for root in system.roots() {
        let mut xw = vec![0; rn];
        xw[root.m - 1] -= 1;
        xw[root.n - 1] += 1;
        series = series.geom_inverse_factor(&xw, root.color)?;
    }

    let mut out: BTreeMap<AlphaVec, TPoly> = BTreeMap::new();
    for alpha in box_points(system.rank(), bound) {
        out.insert(AlphaVec(alpha), TPoly::zero(system.r));
    }
    for (t, x, c) in series.terms() {
        let alpha = system.alpha_of_xexp(x)?;
        if let Some(p) = out.get_mut(&alpha) {
            p.add_term(t.clone(), c.clone());
        }
    }
    Ok(out)
}

/// All vectors of length `len` with coordinates in `0..=bound`.
pub fn box_points(len: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::with_capacity(len)];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=bound).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(sys: &PseudorootSystem) -> Vec<(usize, usize, usize)> {
        sys.roots().iter().map(|p| (p.m, p.n, p.color)).collect()
    }

    fn colored(r: usize, n: usize) -> PartitionFunction {
        PartitionFunction::new(PseudorootSystem::build(r, n), Grading::Colored)
    }

    #[test]
    fn build_examples() {
        assert_eq!(
            pairs(&PseudorootSystem::build(2, 2)),
            vec![(1, 2, 1), (1, 4, 1), (2, 3, 2), (3, 4, 1)]
        );
        assert_eq!(pairs(&PseudorootSystem::build(1, 2)), vec![(1, 2, 1)]);
        assert_eq!(
            pairs(&PseudorootSystem::build(3, 1)),
            vec![(1, 2, 1), (2, 3, 2)]
        );
        let sys = PseudorootSystem::build(2, 2);
        assert_eq!(sys.roots()[1].alpha, AlphaVec(vec![1, 1, 1]));
    }

    #[test]
    fn partition_function_examples() {
        let l = colored(2, 2);
        assert_eq!(l.eval(&AlphaVec::zero(3)).unwrap(), TPoly::one(2));
        let expected = TPoly::from_terms(2, [(vec![1, 0], 1), (vec![2, 1], 1)]).unwrap();
        assert_eq!(l.eval(&AlphaVec(vec![1, 1, 1])).unwrap(), expected);
        assert_eq!(l.eval(&AlphaVec(vec![1, 0, 0])).unwrap(), TPoly::var(2, 1));
        assert!(l.eval(&AlphaVec(vec![1, -1, 2])).unwrap().is_zero());
        assert_eq!(
            l.eval(&AlphaVec(vec![1, 1])),
            Err(Error::AlphaLength {
                got: 2,
                expected: 3
            })
        );
    }

    #[test]
    fn single_grading_ignores_colors() {
        let l = PartitionFunction::new(PseudorootSystem::build(2, 2), Grading::Single);
        let expected = TPoly::from_terms(1, [(vec![1], 1), (vec![3], 1)]).unwrap();
        assert_eq!(l.eval(&AlphaVec(vec![1, 1, 1])).unwrap(), expected);
    }

    #[test]
    fn series_oracle_examples() {
        let sys = PseudorootSystem::build(2, 2);
        let table = partition_function_series_oracle(&sys, 2, 3).unwrap();
        let expected = TPoly::from_terms(2, [(vec![1, 0], 1), (vec![2, 1], 1)]).unwrap();
        assert_eq!(table[&AlphaVec(vec![1, 1, 1])], expected);
        assert_eq!(table[&AlphaVec(vec![0, 0, 0])], TPoly::one(2));
        assert_eq!(table[&AlphaVec(vec![0, 1, 0])], TPoly::var(2, 2));
        assert_eq!(table.len(), 27);
    }

    #[test]
    fn xexp_examples() {
        let a12 = AlphaVec(vec![1, 0, 0]);
        assert_eq!(xexp_of_alpha(&a12), vec![-1, 1, 0, 0]);
        assert_eq!(xexp_of_alpha(&AlphaVec::zero(3)), vec![0; 4]);
        assert_eq!(xexp_of_alpha(&AlphaVec(vec![1, 1, 1])), vec![-1, 0, 0, 1]);
        assert_eq!(
            alpha_of_xexp(&[-1, 0, 0, 1]).unwrap(),
            AlphaVec(vec![1, 1, 1])
        );
        assert!(alpha_of_xexp(&[1, 0]).is_err());
    }

    #[test]
    fn tiny_cache_gives_same_values() {
        let sys = PseudorootSystem::build(2, 3);
        let big = PartitionFunction::with_capacity(sys.clone(), Grading::Colored, 1 << 20);
        let tiny = PartitionFunction::with_capacity(sys, Grading::Colored, 1);
        for alpha in box_points(5, 2) {
            let a = AlphaVec(alpha);
            assert_eq!(big.eval(&a).unwrap(), tiny.eval(&a).unwrap());
        }
    }

    #[test]
    fn csv_table() {
        let csv = PseudorootSystem::build(2, 2).to_csv();
        assert_eq!(
            csv,
            "m,n,color,alpha\n1,2,1,1;0;0\n1,4,1,1;1;1\n2,3,2,0;1;0\n3,4,1,0;0;1\n"
        );
    }
}
